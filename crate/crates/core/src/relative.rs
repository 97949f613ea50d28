//! Relative complexes `(Δ, Γ)` and their face numbers.

use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::{SimplicialComplex, VertexSet};

/// A pair `Γ ⊆ Δ`; its faces are the faces of `Δ` not in `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeComplex {
    total: SimplicialComplex,
    sub: SimplicialComplex,
}

impl RelativeComplex {
    pub fn new(total: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        for f in sub.facets() {
            if !total.contains_face(f) {
                return Err(Error::NotSubcomplex(f.clone()));
            }
        }
        Ok(Self { total, sub })
    }

    /// `(Δ, void)`, which is identified with `Δ`.
    pub fn absolute(total: SimplicialComplex) -> Self {
        Self {
            total,
            sub: SimplicialComplex::void(),
        }
    }

    pub fn total(&self) -> &SimplicialComplex {
        &self.total
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.sub
    }

    pub fn ground_set(&self) -> &VertexSet {
        self.total.ground_set()
    }

    /// Whether `∅` is a face of the pair.
    pub fn has_empty_face(&self) -> bool {
        !self.total.is_void() && self.sub.is_void()
    }

    /// Faces of the pair, grouped by cardinality.
    pub fn faces_by_size(&self) -> Vec<Vec<VertexSet>> {
        let t = self.total.faces();
        let s = (!self.sub.is_void()).then(|| self.sub.faces());
        (0..t.size_bound())
            .map(|k| {
                t.of_size(k)
                    .iter()
                    .filter(|f| s.is_none_or(|s| !s.contains(f)))
                    .cloned()
                    .collect()
            })
            .collect()
    }

    pub fn contains_face(&self, f: &VertexSet) -> bool {
        self.total.contains_face(f) && !self.sub.contains_face(f)
    }

    /// Largest dimension of a face of the pair; falls back to `dim Δ` when the pair
    /// has no faces at all.
    pub fn dim(&self) -> Result<i32> {
        let total_dim = self.total.dimension()?;
        let by_size = self.faces_by_size();
        Ok(by_size
            .iter()
            .rposition(|g| !g.is_empty())
            .map_or(total_dim, |k| k as i32 - 1))
    }

    pub fn f_vector(&self) -> Result<FaceVector> {
        let dim = self.dim()?;
        let by_size = self.faces_by_size();
        let entries = (0..=(dim + 1) as usize)
            .map(|k| by_size.get(k).map_or(0, |g| g.len() as i64))
            .collect();
        Ok(FaceVector(entries))
    }

    /// h-vector with `d = dim + 1`.
    pub fn h_vector(&self) -> Result<HVector> {
        let f = self.f_vector()?;
        Ok(HVector::from_f(&f, f.dim() + 1))
    }

    /// h-vector computed with an explicit `d`, padding or truncating `f` as needed.
    pub fn h_vector_in(&self, d: i32) -> Result<HVector> {
        Ok(HVector::from_f(&self.f_vector()?, d))
    }

    pub fn g_vector(&self) -> Result<GVector> {
        Ok(self.h_vector()?.g())
    }
}

impl From<SimplicialComplex> for RelativeComplex {
    fn from(c: SimplicialComplex) -> Self {
        Self::absolute(c)
    }
}

/// `f_{-1}, f_0, ..., f_{dim}`; stored with `f_{-1}` at position 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceVector(pub Vec<i64>);

impl FaceVector {
    /// `f_i`, zero outside the stored range.
    pub fn get(&self, i: i32) -> i64 {
        usize::try_from(i + 1).ok().and_then(|k| self.0.get(k)).copied().unwrap_or(0)
    }

    /// Dimension of the top stored entry.
    pub fn dim(&self) -> i32 {
        self.0.len() as i32 - 2
    }

    /// Inverse of the h-transform for a given `d`.
    pub fn from_h(h: &HVector, d: i32) -> Self {
        let entries = (0..=d)
            .map(|j| {
                (0..=j)
                    .map(|i| binomial((d - i) as i64, (j - i) as i64) * h.get(i))
                    .sum()
            })
            .collect();
        Self(entries)
    }
}

/// `h_0, ..., h_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    /// `h_j = Σ_{i=0}^{j} (-1)^{j-i} C(d-i, d-j) f_{i-1}`.
    pub fn from_f(f: &FaceVector, d: i32) -> Self {
        let entries = (0..=d.max(-1))
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial((d - i) as i64, (d - j) as i64) * f.get(i - 1)
                    })
                    .sum()
            })
            .collect();
        Self(entries)
    }

    pub fn get(&self, j: i32) -> i64 {
        usize::try_from(j).ok().and_then(|k| self.0.get(k)).copied().unwrap_or(0)
    }

    pub fn d(&self) -> i32 {
        self.0.len() as i32 - 1
    }

    pub fn g(&self) -> GVector {
        GVector((0..self.0.len() as i32).map(|j| self.get(j) - self.get(j - 1)).collect())
    }
}

/// `g_0 = h_0`, `g_j = h_j - h_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GVector(pub Vec<i64>);

impl GVector {
    pub fn get(&self, j: i32) -> i64 {
        usize::try_from(j).ok().and_then(|k| self.0.get(k)).copied().unwrap_or(0)
    }
}
