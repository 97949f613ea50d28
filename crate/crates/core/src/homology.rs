//! Reduced and relative simplicial homology over ℚ and prime fields.
//!
//! Faces carry the ascending-vertex orientation and `∂[v_0 … v_k] = Σ (-1)^t [… v̂_t …]`.
//! Chain groups of `(Δ, Γ)` have the faces of `Δ` not in `Γ` as bases; the augmented
//! group `C_{-1}` is present exactly when `∅` is such a face.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::sparse_rank;
use crate::recognition::{classify_homology, HomologyClass};
use crate::{FieldSpec, RelativeComplex, SimplicialComplex, Vertex, VertexSet};

/// `b̃_{-1}, b̃_0, …`; position 0 holds degree −1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub entries: Vec<u64>,
    pub field: FieldSpec,
}

impl BettiVector {
    /// Betti number in degree `i`, zero outside the stored range.
    pub fn get(&self, i: i32) -> u64 {
        usize::try_from(i + 1).ok().and_then(|k| self.entries.get(k)).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&b| b == 0)
    }

    /// Alternating sum `Σ (-1)^i b_i`, starting at degree −1.
    pub fn alternating_sum(&self) -> i64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Boundary map `C_k → C_{k-1}` with labelled rows and columns.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub rows: Vec<VertexSet>,
    pub cols: Vec<VertexSet>,
    /// Sparse columns, rows increasing.
    pub entries: Vec<Vec<(u32, i8)>>,
}

impl BoundaryMatrix {
    pub fn rank(&self, field: FieldSpec) -> usize {
        let cols: Vec<&[(u32, i8)]> = self.entries.iter().map(|c| c.as_slice()).collect();
        sparse_rank(&cols, self.rows.len(), field)
    }

    pub fn to_dense(&self) -> Vec<Vec<i8>> {
        let mut m = vec![vec![0i8; self.cols.len()]; self.rows.len()];
        for (j, col) in self.entries.iter().enumerate() {
            for &(r, s) in col {
                m[r as usize][j] = s;
            }
        }
        m
    }
}

/// Chain complex of a relative complex on local vertex indices, reused across all
/// induced subcomplexes `(Δ_W, Γ_W)`.
///
/// A face of `(Δ_W, Γ_W)` is a face of `(Δ, Γ)` contained in `W`, so restricting to `W`
/// only selects columns; row indices stay global.
pub struct InducedHomology {
    labels: Vec<Vertex>,
    /// `faces[s]`: relative faces with `s` vertices, as masks over `labels`.
    faces: Vec<Vec<u64>>,
    /// `cols[s][j]`: boundary of `faces[s][j]` in terms of indices into `faces[s - 1]`.
    cols: Vec<Vec<Vec<(u32, i8)>>>,
    field: FieldSpec,
}

pub const MAX_LOCAL_VERTICES: usize = 64;

impl InducedHomology {
    /// Works on the ground set of the pair, which must have at most 64 vertices.
    pub fn new(psi: &RelativeComplex, field: FieldSpec) -> Result<Self> {
        Self::with_labels(psi, psi.ground_set().to_vec(), field)
    }

    fn with_labels(psi: &RelativeComplex, labels: Vec<Vertex>, field: FieldSpec) -> Result<Self> {
        if labels.len() > MAX_LOCAL_VERTICES {
            return Err(Error::TooManyVertices(labels.len(), MAX_LOCAL_VERTICES));
        }
        let top = psi.total().dim().map_or(0, |d| (d + 2) as usize);
        let mut faces: Vec<Vec<u64>> = vec![Vec::new(); top];
        for (s, group) in psi.faces_by_size().into_iter().enumerate() {
            faces[s] = group
                .iter()
                .map(|f| f.local_mask(&labels).expect("faces lie in the ground set"))
                .collect();
            faces[s].sort_unstable();
        }
        let mut cols: Vec<Vec<Vec<(u32, i8)>>> = vec![Vec::new(); top];
        for s in 1..top {
            let index: HashMap<u64, u32> =
                faces[s - 1].iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
            cols[s] = faces[s]
                .iter()
                .map(|&m| {
                    let mut col = Vec::with_capacity(s);
                    let mut rest = m;
                    let mut pos = 0;
                    while rest != 0 {
                        let bit = rest & rest.wrapping_neg();
                        if let Some(&row) = index.get(&(m ^ bit)) {
                            col.push((row, if pos % 2 == 0 { 1 } else { -1 }));
                        }
                        rest ^= bit;
                        pos += 1;
                    }
                    col.sort_unstable_by_key(|e| e.0);
                    col
                })
                .collect();
        }
        Ok(Self {
            labels,
            faces,
            cols,
            field,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Vertex] {
        &self.labels
    }

    /// Length of Betti vectors produced: degrees −1 through `dim Δ`.
    pub fn degrees(&self) -> usize {
        self.faces.len()
    }

    fn rank_on(&self, s: usize, w: u64) -> usize {
        if s == 0 || s >= self.faces.len() {
            return 0;
        }
        let cols: Vec<&[(u32, i8)]> = self.faces[s]
            .iter()
            .zip(&self.cols[s])
            .filter(|(&m, _)| m & !w == 0)
            .map(|(_, c)| c.as_slice())
            .collect();
        if cols.is_empty() {
            return 0;
        }
        sparse_rank(&cols, self.faces[s - 1].len(), self.field)
    }

    /// Reduced Betti numbers of `(Δ_W, Γ_W)`, degrees −1 through `dim Δ`.
    pub fn reduced_betti(&self, w: u64) -> Vec<u64> {
        let top = self.faces.len();
        let counts: Vec<usize> = self
            .faces
            .iter()
            .map(|g| g.iter().filter(|&&m| m & !w == 0).count())
            .collect();
        let mut ranks = vec![0usize; top + 1];
        for s in 1..top {
            if counts[s] > 0 && counts[s - 1] > 0 {
                ranks[s] = self.rank_on(s, w);
            }
        }
        (0..top)
            .map(|s| (counts[s] - ranks[s] - ranks[s + 1]) as u64)
            .collect()
    }

    /// Betti vector of the whole pair.
    pub fn full(&self) -> Vec<u64> {
        let all = if self.n() == 64 { u64::MAX } else { (1u64 << self.n()) - 1 };
        self.reduced_betti(all)
    }

    /// `sums[k][i + 1] = Σ_{|W| = k} b̃_i(Δ_W, Γ_W)`, computed in parallel over `W`.
    pub fn cardinality_sums(&self) -> Vec<Vec<u64>> {
        let n = self.n();
        assert!(n < 40, "subset sweep over {n} vertices");
        let width = self.degrees();
        let zero = || vec![vec![0u64; width]; n + 1];
        (0u64..1u64 << n)
            .into_par_iter()
            .fold(zero, |mut acc, w| {
                let k = w.count_ones() as usize;
                for (slot, b) in acc[k].iter_mut().zip(self.reduced_betti(w)) {
                    *slot += b;
                }
                acc
            })
            .reduce(zero, |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            })
    }

    /// Betti vectors of every induced pair, indexed by the mask `W`.
    pub fn per_subset(&self) -> Vec<Vec<u64>> {
        let n = self.n();
        assert!(n <= 24, "per-subset table over {n} vertices");
        (0u64..1u64 << n).into_par_iter().map(|w| self.reduced_betti(w)).collect()
    }
}

/// Boundary map out of the `k`-faces of the pair, `-1 ≤ k ≤ dim`.
pub fn boundary_matrix(psi: &RelativeComplex, k: i32) -> Result<BoundaryMatrix> {
    let dim = psi.total().dimension()?;
    if k < -1 || k > dim {
        return Err(Error::Parameter(format!("boundary degree {k} outside -1..={dim}")));
    }
    let by_size = psi.faces_by_size();
    let s = (k + 1) as usize;
    let cols = by_size.get(s).cloned().unwrap_or_default();
    let rows = if s == 0 { Vec::new() } else { by_size.get(s - 1).cloned().unwrap_or_default() };
    let index: HashMap<&VertexSet, u32> = rows.iter().enumerate().map(|(i, f)| (f, i as u32)).collect();
    let entries = cols
        .iter()
        .map(|f| {
            let mut col: Vec<(u32, i8)> = f
                .iter()
                .enumerate()
                .filter_map(|(pos, v)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    index.get(&f.without(v)).map(|&r| (r, sign))
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    Ok(BoundaryMatrix { rows, cols, entries })
}

/// Betti numbers of the pair; `reduced = false` drops the augmentation.
pub fn betti(psi: &RelativeComplex, field: FieldSpec, reduced: bool) -> Result<BettiVector> {
    if psi.total().is_void() {
        return Err(Error::VoidComplex);
    }
    // Ghost vertices never matter for the full complex.
    let labels = psi.total().vertex_support().to_vec();
    let engine = InducedHomology::with_labels(psi, labels, field)?;
    let mut entries = engine.full();
    if !reduced && psi.has_empty_face() {
        let b_minus = entries[0];
        entries[0] = 0;
        if entries.len() > 1 {
            entries[1] = entries[1] + 1 - b_minus;
        }
    }
    Ok(BettiVector { entries, field })
}

pub fn reduced_betti(psi: &RelativeComplex, field: FieldSpec) -> Result<BettiVector> {
    betti(psi, field, true)
}

/// Reduced Betti numbers of a complex (relative to the void complex).
pub fn complex_betti(delta: &SimplicialComplex, field: FieldSpec) -> Result<BettiVector> {
    betti(&RelativeComplex::absolute(delta.clone()), field, true)
}

/// `χ̃(Δ) = Σ_{i ≥ -1} (-1)^i f_i`, checked against the alternating Betti sum over `field`.
pub fn euler_characteristic(delta: &SimplicialComplex, field: FieldSpec) -> Result<i64> {
    let f = RelativeComplex::absolute(delta.clone()).f_vector()?;
    let chi: i64 = f
        .0
        .iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 1 { x } else { -x })
        .sum();
    let b = complex_betti(delta, field)?;
    assert_eq!(chi, b.alternating_sum(), "Euler characteristic disagrees with homology");
    Ok(chi)
}

/// Every component `C` of the homology manifold `Δ` has `b̃_d(C, ∂C) = 1`.
pub fn orientable(delta: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    let class = classify_homology(delta, field)?;
    match class.class {
        HomologyClass::Sphere
        | HomologyClass::Ball
        | HomologyClass::ClosedManifold
        | HomologyClass::ManifoldWithBoundary => {}
        HomologyClass::Other => {
            return Err(Error::Hypothesis("not a homology manifold".into()));
        }
    }
    let d = delta.dimension()?;
    for comp in delta.components() {
        let c = delta.induced(&comp);
        let bd = class.boundary.induced(&comp);
        let bd = if class.boundary.is_void() { SimplicialComplex::void() } else { bd };
        let pair = RelativeComplex::new(c, bd)?;
        if reduced_betti(&pair, field)?.get(d) != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
