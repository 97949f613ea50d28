//! Normalized σ-numbers and μ-numbers of relative complexes, Morse-type bounds and
//! duality identities.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{binomial_big, permutations};
use crate::error::{Error, Result};
use crate::homology::{betti, InducedHomology};
use crate::recognition::{classify_homology, HomologyClass};
use crate::{FieldSpec, Integer, Rational, RelativeComplex, SimplicialComplex, Vertex, VertexSet};

/// Largest ground set swept by the `2^n` subset loop.
pub const MAX_SWEEP_VERTICES: usize = 30;

/// Exact rationals indexed from `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector {
    pub start: i32,
    pub values: Vec<Rational>,
}

impl RationalVector {
    /// Zero outside the stored range.
    pub fn get(&self, i: i32) -> Rational {
        usize::try_from(i - self.start)
            .ok()
            .and_then(|k| self.values.get(k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn end(&self) -> i32 {
        self.start + self.values.len() as i32 - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.values.iter().enumerate().map(|(k, v)| (self.start + k as i32, v))
    }
}

impl Serialize for RationalVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.values.len()))?;
        for (i, v) in self.iter() {
            m.serialize_entry(&i.to_string(), &v.to_string())?;
        }
        m.end()
    }
}

/// Per-cardinality sums `S[k][i+1] = Σ_{|W|=k} b̃_i(Δ_W, Γ_W)` over the ground set.
pub fn subset_betti_sums(psi: &RelativeComplex, field: FieldSpec) -> Result<Vec<Vec<u64>>> {
    psi.total().dimension()?;
    let n = psi.ground_set().len();
    if n > MAX_SWEEP_VERTICES {
        return Err(Error::TooManyVertices(n, MAX_SWEEP_VERTICES));
    }
    Ok(InducedHomology::new(psi, field)?.cardinality_sums())
}

fn sigma_from_sums(sums: &[Vec<u64>]) -> RationalVector {
    let n = sums.len() as i64 - 1;
    let width = sums.first().map_or(0, |r| r.len());
    let values = (0..width)
        .map(|slot| {
            sums.iter().enumerate().fold(Rational::zero(), |acc, (k, row)| {
                if row[slot] == 0 {
                    return acc;
                }
                let den = binomial_big(n, k as i64) * Integer::from(n + 1);
                acc + Rational::new(Integer::from(row[slot]), den)
            })
        })
        .collect();
    RationalVector { start: -1, values }
}

/// `σ̃_i` for `i = -1..=dim Δ`, over the ground set of the pair.
pub fn sigma_vector(psi: &RelativeComplex, field: FieldSpec) -> Result<RationalVector> {
    Ok(sigma_from_sums(&subset_betti_sums(psi, field)?))
}

pub fn sigma_tilde(psi: &RelativeComplex, i: i32, field: FieldSpec) -> Result<Rational> {
    Ok(sigma_vector(psi, field)?.get(i))
}

/// `(lk_Δ v, lk_Γ v)`, or `None` when `v` is not a vertex of `Δ`.
pub fn vertex_link(psi: &RelativeComplex, v: Vertex) -> Option<RelativeComplex> {
    let vs = VertexSet::singleton(v);
    if !psi.total().contains_face(&vs) {
        return None;
    }
    let sub = psi.sub().link(&vs);
    Some(RelativeComplex::new(psi.total().link(&vs), sub).expect("links of a subcomplex nest"))
}

/// `μ_i` for `i = 0..=dim Δ`. Vertices of the ground set outside `Δ` contribute 0.
pub fn mu_vector(psi: &RelativeComplex, field: FieldSpec) -> Result<RationalVector> {
    let dim = psi.total().dimension()?;
    let verts = psi.ground_set().to_vec();
    let links = verts
        .par_iter()
        .filter_map(|&v| vertex_link(psi, v))
        .map(|lk| sigma_vector(&lk, field))
        .collect::<Result<Vec<_>>>()?;
    let values = (0..=dim.max(0))
        .map(|i| links.iter().fold(Rational::zero(), |acc, s| acc + s.get(i - 1)))
        .collect();
    Ok(RationalVector { start: 0, values })
}

pub fn mu(psi: &RelativeComplex, i: i32, field: FieldSpec) -> Result<Rational> {
    Ok(mu_vector(psi, field)?.get(i))
}

#[derive(Clone, Debug, Serialize)]
pub struct MorseRow {
    pub i: i32,
    pub betti: u64,
    #[serde(serialize_with = "ser_display")]
    pub mu: Rational,
    pub holds: bool,
    pub alternating_betti: i64,
    #[serde(serialize_with = "ser_display")]
    pub alternating_mu: Rational,
    pub alternating_holds: bool,
}

fn ser_display<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `b_i ≤ μ_i` and the alternating partial sums, for `i = 0..=up_to`, with unreduced `b_i`.
pub fn morse_bounds(psi: &RelativeComplex, field: FieldSpec, up_to: i32) -> Result<Vec<MorseRow>> {
    let b = betti(psi, field, false)?;
    let mu = mu_vector(psi, field)?;
    let mut rows = Vec::new();
    let (mut alt_b, mut alt_mu) = (0i64, Rational::zero());
    for i in 0..=up_to {
        let bi = b.get(i);
        let mi = mu.get(i);
        alt_b = bi as i64 - alt_b;
        alt_mu = &mi - alt_mu;
        rows.push(MorseRow {
            i,
            betti: bi,
            holds: Rational::from_integer(bi.into()) <= mi,
            mu: mi,
            alternating_betti: alt_b,
            alternating_holds: Rational::from_integer(alt_b.into()) <= alt_mu,
            alternating_mu: alt_mu.clone(),
        });
    }
    Ok(rows)
}

/// Both sides of the ordered Morse bound for one vertex ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedMorse {
    /// `b_j(Δ, Γ)` for `j = 0..=i`.
    pub betti: Vec<u64>,
    /// `Σ_k b̃_{j-1}(lk_Δ(v_k)_{V<k}, lk_Γ(v_k)_{V<k})` for `j = 0..=i`.
    pub bound: Vec<u64>,
}

impl OrderedMorse {
    pub fn holds(&self) -> bool {
        self.betti.iter().zip(&self.bound).all(|(b, r)| b <= r)
    }

    pub fn alternating_holds(&self) -> bool {
        let (mut lhs, mut rhs) = (0i64, 0i64);
        self.betti.iter().zip(&self.bound).all(|(&b, &r)| {
            lhs = b as i64 - lhs;
            rhs = r as i64 - rhs;
            lhs <= rhs
        })
    }
}

pub fn ordered_morse(
    psi: &RelativeComplex,
    ordering: &[Vertex],
    field: FieldSpec,
    i: i32,
) -> Result<OrderedMorse> {
    let as_set: VertexSet = ordering.iter().copied().collect();
    if as_set != *psi.ground_set() || ordering.len() != as_set.len() {
        return Err(Error::Parameter(format!("{ordering:?} is not a permutation of the ground set")));
    }
    let b = betti(psi, field, false)?;
    let mut bound = vec![0u64; (i + 1).max(0) as usize];
    let mut prefix = VertexSet::new();
    for &v in ordering {
        if let Some(lk) = vertex_link(psi, v) {
            let total = lk.total().induced(&prefix);
            let sub = if lk.sub().is_void() { SimplicialComplex::void() } else { lk.sub().induced(&prefix) };
            let pair = RelativeComplex::new(total, sub)?;
            let bt = betti(&pair, field, true)?;
            for (j, slot) in bound.iter_mut().enumerate() {
                *slot += bt.get(j as i32 - 1);
            }
        }
        prefix.insert(v);
    }
    Ok(OrderedMorse {
        betti: (0..=i).map(|j| b.get(j)).collect(),
        bound,
    })
}

/// Mean of the ordered bound over all orderings of the ground set.
pub fn averaged_ordered_bound(psi: &RelativeComplex, field: FieldSpec, i: i32) -> Result<Vec<Rational>> {
    let verts = psi.ground_set().to_vec();
    if verts.len() > 8 {
        return Err(Error::TooManyVertices(verts.len(), 8));
    }
    let perms = permutations(&verts);
    let totals = perms
        .par_iter()
        .map(|p| ordered_morse(psi, p, field, i).map(|o| o.bound))
        .collect::<Result<Vec<_>>>()?;
    let count = Integer::from(perms.len());
    Ok((0..=i as usize)
        .map(|j| {
            let s: u64 = totals.iter().map(|t| t[j]).sum();
            Rational::new(Integer::from(s), count.clone())
        })
        .collect())
}

/// σ̃ on the ground set and on the ground set plus `extra` ghost vertices agree.
pub fn ground_set_invariance(
    delta: &SimplicialComplex,
    gamma: &SimplicialComplex,
    extra: &VertexSet,
    field: FieldSpec,
) -> Result<bool> {
    if let Some(v) = extra.iter().find(|&v| delta.vertex_support().contains(v)) {
        return Err(Error::VertexPresent(v));
    }
    let psi = RelativeComplex::new(delta.clone(), gamma.clone())?;
    let wide = RelativeComplex::new(delta.with_ground(extra), gamma.clone())?;
    let base = sigma_vector(&psi, field)?;
    let more = sigma_vector(&wide, field)?;
    let mu_base = mu_vector(&psi, field)?;
    let mu_more = mu_vector(&wide, field)?;
    Ok(base == more && mu_base == mu_more)
}

/// One side-by-side comparison `lhs(i) = rhs(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub i: i32,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct DualityReport {
    /// `σ̃_{i-1}(Δ, ∂Δ)` against `σ̃_{d-1-i}(Δ)`, balls only.
    pub sigma: Option<Vec<Comparison>>,
    /// `μ_i(Δ, ∂Δ)` against `μ_{dim-i}(Δ)`.
    pub mu: Vec<Comparison>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.sigma.iter().flatten().chain(&self.mu).all(|c| c.lhs == c.rhs)
    }
}

/// σ̃-duality for homology balls and μ-duality for manifolds with boundary.
pub fn duality_checks(delta: &SimplicialComplex, field: FieldSpec) -> Result<DualityReport> {
    let class = classify_homology(delta, field)?;
    if !class.class.has_boundary() {
        return Err(Error::Hypothesis("not a homology manifold with boundary".into()));
    }
    let dim = delta.dimension()?;
    let rel = RelativeComplex::new(delta.clone(), class.boundary.with_ground(delta.ground_set()))?;
    let abs = RelativeComplex::absolute(delta.clone());
    let sigma = if class.class == HomologyClass::Ball {
        let d = dim + 1;
        let (s_rel, s_abs) = (sigma_vector(&rel, field)?, sigma_vector(&abs, field)?);
        Some(
            (0..=d)
                .map(|i| Comparison {
                    i,
                    lhs: s_rel.get(i - 1),
                    rhs: s_abs.get(d - 1 - i),
                })
                .collect(),
        )
    } else {
        None
    };
    let (m_rel, m_abs) = (mu_vector(&rel, field)?, mu_vector(&abs, field)?);
    let mu = (0..=dim)
        .map(|i| Comparison {
            i,
            lhs: m_rel.get(i),
            rhs: m_abs.get(dim - i),
        })
        .collect();
    Ok(DualityReport { sigma, mu })
}

/// Checks `b̃_{i-1}(B_W, (∂B)_W) = b̃_{d-1-i}(B_{V∖W})` for every `W ⊆ V` and
/// `0 ≤ i ≤ d`, where `d = dim B + 1`. Returns the first failing `(W, i)`, if any.
pub fn alexander_identity(ball: &SimplicialComplex, field: FieldSpec) -> Result<Option<(VertexSet, i32)>> {
    let class = classify_homology(ball, field)?;
    if class.class != HomologyClass::Ball {
        return Err(Error::Hypothesis("not a homology ball".into()));
    }
    let n = ball.ground_set().len();
    if n > 20 {
        return Err(Error::TooManyVertices(n, 20));
    }
    let d = ball.dimension()? + 1;
    let rel = RelativeComplex::new(ball.clone(), class.boundary.with_ground(ball.ground_set()))?;
    let rel_table = InducedHomology::new(&rel, field)?.per_subset();
    let abs_table = InducedHomology::new(&RelativeComplex::absolute(ball.clone()), field)?.per_subset();
    let full = (1u64 << n) - 1;
    let at = |t: &Vec<u64>, deg: i32| usize::try_from(deg + 1).ok().and_then(|k| t.get(k)).copied().unwrap_or(0);
    let labels = ball.ground_set().to_vec();
    for w in 0..=full {
        for i in 0..=d {
            if at(&rel_table[w as usize], i - 1) != at(&abs_table[(full ^ w) as usize], d - 1 - i) {
                return Ok(Some((VertexSet::from_mask(w, &labels), i)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn abs(c: SimplicialComplex) -> RelativeComplex {
        RelativeComplex::absolute(c)
    }

    #[test]
    fn sigma_of_triangle_boundary() {
        let tri = abs(boundary_of_simplex(2));
        let s = sigma_vector(&tri, q()).unwrap();
        assert_eq!(s.get(-1), r(1, 4));
        assert_eq!(s.get(1), r(1, 4));
        assert_eq!(s.get(0), r(0, 1));
        let t = simplex(3);
        let rel = RelativeComplex::new(t, boundary_of_simplex(3)).unwrap();
        assert_eq!(sigma_tilde(&rel, -1, q()).unwrap(), r(0, 1));
    }

    #[test]
    fn sigma_minus_one_counts_vertices() {
        for c in [torus7(), cross_polytope(3), stacked_sphere(3, 7, 2).unwrap()] {
            let f0 = c.vertex_support().len() as i64;
            assert_eq!(sigma_tilde(&abs(c), -1, q()).unwrap(), r(1, f0 + 1));
        }
    }

    #[test]
    fn mu_of_triangle_boundary() {
        let tri = abs(boundary_of_simplex(2));
        let m = mu_vector(&tri, q()).unwrap();
        assert_eq!(m.get(0), r(1, 1));
        assert_eq!(m.get(1), r(1, 1));
        let ghosts = abs(boundary_of_simplex(2).with_ground(&VertexSet::from([7, 8])));
        assert_eq!(mu_vector(&ghosts, q()).unwrap(), m);
    }

    #[test]
    fn morse_examples() {
        let rows = morse_bounds(&abs(boundary_of_simplex(2)), q(), 1).unwrap();
        assert_eq!((rows[1].betti, rows[1].mu.clone()), (1, r(1, 1)));
        assert!(rows.iter().all(|r| r.holds && r.alternating_holds));
        let t = RelativeComplex::new(simplex(3), boundary_of_simplex(3)).unwrap();
        let rows = morse_bounds(&t, q(), 3).unwrap();
        assert_eq!((rows[0].betti, rows[0].mu.clone()), (0, r(0, 1)));
        let cyc = abs(cross_polytope(2));
        let rows = morse_bounds(&cyc, q(), 1).unwrap();
        assert_eq!(rows[1].betti, 1);
        assert!(rows[1].holds);
    }

    #[test]
    fn ordered_morse_examples() {
        let tri = abs(boundary_of_simplex(2));
        let o = ordered_morse(&tri, &[1, 2, 3], q(), 0).unwrap();
        assert_eq!((o.betti[0], o.bound[0]), (1, 1));
        let o = ordered_morse(&tri, &[3, 1, 2], q(), 6).unwrap();
        assert!(o.holds() && o.alternating_holds());
        assert_eq!(o.betti[6], 0);
        assert!(ordered_morse(&tri, &[1, 2], q(), 0).is_err());
    }

    #[test]
    fn averaging_recovers_mu() {
        let cases = [
            abs(boundary_of_simplex(2)),
            abs(cross_polytope(3)),
            RelativeComplex::new(simplex(3), boundary_of_simplex(3)).unwrap(),
            abs(real_projective_plane()),
        ];
        for psi in cases {
            let dim = psi.total().dimension().unwrap();
            let mean = averaged_ordered_bound(&psi, q(), dim).unwrap();
            let mu = mu_vector(&psi, q()).unwrap();
            for (j, m) in mean.iter().enumerate() {
                assert_eq!(*m, mu.get(j as i32));
            }
        }
    }

    #[test]
    fn ghosts() {
        let tri = boundary_of_simplex(2);
        assert!(ground_set_invariance(&tri, &SimplicialComplex::void(), &VertexSet::from([9, 10]), q()).unwrap());
        let e = SimplicialComplex::empty_face();
        assert!(ground_set_invariance(&e, &SimplicialComplex::void(), &VertexSet::from([1, 2]), q()).unwrap());
        assert_eq!(
            ground_set_invariance(&tri, &SimplicialComplex::void(), &VertexSet::from([2]), q()),
            Err(Error::VertexPresent(2))
        );
    }

    #[test]
    fn dualities() {
        let rep = duality_checks(&simplex(3), q()).unwrap();
        assert_eq!(rep.sigma.as_ref().unwrap().len(), 5);
        assert!(rep.holds());
        let s = boundary_of_simplex(4);
        let ball = remove_facet(&s, &s.facets()[0]).unwrap();
        assert!(duality_checks(&ball, q()).unwrap().holds());
        let t = torus7();
        let punctured = remove_facet(&t, &t.facets()[0]).unwrap();
        let rep = duality_checks(&punctured, q()).unwrap();
        assert!(rep.sigma.is_none() && rep.holds());
        assert!(duality_checks(&s, q()).is_err());
    }

    #[test]
    fn alexander() {
        assert_eq!(alexander_identity(&stacked_ball(3, 4, 3).unwrap(), q()).unwrap(), None);
        let s = cyclic_polytope_boundary(4, 7).unwrap();
        let b = remove_facet(&s, &s.facets()[0]).unwrap();
        assert_eq!(alexander_identity(&b, FieldSpec::F2).unwrap(), None);
    }
}
