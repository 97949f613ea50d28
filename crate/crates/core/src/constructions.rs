//! Deterministic, seedable generators for triangulation families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::masks_of_size;
use crate::error::{Error, Result};
use crate::recognition::ridge_boundary;
use crate::{SimplicialComplex, Vertex, VertexSet};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The full `k`-simplex on `{1..k+1}`.
pub fn simplex(k: u32) -> SimplicialComplex {
    SimplicialComplex::new(vec![VertexSet::range(k + 1)], None).expect("valid facet")
}

/// All proper faces of the `k`-simplex on `{1..k+1}`; `{∅}` for `k = 0`.
pub fn boundary_of_simplex(k: u32) -> SimplicialComplex {
    let full = VertexSet::range(k + 1);
    let facets = full.iter().map(|v| full.without(v)).collect();
    SimplicialComplex::new(facets, Some(full)).expect("valid facets")
}

/// Cone with apex `v`.
pub fn cone(v: Vertex, delta: &SimplicialComplex) -> Result<SimplicialComplex> {
    if v == 0 {
        return Err(Error::NonPositiveVertex);
    }
    if delta.ground_set().contains(v) {
        return Err(Error::VertexPresent(v));
    }
    let facets = delta.facets().iter().map(|f| f.with(v)).collect();
    SimplicialComplex::new(facets, Some(delta.ground_set().with(v)))
}

/// `Δ ∪ (u * ∂Δ)`, closing up a pseudomanifold with boundary.
pub fn cap_boundary(delta: &SimplicialComplex, u: Vertex) -> Result<SimplicialComplex> {
    let bd = ridge_boundary(delta)?;
    if bd.is_void() {
        return Err(Error::Hypothesis("complex has no boundary".into()));
    }
    let capped = cone(u, &bd.with_ground(delta.ground_set()))?;
    let facets = delta.facets().iter().chain(capped.facets()).cloned().collect();
    SimplicialComplex::new(facets, Some(capped.ground_set().clone()))
}

/// Glues `Δ″` to `Δ′` along the facets `F″ ↦ F′` and removes the glued facet.
///
/// `phi` lists pairs `(a′, a″)` with `a′ ∈ F′`, `a″ ∈ F″`; `None` pairs both facets in
/// ascending order. The remaining vertices of `Δ″` get fresh ids above `max(Δ′)`.
pub fn connected_sum(
    left: &SimplicialComplex,
    f_left: &VertexSet,
    right: &SimplicialComplex,
    f_right: &VertexSet,
    phi: Option<&[(Vertex, Vertex)]>,
) -> Result<SimplicialComplex> {
    let (dl, dr) = (left.dimension()?, right.dimension()?);
    if dl != dr {
        return Err(Error::DimensionMismatch(dl, dr));
    }
    if !left.is_pure() || !right.is_pure() {
        return Err(Error::NotPure);
    }
    for (c, f) in [(left, f_left), (right, f_right)] {
        if !c.is_facet(f) {
            return Err(Error::NotAFacet(f.clone()));
        }
    }
    let pairs: Vec<(Vertex, Vertex)> = match phi {
        Some(p) => p.to_vec(),
        None => f_left.iter().zip(f_right.iter()).collect(),
    };
    let firsts: VertexSet = pairs.iter().map(|p| p.0).collect();
    let seconds: VertexSet = pairs.iter().map(|p| p.1).collect();
    if pairs.len() != f_left.len() || firsts != *f_left || seconds != *f_right {
        return Err(Error::InvalidPairing(format!("{pairs:?} is not a bijection {f_left} → {f_right}")));
    }
    let base = left.ground_set().last().unwrap_or(0);
    let mut fresh = base;
    let mut map = std::collections::BTreeMap::new();
    for (a, b) in &pairs {
        map.insert(*b, *a);
    }
    for v in right.ground_set().iter().filter(|v| !f_right.contains(*v)) {
        fresh += 1;
        map.insert(v, fresh);
    }
    let right = right.relabel(|v| map[&v]);
    let glued: VertexSet = f_left.clone();
    let facets = left
        .facets()
        .iter()
        .chain(right.facets())
        .filter(|f| **f != glued)
        .cloned()
        .collect();
    SimplicialComplex::new(facets, Some(left.ground_set().union(right.ground_set())))
}

/// Replaces facet `F` by the cone over `∂F` with a new apex; equals `Δ # ∂Δ^{d+1}` at `F`.
fn stellar_subdivide(delta: &SimplicialComplex, f: &VertexSet, apex: Vertex) -> SimplicialComplex {
    let mut facets: Vec<VertexSet> = delta.facets().iter().filter(|g| *g != f).cloned().collect();
    facets.extend(f.iter().map(|v| f.without(v).with(apex)));
    SimplicialComplex::new(facets, Some(delta.ground_set().with(apex))).expect("valid facets")
}

/// `k` successive connected sums with `∂Δ^{d+1}` at seeded-random facets.
pub fn stellar_subdivisions(delta: &SimplicialComplex, k: usize, seed: u64) -> Result<SimplicialComplex> {
    delta.dimension()?;
    let mut rng = rng(seed);
    let mut c = delta.clone();
    for _ in 0..k {
        let f = c.facets()[rng.gen_range(0..c.facets().len())].clone();
        let apex = c.ground_set().last().unwrap_or(0) + 1;
        c = stellar_subdivide(&c, &f, apex);
    }
    Ok(c)
}

/// A stacked `d`-sphere on `n` vertices.
pub fn stacked_sphere(d: u32, n: u32, seed: u64) -> Result<SimplicialComplex> {
    if n < d + 2 {
        return Err(Error::Parameter(format!("stacked {d}-sphere needs at least {} vertices, got {n}", d + 2)));
    }
    stellar_subdivisions(&boundary_of_simplex(d + 1), (n - d - 2) as usize, seed)
}

/// A facet tree of `m` `d`-simplices, each new one glued along a seeded-random
/// boundary ridge.
pub fn stacked_ball(d: u32, m: usize, seed: u64) -> Result<SimplicialComplex> {
    if m == 0 || d == 0 {
        return Err(Error::Parameter(format!("stacked ball needs d ≥ 1 and m ≥ 1, got d={d}, m={m}")));
    }
    let mut rng = rng(seed);
    let mut c = simplex(d);
    for _ in 1..m {
        let ridges = ridge_boundary(&c)?.facets().to_vec();
        let r = &ridges[rng.gen_range(0..ridges.len())];
        let apex = c.ground_set().last().unwrap_or(0) + 1;
        let mut facets = c.facets().to_vec();
        facets.push(r.with(apex));
        c = SimplicialComplex::new(facets, None)?;
    }
    Ok(c)
}

/// Boundary of the cyclic `d`-polytope with `n` vertices, by Gale's evenness condition:
/// a `d`-subset `S` is a facet iff every two non-elements are separated by an even
/// number of elements of `S`.
pub fn cyclic_polytope_boundary(d: u32, n: u32) -> Result<SimplicialComplex> {
    if d < 2 || n < d + 1 || n > 64 {
        return Err(Error::Parameter(format!("cyclic polytope needs 2 ≤ d < n ≤ 64, got d={d}, n={n}")));
    }
    let labels: Vec<Vertex> = (1..=n).collect();
    let facets = masks_of_size(n as usize, d as usize)
        .into_iter()
        .filter(|&m| {
            let outside: Vec<u32> = (0..n).filter(|i| m & (1 << i) == 0).collect();
            outside.windows(2).all(|w| {
                let between = m & ((1u64 << w[1]) - 1) & !((1u64 << (w[0] + 1)) - 1);
                between.count_ones() % 2 == 0
            })
        })
        .map(|m| VertexSet::from_mask(m, &labels))
        .collect();
    SimplicialComplex::new(facets, None)
}

/// Removes facet `F`, keeping its proper faces.
pub fn remove_facet(delta: &SimplicialComplex, f: &VertexSet) -> Result<SimplicialComplex> {
    if !delta.is_facet(f) {
        return Err(Error::NotAFacet(f.clone()));
    }
    let mut facets: Vec<VertexSet> = delta.facets().iter().filter(|g| *g != f).cloned().collect();
    facets.extend(f.iter().map(|v| f.without(v)));
    SimplicialComplex::new(facets, Some(delta.ground_set().clone()))
}

/// Boundary of the `k`-dimensional cross-polytope; `i` and `i + k` are antipodal.
pub fn cross_polytope(k: u32) -> SimplicialComplex {
    let facets = (0..1u64 << k)
        .map(|choice| (1..=k).map(|i| if choice >> (i - 1) & 1 == 0 { i } else { i + k }).collect())
        .collect();
    SimplicialComplex::new(facets, None).expect("valid facets")
}

/// Join with two new apices `a`, `b` above the ground set.
pub fn suspension(delta: &SimplicialComplex) -> Result<SimplicialComplex> {
    delta.dimension()?;
    let a = delta.ground_set().last().unwrap_or(0) + 1;
    let b = a + 1;
    let facets = delta.facets().iter().flat_map(|f| [f.with(a), f.with(b)]).collect();
    SimplicialComplex::new(facets, Some(delta.ground_set().with(a).with(b)))
}

/// The 6-vertex real projective plane.
pub fn real_projective_plane() -> SimplicialComplex {
    SimplicialComplex::from_facets(&[
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [3, 4, 6],
        [2, 4, 5],
        [3, 5, 6],
        [2, 4, 6],
    ])
}

/// The 7-vertex torus.
pub fn torus7() -> SimplicialComplex {
    let m = |x: u32| x % 7 + 1;
    let facets: Vec<[Vertex; 3]> = (0..7)
        .flat_map(|i| [[m(i), m(i + 1), m(i + 3)], [m(i), m(i + 2), m(i + 3)]])
        .collect();
    SimplicialComplex::from_facets(&facets)
}

/// A handle attached to a stacked `k`-sphere: `S^{k-1} × S^1`, or the twisted bundle.
///
/// Starts from the path-stacked `(k+1)`-ball on `4k+4` vertices, takes its boundary,
/// deletes the end facets `{1..k+1}` and `{3k+4..4k+4}` and identifies them. The
/// pairing is ascending, with the first two vertices swapped when `swap` is set.
fn handle(k: u32, swap: bool) -> SimplicialComplex {
    let n = 4 * k + 4;
    let ball_facets = (1..=n - k - 1).map(|i| (i..=i + k + 1).collect()).collect();
    let ball = SimplicialComplex::new(ball_facets, None).expect("valid facets");
    let bd = ridge_boundary(&ball).expect("a ball is a pseudomanifold");
    let first: Vec<Vertex> = (1..=k + 1).collect();
    let mut last: Vec<Vertex> = (n - k..=n).collect();
    if swap {
        last.swap(0, 1);
    }
    let map = |v: Vertex| last.iter().position(|&u| u == v).map_or(v, |p| first[p]);
    let (fa, fb): (VertexSet, VertexSet) = (first.iter().copied().collect(), last.iter().copied().collect());
    let facets = bd
        .facets()
        .iter()
        .filter(|f| **f != fa && **f != fb)
        .map(|f| f.iter().map(map).collect())
        .collect();
    let glued = SimplicialComplex::new(facets, None).expect("valid facets");
    // Close up the id gap left by the identified vertices.
    let support = glued.vertex_support().to_vec();
    glued.relabel(|v| support.iter().position(|&u| u == v).unwrap() as Vertex + 1)
}

/// `S^{k-1} × S^1` (`twisted = false`) or the twisted `S^{k-1}`-bundle over the circle,
/// as a `k`-manifold on `3k+3` vertices. `k ≥ 2`.
pub fn sphere_bundle(k: u32, twisted: bool) -> Result<SimplicialComplex> {
    if k < 2 {
        return Err(Error::Parameter(format!("sphere bundle needs k ≥ 2, got {k}")));
    }
    // The ascending pairing yields the orientable bundle in every dimension.
    Ok(handle(k, twisted))
}
