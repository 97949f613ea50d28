//! Classification of complexes: normal pseudomanifolds, homology spheres, balls and
//! manifolds, boundaries, stackedness, and the equality-case property (L).

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::homology::complex_betti;
use crate::sigma_mu::sigma_tilde;
use crate::{FieldSpec, Rational, RelativeComplex, SimplicialComplex, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PseudomanifoldKind {
    Closed,
    WithBoundary,
    No,
}

#[derive(Clone, Debug)]
pub struct PseudomanifoldReport {
    pub kind: PseudomanifoldKind,
    /// Generated by the ridges lying in exactly one facet; void when closed or `No`.
    pub boundary: SimplicialComplex,
    pub reason: Option<String>,
}

/// The complex generated by ridges of degree one. Requires purity and ridge degree ≤ 2.
pub fn ridge_boundary(delta: &SimplicialComplex) -> Result<SimplicialComplex> {
    delta.dimension()?;
    if !delta.is_pure() {
        return Err(Error::NotPure);
    }
    let degrees = delta.ridge_degrees();
    if let Some((r, _)) = degrees.iter().find(|(_, &k)| k > 2) {
        return Err(Error::Hypothesis(format!("ridge {r} lies in more than two facets")));
    }
    let ridges: Vec<VertexSet> =
        degrees.into_iter().filter(|&(_, k)| k == 1).map(|(r, _)| r).collect();
    if ridges.is_empty() {
        return Ok(SimplicialComplex::void());
    }
    SimplicialComplex::new(ridges, None)
}

pub fn is_normal_pseudomanifold(delta: &SimplicialComplex) -> Result<PseudomanifoldReport> {
    let d = delta.dimension()?;
    let no = |reason: String| PseudomanifoldReport {
        kind: PseudomanifoldKind::No,
        boundary: SimplicialComplex::void(),
        reason: Some(reason),
    };
    let boundary = match ridge_boundary(delta) {
        Ok(b) => b,
        Err(e) => return Ok(no(e.to_string())),
    };
    // Links of nonempty faces of dimension ≤ d - 2 must be connected.
    let table = delta.faces();
    let bad = (1..=(d - 1).max(0) as usize)
        .flat_map(|s| table.of_size(s).iter())
        .filter(|_| d >= 2)
        .find(|f| !delta.link(f).is_connected());
    if let Some(f) = bad {
        return Ok(no(format!("link of {f} is disconnected")));
    }
    let kind = if boundary.is_void() {
        PseudomanifoldKind::Closed
    } else {
        PseudomanifoldKind::WithBoundary
    };
    Ok(PseudomanifoldReport {
        kind,
        boundary,
        reason: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomologyClass {
    Sphere,
    Ball,
    ClosedManifold,
    ManifoldWithBoundary,
    Other,
}

impl HomologyClass {
    pub fn is_manifold(self) -> bool {
        self != HomologyClass::Other
    }

    pub fn has_boundary(self) -> bool {
        matches!(self, HomologyClass::Ball | HomologyClass::ManifoldWithBoundary)
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub class: HomologyClass,
    pub field: FieldSpec,
    /// Faces whose links are acyclic, as a complex; void unless the class has boundary.
    pub boundary: SimplicialComplex,
    pub reason: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum LinkProfile {
    Sphere,
    Ball,
    Neither,
}

/// Compares a Betti vector against the sphere and ball profiles of dimension `m`.
fn profile(b: &crate::homology::BettiVector, m: i32) -> LinkProfile {
    let nonzero: Vec<(i32, u64)> = b
        .entries
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(k, &x)| (k as i32 - 1, x))
        .collect();
    match nonzero.as_slice() {
        [] => LinkProfile::Ball,
        [(deg, 1)] if *deg == m => LinkProfile::Sphere,
        _ => LinkProfile::Neither,
    }
}

fn is_sphere_profile(delta: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    let d = delta.dimension()?;
    Ok(profile(&complex_betti(delta, field)?, d) == LinkProfile::Sphere)
}

/// Every nonempty face link has sphere homology of the right dimension.
fn closed_manifold_links(delta: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    let d = delta.dimension()?;
    let faces: Vec<&VertexSet> = delta.faces().iter().filter(|f| !f.is_empty()).collect();
    let ok = faces
        .par_iter()
        .map(|f| {
            let m = d - f.len() as i32;
            Ok(profile(&complex_betti(&delta.link(f), field)?, m) == LinkProfile::Sphere)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(delta.is_pure() && ok.into_iter().all(|b| b))
}

/// Tests every face link against sphere and ball homology over `field`.
pub fn classify_homology(delta: &SimplicialComplex, field: FieldSpec) -> Result<Classification> {
    let d = delta.dimension()?;
    let other = |reason: String| Classification {
        class: HomologyClass::Other,
        field,
        boundary: SimplicialComplex::void(),
        reason: Some(reason),
    };
    if !delta.is_pure() {
        return Ok(other("not pure".into()));
    }
    let faces: Vec<&VertexSet> = delta.faces().iter().filter(|f| !f.is_empty()).collect();
    let profiles = faces
        .par_iter()
        .map(|f| {
            let m = d - f.len() as i32;
            Ok(profile(&complex_betti(&delta.link(f), field)?, m))
        })
        .collect::<Result<Vec<LinkProfile>>>()?;
    if let Some(k) = profiles.iter().position(|&p| p == LinkProfile::Neither) {
        return Ok(other(format!("link of {} is neither sphere- nor ball-like", faces[k])));
    }
    let boundary_faces: Vec<VertexSet> = faces
        .iter()
        .zip(&profiles)
        .filter(|(_, &p)| p == LinkProfile::Ball)
        .map(|(f, _)| (*f).clone())
        .collect();
    if boundary_faces.is_empty() {
        let class = if is_sphere_profile(delta, field)? {
            HomologyClass::Sphere
        } else {
            HomologyClass::ClosedManifold
        };
        return Ok(Classification {
            class,
            field,
            boundary: SimplicialComplex::void(),
            reason: None,
        });
    }
    let boundary = SimplicialComplex::new(boundary_faces.clone(), None)?;
    // The boundary faces must form a complex, i.e. be closed under taking subsets.
    let generated = boundary.faces().len() - 1;
    if generated != boundary_faces.len() {
        return Ok(other("boundary faces are not closed under inclusion".into()));
    }
    if boundary.dimension()? != d - 1 || !closed_manifold_links(&boundary, field)? {
        return Ok(other("boundary is not a closed homology manifold".into()));
    }
    let acyclic = complex_betti(delta, field)?.is_zero();
    let class = if acyclic && is_sphere_profile(&boundary, field)? {
        HomologyClass::Ball
    } else {
        HomologyClass::ManifoldWithBoundary
    };
    Ok(Classification {
        class,
        field,
        boundary,
        reason: None,
    })
}

pub fn is_homology_sphere(delta: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    Ok(classify_homology(delta, field)?.class == HomologyClass::Sphere)
}

pub fn is_homology_ball(delta: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    Ok(classify_homology(delta, field)?.class == HomologyClass::Ball)
}

/// `(Δ, ∂Δ)` with the ridge-degree boundary; `(Δ, void)` when closed.
pub fn interior_faces(delta: &SimplicialComplex) -> Result<RelativeComplex> {
    let bd = ridge_boundary(delta)?;
    RelativeComplex::new(delta.clone(), bd)
}

/// No interior faces of dimension `≤ d - r - 1`.
pub fn r_stacked_with_boundary(delta: &SimplicialComplex, r: i32) -> Result<bool> {
    let pair = interior_faces(delta)?;
    if pair.sub().is_void() {
        return Err(Error::Hypothesis("complex has no boundary".into()));
    }
    let d = delta.dimension()?;
    let f = pair.f_vector()?;
    Ok((0..=d - r - 1).all(|i| f.get(i) == 0))
}

/// Stacked-sphere test for a homology sphere.
///
/// In dimension ≥ 3 this is `g_2 = 0`. In dimension 2 degree-3 vertices are removed
/// greedily (smallest id first), each replaced by its link triangle, until the
/// tetrahedron boundary is reached or no such vertex is left. Every cycle counts as
/// stacked in dimension 1, as do `S^0` and `{∅}`.
pub fn is_stacked_sphere(delta: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    if !is_homology_sphere(delta, field)? {
        return Err(Error::Hypothesis("not a homology sphere".into()));
    }
    let d = delta.dimension()?;
    match d {
        ..=1 => Ok(true),
        2 => Ok(reduce_degree_three(delta)),
        _ => Ok(RelativeComplex::absolute(delta.clone()).g_vector()?.get(2) == 0),
    }
}

fn reduce_degree_three(sphere: &SimplicialComplex) -> bool {
    let mut c = sphere.clone();
    loop {
        if c.vertex_support().len() == 4 && c.facets().len() == 4 {
            return true;
        }
        let pick = c.vertex_support().iter().find_map(|v| {
            let lk = c.link(&VertexSet::singleton(v));
            let tri = lk.vertex_support();
            (tri.len() == 3 && lk.facets().len() == 3 && !c.contains_face(&tri)).then_some((v, tri))
        });
        let Some((v, tri)) = pick else {
            return false;
        };
        let mut facets: Vec<VertexSet> =
            c.facets().iter().filter(|f| !f.contains(v)).cloned().collect();
        facets.push(tri);
        c = SimplicialComplex::new(facets, None).expect("facets from an existing complex");
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexDiagnostic {
    pub vertex: Vertex,
    pub interior: bool,
    pub passes: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyL {
    pub holds: bool,
    pub vertices: Vec<VertexDiagnostic>,
}

/// Interior-vertex links are stacked spheres and every boundary-vertex link `B`
/// satisfies `2·C(d+2,2)·σ̃_0(B, ∂B) = f_0(B, ∂B)`.
pub fn property_l(delta: &SimplicialComplex, field: FieldSpec) -> Result<PropertyL> {
    let class = classify_homology(delta, field)?;
    if !class.class.has_boundary() {
        return Err(Error::Hypothesis("not a homology manifold with boundary".into()));
    }
    let d = delta.dimension()?;
    if d < 3 {
        return Err(Error::Hypothesis(format!("dimension {d} < 3")));
    }
    let bd = &class.boundary;
    let factor = Rational::from_integer((2 * binomial(d as i64 + 2, 2)).into());
    let verts = delta.vertex_support().to_vec();
    let vertices = verts
        .par_iter()
        .map(|&v| {
            let vs = VertexSet::singleton(v);
            let lk = delta.link(&vs);
            if !bd.contains_face(&vs) {
                let (passes, detail) = match is_stacked_sphere(&lk, field) {
                    Ok(true) => (true, "link is a stacked sphere".to_string()),
                    Ok(false) => (false, "link is not a stacked sphere".to_string()),
                    Err(e) => (false, format!("link: {e}")),
                };
                return Ok(VertexDiagnostic {
                    vertex: v,
                    interior: true,
                    passes,
                    detail,
                });
            }
            let pair = RelativeComplex::new(lk, bd.link(&vs))?;
            let lhs = &factor * sigma_tilde(&pair, 0, field)?;
            let rhs = Rational::from_integer(pair.f_vector()?.get(0).into());
            Ok(VertexDiagnostic {
                vertex: v,
                interior: false,
                passes: lhs == rhs,
                detail: format!("2·C({},2)·σ̃_0 = {lhs}, f_0 = {rhs}", d + 2),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyL {
        holds: vertices.iter().all(|v| v.passes),
        vertices,
    })
}

/// Result of repeatedly undoing connected sums with simplex boundaries.
#[derive(Clone, Debug)]
pub struct Unstacking {
    pub core: SimplicialComplex,
    /// Interior vertices removed, in order, with the facet that replaced each star.
    pub removed: Vec<(Vertex, VertexSet)>,
}

/// Greedily replaces the star of an interior vertex whose link is the boundary of a
/// simplex `Ḡ` (with `G` not yet a face) by `Ḡ`, smallest vertex first. Each step
/// undoes one connected sum with `∂Δ^{d+1}`.
pub fn unstack(delta: &SimplicialComplex) -> Result<Unstacking> {
    let d = delta.dimension()?;
    let boundary = ridge_boundary(delta)?.vertex_support();
    let mut core = delta.clone();
    let mut removed = Vec::new();
    loop {
        let pick = core.vertex_support().iter().filter(|v| !boundary.contains(*v)).find_map(|v| {
            let lk = core.link(&VertexSet::singleton(v));
            let g = lk.vertex_support();
            let is_simplex_boundary = g.len() == d as usize + 1
                && lk.facets().len() == d as usize + 1
                && lk.facets().iter().all(|f| f.len() == d as usize);
            (is_simplex_boundary && !core.contains_face(&g)).then_some((v, g))
        });
        let Some((v, g)) = pick else {
            return Ok(Unstacking { core, removed });
        };
        let mut facets: Vec<VertexSet> =
            core.facets().iter().filter(|f| !f.contains(v)).cloned().collect();
        facets.push(g.clone());
        let ground = core.ground_set().without(v);
        core = SimplicialComplex::new(facets, Some(ground))?;
        removed.push((v, g));
    }
}
