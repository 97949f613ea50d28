//! One evaluator per check. Throughout, `dim` is the dimension of the input and
//! `d = dim + 1` its Krull dimension; statements about "(d-1)-dimensional" complexes
//! use `d`, statements about "d-dimensional" ones use `dim` in place of their `d`.

use num_traits::Zero;

use crate::combinatorics::{binomial, binomial_big};
use crate::error::Result;
use crate::homology::{complex_betti, euler_characteristic, orientable};
use crate::recognition::{
    interior_faces, is_normal_pseudomanifold, is_stacked_sphere, property_l, unstack, HomologyClass,
    PseudomanifoldKind,
};
use crate::sigma_mu::{duality_checks, morse_bounds, vertex_link};
use crate::stanley_reisner::{
    ball_betti_bounds, euler_koszul, graded_betti, h_double_prime, lemma53_sides, linear_strand_bounds,
    resolution_oracle, schenzel_check, MAX_ORACLE_VERTICES,
};
use crate::{FieldSpec, Integer, Rational, RelativeComplex, SimplicialComplex, VertexSet};

use super::{Analysis, CheckId, CheckOptions, Outcome, Relation, Row};

fn q(x: i64) -> Rational {
    Rational::from_integer(Integer::from(x))
}

fn binom(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial_big(n, k))
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn skip(reason: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Skipped(reason.into()))
}

fn rows(rows: Vec<Row>) -> Result<Outcome> {
    Ok(Outcome::Rows { rows, notes: Vec::new() })
}

fn with_notes(rows: Vec<Row>, notes: Vec<String>) -> Result<Outcome> {
    Ok(Outcome::Rows { rows, notes })
}

fn flag(b: bool) -> Rational {
    q(b as i64)
}

pub(crate) fn evaluate(id: CheckId, a: &Analysis, o: &CheckOptions) -> Result<Outcome> {
    a.dim()?;
    match id {
        CheckId::DehnSommerville => dehn_sommerville(a),
        CheckId::Graebe => graebe(a),
        CheckId::HAndG => h_and_g(a),
        CheckId::LbtClosed => lbt_closed(a),
        CheckId::Main1 => main1(a),
        CheckId::Main1Equality => main1_equality(a),
        CheckId::H2Corollary => h2_corollary(a),
        CheckId::Main2 => main2(a, o),
        CheckId::MuLowerBound => thm55(a, o),
        CheckId::SigmaGBound => prop52(a, o),
        CheckId::InteriorSigmaBound => prop61(a),
        CheckId::ClosedSigmaBound => lemma62(a),
        CheckId::MuG2Bound => thm63(a),
        CheckId::MissingFacesEquality => missing_faces_eq(a),
        CheckId::CriterionBall => criterion_ball(a),
        CheckId::SharpnessFacetRemoved => sharpness(a),
        CheckId::DualitySigma => duality(a, true),
        CheckId::DualityMu => duality(a, false),
        CheckId::Morse => morse(a),
        CheckId::HochsterOracle => hochster_oracle(a),
        CheckId::Schenzel => schenzel(a, o),
        CheckId::BallBettiBound => thm46(a, o),
        CheckId::LinearStrandBound => thm49(a),
        CheckId::EulerKoszul => prop43(a),
        CheckId::BinomialAverage => lemma53(a),
        CheckId::LinkSumG => lemma54(a),
        CheckId::VertexDeletion => vertex_deletion(a),
    }
}

/// Gate: homology manifold with nonempty boundary over the analysis field.
fn manifold_with_boundary(a: &Analysis) -> Result<Option<String>> {
    let c = a.classification()?;
    Ok(if c.class.has_boundary() {
        None
    } else {
        Some(format!("not a homology manifold with boundary over {}", a.field))
    })
}

/// Gate: normal pseudomanifold of the given kind with `dim ≥ min_dim`.
fn pseudomanifold(a: &Analysis, kind: PseudomanifoldKind, min_dim: i32) -> Result<Option<String>> {
    let pm = a.pseudomanifold()?;
    let dim = a.dim()?;
    if pm.kind != kind {
        let what = match kind {
            PseudomanifoldKind::Closed => "a closed normal pseudomanifold",
            _ => "a normal pseudomanifold with boundary",
        };
        return Ok(Some(format!("not {what}")));
    }
    if dim < min_dim {
        return Ok(Some(format!("dimension {dim} < {min_dim}")));
    }
    Ok(None)
}

macro_rules! gate {
    ($e:expr) => {
        if let Some(reason) = $e? {
            return skip(reason);
        }
    };
}

fn dehn_sommerville(a: &Analysis) -> Result<Outcome> {
    gate!(manifold_with_boundary(a));
    if !orientable(&a.delta, a.field)? {
        return skip(format!("not orientable over {}", a.field));
    }
    let d = a.dim()? + 1;
    let rel = h_double_prime(&a.boundary_pair()?, a.field)?;
    let abs = h_double_prime(&RelativeComplex::absolute(a.delta.clone()), a.field)?;
    let connected = a.delta.is_connected();
    let out = (0..=d)
        .filter(|&i| (0 < i && i < d) || connected)
        .map(|i| Row::new(format!("i={i}"), q(rel[i as usize]), Relation::Eq, q(abs[(d - i) as usize])))
        .collect();
    rows(out)
}

fn graebe(a: &Analysis) -> Result<Outcome> {
    gate!(manifold_with_boundary(a));
    let d = a.dim()? + 1;
    let h = RelativeComplex::absolute(a.delta.clone()).h_vector()?;
    let hr = a.boundary_pair()?.h_vector()?;
    let chi = euler_characteristic(&a.delta, a.field)?;
    let out = (0..=d)
        .map(|i| {
            let lhs = h.get(d - i) + binomial(d as i64, i as i64) * sign((d - i) as i64) * chi;
            Row::new(format!("i={i}"), q(lhs), Relation::Eq, q(hr.get(i)))
        })
        .collect();
    rows(out)
}

fn h_and_g(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::WithBoundary, 0));
    let d = a.dim()? + 1;
    let h = RelativeComplex::absolute(a.delta.clone()).h_vector()?;
    let hr = a.boundary_pair()?.h_vector()?;
    // g_i = h_i - h_{i-1} with h extended by zeros, so g_d(∂Δ) = -h_{d-1}(∂Δ).
    let hb = RelativeComplex::absolute(a.boundary()?).h_vector()?;
    let out = (0..=d)
        .map(|i| {
            let gb = hb.get(i) - hb.get(i - 1);
            Row::new(format!("i={i}"), q(h.get(i)), Relation::Eq, q(hr.get(i) + gb))
        })
        .collect();
    rows(out)
}

fn lbt_closed(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::Closed, 3));
    let dim = a.dim()? as i64;
    let g2 = RelativeComplex::absolute(a.delta.clone()).g_vector()?.get(2);
    let b = a.betti_abs()?;
    let rhs = binom(dim + 2, 2) * q(b.get(1) as i64 - b.get(0) as i64);
    let mut notes = Vec::new();
    if q(g2) == rhs {
        notes.push("equality".into());
    }
    with_notes(vec![Row::new("g_2", q(g2), Relation::Ge, rhs)], notes)
}

/// `g_2(Δ,∂Δ)` with the Betti and μ right-hand sides, for pseudomanifolds with boundary.
fn g2_sides(a: &Analysis) -> Result<(Rational, Rational, Rational)> {
    let dim = a.dim()? as i64;
    let g2 = q(a.boundary_pair()?.g_vector()?.get(2));
    let b = a.betti_pair()?;
    let c = binom(dim + 2, 2);
    let betti = &c * q(b.get(1) as i64 - b.get(0) as i64);
    let mu = a.mu_pair()?;
    let mu_rhs = &c * (mu.get(1) - mu.get(0));
    Ok((g2, betti, mu_rhs))
}

fn property_l_note(a: &Analysis) -> Option<bool> {
    property_l(&a.delta, a.field).ok().map(|p| p.holds)
}

fn main1(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::WithBoundary, 3));
    let dim = a.dim()? as i64;
    let g2 = q(a.boundary_pair()?.g_vector()?.get(2));
    let b = a.betti_pair()?;
    let rhs = binom(dim + 2, 2) * q(b.get(1) as i64 - b.get(0) as i64);
    let mut notes = Vec::new();
    if g2 == rhs {
        notes.push("equality".into());
    }
    if let Some(l) = property_l_note(a) {
        notes.push(format!("property_L={}", if l { "holds" } else { "fails" }));
    }
    with_notes(vec![Row::new("g_2", g2, Relation::Ge, rhs)], notes)
}

/// μ-equality coincides with (L); Betti-equality implies (L).
fn main1_equality(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::WithBoundary, 3));
    gate!(manifold_with_boundary(a));
    let (g2, betti, mu) = g2_sides(a)?;
    let l = property_l(&a.delta, a.field)?.holds;
    let notes = vec![format!("betti_gap={}", &g2 - &betti), format!("mu_gap={}", &g2 - &mu)];
    with_notes(
        vec![
            Row::new("[mu equality] = [L]", flag(g2 == mu), Relation::Eq, flag(l)),
            Row::new("[betti equality] <= [L]", flag(g2 == betti), Relation::Le, flag(l)),
        ],
        notes,
    )
}

fn h2_corollary(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::WithBoundary, 3));
    let bd = a.boundary()?;
    if is_normal_pseudomanifold(&bd)?.kind != PseudomanifoldKind::Closed {
        return skip("boundary is not a closed normal pseudomanifold");
    }
    let dim = a.dim()? as i64;
    let h2 = q(RelativeComplex::absolute(a.delta.clone()).h_vector()?.get(2));
    let pair = a.boundary_pair()?;
    let f0 = q(pair.f_vector()?.get(0));
    let b = a.betti_pair()?;
    let main = binom(dim + 2, 2) * q(b.get(1) as i64 - b.get(0) as i64);
    let tail = if dim >= 4 {
        let bb = complex_betti(&bd, a.field)?;
        binom(dim + 1, 2) * q(bb.get(1) as i64 - bb.get(0) as i64)
    } else {
        // The three-dimensional form uses F_2 on the boundary surface.
        let bb = complex_betti(&bd, FieldSpec::F2)?;
        q(3 * (bb.get(1) as i64 - 2 * bb.get(0) as i64))
    };
    rows(vec![Row::new("h_2", h2, Relation::Ge, f0 + main + tail)])
}

/// Gate: homology manifold whose vertex links all pass the sampled WLP test.
fn links_have_wlp(a: &Analysis, o: &CheckOptions) -> Result<Option<String>> {
    if !a.classification()?.class.is_manifold() {
        return Ok(Some(format!("not a homology manifold over {}", a.field)));
    }
    for (v, w) in a.link_wlp(o)? {
        if !w.passes() {
            return Ok(Some(format!("WLP not witnessed for the link of vertex {v}")));
        }
    }
    Ok(None)
}

fn main2(a: &Analysis, o: &CheckOptions) -> Result<Outcome> {
    gate!(links_have_wlp(a, o));
    let dim = a.dim()? as i64;
    let g = a.boundary_pair()?.g_vector()?;
    let b = a.betti_pair()?;
    let out = (1..=(dim + 1) / 2)
        .map(|r| {
            let alt: i64 = (1..=r).map(|j| sign(r - j) * b.get(j as i32 - 1) as i64).sum();
            Row::new(format!("r={r}"), q(g.get(r as i32)), Relation::Ge, binom(dim + 2, r) * q(alt))
        })
        .collect();
    with_notes(out, vec![format!("wlp_seed={}", o.seed)])
}

fn thm55(a: &Analysis, o: &CheckOptions) -> Result<Outcome> {
    gate!(links_have_wlp(a, o));
    let dim = a.dim()? as i64;
    let g = a.boundary_pair()?.g_vector()?;
    let mu = a.mu_pair()?;
    let out = (0..=(dim + 1) / 2)
        .map(|r| {
            let alt = (1..=r).fold(Rational::zero(), |acc, k| acc + q(sign(r - k)) * mu.get(k as i32 - 1));
            let rhs = binom(dim + 2, r) * (alt + q(sign(r) * g.get(0)));
            Row::new(format!("r={r}"), q(g.get(r as i32)), Relation::Ge, rhs)
        })
        .collect();
    with_notes(out, vec![format!("wlp_seed={}", o.seed)])
}

fn prop52(a: &Analysis, o: &CheckOptions) -> Result<Outcome> {
    let c = a.classification()?;
    if !matches!(c.class, HomologyClass::Ball | HomologyClass::Sphere) {
        return skip(format!("not a homology ball or sphere over {}", a.field));
    }
    if !a.wlp(o)?.passes() {
        return skip("WLP not witnessed");
    }
    let d = a.dim()? as i64 + 1;
    let g = a.boundary_pair()?.g_vector()?;
    let sigma = a.sigma_pair()?;
    let out = (0..=(d - 1) / 2)
        .map(|j| {
            let lhs = (0..=j).fold(Rational::zero(), |acc, i| acc + q(sign(j - i)) * sigma.get(i as i32 - 1));
            let rhs = (0..=j).fold(Rational::zero(), |acc, i| {
                acc + Rational::new(Integer::from(sign(j - i) * g.get(i as i32)), binomial_big(d + 1, i))
            }) / q(d + 2);
            Row::new(format!("j={j}"), lhs, Relation::Le, rhs)
        })
        .collect();
    with_notes(out, vec![format!("wlp_seed={}", o.seed)])
}

fn prop61(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::WithBoundary, 2));
    let d = a.dim()? as i64 + 1;
    let lhs = binom(d + 2, 2) * a.sigma_pair()?.get(0);
    let rhs = q(a.boundary_pair()?.f_vector()?.get(0)) / q(2);
    rows(vec![Row::new("sigma_0", lhs, Relation::Le, rhs)])
}

fn lemma62(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::Closed, 2));
    let d = a.dim()? as i64 + 1;
    let s = a.sigma_abs()?;
    let lhs = binom(d + 2, 2) * (s.get(0) - s.get(-1));
    let rhs = q(a.delta.vertex_support().len() as i64) / q(2) - q(d + 1);
    let stacked = is_stacked_sphere(&a.delta, a.field).unwrap_or(false);
    let equal = lhs == rhs;
    rows(vec![
        Row::new("sigma_0 - sigma_-1", lhs, Relation::Le, rhs),
        Row::new("[equality] = [stacked sphere]", flag(equal), Relation::Eq, flag(stacked)),
    ])
}

fn thm63(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::WithBoundary, 3));
    let (g2, _, mu) = g2_sides(a)?;
    let equal = g2 == mu;
    let mut out = vec![Row::new("g_2", g2, Relation::Ge, mu)];
    // The vertex conditions of the equality case are those of property (L).
    if let Some(l) = property_l_note(a) {
        out.push(Row::new("[equality] = [vertex conditions]", flag(equal), Relation::Eq, flag(l)));
    }
    rows(out)
}

/// Interior vertex and edge counts of the core left by undoing simplex-boundary summands.
fn unstacked_core(delta: &SimplicialComplex) -> Result<(usize, i64, i64)> {
    let u = unstack(delta)?;
    let f = interior_faces(&u.core)?.f_vector()?;
    Ok((u.removed.len(), f.get(0), f.get(1)))
}

fn missing_faces_eq(a: &Analysis) -> Result<Outcome> {
    if a.classification()?.class != HomologyClass::Ball {
        return skip(format!("not a homology ball over {}", a.field));
    }
    let d = a.dim()? as i64 + 1;
    if d < 3 {
        return skip(format!("dimension {} < 2", d - 1));
    }
    let lhs = q(2) * binom(d + 2, 2) * a.sigma_pair()?.get(0);
    let f0 = q(a.boundary_pair()?.f_vector()?.get(0));
    let (removed, core_vertices, _) = unstacked_core(&a.delta)?;
    let decomposes = core_vertices == 0;
    with_notes(
        vec![Row::new("[sigma equality] = [T#S_1#...#S_m]", flag(lhs == f0), Relation::Eq, flag(decomposes))],
        vec![format!("2C(d+2,2)sigma_0={lhs}"), format!("f_0={f0}"), format!("summands={removed}")],
    )
}

fn criterion_ball(a: &Analysis) -> Result<Outcome> {
    if a.classification()?.class != HomologyClass::Ball {
        return skip(format!("not a homology ball over {}", a.field));
    }
    if a.dim()? < 3 {
        return skip("dimension < 3");
    }
    let g2 = a.boundary_pair()?.g_vector()?.get(2);
    let (removed, cv, ce) = unstacked_core(&a.delta)?;
    with_notes(
        vec![Row::new("[g_2 = 0] = [Gamma#S_1#...#S_m]", flag(g2 == 0), Relation::Eq, flag(cv == 0 && ce == 0))],
        vec![format!("g_2={g2}"), format!("summands={removed}")],
    )
}

/// Closed input with `g_r = C(dim+2,r) Σ (-1)^{r-j} b̃_{j-1}` for `s ≤ r ≤ (dim+1)/2`:
/// the same equality for the input minus a facet, for `max(s,2) ≤ r`.
fn sharpness(a: &Analysis) -> Result<Outcome> {
    if a.classification()?.class != HomologyClass::Sphere && a.classification()?.class != HomologyClass::ClosedManifold {
        return skip(format!("not a closed homology manifold over {}", a.field));
    }
    let dim = a.dim()? as i64;
    let top = (dim + 1) / 2;
    if top < 2 {
        return skip("no r with 2 ≤ r ≤ (dim+1)/2");
    }
    let sides = |psi: &RelativeComplex, r: i64| -> Result<(i64, Rational)> {
        let g = psi.g_vector()?;
        let b = crate::homology::reduced_betti(psi, a.field)?;
        let alt: i64 = (1..=r).map(|j| sign(r - j) * b.get(j as i32 - 1) as i64).sum();
        Ok((g.get(r as i32), binom(dim + 2, r) * q(alt)))
    };
    let closed = RelativeComplex::absolute(a.delta.clone());
    // Smallest s ≥ 2 from which the closed equality holds up to the top.
    let mut s = top + 1;
    for r in (2..=top).rev() {
        let (g, rhs) = sides(&closed, r)?;
        if q(g) != rhs {
            break;
        }
        s = r;
    }
    if s > top {
        return skip("closed equality not attained for any r ≥ 2");
    }
    let facet = a.delta.facets()[0].clone();
    let removed = crate::constructions::remove_facet(&a.delta, &facet)?;
    let bd = crate::recognition::ridge_boundary(&removed)?;
    let pair = RelativeComplex::new(removed.clone(), bd.with_ground(removed.ground_set()))?;
    let out = (s..=top)
        .map(|r| {
            let (g, rhs) = sides(&pair, r)?;
            Ok(Row::new(format!("r={r}"), q(g), Relation::Eq, rhs))
        })
        .collect::<Result<Vec<_>>>()?;
    with_notes(out, vec![format!("s={s}"), format!("removed_facet={facet}")])
}

fn duality(a: &Analysis, sigma: bool) -> Result<Outcome> {
    gate!(manifold_with_boundary(a));
    let report = duality_checks(&a.delta, a.field)?;
    let list = if sigma {
        match report.sigma {
            Some(s) => s,
            None => return skip(format!("not a homology ball over {}", a.field)),
        }
    } else {
        report.mu
    };
    let name = if sigma { "sigma" } else { "mu" };
    rows(
        list.into_iter()
            .map(|c| Row::new(format!("{name} i={}", c.i), c.lhs, Relation::Eq, c.rhs))
            .collect(),
    )
}

fn morse(a: &Analysis) -> Result<Outcome> {
    let psi = a.general_pair()?;
    let dim = a.dim()?;
    let mut out = Vec::new();
    for row in morse_bounds(&psi, a.field, dim)? {
        out.push(Row::new(format!("b_{0} <= mu_{0}", row.i), q(row.betti as i64), Relation::Le, row.mu));
        out.push(Row::new(
            format!("alternating i={}", row.i),
            q(row.alternating_betti),
            Relation::Le,
            row.alternating_mu,
        ));
    }
    rows(out)
}

fn pairs_for_tables(a: &Analysis) -> Vec<(String, RelativeComplex)> {
    let mut out = vec![("F[D]".to_string(), RelativeComplex::absolute(a.delta.clone()))];
    if let Some(sub) = &a.sub {
        if let Ok(p) = RelativeComplex::new(a.delta.clone(), sub.with_ground(a.delta.ground_set())) {
            out.push(("F[D,G]".into(), p));
        }
    } else if let Ok(p) = a.boundary_pair() {
        if !p.sub().is_void() {
            out.push(("F[D,dD]".into(), p));
        }
    }
    out
}

fn hochster_oracle(a: &Analysis) -> Result<Outcome> {
    let n = a.delta.ground_set().len();
    if n > MAX_ORACLE_VERTICES {
        return skip(format!("{n} vertices exceed the oracle limit {MAX_ORACLE_VERTICES}"));
    }
    let mut out = Vec::new();
    for (name, psi) in pairs_for_tables(a) {
        let h = graded_betti(&psi, a.field)?;
        let o = resolution_oracle(&psi, a.field, n)?;
        for i in 0..=n {
            for j in 0..=n {
                let (x, y) = (h.get(i as i64, j as i64), o.get(i as i64, j as i64));
                if x != 0 || y != 0 {
                    out.push(Row::new(format!("{name} beta_{i},{j}"), q(x as i64), Relation::Eq, q(y as i64)));
                }
            }
        }
    }
    rows(out)
}

fn schenzel(a: &Analysis, o: &CheckOptions) -> Result<Outcome> {
    let field = FieldSpec::prime(o.prime)?;
    let class = crate::recognition::classify_homology(&a.delta, field)?;
    if !class.class.is_manifold() {
        return skip(format!("not a homology manifold over {field}"));
    }
    let out = schenzel_check(&a.delta, o.prime, o.seed)?;
    if out.passes.is_none() {
        return skip(format!("inconclusive after {} attempts", out.attempts));
    }
    let mut list: Vec<Row> = out
        .expected
        .iter()
        .enumerate()
        .map(|(j, &e)| Row::new(format!("j={j}"), q(out.dims[j] as i64), Relation::Eq, q(e)))
        .collect();
    let d = out.expected.len();
    list.push(Row::new(format!("j={d}"), q(out.dims[d] as i64), Relation::Eq, q(0)));
    with_notes(list, vec![format!("seed={}", out.seed), format!("p={}", o.prime)])
}

fn thm46(a: &Analysis, o: &CheckOptions) -> Result<Outcome> {
    let c = a.classification()?;
    if !matches!(c.class, HomologyClass::Ball | HomologyClass::Sphere) {
        return skip(format!("not a homology ball or sphere over {}", a.field));
    }
    if !a.wlp(o)?.passes() {
        return skip("WLP not witnessed");
    }
    let d = a.dim()? as i64 + 1;
    let g = a.boundary_pair()?.g_vector()?;
    let table = a.table_pair()?;
    let out = ball_betti_bounds(&table, &g.0, d)
        .into_iter()
        .map(|b| Row::new(format!("i={} l={}", b.i, b.l), q(b.lhs), Relation::Le, q(b.rhs)))
        .collect();
    with_notes(out, vec![format!("wlp_seed={}", o.seed)])
}

fn thm49(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::WithBoundary, 2));
    let d = a.dim()? as i64 + 1;
    let g1 = a.boundary_pair()?.g_vector()?.get(1);
    let table = a.table_pair()?;
    rows(
        linear_strand_bounds(&table, g1, d)
            .into_iter()
            .map(|b| Row::new(format!("i={}", b.i), q(b.lhs), Relation::Le, q(b.rhs)))
            .collect(),
    )
}

fn prop43(a: &Analysis) -> Result<Outcome> {
    let mut out = Vec::new();
    for (name, psi) in pairs_for_tables(a) {
        let table = if name == "F[D,dD]" { a.table_pair()? } else { graded_betti(&psi, a.field)? };
        for b in euler_koszul(&psi, &table)? {
            out.push(Row::new(format!("{name} l={}", b.l), q(b.lhs), Relation::Eq, q(b.rhs)));
        }
    }
    rows(out)
}

fn lemma53(a: &Analysis) -> Result<Outcome> {
    let n = a.delta.ground_set().len() as i64;
    let d = a.dim()? as i64 + 1;
    if n < d + 1 {
        return skip("fewer than d+1 vertices");
    }
    rows(
        (0..=d + 1)
            .map(|r| {
                let (l, rr) = lemma53_sides(n, d, r);
                Row::new(format!("n={n} d={d} r={r}"), l, Relation::Eq, rr)
            })
            .collect(),
    )
}

fn lemma54(a: &Analysis) -> Result<Outcome> {
    if !a.delta.is_pure() {
        return skip("not pure");
    }
    let psi = a.general_pair()?;
    let dim = a.dim()?;
    let g = psi.g_vector()?;
    let link_g: Vec<_> = a
        .delta
        .vertex_support()
        .iter()
        .filter_map(|v| vertex_link(&psi, v))
        .map(|lk| lk.g_vector())
        .collect::<Result<_>>()?;
    rows(
        (0..=dim)
            .map(|k| {
                let lhs: i64 = link_g.iter().map(|lg| lg.get(k)).sum();
                let rhs = (dim as i64 + 2 - k as i64) * g.get(k) + (k as i64 + 1) * g.get(k + 1);
                Row::new(format!("k={k}"), q(lhs), Relation::Eq, q(rhs))
            })
            .collect(),
    )
}

fn vertex_deletion(a: &Analysis) -> Result<Outcome> {
    gate!(pseudomanifold(a, PseudomanifoldKind::Closed, 4));
    let dim = a.dim()? as i64;
    let g2 = q(RelativeComplex::absolute(a.delta.clone()).g_vector()?.get(2));
    let b = a.betti_abs()?;
    let base = binom(dim + 2, 2) * q(b.get(1) as i64 - b.get(0) as i64);
    let out = a
        .delta
        .vertex_support()
        .iter()
        .map(|v| {
            let lk = a.delta.link(&VertexSet::singleton(v));
            let b1 = complex_betti(&lk, a.field)?.get(1) as i64;
            Ok(Row::new(format!("v={v}"), g2.clone(), Relation::Ge, &base + binom(dim + 1, 2) * q(b1)))
        })
        .collect::<Result<Vec<_>>>()?;
    rows(out)
}

/// Σ_v f_{i-1}(lk v) = (i+1) f_i, over the general pair.
pub fn link_sum_rows(a: &Analysis) -> Result<Vec<(i32, i64, i64)>> {
    let psi = a.general_pair()?;
    let f = psi.f_vector()?;
    let links: Vec<_> = a
        .delta
        .vertex_support()
        .iter()
        .filter_map(|v| vertex_link(&psi, v))
        .map(|lk| lk.f_vector())
        .collect::<Result<_>>()?;
    Ok((0..=a.dim()? + 1)
        .map(|i| {
            let lhs: i64 = links.iter().map(|lf| lf.get(i - 1)).sum();
            (i, lhs, (i as i64 + 1) * f.get(i))
        })
        .collect())
}
