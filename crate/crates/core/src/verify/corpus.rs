//! Seeded corpora of constructed complexes.
//!
//! Every instance is described by a recipe expression such as
//! `remove_facet(cyclic(4,7))` or `stellar(cross(4),2,seed=3)`; the expression is
//! the report's input descriptor and parses back to the same recipe.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    boundary_of_simplex, cone, connected_sum, cross_polytope, cyclic_polytope_boundary, real_projective_plane,
    remove_facet, simplex, sphere_bundle, stacked_ball, stacked_sphere, stellar_subdivisions, suspension, torus7,
};
use crate::error::{Error, Result};
use crate::{FieldSpec, SimplicialComplex, Vertex};

use super::{run_check, Analysis, CheckId, CheckOptions, CheckReport};

/// Vertex cap for corpus instances.
pub const MAX_CORPUS_VERTICES: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Simplex(u32),
    BoundaryOfSimplex(u32),
    CrossPolytope(u32),
    Cyclic { d: u32, n: u32 },
    StackedSphere { d: u32, n: u32, seed: u64 },
    StackedBall { d: u32, m: usize, seed: u64 },
    Torus,
    Rp2,
    SphereBundle { k: u32, twisted: bool },
    /// Removes the facet with the given index in facet order.
    RemoveFacet(Box<Recipe>, usize),
    DeleteVertex(Box<Recipe>, Vertex),
    /// Glued along the first facet of each side.
    ConnectedSum(Box<Recipe>, Box<Recipe>),
    Stellar { base: Box<Recipe>, k: usize, seed: u64 },
    Cone(Box<Recipe>),
    Suspension(Box<Recipe>),
}

impl Recipe {
    pub fn build(&self) -> Result<SimplicialComplex> {
        Ok(match self {
            Recipe::Simplex(k) => simplex(*k),
            Recipe::BoundaryOfSimplex(k) => boundary_of_simplex(*k),
            Recipe::CrossPolytope(k) => cross_polytope(*k),
            Recipe::Cyclic { d, n } => cyclic_polytope_boundary(*d, *n)?,
            Recipe::StackedSphere { d, n, seed } => stacked_sphere(*d, *n, *seed)?,
            Recipe::StackedBall { d, m, seed } => stacked_ball(*d, *m, *seed)?,
            Recipe::Torus => torus7(),
            Recipe::Rp2 => real_projective_plane(),
            Recipe::SphereBundle { k, twisted } => sphere_bundle(*k, *twisted)?,
            Recipe::RemoveFacet(r, i) => {
                let c = r.build()?;
                let f = c
                    .facets()
                    .get(*i)
                    .cloned()
                    .ok_or_else(|| Error::Parameter(format!("facet index {i} out of range")))?;
                remove_facet(&c, &f)?
            }
            Recipe::DeleteVertex(r, v) => {
                let c = r.build()?;
                if !c.vertex_support().contains(*v) {
                    return Err(Error::Parameter(format!("vertex {v} is not in the complex")));
                }
                c.delete_vertex(*v)
            }
            Recipe::ConnectedSum(a, b) => {
                let (a, b) = (a.build()?, b.build()?);
                let (fa, fb) = (a.facets()[0].clone(), b.facets()[0].clone());
                connected_sum(&a, &fa, &b, &fb, None)?
            }
            Recipe::Stellar { base, k, seed } => stellar_subdivisions(&base.build()?, *k, *seed)?,
            Recipe::Cone(r) => {
                let c = r.build()?;
                cone(c.ground_set().last().unwrap_or(0) + 1, &c)?
            }
            Recipe::Suspension(r) => suspension(&r.build()?)?,
        })
    }

    /// The first seed in the expression, if any.
    pub fn seed(&self) -> Option<u64> {
        match self {
            Recipe::StackedSphere { seed, .. } | Recipe::StackedBall { seed, .. } => Some(*seed),
            Recipe::Stellar { base, seed, .. } => Some(*seed).or(base.seed()),
            Recipe::RemoveFacet(r, _) | Recipe::DeleteVertex(r, _) | Recipe::Cone(r) | Recipe::Suspension(r) => {
                r.seed()
            }
            Recipe::ConnectedSum(a, b) => a.seed().or(b.seed()),
            _ => None,
        }
    }

    /// Maps a command-line family name and its parameters to a recipe.
    pub fn from_family(family: &str, params: &[u64], seed: u64) -> Result<Recipe> {
        let name = match family.replace('-', "_").as_str() {
            "boundary_of_simplex" | "simplex_boundary" | "boundary_simplex" => "bd_simplex".to_string(),
            "cross_polytope" => "cross".to_string(),
            "cyclic_polytope" | "cyclic_polytope_boundary" => "cyclic".to_string(),
            "real_projective_plane" => "rp2".to_string(),
            other => other.to_string(),
        };
        let mut args: Vec<Arg> = params.iter().map(|&p| Arg::Num(p)).collect();
        if matches!(name.as_str(), "stacked_sphere" | "stacked_ball") {
            args.push(Arg::Seed(seed));
        }
        build_recipe(&name, args)
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Simplex(k) => write!(f, "simplex({k})"),
            Recipe::BoundaryOfSimplex(k) => write!(f, "bd_simplex({k})"),
            Recipe::CrossPolytope(k) => write!(f, "cross({k})"),
            Recipe::Cyclic { d, n } => write!(f, "cyclic({d},{n})"),
            Recipe::StackedSphere { d, n, seed } => write!(f, "stacked_sphere({d},{n},seed={seed})"),
            Recipe::StackedBall { d, m, seed } => write!(f, "stacked_ball({d},{m},seed={seed})"),
            Recipe::Torus => write!(f, "torus"),
            Recipe::Rp2 => write!(f, "rp2"),
            Recipe::SphereBundle { k, twisted } => write!(f, "sphere_bundle({k},{})", *twisted as u8),
            Recipe::RemoveFacet(r, 0) => write!(f, "remove_facet({r})"),
            Recipe::RemoveFacet(r, i) => write!(f, "remove_facet({r},{i})"),
            Recipe::DeleteVertex(r, v) => write!(f, "delete_vertex({r},{v})"),
            Recipe::ConnectedSum(a, b) => write!(f, "connected_sum({a},{b})"),
            Recipe::Stellar { base, k, seed } => write!(f, "stellar({base},{k},seed={seed})"),
            Recipe::Cone(r) => write!(f, "cone({r})"),
            Recipe::Suspension(r) => write!(f, "suspension({r})"),
        }
    }
}

enum Arg {
    Num(u64),
    Seed(u64),
    Rec(Recipe),
}

fn build_recipe(name: &str, args: Vec<Arg>) -> Result<Recipe> {
    let bad = || Error::Parameter(format!("bad arguments for `{name}`"));
    let mut nums = Vec::new();
    let mut recs = Vec::new();
    let mut seed = None;
    for a in args {
        match a {
            Arg::Num(x) => nums.push(x),
            Arg::Seed(s) => seed = Some(s),
            Arg::Rec(r) => recs.push(Box::new(r)),
        }
    }
    let seed = seed.unwrap_or(0);
    let n32 = |i: usize| -> Result<u32> { nums.get(i).and_then(|&x| u32::try_from(x).ok()).ok_or_else(bad) };
    let arity = |n: usize, r: usize| if nums.len() == n && recs.len() == r { Ok(()) } else { Err(bad()) };
    let r = match name {
        "simplex" => {
            arity(1, 0)?;
            Recipe::Simplex(n32(0)?)
        }
        "bd_simplex" => {
            arity(1, 0)?;
            Recipe::BoundaryOfSimplex(n32(0)?)
        }
        "cross" => {
            arity(1, 0)?;
            Recipe::CrossPolytope(n32(0)?)
        }
        "cyclic" => {
            arity(2, 0)?;
            Recipe::Cyclic { d: n32(0)?, n: n32(1)? }
        }
        "stacked_sphere" => {
            arity(2, 0)?;
            Recipe::StackedSphere { d: n32(0)?, n: n32(1)?, seed }
        }
        "stacked_ball" => {
            arity(2, 0)?;
            Recipe::StackedBall { d: n32(0)?, m: n32(1)? as usize, seed }
        }
        "torus" => {
            arity(0, 0)?;
            Recipe::Torus
        }
        "rp2" => {
            arity(0, 0)?;
            Recipe::Rp2
        }
        "sphere_bundle" => {
            if nums.is_empty() || nums.len() > 2 || !recs.is_empty() {
                return Err(bad());
            }
            Recipe::SphereBundle { k: n32(0)?, twisted: nums.get(1).is_some_and(|&t| t != 0) }
        }
        "remove_facet" => {
            if nums.len() > 1 || recs.len() != 1 {
                return Err(bad());
            }
            Recipe::RemoveFacet(recs.remove(0), nums.first().copied().unwrap_or(0) as usize)
        }
        "delete_vertex" => {
            arity(1, 1)?;
            Recipe::DeleteVertex(recs.remove(0), n32(0)?)
        }
        "connected_sum" => {
            arity(0, 2)?;
            let b = recs.pop().unwrap();
            Recipe::ConnectedSum(recs.pop().unwrap(), b)
        }
        "stellar" => {
            arity(1, 1)?;
            Recipe::Stellar { base: recs.remove(0), k: n32(0)? as usize, seed }
        }
        "cone" => {
            arity(0, 1)?;
            Recipe::Cone(recs.remove(0))
        }
        "suspension" => {
            arity(0, 1)?;
            Recipe::Suspension(recs.remove(0))
        }
        _ => return Err(Error::Unknown { kind: "family", name: name.to_string() }),
    };
    Ok(r)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name or number"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse { line: 1, message: format!("{msg} at column {}", self.pos + 1) }
    }

    fn number(&self, w: &str) -> Result<u64> {
        w.parse().map_err(|_| self.error(&format!("`{w}` is not a number")))
    }

    fn arg(&mut self) -> Result<Arg> {
        let w = self.word()?;
        if w.bytes().all(|b| b.is_ascii_digit()) {
            return Ok(Arg::Num(self.number(&w)?));
        }
        if w == "seed" && self.eat(b'=') {
            let v = self.word()?;
            return Ok(Arg::Seed(self.number(&v)?));
        }
        Ok(Arg::Rec(self.recipe_named(&w)?))
    }

    fn recipe_named(&mut self, name: &str) -> Result<Recipe> {
        let mut args = Vec::new();
        if self.eat(b'(') && !self.eat(b')') {
            loop {
                args.push(self.arg()?);
                if self.eat(b')') {
                    break;
                }
                if !self.eat(b',') {
                    return Err(self.error("expected `,` or `)`"));
                }
            }
        }
        build_recipe(name, args)
    }
}

impl FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let name = p.word()?;
        let r = p.recipe_named(&name)?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub recipe: Recipe,
}

impl Instance {
    pub fn new(recipe: Recipe) -> Self {
        Self { recipe }
    }

    pub fn input(&self) -> String {
        self.recipe.to_string()
    }

    pub fn seed(&self) -> Option<u64> {
        self.recipe.seed()
    }
}

fn parse_all(exprs: &[&str]) -> Vec<Instance> {
    exprs
        .iter()
        .map(|e| Instance::new(e.parse().unwrap_or_else(|err| panic!("built-in recipe `{e}`: {err}"))))
        .collect()
}

const SPHERES_SMALL: &[&str] = &[
    "bd_simplex(3)",
    "bd_simplex(4)",
    "bd_simplex(5)",
    "cross(3)",
    "cross(4)",
    "cyclic(4,6)",
    "cyclic(4,7)",
    "cyclic(4,8)",
    "cyclic(5,8)",
    "stacked_sphere(2,7,seed=1)",
    "stacked_sphere(3,7,seed=2)",
    "stacked_sphere(3,9,seed=3)",
    "stacked_sphere(4,9,seed=4)",
    "stellar(cross(4),2,seed=5)",
    "suspension(cross(3))",
];

const BALLS_SMALL: &[&str] = &[
    "simplex(3)",
    "simplex(4)",
    "stacked_ball(3,3,seed=1)",
    "stacked_ball(3,5,seed=2)",
    "stacked_ball(4,3,seed=3)",
    "remove_facet(bd_simplex(4))",
    "remove_facet(bd_simplex(5))",
    "remove_facet(cyclic(4,7))",
    "remove_facet(cross(4))",
    "delete_vertex(cyclic(4,8),1)",
    "delete_vertex(stacked_sphere(3,8,seed=6),1)",
    "stellar(stacked_ball(3,2,seed=4),2,seed=5)",
    "cone(cross(3))",
    "cone(cyclic(4,7))",
];

const MANIFOLDS_WITH_BOUNDARY: &[&str] = &[
    "remove_facet(torus)",
    "remove_facet(rp2)",
    "remove_facet(sphere_bundle(2,0))",
    "remove_facet(sphere_bundle(3,0))",
    "delete_vertex(sphere_bundle(3,0),1)",
    "remove_facet(sphere_bundle(3,1))",
    "cone(torus)",
    "cone(rp2)",
];

const CLOSED_EXTRA: &[&str] = &[
    "torus",
    "rp2",
    "sphere_bundle(2,0)",
    "sphere_bundle(3,0)",
    "sphere_bundle(3,1)",
    "cyclic(6,9)",
    "suspension(torus)",
    "connected_sum(cross(4),bd_simplex(4))",
];

const ORACLE_SMALL: &[&str] = &[
    "simplex(2)",
    "simplex(3)",
    "bd_simplex(2)",
    "bd_simplex(3)",
    "bd_simplex(4)",
    "bd_simplex(5)",
    "cross(3)",
    "cyclic(4,6)",
    "cyclic(4,7)",
    "remove_facet(bd_simplex(3))",
    "remove_facet(bd_simplex(4))",
    "remove_facet(cross(3))",
    "remove_facet(cyclic(4,7))",
    "stacked_sphere(2,7,seed=1)",
    "stacked_ball(3,3,seed=1)",
    "stacked_ball(2,4,seed=2)",
    "rp2",
    "torus",
    "cone(rp2)",
];

/// Names accepted by [`suite`].
pub fn suite_names() -> &'static [&'static str] {
    &["default", "spheres-small", "balls-small", "manifolds-with-boundary", "oracle-small", "empty"]
}

pub fn suite(name: &str) -> Result<Vec<Instance>> {
    Ok(match name {
        "spheres-small" => parse_all(SPHERES_SMALL),
        "balls-small" => parse_all(BALLS_SMALL),
        "manifolds-with-boundary" => {
            let mut v = parse_all(BALLS_SMALL);
            v.extend(parse_all(MANIFOLDS_WITH_BOUNDARY));
            v
        }
        "oracle-small" => parse_all(ORACLE_SMALL),
        "default" => {
            let mut v = Vec::new();
            for list in [SPHERES_SMALL, BALLS_SMALL, MANIFOLDS_WITH_BOUNDARY, CLOSED_EXTRA] {
                v.extend(parse_all(list));
            }
            v
        }
        "empty" => Vec::new(),
        _ => return Err(Error::Unknown { kind: "suite", name: name.to_string() }),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub reports: Vec<CheckReport>,
    pub summary: CorpusSummary,
}

impl CorpusReport {
    pub fn any_failed(&self) -> bool {
        self.summary.failed > 0
    }
}

/// Builds every instance, then runs every check on every instance in parallel.
/// Reports are sorted by check id, then input.
pub fn run_corpus(
    instances: &[Instance],
    ids: &[CheckId],
    field: FieldSpec,
    options: &CheckOptions,
) -> Result<CorpusReport> {
    let analyses = instances
        .par_iter()
        .map(|inst| {
            let delta = inst.recipe.build()?;
            let n = delta.ground_set().len();
            if n > MAX_CORPUS_VERTICES {
                return Err(Error::TooManyVertices(n, MAX_CORPUS_VERTICES));
            }
            Ok(Analysis::new(delta, field, inst.input()).with_seed(inst.seed()))
        })
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(&Analysis, CheckId)> = analyses.iter().flat_map(|a| ids.iter().map(move |&id| (a, id))).collect();
    let mut reports: Vec<CheckReport> = jobs.par_iter().map(|(a, id)| run_check(*id, a, options)).collect();
    reports.sort_by(|x, y| (x.check, &x.input).cmp(&(y.check, &y.input)));
    let summary = CorpusSummary {
        total: reports.len(),
        passed: reports.iter().filter(|r| r.passed()).count(),
        failed: reports.iter().filter(|r| r.failed()).count(),
        skipped: reports.iter().filter(|r| r.skipped()).count(),
    };
    Ok(CorpusReport { reports, summary })
}
