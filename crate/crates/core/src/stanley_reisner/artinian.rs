//! Quotients of `F[Δ,Γ]` by random linear forms over `F_p`.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::compositions;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::homology::MAX_LOCAL_VERTICES;
use crate::linalg::{rank, Echelon};
use crate::recognition::classify_homology;
use crate::{FieldSpec, RelativeComplex, SimplicialComplex};

use super::h_prime;

pub const MAX_SCHENZEL_RETRIES: usize = 3;
/// Draws per attempt while looking for a linear system of parameters.
pub const MAX_LSOP_DRAWS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinianReduction {
    pub prime: u64,
    pub seed: u64,
    /// One row of coefficients per form, over the ground set in ascending order.
    pub forms: Vec<Vec<u64>>,
    /// `dims[j]` for `0 ≤ j ≤ d + 1`.
    pub dims: Vec<usize>,
}

/// Monomial bases of the graded pieces of the module, by (face, composition).
struct Module {
    n: usize,
    total: HashSet<u64>,
    basis: Vec<Vec<Vec<u8>>>,
    index: Vec<HashMap<Vec<u8>, usize>>,
}

impl Module {
    fn new(psi: &RelativeComplex, top: usize) -> Result<Self> {
        let labels = psi.ground_set().to_vec();
        let n = labels.len();
        if n > MAX_LOCAL_VERTICES {
            return Err(Error::TooManyVertices(n, MAX_LOCAL_VERTICES));
        }
        let mask = |f: &crate::VertexSet| f.local_mask(&labels).expect("faces lie in the ground set");
        let total: HashSet<u64> = psi.total().faces().iter().map(mask).collect();
        let faces: Vec<Vec<u64>> = psi
            .faces_by_size()
            .iter()
            .map(|g| g.iter().map(mask).collect())
            .collect();
        let mut basis = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let mut b: Vec<Vec<u8>> = Vec::new();
            if j == 0 {
                if psi.has_empty_face() {
                    b.push(vec![0; n]);
                }
            } else {
                for s in 1..=j.min(faces.len().saturating_sub(1)) {
                    let parts = compositions(j, s);
                    for &m in &faces[s] {
                        let verts: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
                        for c in &parts {
                            let mut e = vec![0u8; n];
                            for (&v, &x) in verts.iter().zip(c) {
                                e[v] = x as u8;
                            }
                            b.push(e);
                        }
                    }
                }
            }
            basis.push(b);
        }
        let index = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect())
            .collect();
        Ok(Self {
            n,
            total,
            basis,
            index,
        })
    }

    /// `form · m` written in the basis of the next degree.
    fn multiply(&self, field: &PrimeField, form: &[u64], m: &[u8], j: usize) -> Vec<u64> {
        let p = field.modulus();
        let mut row = vec![0u64; self.basis[j + 1].len()];
        let supp: u64 = (0..self.n).filter(|&v| m[v] > 0).fold(0, |a, v| a | 1 << v);
        let mut e = m.to_vec();
        for v in 0..self.n {
            if form[v] == 0 || !self.total.contains(&(supp | 1 << v)) {
                continue;
            }
            e[v] += 1;
            let k = self.index[j + 1][&e];
            row[k] = (row[k] + form[v]) % p;
            e[v] -= 1;
        }
        row
    }

    /// Dimension in degree `j + 1` of the span of `forms · M_j`.
    fn image_rank(&self, field: &PrimeField, forms: &[Vec<u64>], j: usize) -> usize {
        let mut span = Echelon::new(field, self.basis[j + 1].len());
        'outer: for m in &self.basis[j] {
            for form in forms {
                if span.is_full() {
                    break 'outer;
                }
                span.insert(self.multiply(field, form, m, j));
            }
        }
        span.rank()
    }
}

fn random_forms(count: usize, n: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    (0..count).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect()
}

fn krull_d(psi: &RelativeComplex) -> Result<usize> {
    Ok((psi.total().dimension()? + 1) as usize)
}

/// Whether the restriction of `forms` to every facet of `delta` has rank `d`.
pub fn is_lsop(delta: &SimplicialComplex, forms: &[Vec<u64>], prime: u64) -> Result<bool> {
    let field = PrimeField::new(prime)?;
    let labels = delta.ground_set().to_vec();
    let d = (delta.dimension()? + 1) as usize;
    Ok(delta.facets().iter().all(|f| {
        let cols: Vec<usize> = f.iter().map(|v| labels.binary_search(&v).expect("vertex in ground set")).collect();
        let rows: Vec<Vec<u64>> = forms.iter().map(|t| cols.iter().map(|&c| t[c]).collect()).collect();
        rank(&field, &rows, cols.len()) == d
    }))
}

/// Quotient of `F_p[Ψ]` by `count ∈ {d, d+1}` random forms, degrees `0..=d+1`.
pub fn artinian_reduction(psi: &RelativeComplex, prime: u64, count: usize, seed: u64) -> Result<ArtinianReduction> {
    PrimeField::new(prime)?;
    let d = krull_d(psi)?;
    if count != d && count != d + 1 {
        return Err(Error::Parameter(format!("{count} forms; expected {d} or {}", d + 1)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = random_forms(count, psi.ground_set().len(), prime, &mut rng);
    reduce_with(psi, prime, forms, seed)
}

fn reduce_with(psi: &RelativeComplex, prime: u64, forms: Vec<Vec<u64>>, seed: u64) -> Result<ArtinianReduction> {
    let field = PrimeField::new(prime)?;
    let d = krull_d(psi)?;
    let module = Module::new(psi, d + 1)?;
    let mut dims = vec![module.basis[0].len()];
    for j in 0..=d {
        dims.push(module.basis[j + 1].len() - module.image_rank(&field, &forms, j));
    }
    Ok(ArtinianReduction {
        prime,
        seed,
        forms,
        dims,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchenzelOutcome {
    pub expected: Vec<i64>,
    /// Dimensions from the last reduction tried.
    pub dims: Vec<usize>,
    /// Seed of the last reduction tried.
    pub seed: u64,
    pub attempts: usize,
    /// `None` when every attempt disagreed: inconclusive, not a refutation.
    pub passes: Option<bool>,
}

/// Compares the quotient by `d` random forms with `h′` over `F_p`, retrying with
/// seeds `seed, seed+1, …` up to the retry cap. Each attempt redraws from its seed
/// until the forms restrict to a basis on every facet, which matters for small `p`.
pub fn schenzel_check(delta: &SimplicialComplex, prime: u64, seed: u64) -> Result<SchenzelOutcome> {
    let field = FieldSpec::prime(prime)?;
    let class = classify_homology(delta, field)?;
    if !class.class.is_manifold() {
        return Err(Error::Hypothesis(format!("not a homology manifold over {field}")));
    }
    let psi = RelativeComplex::absolute(delta.clone());
    let expected = h_prime(&psi, field)?;
    let matches = |dims: &[usize]| {
        dims.len() == expected.len() + 1
            && dims.iter().zip(&expected).all(|(&a, &b)| a as i64 == b)
            && dims[expected.len()] == 0
    };
    let mut last = None;
    for attempt in 0..MAX_SCHENZEL_RETRIES {
        let s = seed.wrapping_add(attempt as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let d = expected.len() - 1;
        let mut forms = random_forms(d, psi.ground_set().len(), prime, &mut rng);
        for _ in 1..MAX_LSOP_DRAWS {
            if is_lsop(delta, &forms, prime)? {
                break;
            }
            forms = random_forms(d, psi.ground_set().len(), prime, &mut rng);
        }
        let red = reduce_with(&psi, prime, forms, s)?;
        let ok = matches(&red.dims);
        last = Some(red);
        if ok {
            let red = last.unwrap();
            return Ok(SchenzelOutcome {
                expected,
                dims: red.dims,
                seed: s,
                attempts: attempt + 1,
                passes: Some(true),
            });
        }
    }
    let red = last.expect("at least one attempt");
    Ok(SchenzelOutcome {
        expected,
        dims: red.dims,
        seed: red.seed,
        attempts: MAX_SCHENZEL_RETRIES,
        passes: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WlpOutcome {
    /// The forms drawn from `seed` are an exact witness.
    Passes { seed: u64, trial: usize },
    FailsSampled { trials: usize },
    Inconclusive,
}

impl WlpOutcome {
    pub fn passes(self) -> bool {
        matches!(self, WlpOutcome::Passes { .. })
    }
}

/// Samples `d` forms and `ω` per trial (trial `t` uses seed `seed + t`) and tests that
/// `×ω` maps degree `⌊d/2⌋` of `F_p[Δ]/Θ` onto degree `⌊d/2⌋ + 1`.
pub fn wlp_test(delta: &SimplicialComplex, prime: u64, trials: usize, seed: u64) -> Result<WlpOutcome> {
    let field = PrimeField::new(prime)?;
    if trials == 0 {
        return Ok(WlpOutcome::Inconclusive);
    }
    let psi = RelativeComplex::absolute(delta.clone());
    let d = krull_d(&psi)?;
    let k = d / 2;
    let module = Module::new(&psi, k + 1)?;
    for t in 0..trials {
        let s = seed.wrapping_add(t as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let forms = random_forms(d + 1, module.n, prime, &mut rng);
        if module.image_rank(&field, &forms, k) == module.basis[k + 1].len() {
            return Ok(WlpOutcome::Passes { seed: s, trial: t });
        }
    }
    Ok(WlpOutcome::FailsSampled { trials })
}
