//! Minimal multigraded free resolution of `F[Δ,Γ]` by iterated syzygies.
//!
//! Shares nothing with the induced-subcomplex path besides dense linear algebra.
//! Free modules are written in the basis `e_g x^c`; multiplying by a monomial only
//! moves `e_g x^c` to `e_g x^{c+b}`, so an element of degree `a` is stored as its
//! coefficient vector over all generators and inclusion between degrees is the
//! identity on these vectors.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::linalg::{nullspace, Echelon};
use crate::{FieldSpec, RelativeComplex};

use super::GradedBettiTable;

pub const MAX_ORACLE_VERTICES: usize = 8;
pub const MAX_ORACLE_DEGREE: usize = 12;

/// Exponent vector packed one byte per variable.
type Degree = u64;

fn part(a: Degree, j: usize) -> u64 {
    (a >> (8 * j)) & 0xff
}

fn leq(a: Degree, b: Degree, n: usize) -> bool {
    (0..n).all(|j| part(a, j) <= part(b, j))
}

fn support(a: Degree, n: usize) -> u64 {
    (0..n).filter(|&j| part(a, j) > 0).fold(0, |m, j| m | 1 << j)
}

/// All degrees of total at most `bound`, by increasing total.
fn degrees(n: usize, bound: usize) -> Vec<Degree> {
    let mut by_total: Vec<Vec<Degree>> = vec![Vec::new(); bound + 1];
    by_total[0].push(0);
    for t in 1..=bound {
        let mut next = HashSet::new();
        for &a in &by_total[t - 1] {
            for j in 0..n {
                next.insert(a + (1 << (8 * j)));
            }
        }
        let mut v: Vec<Degree> = next.into_iter().collect();
        v.sort_unstable();
        by_total[t] = v;
    }
    by_total.concat()
}

struct Generator<E> {
    degree: Degree,
    /// Image in the previous free module, over its generators; empty at level 0.
    image: Vec<E>,
}

/// Minimal graded Betti numbers through total degree `degree_bound`.
pub fn resolution_oracle(psi: &RelativeComplex, field: FieldSpec, degree_bound: usize) -> Result<GradedBettiTable> {
    let n = psi.ground_set().len();
    if n > MAX_ORACLE_VERTICES {
        return Err(Error::TooManyVertices(n, MAX_ORACLE_VERTICES));
    }
    if degree_bound > MAX_ORACLE_DEGREE {
        return Err(Error::Parameter(format!(
            "degree bound {degree_bound} exceeds {MAX_ORACLE_DEGREE}"
        )));
    }
    match field {
        FieldSpec::Rational => run(&Rationals, psi, field, degree_bound),
        FieldSpec::Prime(p) => run(&PrimeField::new(p)?, psi, field, degree_bound),
    }
}

fn run<F: Field>(f: &F, psi: &RelativeComplex, spec: FieldSpec, bound: usize) -> Result<GradedBettiTable> {
    let labels = psi.ground_set().to_vec();
    let n = labels.len();
    let mask_of = |s: &crate::VertexSet| s.local_mask(&labels).expect("faces lie in the ground set");
    let total: HashSet<u64> = psi.total().faces().iter().map(mask_of).collect();
    let sub: HashSet<u64> = psi.sub().faces().iter().map(mask_of).collect();
    let in_delta = |a: Degree| total.contains(&support(a, n));
    let nonzero = |a: Degree| {
        let s = support(a, n);
        total.contains(&s) && !sub.contains(&s)
    };

    let mut table = GradedBettiTable::zero(n, spec);
    table.degree_bound = Some(bound);
    let all = degrees(n, bound);
    let total_of = |a: Degree| (0..n).map(|j| part(a, j)).sum::<u64>() as usize;

    // Minimal generators of the module: x^a is new when no x^{a-e_j} is nonzero.
    let mut gens: Vec<Generator<F::Elem>> = Vec::new();
    for &a in &all {
        if !nonzero(a) {
            continue;
        }
        let reached = (0..n).any(|j| part(a, j) > 0 && nonzero(a - (1 << (8 * j))));
        if !reached {
            gens.push(Generator {
                degree: a,
                image: Vec::new(),
            });
        }
    }

    let mut level = 0usize;
    while !gens.is_empty() {
        for g in &gens {
            let t = total_of(g.degree);
            if level <= n && t <= n {
                table.entries[level][t] += 1;
            } else {
                return Err(Error::Parameter(format!(
                    "resolution has a generator at level {level}, degree {t} outside the table"
                )));
            }
        }
        gens = next_level(f, &gens, level, n, &all, &in_delta);
        level += 1;
    }
    Ok(table)
}

/// Minimal generators of the kernel of the map out of the free module on `gens`.
fn next_level<F: Field>(
    f: &F,
    gens: &[Generator<F::Elem>],
    level: usize,
    n: usize,
    all: &[Degree],
    in_delta: &dyn Fn(Degree) -> bool,
) -> Vec<Generator<F::Elem>> {
    let m = gens.len();
    // The kernel in degree a depends only on which generators lie below a (and, at
    // level 0, whether x^a survives in the module).
    type Key = (Vec<bool>, bool);
    let key_of = |a: Degree| -> Key {
        let below: Vec<bool> = gens.iter().map(|g| leq(g.degree, a, n)).collect();
        let alive = level == 0 && in_delta(a);
        (below, alive)
    };
    let mut kernels: HashMap<Key, Vec<Vec<F::Elem>>> = HashMap::new();
    let mut kernel = |key: &Key| -> Vec<Vec<F::Elem>> {
        if let Some(k) = kernels.get(key) {
            return k.clone();
        }
        let cols: Vec<usize> = (0..m).filter(|&g| key.0[g]).collect();
        let rows: Vec<Vec<F::Elem>> = if level == 0 {
            if key.1 {
                vec![vec![f.one(); cols.len()]]
            } else {
                Vec::new()
            }
        } else {
            let width = gens[0].image.len();
            (0..width)
                .map(|r| cols.iter().map(|&g| gens[g].image[r].clone()).collect())
                .collect()
        };
        let basis: Vec<Vec<F::Elem>> = nullspace(f, &rows, cols.len())
            .into_iter()
            .map(|v| {
                let mut full = vec![f.zero(); m];
                for (c, x) in cols.iter().zip(v) {
                    full[*c] = x;
                }
                full
            })
            .collect();
        kernels.insert(key.clone(), basis.clone());
        basis
    };

    let mut out = Vec::new();
    for &a in all {
        let key = key_of(a);
        if !key.0.iter().any(|&b| b) {
            continue;
        }
        let lower: Vec<Key> = (0..n)
            .filter(|&j| part(a, j) > 0)
            .map(|j| key_of(a - (1 << (8 * j))))
            .collect();
        // Equal keys give equal kernels, so nothing new appears in degree a.
        if lower.contains(&key) {
            continue;
        }
        let here = kernel(&key);
        if here.is_empty() {
            continue;
        }
        let mut span = Echelon::new(f, m);
        for k in &lower {
            for v in kernel(k) {
                span.insert(v);
            }
        }
        for v in here {
            if span.insert(v.clone()) {
                out.push(Generator { degree: a, image: v });
            }
        }
    }
    out
}
