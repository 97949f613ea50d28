//! Stanley-Reisner modules `F[Δ,Γ] = I_Γ/I_Δ`: Hilbert functions, graded Betti
//! numbers, Artinian reductions and the weak Lefschetz test.

mod artinian;
mod oracle;

use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::{binomial, binomial_big};
use crate::error::Result;
use crate::homology::{reduced_betti, InducedHomology};
use crate::sigma_mu::MAX_SWEEP_VERTICES;
use crate::{Error, FieldSpec, Integer, Rational, RelativeComplex};

pub use artinian::{
    artinian_reduction, is_lsop, schenzel_check, wlp_test, ArtinianReduction, SchenzelOutcome, WlpOutcome,
    MAX_LSOP_DRAWS, MAX_SCHENZEL_RETRIES,
};
pub use oracle::{resolution_oracle, MAX_ORACLE_DEGREE, MAX_ORACLE_VERTICES};

/// `β_{i,j}` for `0 ≤ i, j ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedBettiTable {
    pub n: usize,
    pub field: FieldSpec,
    /// `entries[i][j] = β_{i,j}`.
    pub entries: Vec<Vec<u64>>,
    /// Entries are exact for `j` up to this degree; `None` when complete.
    pub degree_bound: Option<usize>,
}

impl GradedBettiTable {
    pub(crate) fn zero(n: usize, field: FieldSpec) -> Self {
        Self {
            n,
            field,
            entries: vec![vec![0; n + 1]; n + 1],
            degree_bound: None,
        }
    }

    /// Zero outside the table.
    pub fn get(&self, i: i64, j: i64) -> u64 {
        if i < 0 || j < 0 {
            return 0;
        }
        self.entries
            .get(i as usize)
            .and_then(|row| row.get(j as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn truncated(&self) -> bool {
        self.degree_bound.is_some_and(|b| b < self.n)
    }

    /// Nonzero entries `(i, j, β_{i,j})` in row-major order.
    pub fn nonzero(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    out.push((i, j, b));
                }
            }
        }
        out
    }

    /// Agreement on all degrees `j` within both tables' bounds.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let bound = match (self.degree_bound, other.degree_bound) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => self.n,
        };
        (0..=self.n).all(|i| (0..=bound.min(self.n)).all(|j| self.get(i as i64, j as i64) == other.get(i as i64, j as i64)))
    }
}

/// Dimension of the degree-`k` piece of `F[Ψ]`.
pub fn hilbert_function(psi: &RelativeComplex, k: usize) -> Result<i64> {
    let f = psi.f_vector()?;
    if k == 0 {
        return Ok(f.get(-1));
    }
    Ok((1..=f.dim() + 1)
        .map(|i| f.get(i - 1) * binomial(k as i64 - 1, i as i64 - 1))
        .sum())
}

/// Graded Betti numbers from the induced subcomplexes of `Ψ` on its ground set.
pub fn graded_betti(psi: &RelativeComplex, field: FieldSpec) -> Result<GradedBettiTable> {
    let n = psi.ground_set().len();
    if n > MAX_SWEEP_VERTICES {
        return Err(Error::TooManyVertices(n, MAX_SWEEP_VERTICES));
    }
    let mut table = GradedBettiTable::zero(n, field);
    if psi.total().is_void() {
        return Ok(table);
    }
    let sums = InducedHomology::new(psi, field)?.cardinality_sums();
    // sums[k][s] adds b̃_{s-1} over k-subsets, which lands in β_{k-s,k}.
    for (k, row) in sums.iter().enumerate() {
        for (s, &b) in row.iter().enumerate() {
            if b != 0 && s <= k {
                table.entries[k - s][k] += b;
            }
        }
    }
    Ok(table)
}

/// `h′_j(Ψ)` for `0 ≤ j ≤ d`.
pub fn h_prime(psi: &RelativeComplex, field: FieldSpec) -> Result<Vec<i64>> {
    let h = psi.h_vector()?;
    let d = h.d();
    let b = reduced_betti(psi, field)?;
    Ok((0..=d)
        .map(|j| {
            let corr: i64 = (1..j)
                .map(|i| {
                    let sign = if (j - i - 1) % 2 == 0 { 1 } else { -1 };
                    sign * b.get(i - 1) as i64
                })
                .sum();
            h.get(j) + binomial(d as i64, j as i64) * corr
        })
        .collect())
}

/// `h″_j(Ψ)` for `0 ≤ j ≤ d`.
pub fn h_double_prime(psi: &RelativeComplex, field: FieldSpec) -> Result<Vec<i64>> {
    let hp = h_prime(psi, field)?;
    let d = hp.len() as i32 - 1;
    let b = reduced_betti(psi, field)?;
    Ok(hp
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let j = j as i32;
            if j < d {
                v - binomial(d as i64, j as i64) * b.get(j - 1) as i64
            } else {
                v
            }
        })
        .collect())
}

/// One instance `lhs (relation) rhs` of a family of inequalities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiBound {
    pub i: usize,
    pub l: usize,
    pub lhs: i64,
    pub rhs: i64,
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Σ_k (-1)^k β_{k,ℓ}` against `Σ_k (-1)^k H(ℓ-k) C(n,k)` for `0 ≤ ℓ ≤ n+1`.
pub fn euler_koszul(psi: &RelativeComplex, table: &GradedBettiTable) -> Result<Vec<BettiBound>> {
    let n = table.n;
    let hilbert: Vec<i64> = (0..=n + 1).map(|k| hilbert_function(psi, k)).collect::<Result<_>>()?;
    Ok((0..=n + 1)
        .map(|l| BettiBound {
            i: 0,
            l,
            lhs: (0..=l).map(|k| sign(k) * table.get(k as i64, l as i64) as i64).sum(),
            rhs: (0..=l.min(n))
                .map(|k| sign(k) * hilbert[l - k] * binomial(n as i64, k as i64))
                .sum(),
        })
        .collect())
}

/// `Σ_k (-1)^k β_{i+k,i+ℓ}` against `Σ_k (-1)^k g_{ℓ-k} C(n-d-1, i+k)` for all `i` and
/// `ℓ ≤ (d-1)/2`, where `g` are the g-numbers of the pair and `d = dim + 1`.
pub fn ball_betti_bounds(table: &GradedBettiTable, g: &[i64], d: i64) -> Vec<BettiBound> {
    let n = table.n as i64;
    let mut out = Vec::new();
    if d < 1 {
        return out;
    }
    for l in 0..=((d - 1) / 2) as usize {
        for i in 0..=table.n {
            let lhs = (0..=l)
                .map(|k| sign(k) * table.get((i + k) as i64, (i + l) as i64) as i64)
                .sum();
            let rhs = (0..=l)
                .map(|k| sign(k) * g.get(l - k).copied().unwrap_or(0) * binomial(n - d - 1, (i + k) as i64))
                .sum();
            out.push(BettiBound { i, l, lhs, rhs });
        }
    }
    out
}

/// `β_{i,i+1}` against `g_1 C(n-d-1, i)`.
pub fn linear_strand_bounds(table: &GradedBettiTable, g1: i64, d: i64) -> Vec<BettiBound> {
    let n = table.n as i64;
    (0..table.n)
        .map(|i| BettiBound {
            i,
            l: 1,
            lhs: table.get(i as i64, i as i64 + 1) as i64,
            rhs: g1 * binomial(n - d - 1, i as i64),
        })
        .collect()
}

/// Both sides of `Σ_k C(n-d-1, k-r) / ((n+1) C(n,k)) = 1 / ((d+2) C(d+1,r))`.
pub fn lemma53_sides(n: i64, d: i64, r: i64) -> (Rational, Rational) {
    let lhs = (0..=n).fold(Rational::zero(), |acc, k| {
        let num = binomial_big(n - d - 1, k - r);
        if num.is_zero() {
            return acc;
        }
        acc + Rational::new(num, Integer::from(n + 1) * binomial_big(n, k))
    });
    let rhs = Rational::new(Integer::from(1), Integer::from(d + 2) * binomial_big(d + 1, r));
    (lhs, rhs)
}
