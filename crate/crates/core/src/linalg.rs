//! Exact rank and nullspace computations.
//!
//! Boundary matrices are sparse with ±1 entries, so ranks are found by column
//! reduction. Over ℚ the reduction is fraction-free: integer columns are combined
//! by cross-multiplication and divided by their content, first in checked `i64`
//! and again in `BigInt` if anything overflows.

use num_bigint::BigInt;

use crate::field::{mul_mod, pow_mod, ExactInteger, Field, FieldSpec};

/// A sparse column: `(row, coefficient)` pairs with strictly increasing rows.
pub type SignedColumn = [(u32, i8)];

/// Rank of the matrix whose columns are `cols`; rows are indexed below `nrows`.
pub fn sparse_rank(cols: &[&SignedColumn], nrows: usize, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Prime(p) => rank_mod_p(cols, nrows, p),
        FieldSpec::Rational => rank_rational(cols, nrows),
    }
}

pub fn rank_rational(cols: &[&SignedColumn], nrows: usize) -> usize {
    match rank_integer::<i64>(cols, nrows) {
        Some(r) => r,
        None => rank_integer::<BigInt>(cols, nrows).expect("BigInt elimination cannot overflow"),
    }
}

const NO_PIVOT: u32 = u32::MAX;

/// Fraction-free column reduction; `None` if `T` overflowed.
pub fn rank_integer<T: ExactInteger>(cols: &[&SignedColumn], nrows: usize) -> Option<usize> {
    let mut pivot_of = vec![NO_PIVOT; nrows];
    let mut stored: Vec<Vec<(u32, T)>> = Vec::new();
    for c in cols {
        let mut col: Vec<(u32, T)> = c.iter().map(|&(r, s)| (r, T::from(s))).collect();
        while let Some((low, a)) = col.last().cloned() {
            let j = pivot_of[low as usize];
            if j == NO_PIVOT {
                pivot_of[low as usize] = stored.len() as u32;
                stored.push(col);
                break;
            }
            let piv = &stored[j as usize];
            let b = piv.last().unwrap().1.clone();
            let g = a.gcd(&b);
            // b/g * col - a/g * piv cancels the entry at `low`.
            col = combine(&col, &(b / g.clone()), piv, &(a / g))?;
            normalize_content(&mut col);
        }
    }
    Some(stored.len())
}

fn combine<T: ExactInteger>(
    x: &[(u32, T)],
    mx: &T,
    y: &[(u32, T)],
    my: &T,
) -> Option<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let rx = x.get(i).map_or(u32::MAX, |e| e.0);
        let ry = y.get(j).map_or(u32::MAX, |e| e.0);
        let (row, v) = if rx < ry {
            i += 1;
            (rx, x[i - 1].1.checked_mul(mx)?)
        } else if ry < rx {
            j += 1;
            (ry, T::zero().checked_sub(&y[j - 1].1.checked_mul(my)?)?)
        } else {
            i += 1;
            j += 1;
            let a = x[i - 1].1.checked_mul(mx)?;
            let b = y[j - 1].1.checked_mul(my)?;
            (rx, a.checked_sub(&b)?)
        };
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    Some(out)
}

fn normalize_content<T: ExactInteger>(col: &mut [(u32, T)]) {
    let mut g = T::zero();
    for (_, v) in col.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if !g.is_zero() {
        for (_, v) in col.iter_mut() {
            *v = v.clone() / g.clone();
        }
    }
}

/// Column reduction over `F_p`.
pub fn rank_mod_p(cols: &[&SignedColumn], nrows: usize, p: u64) -> usize {
    let mut pivot_of = vec![NO_PIVOT; nrows];
    let mut stored: Vec<Vec<(u32, u64)>> = Vec::new();
    let lift = |s: i8| if s >= 0 { s as u64 % p } else { p - ((-s) as u64 % p) };
    for c in cols {
        let mut col: Vec<(u32, u64)> = c
            .iter()
            .map(|&(r, s)| (r, lift(s)))
            .filter(|e| e.1 != 0)
            .collect();
        while let Some(&(low, a)) = col.last() {
            let j = pivot_of[low as usize];
            if j == NO_PIVOT {
                // Store monic so later eliminations need no inverse.
                let inv = pow_mod(a, p - 2, p);
                for e in col.iter_mut() {
                    e.1 = mul_mod(e.1, inv, p);
                }
                pivot_of[low as usize] = stored.len() as u32;
                stored.push(col);
                break;
            }
            col = axpy_mod(&col, a, &stored[j as usize], p);
        }
    }
    stored.len()
}

/// `x - a * y` over `F_p`.
fn axpy_mod(x: &[(u32, u64)], a: u64, y: &[(u32, u64)], p: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let rx = x.get(i).map_or(u32::MAX, |e| e.0);
        let ry = y.get(j).map_or(u32::MAX, |e| e.0);
        let (row, v) = if rx < ry {
            i += 1;
            (rx, x[i - 1].1)
        } else if ry < rx {
            j += 1;
            (ry, (p - mul_mod(a, y[j - 1].1, p)) % p)
        } else {
            i += 1;
            j += 1;
            let t = mul_mod(a, y[j - 1].1, p);
            (rx, (x[i - 1].1 + p - t) % p)
        };
        if v != 0 {
            out.push((row, v));
        }
    }
    out
}

/// Row echelon basis of a growing subspace of `F^n`, for dense vectors.
pub struct Echelon<'f, F: Field> {
    field: &'f F,
    len: usize,
    // Each stored row is monic at its pivot.
    rows: Vec<(usize, Vec<F::Elem>)>,
    pivot_row: Vec<Option<usize>>,
}

impl<'f, F: Field> Echelon<'f, F> {
    pub fn new(field: &'f F, len: usize) -> Self {
        Self {
            field,
            len,
            rows: Vec::new(),
            pivot_row: vec![None; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    /// Reduces `v` against the basis in place; returns the first nonzero position left.
    pub fn reduce(&self, v: &mut [F::Elem]) -> Option<usize> {
        let f = self.field;
        for k in 0..self.len {
            if f.is_zero(&v[k]) {
                continue;
            }
            match self.pivot_row[k] {
                Some(r) => {
                    let c = v[k].clone();
                    let row = &self.rows[r].1;
                    for t in k..self.len {
                        if !f.is_zero(&row[t]) {
                            v[t] = f.sub(&v[t], &f.mul(&c, &row[t]));
                        }
                    }
                }
                None => return Some(k),
            }
        }
        None
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.len);
        let Some(k) = self.reduce(&mut v) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(&v[k]);
        for x in v.iter_mut().skip(k) {
            *x = f.mul(x, &inv);
        }
        self.pivot_row[k] = Some(self.rows.len());
        self.rows.push((k, v));
        true
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        if e.is_full() {
            break;
        }
        e.insert(r.clone());
    }
    e.rank()
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `ncols`.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    // Reduced row echelon form.
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..m.len() {
            if i != r && !field.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for t in 0..ncols {
                    let sub = field.mul(&factor, &m[r][t]);
                    m[i][t] = field.sub(&m[i][t], &sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); ncols];
            v[fc] = field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = field.sub(&field.zero(), &m[i][fc]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn triangle_boundary() -> Vec<Vec<(u32, i8)>> {
        // Edges 12, 13, 23 over vertices 0,1,2.
        vec![vec![(0, -1), (1, 1)], vec![(0, -1), (2, 1)], vec![(1, -1), (2, 1)]]
    }

    fn refs(cols: &[Vec<(u32, i8)>]) -> Vec<&SignedColumn> {
        cols.iter().map(|c| c.as_slice()).collect()
    }

    #[test]
    fn cycle_rank() {
        let cols = triangle_boundary();
        let r = refs(&cols);
        assert_eq!(rank_rational(&r, 3), 2);
        assert_eq!(rank_mod_p(&r, 3, 2), 2);
        assert_eq!(rank_integer::<BigInt>(&r, 3), Some(2));
    }

    #[test]
    fn characteristic_matters() {
        // [[1,1],[1,-1]] has determinant -2.
        let cols = vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, -1)]];
        let r = refs(&cols);
        assert_eq!(sparse_rank(&r, 2, FieldSpec::Rational), 2);
        assert_eq!(sparse_rank(&r, 2, FieldSpec::F2), 1);
        assert_eq!(sparse_rank(&r, 2, FieldSpec::F3), 2);
    }

    #[test]
    fn overflow_is_detected_and_agrees_with_bigint() {
        // Dense ±1 matrices from a fixed LCG; i8 overflows on most of them.
        let mut state = 12345u64;
        let mut overflowed = 0;
        for _ in 0..20 {
            let cols: Vec<Vec<(u32, i8)>> = (0..14)
                .map(|_| {
                    (0..14u32)
                        .filter_map(|r| {
                            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                            match state >> 62 {
                                0 => None,
                                1 => Some((r, -1)),
                                _ => Some((r, 1)),
                            }
                        })
                        .collect()
                })
                .collect();
            let r = refs(&cols);
            let exact = rank_integer::<BigInt>(&r, 14).unwrap();
            match rank_integer::<i8>(&r, 14) {
                Some(small) => assert_eq!(small, exact),
                None => overflowed += 1,
            }
            assert_eq!(rank_rational(&r, 14), exact);
            assert!(rank_mod_p(&r, 14, 1_000_000_007) <= exact);
        }
        assert!(overflowed > 0);
    }

    #[test]
    fn dense_rank_and_nullspace() {
        let q = Rationals;
        let rows: Vec<Vec<_>> = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| q.from_i64(x)).collect())
            .collect();
        assert_eq!(rank(&q, &rows, 3), 2);
        let ns = nullspace(&q, &rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            let dot = r
                .iter()
                .zip(&ns[0])
                .fold(q.zero(), |acc, (a, b)| q.add(&acc, &q.mul(a, b)));
            assert!(q.is_zero(&dot));
        }
        let f = PrimeField::new(5).unwrap();
        let rows5: Vec<Vec<u64>> = vec![vec![1, 2], vec![3, 1]];
        // det = 1 - 6 = -5 ≡ 0 mod 5.
        assert_eq!(rank(&f, &rows5, 2), 1);
        assert_eq!(nullspace(&f, &rows5, 2).len(), 1);
    }

    #[test]
    fn echelon_membership() {
        let f = PrimeField::new(7).unwrap();
        let mut e = Echelon::new(&f, 3);
        assert!(e.insert(vec![1, 2, 0]));
        assert!(!e.insert(vec![2, 4, 0]));
        assert!(e.contains(&[3, 6, 0]));
        assert!(!e.contains(&[0, 0, 1]));
        assert!(e.insert(vec![0, 1, 1]));
        assert_eq!(e.rank(), 2);
    }
}
