//! Binomials and small enumeration helpers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)` as a count of k-subsets of an n-set: zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as i128 / (t + 1) as i128;
    }
    i64::try_from(acc).expect("binomial overflows i64")
}

pub fn binomial_big(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

/// Row of Pascal's triangle `C(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<i64> {
    (0..=n).map(|k| binomial(n as i64, k as i64)).collect()
}

/// All `k`-element subsets of `0..n` as bit masks, in increasing numeric order.
pub fn masks_of_size(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 64);
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let limit: u128 = 1u128 << n;
    let mut m: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    loop {
        out.push(m);
        // Gosper's hack.
        let c = m & m.wrapping_neg();
        let r = m as u128 + c as u128;
        if r >= limit {
            break;
        }
        let r = r as u64;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// Compositions of `total` into exactly `parts` positive integers, lexicographic.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if total < parts {
            return;
        }
        for first in 1..=total - (parts - 1) {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

/// All permutations of `items` in lexicographic order of positions.
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    let mut out = vec![idx.iter().map(|&i| items[i].clone()).collect()];
    // Next-permutation on the index vector.
    loop {
        let Some(i) = (1..idx.len()).rev().find(|&i| idx[i - 1] < idx[i]) else {
            return out;
        };
        let j = (i..idx.len()).rev().find(|&j| idx[j] > idx[i - 1]).unwrap();
        idx.swap(i - 1, j);
        idx[i..].reverse();
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
        assert_eq!(binomial_big(100, 50).to_string(), "100891344545564193334812497256");
        assert_eq!(binomial_row(4), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn subset_masks() {
        let m = masks_of_size(5, 2);
        assert_eq!(m.len(), 10);
        assert!(m.iter().all(|x| x.count_ones() == 2 && *x < 32));
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(masks_of_size(3, 0), vec![0]);
        assert_eq!(masks_of_size(3, 3), vec![7]);
        assert_eq!(masks_of_size(64, 64), vec![u64::MAX]);
        assert_eq!(masks_of_size(2, 3), Vec::<u64>::new());
    }

    #[test]
    fn compositions_count() {
        for total in 0..8 {
            for parts in 1..5 {
                let c = compositions(total, parts);
                let expect = if total == 0 { 0 } else { binomial(total as i64 - 1, parts as i64 - 1) };
                assert_eq!(c.len() as i64, expect, "{total} {parts}");
            }
        }
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn permutation_count() {
        let p = permutations(&[1, 2, 3, 4]);
        assert_eq!(p.len(), 24);
        assert_eq!(p[0], vec![1, 2, 3, 4]);
        assert_eq!(p[23], vec![4, 3, 2, 1]);
    }
}
