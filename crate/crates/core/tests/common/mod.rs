//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's expansion or fiber routines.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Dense = BTreeMap<Vec<i64>, BigInt>;

fn dot(w: &[i64], v: &[i64]) -> i64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Multiplies two series and drops everything outside `0 <= w·α <= bound`.
pub fn mul(a: &Dense, b: &Dense, w: &[i64], bound: i64) -> Dense {
    let mut out = Dense::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = add(ma, mb);
            let d = dot(w, &m);
            if (0..=bound).contains(&d) {
                *out.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Expands `∏ (1 - t^m)^(-n)` by repeated multiplication: a positive
/// exponent multiplies by the geometric series `Σ t^(km)` `n` times, a
/// negative one multiplies by the binomial `1 - t^m` `|n|` times.
pub fn naive_expand(rank: usize, factors: &[(Vec<i64>, i64)], w: &[i64], bound: i64) -> Dense {
    let mut acc = Dense::new();
    acc.insert(vec![0; rank], BigInt::one());
    for (m, n) in factors {
        let step = dot(w, m);
        assert!(step >= 1, "oracle needs positive monomials");
        let mut factor = Dense::new();
        if *n > 0 {
            let mut k = 0;
            while k * step <= bound {
                factor.insert(m.iter().map(|c| c * k).collect(), BigInt::one());
                k += 1;
            }
        } else {
            factor.insert(vec![0; rank], BigInt::one());
            factor.insert(m.clone(), -BigInt::one());
        }
        for _ in 0..n.abs() {
            acc = mul(&acc, &factor, w, bound);
        }
    }
    acc
}

/// All points of `Z_+^rank` with `w·m <= bound`, via nested loops.
pub fn region_points(w: &[i64], bound: i64) -> Vec<Vec<i64>> {
    fn go(w: &[i64], left: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == w.len() {
            out.push(prefix.clone());
            return;
        }
        let wi = w[prefix.len()];
        for x in 0..=left / wi {
            prefix.push(x);
            go(w, left - wi * x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if bound >= 0 {
        go(w, bound, &mut Vec::new(), &mut out);
    }
    out
}

/// Applies a row-major matrix to a vector.
pub fn apply(rows: &[Vec<i64>], m: &[i64]) -> Vec<i64> {
    rows.iter().map(|r| dot(r, m)).collect()
}

/// Every point of the box `[0, side]^k`, lexicographically.
pub fn box_points(k: usize, side: i64) -> Vec<Vec<i64>> {
    region_points(&vec![1; k], side * k as i64).into_iter().filter(|p| p.iter().all(|&c| c <= side)).collect()
}

/// Binomial coefficient by the multiplicative formula.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}
