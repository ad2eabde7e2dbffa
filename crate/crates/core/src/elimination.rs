//! Fourier–Motzkin elimination over the rationals.
//!
//! The only question asked of it here is strict feasibility of a homogeneous
//! system: given integer vectors `v_i`, find an integer `y` with `v_i · y >= 1`
//! for every `i`. Both the positive grading functional and the bounded-fiber
//! certificate of a monoid map reduce to this.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs · y >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

impl Constraint {
    /// Scale so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c /= &lead;
            }
            self.rhs /= &lead;
        }
        self
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Returns an integer vector `y` of length `dim` with `v · y >= 1` for each
/// of `vectors`, or `None` when no rational (hence no integer) solution exists.
pub(crate) fn strictly_positive_functional(vectors: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    let initial: BTreeSet<Constraint> = vectors
        .iter()
        .map(|v| {
            Constraint {
                coeffs: v.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
                rhs: BigRational::one(),
            }
            .normalized()
        })
        .collect();

    // stages[k] holds the system over variables 0..=k, before eliminating k.
    let mut stages: Vec<Vec<Constraint>> = vec![Vec::new(); dim];
    let mut system = initial;
    for var in (0..dim).rev() {
        for c in &system {
            if c.is_trivial() && c.rhs.is_positive() {
                return None;
            }
        }
        system.retain(|c| !c.is_trivial());
        stages[var] = system.iter().cloned().collect();

        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for c in system {
            if c.coeffs[var].is_positive() {
                lower.push(c);
            } else if c.coeffs[var].is_negative() {
                upper.push(c);
            } else {
                rest.insert(c);
            }
        }
        for lo in &lower {
            for up in &upper {
                let a = lo.coeffs[var].clone();
                let b = -up.coeffs[var].clone();
                let coeffs = lo.coeffs.iter().zip(&up.coeffs).map(|(x, y)| x * &b + y * &a).collect();
                let combined = Constraint { coeffs, rhs: &lo.rhs * &b + &up.rhs * &a };
                rest.insert(combined.normalized());
            }
        }
        system = rest;
    }
    if system.iter().any(|c| c.rhs.is_positive()) {
        return None;
    }

    let mut solution: Vec<BigRational> = Vec::with_capacity(dim);
    for (var, stage) in stages.iter().enumerate() {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for c in stage {
            let a = &c.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let mut slack = c.rhs.clone();
            for (coef, value) in c.coeffs.iter().zip(&solution) {
                slack -= coef * value;
            }
            let bound = slack / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        let value = match (lo, hi) {
            (Some(l), hi) => {
                let ceil = l.ceil();
                if hi.as_ref().is_none_or(|h| ceil <= *h) {
                    ceil
                } else {
                    l
                }
            }
            (None, Some(h)) => h.floor().min(BigRational::zero()),
            (None, None) => BigRational::zero(),
        };
        solution.push(value);
    }

    // Scaling by a positive integer keeps every `v · y >= 1` intact.
    let denominator = solution.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    solution
        .iter()
        .map(|q| {
            let scaled = q.numer() * (&denominator / q.denom());
            i64::try_from(scaled).ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(vectors: &[Vec<i64>], y: &[i64]) -> bool {
        vectors.iter().all(|v| v.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() >= 1)
    }

    #[test]
    fn finds_functional_for_mixed_cone() {
        let vs = vec![vec![1, 0], vec![0, 1], vec![-2, 1]];
        let y = strictly_positive_functional(&vs, 2).unwrap();
        assert!(check(&vs, &y));
    }

    #[test]
    fn opposite_rays_are_infeasible() {
        assert_eq!(strictly_positive_functional(&[vec![1], vec![-1]], 1), None);
        assert_eq!(strictly_positive_functional(&[vec![0, 0]], 2), None);
        assert_eq!(strictly_positive_functional(&[vec![1, 1], vec![-1, 0], vec![0, -1]], 2), None);
    }

    #[test]
    fn opposite_signs_in_one_coordinate() {
        let vs = vec![vec![2, 1], vec![-2, 1], vec![0, 1]];
        let y = strictly_positive_functional(&vs, 2).unwrap();
        assert!(check(&vs, &y));
    }

    #[test]
    fn empty_system_is_feasible() {
        assert_eq!(strictly_positive_functional(&[], 3), Some(vec![0, 0, 0]));
    }
}
