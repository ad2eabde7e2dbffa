//! Multidegrees, positive grading functionals and truncation regions.
//!
//! A series lives on a lattice `Z^r`. To expand it we need a finite region,
//! which is cut out by a strictly positive integer functional `λ` and a bound
//! `B`: the region is `{α : λ·α <= B}`. Every monomial appearing in a product
//! form must have `λ`-degree at least one, otherwise expansion never ends.

use std::fmt;

use crate::elimination::strictly_positive_functional;
use crate::error::{Error, Result};

/// Largest supported lattice rank.
pub const MAX_RANK: usize = 16;

/// An exponent vector `α` of a monomial `t^α`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(components: Vec<i64>) -> Result<Self> {
        if components.len() > MAX_RANK {
            return Err(Error::RankOutOfRange(components.len()));
        }
        Ok(Multidegree(components))
    }

    pub fn zero(rank: usize) -> Self {
        Multidegree(vec![0; rank])
    }

    /// The unit vector `e_index` of the given rank.
    pub fn unit(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        Multidegree(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn checked_add(&self, other: &Multidegree) -> Result<Multidegree> {
        check_rank(self.rank(), other.rank())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::DegreeOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Multidegree)
    }

    pub fn checked_sub(&self, other: &Multidegree) -> Result<Multidegree> {
        check_rank(self.rank(), other.rank())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::DegreeOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Multidegree)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Multidegree> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::DegreeOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Multidegree)
    }

    /// `(self, other)` as a vector of rank `self.rank() + other.rank()`.
    pub fn concat(&self, other: &Multidegree) -> Result<Multidegree> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Multidegree::new(v)
    }

    /// Index of the single nonzero coordinate, if there is exactly one.
    pub fn support_coordinate(&self) -> Option<usize> {
        let mut nonzero = self.0.iter().enumerate().filter(|(_, &c)| c != 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }
}

impl From<Multidegree> for Vec<i64> {
    fn from(m: Multidegree) -> Self {
        m.0
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand for building multidegrees in tests and catalog code.
#[macro_export]
macro_rules! deg {
    ($($x:expr),* $(,)?) => {
        $crate::grading::Multidegree::new(vec![$($x as i64),*]).expect("rank within bounds")
    };
}

pub(crate) fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::RankMismatch { expected, found })
    }
}

/// A linear form with all weights at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradingFunctional(Vec<i64>);

impl GradingFunctional {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.len() > MAX_RANK {
            return Err(Error::RankOutOfRange(weights.len()));
        }
        if weights.iter().any(|&w| w < 1) {
            return Err(Error::InvalidFunctional(weights));
        }
        Ok(GradingFunctional(weights))
    }

    pub fn ones(rank: usize) -> Self {
        GradingFunctional(vec![1; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// `λ·α`, computed without overflow.
    pub fn degree(&self, m: &Multidegree) -> i128 {
        debug_assert_eq!(self.rank(), m.rank());
        self.0.iter().zip(m.components()).map(|(&w, &c)| w as i128 * c as i128).sum()
    }
}

/// The finite region `{α : λ·α <= bound}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncationSpec {
    functional: GradingFunctional,
    bound: i64,
}

impl TruncationSpec {
    pub fn new(functional: GradingFunctional, bound: i64) -> Result<Self> {
        if bound < 0 {
            return Err(Error::NegativeBound(bound));
        }
        Ok(TruncationSpec { functional, bound })
    }

    pub fn functional(&self) -> &GradingFunctional {
        &self.functional
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn rank(&self) -> usize {
        self.functional.rank()
    }

    pub fn contains(&self, m: &Multidegree) -> bool {
        self.functional.degree(m) <= self.bound as i128
    }
}

/// Succeeds iff `λ·m >= 1` for every monomial.
pub fn validate_functional<'a, I>(functional: &GradingFunctional, monomials: I) -> Result<()>
where
    I: IntoIterator<Item = &'a Multidegree>,
{
    for m in monomials {
        check_rank(functional.rank(), m.rank())?;
        if functional.degree(m) < 1 {
            return Err(Error::NonPositiveMonomial(m.clone()));
        }
    }
    Ok(())
}

/// Finds a grading functional that is positive on every monomial.
///
/// Tries the all-ones vector first. Otherwise solves `λ·m >= 1`, `λ_i >= 1` by
/// Fourier–Motzkin elimination and clears denominators.
pub fn auto_functional(monomials: &[Multidegree]) -> Result<GradingFunctional> {
    let rank = monomials.first().ok_or(Error::NoPositiveFunctional)?.rank();
    for m in monomials {
        check_rank(rank, m.rank())?;
        if m.is_zero() {
            return Err(Error::ZeroMonomial);
        }
    }
    let ones = GradingFunctional::ones(rank);
    if validate_functional(&ones, monomials).is_ok() {
        return Ok(ones);
    }
    let mut rows: Vec<Vec<i64>> = monomials.iter().map(|m| m.components().to_vec()).collect();
    rows.extend((0..rank).map(|i| Multidegree::unit(rank, i).into()));
    let weights = strictly_positive_functional(&rows, rank).ok_or(Error::NoPositiveFunctional)?;
    GradingFunctional::new(weights)
}

/// Lattice points of `Z_+^rank` inside the region, in lexicographic order.
///
/// General regions of `Z^rank` are not enumerable without a cone, so the
/// orthant restriction is mandatory.
pub fn enumerate_region(rank: usize, spec: &TruncationSpec, positive_orthant_only: bool) -> Result<RegionIter> {
    if !positive_orthant_only {
        return Err(Error::UnboundedRegion);
    }
    check_rank(spec.rank(), rank)?;
    Ok(RegionIter::new(spec.functional.weights().to_vec(), spec.bound))
}

/// Lexicographic odometer over `{m >= 0 : w·m <= bound}`.
#[derive(Clone, Debug)]
pub struct RegionIter {
    weights: Vec<i64>,
    bound: i128,
    current: Option<Vec<i64>>,
    used: i128,
}

impl RegionIter {
    pub(crate) fn new(weights: Vec<i64>, bound: i64) -> Self {
        debug_assert!(weights.iter().all(|&w| w >= 1));
        let current = (bound >= 0).then(|| vec![0; weights.len()]);
        RegionIter { weights, bound: bound as i128, current, used: 0 }
    }

    fn advance(&mut self) {
        let Some(cur) = self.current.as_mut() else { return };
        let mut tail = 0i128;
        for i in (0..cur.len()).rev() {
            let w = self.weights[i] as i128;
            if self.used - tail + w <= self.bound {
                for c in &mut cur[i + 1..] {
                    *c = 0;
                }
                cur[i] += 1;
                self.used = self.used - tail + w;
                return;
            }
            tail += w * cur[i] as i128;
        }
        self.current = None;
    }
}

impl Iterator for RegionIter {
    type Item = Multidegree;

    fn next(&mut self) -> Option<Multidegree> {
        let out = Multidegree(self.current.clone()?);
        self.advance();
        Some(out)
    }
}
