//! Product forms and their truncated expansions in the monoid ring `Z[Z^r]`.
//!
//! A [`ProductForm`] is a finite product `∏ (1 - t^{m_i})^{-n_i}`. Expanding it
//! inside a [`TruncationSpec`] region yields a [`TruncatedSeries`] with exact
//! big-integer coefficients.
//!
//! Every series built by this crate is supported in the half-space
//! `{α : λ·α >= 0}` of its own functional `λ`. That is what makes truncated
//! convolution exact: a term of degree `α` with `λ·α <= B` can only come from
//! factors of degree at most `B` themselves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grading::{check_rank, validate_functional, Multidegree, TruncationSpec};

/// `∏ (1 - t^m)^(-n)` over its factors `(m, n)`, kept in canonical form:
/// sorted by monomial, equal monomials merged, zero exponents dropped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProductForm {
    rank: usize,
    factors: Vec<(Multidegree, i64)>,
}

impl ProductForm {
    /// The series `1` on `Z^rank`.
    pub fn one(rank: usize) -> Self {
        ProductForm { rank, factors: Vec::new() }
    }

    pub fn from_factors<I>(rank: usize, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Multidegree, i64)>,
    {
        let mut merged: BTreeMap<Multidegree, i64> = BTreeMap::new();
        for (m, n) in factors {
            check_rank(rank, m.rank())?;
            if m.is_zero() {
                return Err(Error::ZeroMonomial);
            }
            let slot = merged.entry(m).or_insert(0);
            *slot = slot.checked_add(n).ok_or(Error::ExponentOverflow)?;
        }
        Ok(ProductForm { rank, factors: merged.into_iter().filter(|&(_, n)| n != 0).collect() })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn factors(&self) -> &[(Multidegree, i64)] {
        &self.factors
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Multidegree> {
        self.factors.iter().map(|(m, _)| m)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Debug for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (m, n)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "(1 - t^{m})^({})", -n)?;
        }
        Ok(())
    }
}

/// `1 / (1 - t^m)`.
pub fn geometric(m: Multidegree) -> Result<ProductForm> {
    let rank = m.rank();
    ProductForm::from_factors(rank, [(m, 1)])
}

/// Raise every factor to the `k`-th power.
pub fn pf_power(p: &ProductForm, k: i64) -> Result<ProductForm> {
    let factors = p
        .factors
        .iter()
        .map(|(m, n)| n.checked_mul(k).map(|e| (m.clone(), e)).ok_or(Error::ExponentOverflow))
        .collect::<Result<Vec<_>>>()?;
    ProductForm::from_factors(p.rank, factors)
}

pub fn pf_mul(p: &ProductForm, q: &ProductForm) -> Result<ProductForm> {
    check_rank(p.rank, q.rank)?;
    ProductForm::from_factors(p.rank, p.factors.iter().chain(&q.factors).cloned())
}

/// External product: the result on `Z^{r+s}` has coefficient `P(α)·Q(β)` at `(α, β)`.
pub fn pf_odot(p: &ProductForm, q: &ProductForm) -> Result<ProductForm> {
    let left_pad = Multidegree::zero(q.rank);
    let right_pad = Multidegree::zero(p.rank);
    let mut factors = Vec::with_capacity(p.factors.len() + q.factors.len());
    for (m, n) in &p.factors {
        factors.push((m.concat(&left_pad)?, *n));
    }
    for (m, n) in &q.factors {
        factors.push((right_pad.concat(m)?, *n));
    }
    ProductForm::from_factors(p.rank + q.rank, factors)
}

/// A series known on the region of `spec`.
///
/// Degrees inside the region that are absent from `coefficients` have
/// coefficient zero, except those listed in `incomplete`, whose stored value
/// (or zero) is not certified exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    spec: TruncationSpec,
    coefficients: BTreeMap<Multidegree, BigInt>,
    incomplete: BTreeSet<Multidegree>,
}

impl TruncatedSeries {
    pub fn zero(spec: TruncationSpec) -> Self {
        TruncatedSeries { spec, coefficients: BTreeMap::new(), incomplete: BTreeSet::new() }
    }

    pub fn one(spec: TruncationSpec) -> Self {
        let mut s = Self::zero(spec);
        s.coefficients.insert(Multidegree::zero(s.rank()), BigInt::one());
        s
    }

    /// Builds a series from explicit data. Every degree must satisfy
    /// `0 <= λ·α <= B`.
    pub fn from_parts<C, I>(spec: TruncationSpec, coefficients: C, incomplete: I) -> Result<Self>
    where
        C: IntoIterator<Item = (Multidegree, BigInt)>,
        I: IntoIterator<Item = Multidegree>,
    {
        let mut s = Self::zero(spec);
        for (m, c) in coefficients {
            s.check_degree(&m)?;
            if !c.is_zero() {
                *s.coefficients.entry(m).or_insert_with(BigInt::zero) += c;
            }
        }
        s.coefficients.retain(|_, c| !c.is_zero());
        for m in incomplete {
            s.check_degree(&m)?;
            s.incomplete.insert(m);
        }
        Ok(s)
    }

    fn check_degree(&self, m: &Multidegree) -> Result<()> {
        check_rank(self.rank(), m.rank())?;
        let d = self.spec.functional().degree(m);
        if d < 0 || d > self.spec.bound() as i128 {
            return Err(Error::OutsideRegion(m.clone()));
        }
        Ok(())
    }

    pub(crate) fn insert_raw(&mut self, m: Multidegree, c: BigInt, certified: bool) {
        if !c.is_zero() {
            self.coefficients.insert(m.clone(), c);
        }
        if !certified {
            self.incomplete.insert(m);
        }
    }

    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    pub fn spec(&self) -> &TruncationSpec {
        &self.spec
    }

    /// Coefficient at `m`; zero for absent degrees.
    pub fn coefficient(&self, m: &Multidegree) -> BigInt {
        self.coefficients.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero coefficients in lexicographic degree order.
    pub fn iter(&self) -> impl Iterator<Item = (&Multidegree, &BigInt)> {
        self.coefficients.iter()
    }

    pub fn incomplete(&self) -> &BTreeSet<Multidegree> {
        &self.incomplete
    }

    pub fn is_complete(&self) -> bool {
        self.incomplete.is_empty()
    }

    pub fn is_certified(&self, m: &Multidegree) -> bool {
        !self.incomplete.contains(m)
    }
}

/// Coefficients of `(1 - x)^(-n)` for `x^0 ..= x^max_power`.
fn binomial_series(n: i64, max_power: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    if n > 0 {
        for d in 1..=max_power {
            let prev = out.last().unwrap();
            out.push(prev * BigInt::from(n - 1 + d) / BigInt::from(d));
        }
    } else {
        let k = -n;
        for d in 1..=max_power.min(k) {
            let prev = out.last().unwrap();
            out.push(-(prev * BigInt::from(k - d + 1)) / BigInt::from(d));
        }
    }
    out
}

/// Exact coefficients of a product form on the region of `spec`.
///
/// Factors are multiplied in one at a time; terms leaving the region are
/// dropped, which is sound because every monomial has positive `λ`-degree.
pub fn expand(p: &ProductForm, spec: &TruncationSpec) -> Result<TruncatedSeries> {
    check_rank(spec.rank(), p.rank)?;
    validate_functional(spec.functional(), p.monomials())?;
    let bound = spec.bound() as i128;
    let lambda = spec.functional();

    let mut current: BTreeMap<Multidegree, BigInt> = BTreeMap::new();
    current.insert(Multidegree::zero(p.rank), BigInt::one());
    for (m, n) in &p.factors {
        let step = lambda.degree(m);
        let max_power = i64::try_from(bound / step).map_err(|_| Error::DegreeOverflow)?;
        let coeffs = binomial_series(*n, max_power);
        let mut next: BTreeMap<Multidegree, BigInt> = BTreeMap::new();
        for (alpha, c) in &current {
            let base = lambda.degree(alpha);
            let mut target = alpha.clone();
            for (d, b) in coeffs.iter().enumerate() {
                if base + d as i128 * step > bound {
                    break;
                }
                if d > 0 {
                    target = target.checked_add(m)?;
                }
                if !b.is_zero() {
                    *next.entry(target.clone()).or_insert_with(BigInt::zero) += c * b;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        current = next;
    }
    Ok(TruncatedSeries { spec: spec.clone(), coefficients: current, incomplete: BTreeSet::new() })
}

/// Truncated convolution product.
///
/// A product degree is uncertified when any contributing pair touches an
/// uncertified degree of either input.
pub fn ts_mul(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    if f.spec != g.spec {
        return Err(Error::SpecMismatch);
    }
    let spec = &f.spec;
    let mut out = TruncatedSeries::zero(spec.clone());
    for (a, ca) in &f.coefficients {
        for (b, cb) in &g.coefficients {
            let s = a.checked_add(b)?;
            if spec.contains(&s) {
                *out.coefficients.entry(s).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
    }
    out.coefficients.retain(|_, c| !c.is_zero());

    let support = |s: &TruncatedSeries| -> BTreeSet<Multidegree> {
        s.coefficients.keys().chain(&s.incomplete).cloned().collect()
    };
    let (fs, gs) = (support(f), support(g));
    for a in &f.incomplete {
        for b in &gs {
            let s = a.checked_add(b)?;
            if spec.contains(&s) {
                out.incomplete.insert(s);
            }
        }
    }
    for b in &g.incomplete {
        for a in &fs {
            let s = a.checked_add(b)?;
            if spec.contains(&s) {
                out.incomplete.insert(s);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientDiff {
    pub degree: Multidegree,
    pub left: BigInt,
    pub right: BigInt,
}

/// Outcome of comparing two truncated series on their common certified region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub diffs: Vec<CoefficientDiff>,
    pub left_complete: bool,
    pub right_complete: bool,
    /// Degrees skipped because one side could not certify them.
    pub uncertified: Vec<Multidegree>,
}

impl ComparisonReport {
    pub fn is_equal(&self) -> bool {
        self.diffs.is_empty()
    }
}

pub fn ts_eq(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<ComparisonReport> {
    check_rank(f.rank(), g.rank())?;
    if f.spec != g.spec {
        return Err(Error::SpecMismatch);
    }
    let uncertified: BTreeSet<Multidegree> = f.incomplete.union(&g.incomplete).cloned().collect();
    let degrees: BTreeSet<&Multidegree> = f.coefficients.keys().chain(g.coefficients.keys()).collect();
    let diffs = degrees
        .into_iter()
        .filter(|m| !uncertified.contains(*m))
        .filter_map(|m| {
            let (left, right) = (f.coefficient(m), g.coefficient(m));
            (left != right).then(|| CoefficientDiff { degree: m.clone(), left, right })
        })
        .collect();
    Ok(ComparisonReport {
        diffs,
        left_complete: f.is_complete(),
        right_complete: g.is_complete(),
        uncertified: uncertified.into_iter().collect(),
    })
}

/// True when every coefficient is non-negative.
pub fn is_nonnegative(f: &TruncatedSeries) -> bool {
    f.coefficients.values().all(|c| !c.is_negative())
}
