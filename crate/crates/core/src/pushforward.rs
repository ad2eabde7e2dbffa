//! Pushforward of series along linear monoid maps `Z_+^k -> Z^r`.
//!
//! `(Ψ_# f)(α) = Σ_{m ∈ Ψ^{-1}(α)} f(m)` is computed two ways: numerically by
//! summing over enumerated fibers, and symbolically by substituting
//! `t^{e_j} -> t^{Ψ(e_j)}` into a coordinate-split product form.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::elimination::strictly_positive_functional;
use crate::error::{Error, Result};
use crate::grading::{check_rank, Multidegree, RegionIter, TruncationSpec, MAX_RANK};
use crate::series::{ProductForm, TruncatedSeries};

/// Integer matrix acting on column vectors of the positive orthant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonoidMap {
    domain_rank: usize,
    rows: Vec<Vec<i64>>,
}

impl MonoidMap {
    /// Builds a map from its rows. Each row has length `domain_rank`.
    pub fn new(domain_rank: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if domain_rank > MAX_RANK {
            return Err(Error::RankOutOfRange(domain_rank));
        }
        if rows.len() > MAX_RANK {
            return Err(Error::RankOutOfRange(rows.len()));
        }
        if rows.iter().any(|r| r.len() != domain_rank) {
            return Err(Error::RaggedMatrix);
        }
        Ok(MonoidMap { domain_rank, rows })
    }

    /// Builds a map from a nonempty list of rows.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let domain_rank = rows.first().ok_or(Error::RaggedMatrix)?.len();
        Self::new(domain_rank, rows)
    }

    pub fn identity(rank: usize) -> Self {
        let rows = (0..rank).map(|i| Multidegree::unit(rank, i).into()).collect();
        MonoidMap { domain_rank: rank, rows }
    }

    pub fn domain_rank(&self) -> usize {
        self.domain_rank
    }

    pub fn target_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The image `Ψ(e_j)` of the j-th domain generator.
    pub fn column(&self, j: usize) -> Multidegree {
        Multidegree::new(self.rows.iter().map(|r| r[j]).collect()).expect("rank checked")
    }

    pub fn columns(&self) -> Vec<Multidegree> {
        (0..self.domain_rank).map(|j| self.column(j)).collect()
    }

    pub fn apply(&self, m: &Multidegree) -> Result<Multidegree> {
        check_rank(self.domain_rank, m.rank())?;
        let image = self
            .rows
            .iter()
            .map(|row| {
                let s: i128 = row.iter().zip(m.components()).map(|(&a, &b)| a as i128 * b as i128).sum();
                i64::try_from(s).map_err(|_| Error::DegreeOverflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Multidegree::new(image)
    }

    /// A target functional `y` with `y·Ψ(e_j) >= 1` for every `j`, if any.
    ///
    /// Its existence is equivalent to `ker Ψ ∩ Z_+^k = {0}` (Gordan's
    /// alternative), and it bounds every fiber: `Σ_j (y·Ψ(e_j)) m_j = y·α`.
    pub fn fiber_certificate(&self) -> Option<Vec<i64>> {
        let cols: Vec<Vec<i64>> = self.columns().into_iter().map(Into::into).collect();
        strictly_positive_functional(&cols, self.target_rank())
    }
}

impl fmt::Debug for MonoidMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonoidMap{:?}", self.rows)
    }
}

/// True iff every fiber of `Ψ` on `Z_+^k` is finite.
pub fn finite_fibers(psi: &MonoidMap) -> bool {
    psi.fiber_certificate().is_some()
}

/// Depth-first search state for one fiber.
struct FiberSearch<'a> {
    psi: &'a MonoidMap,
    /// `y·Ψ(e_j)`, all at least one.
    weights: Vec<i128>,
    /// `suffix_sign[j][i]`: (all of row i in columns j.. are >= 0, all are <= 0).
    suffix_sign: Vec<Vec<(bool, bool)>>,
    certificate: Vec<i64>,
    point: Vec<i64>,
    out: Vec<Multidegree>,
}

impl FiberSearch<'_> {
    fn budget(&self, residual: &[i128]) -> i128 {
        self.certificate.iter().zip(residual).map(|(&y, &r)| y as i128 * r).sum()
    }

    fn search(&mut self, j: usize, residual: &mut [i128]) {
        let k = self.psi.domain_rank;
        if j == k {
            if residual.iter().all(|&r| r == 0) {
                self.out.push(Multidegree::new(self.point.clone()).expect("rank checked"));
            }
            return;
        }
        for (i, &r) in residual.iter().enumerate() {
            let (nonneg, nonpos) = self.suffix_sign[j][i];
            if (nonneg && r < 0) || (nonpos && r > 0) {
                return;
            }
        }
        let budget = self.budget(residual);
        if budget < 0 {
            return;
        }
        let max = budget / self.weights[j];
        let column: Vec<i128> = self.psi.rows.iter().map(|row| row[j] as i128).collect();
        for value in 0..=max {
            self.point[j] = value as i64;
            self.search(j + 1, residual);
            for (r, c) in residual.iter_mut().zip(&column) {
                *r -= c;
            }
        }
        for (r, c) in residual.iter_mut().zip(&column) {
            *r += c * (max + 1);
        }
        self.point[j] = 0;
    }
}

fn fiber_with_certificate(psi: &MonoidMap, certificate: &[i64], alpha: &Multidegree) -> Vec<Multidegree> {
    let k = psi.domain_rank;
    let weights = psi
        .columns()
        .iter()
        .map(|c| c.components().iter().zip(certificate).map(|(&a, &y)| a as i128 * y as i128).sum())
        .collect();
    let suffix_sign = (0..=k)
        .map(|j| {
            psi.rows.iter().map(|row| (row[j..].iter().all(|&a| a >= 0), row[j..].iter().all(|&a| a <= 0))).collect()
        })
        .collect();
    let mut search = FiberSearch {
        psi,
        weights,
        suffix_sign,
        certificate: certificate.to_vec(),
        point: vec![0; k],
        out: Vec::new(),
    };
    let mut residual: Vec<i128> = alpha.components().iter().map(|&a| a as i128).collect();
    search.search(0, &mut residual);
    search.out
}

/// All `m ∈ Z_+^k` with `Ψm = α`, in lexicographic order.
pub fn fiber(psi: &MonoidMap, alpha: &Multidegree) -> Result<Vec<Multidegree>> {
    check_rank(psi.target_rank(), alpha.rank())?;
    let certificate = psi.fiber_certificate().ok_or(Error::InfiniteFiber)?;
    Ok(fiber_with_certificate(psi, &certificate, alpha))
}

/// `λ∘Ψ` as domain weights; every generator must land in positive degree.
pub fn pullback_weights(psi: &MonoidMap, spec: &TruncationSpec) -> Result<Vec<i64>> {
    check_rank(psi.target_rank(), spec.rank())?;
    psi.columns()
        .into_iter()
        .map(|c| {
            let d = spec.functional().degree(&c);
            if d < 1 {
                Err(Error::NonPositiveMonomial(c))
            } else {
                i64::try_from(d).map_err(|_| Error::DegreeOverflow)
            }
        })
        .collect()
}

/// Numeric pushforward by fiber sums.
///
/// Every target degree in the region of `target_spec` with a nonempty fiber
/// is computed. A degree is certified only when its whole fiber lies inside
/// the certified region of `f`.
pub fn push_numeric(psi: &MonoidMap, f: &TruncatedSeries, target_spec: &TruncationSpec) -> Result<TruncatedSeries> {
    check_rank(psi.domain_rank(), f.rank())?;
    let certificate = psi.fiber_certificate().ok_or(Error::InfiniteFiber)?;
    if let Some((m, _)) = f.iter().find(|(m, _)| !m.is_nonnegative()) {
        return Err(Error::OutsideDomain(m.clone()));
    }
    let weights = pullback_weights(psi, target_spec)?;

    let mut targets = BTreeSet::new();
    for m in RegionIter::new(weights, target_spec.bound()) {
        targets.insert(psi.apply(&m)?);
    }
    let targets: Vec<Multidegree> = targets.into_iter().collect();
    let sums: Vec<(BigInt, bool)> = targets
        .par_iter()
        .map(|alpha| {
            let mut total = BigInt::zero();
            let mut certified = true;
            for m in fiber_with_certificate(psi, &certificate, alpha) {
                certified &= f.spec().contains(&m) && f.is_certified(&m);
                total += f.coefficient(&m);
            }
            (total, certified)
        })
        .collect();

    let mut out = TruncatedSeries::zero(target_spec.clone());
    for (alpha, (c, certified)) in targets.into_iter().zip(sums) {
        out.insert_raw(alpha, c, certified);
    }
    Ok(out)
}

/// Symbolic pushforward of a coordinate-split product form by monomial
/// substitution.
pub fn push_symbolic(psi: &MonoidMap, p: &ProductForm) -> Result<ProductForm> {
    check_rank(psi.domain_rank(), p.rank())?;
    if !finite_fibers(psi) {
        return Err(Error::InfiniteFiber);
    }
    let mut factors = Vec::with_capacity(p.factors().len());
    for (m, n) in p.factors() {
        if m.support_coordinate().is_none() {
            return Err(Error::NotCoordinateSplit(m.clone()));
        }
        if !m.is_nonnegative() {
            return Err(Error::OutsideDomain(m.clone()));
        }
        let image = psi.apply(m)?;
        if image.is_zero() {
            return Err(Error::ZeroImageMonomial(m.clone()));
        }
        factors.push((image, *n));
    }
    ProductForm::from_factors(psi.target_rank(), factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deg;
    use crate::grading::GradingFunctional;
    use crate::series::{expand, geometric, pf_odot, pf_power, ts_eq};

    fn map(rows: &[&[i64]]) -> MonoidMap {
        MonoidMap::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn spec(w: &[i64], b: i64) -> TruncationSpec {
        TruncationSpec::new(GradingFunctional::new(w.to_vec()).unwrap(), b).unwrap()
    }

    /// Exhaustive search over the box `[0, side]^k`.
    fn box_fiber(psi: &MonoidMap, alpha: &Multidegree, side: i64) -> Vec<Multidegree> {
        let k = psi.domain_rank();
        let mut out = Vec::new();
        let mut point = vec![0i64; k];
        loop {
            let m = Multidegree::new(point.clone()).unwrap();
            if psi.apply(&m).unwrap() == *alpha {
                out.push(m);
            }
            let mut i = k;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if point[i] < side {
                    point[i] += 1;
                    break;
                }
                point[i] = 0;
            }
        }
    }

    #[test]
    fn finite_fiber_examples() {
        assert!(!finite_fibers(&map(&[&[1, -1]])));
        assert!(finite_fibers(&map(&[&[1, 0, -1], &[0, 1, 1]])));
        assert!(finite_fibers(&MonoidMap::identity(4)));
        // a zero column puts every multiple of that generator in the fiber over 0
        assert!(!finite_fibers(&map(&[&[1, 0], &[0, 0]])));
    }

    #[test]
    fn fiber_examples() {
        let psi = map(&[&[1, 0, -1], &[0, 1, 1]]);
        assert_eq!(fiber(&psi, &deg![0, 1]).unwrap(), vec![deg![0, 1, 0], deg![1, 0, 1]]);
        assert_eq!(box_fiber(&psi, &deg![0, 1], 2), vec![deg![0, 1, 0], deg![1, 0, 1]]);
        assert_eq!(fiber(&psi, &deg![1, 0]).unwrap(), vec![deg![1, 0, 0]]);
        assert_eq!(box_fiber(&psi, &deg![1, 0], 2), vec![deg![1, 0, 0]]);
        assert_eq!(fiber(&psi, &deg![0, 0]).unwrap(), vec![deg![0, 0, 0]]);
    }

    #[test]
    fn fiber_of_infinite_map_errors() {
        assert_eq!(fiber(&map(&[&[1, -1]]), &deg![0]), Err(Error::InfiniteFiber));
    }

    #[test]
    fn fiber_matches_box_search() {
        let psi = map(&[&[1, 2, -1, 0], &[0, 1, 1, 2]]);
        assert!(finite_fibers(&psi));
        for a in -3..=4 {
            for b in 0..=4 {
                let alpha = deg![a, b];
                assert_eq!(fiber(&psi, &alpha).unwrap(), box_fiber(&psi, &alpha, 8), "{alpha}");
            }
        }
    }

    fn hirzebruch_domain() -> TruncatedSeries {
        let g = geometric(deg![1]).unwrap();
        let p = pf_odot(&pf_odot(&pf_power(&g, 2).unwrap(), &g).unwrap(), &g).unwrap();
        expand(&p, &spec(&[1, 2, 1], 6)).unwrap()
    }

    #[test]
    fn push_numeric_examples() {
        let psi = map(&[&[1, 0, -1], &[0, 1, 1]]);
        let pushed = push_numeric(&psi, &hirzebruch_domain(), &spec(&[1, 2], 6)).unwrap();
        assert!(pushed.is_complete());
        assert_eq!(pushed.coefficient(&deg![0, 0]), BigInt::from(1));
        assert_eq!(pushed.coefficient(&deg![1, 0]), BigInt::from(2));
        assert_eq!(pushed.coefficient(&deg![0, 1]), BigInt::from(3));
    }

    #[test]
    fn push_numeric_marks_uncovered_degrees() {
        let psi = map(&[&[1, 0, -1], &[0, 1, 1]]);
        let g = geometric(deg![1]).unwrap();
        let p = pf_odot(&pf_odot(&pf_power(&g, 2).unwrap(), &g).unwrap(), &g).unwrap();
        let small = expand(&p, &spec(&[1, 1, 1], 2)).unwrap();
        let pushed = push_numeric(&psi, &small, &spec(&[1, 2], 6)).unwrap();
        assert!(!pushed.is_complete());
        assert!(pushed.is_certified(&deg![0, 1]));
        assert!(!pushed.is_certified(&deg![0, 3]));
    }

    #[test]
    fn push_numeric_requires_positive_pullback() {
        let psi = map(&[&[1, 0, -1], &[0, 1, 1]]);
        assert_eq!(
            push_numeric(&psi, &hirzebruch_domain(), &spec(&[1, 1], 4)),
            Err(Error::NonPositiveMonomial(deg![-1, 1]))
        );
    }

    #[test]
    fn push_symbolic_examples() {
        for e in 0..4i64 {
            for g in 0..3i64 {
                let psi = map(&[&[1, 0, -e], &[0, 1, 1]]);
                let p =
                    ProductForm::from_factors(3, [(deg![1, 0, 0], 2 - 2 * g), (deg![0, 1, 0], 1), (deg![0, 0, 1], 1)])
                        .unwrap();
                let expected =
                    ProductForm::from_factors(2, [(deg![1, 0], 2 - 2 * g), (deg![0, 1], 1), (deg![-e, 1], 1)]).unwrap();
                assert_eq!(push_symbolic(&psi, &p).unwrap(), expected);
            }
        }
        let p = ProductForm::from_factors(2, [(deg![1, 0], 3), (deg![0, 2], -1)]).unwrap();
        assert_eq!(push_symbolic(&MonoidMap::identity(2), &p).unwrap(), p);
    }

    #[test]
    fn push_symbolic_errors() {
        let psi = map(&[&[1, 0], &[0, 1]]);
        let mixed = ProductForm::from_factors(2, [(deg![1, 1], 1)]).unwrap();
        assert_eq!(push_symbolic(&psi, &mixed), Err(Error::NotCoordinateSplit(deg![1, 1])));
        let drop = MonoidMap::new(2, vec![vec![1, 0]]).unwrap();
        let p = ProductForm::from_factors(2, [(deg![0, 1], 1)]).unwrap();
        assert_eq!(push_symbolic(&drop, &p), Err(Error::InfiniteFiber));
    }

    #[test]
    fn two_paths_agree_on_hirzebruch() {
        let psi = map(&[&[1, 0, -1], &[0, 1, 1]]);
        let g = geometric(deg![1]).unwrap();
        let p = pf_odot(&pf_odot(&pf_power(&g, 2).unwrap(), &g).unwrap(), &g).unwrap();
        let target = spec(&[1, 2], 10);
        let domain = spec(&pullback_weights(&psi, &target).unwrap(), 10);
        let numeric = push_numeric(&psi, &expand(&p, &domain).unwrap(), &target).unwrap();
        let symbolic = expand(&push_symbolic(&psi, &p).unwrap(), &target).unwrap();
        let report = ts_eq(&symbolic, &numeric).unwrap();
        assert!(report.is_equal() && report.right_complete);
    }
}
