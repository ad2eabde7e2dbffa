//! Closed forms and grading maps for concrete varieties.
//!
//! Gradings of projective bundles are ordered by increasing cycle dimension
//! on the base: for a rank-3 bundle over `W` the target of the assembly map is
//! `Π_{p-2}(W) ⊕ Π_{p-1}(W) ⊕ Π_p(W)` with variables `t_0, t_1, t_2`.
//!
//! Intersection with the tautological class only ever acts on rank-1
//! gradings here, so it is passed around as a plain integer multiplier.

use num_bigint::BigInt;

use crate::deg;
use crate::error::{Error, Result};
use crate::grading::{GradingFunctional, TruncationSpec};
use crate::pushforward::{finite_fibers, pullback_weights, push_numeric, push_symbolic, MonoidMap};
use crate::series::{expand, geometric, pf_odot, ts_eq, ComparisonReport, ProductForm, TruncatedSeries};

fn binomial(n: i64, k: i64) -> Result<i64> {
    if k < 0 || n < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    i64::try_from(acc).map_err(|_| Error::ExponentOverflow)
}

/// `E_0` of a connected variety with Euler characteristic `chi`: `(1 - t)^{-chi}`.
pub fn mcdonald_e0(chi: i64) -> ProductForm {
    ProductForm::from_factors(1, [(deg![1], chi)]).expect("valid factor")
}

/// Series of effective `p`-cycles on `P^n` graded by degree:
/// `(1 - t)^{-C(n+1, p+1)}`, which is `1` once `p > n`.
pub fn euler_chow_pn(n: i64, p: i64) -> Result<ProductForm> {
    if n < 0 || p < 0 {
        return Err(Error::InvalidParameter(format!("projective space needs n, p >= 0, got n={n}, p={p}")));
    }
    Ok(mcdonald_e0(binomial(n + 1, p + 1)?))
}

/// A ruled surface over a genus `g` curve with invariant `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuledSurfaceSpec {
    g: i64,
    e: i64,
}

impl RuledSurfaceSpec {
    pub fn new(g: i64, e: i64) -> Result<Self> {
        if g < 0 || e < 0 {
            return Err(Error::InvalidParameter(format!("ruled surface needs g, e >= 0, got g={g}, e={e}")));
        }
        Ok(RuledSurfaceSpec { g, e })
    }

    pub fn genus(&self) -> i64 {
        self.g
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    /// Euler characteristic of the curve, `2 - 2g`.
    pub fn curve_euler_characteristic(&self) -> i64 {
        2 - 2 * self.g
    }
}

/// The `p`-th series of a ruled surface, `p ∈ {0, 1, 2}`.
///
/// `E_1` lives on `Z^2` with `t_0` the point class of the curve and `t_1`
/// the curve class.
pub fn ruled_series(s: RuledSurfaceSpec, p: i64) -> Result<ProductForm> {
    match p {
        0 => Ok(mcdonald_e0(2 * s.curve_euler_characteristic())),
        1 => ProductForm::from_factors(
            2,
            [(deg![1, 0], s.curve_euler_characteristic()), (deg![0, 1], 1), (deg![-s.e, 1], 1)],
        ),
        2 => Ok(mcdonald_e0(1)),
        _ => Err(Error::InvalidParameter(format!("ruled surface cycle dimension must be 0, 1 or 2, got {p}"))),
    }
}

/// `(a, b, c) -> (a - c·e, b + c)`.
pub fn ruled_psi1(e: i64) -> Result<MonoidMap> {
    if e < 0 {
        return Err(Error::InvalidParameter(format!("ruled surface needs e >= 0, got {e}")));
    }
    two_bundle_psi(-e)
}

/// `(α, β, γ) -> (α + d·γ, β + γ)` for the projectivization of `E ⊕ 1`.
pub fn two_bundle_psi(d: i64) -> Result<MonoidMap> {
    MonoidMap::from_rows(vec![vec![1, 0, d], vec![0, 1, 1]])
}

/// The assembly map of a rank-3 split bundle on domain `(a, b, c, d, e, f, g)`:
/// `(a + ξc·c + ξd·d, b + c + d + ξ'f·f + ξ'g·g, e + f + g)`.
pub fn scroll3_psi(xi_c: i64, xi_d: i64, xi2_f: i64, xi2_g: i64) -> Result<MonoidMap> {
    MonoidMap::from_rows(vec![
        vec![1, 0, xi_c, xi_d, 0, 0, 0],
        vec![0, 1, 1, 1, 0, xi2_f, xi2_g],
        vec![0, 0, 0, 0, 1, 1, 1],
    ])
}

/// A scroll `P(E_1 ⊕ E_2 ⊕ E_3)` over `P^n` built from line bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScrollSpec {
    pub n: i64,
    pub h: i64,
    pub p: i64,
}

impl ScrollSpec {
    pub fn new(n: i64, h: i64, p: i64) -> Result<Self> {
        if n < 1 || h < 0 || p < 2 {
            return Err(Error::InvalidParameter(format!(
                "scroll needs n >= 1, h >= 0, p >= 2, got n={n}, h={h}, p={p}"
            )));
        }
        Ok(ScrollSpec { n, h, p })
    }
}

/// The seven rank-1 factor series `[E_{p-2}, E_{p-1} ×3, E_p ×3]` of `P^n`.
///
/// For line bundles every fiber product of the `P(E_i)` is the base itself.
pub fn scroll3_factors(n: i64, p: i64) -> Result<Vec<ProductForm>> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("scroll factors need p >= 2, got {p}")));
    }
    let low = euler_chow_pn(n, p - 2)?;
    let mid = euler_chow_pn(n, p - 1)?;
    let top = euler_chow_pn(n, p)?;
    Ok(vec![low, mid.clone(), mid.clone(), mid, top.clone(), top.clone(), top])
}

/// Sign placed in front of `h` in the mixed monomials of the closed scroll formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrintedSign {
    Plus,
    Minus,
}

impl PrintedSign {
    pub fn value(self) -> i64 {
        match self {
            PrintedSign::Plus => 1,
            PrintedSign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            PrintedSign::Plus => '+',
            PrintedSign::Minus => '-',
        }
    }
}

/// Closed product formula for the scroll over `P^n` with `E_1 = O(h)`:
///
/// `(1-t_0)^{-C(n+1,p-1)} (1-t_1)^{-C(n+1,p)} (1-t_2)^{-C(n+1,p+1)}
///  (1-t_0^{sh} t_1)^{-2C(n+1,p)} (1-t_1^{sh} t_2)^{-2C(n+1,p+1)}`
///
/// with `s` the given sign. `Minus` is the formula as usually written.
pub fn scroll3_printed_formula(n: i64, h: i64, p: i64, sign: PrintedSign) -> Result<ProductForm> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("scroll formula needs p >= 2, got {p}")));
    }
    let sh = sign.value() * h;
    let mid = binomial(n + 1, p)?;
    let top = binomial(n + 1, p + 1)?;
    ProductForm::from_factors(
        3,
        [
            (deg![1, 0, 0], binomial(n + 1, p - 1)?),
            (deg![0, 1, 0], mid),
            (deg![0, 0, 1], top),
            (deg![sh, 1, 0], 2 * mid),
            (deg![0, sh, 1], 2 * top),
        ],
    )
}

/// The ⊙-factors of a projective bundle formula together with the grading map
/// from their product monoid to the bundle's grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleAssembly {
    factors: Vec<ProductForm>,
    psi: MonoidMap,
}

impl BundleAssembly {
    pub fn new(factors: Vec<ProductForm>, psi: MonoidMap) -> Result<Self> {
        let total: usize = factors.iter().map(ProductForm::rank).sum();
        if total != psi.domain_rank() {
            return Err(Error::RankMismatch { expected: psi.domain_rank(), found: total });
        }
        Ok(BundleAssembly { factors, psi })
    }

    pub fn factors(&self) -> &[ProductForm] {
        &self.factors
    }

    pub fn psi(&self) -> &MonoidMap {
        &self.psi
    }

    /// `factors[0] ⊙ factors[1] ⊙ ...`.
    pub fn domain_form(&self) -> Result<ProductForm> {
        self.factors.iter().try_fold(ProductForm::one(0), |acc, f| pf_odot(&acc, f))
    }
}

/// `E_1` of a ruled surface as the pushforward of `E_0(C) ⊙ E_1(C) ⊙ E_1(C)`.
pub fn ruled_assembly(s: RuledSurfaceSpec) -> Result<BundleAssembly> {
    let curve_points = mcdonald_e0(s.curve_euler_characteristic());
    let curve = geometric(deg![1])?;
    BundleAssembly::new(vec![curve_points, curve.clone(), curve], ruled_psi1(s.e)?)
}

/// `P(E ⊕ 1)` over `P^1` with intersection multiplier `d`.
pub fn two_bundle_assembly(d: i64) -> Result<BundleAssembly> {
    let line = geometric(deg![1])?;
    BundleAssembly::new(vec![mcdonald_e0(2), line.clone(), line], two_bundle_psi(d)?)
}

/// `P(O(h) ⊕ 1 ⊕ 1)` over `P^n`, with every intersection multiplier equal to `h`.
pub fn scroll_assembly(s: ScrollSpec) -> Result<BundleAssembly> {
    BundleAssembly::new(scroll3_factors(s.n, s.p)?, scroll3_psi(s.h, s.h, s.h, s.h)?)
}

/// Both routes through a bundle assembly and their comparison.
#[derive(Clone, Debug)]
pub struct AssemblyOutcome {
    /// Symbolic pushforward of the ⊙-product.
    pub form: ProductForm,
    /// Fiber-sum pushforward of the expanded ⊙-product.
    pub numeric: TruncatedSeries,
    /// `expand(form)` against `numeric`; empty for a correct assembly.
    pub report: ComparisonReport,
}

/// Pushes the ⊙-product of the factors forward symbolically and numerically.
///
/// The domain is expanded with the pulled-back functional `λ∘Ψ` and the same
/// bound, which covers every fiber of the target region exactly.
pub fn bundle_assembly(asm: &BundleAssembly, spec: &TruncationSpec) -> Result<AssemblyOutcome> {
    if !finite_fibers(&asm.psi) {
        return Err(Error::InfiniteFiber);
    }
    let domain = asm.domain_form()?;
    let form = push_symbolic(&asm.psi, &domain)?;
    let domain_spec = TruncationSpec::new(GradingFunctional::new(pullback_weights(&asm.psi, spec)?)?, spec.bound())?;
    let numeric = push_numeric(&asm.psi, &expand(&domain, &domain_spec)?, spec)?;
    let report = ts_eq(&expand(&form, spec)?, &numeric)?;
    Ok(AssemblyOutcome { form, numeric, report })
}
