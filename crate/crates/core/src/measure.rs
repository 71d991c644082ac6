//! Size, admissibility and the measure of intelligence.
//!
//! For an approximation `x ≃ M(a1, …, an)` of a nonzero real `x`,
//!
//! ```text
//! mu  = (log|x|    - log|x - M(a)|) / log|a1 ⋯ an|
//! mu' = (log|M(a)| - log|x - M(a)|) / log|a1 ⋯ an|
//! ```
//!
//! and the approximation is called intelligent when the measure is at least
//! one. Verdicts are decided with guarded comparisons: a measure whose
//! enclosure straddles one is reported as [`Verdict::Indeterminate`] instead
//! of being rounded to either side.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modeldsl::{evaluate, Model};
use crate::numerics::{compare_guarded, constant, parse_decimal, BigReal, ConstantId, Ordering3};
use crate::records::{ser_bigints, ser_biguint};

/// Extra bits carried through a measure computation before the results are
/// rounded to the requested precision.
const MEASURE_GUARD: usize = 64;

/// The number being approximated.
#[derive(Debug, Clone)]
pub enum Target {
    Constant(ConstantId),
    /// An exact rational, such as a decimal given on the command line.
    Rational { label: String, value: BigRational },
    /// A precomputed enclosure; its precision cannot be raised.
    Real { label: String, value: BigReal },
}

impl Target {
    pub fn id(&self) -> String {
        match self {
            Target::Constant(c) => c.to_string(),
            Target::Rational { label, .. } | Target::Real { label, .. } => label.clone(),
        }
    }

    /// Encloses the target at `precision_bits`.
    pub fn value(&self, precision_bits: usize) -> BigReal {
        match self {
            Target::Constant(c) => constant(*c, precision_bits),
            Target::Rational { value, .. } => BigReal::from_rational(value, precision_bits),
            Target::Real { value, .. } => value.with_precision(precision_bits),
        }
    }

    pub fn real(label: impl Into<String>, value: BigReal) -> Target {
        Target::Real { label: label.into(), value }
    }
}

impl From<ConstantId> for Target {
    fn from(c: ConstantId) -> Self {
        Target::Constant(c)
    }
}

impl FromStr for Target {
    type Err = Error;

    /// A constant id, or failing that a decimal literal.
    fn from_str(s: &str) -> Result<Target> {
        if let Ok(c) = s.parse::<ConstantId>() {
            return Ok(Target::Constant(c));
        }
        match parse_decimal(s) {
            Ok(value) => Ok(Target::Rational { label: s.trim().to_string(), value }),
            Err(_) => Err(Error::UnknownConstant(s.to_string())),
        }
    }
}

/// `target ≃ model(params)`.
#[derive(Debug, Clone)]
pub struct Approximation {
    pub model: Model,
    pub params: Vec<BigInt>,
    pub target: Target,
}

impl Approximation {
    pub fn new(model: Model, params: Vec<BigInt>, target: impl Into<Target>) -> Result<Self> {
        crate::modeldsl::check_params(&model, &params)?;
        Ok(Approximation { model, params, target: target.into() })
    }

    /// `target ≃ p/q` in the rational model.
    pub fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>, target: impl Into<Target>) -> Result<Self> {
        Approximation::new(Model::rational(), vec![p.into(), q.into()], target)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Intelligent,
    Naive,
    Indeterminate,
}

impl Verdict {
    /// Intelligent when `mu` is determinately above one, naive when below.
    pub fn from_mu(mu: &BigReal) -> Verdict {
        Verdict::from_ordering(compare_guarded(mu, &BigReal::one(mu.precision_bits())))
    }

    /// Maps `compare(measure, threshold)` to a verdict.
    pub fn from_ordering(o: Ordering3) -> Verdict {
        match o {
            Ordering3::Greater => Verdict::Intelligent,
            Ordering3::Less => Verdict::Naive,
            Ordering3::Indeterminate => Verdict::Indeterminate,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Intelligent => "Intelligent",
            Verdict::Naive => "Naive",
            Verdict::Indeterminate => "Indeterminate",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which of the two measures a report holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    Mu,
    MuPrime,
}

#[derive(Debug, Clone)]
pub struct MeasureReport {
    pub kind: MeasureKind,
    /// `M(a)`.
    pub value: BigReal,
    /// `|x - M(a)|`.
    pub error: BigReal,
    pub size: BigUint,
    pub log_size: BigReal,
    pub mu: BigReal,
    pub verdict: Verdict,
    pub precision_bits: usize,
}

/// `|a1 ⋯ an|`.
pub fn size(params: &[BigInt]) -> Result<BigUint> {
    check_nonzero(params)?;
    Ok(params.iter().map(|a| a.magnitude()).product())
}

/// `log|a1 ⋯ an|`, never negative.
pub fn log_size(params: &[BigInt], precision_bits: usize) -> Result<BigReal> {
    let s = size(params)?;
    Ok(ln_size(&s, precision_bits))
}

fn ln_size(s: &BigUint, precision_bits: usize) -> BigReal {
    if s.is_one() {
        return BigReal::zero(precision_bits);
    }
    BigReal::from_bigint(&BigInt::from(s.clone()), precision_bits)
        .ln()
        .expect("size >= 2")
}

/// True when some parameter has absolute value at least two.
pub fn is_admissible(params: &[BigInt]) -> bool {
    params.iter().any(|a| a.magnitude() > &BigUint::one())
}

fn check_nonzero(params: &[BigInt]) -> Result<()> {
    match params.iter().position(|a| a.is_zero()) {
        Some(i) => Err(Error::InvalidParameter { index: i + 1 }),
        None => Ok(()),
    }
}

/// Logarithm flavor used for the three logarithms in a measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    Natural,
    Ten,
}

fn log_with(x: &BigReal, base: LogBase) -> Result<BigReal> {
    match base {
        LogBase::Natural => x.log_abs(),
        LogBase::Ten => x.abs().log_base(10),
    }
}

/// Computes `mu` or `mu'` with logarithms in the given base.
pub fn measure_in_base(
    approx: &Approximation,
    kind: MeasureKind,
    precision_bits: usize,
    base: LogBase,
) -> Result<MeasureReport> {
    let p = precision_bits;
    let w = p + MEASURE_GUARD;
    crate::modeldsl::check_params(&approx.model, &approx.params)?;
    if !is_admissible(&approx.params) {
        return Err(Error::Inadmissible);
    }
    let x = approx.target.value(w);
    if x.contains_zero() {
        return Err(Error::ZeroTarget);
    }
    let value = evaluate(&approx.model, &approx.params, w)?;
    let error = x.sub(&value).abs();
    if error.contains_zero() {
        return Err(Error::TargetRepresentable);
    }
    let top = match kind {
        MeasureKind::Mu => &x,
        MeasureKind::MuPrime => {
            if value.contains_zero() {
                return Err(Error::ZeroModelValue);
            }
            &value
        }
    };
    let s = size(&approx.params)?;
    let ls = match base {
        LogBase::Natural => ln_size(&s, w),
        LogBase::Ten => BigReal::from_bigint(&BigInt::from(s.clone()), w).log_base(10)?,
    };
    let mu = log_with(top, base)?.sub(&log_with(&error, base)?).div(&ls)?;
    let mu = mu.with_precision(p);
    Ok(MeasureReport {
        kind,
        verdict: Verdict::from_mu(&mu),
        value: value.with_precision(p),
        error: error.with_precision(p),
        log_size: ln_size(&s, p),
        size: s,
        mu,
        precision_bits: p,
    })
}

/// The measure of intelligence `mu` of an approximation.
pub fn mu(approx: &Approximation, precision_bits: usize) -> Result<MeasureReport> {
    measure_in_base(approx, MeasureKind::Mu, precision_bits, LogBase::Natural)
}

/// The variant `mu'`, measured relative to the model value.
pub fn mu_prime(approx: &Approximation, precision_bits: usize) -> Result<MeasureReport> {
    measure_in_base(approx, MeasureKind::MuPrime, precision_bits, LogBase::Natural)
}

/// Number of precision doublings attempted on an undecided result.
pub const DEFAULT_RETRIES: u32 = 2;

fn worth_retrying(r: &Result<MeasureReport>) -> bool {
    match r {
        Ok(rep) => rep.verdict == Verdict::Indeterminate,
        Err(e) => matches!(e, Error::TargetRepresentable | Error::EvalSingular),
    }
}

/// Computes a measure, doubling the precision up to `retries` times while
/// the verdict stays indeterminate (or the error cannot be separated from
/// zero).
pub fn measure_with_retry(
    approx: &Approximation,
    kind: MeasureKind,
    precision_bits: usize,
    retries: u32,
) -> Result<MeasureReport> {
    let mut p = precision_bits;
    let mut r = measure_in_base(approx, kind, p, LogBase::Natural);
    for _ in 0..retries {
        if !worth_retrying(&r) {
            break;
        }
        p *= 2;
        r = measure_in_base(approx, kind, p, LogBase::Natural);
    }
    r
}

fn check_pq(alpha: &BigReal, p: &BigInt, q: &BigInt) -> Result<()> {
    check_nonzero(&[p.clone(), q.clone()])?;
    if (p * q).abs().is_one() {
        return Err(Error::Inadmissible);
    }
    if alpha.contains_zero() {
        return Err(Error::ZeroTarget);
    }
    Ok(())
}

fn at_most(lhs: &BigReal, rhs: &BigReal) -> Verdict {
    Verdict::from_ordering(compare_guarded(lhs, rhs).reverse())
}

/// Rational-model criterion: `p/q` is an intelligent approximation of
/// `alpha` exactly when `|alpha - p/q| <= |alpha| / |pq|`.
pub fn rational_intelligent(alpha: &BigReal, p: &BigInt, q: &BigInt) -> Result<Verdict> {
    check_pq(alpha, p, q)?;
    let w = alpha.precision_bits();
    let (pr, qr) = (BigReal::from_bigint(p, w), BigReal::from_bigint(q, w));
    // |alpha*q - p| * |p| <= |alpha|, free of divisions.
    let lhs = alpha.mul(&qr).sub(&pr).abs().mul(&pr.abs());
    Ok(at_most(&lhs, &alpha.abs()))
}

/// The same criterion in reciprocal form, `|1/alpha - q/p| <= 1/p^2`.
pub fn reciprocal_criterion(alpha: &BigReal, p: &BigInt, q: &BigInt) -> Result<Verdict> {
    check_pq(alpha, p, q)?;
    let w = alpha.precision_bits();
    let (pr, qr) = (BigReal::from_bigint(p, w), BigReal::from_bigint(q, w));
    let lhs = alpha.recip()?.sub(&qr.div(&pr)?).abs();
    let rhs = pr.mul(&pr).recip()?;
    Ok(at_most(&lhs, &rhs))
}

/// Rational-model criterion for `mu'`: intelligent exactly when
/// `|alpha - p/q| <= 1/q^2`.
pub fn mu_prime_rational_check(alpha: &BigReal, p: &BigInt, q: &BigInt) -> Result<Verdict> {
    check_pq(alpha, p, q)?;
    let w = alpha.precision_bits();
    let (pr, qr) = (BigReal::from_bigint(p, w), BigReal::from_bigint(q, w));
    let lhs = alpha.mul(&qr).sub(&pr).abs().mul(&qr.abs());
    Ok(at_most(&lhs, &BigReal::one(w)))
}

/// Flat serialized form of a [`MeasureReport`].
#[derive(Debug, Clone, Serialize)]
pub struct MeasureRecord {
    pub model: String,
    #[serde(serialize_with = "ser_bigints")]
    pub params: Vec<BigInt>,
    pub target: String,
    pub measure: MeasureKind,
    pub error: String,
    #[serde(serialize_with = "ser_biguint")]
    pub size: BigUint,
    pub mu: String,
    pub verdict: Verdict,
    pub precision_bits: usize,
}

impl MeasureReport {
    /// `error` in scientific notation with three significant digits.
    pub fn error_text(&self) -> String {
        self.error.to_scientific(3)
    }

    /// The measure with six decimals.
    pub fn mu_text(&self) -> String {
        self.mu.to_fixed(6)
    }

    pub fn to_record(&self, approx: &Approximation) -> MeasureRecord {
        MeasureRecord {
            model: approx.model.canonical_text(),
            params: approx.params.clone(),
            target: approx.target.id(),
            measure: self.kind,
            error: self.error_text(),
            size: self.size.clone(),
            mu: self.mu_text(),
            verdict: self.verdict,
            precision_bits: self.precision_bits,
        }
    }
}
