//! Structured families of rational approximations: Lucas/Fibonacci quotients
//! for √5, the two-family pattern for √2, and truncations of Liouville's
//! constant `Σ 10^(-j!)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::contfrac::{eval_finite_cf, is_convergent_of, FiniteCF};
use crate::error::{Error, Result};
use crate::measure::{mu, Approximation, MeasureRecord, MeasureReport, Target, Verdict};
use crate::numerics::{constant, BigReal, ConstantId, DEFAULT_PRECISION};

/// F(n), with F(0) = 0 and F(1) = 1.
pub fn fibonacci(n: u32) -> BigInt {
    pair(n, BigInt::zero(), BigInt::one())
}

/// L(n), with L(0) = 2 and L(1) = 1.
pub fn lucas(n: u32) -> BigInt {
    pair(n, BigInt::from(2), BigInt::one())
}

fn pair(n: u32, mut a: BigInt, mut b: BigInt) -> BigInt {
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Sqrt5,
    Sqrt2,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Sqrt5 => "sqrt5",
            Family::Sqrt2 => "sqrt2",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub family: Family,
    pub index: u32,
    /// The measured fraction, as a (numerator, denominator) pair.
    pub p: BigInt,
    pub q: BigInt,
    /// Whether the pair was obtained by cancelling a common factor of the
    /// family's natural form.
    pub reduced: bool,
    /// `gcd` of the family's natural numerator and denominator.
    pub gcd: BigInt,
    pub is_convergent: bool,
    /// Continued-fraction form tied to this member, if the family has one.
    pub cf: Option<FiniteCF>,
    /// Whether the continued-fraction identity for this member holds.
    pub identity_holds: bool,
    pub approx: Approximation,
    pub report: MeasureReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyRecord {
    pub family: Family,
    pub index: u32,
    pub fraction: String,
    pub reduced: bool,
    pub gcd: String,
    pub is_convergent: bool,
    pub cf: Option<String>,
    pub identity_holds: bool,
    #[serde(flatten)]
    pub measure: MeasureRecord,
}

impl FamilyReport {
    pub fn verdict(&self) -> Verdict {
        self.report.verdict
    }

    pub fn fraction(&self) -> String {
        format!("{}/{}", self.p, self.q)
    }

    pub fn to_record(&self) -> FamilyRecord {
        FamilyRecord {
            family: self.family,
            index: self.index,
            fraction: self.fraction(),
            reduced: self.reduced,
            gcd: self.gcd.to_string(),
            is_convergent: self.is_convergent,
            cf: self.cf.as_ref().map(|c| c.to_string()),
            identity_holds: self.identity_holds,
            measure: self.report.to_record(&self.approx),
        }
    }
}

fn cf_of(head: i64, repeated: i64, times: usize, last: i64) -> FiniteCF {
    let mut t = vec![head];
    t.extend(std::iter::repeat_n(repeated, times));
    t.push(last);
    FiniteCF::from_i64(&t).expect("positive terms")
}

fn member(
    family: Family,
    index: u32,
    (p, q, natural_gcd): (BigInt, BigInt, BigInt),
    x: &BigReal,
    cf: Option<FiniteCF>,
    identity_holds: bool,
) -> Result<FamilyReport> {
    let target = match family {
        Family::Sqrt5 => ConstantId::Sqrt5,
        Family::Sqrt2 => ConstantId::Sqrt2,
    };
    let approx = Approximation::rational(p.clone(), q.clone(), target)?;
    let report = mu(&approx, x.precision_bits())?;
    let is_convergent = is_convergent_of(&BigRational::new(p.clone(), q.clone()), x)?;
    Ok(FamilyReport {
        family,
        index,
        reduced: !natural_gcd.is_one(),
        gcd: natural_gcd,
        p,
        q,
        is_convergent,
        cf,
        identity_holds,
        approx,
        report,
    })
}

/// Working precision that keeps enough certain expansion terms for members
/// up to `n_max`.
fn family_precision(n_max: u32) -> usize {
    DEFAULT_PRECISION.max(3 * n_max as usize + 128)
}

/// `L(n)/F(n)` for `2 <= n <= n_max`.
///
/// When `3 ∤ n` the fraction is already in lowest terms and measured as is;
/// when `3 | n` both terms are even and the measure is taken on
/// `(L(n)/2)/(F(n)/2)`. Members with `n = 3m + 4` and `n = 3m + 5` carry the
/// identities `[2; 4 (m times), 3] = L(n)/F(n)` and
/// `[2; 4 (m times), 5] = L(n)/F(n)`.
pub fn sqrt5_family(n_max: u32) -> Result<Vec<FamilyReport>> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("n_max must be at least 2".into()));
    }
    let x = constant(ConstantId::Sqrt5, family_precision(n_max));
    let mut out = Vec::new();
    for n in 2..=n_max {
        let (l, f) = (lucas(n), fibonacci(n));
        let g = l.gcd(&f);
        let (p, q) = (&l / &g, &f / &g);
        let value = BigRational::new(l.clone(), f.clone());
        let cf = match n % 3 {
            1 if n >= 4 => Some(cf_of(2, 4, ((n - 4) / 3) as usize, 3)),
            2 if n >= 5 => Some(cf_of(2, 4, ((n - 5) / 3) as usize, 5)),
            _ => None,
        };
        let holds = cf.as_ref().is_none_or(|c| eval_finite_cf(c) == value);
        out.push(member(Family::Sqrt5, n, (p, q, g), &x, cf, holds)?);
    }
    Ok(out)
}

/// `[1; 2 (n times), 1]` for `0 <= n <= n_max`, checked against the identity
/// `[1; 2 (n times), 1] = 2 / [1; 2 (n times)]`.
pub fn sqrt2_family(n_max: u32) -> Result<Vec<FamilyReport>> {
    let x = constant(ConstantId::Sqrt2, family_precision(n_max));
    let mut out = Vec::new();
    for n in 0..=n_max {
        let cf = cf_of(1, 2, n as usize, 1);
        let value = eval_finite_cf(&cf);
        let mut inner = vec![1i64];
        inner.extend(std::iter::repeat_n(2, n as usize));
        let inner = eval_finite_cf(&FiniteCF::from_i64(&inner).expect("positive terms"));
        let holds = value == BigRational::from_integer(BigInt::from(2)) / inner;
        let (p, q) = (value.numer().clone(), value.denom().clone());
        out.push(member(Family::Sqrt2, n, (p, q, BigInt::one()), &x, Some(cf), holds)?);
    }
    Ok(out)
}

/// Largest truncation index accepted by the Liouville routines.
pub const LIOUVILLE_MAX_K: u32 = 12;

fn factorial(k: u32) -> u64 {
    (1..=k as u64).product()
}

fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if k > LIOUVILLE_MAX_K {
        return Err(Error::BudgetExceeded(format!(
            "k = {k} exceeds the cap of {LIOUVILLE_MAX_K}"
        )));
    }
    Ok(())
}

/// `Σ_{j=1..k} 10^(-j!)` as an exact fraction over `10^(k!)`.
///
/// The denominator has `k! + 1` digits, so indices above 10 are costly in
/// both time and memory.
pub fn liouville_truncation(k: u32) -> Result<BigRational> {
    check_k(k)?;
    let top = factorial(k);
    let ten = BigInt::from(10);
    let mut num = BigInt::zero();
    for j in 1..=k {
        num += ten.pow((top - factorial(j)) as u32);
    }
    Ok(BigRational::new(num, ten.pow(top as u32)))
}

/// `Σ_{j ∈ js} 10^(-m_j)` enclosed at precision `w`, for increasing
/// exponents `m_j`; terms too small to matter are bounded as a tail.
fn sum_pow10(exponents: &[u64], w: usize) -> BigReal {
    let limit = (w as f64 + 64.0) / std::f64::consts::LOG2_10;
    let mut s = BigReal::zero(w);
    for (i, &m) in exponents.iter().enumerate() {
        if m as f64 > limit {
            // Exponents grow at least linearly, so the tail sums to at most
            // twice its first term.
            let tail_len = exponents.len() - i;
            let bound = BigReal::from_f64(2f64.powi(-(w as i32) - 60) * tail_len as f64, w);
            let tail = BigReal::zero(w).inflate(&bound);
            return s.add(&tail).hull(&s);
        }
        let t = BigRational::new(BigInt::one(), BigInt::from(10).pow(m as u32));
        s = s.add(&BigReal::from_rational(&t, w));
    }
    s
}

/// One row of [`liouville_mu_series`].
#[derive(Debug, Clone)]
pub struct LiouvilleRow {
    pub k: u32,
    /// The truncation's denominator is `10^denominator_exponent`.
    pub denominator_exponent: u64,
    pub mu: BigReal,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct LiouvilleRecord {
    pub k: u32,
    pub denominator_exponent: u64,
    pub mu: String,
    pub verdict: Verdict,
}

impl LiouvilleRow {
    pub fn to_record(&self) -> LiouvilleRecord {
        LiouvilleRecord {
            k: self.k,
            denominator_exponent: self.denominator_exponent,
            mu: self.mu.to_fixed(6),
            verdict: self.verdict,
        }
    }
}

/// `mu` of the k-th truncation `p/q` for `1 <= k <= k_max`, measured
/// against the `(k_max + 2)`-th truncation in place of the limit.
///
/// Everything is done in logarithms, so no power of ten is materialized:
/// with `q = 10^(k!)` and `p` prime to 10, `log(pq) = log L_k + 2·k!·log 10`,
/// and the error is `10^(-(k+1)!) · (1 + δ)` with `δ` enclosed from its
/// first terms.
pub fn liouville_mu_series(k_max: u32) -> Result<Vec<LiouvilleRow>> {
    liouville_mu_series_at(k_max, DEFAULT_PRECISION)
}

pub fn liouville_mu_series_at(k_max: u32, precision_bits: usize) -> Result<Vec<LiouvilleRow>> {
    check_k(k_max)?;
    let w = precision_bits + 64;
    let big_k = k_max + 2;
    let facts: Vec<u64> = (0..=big_k).map(factorial).collect();
    let ln10 = BigReal::ln10(w);
    let exps = |upto: u32| -> Vec<u64> { (1..=upto).map(|j| facts[j as usize]).collect() };
    let ln_ref = sum_pow10(&exps(big_k), w).ln()?;
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let fk = facts[k as usize];
        let fk1 = facts[k as usize + 1];
        let ln_lk = sum_pow10(&exps(k), w).ln()?;
        let ln_size = ln_lk.add(&ln10.mul(&BigReal::from_bigint(&BigInt::from(2 * fk), w)));
        let deltas: Vec<u64> = ((k + 2)..=big_k).map(|j| facts[j as usize] - fk1).collect();
        let ln_err = ln10
            .mul(&BigReal::from_bigint(&BigInt::from(fk1), w))
            .neg()
            .add(&BigReal::one(w).add(&sum_pow10(&deltas, w)).ln()?);
        let m = ln_ref.sub(&ln_err).div(&ln_size)?.with_precision(precision_bits);
        rows.push(LiouvilleRow {
            k,
            denominator_exponent: fk,
            verdict: Verdict::from_mu(&m),
            mu: m,
        });
    }
    Ok(rows)
}

/// The truncation as a measurement target, for cross-checks on small k.
pub fn liouville_target(k: u32) -> Result<Target> {
    Ok(Target::Rational { label: format!("liouville_{k}"), value: liouville_truncation(k)? })
}
