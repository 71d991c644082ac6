//! Arbitrary-precision reals as rigorous enclosures.
//!
//! A [`BigReal`] is a closed interval `[lo, hi]` of binary floats known to
//! contain the real number it stands for. Every operation evaluates its
//! endpoints with 64 guard bits, pads them outward by two guard ulps whenever
//! the guard-precision result was rounded, and then rounds each endpoint
//! outward to the working precision. Exact inputs (integers, dyadic
//! rationals) stay exact points as long as the arithmetic on them is exact.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Smallest supported working precision in bits.
pub const MIN_PRECISION: usize = 64;
/// Working precision used when the caller does not choose one.
pub const DEFAULT_PRECISION: usize = 256;

const GUARD: usize = 64;
const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = Word::BITS as usize;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

pub(crate) fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Result of a guarded comparison between two enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Ordering3 {
    Less,
    Greater,
    Indeterminate,
}

impl Ordering3 {
    pub fn reverse(self) -> Self {
        match self {
            Ordering3::Less => Ordering3::Greater,
            Ordering3::Greater => Ordering3::Less,
            Ordering3::Indeterminate => Ordering3::Indeterminate,
        }
    }
}

#[derive(Clone)]
pub struct BigReal {
    lo: BigFloat,
    hi: BigFloat,
    prec: usize,
}

fn pow2(k: i64) -> BigFloat {
    let mut f = BigFloat::from_word(1, WORD_BITS);
    // astro-float stores 0.1xxx * 2^e, so 2^k has exponent k + 1.
    f.set_exponent((k + 1).clamp(i32::MIN as i64, i32::MAX as i64) as i32);
    f
}

fn fcmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    match a.cmp(b) {
        Some(c) if c < 0 => Ordering::Less,
        Some(c) if c > 0 => Ordering::Greater,
        Some(_) => Ordering::Equal,
        None => panic!("comparison involving NaN"),
    }
}

fn fzero() -> BigFloat {
    BigFloat::from_word(0, WORD_BITS)
}

fn sign_of(x: &BigFloat) -> Ordering {
    fcmp(x, &fzero())
}

fn hull_padded(cands: &[BigFloat], q: usize) -> (BigFloat, BigFloat) {
    let lo = cands.iter().map(|c| pad_down(c.clone(), false, q)).reduce(fmin).expect("nonempty");
    let hi = cands.iter().map(|c| pad_up(c.clone(), false, q)).reduce(fmax).expect("nonempty");
    (lo, hi)
}

fn fmin(a: BigFloat, b: BigFloat) -> BigFloat {
    if fcmp(&a, &b) == Ordering::Greater {
        b
    } else {
        a
    }
}

fn fmax(a: BigFloat, b: BigFloat) -> BigFloat {
    if fcmp(&a, &b) == Ordering::Less {
        b
    } else {
        a
    }
}

fn ulp(x: &BigFloat, p: usize) -> BigFloat {
    match x.exponent() {
        Some(e) if !x.is_zero() => pow2(e as i64 - p as i64),
        _ => BigFloat::min_positive(p),
    }
}

fn check(x: BigFloat) -> BigFloat {
    assert!(!x.is_nan() && !x.is_inf(), "floating-point overflow in interval arithmetic");
    x
}

/// Pads a guard-precision result downward if it was rounded.
fn pad_down(v: BigFloat, force: bool, q: usize) -> BigFloat {
    if !(force || v.inexact()) {
        return v;
    }
    let step = ulp(&v, q).mul(&BigFloat::from_word(2, WORD_BITS), q, RM);
    v.sub(&step, q, RM)
}

fn pad_up(v: BigFloat, force: bool, q: usize) -> BigFloat {
    if !(force || v.inexact()) {
        return v;
    }
    let step = ulp(&v, q).mul(&BigFloat::from_word(2, WORD_BITS), q, RM);
    v.add(&step, q, RM)
}

/// Largest p-bit float not above `v` (`v` is treated as exact).
fn round_down(v: &BigFloat, p: usize) -> BigFloat {
    let mut n = v.clone();
    n.set_precision(p, RM).expect("set precision");
    if fcmp(&n, v) == Ordering::Greater {
        n = n.sub(&ulp(&n, p), p, RM);
    }
    n
}

fn round_up(v: &BigFloat, p: usize) -> BigFloat {
    let mut n = v.clone();
    n.set_precision(p, RM).expect("set precision");
    if fcmp(&n, v) == Ordering::Less {
        n = n.add(&ulp(&n, p), p, RM);
    }
    n
}

fn word_prec(p: usize) -> usize {
    p.max(MIN_PRECISION).div_ceil(WORD_BITS) * WORD_BITS
}

fn biguint_to_float(n: &BigUint, sign: Sign) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, WORD_BITS);
    }
    let words: Vec<Word> = n.iter_u64_digits().collect();
    let e = (words.len() * WORD_BITS) as i32;
    check(BigFloat::from_words(&words, sign, e))
}

fn float_to_rational(x: &BigFloat) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let (words, _, sign, e, _) = x.as_raw_parts().expect("finite float");
    let mant = BigUint::from_slice(
        &words
            .iter()
            .flat_map(|w| [(*w & 0xffff_ffff) as u32, (*w >> 32) as u32])
            .collect::<Vec<_>>(),
    );
    let shift = e as i64 - (words.len() * WORD_BITS) as i64;
    let mant = BigInt::from_biguint(
        if sign == Sign::Neg {
            IntSign::Minus
        } else {
            IntSign::Plus
        },
        mant,
    );
    if shift >= 0 {
        BigRational::from_integer(mant << shift as usize)
    } else {
        BigRational::new(mant, BigInt::one() << (-shift) as usize)
    }
}

impl BigReal {
    fn from_parts(lo: BigFloat, hi: BigFloat, prec: usize) -> Self {
        debug_assert!(fcmp(&lo, &hi) != Ordering::Greater);
        BigReal {
            lo: check(lo),
            hi: check(hi),
            prec,
        }
    }

    /// Encloses a guard-precision interval `[lo, hi]` at working precision `p`.
    fn settle(lo: BigFloat, hi: BigFloat, force: bool, p: usize) -> Self {
        let q = word_prec(p) + GUARD;
        let lo = round_down(&pad_down(check(lo), force, q), word_prec(p));
        let hi = round_up(&pad_up(check(hi), force, q), word_prec(p));
        BigReal::from_parts(lo, hi, p)
    }

    fn gp(&self) -> usize {
        word_prec(self.prec) + GUARD
    }

    pub fn from_i64(v: i64, precision_bits: usize) -> Self {
        BigReal::from_bigint(&BigInt::from(v), precision_bits)
    }

    pub fn from_bigint(v: &BigInt, precision_bits: usize) -> Self {
        let p = precision_bits.max(MIN_PRECISION);
        let sign = if v.is_negative() { Sign::Neg } else { Sign::Pos };
        let exact = biguint_to_float(v.magnitude(), sign);
        BigReal::settle(exact.clone(), exact, false, p)
    }

    pub fn from_rational(r: &BigRational, precision_bits: usize) -> Self {
        let p = precision_bits.max(MIN_PRECISION);
        let n = BigReal::from_bigint(r.numer(), p + GUARD);
        let d = BigReal::from_bigint(r.denom(), p + GUARD);
        n.div(&d).expect("nonzero denominator").with_precision(p)
    }

    /// Enclosure of a binary64 value (exact).
    pub fn from_f64(v: f64, precision_bits: usize) -> Self {
        let p = precision_bits.max(MIN_PRECISION);
        let f = BigFloat::from_f64(v, word_prec(p));
        BigReal::from_parts(f.clone(), f, p)
    }

    pub fn zero(precision_bits: usize) -> Self {
        BigReal::from_i64(0, precision_bits)
    }

    pub fn one(precision_bits: usize) -> Self {
        BigReal::from_i64(1, precision_bits)
    }

    pub fn precision_bits(&self) -> usize {
        self.prec
    }

    pub fn lower(&self) -> &BigFloat {
        &self.lo
    }

    pub fn upper(&self) -> &BigFloat {
        &self.hi
    }

    /// Midpoint of the enclosure, the best single estimate of the value.
    pub fn value(&self) -> BigFloat {
        let q = self.gp();
        self.lo
            .add(&self.hi, q, RM)
            .div(&BigFloat::from_word(2, WORD_BITS), word_prec(self.prec), RM)
    }

    /// The midpoint as an exact point enclosure (at a finer precision so
    /// that no rounding is needed).
    pub fn midpoint(&self) -> BigReal {
        let q = self.gp();
        let m = self
            .lo
            .add(&self.hi, q, RM)
            .div(&BigFloat::from_word(2, WORD_BITS), q, RM);
        BigReal::from_parts(m.clone(), m, q)
    }

    /// Width `hi - lo` of the enclosure.
    pub fn width(&self) -> BigFloat {
        self.hi.sub(&self.lo, self.gp(), RoundingMode::Up)
    }

    pub fn is_exact(&self) -> bool {
        fcmp(&self.lo, &self.hi) == Ordering::Equal
    }

    pub fn contains_zero(&self) -> bool {
        sign_of(&self.lo) != Ordering::Greater && sign_of(&self.hi) != Ordering::Less
    }

    pub fn is_positive(&self) -> bool {
        sign_of(&self.lo) == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        sign_of(&self.hi) == Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        let v = self.value();
        let r = float_to_rational(&v);
        rational_to_f64(&r)
    }

    /// Exact rational endpoints of the enclosure.
    pub fn endpoints(&self) -> (BigRational, BigRational) {
        (float_to_rational(&self.lo), float_to_rational(&self.hi))
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        let (lo, hi) = self.endpoints();
        &lo <= r && r <= &hi
    }

    /// Re-encloses the value at another working precision.
    pub fn with_precision(&self, precision_bits: usize) -> Self {
        let p = precision_bits.max(MIN_PRECISION);
        let lo = round_down(&self.lo, word_prec(p));
        let hi = round_up(&self.hi, word_prec(p));
        BigReal::from_parts(lo, hi, p)
    }

    fn binary_prec(&self, other: &BigReal) -> usize {
        self.prec.min(other.prec)
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        let p = self.binary_prec(other);
        let q = word_prec(p) + GUARD;
        let lo = self.lo.add(&other.lo, q, RM);
        let hi = self.hi.add(&other.hi, q, RM);
        BigReal::settle(lo, hi, false, p)
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        let p = self.binary_prec(other);
        let q = word_prec(p) + GUARD;
        let lo = self.lo.sub(&other.hi, q, RM);
        let hi = self.hi.sub(&other.lo, q, RM);
        BigReal::settle(lo, hi, false, p)
    }

    pub fn neg(&self) -> BigReal {
        BigReal::from_parts(self.hi.neg(), self.lo.neg(), self.prec)
    }

    pub fn abs(&self) -> BigReal {
        if sign_of(&self.lo) != Ordering::Less {
            self.clone()
        } else if sign_of(&self.hi) != Ordering::Greater {
            self.neg()
        } else {
            let m = fmax(self.lo.neg(), self.hi.clone());
            BigReal::from_parts(fzero(), m, self.prec)
        }
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        let p = self.binary_prec(other);
        let q = word_prec(p) + GUARD;
        let cands = [
            self.lo.mul(&other.lo, q, RM),
            self.lo.mul(&other.hi, q, RM),
            self.hi.mul(&other.lo, q, RM),
            self.hi.mul(&other.hi, q, RM),
        ];
        let (lo, hi) = hull_padded(&cands, q);
        BigReal::settle(lo, hi, false, p)
    }

    pub fn mul_int(&self, k: i64) -> BigReal {
        self.mul(&BigReal::from_i64(k, self.prec))
    }

    pub fn div(&self, other: &BigReal) -> Result<BigReal> {
        if other.contains_zero() {
            return Err(Error::EvalSingular);
        }
        let p = self.binary_prec(other);
        let q = word_prec(p) + GUARD;
        let cands = [
            self.lo.div(&other.lo, q, RM),
            self.lo.div(&other.hi, q, RM),
            self.hi.div(&other.lo, q, RM),
            self.hi.div(&other.hi, q, RM),
        ];
        let (lo, hi) = hull_padded(&cands, q);
        Ok(BigReal::settle(lo, hi, false, p))
    }

    pub fn recip(&self) -> Result<BigReal> {
        BigReal::one(self.prec).div(self)
    }

    /// Square root. A lower endpoint slightly below zero is clamped to zero
    /// (the root then covers the part of the enclosure where it is defined);
    /// an enclosure lying entirely below zero is a domain error.
    pub fn sqrt(&self) -> Result<BigReal> {
        if self.is_negative() {
            return Err(Error::DomainError);
        }
        let q = self.gp();
        let lo = if sign_of(&self.lo) == Ordering::Greater {
            pad_down(self.lo.sqrt(q, RM), true, q)
        } else {
            fzero()
        };
        let hi = if sign_of(&self.hi) == Ordering::Greater {
            pad_up(self.hi.sqrt(q, RM), true, q)
        } else {
            fzero()
        };
        Ok(BigReal::settle(lo, hi, false, self.prec))
    }

    /// Real `k`-th root (`k >= 1`); odd orders accept negative arguments.
    /// Like [`BigReal::sqrt`], even orders clamp a slightly negative lower
    /// endpoint to zero.
    pub fn root(&self, k: u32) -> Result<BigReal> {
        match k {
            0 => Err(Error::InvalidArgument("root of order 0".into())),
            1 => Ok(self.clone()),
            2 => self.sqrt(),
            _ => {
                let odd = k % 2 == 1;
                if self.is_negative() && !odd {
                    return Err(Error::DomainError);
                }
                let lo = match sign_of(&self.lo) {
                    Ordering::Greater => self.root_point(&self.lo, k)?.lo,
                    Ordering::Less if odd => self.root_point(&self.lo.neg(), k)?.hi.neg(),
                    _ => fzero(),
                };
                let hi = match sign_of(&self.hi) {
                    Ordering::Greater => self.root_point(&self.hi, k)?.hi,
                    Ordering::Less => self.root_point(&self.hi.neg(), k)?.lo.neg(),
                    Ordering::Equal => fzero(),
                };
                Ok(BigReal::from_parts(lo, hi, self.prec))
            }
        }
    }

    /// Enclosure of `v^(1/k)` for a positive float `v`.
    fn root_point(&self, v: &BigFloat, k: u32) -> Result<BigReal> {
        let q = self.prec + GUARD;
        let x = BigReal::from_parts(v.clone(), v.clone(), q);
        let r = x.ln()?.div(&BigReal::from_i64(k as i64, q))?.exp();
        Ok(r.with_precision(self.prec))
    }

    /// Natural logarithm of a positive enclosure.
    pub fn ln(&self) -> Result<BigReal> {
        if !self.is_positive() {
            return Err(Error::LogOfZero);
        }
        let q = self.gp();
        let (lo, hi) = with_consts(|cc| (self.lo.ln(q, RM, cc), self.hi.ln(q, RM, cc)));
        Ok(BigReal::settle(lo, hi, true, self.prec))
    }

    /// Natural logarithm of `|self|`.
    pub fn log_abs(&self) -> Result<BigReal> {
        if self.contains_zero() {
            return Err(Error::LogOfZero);
        }
        self.abs().ln()
    }

    /// Logarithm to an integer base, computed through astro-float's own
    /// base-`b` logarithm rather than as a quotient of natural logs.
    pub fn log_base(&self, base: u64) -> Result<BigReal> {
        if !self.is_positive() {
            return Err(Error::LogOfZero);
        }
        let q = self.gp();
        let b = BigFloat::from_word(base, WORD_BITS);
        let (lo, hi) = with_consts(|cc| {
            if base == 10 {
                (self.lo.log10(q, RM, cc), self.hi.log10(q, RM, cc))
            } else {
                (self.lo.log(&b, q, RM, cc), self.hi.log(&b, q, RM, cc))
            }
        });
        Ok(BigReal::settle(lo, hi, true, self.prec))
    }

    pub fn exp(&self) -> BigReal {
        let q = self.gp();
        let (lo, hi) = with_consts(|cc| (self.lo.exp(q, RM, cc), self.hi.exp(q, RM, cc)));
        BigReal::settle(lo, hi, true, self.prec)
    }

    pub fn pi(precision_bits: usize) -> BigReal {
        let p = precision_bits.max(MIN_PRECISION);
        let q = word_prec(p) + GUARD;
        let v = with_consts(|cc| cc.pi(q, RM));
        BigReal::settle(v.clone(), v, true, p)
    }

    pub fn e(precision_bits: usize) -> BigReal {
        let p = precision_bits.max(MIN_PRECISION);
        let q = word_prec(p) + GUARD;
        let v = with_consts(|cc| cc.e(q, RM));
        BigReal::settle(v.clone(), v, true, p)
    }

    pub fn ln2(precision_bits: usize) -> BigReal {
        let p = precision_bits.max(MIN_PRECISION);
        let q = word_prec(p) + GUARD;
        let v = with_consts(|cc| cc.ln_2(q, RM));
        BigReal::settle(v.clone(), v, true, p)
    }

    pub fn ln10(precision_bits: usize) -> BigReal {
        let p = precision_bits.max(MIN_PRECISION);
        let q = word_prec(p) + GUARD;
        let v = with_consts(|cc| cc.ln_10(q, RM));
        BigReal::settle(v.clone(), v, true, p)
    }

    /// Widens the enclosure by `radius` on both sides.
    pub fn inflate(&self, radius: &BigReal) -> BigReal {
        let r = radius.abs();
        let q = self.gp();
        let lo = self.lo.sub(&r.hi, q, RM);
        let hi = self.hi.add(&r.hi, q, RM);
        BigReal::settle(lo, hi, false, self.prec)
    }

    /// Hull of two enclosures.
    pub fn hull(&self, other: &BigReal) -> BigReal {
        BigReal::from_parts(
            fmin(self.lo.clone(), other.lo.clone()),
            fmax(self.hi.clone(), other.hi.clone()),
            self.binary_prec(other),
        )
    }

    /// Integer `floor` of every point of the enclosure, if they all agree.
    pub fn floor_exact(&self) -> Option<BigInt> {
        let (lo, hi) = self.endpoints();
        let a = lo.floor().to_integer();
        let b = hi.floor().to_integer();
        (a == b).then_some(a)
    }

    /// Rounds the midpoint to a decimal with `decimals` fractional digits.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let (lo, hi) = self.endpoints();
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        format_fixed(&mid, decimals)
    }

    /// Scientific notation of the midpoint with `sig` significant digits.
    pub fn to_scientific(&self, sig: usize) -> String {
        format_scientific(self, sig.max(1))
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if r.is_zero() {
        return 0.0;
    }
    // Scale to keep 64 significant bits before converting.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = 64 - (nb - db);
    let scaled = if shift >= 0 {
        (r.numer() << shift as usize) / r.denom()
    } else {
        r.numer() / (r.denom() << (-shift) as usize)
    };
    let m = scaled.to_f64().unwrap_or(f64::NAN);
    m * 2f64.powi(-(shift.clamp(-2000, 2000) as i32))
}

pub(crate) fn format_fixed(r: &BigRational, decimals: usize) -> String {
    let scale = BigInt::from(10u32).pow(decimals as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    // round half away from zero
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = if scaled.is_negative() {
        -((-scaled) + half).floor().to_integer()
    } else {
        (scaled + half).floor().to_integer()
    };
    let neg = rounded.is_negative();
    let digits = rounded.magnitude().to_string();
    let digits = if digits.len() <= decimals {
        format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - decimals);
    let sign = if neg { "-" } else { "" };
    if decimals == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn format_scientific(x: &BigReal, sig: usize) -> String {
    let mid = x.value();
    if mid.is_zero() {
        return format!("{}e0", format_fixed(&BigRational::zero(), sig - 1));
    }
    let neg = mid.is_negative();
    let p = x.precision_bits() + GUARD;
    let m = BigReal::from_parts(mid.abs(), mid.abs(), p);
    // log10 through natural logs keeps huge exponents cheap.
    let t = m.ln().expect("nonzero").div(&BigReal::ln10(p)).expect("ln 10 > 0");
    let mut e10 = t.floor_exact().unwrap_or_else(|| {
        let (a, _) = t.endpoints();
        a.floor().to_integer()
    });
    let mant = |e: &BigInt| -> BigRational {
        let frac = t.sub(&BigReal::from_bigint(e, p));
        let v = frac.mul(&BigReal::ln10(p)).exp();
        let (a, b) = v.endpoints();
        (a + b) / BigRational::from_integer(BigInt::from(2))
    };
    let mut m10 = mant(&e10);
    let ten = BigRational::from_integer(BigInt::from(10));
    if m10 >= ten {
        e10 += 1;
        m10 = mant(&e10);
    }
    let mut s = format_fixed(&m10, sig - 1);
    if s.starts_with("10") {
        e10 += 1;
        s = format_fixed(&(m10 / ten), sig - 1);
    }
    format!("{}{}e{}", if neg { "-" } else { "" }, s, e10)
}

/// Guarded three-way comparison: a strict order is reported only when the
/// two enclosures are disjoint.
pub fn compare_guarded(x: &BigReal, y: &BigReal) -> Ordering3 {
    if fcmp(&x.hi, &y.lo) == Ordering::Less {
        Ordering3::Less
    } else if fcmp(&x.lo, &y.hi) == Ordering::Greater {
        Ordering3::Greater
    } else {
        Ordering3::Indeterminate
    }
}

/// Natural logarithm of `|x|`.
pub fn log_abs(x: &BigReal) -> Result<BigReal> {
    x.log_abs()
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigReal[{} ± {:e} @{}b]", self.to_fixed(30), self.width_f64() / 2.0, self.prec)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_fixed(digits))
    }
}

impl BigReal {
    pub(crate) fn width_f64(&self) -> f64 {
        let (a, b) = self.endpoints();
        rational_to_f64(&(b - a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_are_exact_points() {
        let x = BigReal::from_i64(-154, 256);
        assert!(x.is_exact());
        assert_eq!(x.endpoints().0, BigRational::from_integer((-154).into()));
        let big: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let y = BigReal::from_bigint(&big, 256);
        assert!(y.is_exact());
        assert!(y.contains_rational(&BigRational::from_integer(big)));
    }

    #[test]
    fn rounding_keeps_the_value_inside() {
        let third = BigRational::new(1.into(), 3.into());
        let x = BigReal::from_rational(&third, 64);
        assert!(!x.is_exact());
        assert!(x.contains_rational(&third));
        let back = x.mul_int(3);
        assert!(back.contains_rational(&BigRational::one()));
    }

    #[test]
    fn compare_examples() {
        let one = BigReal::from_f64(1.0, 128);
        let two = BigReal::from_f64(2.0, 128);
        assert_eq!(compare_guarded(&one, &two), Ordering3::Less);
        assert_eq!(compare_guarded(&two, &one), Ordering3::Greater);
        assert_eq!(compare_guarded(&one, &one), Ordering3::Indeterminate);
        let pi = BigReal::pi(128);
        assert_eq!(compare_guarded(&pi, &pi), Ordering3::Indeterminate);
    }

    #[test]
    fn log_examples() {
        let one = BigReal::one(128);
        let l = log_abs(&one).unwrap();
        assert!(l.contains_rational(&BigRational::zero()));
        let e = BigReal::e(128);
        let le = log_abs(&e).unwrap();
        let diff = le.sub(&one).abs();
        assert_eq!(compare_guarded(&diff, &BigReal::from_f64(2f64.powi(-100), 128)), Ordering3::Less);
        let l154 = log_abs(&BigReal::from_i64(-154, 128)).unwrap();
        assert!((l154.to_f64() - 154f64.ln()).abs() < 1e-15);
        assert_eq!(log_abs(&BigReal::zero(128)).unwrap_err(), Error::LogOfZero);
    }

    #[test]
    fn sqrt_and_roots() {
        let two = BigReal::from_i64(2, 256);
        let s = two.sqrt().unwrap();
        assert!(s.mul(&s).contains_rational(&BigRational::from_integer(2.into())));
        let c = BigReal::from_i64(-27, 256).root(3).unwrap();
        assert!(c.contains_rational(&BigRational::from_integer((-3).into())));
        let r4 = BigReal::from_i64(16, 256).root(4).unwrap();
        assert!(r4.contains_rational(&BigRational::from_integer(2.into())));
        assert_eq!(BigReal::from_i64(-4, 256).sqrt().unwrap_err(), Error::DomainError);
        assert_eq!(BigReal::from_i64(-4, 256).root(6).unwrap_err(), Error::DomainError);
    }

    #[test]
    fn division_by_zero_enclosure_is_singular() {
        let x = BigReal::one(128);
        let z = BigReal::pi(128).sub(&BigReal::pi(128));
        assert_eq!(x.div(&z).unwrap_err(), Error::EvalSingular);
    }

    #[test]
    fn width_is_a_few_ulps() {
        let pi = BigReal::pi(256);
        let w = pi.width_f64();
        assert!(w > 0.0 && w < 2f64.powi(-250), "width {w:e}");
        let l = pi.ln().unwrap();
        assert!(l.width_f64() < 2f64.powi(-250));
    }

    #[test]
    fn scientific_and_fixed_formatting() {
        let x = BigReal::from_rational(&BigRational::new(12345.into(), 10_000_000.into()), 128);
        assert_eq!(x.to_scientific(3), "1.23e-3");
        let y = BigReal::from_rational(&BigRational::new(9999.into(), 1000.into()), 128);
        assert_eq!(y.to_scientific(3), "1.00e1");
        assert_eq!(y.to_fixed(2), "10.00");
        let n = BigReal::from_rational(&BigRational::new((-15).into(), 10.into()), 128);
        assert_eq!(n.to_fixed(0), "-2");
        assert_eq!(BigReal::pi(256).to_fixed(6), "3.141593");
    }

    #[test]
    fn to_f64_roundtrip() {
        assert_eq!(BigReal::from_f64(0.1, 128).to_f64(), 0.1);
        assert!((BigReal::pi(256).to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }
}
