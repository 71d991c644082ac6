use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::contfrac::reliable_terms;
use crate::error::{Error, Result};
use crate::measure::{rational_intelligent, Verdict};
use crate::numerics::{compare_guarded, BigReal, Ordering3};

/// Integers `p` with `p - 1 <= x·q <= p + 1` for some point of `x`.
fn near_multiples(x: &BigReal, q: &BigInt) -> Vec<BigInt> {
    let (lo, hi) = x.endpoints();
    let q = BigRational::from_integer(q.clone());
    let a: BigInt = (lo * &q).floor().to_integer() - 1;
    let b: BigInt = (hi * &q).floor().to_integer() + 2;
    let mut out = Vec::new();
    let mut p = a;
    while p <= b {
        out.push(p.clone());
        p += 1;
    }
    out
}

/// `|x - p/q|` as an enclosure.
fn distance(x: &BigReal, p: &BigInt, q: &BigInt) -> BigReal {
    let w = x.precision_bits();
    let qr = BigReal::from_bigint(q, w);
    x.mul(&qr).sub(&BigReal::from_bigint(p, w)).abs().div(&qr).expect("q > 0")
}

/// The fraction `p/q` with `1 <= q <= max_q` closest to `x`, found by brute
/// force; ties go to the smaller denominator.
pub fn best_rational(x: &BigReal, max_q: u64) -> Result<BigRational> {
    if max_q == 0 {
        return Err(Error::InvalidArgument("max_q must be at least 1".into()));
    }
    let mut best: Option<(BigReal, BigInt, BigInt)> = None;
    for q in 1..=max_q {
        let q = BigInt::from(q);
        for p in near_multiples(x, &q) {
            let d = distance(x, &p, &q);
            let better = match &best {
                None => true,
                Some((bd, _, _)) => compare_guarded(&d, bd) == Ordering3::Less,
            };
            if better {
                best = Some((d, p, q.clone()));
            }
        }
    }
    let (_, p, q) = best.expect("max_q >= 1");
    Ok(BigRational::new(p, q))
}

/// An intelligent rational approximation found by
/// [`scan_rational_intelligent`].
#[derive(Debug, Clone)]
pub struct ScanHit {
    pub p: BigInt,
    pub q: BigInt,
    pub mu: BigReal,
    /// `p/q` is in lowest terms and a convergent of `x`.
    pub is_convergent: bool,
    /// `gcd(p, q) > 1`.
    pub reducible: bool,
    /// The fraction is reducible and its reduced form is a convergent.
    pub reduces_to_convergent: bool,
}

/// Every determinately intelligent `p/q` for `x` with `1 <= q <= max_q`.
///
/// For `q >= 2` an intelligent `p/q` satisfies `|x·q - p| <= 2/q`, so only
/// the integers next to `x·q` are tested; `q = 1` is scanned over all `p`
/// between 0 and `2x`. Reducible pairs are kept only when
/// `include_reducible` is set.
pub fn scan_rational_intelligent(x: &BigReal, max_q: u64, include_reducible: bool) -> Result<Vec<ScanHit>> {
    if max_q == 0 {
        return Err(Error::InvalidArgument("max_q must be at least 1".into()));
    }
    if x.contains_zero() {
        return Err(Error::ZeroTarget);
    }
    let convergents = convergent_table(x, max_q)?;
    let w = x.precision_bits();
    let ln_x = x.log_abs()?;
    let mut hits = Vec::new();
    for q in 1..=max_q {
        let q = BigInt::from(q);
        let candidates = if q.is_one() { integer_window(x) } else { near_multiples(x, &q) };
        for p in candidates {
            if p.is_zero() || (&p * &q).abs().is_one() {
                continue;
            }
            let g = p.gcd(&q);
            let reducible = !g.is_one();
            if reducible && !include_reducible {
                continue;
            }
            if rational_intelligent(x, &p, &q)? != Verdict::Intelligent {
                continue;
            }
            let d = distance(x, &p, &q);
            if d.contains_zero() {
                continue;
            }
            let size = BigReal::from_bigint(&(&p * &q).abs(), w);
            let mu = ln_x.sub(&d.ln()?).div(&size.ln()?)?;
            let reduced = (&p / &g, &q / &g);
            let in_table = convergents.contains(&reduced);
            hits.push(ScanHit {
                is_convergent: !reducible && in_table,
                reduces_to_convergent: reducible && in_table,
                reducible,
                p,
                q: q.clone(),
                mu,
            });
        }
    }
    Ok(hits)
}

fn integer_window(x: &BigReal) -> Vec<BigInt> {
    let (lo, hi) = x.endpoints();
    let two = BigRational::from_integer(BigInt::from(2));
    let a = (lo * &two).floor().to_integer().min(BigInt::zero());
    let b = (hi * &two).ceil().to_integer().max(BigInt::zero());
    let mut out = Vec::new();
    let mut p = a;
    while p <= b {
        out.push(p.clone());
        p += 1;
    }
    out
}

/// Convergents of `x` whose denominators reach past `max_q`.
fn convergent_table(x: &BigReal, max_q: u64) -> Result<Vec<(BigInt, BigInt)>> {
    let limit = BigInt::from(max_q);
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let (mut p2, mut q2) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::new();
    for a in reliable_terms(x, usize::MAX) {
        let p = &a * &p1 + &p2;
        let q = &a * &q1 + &q2;
        if q > limit {
            return Ok(out);
        }
        out.push((p.clone(), q.clone()));
        p2 = std::mem::replace(&mut p1, p);
        q2 = std::mem::replace(&mut q1, q);
    }
    if x.is_exact() {
        return Ok(out);
    }
    Err(Error::InsufficientPrecision(format!(
        "certain expansion ends before convergent denominators pass {max_q}"
    )))
}
