use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::FiniteCF;
use crate::error::{Error, Result};
use crate::numerics::BigReal;

/// Result of expanding an enclosure: only the terms shared by every point of
/// the enclosure are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CfExpansion {
    pub cf: FiniteCF,
    /// Number of terms in `cf`; all of them are certain.
    pub reliable_count: usize,
    /// True when the expansion stopped because `max_terms` was reached
    /// rather than because the enclosure was exhausted.
    pub truncated: bool,
}

/// Euclidean expansion of an exact rational, at most `max` terms.
fn euclid(r: &BigRational, max: usize) -> Vec<BigInt> {
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    let mut out = Vec::new();
    while out.len() < max {
        let (a, rem) = n.div_mod_floor(&d);
        out.push(a);
        if rem.is_zero() {
            break;
        }
        n = std::mem::replace(&mut d, rem);
    }
    out
}

/// The longest prefix of the expansion that every point of `x` shares.
///
/// The set of reals whose expansion starts with a given prefix is an
/// interval, so agreement at both endpoints settles every point between.
pub fn reliable_terms(x: &BigReal, max_terms: usize) -> Vec<BigInt> {
    let (lo, hi) = x.endpoints();
    let a = euclid(&lo, max_terms);
    if lo == hi {
        return a;
    }
    let b = euclid(&hi, max_terms);
    a.into_iter().zip(b).take_while(|(s, t)| s == t).map(|(s, _)| s).collect()
}

/// Expands `x` into up to `max_terms` certain partial quotients.
pub fn cf_expand(x: &BigReal, max_terms: usize) -> Result<CfExpansion> {
    if max_terms == 0 {
        return Err(Error::InvalidArgument("max_terms must be positive".into()));
    }
    let terms = reliable_terms(x, max_terms);
    if terms.is_empty() {
        return Err(Error::InsufficientPrecision(
            "the enclosure does not determine the integer part".into(),
        ));
    }
    let reliable_count = terms.len();
    Ok(CfExpansion {
        cf: FiniteCF::new(terms).expect("expansion terms are valid"),
        reliable_count,
        truncated: reliable_count == max_terms,
    })
}

/// Numerators and denominators `(pk, qk)` of all convergents.
pub fn convergent_pairs(cf: &FiniteCF) -> Vec<(BigInt, BigInt)> {
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let (mut p2, mut q2) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::with_capacity(cf.len());
    for a in cf.terms() {
        let p = a * &p1 + &p2;
        let q = a * &q1 + &q2;
        p2 = std::mem::replace(&mut p1, p.clone());
        q2 = std::mem::replace(&mut q1, q.clone());
        out.push((p, q));
    }
    out
}

/// The convergents `p0/q0, …, pn/qn`.
pub fn convergents(cf: &FiniteCF) -> Vec<BigRational> {
    convergent_pairs(cf)
        .into_iter()
        .map(|(p, q)| BigRational::new(p, q))
        .collect()
}

/// Exact value of a finite continued fraction, in lowest terms.
pub fn eval_finite_cf(cf: &FiniteCF) -> BigRational {
    let (p, q) = convergent_pairs(cf).pop().expect("nonempty");
    BigRational::new(p, q)
}

/// Whether `r` is one of the convergents of `x`.
///
/// Needs enough certain terms of `x` for the convergent denominators to pass
/// the denominator of `r`.
pub fn is_convergent_of(r: &BigRational, x: &BigReal) -> Result<bool> {
    let terms = reliable_terms(x, usize::MAX);
    let q = r.denom();
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let (mut p2, mut q2) = (BigInt::zero(), BigInt::one());
    for a in terms {
        let pk = &a * &p1 + &p2;
        let qk = &a * &q1 + &q2;
        if &qk > q {
            return Ok(false);
        }
        if &qk == q && &pk == r.numer() {
            return Ok(true);
        }
        p2 = std::mem::replace(&mut p1, pk);
        q2 = std::mem::replace(&mut q1, qk);
    }
    if x.is_exact() {
        // A rational x has no further convergents.
        return Ok(false);
    }
    Err(Error::InsufficientPrecision(format!(
        "certain expansion of the target ends before denominators exceed {q}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{constant, ConstantId};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| a.into()).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn expansions() {
        let pi = constant(ConstantId::Pi, 256);
        assert_eq!(cf_expand(&pi, 6).unwrap().cf.terms(), &ints(&[3, 7, 15, 1, 292, 1])[..]);
        let e = constant(ConstantId::E, 256);
        assert_eq!(cf_expand(&e, 7).unwrap().cf.terms(), &ints(&[2, 1, 2, 1, 1, 4, 1])[..]);
        let s2 = constant(ConstantId::Sqrt2, 256);
        let x = cf_expand(&s2, 1000).unwrap();
        assert!(!x.truncated);
        assert!(x.reliable_count > 60);
        assert_eq!(x.cf.terms()[0], BigInt::from(1));
        assert!(x.cf.terms()[1..].iter().all(|a| *a == BigInt::from(2)));
        assert_eq!(cf_expand(&pi, 0).unwrap_err(), Error::InvalidArgument("max_terms must be positive".into()));
    }

    #[test]
    fn exact_and_negative_inputs() {
        let x = BigReal::from_rational(&q(-7, 2), 128);
        assert!(x.is_exact());
        assert_eq!(cf_expand(&x, 10).unwrap().cf.terms(), &ints(&[-4, 2])[..]);
    }

    #[test]
    fn evaluation_and_convergents() {
        let cf = |v: &[i64]| FiniteCF::from_i64(v).unwrap();
        assert_eq!(eval_finite_cf(&cf(&[3, 7])), q(22, 7));
        assert_eq!(eval_finite_cf(&cf(&[3, 7, 15, 1])), q(355, 113));
        assert_eq!(eval_finite_cf(&cf(&[2, 1, 1])), q(5, 2));
        assert_eq!(
            convergents(&cf(&[3, 7, 15, 1, 292])),
            vec![q(3, 1), q(22, 7), q(333, 106), q(355, 113), q(103993, 33102)]
        );
        assert!(convergents(&cf(&[2, 1, 2, 1, 1, 4, 1])).contains(&q(19, 7)));
    }

    #[test]
    fn convergent_membership() {
        let pi = constant(ConstantId::Pi, 256);
        let e = constant(ConstantId::E, 256);
        assert!(is_convergent_of(&q(355, 113), &pi).unwrap());
        assert!(!is_convergent_of(&q(19, 6), &pi).unwrap());
        assert!(!is_convergent_of(&q(5, 2), &e).unwrap());
        assert!(is_convergent_of(&q(3, 1), &e).unwrap());
        let coarse = constant(ConstantId::Pi, 64);
        let big = BigRational::new(BigInt::from(10).pow(40) + 1, BigInt::from(10).pow(40));
        assert!(matches!(is_convergent_of(&big, &coarse), Err(Error::InsufficientPrecision(_))));
    }
}
