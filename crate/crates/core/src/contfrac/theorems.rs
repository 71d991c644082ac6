//! Intelligent rational approximations that are not convergents.
//!
//! With `x = [a0; a1, a2, …] > 1`:
//!
//! * if `a(n+1) >= a(n) - 1 >= 1`, then `[a0; …, a(n-1), a(n) - 1]` is an
//!   intelligent approximation of `x` and not a convergent;
//! * if `2 <= a(n+1) <= a(n) + 1`, the same holds for
//!   `[a0; …, a(n-1), a(n) + 1]`.
//!
//! Candidates equal to `±1` have size one and are dropped as inadmissible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{eval_finite_cf, reliable_terms, FiniteCF};
use crate::error::{Error, Result};
use crate::numerics::{compare_guarded, BigReal, Ordering3};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub n: usize,
    pub cf: FiniteCF,
    pub value: BigRational,
}

fn terms_for(x: &BigReal, max_n: usize) -> Result<Vec<BigInt>> {
    if compare_guarded(x, &BigReal::one(x.precision_bits())) != Ordering3::Greater {
        return Err(Error::InvalidArgument("the target must exceed 1".into()));
    }
    let need = max_n + 2;
    let terms = reliable_terms(x, need);
    if terms.len() < need {
        return Err(Error::InsufficientPrecision(format!(
            "{need} partial quotients needed, {} certain",
            terms.len()
        )));
    }
    Ok(terms)
}

fn generate(
    x: &BigReal,
    max_n: usize,
    applies: impl Fn(&BigInt, &BigInt) -> bool,
    last: impl Fn(&BigInt) -> BigInt,
) -> Result<Vec<Candidate>> {
    let a = terms_for(x, max_n)?;
    let mut out = Vec::new();
    for n in 0..=max_n {
        if !applies(&a[n], &a[n + 1]) {
            continue;
        }
        let mut t = a[..n].to_vec();
        t.push(last(&a[n]));
        let cf = FiniteCF::new(t).expect("last term stays positive");
        let value = eval_finite_cf(&cf);
        if (value.numer() * value.denom()).abs().is_one() {
            continue;
        }
        out.push(Candidate { n, cf, value });
    }
    Ok(out)
}

/// Candidates `[a0; …, a(n-1), a(n) - 1]` for `n <= max_n`.
pub fn theorem1_candidates(x: &BigReal, max_n: usize) -> Result<Vec<Candidate>> {
    let one = BigInt::one();
    generate(
        x,
        max_n,
        |an, next| {
            let m = an - &one;
            m >= one && next >= &m
        },
        |an| an - &one,
    )
}

/// Candidates `[a0; …, a(n-1), a(n) + 1]` for `n <= max_n`.
pub fn theorem2_candidates(x: &BigReal, max_n: usize) -> Result<Vec<Candidate>> {
    let one = BigInt::one();
    let two = BigInt::from(2);
    generate(x, max_n, |an, next| &two <= next && next <= &(an + &one), |an| an + &one)
}
