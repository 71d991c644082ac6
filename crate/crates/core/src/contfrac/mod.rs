//! Regular continued fractions.
//!
//! Finite expansions `[a0; a1, …, an]`, eventually periodic ones
//! `[a0; a1, …, (b1, …, bd)]`, their exact values and closed forms, and the
//! generators of intelligent approximations that are not convergents.

mod expand;
mod surd;
mod text;
mod theorems;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

pub use expand::{cf_expand, convergent_pairs, convergents, eval_finite_cf, is_convergent_of, reliable_terms, CfExpansion};
pub use surd::{periodic_to_surd, squarefree_part, surd_eval, QuadraticSurd};
pub use text::{parse_cf, CfText};
pub use theorems::{theorem1_candidates, theorem2_candidates, Candidate};

/// `[a0; a1, …, an]` with `ai >= 1` for `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteCF {
    terms: Vec<BigInt>,
}

fn check_tail(terms: &[BigInt], what: &str) -> Result<()> {
    match terms.iter().position(|a| !a.is_positive()) {
        Some(i) => Err(Error::MalformedCf(format!("{what} term {i} must be positive, got {}", terms[i]))),
        None => Ok(()),
    }
}

impl FiniteCF {
    pub fn new(terms: Vec<BigInt>) -> Result<FiniteCF> {
        if terms.is_empty() {
            return Err(Error::MalformedCf("no terms".into()));
        }
        check_tail(&terms[1..], "partial quotient").map_err(|_| {
            Error::MalformedCf("partial quotients after the first must be positive".into())
        })?;
        Ok(FiniteCF { terms })
    }

    pub fn from_i64(terms: &[i64]) -> Result<FiniteCF> {
        FiniteCF::new(terms.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same value with the last term split as `[…, an - 1, 1]`, or
    /// merged back when it ends in 1.
    pub fn alternate_form(&self) -> FiniteCF {
        let mut t = self.terms.clone();
        let n = t.len();
        if n >= 2 && t[n - 1].is_one() {
            t.pop();
            *t.last_mut().expect("nonempty") += 1;
        } else {
            *t.last_mut().expect("nonempty") -= 1;
            t.push(BigInt::one());
        }
        FiniteCF { terms: t }
    }
}

/// `[a0; …, a(k-1), (b1, …, bd)]`, the period repeating forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicCF {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl PeriodicCF {
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<PeriodicCF> {
        if period.is_empty() {
            return Err(Error::MalformedCf("empty period".into()));
        }
        check_tail(&period, "period")?;
        if preperiod.len() > 1 {
            check_tail(&preperiod[1..], "preperiod")?;
        }
        Ok(PeriodicCF { preperiod, period })
    }

    pub fn from_i64(preperiod: &[i64], period: &[i64]) -> Result<PeriodicCF> {
        let v = |s: &[i64]| s.iter().map(|&a| BigInt::from(a)).collect();
        PeriodicCF::new(v(preperiod), v(period))
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    /// The first `n` terms of the infinite expansion.
    pub fn truncate(&self, n: usize) -> FiniteCF {
        let terms = self
            .preperiod
            .iter()
            .chain(self.period.iter().cycle())
            .take(n.max(1))
            .cloned()
            .collect();
        FiniteCF { terms }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[BigInt]) -> fmt::Result {
    for (i, a) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl fmt::Display for FiniteCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.terms[0])?;
        if self.terms.len() > 1 {
            f.write_str("; ")?;
            write_list(f, &self.terms[1..])?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        if let Some((a0, rest)) = self.preperiod.split_first() {
            write!(f, "{a0}; ")?;
            for a in rest {
                write!(f, "{a}, ")?;
            }
        }
        f.write_str("(")?;
        write_list(f, &self.period)?;
        f.write_str(")]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FiniteCF::from_i64(&[]).is_err());
        assert!(FiniteCF::from_i64(&[3, 0]).is_err());
        assert!(FiniteCF::from_i64(&[-3, 2]).is_ok());
        assert!(PeriodicCF::from_i64(&[1], &[]).is_err());
        assert!(PeriodicCF::from_i64(&[1], &[0]).is_err());
        assert!(PeriodicCF::from_i64(&[1, -2], &[2]).is_err());
    }

    #[test]
    fn alternate_form_keeps_value() {
        let a = FiniteCF::from_i64(&[3, 7, 16]).unwrap();
        let b = a.alternate_form();
        assert_eq!(b, FiniteCF::from_i64(&[3, 7, 15, 1]).unwrap());
        assert_eq!(b.alternate_form(), a);
        assert_eq!(eval_finite_cf(&a), eval_finite_cf(&b));
    }

    #[test]
    fn truncation() {
        let p = PeriodicCF::from_i64(&[2, 1], &[4, 5]).unwrap();
        assert_eq!(p.truncate(5), FiniteCF::from_i64(&[2, 1, 4, 5, 4]).unwrap());
    }
}
