use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{FiniteCF, PeriodicCF};
use crate::error::{Error, Result};

/// A continued fraction in text form: `[3; 7, 15, 1]` or `[2; (4)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfText {
    Finite(FiniteCF),
    Periodic(PeriodicCF),
}

impl fmt::Display for CfText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfText::Finite(c) => c.fmt(f),
            CfText::Periodic(c) => c.fmt(f),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::MalformedCf(msg.into())
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    t.parse().map_err(|_| bad(format!("`{t}` is not an integer")))
}

fn parse_list(s: &str) -> Result<Vec<BigInt>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_int).collect()
}

/// Parses either text form. The period, if any, is the parenthesized group
/// at the end; `;` separates `a0` from the rest.
pub fn parse_cf(text: &str) -> Result<CfText> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad("expected `[…]`"))?;
    let (body, period) = match inner.find('(') {
        Some(i) => {
            let tail = inner[i + 1..]
                .trim_end()
                .strip_suffix(')')
                .ok_or_else(|| bad("the period must close the expansion"))?;
            if tail.contains(['(', ')']) {
                return Err(bad("only one period group is allowed"));
            }
            (&inner[..i], Some(parse_list(tail)?))
        }
        None => (inner, None),
    };
    let pre = match body.split_once(';') {
        Some((a0, rest)) => {
            let mut v = vec![parse_int(a0)?];
            let rest = rest.trim();
            let rest = if period.is_some() {
                match rest.strip_suffix(',') {
                    Some(r) => r,
                    None if rest.is_empty() => rest,
                    None => return Err(bad("expected `,` before the period")),
                }
            } else {
                rest
            };
            if period.is_none() && rest.is_empty() {
                return Err(bad("`;` must be followed by terms"));
            }
            v.extend(parse_list(rest)?);
            v
        }
        None if body.trim().is_empty() => Vec::new(),
        None if period.is_none() => vec![parse_int(body)?],
        None => return Err(bad("expected `;` after the first term")),
    };
    match period {
        Some(per) => Ok(CfText::Periodic(PeriodicCF::new(pre, per)?)),
        None => Ok(CfText::Finite(FiniteCF::new(pre)?)),
    }
}

impl FromStr for CfText {
    type Err = Error;

    fn from_str(s: &str) -> Result<CfText> {
        parse_cf(s)
    }
}

impl FromStr for FiniteCF {
    type Err = Error;

    fn from_str(s: &str) -> Result<FiniteCF> {
        match parse_cf(s)? {
            CfText::Finite(c) => Ok(c),
            CfText::Periodic(_) => Err(bad("expected a finite continued fraction")),
        }
    }
}

impl FromStr for PeriodicCF {
    type Err = Error;

    fn from_str(s: &str) -> Result<PeriodicCF> {
        match parse_cf(s)? {
            CfText::Periodic(c) => Ok(c),
            CfText::Finite(_) => Err(bad("expected a periodic continued fraction")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let f: FiniteCF = "[3; 7, 15, 1]".parse().unwrap();
        assert_eq!(f, FiniteCF::from_i64(&[3, 7, 15, 1]).unwrap());
        assert_eq!(f.to_string(), "[3; 7, 15, 1]");
        let p: PeriodicCF = "[2; (4)]".parse().unwrap();
        assert_eq!(p, PeriodicCF::from_i64(&[2], &[4]).unwrap());
        assert_eq!(p.to_string(), "[2; (4)]");
        let p: PeriodicCF = "[3;7,(16)]".parse().unwrap();
        assert_eq!(p.to_string(), "[3; 7, (16)]");
        assert_eq!("[(1, 2)]".parse::<PeriodicCF>().unwrap().to_string(), "[(1, 2)]");
        assert_eq!("[-4]".parse::<FiniteCF>().unwrap().to_string(), "[-4]");
    }

    #[test]
    fn rejects() {
        for s in ["3; 7", "[]", "[3;]", "[3; 0]", "[3; 7 (2)]", "[3 (2)]", "[3; (2), 1]", "[3; ()]", "[3; x]", "[3; (1)(2)]"] {
            assert!(parse_cf(s).is_err(), "{s}");
        }
    }

    proptest! {
        #[test]
        fn print_parse_inverse(a0 in -50i64..50, rest in proptest::collection::vec(1i64..500, 0..8),
                               per in proptest::collection::vec(1i64..50, 0..4)) {
            let mut terms = vec![a0];
            terms.extend(&rest);
            let t = if per.is_empty() {
                CfText::Finite(FiniteCF::from_i64(&terms).unwrap())
            } else {
                let pre = if rest.is_empty() && a0 < 0 { vec![] } else { terms.clone() };
                CfText::Periodic(PeriodicCF::from_i64(&pre, &per).unwrap())
            };
            prop_assert_eq!(parse_cf(&t.to_string()).unwrap(), t);
        }
    }
}
