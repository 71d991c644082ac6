use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Parses a decimal literal such as `3.14159`, `-2.5e-3` or `17` into the
/// exact rational it denotes.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("not a decimal number: `{text}`"));
    let s = text.trim();
    let (neg, s) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let mut num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    if neg {
        num = -num;
    }
    let scale = exp as i64 - frac.len() as i64;
    let ten = BigInt::from(10);
    let pow = |k: i64| -> BigInt {
        let mut r = BigInt::one();
        for _ in 0..k {
            r *= &ten;
        }
        r
    };
    if scale.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    Ok(if scale >= 0 {
        BigRational::from_integer(num * pow(scale))
    } else {
        BigRational::new(num, pow(-scale))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_decimal("3.14159").unwrap(), r(314159, 100000));
        assert_eq!(parse_decimal("-2.5e-3").unwrap(), r(-1, 400));
        assert_eq!(parse_decimal("17").unwrap(), r(17, 1));
        assert_eq!(parse_decimal(".5").unwrap(), r(1, 2));
        assert_eq!(parse_decimal("1E2").unwrap(), r(100, 1));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "pi", "1.2.3", "e5", "-", "1e", "0x10"] {
            assert!(parse_decimal(s).is_err(), "{s}");
        }
    }
}
