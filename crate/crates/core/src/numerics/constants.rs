use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::bigreal::{BigReal, MIN_PRECISION};
use crate::error::{Error, Result};

/// Named constants available as targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstantId {
    Pi,
    E,
    Sqrt2,
    Sqrt3,
    Sqrt5,
    SqrtE,
    SqrtPi,
    EOverPi,
    SqrtE2PlusPi2,
    Log2,
    Log3,
    Zeta3,
}

impl ConstantId {
    pub const ALL: [ConstantId; 12] = [
        ConstantId::Pi,
        ConstantId::E,
        ConstantId::Sqrt2,
        ConstantId::Sqrt3,
        ConstantId::Sqrt5,
        ConstantId::SqrtE,
        ConstantId::SqrtPi,
        ConstantId::EOverPi,
        ConstantId::SqrtE2PlusPi2,
        ConstantId::Log2,
        ConstantId::Log3,
        ConstantId::Zeta3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstantId::Pi => "pi",
            ConstantId::E => "e",
            ConstantId::Sqrt2 => "sqrt2",
            ConstantId::Sqrt3 => "sqrt3",
            ConstantId::Sqrt5 => "sqrt5",
            ConstantId::SqrtE => "sqrt_e",
            ConstantId::SqrtPi => "sqrt_pi",
            ConstantId::EOverPi => "e_over_pi",
            ConstantId::SqrtE2PlusPi2 => "sqrt_e2_plus_pi2",
            ConstantId::Log2 => "log2",
            ConstantId::Log3 => "log3",
            ConstantId::Zeta3 => "zeta3",
        }
    }
}

impl fmt::Display for ConstantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstantId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstantId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

// Extra bits used for composite constants before rounding to the request.
const SLACK: usize = 64;

/// Encloses a named constant at `precision_bits` of working precision.
pub fn constant(id: ConstantId, precision_bits: usize) -> BigReal {
    let p = precision_bits.max(MIN_PRECISION);
    let w = p + SLACK;
    let v = match id {
        ConstantId::Pi => return BigReal::pi(p),
        ConstantId::E => return BigReal::e(p),
        ConstantId::Log2 => return BigReal::ln2(p),
        ConstantId::Sqrt2 => sqrt_int(2, w),
        ConstantId::Sqrt3 => sqrt_int(3, w),
        ConstantId::Sqrt5 => sqrt_int(5, w),
        ConstantId::SqrtE => BigReal::e(w).sqrt().expect("e > 0"),
        ConstantId::SqrtPi => BigReal::pi(w).sqrt().expect("pi > 0"),
        ConstantId::EOverPi => BigReal::e(w).div(&BigReal::pi(w)).expect("pi > 0"),
        ConstantId::SqrtE2PlusPi2 => {
            let e = BigReal::e(w);
            let pi = BigReal::pi(w);
            e.mul(&e).add(&pi.mul(&pi)).sqrt().expect("positive")
        }
        ConstantId::Log3 => BigReal::from_i64(3, w).ln().expect("3 > 0"),
        ConstantId::Zeta3 => zeta3(w),
    };
    v.with_precision(p)
}

/// Looks a constant up by its lowercase id.
pub fn constant_by_name(name: &str, precision_bits: usize) -> Result<BigReal> {
    Ok(constant(name.parse()?, precision_bits))
}

fn sqrt_int(n: i64, p: usize) -> BigReal {
    BigReal::from_i64(n, p).sqrt().expect("positive")
}

/// ζ(3) from the alternating central-binomial series
/// ζ(3) = 5/2 · Σ_{k≥1} (−1)^{k+1} / (k³ C(2k, k)).
/// Terms shrink by about a factor four, and the alternating tail is bounded
/// by the first omitted term.
fn zeta3(p: usize) -> BigReal {
    let terms = p / 2 + 8;
    let mut sum = BigReal::zero(p);
    let mut binom = BigInt::one(); // C(2k, k), updated incrementally
    let mut next = BigReal::zero(p);
    for k in 1..=terms + 1 {
        let kk = BigInt::from(k);
        binom = binom * (BigInt::from(4 * k - 2)) / &kk;
        let denom = &kk * &kk * &kk * &binom;
        let t = BigReal::one(p).div(&BigReal::from_bigint(&denom, p)).expect("nonzero");
        let t = if k % 2 == 1 { t } else { t.neg() };
        if k <= terms {
            sum = sum.add(&t);
        } else {
            next = t;
        }
    }
    let tail = next.abs();
    sum.inflate(&tail).mul(&BigReal::from_rational(
        &num_rational::BigRational::new(5.into(), 2.into()),
        p,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{compare_guarded, Ordering3};

    fn close(a: &BigReal, b: &BigReal, bits: i32) -> bool {
        let d = a.sub(b).abs();
        compare_guarded(&d, &BigReal::from_f64(2f64.powi(-bits), a.precision_bits())) == Ordering3::Less
    }

    #[test]
    fn pi_digits() {
        let pi = constant(ConstantId::Pi, 128);
        assert_eq!(pi.to_fixed(20), "3.14159265358979323846");
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = constant(ConstantId::Sqrt2, 128);
        assert!(close(&s.mul(&s), &BigReal::from_i64(2, 128), 120));
    }

    #[test]
    fn e_over_pi_is_the_quotient() {
        let q = constant(ConstantId::EOverPi, 192);
        let r = constant(ConstantId::E, 192).div(&constant(ConstantId::Pi, 192)).unwrap();
        assert!(close(&q, &r, 180));
    }

    #[test]
    fn zeta3_against_direct_sum() {
        // Σ_{k≤N} 1/k³ + ∫_{N+1/2}^∞ dx/x³ is accurate to ~1e-15 at N = 2000.
        let n = 2000u32;
        let mut s = 0.0f64;
        for k in (1..=n).rev() {
            s += 1.0 / (k as f64).powi(3);
        }
        s += 1.0 / (2.0 * (n as f64 + 0.5).powi(2));
        let z = constant(ConstantId::Zeta3, 128).to_f64();
        assert!((z - s).abs() < 1e-13, "{z} vs {s}");
        assert!((z - 1.202_056_903_159_594_2).abs() < 1e-15);
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert_eq!(
            constant_by_name("tau", 128).unwrap_err(),
            Error::UnknownConstant("tau".into())
        );
        for id in ConstantId::ALL {
            assert_eq!(id.as_str().parse::<ConstantId>().unwrap(), id);
        }
    }

    #[test]
    fn relative_error_bound_and_precision_agreement() {
        for id in ConstantId::ALL {
            for p in [64usize, 128, 256] {
                let lo = constant(id, p);
                let hi = constant(id, p + 128);
                // Width of the enclosure bounds the error of the midpoint.
                let mag = hi.abs();
                let bound = mag.mul(&BigReal::from_f64(2f64.powi(1 - p as i32), p + 128));
                let err = lo.midpoint().sub(&hi).abs();
                assert_eq!(compare_guarded(&err, &bound), Ordering3::Less, "{id} at {p}");
                // p-bit and (p+64)-bit values agree to p - 2 bits.
                let bound2 = mag.mul(&BigReal::from_f64(2f64.powi(2 - p as i32), p + 128));
                let other = constant(id, p + 64).midpoint();
                assert_eq!(compare_guarded(&lo.midpoint().sub(&other).abs(), &bound2), Ordering3::Less);
            }
        }
    }
}
