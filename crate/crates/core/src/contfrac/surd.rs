use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PeriodicCF;
use crate::error::{Error, Result};
use crate::numerics::BigReal;

/// `(P + Q√D)/R` in canonical form: `gcd(P, Q, R) = 1`, `R > 0`, `D`
/// squarefree and greater than one, `Q ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

// Trial division bound for square factors. Radicands whose cofactor after
// division stays above its cube are only checked for being a perfect square.
const TRIAL_LIMIT: u64 = 1_000_000;

/// Splits `d > 0` as `f² · core`, moving every square factor it can find
/// into `f`.
///
/// The split is exact whenever the cofactor left after trial division by
/// all integers up to 10⁶ is below 10¹⁸; beyond that, only a perfect-square
/// cofactor is detected.
pub fn squarefree_part(d: &BigInt) -> (BigInt, BigInt) {
    let mut m = d.clone();
    let mut f = BigInt::one();
    let mut core = BigInt::one();
    let mut k = 2u64;
    while k <= TRIAL_LIMIT {
        let kb = BigInt::from(k);
        // Past the cube root, m has at most two prime factors left.
        if &kb * &kb * &kb > m {
            break;
        }
        let sq = &kb * &kb;
        while (&m % &sq).is_zero() {
            m /= &sq;
            f *= &kb;
        }
        if (&m % &kb).is_zero() {
            m /= &kb;
            core *= &kb;
        }
        k += if k == 2 { 1 } else { 2 };
    }
    let s = m.sqrt();
    if &s * &s == m {
        return (f * s, core);
    }
    (f, core * m)
}

impl QuadraticSurd {
    /// Canonicalizes `(P + Q√D)/R`.
    pub fn new(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Result<QuadraticSurd> {
        if r.is_zero() {
            return Err(Error::InvalidArgument("surd denominator is zero".into()));
        }
        if !d.is_positive() {
            return Err(Error::InvalidArgument("surd radicand must be positive".into()));
        }
        let (f, core) = squarefree_part(&d);
        let q = q * f;
        if core.is_one() || q.is_zero() {
            return Err(Error::NotIrrational(format!("({p} + {q}√{d})/{r} is rational")));
        }
        let (mut p, mut q, mut r) = (p, q, r);
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        Ok(QuadraticSurd { p: p / &g, q: q / &g, d: core, r: r / &g })
    }

    pub fn from_i64(p: i64, q: i64, d: i64, r: i64) -> Result<QuadraticSurd> {
        QuadraticSurd::new(p.into(), q.into(), d.into(), r.into())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = if self.q.abs().is_one() {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", self.q.abs(), self.d)
        };
        let num = match (self.p.is_zero(), self.q.is_negative()) {
            (true, false) => root,
            (true, true) => format!("-{root}"),
            (false, false) => format!("{} + {root}", self.p),
            (false, true) => format!("{} - {root}", self.p),
        };
        if self.r.is_one() {
            f.write_str(&num)
        } else if self.p.is_zero() {
            write!(f, "{num}/{}", self.r)
        } else {
            write!(f, "({num})/{}", self.r)
        }
    }
}

/// Matrix `[[a, b], [c, d]]` of the map `y ↦ [t1, …, tk, y]`.
fn mobius(terms: &[BigInt]) -> [BigInt; 4] {
    let mut m = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for t in terms {
        let [a, b, c, d] = m;
        m = [&a * t + b, a, &c * t + d, c];
    }
    m
}

/// Closed form of an eventually periodic continued fraction.
///
/// The periodic tail `y = [b1, …, bd, y]` solves `C y² + (D - A) y - B = 0`
/// for the period's matrix `[[A, B], [C, D]]`; its root above one is
/// `(A - D + √Δ) / 2C`. The preperiod map then carries `y` to the value.
pub fn periodic_to_surd(pcf: &PeriodicCF) -> Result<QuadraticSurd> {
    let [a, b, c, d] = mobius(pcf.period());
    let u = &a - &d;
    let v = BigInt::from(2) * &c;
    let disc = &u * &u + BigInt::from(4) * &b * &c;
    let s = disc.sqrt();
    if &s * &s == disc {
        return Err(Error::NotIrrational(format!("periodic part has rational discriminant {disc}")));
    }
    let [al, be, ga, de] = mobius(pcf.preperiod());
    let num = &al * &u + &be * &v;
    let den = &ga * &u + &de * &v;
    let p = &num * &den - &al * &ga * &disc;
    let q = (&al * &de - &be * &ga) * &v;
    let r = &den * &den - &ga * &ga * &disc;
    QuadraticSurd::new(p, q, disc, r)
}

/// Encloses `(P + Q√D)/R`.
pub fn surd_eval(s: &QuadraticSurd, precision_bits: usize) -> BigReal {
    let w = precision_bits + 64;
    let root = BigReal::from_bigint(&s.d, w).sqrt().expect("D > 0");
    BigReal::from_bigint(&s.p, w)
        .add(&root.mul(&BigReal::from_bigint(&s.q, w)))
        .div(&BigReal::from_bigint(&s.r, w))
        .expect("R > 0")
        .with_precision(precision_bits)
}
