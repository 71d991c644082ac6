//! Machine-precision interval arithmetic, used to discard most tuples of a
//! search before any arbitrary-precision work.
//!
//! Basic operations and `sqrt` are correctly rounded in IEEE arithmetic, so
//! stepping each endpoint one ulp outward keeps the enclosure sound. Library
//! transcendentals carry no such guarantee and get a relative margin.

use crate::error::{Error, Result};
use crate::modeldsl::Domain;

const LIB_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Iv {
    pub lo: f64,
    pub hi: f64,
}

impl Iv {
    pub fn point(v: f64) -> Iv {
        Iv { lo: v, hi: v }
    }

    fn out(lo: f64, hi: f64) -> Iv {
        Iv { lo: lo.next_down(), hi: hi.next_up() }
    }

    fn loose(lo: f64, hi: f64) -> Iv {
        Iv::out(lo - lo.abs() * LIB_MARGIN, hi + hi.abs() * LIB_MARGIN)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn abs(&self) -> Iv {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            Iv { lo: -self.hi, hi: -self.lo }
        } else {
            Iv { lo: 0.0, hi: (-self.lo).max(self.hi) }
        }
    }

    pub fn add(&self, o: &Iv) -> Iv {
        Iv::out(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn sub(&self, o: &Iv) -> Iv {
        Iv::out(self.lo - o.hi, self.hi - o.lo)
    }

    pub fn mul(&self, o: &Iv) -> Iv {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Iv::out(lo, hi)
    }

    pub fn div(&self, o: &Iv) -> Result<Iv> {
        if o.contains_zero() {
            return Err(Error::EvalSingular);
        }
        let c = [self.lo / o.lo, self.lo / o.hi, self.hi / o.lo, self.hi / o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(Iv::out(lo, hi))
    }

    pub fn ln(&self) -> Iv {
        Iv::loose(self.lo.ln(), self.hi.ln())
    }

    pub fn root(&self, k: u32) -> Result<Iv> {
        let odd = k % 2 == 1;
        if self.hi < 0.0 && !odd {
            return Err(Error::DomainError);
        }
        let f = |v: f64| -> f64 {
            if v == 0.0 {
                0.0
            } else if k == 2 {
                v.sqrt()
            } else if v < 0.0 {
                -(-v).powf(1.0 / k as f64)
            } else {
                v.powf(1.0 / k as f64)
            }
        };
        let lo = if self.lo < 0.0 && !odd { 0.0 } else { f(self.lo) };
        let hi = f(self.hi);
        Ok(if k == 2 { Iv::out(lo, hi) } else { Iv::loose(lo, hi) })
    }
}

/// Evaluates models over [`Iv`] at fixed integer parameters.
pub struct IvDomain<'a> {
    pub params: &'a [i64],
}

const LN2: f64 = std::f64::consts::LN_2;
const LN3: f64 = 1.098_612_288_668_109_8;

impl Domain for IvDomain<'_> {
    type Value = Iv;

    fn param(&self, index: usize) -> Iv {
        let v = self.params[index - 1];
        let f = v as f64;
        if f as i64 == v {
            Iv::point(f)
        } else {
            Iv::out(f, f)
        }
    }
    fn int(&self, v: u64) -> Iv {
        let f = v as f64;
        if f as u64 == v {
            Iv::point(f)
        } else {
            Iv::out(f, f)
        }
    }
    fn log2(&self) -> Iv {
        Iv::out(LN2, LN2)
    }
    fn log3(&self) -> Iv {
        Iv::out(LN3, LN3)
    }
    fn neg(&self, a: &Iv) -> Iv {
        Iv { lo: -a.hi, hi: -a.lo }
    }
    fn add(&self, a: &Iv, b: &Iv) -> Iv {
        a.add(b)
    }
    fn sub(&self, a: &Iv, b: &Iv) -> Iv {
        a.sub(b)
    }
    fn mul(&self, a: &Iv, b: &Iv) -> Iv {
        a.mul(b)
    }
    fn div(&self, a: &Iv, b: &Iv) -> Result<Iv> {
        a.div(b)
    }
    fn root(&self, k: u32, a: &Iv) -> Result<Iv> {
        a.root(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modeldsl::{evaluate_i64, parse_model};

    #[test]
    fn encloses_the_exact_value() {
        let cases: &[(&str, &[i64])] = &[
            ("a1/a2", &[22, 7]),
            ("sqrt(a1)+sqrt(a2)", &[2, 3]),
            ("sqrt(a1/a2 - a3*sqrt(a4))", &[40, 3, 2, 3]),
            ("a1/(a2 + a3*log2 + a4*log3)", &[5, 2, -3, 7]),
            ("root(3, a1) - root(5, a2)", &[-30, 17]),
        ];
        for (text, params) in cases {
            let m = parse_model(text).unwrap();
            let iv = m.expr().eval_in(&IvDomain { params }).unwrap();
            let exact = evaluate_i64(&m, params, 128).unwrap();
            let (lo, hi) = exact.endpoints();
            let lo = crate::numerics::rational_to_f64(&lo);
            let hi = crate::numerics::rational_to_f64(&hi);
            assert!(iv.lo <= lo && hi <= iv.hi, "{text}: {iv:?} vs [{lo}, {hi}]");
        }
    }
}
