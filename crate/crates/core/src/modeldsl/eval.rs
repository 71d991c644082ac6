use num_bigint::BigInt;
use num_traits::Zero;

use super::{Model, ModelExpr};
use crate::error::{Error, Result};
use crate::numerics::BigReal;

/// Arithmetic a model can be evaluated in.
///
/// `div` must fail with [`Error::EvalSingular`] when the divisor cannot be
/// separated from zero, and `root` with [`Error::DomainError`] for an
/// even-order root of a negative value.
pub trait Domain {
    type Value: Clone;

    /// Value of parameter `index` (1-based).
    fn param(&self, index: usize) -> Self::Value;
    fn int(&self, v: u64) -> Self::Value;
    fn log2(&self) -> Self::Value;
    fn log3(&self) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn root(&self, k: u32, a: &Self::Value) -> Result<Self::Value>;
}

impl ModelExpr {
    /// Evaluates the tree in an arbitrary [`Domain`].
    pub fn eval_in<D: Domain>(&self, d: &D) -> Result<D::Value> {
        use ModelExpr::*;
        Ok(match self {
            Int(v) => d.int(*v),
            Param(i) => d.param(*i),
            Log2 => d.log2(),
            Log3 => d.log3(),
            Neg(a) => d.neg(&a.eval_in(d)?),
            Add(a, b) => d.add(&a.eval_in(d)?, &b.eval_in(d)?),
            Sub(a, b) => d.sub(&a.eval_in(d)?, &b.eval_in(d)?),
            Mul(a, b) => d.mul(&a.eval_in(d)?, &b.eval_in(d)?),
            Div(a, b) => d.div(&a.eval_in(d)?, &b.eval_in(d)?)?,
            Sqrt(a) => d.root(2, &a.eval_in(d)?)?,
            Root(k, a) => d.root(*k, &a.eval_in(d)?)?,
        })
    }
}

/// Interval evaluation with [`BigReal`].
pub struct RealDomain {
    params: Vec<BigReal>,
    prec: usize,
}

impl RealDomain {
    pub fn new(params: &[BigInt], precision_bits: usize) -> RealDomain {
        RealDomain {
            params: params.iter().map(|a| BigReal::from_bigint(a, precision_bits)).collect(),
            prec: precision_bits,
        }
    }
}

impl Domain for RealDomain {
    type Value = BigReal;

    fn param(&self, index: usize) -> BigReal {
        self.params[index - 1].clone()
    }
    fn int(&self, v: u64) -> BigReal {
        BigReal::from_bigint(&BigInt::from(v), self.prec)
    }
    fn log2(&self) -> BigReal {
        BigReal::ln2(self.prec)
    }
    fn log3(&self) -> BigReal {
        BigReal::from_i64(3, self.prec).ln().expect("3 > 0")
    }
    fn neg(&self, a: &BigReal) -> BigReal {
        a.neg()
    }
    fn add(&self, a: &BigReal, b: &BigReal) -> BigReal {
        a.add(b)
    }
    fn sub(&self, a: &BigReal, b: &BigReal) -> BigReal {
        a.sub(b)
    }
    fn mul(&self, a: &BigReal, b: &BigReal) -> BigReal {
        a.mul(b)
    }
    fn div(&self, a: &BigReal, b: &BigReal) -> Result<BigReal> {
        a.div(b)
    }
    fn root(&self, k: u32, a: &BigReal) -> Result<BigReal> {
        a.root(k)
    }
}

pub(crate) fn check_params(model: &Model, params: &[BigInt]) -> Result<()> {
    if params.len() != model.arity() {
        return Err(Error::ArityMismatch { expected: model.arity(), got: params.len() });
    }
    if let Some(i) = params.iter().position(|a| a.is_zero()) {
        return Err(Error::InvalidParameter { index: i + 1 });
    }
    Ok(())
}

// Internal evaluation runs this many bits above the request.
const EVAL_GUARD: usize = 64;

/// Encloses `model(params)` at `precision_bits`.
///
/// Parameters must be nonzero and match the model's arity.
pub fn evaluate(model: &Model, params: &[BigInt], precision_bits: usize) -> Result<BigReal> {
    check_params(model, params)?;
    let d = RealDomain::new(params, precision_bits + EVAL_GUARD);
    Ok(model.expr().eval_in(&d)?.with_precision(precision_bits))
}

/// [`evaluate`] with machine-integer parameters.
pub fn evaluate_i64(model: &Model, params: &[i64], precision_bits: usize) -> Result<BigReal> {
    let params: Vec<BigInt> = params.iter().map(|&a| BigInt::from(a)).collect();
    evaluate(model, &params, precision_bits)
}
