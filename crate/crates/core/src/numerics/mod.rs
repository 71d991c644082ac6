//! Arbitrary-precision reals, exact rationals and the constant registry.

mod bigreal;
mod constants;
mod decimal;

pub use bigreal::{compare_guarded, log_abs, BigReal, Ordering3, DEFAULT_PRECISION, MIN_PRECISION};
pub use constants::{constant, constant_by_name, ConstantId};
pub use decimal::parse_decimal;
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub(crate) use bigreal::rational_to_f64;
