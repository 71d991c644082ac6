//! Measuring how well closed-form expressions and rationals approximate
//! real constants, with continued-fraction tools and exhaustive parameter
//! searches.

pub mod contfrac;
pub mod error;
pub mod families;
pub mod measure;
pub mod modeldsl;
pub mod numerics;
pub mod records;
pub mod search;

pub use contfrac::{CfExpansion, FiniteCF, PeriodicCF, QuadraticSurd};
pub use error::{Error, Result};
pub use families::{FamilyReport, LiouvilleRow};
pub use measure::{Approximation, MeasureKind, MeasureRecord, MeasureReport, Target, Verdict};
pub use modeldsl::{parse_model, Model, ModelExpr};
pub use numerics::{BigInt, BigRational, BigReal, BigUint, ConstantId, Ordering3};
pub use records::{Envelope, SCHEMA_VERSION};
pub use search::{SearchEntry, SearchResult, SearchSpec, SearchStats};
