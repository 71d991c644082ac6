//! Line-oriented output records.
//!
//! Every record is a flat JSON object carrying a `kind` tag and the shared
//! [`SCHEMA_VERSION`]; payload keys follow the field names of the report
//! types they are built from.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

pub const SCHEMA_VERSION: u32 = 1;

/// A payload tagged with its record kind.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub kind: &'a str,
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: T,
}

impl<'a, T: Serialize> Envelope<'a, T> {
    pub fn new(kind: &'a str, body: T) -> Self {
        Envelope { kind, schema_version: SCHEMA_VERSION, body }
    }
}

/// Integers that fit a machine word serialize as JSON numbers, larger ones
/// as decimal strings.
pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn ser_biguint<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&Wrap(x))?;
    }
    seq.end()
}

struct Wrap<'a>(&'a BigInt);

impl Serialize for Wrap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_bigint(self.0, s)
    }
}
