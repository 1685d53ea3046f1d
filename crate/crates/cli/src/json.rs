//! Integer encoding shared by workspace files and reports.
//!
//! Integers inside the `i64` range are plain JSON numbers; anything larger
//! is a decimal string. Both forms are accepted on input.

use std::fmt;

use modclose::linalg::IntMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int(b)
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int(BigInt::from(v))
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Int, E> {
        Err(E::custom(format!(
            "{v} is not an exact integer; write large integers as decimal strings"
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        v.trim()
            .parse::<BigInt>()
            .map(Int)
            .map_err(|_| E::custom(format!("`{v}` is not a decimal integer")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

pub fn int(b: &BigInt) -> Value {
    serde_json::to_value(Int(b.clone())).expect("integers always serialize")
}

pub fn int_list(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn rows(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| int_list(r)).collect())
}

pub fn columns(m: &IntMatrix) -> Value {
    Value::Array(m.columns().map(|c| int_list(&c)).collect())
}

pub fn to_big(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}
