//! Serialises big integers as bare JSON numbers.

use std::str::FromStr;

use num_bigint::BigUint;
use serde::ser::{Error as _, SerializeSeq};
use serde::Serializer;

pub fn serialize<S: Serializer>(value: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
    let n = serde_json::Number::from_str(&value.to_string()).map_err(S::Error::custom)?;
    serde::Serialize::serialize(&n, serializer)
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(values: &[BigUint], serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(values.len()))?;
        for v in values {
            let n = serde_json::Number::from_str(&v.to_string()).map_err(S::Error::custom)?;
            seq.serialize_element(&n)?;
        }
        seq.end()
    }
}
