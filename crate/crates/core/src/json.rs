//! JSON encodings shared by the serializable types: integers are plain
//! numbers when they fit in 64 bits and decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Text(String),
}

fn to_repr(n: &BigInt) -> IntRepr {
    match n.to_i64() {
        Some(v) => IntRepr::Small(v),
        None => IntRepr::Text(n.to_string()),
    }
}

fn from_repr<E: serde::de::Error>(r: IntRepr) -> Result<BigInt, E> {
    match r {
        IntRepr::Small(v) => Ok(BigInt::from(v)),
        IntRepr::Text(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
    }
}

pub mod big_int {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        to_repr(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_repr(IntRepr::deserialize(d)?)
    }
}

pub mod big_ints {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_repr).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?
            .into_iter()
            .map(from_repr)
            .collect()
    }
}

/// Display/FromStr round trip through a JSON string.
pub mod as_string {
    use super::*;
    use std::fmt::Display;
    use std::str::FromStr;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}
