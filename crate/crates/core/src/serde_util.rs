//! Serde adapters: rationals as `{"num": "...", "den": "..."}`, big integers as
//! decimal strings. Never floats.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

fn to_repr(q: &BigRational) -> RationalRepr {
    RationalRepr {
        num: q.numer().to_string(),
        den: q.denom().to_string(),
    }
}

fn from_repr<E: serde::de::Error>(r: RationalRepr) -> Result<BigRational, E> {
    let num: BigInt = r.num.parse().map_err(E::custom)?;
    let den: BigInt = r.den.parse().map_err(E::custom)?;
    if den <= BigInt::from(0) {
        return Err(E::custom("rational denominator must be positive"));
    }
    let q = BigRational::new(num.clone(), den.clone());
    if q.numer() != &num || q.denom() != &den {
        return Err(E::custom("rational not in lowest terms"));
    }
    Ok(q)
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        to_repr(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        from_repr(RationalRepr::deserialize(d)?)
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(to_repr).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<RationalRepr>::deserialize(d)?
            .map(from_repr)
            .transpose()
    }
}

pub mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Serialize a rational into the canonical JSON value.
pub fn rational_value(q: &BigRational) -> serde_json::Value {
    serde_json::to_value(to_repr(q)).expect("string pair serializes")
}
