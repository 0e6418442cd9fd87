//! JSON representation of scalars and vectors.
//!
//! Vectors are arrays of exact strings (`"7/20"`), which parse back
//! losslessly. Scalars inside reports are objects carrying the exact value
//! next to a 12-significant-digit decimal.

use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{decimal_12, Quotient, Scalar};
use crate::vectors::SchmidtVector;

pub fn scalar_report<S: Scalar, Ser: Serializer>(value: &S, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
    let mut st = ser.serialize_struct("Scalar", 2)?;
    st.serialize_field("value", &value.render())?;
    st.serialize_field("decimal", &decimal_12(value.to_f64()))?;
    st.end()
}

pub fn quotient_report<S: Scalar, Ser: Serializer>(
    value: &Quotient<S>,
    ser: Ser,
) -> Result<Ser::Ok, Ser::Error> {
    let mut st = ser.serialize_struct("Scalar", 2)?;
    st.serialize_field("value", &value.render())?;
    st.serialize_field("decimal", &decimal_12(value.to_f64()))?;
    st.end()
}

pub fn scalar_list<S: Scalar, Ser: Serializer>(values: &[S], ser: Ser) -> Result<Ser::Ok, Ser::Error> {
    ser.collect_seq(values.iter().map(Scalar::render))
}

pub fn option_scalar_report<S: Scalar, Ser: Serializer>(
    value: &Option<S>,
    ser: Ser,
) -> Result<Ser::Ok, Ser::Error> {
    match value {
        Some(v) => scalar_report(v, ser),
        None => ser.serialize_none(),
    }
}

impl<S: Scalar> Serialize for SchmidtVector<S> {
    fn serialize<Ser: Serializer>(&self, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        scalar_list(self.entries(), ser)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for SchmidtVector<S> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let values = de.deserialize_seq(LiteralSeq::<S>(std::marker::PhantomData))?;
        SchmidtVector::from_unsorted(values).map_err(de::Error::custom)
    }
}

struct LiteralSeq<S>(std::marker::PhantomData<S>);

impl<'de, S: Scalar> Visitor<'de> for LiteralSeq<S> {
    type Value = Vec<S>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an array of decimal or \"num/den\" strings")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<S>, A::Error> {
        let mut out = Vec::new();
        while let Some(lit) = seq.next_element::<Literal>()? {
            out.push(S::parse_literal(&lit.0).map_err(de::Error::custom)?);
        }
        Ok(out)
    }
}

/// A number given either as a string or as a bare JSON number; bare
/// numbers are read through their shortest decimal form.
pub struct Literal(pub String);

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Literal;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or numeric string")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Literal, E> {
                Ok(Literal(v.to_string()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Literal, E> {
                Ok(Literal(v.to_string()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Literal, E> {
                Ok(Literal(v.to_string()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Literal, E> {
                Ok(Literal(format!("{v:?}")))
            }
        }
        de.deserialize_any(V)
    }
}

/// Serde adapter for a single scalar written as an exact string.
pub mod exact {
    use super::*;

    pub fn serialize<S: Scalar, Ser: Serializer>(value: &S, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        ser.serialize_str(&value.render())
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<S, D::Error> {
        let lit = Literal::deserialize(de)?;
        S::parse_literal(&lit.0).map_err(de::Error::custom)
    }
}
