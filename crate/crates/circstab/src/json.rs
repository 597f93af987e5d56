use num_bigint::BigUint;
use serde::{Serialize, Serializer};

/// Writes a big integer as a JSON number with every digit kept.
pub(crate) fn exact<S: Serializer>(value: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
    let number: serde_json::Number = value.to_string().parse().map_err(serde::ser::Error::custom)?;
    number.serialize(ser)
}

pub(crate) fn exact_opt<S: Serializer>(value: &Option<BigUint>, ser: S) -> Result<S::Ok, S::Error> {
    match value {
        None => ser.serialize_none(),
        Some(v) => exact(v, ser),
    }
}
