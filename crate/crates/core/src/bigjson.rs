//! JSON encoding of big integers: a number when it fits in 64 bits, a decimal
//! string otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

pub fn to_value(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

pub fn serialize_slice<S: Serializer>(ns: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ns.iter().map(to_value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_are_numbers() {
        assert_eq!(to_value(&BigInt::from(-7)), serde_json::json!(-7));
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(to_value(&big), serde_json::json!("36893488147419103228"));
    }
}
