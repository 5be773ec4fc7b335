//! Construction, enumeration and prime statistics for families of
//! D4-quartic fields `Q(sqrt(g + h sqrt(a)))` whose Galois closure contains a
//! fixed biquadratic field `Q(sqrt(a), sqrt(b))`.

pub mod arith;
pub mod error;

pub use error::{Error, ErrorKind, Result};
pub mod context;
pub mod normcond;
pub mod bigjson;
pub mod group;
pub mod quartic;
pub mod family;
pub mod frobenius;
pub mod lseries;
pub mod analytic;
pub mod selftest;
