//! Serialisers that round floats to 15 significant digits.
//!
//! A decimal with at most 15 significant digits survives the trip through
//! `f64`, so the shortest representation emitted by a JSON writer for the
//! rounded value never carries more than 15 digits.

use serde::Serializer;

pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

pub fn f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round15(*x))
}

pub fn vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|&x| round15(x)))
}

pub fn option<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round15(*v)),
        None => s.serialize_none(),
    }
}
