//! Number formatting shared by the JSON, CSV and PGM writers.
//!
//! Rationals are written as "p/q" strings and floats with 17 significant digits,
//! so every value survives a print/parse round trip unchanged.

use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

/// `x` with 17 significant digits, or `nan`/`inf`/`-inf`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// "p/q" with q > 0, including "n/1" for integers.
pub fn fmt_ratio(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<Ratio<i64>, String> {
    let bad = || format!("not a rational: {s:?}");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(p, q))
        }
        None => s.trim().parse::<i64>().map(Ratio::from_integer).map_err(|_| bad()),
    }
}

/// Serde adapter for `Ratio<i64>` as a "p/q" string.
pub mod ratio {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let s = String::deserialize(d)?;
        parse_ratio(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for `f64` with 17 significant digits (non-finite values become null).
pub mod float17 {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            let n: serde_json::Number = fmt_f64(*x).parse().map_err(serde::ser::Error::custom)?;
            n.serialize(s)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        let n: Option<serde_json::Number> = Option::deserialize(d)?;
        match n {
            None => Ok(f64::NAN),
            Some(n) => n.as_str().parse().map_err(D::Error::custom),
        }
    }
}

/// [`float17`] for `Option<f64>`.
pub mod float17_opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => super::float17::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        let n: Option<serde_json::Number> = Option::deserialize(d)?;
        n.map(|n| n.as_str().parse().map_err(D::Error::custom)).transpose()
    }
}
