//! Fixed-format number serialization for byte-stable reports.

use std::fmt::Display;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// A real number as a JSON number with exactly six decimal digits.
pub fn fixed6<S: Serializer>(value: &f64, s: S) -> Result<S::Ok, S::Error> {
    let text = format!("{value:.6}");
    let number: serde_json::Number = text.parse().map_err(serde::ser::Error::custom)?;
    number.serialize(s)
}

/// A rational in lowest terms as the string `"n/d"`, or `"n"` when integral.
pub fn ratio<T, S>(value: &Ratio<T>, s: S) -> Result<S::Ok, S::Error>
where
    T: Clone + Display + num_integer::Integer,
    S: Serializer,
{
    s.serialize_str(&ratio_text(value))
}

pub fn ratio_text<T>(value: &Ratio<T>) -> String
where
    T: Clone + Display + num_integer::Integer,
{
    if value.denom().is_one() || value.numer().is_zero() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    // serde_json's default map is ordered by key, so a round trip through
    // `Value` yields canonical key order regardless of field declaration.
    let value = serde_json::to_value(value).expect("report types always serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("value always serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        zeta: u32,
        #[serde(serialize_with = "fixed6")]
        alpha: f64,
        #[serde(serialize_with = "ratio")]
        mid: Ratio<u64>,
    }

    #[test]
    fn canonical_json() {
        let s = Sample { zeta: 3, alpha: 8.0, mid: Ratio::new(26, 4) };
        assert_eq!(
            to_json(&s),
            "{\n  \"alpha\": 8.000000,\n  \"mid\": \"13/2\",\n  \"zeta\": 3\n}\n"
        );
        assert_eq!(ratio_text(&Ratio::new(26u64, 2)), "13");
    }
}
