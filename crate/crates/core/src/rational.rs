//! Exact rational helpers shared by the classical paths and the file formats.

use crate::error::{Error, Result};
use num_rational::Ratio;

pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: i64 = num
        .trim()
        .parse()
        .map_err(|_| format!("bad rational numerator in '{text}'"))?;
    let den: i64 = den
        .trim()
        .parse()
        .map_err(|_| format!("bad rational denominator in '{text}'"))?;
    if den == 0 {
        return Err(format!("zero denominator in '{text}'"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical file rendering: always `num/den`, reduced, sign on the numerator.
pub fn to_file_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) fn field(line: usize, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|m| Error::parse(line, m))
}
