use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::AlgebraError;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-5/6"` or `" 7 / 2 "`.
pub fn parse_rational(s: &str) -> Result<Rational, AlgebraError> {
    let bad = || AlgebraError::BadRational(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
