//! Arbitrary-precision rationals, the coefficient field of every symbolic object.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `num/den` with the denominator always present (`3/1`, `-1/2`, `0/1`).
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `num/den` or a bare integer. Decimal points are rejected.
pub fn parse_fraction(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Nearest double; falls back to a ratio of scaled integers for huge operands.
pub fn to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&frac(6, -4)), "-3/2");
        assert_eq!(to_fraction_string(&int(0)), "0/1");
        assert_eq!(parse_fraction("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_fraction("7").unwrap(), int(7));
        assert!(parse_fraction("1.5").is_err());
        assert!(parse_fraction("1/0").is_err());
    }

    #[test]
    fn lowest_terms() {
        let r = frac(10, 4);
        assert_eq!(r.numer(), &BigInt::from(5));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(to_f64(&r), 2.5);
    }
}
