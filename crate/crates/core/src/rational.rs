//! The universal scalar type: arbitrary-precision rationals, always in
//! lowest terms with positive denominator, plus parsing and rendering of
//! the `p/q` wire format used by the CLI and JSON exports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar. `num_rational` keeps the invariants we need:
/// lowest terms, denominator > 0, exact arithmetic throughout.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Integer power with the empty-product convention 0^0 = 1.
pub fn pow_u(base: &Rat, exp: u32) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    let mut acc = base.clone();
    for _ in 1..exp {
        acc *= base;
    }
    acc
}

pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

/// Parses `p/q` or a bare integer literal (optionally signed).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = match den {
        Some(q) => q.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(p, q))
}

/// Renders integers bare and proper rationals as `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Extracts a nonnegative integer from a rational, for operations whose
/// domain is genuinely N (evaluation points x of the terminating sums).
pub fn as_natural(r: &Rat, what: &'static str) -> Result<u32> {
    if r.denom().is_one() && !r.is_negative() {
        if let Ok(v) = u32::try_from(r.numer().clone()) {
            return Ok(v);
        }
    }
    Err(Error::NotNatural(what, format_rat(r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/4"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(format_rat(&parse_rat("2/-4").unwrap()), "-1/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(pow_u(&rat(0), 0), rat(1));
        assert_eq!(pow_u(&rat(0), 5), rat(0));
        assert_eq!(pow_u(&ratio(1, 2), 3), ratio(1, 8));
    }
}
