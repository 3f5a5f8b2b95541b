//! Exact rational scalars. `num`'s `BigRational` already maintains the
//! reduced-form invariants (gcd 1, positive denominator); this module adds
//! the `p/q` string round-trip used by the report format.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// Serializes a rational as `p` or `p/q` with `q > 0`.
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn rat_from_string(s: &str) -> Result<Rational> {
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{}: {:?}", msg, s),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Formats a rational for pretty-printed polynomials (no sign; caller
/// handles it).
pub fn rat_abs_string(r: &Rational) -> String {
    rat_to_string(&r.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["0", "7", "-3", "22/7", "-5/9"] {
            let r = rat_from_string(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        // canonicalization on parse
        assert_eq!(rat_to_string(&rat_from_string("4/6").unwrap()), "2/3");
        assert_eq!(rat_to_string(&rat_from_string("3/-9").unwrap()), "-1/3");
        assert!(rat_from_string("1/0").is_err());
    }
}
