//! Exact rational scalars.
//!
//! `BigRational` already keeps values reduced with a positive denominator,
//! so the kernel uses it directly and only adds a few constructors and a
//! compact printer.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational as Rational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Integer value if the rational is integral and fits in `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.to_integer()).ok()
}

/// Prints `3`, `-1/6`, ... (no parentheses).
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Coefficient prefix for a term in a sum: `""` for 1, `"-"` for -1,
/// `"3*"`, `"(1/3)*"` otherwise. The sign is left to the caller when
/// `signed` is false.
pub(crate) fn coeff_prefix(c: &Rational, signed: bool) -> String {
    let c = if signed { c.clone() } else { c.abs() };
    if c.is_one() {
        String::new()
    } else if (-c.clone()).is_one() {
        "-".to_string()
    } else if c.is_integer() {
        format!("{}*", c.numer())
    } else {
        format!("({})*", fmt_rational(&c))
    }
}

/// Parses `"7"`, `"-2"`, `"1/3"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(0, 5), zero());
        assert_eq!(zero().denom(), &BigInt::from(1));
    }

    #[test]
    fn printing_and_parsing() {
        assert_eq!(fmt_rational(&rat(-1, 6)), "-1/6");
        assert_eq!(fmt_rational(&int(108)), "108");
        assert_eq!(parse_rational("1/3"), Some(rat(1, 3)));
        assert_eq!(parse_rational("-2"), Some(int(-2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(coeff_prefix(&int(-1), true), "-");
        assert_eq!(coeff_prefix(&rat(1, 3), true), "(1/3)*");
    }
}
