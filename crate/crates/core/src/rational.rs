//! Exact rationals and their `p/q` string encoding.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace ignored). Zero denominators are rejected.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).ok()?;
    let q = BigInt::from_str(q).ok()?;
    if q == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding() {
        assert_eq!(format(&int(-1)), "-1");
        assert_eq!(format(&ratio(2, 4)), "1/2");
        assert_eq!(format(&ratio(3, -6)), "-1/2");
        assert_eq!(parse("3/2"), Some(ratio(3, 2)));
        assert_eq!(parse(" -4/8 "), Some(ratio(-1, 2)));
        assert_eq!(parse("7"), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(parse(""), None);
    }
}
