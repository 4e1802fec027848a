//! Exact arithmetic: rationals, factorization, prime-exponent vectors and
//! rigorous enclosures of their logarithms.

mod digits;
mod factor;
mod interval;
mod ppp;

pub use digits::{digit_count, exact_digit_count, leading_digits, scientific};
pub use factor::{factorize, is_prime, sieve};
pub use interval::Interval;
pub use ppp::PrimePowerProduct;
pub use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Parses `"p/q"` or `"p"` with an optional leading minus. Decimals,
/// whitespace, a plus sign and a zero denominator are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |reason| Error::Parse {
        input: s.to_string(),
        reason,
    };
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(err("numerator must be a non-empty run of decimal digits"));
    }
    let mut n: Integer = num.parse().map_err(|_| err("bad numerator"))?;
    if negative {
        n = -n;
    }
    let d: Integer = match den {
        None => Integer::from(1),
        Some(d) if digits(d) => d.parse().map_err(|_| err("bad denominator"))?,
        Some(_) => return Err(err("denominator must be a non-empty run of decimal digits")),
    };
    if d == 0 {
        return Err(err("zero denominator"));
    }
    Ok(Rational::from((n, d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("4/3").unwrap(), Rational::from((4, 3)));
        assert_eq!(parse_rational("-1/2").unwrap(), Rational::from((-1, 2)));
        assert_eq!(parse_rational("6/4").unwrap(), Rational::from((3, 2)));
        assert_eq!(parse_rational("288").unwrap(), 288);
        assert_eq!(parse_rational("0").unwrap(), 0);
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "1.5", "1/0", "+3", " 1", "1/", "/2", "a/b", "1/-2", "--1", "1e3"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    proptest! {
        #[test]
        fn render_then_parse_round_trips(n in -10_000_000i64..10_000_000, d in 1i64..10_000_000) {
            let q = Rational::from((n, d));
            prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
        }
    }
}
