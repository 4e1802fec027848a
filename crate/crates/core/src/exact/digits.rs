use rug::float::Round;
use rug::ops::PowAssign;
use rug::{Float, Integer};

use super::ppp::PrimePowerProduct;
use crate::error::{Error, Result};

const START_BITS: u32 = 256;
const MAX_BITS: u32 = 8192;

/// Number of decimal digits of a positive integer given by its exponent vector.
///
/// Works from an enclosure of `log10 u`, doubling the precision from 256 up to
/// 8192 bits until the enclosure sits strictly between two integers. Values
/// whose logarithm is (or is indistinguishable from) an integer are expanded
/// exactly.
pub fn digit_count(u: &PrimePowerProduct) -> Result<u64> {
    if !u.is_integer() {
        return Err(Error::NonIntegerValue);
    }
    if u.is_one() {
        return Ok(1);
    }
    let mut prec = START_BITS;
    while prec <= MAX_BITS {
        let iv = u.log10(prec)?;
        let lo = floor_to_integer(iv.lo());
        let hi = floor_to_integer(iv.hi());
        if lo == hi && *iv.lo() != Float::with_val(prec, &lo) {
            return to_u64(lo + 1u32);
        }
        prec *= 2;
    }
    exact_digit_count(u)
}

fn floor_to_integer(f: &Float) -> Integer {
    f.to_integer_round(Round::Down)
        .map(|(i, _)| i)
        .expect("finite log")
}

fn to_u64(n: Integer) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::InvalidArgument("digit count overflows u64".into()))
}

/// Digit count by expanding the integer in full.
pub fn exact_digit_count(u: &PrimePowerProduct) -> Result<u64> {
    if !u.is_integer() {
        return Err(Error::NonIntegerValue);
    }
    let n = u.to_rational()?.into_numer_denom().0;
    Ok(n.to_string_radix(10).len() as u64)
}

/// Scientific form of a positive integer: the mantissa in `[1, 10)` rounded
/// to `significant` digits, and the decimal exponent.
pub fn scientific(u: &PrimePowerProduct, significant: usize) -> Result<(String, u64)> {
    mantissa(u, significant, Round::Nearest)
}

/// The first `count` decimal digits of a positive integer, as a mantissa
/// `d.ddd` (truncated, not rounded), and the decimal exponent.
pub fn leading_digits(u: &PrimePowerProduct, count: usize) -> Result<(String, u64)> {
    mantissa(u, count, Round::Down)
}

fn mantissa(u: &PrimePowerProduct, significant: usize, round: Round) -> Result<(String, u64)> {
    let digits = digit_count(u)?;
    let exponent = digits - 1;
    let prec = START_BITS + (64 - exponent.leading_zeros()) + 4 * significant as u32;
    let log = u.log10(prec)?.midpoint();
    let mut frac = Float::with_val(prec, &log - Integer::from(exponent));
    // log10 of a power of ten may land a hair below the integer
    if frac < 0 {
        frac = Float::new(prec);
    }
    let mut m = Float::with_val(prec, 10);
    m.pow_assign(&frac);
    let s = m.to_string_radix_round(10, Some(significant.max(1)), round);
    Ok((trim_exponent(&s), exponent))
}

fn trim_exponent(s: &str) -> String {
    // MPFR renders e.g. "6.843e0"; the exponent is reported separately.
    match s.find('e') {
        Some(i) if &s[i..] == "e0" => s[..i].to_string(),
        _ => s.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    fn int(n: u64) -> PrimePowerProduct {
        PrimePowerProduct::from_integer(n).unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(digit_count(&int(1)).unwrap(), 1);
        assert_eq!(digit_count(&int(9)).unwrap(), 1);
        assert_eq!(digit_count(&int(10)).unwrap(), 2);
        assert_eq!(digit_count(&int(1000)).unwrap(), 4);
    }

    #[test]
    fn two_to_the_48() {
        let u = PrimePowerProduct::from_factors([(2u32, Rational::from(48))]).unwrap();
        assert_eq!(digit_count(&u).unwrap(), 15);
        assert_eq!(281_474_976_710_656u64.to_string().len(), 15);
    }

    #[test]
    fn rejects_non_integers() {
        let half = PrimePowerProduct::from_rational(&Rational::from((1, 2))).unwrap();
        assert_eq!(digit_count(&half), Err(Error::NonIntegerValue));
        let root = PrimePowerProduct::from_factors([(2u32, Rational::from((1, 2)))]).unwrap();
        assert_eq!(digit_count(&root), Err(Error::NonIntegerValue));
    }

    #[test]
    fn agrees_with_expansion_below_a_million() {
        for n in 1u64..1_000_000 {
            assert_eq!(
                digit_count(&int(n)).unwrap(),
                n.to_string().len() as u64,
                "n = {n}"
            );
        }
    }

    #[test]
    fn agrees_with_expansion_for_powers_of_two() {
        for k in 0u32..=512 {
            let u = PrimePowerProduct::from_factors([(2u32, Rational::from(k))]).unwrap();
            let expanded = (Integer::from(1) << k).to_string().len() as u64;
            assert_eq!(digit_count(&u).unwrap(), expanded, "k = {k}");
        }
    }

    #[test]
    fn powers_of_ten_take_the_exact_route() {
        let u = PrimePowerProduct::from_factors([(2u32, 40), (5u32, 40)]).unwrap();
        assert_eq!(digit_count(&u).unwrap(), 41);
    }

    #[test]
    fn scientific_of_a_small_value() {
        let (m, e) = scientific(&int(281_474_976_710_656), 5).unwrap();
        assert_eq!((m.as_str(), e), ("2.8147", 14));
        let (m, e) = scientific(&int(1000), 3).unwrap();
        assert_eq!((m.as_str(), e), ("1.00", 3));
        let (m, e) = scientific(&int(199_999), 3).unwrap();
        assert_eq!((m.as_str(), e), ("2.00", 5));
        let (m, e) = leading_digits(&int(199_999), 3).unwrap();
        assert_eq!((m.as_str(), e), ("1.99", 5));
    }
}
