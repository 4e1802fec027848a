use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::factor::{factorize, is_prime};
use super::interval::Interval;
use crate::error::{check_precision, Error, Result};

/// A positive real `∏ p^e_p` over finitely many primes with rational exponents.
///
/// Factors are kept sorted by prime with no zero exponents, so two values are
/// equal exactly when their factor lists are equal. The empty list is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PrimePowerProduct {
    factors: Vec<(Integer, Rational)>,
}

impl PrimePowerProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a product from arbitrary `(prime, exponent)` pairs, merging
    /// repeated primes and dropping zero exponents.
    pub fn from_factors<I, P, E>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (P, E)>,
        P: Into<Integer>,
        E: Into<Rational>,
    {
        let mut list: Vec<(Integer, Rational)> = Vec::new();
        for (p, e) in factors {
            let p = p.into();
            if !is_prime(&p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
            list.push((p, e.into()));
        }
        list.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Integer, Rational)> = Vec::with_capacity(list.len());
        for (p, e) in list {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        Ok(PrimePowerProduct { factors: merged })
    }

    /// Exact prime-exponent vector of a positive rational.
    pub fn from_rational(q: &Rational) -> Result<Self> {
        if *q <= 0 {
            return Err(Error::NonPositive {
                what: "rational",
                value: q.clone(),
            });
        }
        let num = factorize(q.numer());
        let den = factorize(q.denom());
        // numerator and denominator are coprime, so the primes are disjoint
        let mut factors: Vec<(Integer, Rational)> = num
            .into_iter()
            .map(|(p, e)| (p, Rational::from(e)))
            .chain(den.into_iter().map(|(p, e)| (p, -Rational::from(e))))
            .collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(PrimePowerProduct { factors })
    }

    pub fn from_integer(n: impl Into<Integer>) -> Result<Self> {
        Self::from_rational(&Rational::from(n.into()))
    }

    pub fn factors(&self) -> &[(Integer, Rational)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when every exponent is an integer, i.e. the value is rational.
    pub fn is_rational(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e.denom() == 1)
    }

    /// True when every exponent is a nonnegative integer.
    pub fn is_integer(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e.denom() == 1 && *e > 0)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = Rational::from(&a[i].1 + &b[j].1);
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        PrimePowerProduct { factors: out }
    }

    pub fn pow(&self, r: &Rational) -> Self {
        if *r == 0 {
            return Self::one();
        }
        PrimePowerProduct {
            factors: self
                .factors
                .iter()
                .map(|(p, e)| (p.clone(), Rational::from(e * r)))
                .collect(),
        }
    }

    pub fn recip(&self) -> Self {
        self.pow(&Rational::from(-1))
    }

    /// Exact rational value; fails when some exponent is fractional.
    pub fn to_rational(&self) -> Result<Rational> {
        let mut num = Integer::from(1);
        let mut den = Integer::from(1);
        for (p, e) in &self.factors {
            if *e.denom() != 1 {
                return Err(Error::NonIntegralExponent {
                    prime: p.to_string(),
                    exponent: e.clone(),
                });
            }
            let k = e
                .numer()
                .clone()
                .abs()
                .to_u32()
                .ok_or_else(|| Error::InvalidArgument(format!("exponent {e} too large")))?;
            let power = Integer::from(p.pow(k));
            if *e > 0 {
                num *= power;
            } else {
                den *= power;
            }
        }
        Ok(Rational::from((num, den)))
    }

    /// Enclosure of `Σ e_p · ln p`.
    pub fn ln(&self, precision_bits: u32) -> Result<Interval> {
        check_precision(precision_bits)?;
        Ok(self.weighted_sum(precision_bits, LogBase::E))
    }

    /// Enclosure of `Σ e_p · log10 p`.
    pub fn log10(&self, precision_bits: u32) -> Result<Interval> {
        check_precision(precision_bits)?;
        Ok(self.weighted_sum(precision_bits, LogBase::Ten))
    }

    fn weighted_sum(&self, prec: u32, base: LogBase) -> Interval {
        self.factors
            .iter()
            .fold(Interval::zero(prec), |acc, (p, e)| {
                acc.add(&cached_log(base, p, prec).mul_rational(e))
            })
    }

    /// Enclosure of the value itself.
    pub fn value(&self, precision_bits: u32) -> Result<Interval> {
        if let Ok(q) = self.to_rational() {
            check_precision(precision_bits)?;
            return Ok(Interval::from_rational(&q, precision_bits));
        }
        Ok(self.ln(precision_bits)?.exp())
    }
}

impl Mul for &PrimePowerProduct {
    type Output = PrimePowerProduct;

    fn mul(self, rhs: Self) -> PrimePowerProduct {
        PrimePowerProduct::multiply(self, rhs)
    }
}

impl Mul for PrimePowerProduct {
    type Output = PrimePowerProduct;

    fn mul(self, rhs: Self) -> PrimePowerProduct {
        PrimePowerProduct::multiply(&self, &rhs)
    }
}

/// Renders as `p^e*q^f`, with fractional or negative exponents in
/// parentheses, e.g. `2^(5/3)*3^(-1)`; the empty product renders as `1`.
impl fmt::Display for PrimePowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else if *e.denom() == 1 && *e > 0 {
                write!(f, "{p}^{e}")?;
            } else {
                write!(f, "{p}^({e})")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum LogBase {
    E,
    Ten,
}

impl LogBase {
    fn eval(self, p: &Integer, prec: u32) -> Interval {
        match self {
            LogBase::E => Interval::ln_integer(p, prec),
            LogBase::Ten => Interval::log10_integer(p, prec),
        }
    }
}

type LogKey = (LogBase, u64, u32);

/// Per-thread memo of prime logarithms; digit counting and numeric
/// verification hit the same few primes over and over.
fn cached_log(base: LogBase, p: &Integer, prec: u32) -> Interval {
    const CAPACITY: usize = 1 << 14;
    thread_local! {
        static CACHE: RefCell<HashMap<LogKey, Interval>> = RefCell::new(HashMap::new());
    }
    let Some(small) = p.to_u64() else {
        return base.eval(p, prec);
    };
    let key = (base, small, prec);
    CACHE.with(|cache| {
        let mut cache = cache.borrow_mut();
        if let Some(iv) = cache.get(&key) {
            return iv.clone();
        }
        if cache.len() >= CAPACITY {
            cache.clear();
        }
        let iv = base.eval(p, prec);
        cache.insert(key, iv.clone());
        iv
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn ppp(f: &[(u32, i64, i64)]) -> PrimePowerProduct {
        PrimePowerProduct::from_factors(f.iter().map(|&(p, n, d)| (p, q(n, d)))).unwrap()
    }

    #[test]
    fn from_rational_examples() {
        assert!(PrimePowerProduct::from_rational(&q(1, 1)).unwrap().is_one());
        assert_eq!(
            PrimePowerProduct::from_rational(&q(2, 3)).unwrap(),
            ppp(&[(2, 1, 1), (3, -1, 1)])
        );
        assert_eq!(
            PrimePowerProduct::from_rational(&q(30375, 8)).unwrap(),
            ppp(&[(2, -3, 1), (3, 5, 1), (5, 3, 1)])
        );
    }

    #[test]
    fn from_rational_rejects_non_positive() {
        assert!(matches!(
            PrimePowerProduct::from_rational(&q(0, 1)),
            Err(Error::NonPositive { .. })
        ));
        assert!(PrimePowerProduct::from_rational(&q(-2, 3)).is_err());
    }

    #[test]
    fn from_factors_validates_and_merges() {
        assert!(PrimePowerProduct::from_factors([(4u32, q(1, 1))]).is_err());
        let merged = ppp(&[(3, 1, 2), (2, 1, 1), (3, -1, 2)]);
        assert_eq!(merged, ppp(&[(2, 1, 1)]));
    }

    #[test]
    fn mul_examples() {
        assert!(ppp(&[(2, 1, 1)]).multiply(&ppp(&[(2, -1, 1)])).is_one());
        assert_eq!(
            ppp(&[(2, 1, 2)]).multiply(&ppp(&[(2, 1, 3)])),
            ppp(&[(2, 5, 6)])
        );
        assert_eq!(
            ppp(&[(2, 5, 1), (3, 2, 1)]) * ppp(&[(2, 3, 1)]),
            ppp(&[(2, 8, 1), (3, 2, 1)])
        );
    }

    #[test]
    fn pow_examples() {
        let u = ppp(&[(2, 5, 1), (3, 2, 1)]);
        assert!(u.pow(&q(0, 1)).is_one());
        assert_eq!(ppp(&[(2, 4, 1)]).pow(&q(-1, 2)), ppp(&[(2, -2, 1)]));
        assert_eq!(
            ppp(&[(2, -2, 1)]).to_rational().unwrap(),
            q(1, 4)
        );
        assert_eq!(u.pow(&q(1, 3)), ppp(&[(2, 5, 3), (3, 2, 3)]));
    }

    #[test]
    fn to_rational_examples() {
        assert_eq!(PrimePowerProduct::one().to_rational().unwrap(), 1);
        assert_eq!(
            ppp(&[(2, -1, 1), (3, -1, 1)]).to_rational().unwrap(),
            q(1, 6)
        );
        assert!(matches!(
            ppp(&[(2, 1, 2)]).to_rational(),
            Err(Error::NonIntegralExponent { .. })
        ));
    }

    #[test]
    fn log10_examples() {
        let empty = PrimePowerProduct::one().log10(128).unwrap();
        assert!(empty.contains_zero());
        assert!(empty.width() < Float::with_val(64, Float::i_exp(1, -124)));

        let ten = PrimePowerProduct::from_integer(10).unwrap().log10(64).unwrap();
        assert!(ten.contains(&Float::with_val(64, 1)));

        // 48·log10(2) computed independently at 1024 bits
        let two48 = ppp(&[(2, 48, 1)]).log10(128).unwrap();
        let reference = Float::with_val(1024, 2).log10() * 48u32;
        assert!(two48.lo() <= &reference && &reference <= two48.hi());
        assert!((reference.to_f64() - 14.449_439_791_871_097).abs() < 1e-12);
    }

    #[test]
    fn log10_width_shrinks_with_precision() {
        let u = ppp(&[(2, 5, 3), (3, -7, 2), (7, 11, 1)]);
        let coarse = u.log10(64).unwrap().width();
        let fine = u.log10(256).unwrap().width();
        assert!(fine < coarse);
    }

    #[test]
    fn precision_floor() {
        assert!(PrimePowerProduct::one().log10(32).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(PrimePowerProduct::one().to_string(), "1");
        assert_eq!(ppp(&[(2, 5, 3), (3, -1, 1), (5, 1, 1), (7, 2, 1)]).to_string(), "2^(5/3)*3^(-1)*5*7^2");
    }
}
