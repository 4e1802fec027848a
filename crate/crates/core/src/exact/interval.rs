//! Closed real intervals with outward-rounded MPFR endpoints.

use std::cmp::Ordering;

use rug::float::Round;
use rug::{Float, Integer, Rational};

/// `[lo, hi]` with `lo <= hi`; every operation rounds `lo` down and `hi` up,
/// so the true value is always enclosed.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

impl Interval {
    pub fn new(lo: Float, hi: Float) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn zero(prec: u32) -> Self {
        Interval {
            lo: Float::new(prec),
            hi: Float::new(prec),
        }
    }

    /// Tightest enclosure of `q` at `prec` bits.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (lo, _) = Float::with_val_round(prec, q, Round::Down);
        let (hi, _) = Float::with_val_round(prec, q, Round::Up);
        Interval { lo, hi }
    }

    /// Enclosure of `ln n` for `n >= 1`.
    pub fn ln_integer(n: &Integer, prec: u32) -> Self {
        Self::monotone_of_integer(n, prec, Float::ln_round)
    }

    /// Enclosure of `log10 n` for `n >= 1`.
    pub fn log10_integer(n: &Integer, prec: u32) -> Self {
        Self::monotone_of_integer(n, prec, Float::log10_round)
    }

    fn monotone_of_integer(
        n: &Integer,
        prec: u32,
        f: fn(&mut Float, Round) -> Ordering,
    ) -> Self {
        assert!(*n >= 1, "logarithm of non-positive integer");
        let (mut lo, exact) = Float::with_val_round(prec, n, Round::Down);
        if exact == Ordering::Equal {
            // Exact argument: the correctly rounded result is at most one ulp
            // from the true value.
            let ord = f(&mut lo, Round::Down);
            let mut hi = lo.clone();
            if ord != Ordering::Equal {
                hi.next_up();
            }
            return Interval { lo, hi };
        }
        let (mut hi, _) = Float::with_val_round(prec, n, Round::Up);
        f(&mut lo, Round::Down);
        f(&mut hi, Round::Up);
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn width(&self) -> Float {
        Float::with_val_round(self.prec(), &self.hi - &self.lo, Round::Up).0
    }

    pub fn midpoint(&self) -> Float {
        let mut m = Float::with_val(self.prec() + 1, &self.lo + &self.hi);
        m /= 2;
        m
    }

    pub fn contains(&self, x: &Float) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let prec = self.prec().max(other.prec());
        Interval {
            lo: Float::with_val_round(prec, &self.lo + &other.lo, Round::Down).0,
            hi: Float::with_val_round(prec, &self.hi + &other.hi, Round::Up).0,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: Float::with_val(self.hi.prec(), -&self.hi),
            hi: Float::with_val(self.lo.prec(), -&self.lo),
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let prec = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| Float::with_val_round(prec, *a * *b, Round::Down).0)
            .min_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
            .expect("four products");
        let hi = pairs
            .iter()
            .map(|(a, b)| Float::with_val_round(prec, *a * *b, Round::Up).0)
            .max_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal))
            .expect("four products");
        Interval { lo, hi }
    }

    pub fn mul_rational(&self, q: &Rational) -> Interval {
        self.mul(&Interval::from_rational(q, self.prec()))
    }

    pub fn exp(&self) -> Interval {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        lo.exp_round(Round::Down);
        hi.exp_round(Round::Up);
        Interval { lo, hi }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let hi = if Float::with_val(self.prec(), -&self.lo) > self.hi {
                Float::with_val(self.prec(), -&self.lo)
            } else {
                self.hi.clone()
            };
            Interval {
                lo: Float::new(self.prec()),
                hi,
            }
        }
    }
}
