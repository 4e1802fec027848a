//! Solutions of `x^y = y^x` and `x^y·y^x = v^w·w^v`.
//!
//! Equalities are decided exactly on prime-exponent vectors: `x^y·y^x` has
//! vector `y·vec(x) + x·vec(y)`, which is computable whenever the scalar
//! exponents `x` and `y` are rational.

use std::fmt;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{check_precision, Error, Result};
use crate::exact::{Interval, PrimePowerProduct};

/// Where a tuple came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Euler(u64),
    General { a: Rational, b: Rational, c: Rational },
    Family { b: u32, c: u32 },
    Manual,
}

/// One tuple `(x, y, v, w)` of positive reals, candidate solution of
/// `x^y·y^x = v^w·w^v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionTuple {
    pub x: PrimePowerProduct,
    pub y: PrimePowerProduct,
    pub v: PrimePowerProduct,
    pub w: PrimePowerProduct,
    pub provenance: Provenance,
}

impl SolutionTuple {
    /// Tuple of positive rationals with `Manual` provenance.
    pub fn manual(x: &Rational, y: &Rational, v: &Rational, w: &Rational) -> Result<Self> {
        Ok(SolutionTuple {
            x: PrimePowerProduct::from_rational(x)?,
            y: PrimePowerProduct::from_rational(y)?,
            v: PrimePowerProduct::from_rational(v)?,
            w: PrimePowerProduct::from_rational(w)?,
            provenance: Provenance::Manual,
        })
    }

    pub fn values(&self) -> [&PrimePowerProduct; 4] {
        [&self.x, &self.y, &self.v, &self.w]
    }

    /// The four values as rationals, when none has a fractional exponent.
    pub fn to_rationals(&self) -> Result<[Rational; 4]> {
        let names = ["x", "y", "v", "w"];
        let mut out: [Rational; 4] = Default::default();
        for (i, u) in self.values().into_iter().enumerate() {
            out[i] = u.to_rational().map_err(|_| Error::NonRationalTuple(names[i]))?;
        }
        Ok(out)
    }

    pub fn is_rational(&self) -> bool {
        self.values().iter().all(|u| u.is_rational())
    }

    pub fn is_integral(&self) -> bool {
        self.values().iter().all(|u| u.is_integer())
    }
}

impl fmt::Display for SolutionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |u: &PrimePowerProduct| match u.to_rational() {
            Ok(q) => q.to_string(),
            Err(_) => u.to_string(),
        };
        write!(
            f,
            "({}, {}, {}, {})",
            show(&self.x),
            show(&self.y),
            show(&self.v),
            show(&self.w)
        )
    }
}

/// `x = (1+1/n)^n`, `y = (1+1/n)^(n+1)`.
pub fn euler_solution(n: u64) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let base = Rational::from((n + 1, n));
    let e = u32::try_from(n).map_err(|_| Error::InvalidArgument(format!("n = {n} too large")))?;
    let x = Rational::from((&base).pow(e as i32));
    let y = Rational::from(&x * &base);
    Ok((x, y))
}

/// Vector of `base^exponent` where the exponent is a rational scalar.
fn power_vector(base: &PrimePowerProduct, exponent: &Rational) -> PrimePowerProduct {
    base.pow(exponent)
}

/// Exact test of `x^y = y^x` for positive rationals.
pub fn verify_power_equation(x: &Rational, y: &Rational) -> Result<bool> {
    let vx = PrimePowerProduct::from_rational(x)?;
    let vy = PrimePowerProduct::from_rational(y)?;
    Ok(power_vector(&vx, y) == power_vector(&vy, x))
}

/// Exponent vectors of both sides of `x^y·y^x = v^w·w^v`; requires rational values.
pub fn equation_sides(t: &SolutionTuple) -> Result<(PrimePowerProduct, PrimePowerProduct)> {
    let [x, y, v, w] = t.to_rationals()?;
    let left = power_vector(&t.x, &y) * power_vector(&t.y, &x);
    let right = power_vector(&t.v, &w) * power_vector(&t.w, &v);
    Ok((left, right))
}

/// Exact test of `x^y·y^x = v^w·w^v` for a rational tuple.
pub fn verify_equation(t: &SolutionTuple) -> Result<bool> {
    let (l, r) = equation_sides(t)?;
    Ok(l == r)
}

/// Outcome of [`numeric_verify_equation`].
#[derive(Debug, Clone)]
pub struct NumericCheck {
    pub holds: bool,
    /// Enclosure of `ln(x^y·y^x) − ln(v^w·w^v)`.
    pub residual: Interval,
}

/// Interval test of `x^y·y^x = v^w·w^v` for tuples with irrational entries.
///
/// Holds when the residual enclosure contains zero and is narrower than
/// `2^(−precision_bits/2)`.
pub fn numeric_verify_equation(t: &SolutionTuple, precision_bits: u32) -> Result<NumericCheck> {
    check_precision(precision_bits)?;
    let prec = precision_bits + 32;
    let side = |a: &PrimePowerProduct, b: &PrimePowerProduct| -> Result<Interval> {
        let (ln_a, ln_b) = (a.ln(prec)?, b.ln(prec)?);
        Ok(b.value(prec)?.mul(&ln_a).add(&a.value(prec)?.mul(&ln_b)))
    };
    let residual = side(&t.x, &t.y)?.sub(&side(&t.v, &t.w)?);
    let tolerance = Float::with_val(64, Float::i_exp(1, -(precision_bits as i32 / 2)));
    let holds = residual.contains_zero() && residual.width() < tolerance;
    Ok(NumericCheck { holds, residual })
}

/// Substituting `y = a·x`, `v = b·x`, `w = c·x` and solving for `x`:
/// `x = (b^c·c^b / a)^(1/(a−b−c+1))`.
pub fn general_solution(a: &Rational, b: &Rational, c: &Rational) -> Result<SolutionTuple> {
    if *a == 0 {
        return Err(Error::DegenerateParameters("a = 0".into()));
    }
    let denom = Rational::from(a - b) - c + 1u32;
    if denom == 0 {
        return Err(Error::DegenerateParameters(format!(
            "a + 1 = b + c ({a} + 1 = {b} + {c})"
        )));
    }
    for (name, value) in [("a", a), ("b", b), ("c", c)] {
        if *value <= 0 {
            return Err(Error::NonPositiveParameter {
                name,
                value: value.clone(),
            });
        }
    }
    let (va, vb, vc) = (
        PrimePowerProduct::from_rational(a)?,
        PrimePowerProduct::from_rational(b)?,
        PrimePowerProduct::from_rational(c)?,
    );
    let base = vb.pow(c) * vc.pow(b) * va.recip();
    let x = base.pow(&denom.recip());
    Ok(SolutionTuple {
        y: &va * &x,
        v: &vb * &x,
        w: &vc * &x,
        x,
        provenance: Provenance::General {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        },
    })
}

/// The `a = b + c` family: `x = b^c·c^b/(b+c)`, `y = b^c·c^b`, `v = b·x`,
/// `w = c·x`, all rational.
pub fn rational_family(b: u32, c: u32) -> Result<SolutionTuple> {
    for (name, value) in [("b", b), ("c", c)] {
        if value == 0 {
            return Err(Error::NonPositiveParameter {
                name,
                value: Rational::new(),
            });
        }
    }
    let y = Integer::from(Integer::u_pow_u(b, c)) * Integer::from(Integer::u_pow_u(c, b));
    let x = Rational::from((y.clone(), b + c));
    let v = Rational::from(&x * b);
    let w = Rational::from(&x * c);
    let mut t = SolutionTuple::manual(&x, &Rational::from(y), &v, &w)?;
    t.provenance = Provenance::Family { b, c };
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    Nontrivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivialityReason {
    /// `{x, y} = {v, w}` as multisets.
    MultisetEqual,
    /// `1` is among the values.
    ContainsOne,
    None,
}

impl TrivialityReason {
    pub fn code(self) -> &'static str {
        match self {
            TrivialityReason::MultisetEqual => "multiset-equal",
            TrivialityReason::ContainsOne => "contains-one",
            TrivialityReason::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrivialityVerdict {
    pub kind: Triviality,
    pub reason: TrivialityReason,
}

/// Two-rule triviality heuristic. Note that this places the borderline
/// tuples `(1/2, 1/2, 1/2, 1)` and `(4, 3/2, 1, 81/2)` on the trivial side
/// (both contain a `1`); callers wanting a stricter notion should inspect
/// the reason code.
pub fn classify_triviality(t: &SolutionTuple) -> TrivialityVerdict {
    let same_multiset =
        (t.x == t.v && t.y == t.w) || (t.x == t.w && t.y == t.v);
    let (kind, reason) = if same_multiset {
        (Triviality::Trivial, TrivialityReason::MultisetEqual)
    } else if t.values().iter().any(|u| u.is_one()) {
        (Triviality::Trivial, TrivialityReason::ContainsOne)
    } else {
        (Triviality::Nontrivial, TrivialityReason::None)
    };
    TrivialityVerdict { kind, reason }
}

/// All family tuples with `1 <= b <= b_max`, `1 <= c <= c_max` whose four
/// values are integers, in `(b, c)` lexicographic order.
pub fn search_integer_solutions(b_max: u32, c_max: u32) -> Result<Vec<SolutionTuple>> {
    if b_max == 0 || c_max == 0 {
        return Err(Error::InvalidArgument("search bounds must be >= 1".into()));
    }
    let grid: Vec<(u32, u32)> = (1..=b_max)
        .flat_map(|b| (1..=c_max).map(move |c| (b, c)))
        .collect();
    let found: Vec<Option<SolutionTuple>> = grid
        .par_iter()
        .map(|&(b, c)| {
            // x integral iff (b+c) | b^c·c^b; v, w then follow.
            let y = Integer::from(Integer::u_pow_u(b, c)) * Integer::from(Integer::u_pow_u(c, b));
            if !y.is_divisible_u(b + c) {
                return Ok(None);
            }
            let t = rational_family(b, c)?;
            debug_assert!(t.is_integral());
            Ok(verify_equation(&t)?.then_some(t))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}
