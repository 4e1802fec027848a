//! Product transforms built from solutions of the two exponential equations.
//!
//! A solution `x^y = y^x` with `x, y > 1` becomes a pair `X = 1 − 1/x`,
//! `Y = 1 − 1/y` in `(0, 1)`, and the identity `y^x = x^y` turns into the
//! equality of two visible-point products with arguments swapped. Likewise a
//! solution of `x^y·y^x = v^w·w^v` gives a quadruple `(X, Y, V, W)` with
//! `U = (u − 1)/u`, and an equality of products of two products each.

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::exact::PrimePowerProduct;
use crate::product::{
    check_domain, eval_product, rounding_slack, tail_bound, EvalOptions, EvalReport, Form,
};
use crate::solutions::{general_solution, verify_equation, verify_power_equation, SolutionTuple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformParams {
    Pair { x: Rational, y: Rational },
    Quad { x: Rational, y: Rational, v: Rational, w: Rational },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Pair,
    Quad,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformSource {
    Euler(u64),
    Family { a: Rational, b: Rational, c: Rational },
    Manual,
}

/// The scalar equality underlying an instance, as exponent vectors: for a
/// pair `x^y` and `y^x`, for a quadruple `x^y·y^x` and `v^w·w^v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarIdentity {
    pub left: PrimePowerProduct,
    pub right: PrimePowerProduct,
}

impl ScalarIdentity {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformInstance {
    pub params: TransformParams,
    pub source: TransformSource,
    pub scalar_identity: ScalarIdentity,
}

/// `1/(1 − U)`, the solution value a parameter stands for.
pub fn solution_value(param: &Rational) -> Rational {
    Rational::from(1 - param).recip()
}

/// `(u − 1)/u`, the inverse of [`solution_value`].
pub fn parameter_of(u: &Rational) -> Rational {
    Rational::from(u - 1u32) / u
}

impl TransformInstance {
    /// Pair instance from explicit parameters.
    pub fn pair(x: Rational, y: Rational) -> Result<Self> {
        Self::pair_with_source(x, y, TransformSource::Manual)
    }

    /// Quadruple instance from explicit parameters.
    pub fn quad(x: Rational, y: Rational, v: Rational, w: Rational) -> Result<Self> {
        Self::quad_with_source(x, y, v, w, TransformSource::Manual)
    }

    fn pair_with_source(x: Rational, y: Rational, source: TransformSource) -> Result<Self> {
        check_domain("X", &x)?;
        check_domain("Y", &y)?;
        let (sx, sy) = (solution_value(&x), solution_value(&y));
        let (vx, vy) = (
            PrimePowerProduct::from_rational(&sx)?,
            PrimePowerProduct::from_rational(&sy)?,
        );
        let scalar_identity = ScalarIdentity {
            left: vx.pow(&sy),
            right: vy.pow(&sx),
        };
        Ok(TransformInstance {
            params: TransformParams::Pair { x, y },
            source,
            scalar_identity,
        })
    }

    fn quad_with_source(
        x: Rational,
        y: Rational,
        v: Rational,
        w: Rational,
        source: TransformSource,
    ) -> Result<Self> {
        for (name, p) in [("X", &x), ("Y", &y), ("V", &v), ("W", &w)] {
            check_domain(name, p)?;
        }
        let tuple = SolutionTuple::manual(
            &solution_value(&x),
            &solution_value(&y),
            &solution_value(&v),
            &solution_value(&w),
        )?;
        let (left, right) = crate::solutions::equation_sides(&tuple)?;
        Ok(TransformInstance {
            params: TransformParams::Quad { x, y, v, w },
            source,
            scalar_identity: ScalarIdentity { left, right },
        })
    }

    pub fn kind(&self) -> TransformKind {
        match self.params {
            TransformParams::Pair { .. } => TransformKind::Pair,
            TransformParams::Quad { .. } => TransformKind::Quad,
        }
    }

    /// Parameters in order `X, Y[, V, W]`.
    pub fn parameters(&self) -> Vec<&Rational> {
        match &self.params {
            TransformParams::Pair { x, y } => vec![x, y],
            TransformParams::Quad { x, y, v, w } => vec![x, y, v, w],
        }
    }

    /// The solution values `1/(1 − U)` for each parameter.
    pub fn solution_values(&self) -> Vec<Rational> {
        self.parameters().into_iter().map(solution_value).collect()
    }
}

/// Pair from the `n`-th rational solution of `x^y = y^x`:
/// `X = 1 − (n/(n+1))^n`, `Y = 1 − (n/(n+1))^(n+1)`.
pub fn transform_from_euler(n: u64) -> Result<TransformInstance> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let e = i32::try_from(n).map_err(|_| Error::InvalidArgument(format!("n = {n} too large")))?;
    let ratio = Rational::from((n, n + 1));
    let x = 1 - Rational::from((&ratio).pow(e));
    let y = 1 - Rational::from((&ratio).pow(e + 1));
    TransformInstance::pair_with_source(x, y, TransformSource::Euler(n))
}

/// Quadruple from the general solution with parameters `(a, b, c)`:
/// `X = (x−1)/x`, `Y = (ax−1)/(ax)`, `V = (bx−1)/(bx)`, `W = (cx−1)/(cx)`.
pub fn transform_from_family(a: &Rational, b: &Rational, c: &Rational) -> Result<TransformInstance> {
    let t = general_solution(a, b, c)?;
    let [x, y, v, w] = t.to_rationals()?;
    TransformInstance::quad_with_source(
        parameter_of(&x),
        parameter_of(&y),
        parameter_of(&v),
        parameter_of(&w),
        TransformSource::Family {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
        },
    )
}

/// Exact check of the scalar equality behind an instance, re-derived from
/// its parameters.
pub fn closed_equality_check(t: &TransformInstance) -> Result<bool> {
    match &t.params {
        TransformParams::Pair { x, y } => {
            verify_power_equation(&solution_value(x), &solution_value(y))
        }
        TransformParams::Quad { x, y, v, w } => verify_equation(&SolutionTuple::manual(
            &solution_value(x),
            &solution_value(y),
            &solution_value(v),
            &solution_value(w),
        )?),
    }
}

/// Numerical comparison of the two sides of a transform.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformReport {
    /// Factors of the left side: `P(X, Y)` for a pair, `P(X, Y)·P(Y, X)` for a quadruple.
    pub left: Vec<EvalReport>,
    /// Factors of the right side: `P(Y, X)` for a pair, `P(V, W)·P(W, V)` for a quadruple.
    pub right: Vec<EvalReport>,
    pub left_log: Float,
    pub right_log: Float,
    pub abs_log_diff: Float,
    /// Sum of all tail bounds plus rounding slack.
    pub combined_bound: Float,
    pub verdict: bool,
}

fn compare(left: Vec<EvalReport>, right: Vec<EvalReport>, precision_bits: u32) -> TransformReport {
    let sum_logs = |side: &[EvalReport]| {
        side.iter()
            .fold(Float::new(precision_bits), |acc, r| acc + &r.log_value)
    };
    let left_log = sum_logs(&left);
    let right_log = sum_logs(&right);
    let abs_log_diff = Float::with_val(precision_bits, &left_log - &right_log).abs();
    let combined_bound = left
        .iter()
        .chain(&right)
        .fold(rounding_slack(precision_bits), |acc, r| {
            Float::with_val(128, &acc + &r.tail_bound)
        });
    let verdict = abs_log_diff <= combined_bound;
    TransformReport {
        left,
        right,
        left_log,
        right_log,
        abs_log_diff,
        combined_bound,
        verdict,
    }
}

/// Compares `P(X, Y)` with `P(Y, X)` in direct form.
pub fn verify_pair_transform(t: &TransformInstance, opts: &EvalOptions) -> Result<TransformReport> {
    let TransformParams::Pair { x, y } = &t.params else {
        return Err(Error::InvalidArgument("expected a pair instance".into()));
    };
    let left = eval_product(x, y, opts, Form::Direct)?;
    let right = eval_product(y, x, opts, Form::Direct)?;
    Ok(compare(vec![left], vec![right], opts.precision_bits))
}

/// When numerical evaluation of a quadruple is attempted at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityGate {
    /// Largest acceptable combined tail bound.
    pub tolerance: f64,
    /// Largest acceptable number of box points `nj·nk` per product.
    pub point_budget: u64,
}

impl Default for FeasibilityGate {
    fn default() -> Self {
        FeasibilityGate {
            tolerance: 1e-8,
            point_budget: 10_000_000,
        }
    }
}

/// Returned instead of a numerical report when the requested truncation
/// cannot certify the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibleTruncation {
    pub requested: (u64, u64),
    pub combined_tail_bound: Float,
    pub tolerance: f64,
    pub point_budget: u64,
    /// Smallest square truncation within budget meeting the tolerance, if any.
    pub required_truncation: Option<u64>,
    /// Exact verdict on the scalar identity, the fallback check.
    pub exact_identity: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadVerification {
    Numeric(TransformReport),
    Infeasible(InfeasibleTruncation),
}

impl QuadVerification {
    pub fn report(&self) -> Option<&TransformReport> {
        match self {
            QuadVerification::Numeric(r) => Some(r),
            QuadVerification::Infeasible(_) => None,
        }
    }
}

fn quad_pairs(t: &TransformInstance) -> Result<[(&Rational, &Rational); 4]> {
    let TransformParams::Quad { x, y, v, w } = &t.params else {
        return Err(Error::InvalidArgument("expected a quad instance".into()));
    };
    Ok([(x, y), (y, x), (v, w), (w, v)])
}

/// Sum of the four tail bounds of a quadruple at truncation `nj × nk`.
pub fn quad_tail_bound(t: &TransformInstance, opts: &EvalOptions) -> Result<Float> {
    let mut total = Float::new(128);
    for (p, q) in quad_pairs(t)? {
        total += tail_bound(p, q, opts.nj, opts.nk, opts.convention)?;
    }
    Ok(total)
}

fn required_truncation(
    t: &TransformInstance,
    opts: &EvalOptions,
    gate: &FeasibilityGate,
) -> Result<Option<u64>> {
    let max_n = (gate.point_budget as f64).sqrt().floor() as u64;
    let meets = |n: u64| -> Result<bool> {
        let o = EvalOptions { nj: n, nk: n, ..*opts };
        Ok(quad_tail_bound(t, &o)? <= gate.tolerance)
    };
    if max_n == 0 || !meets(max_n)? {
        return Ok(None);
    }
    // tail bound is non-increasing in n
    let (mut lo, mut hi) = (1u64, max_n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if meets(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(lo))
}

/// Compares `P(X, Y)·P(Y, X)` with `P(V, W)·P(W, V)` in direct form, unless
/// the gate rejects the truncation, in which case only the exact scalar
/// identity is checked.
pub fn verify_quad_transform(
    t: &TransformInstance,
    opts: &EvalOptions,
    gate: &FeasibilityGate,
) -> Result<QuadVerification> {
    let pairs = quad_pairs(t)?;
    let combined_tail_bound = quad_tail_bound(t, opts)?;
    let box_points = opts.nj.saturating_mul(opts.nk);
    if box_points > gate.point_budget || combined_tail_bound > gate.tolerance {
        return Ok(QuadVerification::Infeasible(InfeasibleTruncation {
            requested: (opts.nj, opts.nk),
            combined_tail_bound,
            tolerance: gate.tolerance,
            point_budget: gate.point_budget,
            required_truncation: required_truncation(t, opts, gate)?,
            exact_identity: closed_equality_check(t)?,
        }));
    }
    let mut reports = pairs
        .iter()
        .map(|(p, q)| eval_product(p, q, opts, Form::Direct))
        .collect::<Result<Vec<_>>>()?;
    let right = reports.split_off(2);
    Ok(QuadVerification::Numeric(compare(
        reports,
        right,
        opts.precision_bits,
    )))
}
