//! Truncated visible-point products
//!
//! ```text
//!   P(X, Y) = ∏_{(j,k) visible} (1 − X^j Y^k)^(1/k)
//! ```
//!
//! Expanding every logarithm and regrouping the terms `(X^j Y^k)^m / (k·m)`
//! by `J = jm`, `K = km` gives `ln P = −Σ_{J,K} X^J Y^K / K`. Over the region
//! `j, k >= 1` this is `(X/(1−X))·ln(1−Y)`; adding the axis point `(0, 1)`
//! contributes the `J = 0` column and gives `(1/(1−X))·ln(1−Y)`.

mod eval;
mod lattice;
mod regroup;

use std::fmt;
use std::str::FromStr;

use rug::{Float, Rational};

pub use eval::{closed_form, closed_form_log, eval_product, log_series_oracle, tail_bound};
pub use lattice::{count_visible, mobius_table, visible_points, LatticePoint};
pub use regroup::{exact_regroup_check, regroup_sides};

use crate::error::{Error, Result};

/// Which lattice region the product runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// Visible points with `j, k >= 1` plus the axis point `(0, 1)`.
    #[default]
    Axis,
    /// Visible points with `j, k >= 1` only.
    Strict,
}

/// `Direct` is `∏ (1 − X^j Y^k)^(1/k)`, `Reciprocal` its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Form {
    #[default]
    Direct,
    Reciprocal,
}

impl Form {
    pub(crate) fn sign(self) -> i32 {
        match self {
            Form::Direct => 1,
            Form::Reciprocal => -1,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Axis => "axis",
            Convention::Strict => "strict",
        })
    }
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "axis" => Ok(Convention::Axis),
            "strict" => Ok(Convention::Strict),
            _ => Err(Error::InvalidArgument(format!(
                "unknown convention {s:?} (expected axis or strict)"
            ))),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Form::Direct => "direct",
            Form::Reciprocal => "reciprocal",
        })
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "direct" => Ok(Form::Direct),
            "reciprocal" => Ok(Form::Reciprocal),
            _ => Err(Error::InvalidArgument(format!(
                "unknown form {s:?} (expected direct or reciprocal)"
            ))),
        }
    }
}

/// Truncation box, working precision and lattice convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub nj: u64,
    pub nk: u64,
    pub precision_bits: u32,
    pub convention: Convention,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            nj: 400,
            nk: 400,
            precision_bits: 256,
            convention: Convention::Axis,
        }
    }
}

impl EvalOptions {
    pub fn square(n: u64) -> Self {
        EvalOptions {
            nj: n,
            nk: n,
            ..Self::default()
        }
    }

    pub fn with_precision(self, precision_bits: u32) -> Self {
        EvalOptions {
            precision_bits,
            ..self
        }
    }

    pub fn with_convention(self, convention: Convention) -> Self {
        EvalOptions { convention, ..self }
    }
}

/// Both sides of one visible-point identity at a given truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub x: Rational,
    pub y: Rational,
    pub product_value: Float,
    pub log_value: Float,
    pub closed_form_value: Float,
    pub closed_form_log: Float,
    pub abs_log_diff: Float,
    pub tail_bound: Float,
    pub truncation: (u64, u64),
    /// Number of lattice points multiplied in.
    pub points: u64,
    pub precision_bits: u32,
    pub convention: Convention,
    pub form: Form,
}

impl EvalReport {
    /// Slack allowed for rounding in the log domain at this precision.
    pub fn rounding_slack(&self) -> Float {
        rounding_slack(self.precision_bits)
    }

    /// `abs_log_diff <= tail_bound + rounding slack`.
    pub fn agrees_with_closed_form(&self) -> bool {
        let allowed = Float::with_val(128, &self.tail_bound + self.rounding_slack());
        self.abs_log_diff <= allowed
    }
}

pub fn rounding_slack(precision_bits: u32) -> Float {
    Float::with_val(64, Float::i_exp(1, 16 - precision_bits as i32))
}

pub fn check_domain(name: &'static str, value: &Rational) -> Result<()> {
    if value.clone().abs() >= 1 {
        return Err(Error::DomainViolation {
            name,
            value: value.clone(),
        });
    }
    Ok(())
}
