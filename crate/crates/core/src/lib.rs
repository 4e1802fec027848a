//! Exact and high-precision tools for the exponential equations
//! `x^y = y^x` and `x^y·y^x = v^w·w^v`, and for the visible-point product
//! identities
//!
//! ```text
//!   ∏_{gcd(j,k)=1} (1 − X^j Y^k)^(1/k) = (1 − Y)^(1/(1−X))
//! ```
//!
//! together with the product transforms obtained by substituting solutions of
//! those equations into the identity.
//!
//! * [`exact`]: rationals, factorization, prime-exponent vectors, digit counts.
//! * [`solutions`]: solution generators, exact verification, triviality, search.
//! * [`product`]: lattice enumeration, truncated products, tail bounds, oracles.
//! * [`transforms`]: transform instances built from solutions and their checks.

pub mod error;
pub mod exact;
pub mod product;
pub mod solutions;
pub mod transforms;

pub use error::{Error, Result};
pub use exact::{parse_rational, Float, Integer, Interval, PrimePowerProduct, Rational};
pub use product::{Convention, EvalOptions, EvalReport, Form, LatticePoint};
pub use solutions::{Provenance, SolutionTuple, Triviality, TrivialityVerdict};
pub use transforms::{TransformInstance, TransformReport};

