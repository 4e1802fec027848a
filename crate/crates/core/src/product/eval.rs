use num_integer::Integer as _;
use rayon::prelude::*;
use rug::float::Round;
use rug::ops::{Pow, PowAssignRound};
use rug::{Float, Rational};

use super::{check_domain, Convention, EvalOptions, EvalReport, Form};
use crate::error::{check_precision, Error, Result};

/// Extra bits carried internally beyond the requested precision.
const GUARD_BITS: u32 = 32;
const TAIL_PREC: u32 = 128;

/// Neumaier-compensated running sum.
struct CompensatedSum {
    sum: Float,
    carry: Float,
}

impl CompensatedSum {
    fn new(prec: u32) -> Self {
        CompensatedSum {
            sum: Float::new(prec),
            carry: Float::new(prec),
        }
    }

    fn add(&mut self, term: &Float) {
        let prec = self.sum.prec();
        let t = Float::with_val(prec, &self.sum + term);
        let lost = if *self.sum.as_abs() >= *term.as_abs() {
            Float::with_val(prec, &self.sum - &t) + term
        } else {
            Float::with_val(prec, term - &t) + &self.sum
        };
        self.carry += lost;
        self.sum = t;
    }

    fn total(self) -> Float {
        self.sum + self.carry
    }
}

/// Exponent `e` in the closed form `(1 − Y)^e` of the product.
fn closed_form_exponent(x: &Rational, convention: Convention, form: Form) -> Rational {
    let one_minus_x = Rational::from(1 - x);
    let e = match convention {
        Convention::Axis => one_minus_x.recip(),
        Convention::Strict => Rational::from(x / &one_minus_x),
    };
    e * form.sign()
}

/// `ln` of the closed form, `e·ln(1 − Y)`.
pub fn closed_form_log(
    x: &Rational,
    y: &Rational,
    convention: Convention,
    form: Form,
    precision_bits: u32,
) -> Result<Float> {
    check_precision(precision_bits)?;
    check_domain("X", x)?;
    check_domain("Y", y)?;
    let wp = precision_bits + GUARD_BITS;
    let e = closed_form_exponent(x, convention, form);
    let ln = Float::with_val(wp, Rational::from(1 - y)).ln();
    Ok(Float::with_val(precision_bits, ln * e))
}

/// Closed-form value of the infinite product:
///
/// | convention | direct                | reciprocal             |
/// |------------|-----------------------|------------------------|
/// | axis       | `(1−Y)^(1/(1−X))`     | `(1−Y)^(−1/(1−X))`     |
/// | strict     | `(1−Y)^(X/(1−X))`     | `(1−Y)^(−X/(1−X))`     |
///
/// Integer exponents are evaluated exactly before rounding.
pub fn closed_form(
    x: &Rational,
    y: &Rational,
    convention: Convention,
    form: Form,
    precision_bits: u32,
) -> Result<Float> {
    check_precision(precision_bits)?;
    check_domain("X", x)?;
    check_domain("Y", y)?;
    let e = closed_form_exponent(x, convention, form);
    let base = Rational::from(1 - y);
    if *e.denom() == 1 {
        if let Some(k) = e.numer().to_i32().filter(|k| k.unsigned_abs() <= 1 << 16) {
            return Ok(Float::with_val(precision_bits, base.pow(k)));
        }
    }
    let log = closed_form_log(x, y, convention, form, precision_bits + GUARD_BITS)?;
    Ok(Float::with_val(precision_bits, log.exp()))
}

fn rounded_abs(q: &Rational, round: Round) -> Float {
    Float::with_val_round(TAIL_PREC, q.clone().abs(), round).0
}

/// Rigorous bound on the log-domain error of truncating the product to the
/// box `nj × nk`:
///
/// ```text
///   |X|^(nj+1)/(1−|X|) · ln(1/(1−|Y|))
///     + |X|/(1−|X|) · |Y|^(nk+1)/((nk+1)(1−|Y|))
///     + [axis] |Y|^(nk+1)/((nk+1)(1−|Y|))
/// ```
///
/// Every omitted term `X^J Y^K / K` of the regrouped series has `J > nj` or
/// `K > nk`, which the first two summands dominate. Evaluated with upward
/// rounding at 128 bits.
pub fn tail_bound(
    x: &Rational,
    y: &Rational,
    nj: u64,
    nk: u64,
    convention: Convention,
) -> Result<Float> {
    check_domain("X", x)?;
    check_domain("Y", y)?;
    fn up<T>(v: T) -> Float
    where
        Float: rug::ops::AssignRound<T, Round = Round, Ordering = std::cmp::Ordering>,
    {
        Float::with_val_round(TAIL_PREC, v, Round::Up).0
    }
    let ax = rounded_abs(x, Round::Up);
    let ay = rounded_abs(y, Round::Up);
    let one_minus_ax = Float::with_val_round(TAIL_PREC, 1 - x.clone().abs(), Round::Down).0;
    let one_minus_ay = Float::with_val_round(TAIL_PREC, 1 - y.clone().abs(), Round::Down).0;
    // ln(1/(1−|Y|)) = −ln(1−|Y|), rounded up
    let mut ln_y = one_minus_ay.clone();
    ln_y.ln_round(Round::Down);
    let ln_y = -ln_y;

    let pow_up = |base: &Float, n: u64| -> Float {
        let mut p = base.clone();
        p.pow_assign_round(Float::with_val(TAIL_PREC, n), Round::Up);
        p
    };

    let x_tail: Float = up(&pow_up(&ax, nj + 1) / &one_minus_ax);
    let first: Float = up(&x_tail * &ln_y);

    let k_next = Float::with_val(TAIL_PREC, nk + 1);
    let k_den = Float::with_val_round(TAIL_PREC, &k_next * &one_minus_ay, Round::Down).0;
    let y_tail: Float = up(&pow_up(&ay, nk + 1) / &k_den);
    let x_ratio: Float = up(&ax / &one_minus_ax);
    let second: Float = up(&x_ratio * &y_tail);

    let mut bound = up(&first + &second);
    if convention == Convention::Axis {
        bound = up(&bound + &y_tail);
    }
    Ok(bound)
}

fn powers(base: &Float, n: u64) -> Vec<Float> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Float::with_val(base.prec(), 1));
    for i in 1..=n as usize {
        let next = Float::with_val(base.prec(), &out[i - 1] * base);
        out.push(next);
    }
    out
}

fn check_truncation(nj: u64, nk: u64) -> Result<()> {
    if nj == 0 || nk == 0 {
        return Err(Error::InvalidArgument(format!(
            "truncation must be at least 1 in each direction, got ({nj}, {nk})"
        )));
    }
    Ok(())
}

/// Truncated product over the visible points of the box, evaluated in the
/// log domain.
///
/// Each `j`-strip is summed with compensation, possibly in parallel, and the
/// strip sums are then reduced in strip order, so results do not depend on
/// the thread count.
pub fn eval_product(
    x: &Rational,
    y: &Rational,
    opts: &EvalOptions,
    form: Form,
) -> Result<EvalReport> {
    let EvalOptions {
        nj,
        nk,
        precision_bits,
        convention,
    } = *opts;
    check_precision(precision_bits)?;
    check_domain("X", x)?;
    check_domain("Y", y)?;
    check_truncation(nj, nk)?;
    let wp = precision_bits + GUARD_BITS;

    let xf = Float::with_val(wp, x);
    let yf = Float::with_val(wp, y);
    let x_pows = powers(&xf, nj);
    let y_pows = powers(&yf, nk);

    let strip = |j: u64| -> (Float, u64) {
        let mut acc = CompensatedSum::new(wp);
        let mut count = 0;
        let ks: Box<dyn Iterator<Item = u64>> = if j == 0 {
            Box::new(std::iter::once(1))
        } else {
            Box::new((1..=nk).filter(move |k| j.gcd(k) == 1))
        };
        for k in ks {
            count += 1;
            let mut t = Float::with_val(wp, &x_pows[j as usize] * &y_pows[k as usize]);
            if t.is_zero() {
                continue;
            }
            t = -t;
            t.ln_1p_mut();
            t /= k;
            acc.add(&t);
        }
        (acc.total(), count)
    };

    let first_strip = match convention {
        Convention::Axis => 0,
        Convention::Strict => 1,
    };
    let strips: Vec<(Float, u64)> = (first_strip..=nj).into_par_iter().map(strip).collect();
    let mut total = CompensatedSum::new(wp);
    let mut points = 0;
    for (s, n) in &strips {
        total.add(s);
        points += n;
    }
    let log_wp = total.total() * form.sign();

    let closed_log = closed_form_log(x, y, convention, form, wp)?;
    let abs_log_diff = Float::with_val(precision_bits, &log_wp - &closed_log).abs();
    let product_value = Float::with_val(precision_bits, log_wp.clone().exp());

    Ok(EvalReport {
        x: x.clone(),
        y: y.clone(),
        product_value,
        log_value: Float::with_val(precision_bits, &log_wp),
        closed_form_value: closed_form(x, y, convention, form, precision_bits)?,
        closed_form_log: Float::with_val(precision_bits, &closed_log),
        abs_log_diff,
        tail_bound: tail_bound(x, y, nj, nk, convention)?,
        truncation: (nj, nk),
        points,
        precision_bits,
        convention,
        form,
    })
}

/// Partial double sum `Σ_{J<=nj} Σ_{K<=nk} X^J Y^K / K`, which is the log of
/// the strict reciprocal product once the visible-point logarithms are
/// expanded and regrouped. Does not enumerate visible points.
pub fn log_series_oracle(
    x: &Rational,
    y: &Rational,
    nj: u64,
    nk: u64,
    precision_bits: u32,
) -> Result<Float> {
    check_precision(precision_bits)?;
    check_domain("X", x)?;
    check_domain("Y", y)?;
    check_truncation(nj, nk)?;
    let wp = precision_bits + GUARD_BITS;
    let xf = Float::with_val(wp, x);
    let yf = Float::with_val(wp, y);
    let mut sum = Float::new(wp);
    let mut xj = Float::with_val(wp, 1);
    for _ in 1..=nj {
        xj *= &xf;
        let mut yk = Float::with_val(wp, 1);
        for k in 1..=nk {
            yk *= &yf;
            let term = Float::with_val(wp, &xj * &yk) / k;
            sum += term;
        }
    }
    Ok(Float::with_val(precision_bits, sum))
}
