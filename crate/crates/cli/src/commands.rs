use serde_json::{json, Value};
use vpv_core::exact::{digit_count, leading_digits, scientific, PrimePowerProduct};
use vpv_core::product::{eval_product, Convention, EvalOptions, EvalReport, Form};
use vpv_core::solutions::{
    classify_triviality, equation_sides, euler_solution, general_solution,
    numeric_verify_equation, rational_family, search_integer_solutions, verify_equation,
    verify_power_equation, SolutionTuple,
};
use vpv_core::transforms::{
    closed_equality_check, transform_from_euler, transform_from_family, verify_pair_transform,
    verify_quad_transform, FeasibilityGate, QuadVerification, TransformInstance, TransformKind,
    TransformReport, TransformSource,
};
use vpv_core::{parse_rational, Error, Rational};

use crate::args::{GlobalOpts, TransformArgs};
use crate::render::{float, interval};
use crate::Status;

pub(crate) type Outcome = Result<(Value, Status, String), Error>;

fn show(u: &PrimePowerProduct) -> String {
    match u.to_rational() {
        Ok(q) => q.to_string(),
        Err(_) => u.to_string(),
    }
}

fn triviality(t: &SolutionTuple) -> Value {
    let v = classify_triviality(t);
    json!({
        "kind": format!("{:?}", v.kind).to_lowercase(),
        "reason": v.reason.code(),
    })
}

fn tuple_fields(t: &SolutionTuple) -> Value {
    json!({
        "x": show(&t.x),
        "y": show(&t.y),
        "v": show(&t.v),
        "w": show(&t.w),
    })
}

pub(crate) fn eval_options(g: &GlobalOpts) -> Result<EvalOptions, Error> {
    Ok(EvalOptions {
        nj: g.truncation,
        nk: g.truncation,
        precision_bits: g.precision,
        convention: g.convention.parse::<Convention>()?,
    })
}

pub(crate) fn euler(n_max: u64) -> Outcome {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be ≥ 1".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let (x, y) = euler_solution(n)?;
        let verified = verify_power_equation(&x, &y)?;
        rows.push(json!({ "n": n, "x": x.to_string(), "y": y.to_string(), "verified": verified }));
    }
    let all = rows.iter().all(|r| r["verified"] == true);
    let status = if all { Status::Ok } else { Status::Error };
    Ok((json!({ "rows": rows }), status, format!("{n_max} solutions of x^y = y^x")))
}

pub(crate) fn family(b: u32, c: u32, a: Option<&str>, precision: u32) -> Outcome {
    let t = match a {
        Some(a) => general_solution(
            &parse_rational(a)?,
            &Rational::from(b),
            &Rational::from(c),
        )?,
        None => rational_family(b, c)?,
    };
    let mut results = json!({
        "b": b,
        "c": c,
        "a": a.map(str::to_string).unwrap_or_else(|| (u64::from(b) + u64::from(c)).to_string()),
        "values": tuple_fields(&t),
        "rational": t.is_rational(),
        "triviality": triviality(&t),
    });
    let verified = if t.is_rational() {
        results["verification"] = json!("exact");
        verify_equation(&t)?
    } else {
        let check = numeric_verify_equation(&t, precision)?;
        results["verification"] = json!("numeric");
        results["residual"] = interval(&check.residual);
        check.holds
    };
    results["verified"] = json!(verified);
    let status = if verified { Status::Ok } else { Status::Error };
    Ok((results, status, format!("x^y·y^x = v^w·w^v: {verified}")))
}

pub(crate) fn verify(x: &str, y: &str, v: &str, w: &str) -> Outcome {
    let t = SolutionTuple::manual(
        &parse_rational(x)?,
        &parse_rational(y)?,
        &parse_rational(v)?,
        &parse_rational(w)?,
    )?;
    let (left, right) = equation_sides(&t)?;
    let verified = left == right;
    let results = json!({
        "verified": verified,
        "left_exponent_vector": left.to_string(),
        "right_exponent_vector": right.to_string(),
        "triviality": triviality(&t),
    });
    Ok((results, Status::Ok, format!("x^y·y^x = v^w·w^v: {verified}")))
}

pub(crate) fn digits(b: u32, c: u32) -> Outcome {
    let t = rational_family(b, c)?;
    if !t.is_integral() {
        return Err(Error::NonIntegerValue);
    }
    let (left, right) = equation_sides(&t)?;
    if left != right {
        return Err(Error::InvalidArgument("family tuple failed exact verification".into()));
    }
    let count = digit_count(&left)?;
    let (leading, _) = leading_digits(&left, 5)?;
    let (mantissa, exponent) = scientific(&left, 4)?;
    let results = json!({
        "values": tuple_fields(&t),
        "exponent_vector": left.to_string(),
        "digits": count,
        "leading_digits": leading,
        "approximation": format!("{mantissa}e{exponent}"),
    });
    Ok((results, Status::Ok, format!("common value has {count} decimal digits")))
}

fn eval_report(r: &EvalReport) -> Value {
    json!({
        "x": r.x.to_string(),
        "y": r.y.to_string(),
        "product_value": float(&r.product_value),
        "log_value": float(&r.log_value),
        "closed_form_value": float(&r.closed_form_value),
        "closed_form_log": float(&r.closed_form_log),
        "abs_log_diff": float(&r.abs_log_diff),
        "tail_bound": float(&r.tail_bound),
        "agrees": r.agrees_with_closed_form(),
        "truncation": [r.truncation.0, r.truncation.1],
        "points": r.points,
        "precision_bits": r.precision_bits,
        "convention": r.convention.to_string(),
        "form": r.form.to_string(),
    })
}

pub(crate) fn vpv_eval(x: &str, y: &str, form: &str, opts: &EvalOptions) -> Outcome {
    let form: Form = form.parse()?;
    let r = eval_product(&parse_rational(x)?, &parse_rational(y)?, opts, form)?;
    let agrees = r.agrees_with_closed_form();
    let status = if agrees { Status::Ok } else { Status::Warning };
    let message = if agrees {
        "truncated product agrees with the closed form within the tail bound".to_string()
    } else {
        "truncated product differs from the closed form by more than the tail bound".to_string()
    };
    Ok((eval_report(&r), status, message))
}

fn transform_report(r: &TransformReport) -> Value {
    json!({
        "verdict": r.verdict,
        "left_log": float(&r.left_log),
        "right_log": float(&r.right_log),
        "abs_log_diff": float(&r.abs_log_diff),
        "combined_bound": float(&r.combined_bound),
        "left": r.left.iter().map(eval_report).collect::<Vec<_>>(),
        "right": r.right.iter().map(eval_report).collect::<Vec<_>>(),
    })
}

fn source(t: &TransformInstance) -> Value {
    match &t.source {
        TransformSource::Euler(n) => json!({ "euler": n }),
        TransformSource::Family { a, b, c } => {
            json!({ "family": { "a": a.to_string(), "b": b.to_string(), "c": c.to_string() } })
        }
        TransformSource::Manual => json!("manual"),
    }
}

pub(crate) fn transform(args: &TransformArgs, opts: &EvalOptions) -> Outcome {
    let t = match (&args.n, &args.a, &args.b, &args.c) {
        (Some(n), None, _, _) => transform_from_euler(*n)?,
        (None, Some(a), Some(b), Some(c)) => {
            transform_from_family(&parse_rational(a)?, &parse_rational(b)?, &parse_rational(c)?)?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give either --n or all of --a, --b, --c".into(),
            ))
        }
    };
    let names = ["X", "Y", "V", "W"];
    let parameters: serde_json::Map<String, Value> = t
        .parameters()
        .iter()
        .zip(names)
        .map(|(p, name)| (name.to_string(), json!(p.to_string())))
        .collect();
    let exact = closed_equality_check(&t)?;
    let mut results = json!({
        "kind": format!("{:?}", t.kind()).to_lowercase(),
        "source": source(&t),
        "parameters": parameters,
        "solution_values": t.solution_values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "exact": exact,
    });
    let (status, message) = match t.kind() {
        TransformKind::Pair => {
            let r = verify_pair_transform(&t, opts)?;
            results["numeric"] = transform_report(&r);
            let status = if exact && r.verdict { Status::Ok } else { Status::Error };
            (status, format!("exact: {exact}, numeric verdict: {}", r.verdict))
        }
        TransformKind::Quad => {
            let gate = FeasibilityGate {
                tolerance: args.tolerance,
                point_budget: args.point_budget,
            };
            match verify_quad_transform(&t, opts, &gate)? {
                QuadVerification::Numeric(r) => {
                    results["numeric"] = transform_report(&r);
                    let status = if exact && r.verdict { Status::Ok } else { Status::Error };
                    (status, format!("exact: {exact}, numeric verdict: {}", r.verdict))
                }
                QuadVerification::Infeasible(info) => {
                    results["numeric"] = json!({
                        "status": "InfeasibleTruncation",
                        "requested": [info.requested.0, info.requested.1],
                        "combined_tail_bound": float(&info.combined_tail_bound),
                        "tolerance": info.tolerance,
                        "point_budget": info.point_budget,
                        "required_truncation": info.required_truncation,
                        "exact_identity": info.exact_identity,
                    });
                    let status = if exact { Status::Warning } else { Status::Error };
                    (
                        status,
                        format!(
                            "exact: {exact}, numeric: InfeasibleTruncation (tail bound exceeds {:e})",
                            info.tolerance
                        ),
                    )
                }
            }
        }
    };
    Ok((results, status, message))
}

pub(crate) fn search(b_max: u32, c_max: u32) -> Outcome {
    let found = search_integer_solutions(b_max, c_max)?;
    let mut rows = Vec::with_capacity(found.len());
    for t in &found {
        let (b, c) = match t.provenance {
            vpv_core::Provenance::Family { b, c } => (b, c),
            _ => unreachable!("search yields family tuples"),
        };
        let mut row = tuple_fields(t);
        row["b"] = json!(b);
        row["c"] = json!(c);
        row["verified"] = json!(verify_equation(t)?);
        rows.push(row);
    }
    let message = format!("{} integral tuples with b <= {b_max}, c <= {c_max}", rows.len());
    Ok((json!({ "count": rows.len(), "rows": rows }), Status::Ok, message))
}
