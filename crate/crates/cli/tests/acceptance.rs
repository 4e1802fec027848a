//! Acceptance suite. One line per criterion is printed; run with
//! `cargo test -p vpv-cli --test acceptance -- --nocapture`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use clap::Parser;
use serde_json::Value;
use vpv_cli::{run, Cli, Status};
use vpv_core::product::{count_visible, eval_product, exact_regroup_check, visible_points};
use vpv_core::solutions::{rational_family, search_integer_solutions, verify_equation, verify_power_equation};
use vpv_core::transforms::{
    closed_equality_check, transform_from_euler, transform_from_family, verify_pair_transform,
    verify_quad_transform, FeasibilityGate, QuadVerification,
};
use vpv_core::{
    parse_rational, Convention, EvalOptions, Float, Form, Integer, PrimePowerProduct, Rational, SolutionTuple,
    TransformInstance,
};

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn cmd(args: &[&str]) -> Value {
    let mut argv = vec!["vpv"];
    argv.extend_from_slice(args);
    let out = run(&Cli::parse_from(argv));
    assert_ne!(out.status, Status::Error, "{}", out.message);
    out.results
}

fn within(limit: Duration, start: Instant) -> Duration {
    let took = start.elapsed();
    assert!(took < limit, "took {took:?}, limit {limit:?}");
    took
}

fn euler_family() -> String {
    let start = Instant::now();
    let res = cmd(&["euler", "6"]);
    let expected = [
        ("2", "4"),
        ("9/4", "27/8"),
        ("64/27", "256/81"),
        ("625/256", "3125/1024"),
        ("7776/3125", "46656/15625"),
        ("117649/46656", "823543/279936"),
    ];
    let rows = res["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for (row, (x, y)) in rows.iter().zip(expected) {
        assert_eq!((row["x"].as_str().unwrap(), row["y"].as_str().unwrap()), (x, y));
        assert_eq!(row["verified"], true);
        assert!(verify_power_equation(&q(x), &q(y)).unwrap());
    }
    format!("6 tuples exact and verified in {:?}", within(Duration::from_secs(1), start))
}

const TABLE: [((u32, u32), [&str; 4]); 13] = [
    ((1, 1), ["1/2", "1", "1/2", "1/2"]),
    ((2, 1), ["2/3", "2", "4/3", "2/3"]),
    ((3, 1), ["3/4", "3", "9/4", "3/4"]),
    ((4, 1), ["4/5", "4", "16/5", "4/5"]),
    ((1, 2), ["2/3", "2", "2/3", "4/3"]),
    ((2, 2), ["4", "16", "8", "8"]),
    ((3, 2), ["72/5", "72", "216/5", "144/5"]),
    ((6, 2), ["288", "2304", "1728", "576"]),
    ((1, 3), ["3/4", "3", "3/4", "9/4"]),
    ((3, 3), ["243/2", "729", "729/2", "729/2"]),
    ((6, 3), ["17496", "157464", "104976", "52488"]),
    ((2, 4), ["128/3", "256", "256/3", "512/3"]),
    ((5, 3), ["30375/8", "30375", "151875/8", "91125/8"]),
];

fn family_table() -> String {
    let start = Instant::now();
    for ((b, c), printed) in TABLE {
        let t = rational_family(b, c).unwrap();
        let got = t.to_rationals().unwrap();
        let want = printed.map(q);
        assert_eq!(got, want, "row ({b},{c})");
        assert!(verify_equation(&t).unwrap(), "row ({b},{c})");
    }
    format!("13 rows exact and verified in {:?}", within(Duration::from_secs(1), start))
}

fn digit_claims() -> String {
    let mut parts = Vec::new();
    for (b, c, digits) in [("6", "2", 6635), ("6", "3", 759040)] {
        let start = Instant::now();
        let res = cmd(&["digits", b, c]);
        assert_eq!(res["digits"], digits);
        parts.push(format!("({b},{c}) -> {digits} in {:?}", within(Duration::from_secs(1), start)));
    }
    parts.join(", ")
}

fn displayed_examples() -> String {
    let tuple = |s: [&str; 4]| SolutionTuple::manual(&q(s[0]), &q(s[1]), &q(s[2]), &q(s[3])).unwrap();
    for s in [
        ["1/3", "1/6", "1/2", "4/3"],
        ["1/2", "1/3", "1/2", "4/3"],
        ["1/2", "1/3", "1/3", "1/6"],
    ] {
        assert!(verify_equation(&tuple(s)).unwrap(), "{s:?}");
    }
    assert!(!verify_equation(&tuple(["2", "3", "2", "4"])).unwrap());
    "three displayed equalities true, (2,3,2,4) false".into()
}

fn closed_form() -> String {
    let start = Instant::now();
    let tol = Float::with_val(64, 1e-10);
    let mut parts = Vec::new();
    for (convention, expected) in [(Convention::Axis, 16), (Convention::Strict, 4)] {
        let opts = EvalOptions::square(400).with_precision(256).with_convention(convention);
        let r = eval_product(&q("1/2"), &q("3/4"), &opts, Form::Reciprocal).unwrap();
        let bound = if r.tail_bound > tol { r.tail_bound.clone() } else { tol.clone() };
        assert_eq!(r.closed_form_value, expected);
        let value_err = Float::with_val(256, &r.product_value - expected).abs();
        assert!(r.abs_log_diff <= bound, "{convention}: log diff {}", r.abs_log_diff);
        assert!(value_err <= bound, "{convention}: value error {value_err}");
        parts.push(format!("{convention} -> {expected} (log diff {:.2e})", r.abs_log_diff.to_f64()));
    }
    format!("{} in {:?}", parts.join(", "), within(Duration::from_secs(30), start))
}

fn regrouping() -> String {
    let grid = ["1/3", "1/2", "-1/2", "2/3", "2", "3", "-3/4", "5"];
    let mut count = 0;
    for x in grid {
        for y in grid {
            for n in [6, 12] {
                assert!(exact_regroup_check(&q(x), &q(y), n, n), "({x},{y}) at {n}");
                count += 1;
            }
        }
    }
    format!("{count} exact checks, including (1/3,1/2), (-1/2,2/3), (2,3)")
}

fn mobius() -> String {
    for n in 1..=200u64 {
        assert_eq!(visible_points(n, n, Convention::Strict).len() as u64, count_visible(n), "N = {n}");
    }
    "N = 1..200 all equal".into()
}

fn pair_transforms() -> String {
    let start = Instant::now();
    let opts = EvalOptions::square(600).with_precision(256).with_convention(Convention::Axis);
    let limit = Float::with_val(64, 1e-10);
    let mut worst = 0f64;
    for n in 1..=4 {
        let t = transform_from_euler(n).unwrap();
        let r = verify_pair_transform(&t, &opts).unwrap();
        assert!(r.verdict, "Euler n = {n}");
        assert!(r.combined_bound <= limit, "Euler n = {n}: bound {}", r.combined_bound);
        worst = worst.max(r.combined_bound.to_f64());
    }
    let corrected = TransformInstance::pair(q("1/2"), q("3/4")).unwrap();
    assert!(verify_pair_transform(&corrected, &opts).unwrap().verdict);
    let printed = TransformInstance::pair(q("1/2"), q("1/4")).unwrap();
    assert!(!verify_pair_transform(&printed, &opts).unwrap().verdict);
    format!(
        "Euler 1..4 true (worst bound {worst:.1e}), (1/2,3/4) true, (1/2,1/4) false, in {:?}",
        within(Duration::from_secs(120), start)
    )
}

fn power_side(pairs: [(u64, u64); 2]) -> PrimePowerProduct {
    let [a, b] = pairs.map(|(base, e)| {
        PrimePowerProduct::from_integer(Integer::from(base)).unwrap().pow(&Rational::from(e))
    });
    a * b
}

fn quad_transforms() -> String {
    let opts = EvalOptions::square(400).with_precision(256);
    let gate = FeasibilityGate::default();
    let family = |a: u32, b: u32, c: u32| {
        transform_from_family(&Rational::from(a), &Rational::from(b), &Rational::from(c)).unwrap()
    };
    for (a, b, c) in [(3, 2, 1), (4, 2, 2)] {
        match verify_quad_transform(&family(a, b, c), &opts, &gate).unwrap() {
            QuadVerification::Numeric(r) => assert!(r.verdict, "({a},{b},{c})"),
            QuadVerification::Infeasible(i) => panic!("({a},{b},{c}) infeasible: {i:?}"),
        }
    }
    let start = Instant::now();
    for ((a, b, c), [x, y, v, w]) in [((8, 6, 2), [288, 2304, 1728, 576]), ((9, 6, 3), [17496, 157464, 104976, 52488])] {
        let t = family(a, b, c);
        let values = t.solution_values();
        assert_eq!(values, [x, y, v, w].map(Rational::from).to_vec());
        match verify_quad_transform(&t, &opts, &gate).unwrap() {
            QuadVerification::Infeasible(i) => assert!(i.exact_identity, "({a},{b},{c})"),
            QuadVerification::Numeric(_) => panic!("({a},{b},{c}) unexpectedly feasible"),
        }
        assert!(closed_equality_check(&t).unwrap());
        assert_eq!(power_side([(x, y), (y, x)]), power_side([(v, w), (w, v)]));
    }
    format!(
        "(3,2,1), (4,2,2) true; (8,6,2), (9,6,3) infeasible with exact identities true in {:?}",
        within(Duration::from_secs(1), start)
    )
}

fn integer_search() -> String {
    let start = Instant::now();
    let res = cmd(&["search", "6", "4"]);
    let rows = res["rows"].as_array().unwrap();
    let found: Vec<(u32, u32)> = rows
        .iter()
        .map(|r| (r["b"].as_u64().unwrap() as u32, r["c"].as_u64().unwrap() as u32))
        .collect();
    assert!(rows.iter().all(|r| r["verified"] == true));

    // integral rows of the table inside the search box, read off the printed values
    let in_box: Vec<_> = TABLE.iter().filter(|((b, c), _)| *b <= 6 && *c <= 4).collect();
    let integral: Vec<(u32, u32)> = in_box
        .iter()
        .filter(|(_, vals)| vals.iter().all(|v| q(v).is_integer()))
        .map(|(bc, _)| *bc)
        .collect();
    assert_eq!(integral, [(2, 2), (6, 2), (6, 3)]);
    let from_table: Vec<_> = found
        .iter()
        .filter(|bc| in_box.iter().any(|(row, _)| row == *bc))
        .copied()
        .collect();
    let mut sorted = from_table.clone();
    sorted.sort();
    assert_eq!(sorted, integral);

    // (3,3) and (2,4) are printed with fractional entries
    for bc in [(3, 3), (2, 4)] {
        assert!(!rational_family(bc.0, bc.1).unwrap().is_integral());
        assert!(!found.contains(&bc));
    }

    // the full result is every integral member of the family in the box
    let oracle: Vec<(u32, u32)> = search_integer_solutions(6, 4)
        .unwrap()
        .iter()
        .map(|t| match t.provenance {
            vpv_core::Provenance::Family { b, c } => (b, c),
            _ => unreachable!(),
        })
        .collect();
    let brute: Vec<(u32, u32)> = (1..=6)
        .flat_map(|b| (1..=4).map(move |c| (b, c)))
        .filter(|&(b, c)| rational_family(b, c).unwrap().is_integral())
        .collect();
    let (mut f, mut o, mut br) = (found.clone(), oracle, brute);
    f.sort();
    o.sort();
    br.sort();
    assert_eq!(f, br);
    assert_eq!(o, br);
    format!(
        "found {found:?}; table rows among them {from_table:?}; (3,3), (2,4) not integral; in {:?}",
        within(Duration::from_secs(5), start)
    )
}

type Criterion = (&'static str, fn() -> String);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("euler family", euler_family),
        ("family table", family_table),
        ("digit claims", digit_claims),
        ("displayed examples", displayed_examples),
        ("closed form", closed_form),
        ("regrouping oracle", regrouping),
        ("mobius crosscheck", mobius),
        ("pair transforms", pair_transforms),
        ("quad transforms", quad_transforms),
        ("integer search", integer_search),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("criterion {:>2} {name}: PASS  {detail}", i + 1),
            Err(e) => {
                let why = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} {name}: FAIL  {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
