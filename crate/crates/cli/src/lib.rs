//! Command implementations behind the `vpv` binary. Every command produces a
//! [`CommandResult`], printed either as text or as one JSON document.

mod args;
mod commands;
pub mod render;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

pub use args::{Cli, Command, GlobalOpts, TransformArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Warning,
    Error,
}

/// Schema shared by all commands:
/// `{command, inputs{…}, results{…}, status, message}`.
#[derive(Debug, Clone, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub status: Status,
    pub message: String,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Error => 1,
            Status::Ok | Status::Warning => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("{} [{:?}] {}\n", self.command, self.status, self.message);
        if !self.results.is_null() {
            out.push_str(&render::human(&self.results));
        }
        out
    }
}

fn inputs(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> CommandResult {
    let g = &cli.global;
    let numeric = || {
        vec![
            ("precision", json!(g.precision)),
            ("truncation", json!(g.truncation)),
            ("convention", json!(g.convention)),
        ]
    };
    let (name, mut input, outcome) = match &cli.command {
        Command::Euler { n_max } => ("euler", vec![("n_max", json!(n_max))], commands::euler(*n_max)),
        Command::Family { b, c, a } => (
            "family",
            vec![("b", json!(b)), ("c", json!(c)), ("a", json!(a))],
            commands::family(*b, *c, a.as_deref(), g.precision),
        ),
        Command::Verify { x, y, v, w } => (
            "verify",
            vec![("x", json!(x)), ("y", json!(y)), ("v", json!(v)), ("w", json!(w))],
            commands::verify(x, y, v, w),
        ),
        Command::Digits { b, c } => (
            "digits",
            vec![("b", json!(b)), ("c", json!(c))],
            commands::digits(*b, *c),
        ),
        Command::VpvEval { x, y, form } => {
            let mut input = vec![("x", json!(x)), ("y", json!(y)), ("form", json!(form))];
            input.extend(numeric());
            let outcome =
                commands::eval_options(g).and_then(|opts| commands::vpv_eval(x, y, form, &opts));
            ("vpv-eval", input, outcome)
        }
        Command::Transform(args) => {
            let mut input = vec![
                ("n", json!(args.n)),
                ("a", json!(args.a)),
                ("b", json!(args.b)),
                ("c", json!(args.c)),
                ("tolerance", json!(args.tolerance)),
                ("point_budget", json!(args.point_budget)),
            ];
            input.extend(numeric());
            let outcome =
                commands::eval_options(g).and_then(|opts| commands::transform(args, &opts));
            ("transform", input, outcome)
        }
        Command::Search { b_max, c_max } => (
            "search",
            vec![("b_max", json!(b_max)), ("c_max", json!(c_max))],
            commands::search(*b_max, *c_max),
        ),
    };
    input.retain(|(_, v)| !v.is_null());
    let (results, status, message) = match outcome {
        Ok(done) => done,
        Err(e) => (Value::Null, Status::Error, e.to_string()),
    };
    CommandResult {
        command: name.to_string(),
        inputs: inputs(&input),
        results,
        status,
        message,
    }
}
