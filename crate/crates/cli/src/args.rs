use clap::{ArgGroup, Args, Parser, Subcommand};

/// Solutions of x^y = y^x and x^y·y^x = v^w·w^v, and visible-point
/// product identities built from them.
#[derive(Debug, Clone, Parser)]
#[command(name = "vpv", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "VPV_PRECISION_BITS", default_value_t = 256)]
    pub precision: u32,

    /// Truncation N of the lattice box N × N.
    #[arg(long, global = true, default_value_t = 400)]
    pub truncation: u64,

    /// Lattice region: axis (adds the point (0,1)) or strict (j, k >= 1).
    #[arg(long, global = true, default_value = "axis")]
    pub convention: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// List the rational solutions ((1+1/n)^n, (1+1/n)^(n+1)) of x^y = y^x.
    Euler {
        /// Largest n to list.
        n_max: u64,
    },
    /// Solution of x^y·y^x = v^w·w^v from the a = b + c family, or from the
    /// general parameters (a, b, c) when --a is given.
    Family {
        b: u32,
        c: u32,
        /// General-solution parameter a (a rational "p/q").
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
    },
    /// Exactly decide x^y·y^x = v^w·w^v for positive rationals.
    Verify {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(allow_hyphen_values = true)]
        v: String,
        #[arg(allow_hyphen_values = true)]
        w: String,
    },
    /// Decimal digit count of the common value of an integral family tuple.
    Digits { b: u32, c: u32 },
    /// Evaluate a truncated visible-point product against its closed form.
    VpvEval {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// direct or reciprocal.
        #[arg(long, default_value = "direct")]
        form: String,
    },
    /// Build a transform instance and verify it exactly and numerically.
    Transform(TransformArgs),
    /// Integral tuples of the a = b + c family in a parameter box.
    Search { b_max: u32, c_max: u32 },
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["n", "a"])))]
pub struct TransformArgs {
    /// Index of the x^y = y^x solution.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, requires_all = ["b", "c"], allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, requires = "a", allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, requires = "a", allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Largest combined tail bound accepted for quadruple instances.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Largest lattice box (points per product) for quadruple instances.
    #[arg(long, default_value_t = 10_000_000)]
    pub point_budget: u64,
}
