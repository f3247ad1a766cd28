use std::fmt::Write;

use bpoly::{FactorProduct, ReductionTrace, SparsePoly};
use candecomp::{dn_canonical, generic_decomposition, DecompError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quiver_core::{classify, classify_components, positive_roots, Quiver, QuiverType};
use reflect_engine::{run_reflect, Direction, ReflectError, DEFAULT_MAX_REFLECTIONS};
use serde_json::{json, Value};
use slice_engine::{run_slice, Diagnostic, SliceError};
use weyl_oracle::{
    budget_from_env, factor_negative, run_oracle, semi_invariant, variable_names, verify, OracleConfig, OracleError,
    OracleMode,
};

use crate::problem::ProblemFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Input = 1,
    Inapplicable = 2,
    Mismatch = 3,
    Internal = 4,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: Exit,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: Exit::Success, stdout, stderr: String::new() }
    }

    fn fail(code: Exit, stdout: String, stderr: String) -> Self {
        Outcome { code, stdout, stderr }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Slice,
    Reflect,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qbfn", about = "b-functions of quiver semi-invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the b-function by slicing or reflection functors.
    Bfn(BfnArgs),
    /// Canonical decomposition of β.
    Decompose(DecomposeArgs),
    /// Brute-force b-function from explicit semi-invariants.
    Verify(CommonArgs),
    /// Classification, Euler and Coxeter matrices, roots and weight forms.
    Info(CommonArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Problem file, or `-` for standard input.
    pub file: String,
    /// Exponent tuple, overriding the file (comma separated).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub m: Option<Vec<i64>>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BfnArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Also run the brute-force oracle and compare.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_REFLECTIONS)]
    pub max_reflections: usize,
    /// Print the reduction trace (text format).
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Use the type D diagram rule and print the diagram.
    #[arg(long)]
    pub dn_diagram: bool,
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Bfn(a) => &a.common,
            Command::Decompose(a) => &a.common,
            Command::Verify(a) | Command::Info(a) => a,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Bfn(_) => "bfn",
            Command::Decompose(_) => "decompose",
            Command::Verify(_) => "verify",
            Command::Info(_) => "info",
        }
    }
}

struct Failure {
    code: Exit,
    kind: &'static str,
    message: String,
    diagnostic: Option<Diagnostic>,
}

impl Failure {
    fn new(code: Exit, kind: &'static str, message: impl Into<String>) -> Self {
        Failure { code, kind, message: message.into(), diagnostic: None }
    }
}

fn slice_failure(e: SliceError) -> Failure {
    match e {
        SliceError::NotSliceable(d) => {
            Failure { code: Exit::Inapplicable, kind: "not_sliceable", message: d.render(), diagnostic: Some(*d) }
        }
        SliceError::Unsupported(_) => Failure::new(Exit::Inapplicable, "unsupported", e.to_string()),
        SliceError::Internal(_) | SliceError::Ineligible { .. } => Failure::new(Exit::Internal, "internal", e.to_string()),
        SliceError::ZeroSemiInvariant(_) => Failure::new(Exit::Input, "zero_semi_invariant", e.to_string()),
        _ => Failure::new(Exit::Input, "input", e.to_string()),
    }
}

fn reflect_failure(e: ReflectError) -> Failure {
    match e {
        ReflectError::Capped(_) | ReflectError::Stuck(_) => Failure::new(Exit::Inapplicable, "not_reducible", e.to_string()),
        ReflectError::NotSink(_) => Failure::new(Exit::Internal, "internal", e.to_string()),
        ReflectError::ZeroSemiInvariant(_) | ReflectError::DependsOnDroppedVertex(_) => {
            Failure::new(Exit::Input, "zero_semi_invariant", e.to_string())
        }
        _ => Failure::new(Exit::Input, "input", e.to_string()),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::Budget { .. } => Failure::new(Exit::Inapplicable, "budget", e.to_string()),
        OracleError::InexactDivision(_) | OracleError::NoPoint | OracleError::Shape => {
            Failure::new(Exit::Internal, "internal", e.to_string())
        }
        _ => Failure::new(Exit::Input, "input", e.to_string()),
    }
}

fn decomp_failure(e: DecompError) -> Failure {
    match e {
        DecompError::NotDynkin | DecompError::NotTypeA | DecompError::NotTypeD => {
            Failure::new(Exit::Inapplicable, "inapplicable", e.to_string())
        }
        DecompError::Quiver(_) => Failure::new(Exit::Input, "input", e.to_string()),
        _ => Failure::new(Exit::Internal, "internal", e.to_string()),
    }
}

/// A problem file together with its quiver and the effective exponents.
pub struct Loaded {
    pub problem: ProblemFile,
    pub quiver: Quiver,
    pub alphas: Vec<Vec<i64>>,
    pub m: Vec<i64>,
}

fn load(text: &str, m: Option<&[i64]>) -> Result<Loaded, Failure> {
    let problem = ProblemFile::parse(text).map_err(|e| Failure::new(Exit::Input, "parse", e.to_string()))?;
    let quiver = problem.quiver().expect("validated on parse");
    let alphas = problem.alphas(&quiver);
    let m = m.map(<[i64]>::to_vec).unwrap_or_else(|| problem.exponents());
    if m.len() != alphas.len() || m.iter().any(|&x| x < 0) {
        return Err(Failure::new(
            Exit::Input,
            "input",
            format!("exponents {m:?} must be nonnegative with {} entries", alphas.len()),
        ));
    }
    Ok(Loaded { problem, quiver, alphas, m })
}

fn b_name(l: usize) -> String {
    format!("b({})", variable_names(l).join(","))
}

fn verification_json(v: &Verification) -> Value {
    match v {
        Verification::Match { scalar } => json!({ "status": "match", "scalar": scalar, "detail": null }),
        Verification::Mismatch { detail, oracle } => {
            json!({ "status": "mismatch", "scalar": null, "detail": detail, "oracle": oracle })
        }
        Verification::Skipped(why) => json!({ "status": "skipped", "scalar": null, "detail": why }),
    }
}

enum Verification {
    Match { scalar: String },
    Mismatch { detail: String, oracle: String },
    Skipped(String),
}

impl Verification {
    fn text(&self) -> String {
        match self {
            Verification::Match { scalar } => format!("oracle: match (scalar {scalar})"),
            Verification::Mismatch { detail, .. } => format!("oracle: MISMATCH ({detail})"),
            Verification::Skipped(why) => format!("oracle: skipped ({why})"),
        }
    }
}

fn semi_invariants(l: &Loaded, seed: u64) -> Result<Vec<SparsePoly>, OracleError> {
    l.alphas.iter().map(|a| semi_invariant(&l.quiver, &l.problem.beta, a, seed)).collect()
}

fn oracle_config(seed: u64) -> OracleConfig {
    OracleConfig { mode: OracleMode::Modular, budget: budget_from_env(), seed }
}

fn run_verification(l: &Loaded, product: &FactorProduct, seed: u64) -> Result<Verification, Failure> {
    let fs = semi_invariants(l, seed).map_err(oracle_failure)?;
    match verify(product, &fs, &l.m, &oracle_config(seed)) {
        Ok(r) if r.matches => Ok(Verification::Match { scalar: r.scalar.expect("set on match").to_string() }),
        Ok(r) => Ok(Verification::Mismatch {
            detail: r.detail.unwrap_or_default(),
            oracle: r.oracle.display_with(&variable_names(r.oracle.nvars())),
        }),
        Err(e @ OracleError::Budget { .. }) => Ok(Verification::Skipped(e.to_string())),
        Err(e) => Err(oracle_failure(e)),
    }
}

struct Computed {
    method: &'static str,
    product: FactorProduct,
    trace: ReductionTrace,
    fallback: Option<Diagnostic>,
}

fn compute(l: &Loaded, a: &BfnArgs) -> Result<Computed, Failure> {
    let (q, beta) = (&l.quiver, &l.problem.beta);
    let reflect = |fallback| {
        run_reflect(q, beta, &l.alphas, &l.m, Direction::Auto, a.max_reflections)
            .map(|r| Computed { method: "reflect", product: r.product, trace: r.trace, fallback })
            .map_err(reflect_failure)
    };
    match a.method {
        Method::Slice => run_slice(q, beta, &l.alphas, &l.m)
            .map(|r| Computed { method: "slice", product: r.product, trace: r.trace, fallback: None })
            .map_err(slice_failure),
        Method::Reflect => reflect(None),
        Method::Auto => match run_slice(q, beta, &l.alphas, &l.m) {
            Ok(r) => Ok(Computed { method: "slice", product: r.product, trace: r.trace, fallback: None }),
            Err(SliceError::NotSliceable(d)) => reflect(Some(*d.clone())).map_err(|mut f| {
                f.message = format!("{}{}", d.render(), f.message);
                f.diagnostic = Some(*d);
                f
            }),
            Err(e) => Err(slice_failure(e)),
        },
    }
}

fn bfn(l: &Loaded, a: &BfnArgs) -> Result<Outcome, Failure> {
    let c = compute(l, a)?;
    let verification = if a.verify { Some(run_verification(l, &c.product, a.common.seed)?) } else { None };
    let nvars = c.product.nvars();
    let symbolic = c.trace.symbolic_sequence();
    let code = match verification {
        Some(Verification::Mismatch { .. }) => Exit::Mismatch,
        _ => Exit::Success,
    };
    let stdout = match a.common.format {
        Format::Json => {
            let v = json!({
                "command": "bfn",
                "method": c.method,
                "engine": c.trace.method,
                "b": c.product,
                "degree": c.product.degree(),
                "symbolic": symbolic,
                "slice_diagnostic": c.fallback,
                "verification": verification.as_ref().map(verification_json),
                "trace": c.trace,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(d) = &c.fallback {
                s.push_str(&d.render());
                s.push_str("falling back to reflection functors\n");
            }
            let _ = writeln!(s, "method: {}", c.trace.method);
            let _ = writeln!(s, "{} = {}", b_name(nvars), c.product);
            if !symbolic.is_empty() {
                let _ = writeln!(s, "symbolic: {}", symbolic.join(" "));
            }
            if a.trace {
                s.push_str(&c.trace.render_text());
            }
            if let Some(v) = &verification {
                let _ = writeln!(s, "{}", v.text());
            }
            s
        }
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn oracle_only(l: &Loaded, a: &CommonArgs) -> Result<Outcome, Failure> {
    let fs = semi_invariants(l, a.seed).map_err(oracle_failure)?;
    let run = run_oracle(&fs, &l.m, &oracle_config(a.seed)).map_err(oracle_failure)?;
    let names = variable_names(run.b.nvars());
    let expanded = run.b.display_with(&names);
    let factored = factor_negative(&run.b).map(|p| p.to_string());
    let degrees: Vec<u32> = fs.iter().map(|f| f.total_degree().unwrap_or(0)).collect();
    let stdout = match a.format {
        Format::Json => {
            let v = json!({
                "command": "verify",
                "b": expanded,
                "factored": factored,
                "degree": run.b.total_degree(),
                "expected_degree": run.expected_degree,
                "semi_invariant_degrees": degrees,
                "cost": run.cost.to_string(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "semi-invariant degrees: {degrees:?}");
            let _ = writeln!(s, "oracle {} = {}", b_name(names.len()), factored.as_deref().unwrap_or(&expanded));
            if factored.is_some() {
                let _ = writeln!(s, "expanded: {expanded}");
            }
            let _ = writeln!(s, "degree {} (expected {})", run.b.total_degree().unwrap_or(0), run.expected_degree);
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

fn decompose(l: &Loaded, a: &DecomposeArgs) -> Result<Outcome, Failure> {
    let beta = &l.problem.beta;
    let (d, diagram) = if a.dn_diagram {
        let (d, g) = dn_canonical(&l.quiver, beta, a.common.seed).map_err(decomp_failure)?;
        (d, Some(g))
    } else {
        (generic_decomposition(&l.quiver, beta, a.common.seed).map_err(decomp_failure)?, None)
    };
    let stdout = match a.common.format {
        Format::Json => {
            let v = json!({
                "command": "decompose",
                "beta": beta,
                "summands": d.parts.iter().map(|(v, k)| json!({ "dim": v, "multiplicity": k })).collect::<Vec<_>>(),
                "text": d.to_string(),
                "diagram": diagram.as_ref().map(|g| g.render()),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => {
            let mut s = format!("beta {}\ndecomposition {d}\n", bpoly::fmt_vec(beta));
            if let Some(g) = &diagram {
                s.push_str(&g.render());
            }
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

fn info(l: &Loaded, a: &CommonArgs) -> Outcome {
    let q = &l.quiver;
    let forms = l.problem.weight_forms(q);
    let types: Vec<String> = classify_components(q)
        .into_iter()
        .map(|(c, t)| {
            let vs: Vec<String> = c.iter().map(|&x| q.label(x).to_string()).collect();
            format!("{{{}}}: {t}", vs.join(","))
        })
        .collect();
    let connected_dynkin = matches!(classify(q), QuiverType::Dynkin(_)) && q.components().len() == 1;
    let roots = positive_roots(q).ok();
    let coxeter_number = connected_dynkin.then(|| quiver_core::coxeter_number(q).ok()).flatten();
    let euler = q.euler_matrix();
    let coxeter = q.coxeter_matrix();
    let stdout = match a.format {
        Format::Json => {
            let v = json!({
                "command": "info",
                "components": types,
                "euler": euler.rows(),
                "coxeter": coxeter.rows(),
                "coxeter_number": coxeter_number,
                "positive_roots": roots,
                "beta": l.problem.beta,
                "weights": forms,
                "tits": forms.iter().map(|f| q.tits_form(&f.alpha)).collect::<Vec<_>>(),
                "m": l.m,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "components: {}", types.join("; "));
            let _ = writeln!(s, "Euler matrix:\n{euler}");
            let _ = writeln!(s, "Coxeter matrix:\n{coxeter}");
            if let Some(h) = coxeter_number {
                let _ = writeln!(s, "Coxeter number: {h}");
            }
            if let Some(r) = &roots {
                let _ = writeln!(s, "positive roots ({}):", r.len());
                for chunk in r.chunks(6) {
                    let row: Vec<String> = chunk.iter().map(|v| bpoly::fmt_vec(v)).collect();
                    let _ = writeln!(s, "  {}", row.join(" "));
                }
            }
            let _ = writeln!(s, "beta {}", bpoly::fmt_vec(&l.problem.beta));
            for (i, f) in forms.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "weight {}: alpha {} alphastar {} sigma {} ⟨α,α⟩={}",
                    i + 1,
                    bpoly::fmt_vec(&f.alpha),
                    bpoly::fmt_vec(&f.alpha_star),
                    bpoly::fmt_vec(&f.sigma),
                    q.tits_form(&f.alpha)
                );
            }
            let _ = writeln!(s, "m {}", bpoly::fmt_vec(&l.m));
            s
        }
    };
    Outcome::ok(stdout)
}

fn failure_outcome(command: &str, format: Format, f: Failure) -> Outcome {
    match format {
        Format::Json => {
            let v = json!({
                "command": command,
                "error": { "kind": f.kind, "message": f.message, "exit_code": f.code as i32, "diagnostic": f.diagnostic },
            });
            Outcome::fail(f.code, format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")), String::new())
        }
        Format::Text => {
            let mut msg = f.message;
            if !msg.ends_with('\n') {
                msg.push('\n');
            }
            Outcome::fail(f.code, String::new(), msg)
        }
    }
}

/// Runs a parsed command on the problem text.
pub fn run_on(command: &Command, text: &str) -> Outcome {
    let common = command.common();
    let result = load(text, common.m.as_deref()).and_then(|l| match command {
        Command::Bfn(a) => bfn(&l, a),
        Command::Decompose(a) => decompose(&l, a),
        Command::Verify(a) => oracle_only(&l, a),
        Command::Info(a) => Ok(info(&l, a)),
    });
    result.unwrap_or_else(|f| failure_outcome(command.name(), common.format, f))
}

/// Reads the problem file named on the command line and runs the command.
pub fn run(cli: &Cli) -> Outcome {
    let common = cli.command.common();
    let text = if common.file == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&common.file)
    };
    match text {
        Ok(t) => run_on(&cli.command, &t),
        Err(e) => failure_outcome(
            cli.command.name(),
            common.format,
            Failure::new(Exit::Input, "io", format!("cannot read {}: {e}", common.file)),
        ),
    }
}
