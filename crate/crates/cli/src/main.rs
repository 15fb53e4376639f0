//! `cotangent`: analyze resolution graphs, print the generating series, run
//! the brute-force cohomology oracle and the self-test.
//!
//! Every subcommand accepts `--json`. JSON replies carry `"schema": "1"`,
//! the command name and the status; all integers are decimal strings.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cotangent::blowup::MultiplicityTree;
use cotangent::formulas::{analyze, AnalysisError, AnalysisReport, Bound, DEFAULT_IMAX};
use cotangent::harrison::{
    harrison_dim, hochschild_dim, make_fat_point, CoefficientModule, HarrisonError,
};
use cotangent::resgraph::{GraphError, ResolutionGraph};
use cotangent::selftest;
use cotangent::series::{c_mk, p_series, q_series, SeriesError};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "cotangent",
    version,
    about = "T^i dimensions of rational surface singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a resolution graph given as a JSON file.
    Analyze {
        path: PathBuf,
        /// Largest i for which dim T^i is reported.
        #[arg(long = "max-i", default_value_t = DEFAULT_IMAX)]
        max_i: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print c_{D-1,k}, Q_D and P_D through t^N.
    Series {
        #[arg(long = "d")]
        d: u64,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force cohomology of the fat point Z_M in degree K.
    Oracle {
        #[arg(long = "m")]
        m: u64,
        #[arg(long = "k")]
        k: usize,
        #[arg(long, value_enum)]
        coeffs: Coeffs,
        /// Compute Hochschild instead of Harrison cohomology.
        #[arg(long)]
        hochschild: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeffs {
    Trivial,
    Regular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    InvalidInput,
    NotRational,
    NotApplicable,
    BudgetExceeded,
    Failed,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InvalidInput => "invalid-input",
            Status::NotRational => "not-rational",
            Status::NotApplicable => "not-applicable",
            Status::BudgetExceeded => "budget-exceeded",
            Status::Failed => "failed",
        }
    }

    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::InvalidInput => 2,
            Status::NotRational => 3,
            Status::NotApplicable => 4,
            Status::BudgetExceeded => 5,
        }
    }
}

/// A finished command: the same content as text and as JSON.
struct Reply {
    status: Status,
    text: String,
    result: Value,
}

/// A command that could not produce its result.
struct Failure {
    status: Status,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(status: Status, kind: &'static str, message: impl ToString) -> Self {
        Failure {
            status,
            kind,
            message: message.to_string(),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let status = match e {
            GraphError::NotRational(_) => Status::NotRational,
            _ => Status::InvalidInput,
        };
        Failure::new(status, e.code(), e)
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::NotRational { .. } => {
                Failure::new(Status::NotRational, "not-rational", e)
            }
            AnalysisError::NotApplicable { .. } => {
                Failure::new(Status::NotApplicable, "low-multiplicity", e)
            }
            AnalysisError::Graph(g) => g.into(),
            AnalysisError::Formula(_) => Failure::new(Status::InvalidInput, "formula", e),
        }
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        Failure::new(Status::InvalidInput, "series", e)
    }
}

impl From<HarrisonError> for Failure {
    fn from(e: HarrisonError) -> Self {
        match e {
            HarrisonError::BudgetExceeded { .. } => {
                Failure::new(Status::BudgetExceeded, "budget-exceeded", e)
            }
            HarrisonError::NotClosed(_) => Failure::new(Status::Failed, "not-closed", e),
            _ => Failure::new(Status::InvalidInput, "oracle", e),
        }
    }
}

fn s(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bound_text(b: &Bound) -> String {
    if b.exact {
        format!("{} (exact)", b.value)
    } else {
        format!("≥ {} (lower bound)", b.value)
    }
}

fn bound_json(b: &Bound) -> Value {
    json!({ "value": s(&b.value), "exact": b.exact })
}

fn tree_json(t: &MultiplicityTree) -> Value {
    json!({
        "multiplicity": s(t.mult),
        "vertices": t.graph.vertices().iter().map(|v| v.id.clone()).collect::<Vec<_>>(),
        "reduced": t.reduced,
        "dropped_rdps": s(t.dropped_rdp_count),
        "children": t.children.iter().map(tree_json).collect::<Vec<_>>(),
    })
}

fn tree_text(t: &MultiplicityTree, depth: usize, out: &mut String) {
    let ids: Vec<&str> = t.graph.vertices().iter().map(|v| v.id.as_str()).collect();
    let _ = writeln!(
        out,
        "  {}d = {} on {{{}}}, reduced {}, dropped RDPs {}",
        "  ".repeat(depth),
        t.mult,
        ids.join(", "),
        yes_no(t.reduced),
        t.dropped_rdp_count
    );
    for c in &t.children {
        tree_text(c, depth + 1, out);
    }
}

fn analyze_reply(g: &ResolutionGraph, r: &AnalysisReport) -> Reply {
    let mut text = String::new();
    let cycle: Vec<String> = r
        .cycle
        .labelled(g)
        .map(|(id, a)| format!("{id}={a}"))
        .collect();
    let _ = writeln!(text, "rational: {}", yes_no(r.rational));
    let _ = writeln!(text, "fundamental cycle: {}", cycle.join(" "));
    let _ = writeln!(text, "multiplicity: {}", r.mult);
    let _ = writeln!(
        text,
        "reduced at every point: {}",
        yes_no(r.reduced_everywhere)
    );
    let _ = writeln!(text, "multiplicity tree:");
    tree_text(&r.tree, 0, &mut text);
    for (i, v) in &r.tdims {
        let _ = writeln!(text, "dim T^{i}: {v}");
    }
    let _ = writeln!(text, "dim T^2: {}", bound_text(&r.t2));
    let _ = writeln!(text, "cod Artin component: {}", bound_text(&r.codim_ac));
    let _ = writeln!(text, "sum (d(P)-1): {}", r.sum_d_minus_1);
    let _ = writeln!(text, "sum (b_i-1): {}", r.sum_b_minus_1);
    let _ = writeln!(
        text,
        "good maximal deformation obstructed: {}",
        yes_no(r.gmd_obstructed)
    );

    let cycle_json: Vec<Value> = r
        .cycle
        .labelled(g)
        .map(|(id, a)| json!({ "id": id, "coefficient": s(a) }))
        .collect();
    let tdims: serde_json::Map<String, Value> =
        r.tdims.iter().map(|(i, v)| (i.to_string(), s(v))).collect();
    let result = json!({
        "rational": r.rational,
        "fundamental_cycle": cycle_json,
        "multiplicity": s(r.mult),
        "reduced_everywhere": r.reduced_everywhere,
        "tree": tree_json(&r.tree),
        "tdim": tdims,
        "t2": bound_json(&r.t2),
        "codim_artin_component": bound_json(&r.codim_ac),
        "gmd": {
            "sum_d_minus_1": s(r.sum_d_minus_1),
            "sum_b_minus_1": s(r.sum_b_minus_1),
            "obstructed": r.gmd_obstructed,
        },
    });
    Reply {
        status: Status::Ok,
        text,
        result,
    }
}

fn cmd_analyze(path: &PathBuf, max_i: u64) -> Result<Reply, Failure> {
    let doc = std::fs::read_to_string(path).map_err(|e| {
        Failure::new(
            Status::InvalidInput,
            "io",
            format!("{}: {e}", path.display()),
        )
    })?;
    let g = ResolutionGraph::parse(&doc)?;
    let report = analyze(&g, max_i)?;
    Ok(analyze_reply(&g, &report))
}

fn join(values: &[BigInt]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_series(d: u64, order: usize) -> Result<Reply, Failure> {
    let q = q_series(d, order)?;
    let p = p_series(d, order)?;
    let c: Vec<BigInt> = (1..=order as u64)
        .map(|k| c_mk(d - 1, k))
        .collect::<Result<_, _>>()?;
    let q: Vec<BigInt> = (1..=order).map(|i| q.coeff(i).to_integer()).collect();
    let p: Vec<BigInt> = (1..=order).map(|i| p.coeff(i).to_integer()).collect();

    let mut text = String::new();
    let _ = writeln!(text, "c_{{{},k}}, k = 1..{order}: {}", d - 1, join(&c));
    let _ = writeln!(text, "Q_{d}, t^1..t^{order}: {}", join(&q));
    let _ = writeln!(text, "P_{d}, t^1..t^{order}: {}", join(&p));
    let strings = |v: &[BigInt]| v.iter().map(s).collect::<Vec<_>>();
    let result = json!({
        "d": s(d),
        "order": s(order),
        "c": strings(&c),
        "q": strings(&q),
        "p": strings(&p),
    });
    Ok(Reply {
        status: Status::Ok,
        text,
        result,
    })
}

fn cmd_oracle(m: u64, k: usize, coeffs: Coeffs, hochschild: bool) -> Result<Reply, Failure> {
    let (module, module_name) = match coeffs {
        Coeffs::Trivial => (CoefficientModule::Trivial, "trivial"),
        Coeffs::Regular => (CoefficientModule::Regular, "regular"),
    };
    let alg = make_fat_point(m);
    let (theory, brute) = if hochschild {
        ("hochschild", hochschild_dim(&alg, module, k)?)
    } else {
        ("harrison", harrison_dim(&alg, module, k)?)
    };

    let mut text = String::new();
    let _ = writeln!(
        text,
        "{theory} cohomology of Z_{m}, {module_name} coefficients, degree {k}"
    );
    let _ = writeln!(text, "brute force: {brute}");
    let mut result = json!({
        "theory": theory,
        "m": s(m),
        "k": s(k),
        "coefficients": module_name,
        "brute_force": s(brute),
    });
    let mut status = Status::Ok;
    if matches!(coeffs, Coeffs::Trivial) && !hochschild {
        let formula = c_mk(m, k as u64)?;
        let matched = formula == BigInt::from(brute);
        let verdict = if matched { "MATCH" } else { "MISMATCH" };
        let _ = writeln!(text, "formula c_{{{m},{k}}}: {formula}");
        let _ = writeln!(text, "{verdict}");
        result["formula"] = s(&formula);
        result["verdict"] = s(verdict);
        if !matched {
            status = Status::Failed;
        }
    }
    Ok(Reply {
        status,
        text,
        result,
    })
}

fn cmd_selftest() -> Reply {
    let outcomes = selftest::run_all();
    let mut text = String::new();
    for o in &outcomes {
        let _ = writeln!(text, "{}", o.line());
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(text, "{passed}/{} criteria passed", outcomes.len());
    let criteria: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({ "id": s(o.id), "name": o.name, "passed": o.passed, "detail": o.detail }))
        .collect();
    let status = if passed == outcomes.len() {
        Status::Ok
    } else {
        Status::Failed
    };
    Reply {
        status,
        text,
        result: json!({ "criteria": criteria }),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Series { .. } => "series",
        Command::Oracle { .. } => "oracle",
        Command::Selftest { .. } => "selftest",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let (json_out, outcome) = match &cli.command {
        Command::Analyze { path, max_i, json } => (*json, cmd_analyze(path, *max_i)),
        Command::Series { d, order, json } => (*json, cmd_series(*d, *order)),
        Command::Oracle {
            m,
            k,
            coeffs,
            hochschild,
            json,
        } => (*json, cmd_oracle(*m, *k, *coeffs, *hochschild)),
        Command::Selftest { json } => (*json, Ok(cmd_selftest())),
    };

    let status = match &outcome {
        Ok(r) => r.status,
        Err(f) => f.status,
    };
    if json_out {
        let mut doc = json!({ "schema": "1", "command": name, "status": status.name() });
        match outcome {
            Ok(r) => doc["result"] = r.result,
            Err(f) => doc["error"] = json!({ "kind": f.kind, "message": f.message }),
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("JSON values serialize")
        );
    } else {
        match outcome {
            Ok(r) => print!("{}", r.text),
            Err(f) => eprintln!("error ({}): {}", status.name(), f.message),
        }
    }
    ExitCode::from(status.exit_code())
}
