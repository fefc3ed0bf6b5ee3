//! Command-line front end.
//!
//! Exit codes: 0 success, 1 infeasible or NO, 2 usage or unsupported input,
//! 3 invalid input document.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::decision::decide;
use crate::endpoint::solve_endpoint;
use crate::error::Error;
use crate::extreme::{solve_dynamic_fixed, solve_dynamic_variable, solve_static_fixed};
use crate::hardness::{gen_3partition_bcvr, gen_partition_bcfr, random_instance, RandomParams};
use crate::io::{
    parse_instance_document, parse_solution, serialize_instance, serialize_solution, InstanceDocument, Metadata,
    SolutionDocument,
};
use crate::model::{verify_solution, OrderConstraint, ProblemInstance, RadiusKind, Solution};
use crate::search::{maximize_constrained, maximize_exhaustive, SearchConfig};
use crate::svg::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Parser)]
#[command(name = "barrier", version, about = "Maximize the coverage lifetime of a line barrier by mobile sensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a deployment of maximum lifetime.
    Solve(SolveArgs),
    /// Decide whether a lifetime is achievable under an order.
    Decide(DecideArgs),
    /// Write a generated instance.
    Generate(GenerateArgs),
    /// Check a solution document against an instance.
    Verify(VerifyArgs),
    /// Draw a solution as SVG.
    Plot(PlotArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance document.
    instance: PathBuf,
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Required left-to-right order, 1-based, e.g. 1,3,2.
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<usize>>,
    /// Largest instance solved by trying every order.
    #[arg(long, default_value_t = 8)]
    max_exhaustive: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Record wall time in the solution document.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecideArgs {
    instance: PathBuf,
    /// Lifetime to test.
    #[arg(long)]
    t: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    order: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    kind: Generator,
}

#[derive(Subcommand)]
enum Generator {
    /// Fixed-radii gadget from a Partition list.
    Partition {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        /// Common starting point of all sensors.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Variable-radii gadget from a 3-Partition instance.
    ThreePartition {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Radii::Variable)]
        radii: Radii,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Start every sensor at 0 or 1.
        #[arg(long)]
        endpoints: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Radii {
    Fixed,
    Variable,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    solution: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    instance: PathBuf,
    solution: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct DecisionDocument {
    t: f64,
    achievable: bool,
    order: Vec<usize>,
    covered_prefix_trace: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<SolutionDocument>,
}

#[derive(Serialize)]
struct ReportDocument {
    feasible: bool,
    max_gap: f64,
    battery_violation: f64,
    /// Absent when no sensor is active.
    #[serde(skip_serializing_if = "Option::is_none")]
    realized_lifetime: Option<f64>,
    radius_mismatches: Vec<usize>,
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) | Error::TooLarge { .. } | Error::InvalidParameter(_) => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize to JSON");
    s.push('\n');
    s
}

fn load_instance(path: &Path) -> Result<(ProblemInstance<f64>, Option<OrderConstraint>), Failure> {
    let doc = parse_instance_document(&read(path)?)?;
    Ok((doc.instance()?, doc.order_constraint()?))
}

fn load_solution(path: &Path, inst: &ProblemInstance<f64>) -> Result<Solution<f64>, Failure> {
    let sol = parse_solution(&read(path)?)?.solution();
    if sol.y.len() != inst.len() {
        return Err(Error::LengthMismatch {
            expected: inst.len(),
            got: sol.y.len(),
        }
        .into());
    }
    Ok(sol)
}

fn parse_order(order: &[usize]) -> Result<OrderConstraint, Failure> {
    OrderConstraint::from_one_based(order).map_err(|e| usage(format!("--order: {e}")))
}

type Solved = (Solution<f64>, &'static str, Option<OrderConstraint>, bool);

fn dispatch(inst: &ProblemInstance<f64>, order: Option<OrderConstraint>, cfg: &SearchConfig<f64>) -> Result<Solved, Failure> {
    let cost = inst.move_cost();
    if cost.is_static() || cost.is_free() {
        let (sol, name) = match (inst.kind(), cost.is_static()) {
            (RadiusKind::Fixed, true) => (solve_static_fixed(inst)?, "static-fixed-greedy"),
            (RadiusKind::Fixed, false) => (solve_dynamic_fixed(inst)?, "dynamic-fixed-greedy"),
            (RadiusKind::Variable, false) => (solve_dynamic_variable(inst)?, "dynamic-variable-closed-form"),
            (RadiusKind::Variable, true) => return Err(Error::Unsupported("static variable-radii".into()).into()),
        };
        return Ok((sol, name, None, false));
    }
    if let Some(order) = order {
        order.check_len(inst.len())?;
        return Ok((maximize_constrained(inst, &order, cfg)?, "constrained", Some(order), true));
    }
    if inst.on_endpoints() {
        let (sol, order) = solve_endpoint(inst, cfg)?;
        return Ok((sol, "endpoint", order, true));
    }
    if inst.len() > cfg.max_order_n {
        return Err(usage(format!(
            "instance has {} sensors but order enumeration is limited to {}; pass --order or raise --max-exhaustive",
            inst.len(),
            cfg.max_order_n
        )));
    }
    let (sol, order) = maximize_exhaustive(inst, cfg)?;
    Ok((sol, "exhaustive", Some(order), true))
}

fn solve(args: SolveArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (inst, doc_order) = load_instance(&args.instance)?;
    let order = match &args.order {
        Some(o) => Some(parse_order(o)?),
        None => doc_order,
    };
    let cfg = SearchConfig {
        epsilon: args.epsilon,
        max_order_n: args.max_exhaustive,
    };
    let started = Instant::now();
    let (sol, solver, order, searched) = dispatch(&inst, order, &cfg)?;
    let elapsed = started.elapsed();
    let text = match args.format {
        Format::Svg => render_svg(&inst, &sol),
        Format::Json => {
            let mut doc = SolutionDocument::from_solution(&sol, solver, searched.then_some(args.epsilon), order.as_ref());
            if args.timing {
                doc.wall_time_ms = Some(elapsed.as_secs_f64() * 1e3);
            }
            serialize_solution(&doc)
        }
    };
    emit(&text, args.out.as_deref(), stdout)?;
    Ok(if sol.achievable { EXIT_OK } else { EXIT_NO })
}

fn decide_cmd(args: DecideArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (inst, _) = load_instance(&args.instance)?;
    let order = parse_order(&args.order)?;
    order.check_len(inst.len())?;
    let out = decide(&inst, &order, args.t)?;
    let doc = DecisionDocument {
        t: args.t,
        achievable: out.achievable,
        order: order.to_one_based(),
        covered_prefix_trace: out.covered_prefix_trace,
        witness: out
            .witness
            .as_ref()
            .map(|w| SolutionDocument::from_solution(w, "decision", None, Some(&order))),
    };
    emit(&to_json(&doc), args.out.as_deref(), stdout)?;
    Ok(if out.achievable { EXIT_OK } else { EXIT_NO })
}

fn generate(args: GenerateArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (inst, out, metadata) = match args.kind {
        Generator::Partition {
            values,
            p,
            a,
            alpha,
            out,
        } => (gen_partition_bcfr(&values, p, a, alpha)?.instance, out, Metadata {
            seed: None,
            generator: Some("partition".into()),
        }),
        Generator::ThreePartition {
            values,
            m,
            q,
            a,
            alpha,
            out,
        } => (gen_3partition_bcvr(&values, m, q, a, alpha)?.instance, out, Metadata {
            seed: None,
            generator: Some("three-partition".into()),
        }),
        Generator::Random {
            n,
            radii,
            seed,
            alpha,
            a,
            endpoints,
            out,
        } => {
            let kind = match radii {
                Radii::Fixed => RadiusKind::Fixed,
                Radii::Variable => RadiusKind::Variable,
            };
            let params = RandomParams {
                alpha,
                move_cost: a,
                endpoints_only: endpoints,
                ..RandomParams::default()
            };
            (random_instance(n, kind, seed, &params)?, out, Metadata {
                seed: Some(seed),
                generator: Some("random".into()),
            })
        }
    };
    let mut doc = InstanceDocument::from_instance(&inst);
    doc.metadata = Some(metadata);
    emit(&serialize_instance(&doc), out.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

fn verify(args: VerifyArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (inst, _) = load_instance(&args.instance)?;
    let sol = load_solution(&args.solution, &inst)?;
    let rep = verify_solution(&inst, &sol, args.tol);
    let doc = ReportDocument {
        feasible: rep.feasible,
        max_gap: rep.max_gap,
        battery_violation: rep.battery_violation,
        realized_lifetime: rep.realized_lifetime.is_finite().then_some(rep.realized_lifetime),
        radius_mismatches: rep.radius_mismatches.iter().map(|i| i + 1).collect(),
    };
    emit(&to_json(&doc), args.out.as_deref(), stdout)?;
    Ok(if rep.feasible { EXIT_OK } else { EXIT_NO })
}

fn plot(args: PlotArgs, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let (inst, _) = load_instance(&args.instance)?;
    let sol = load_solution(&args.solution, &inst)?;
    emit(&render_svg(&inst, &sol), args.out.as_deref(), stdout)?;
    Ok(EXIT_OK)
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => solve(args, stdout),
        Command::Decide(args) => decide_cmd(args, stdout),
        Command::Generate(args) => generate(args, stdout),
        Command::Verify(args) => verify(args, stdout),
        Command::Plot(args) => plot(args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
