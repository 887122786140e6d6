//! Command-line front end: solve a problem, run a convergence ladder, or
//! compare measured errors against the theoretical bounds.

mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use fide::analysis::{bound_s1, bound_s2, bound_s3, convergence_study, mae};
use fide::problem::SchemeKind;
use fide::problems::{builtin, load_problem, BuiltinProblem, BUILTIN_NAMES};
use fide::quadrature::{gauss_legendre, QuadratureRule, DEFAULT_ORDER};
use fide::solver::solve;
use fide::{Error as FideError, Problem64};

use table::{full, sig6, OutputTable};

const QUAD_ORDER_ENV: &str = "FIDE_QUAD_ORDER";

#[derive(Parser)]
#[command(
    name = "fide",
    version,
    about = "Solvers for linear fractional integro-differential equations on [0, 1]"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem on a uniform mesh and print the nodal solution
    Solve(SolveArgs),
    /// Run a step-halving ladder and tabulate error and convergence order
    Convergence(ConvergenceArgs),
    /// Compare measured errors with the theoretical error bounds
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Built-in problem (ex5.1, ex5.2, ex5.3) or path to a problem config
    #[arg(long)]
    problem: String,
    /// Discretization scheme: s1, s2 or s3
    #[arg(long)]
    scheme: String,
    /// Number of subintervals
    #[arg(long)]
    n: usize,
    /// Gauss-Legendre order for the kernel moments (2..=64)
    #[arg(long)]
    quad_order: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ConvergenceArgs {
    /// Built-in problem (ex5.1, ex5.2, ex5.3) or path to a problem config
    #[arg(long)]
    problem: String,
    /// Comma-separated schemes to run
    #[arg(long, default_value = "s1,s2,s3")]
    schemes: String,
    /// Comma-separated subinterval counts; each entry must double the last
    #[arg(long, default_value = "5,10,20,40,80")]
    n_ladder: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BoundsArgs {
    /// Built-in problem with bounded derivative metadata (ex5.1 or ex5.2)
    #[arg(long)]
    problem: String,
    /// Discretization scheme: s1, s2 or s3
    #[arg(long)]
    scheme: String,
    /// Comma-separated subinterval counts; each entry must double the last
    #[arg(long, default_value = "5,10,20,40,80")]
    n_ladder: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "csv"])]
    format: String,
    /// Write the table here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failures split by exit code: 1 for usage and validation, 2 for numerical
/// failures at run time.
enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

/// Numerical errors surfacing from a solve get exit code 2; anything else a
/// solve reports is a misconfigured problem, which is a usage error.
fn classify(err: FideError) -> CliError {
    match err {
        FideError::NearSingularPivot { .. }
        | FideError::NonFiniteValue { .. }
        | FideError::NonFiniteIntegrand { .. } => CliError::Runtime(err.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Convergence(args) => cmd_convergence(args),
        Command::Bounds(args) => cmd_bounds(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_scheme(text: &str) -> Result<SchemeKind, CliError> {
    match text {
        "s1" => Ok(SchemeKind::Linear),
        "s2" => Ok(SchemeKind::Quadratic),
        "s3" => Ok(SchemeKind::QuadraticLinear),
        other => Err(CliError::usage(format!(
            "unknown scheme `{other}`; valid schemes are s1, s2, s3"
        ))),
    }
}

fn parse_schemes(text: &str) -> Result<Vec<SchemeKind>, CliError> {
    text.split(',').map(str::trim).map(parse_scheme).collect()
}

fn parse_ladder(text: &str) -> Result<Vec<usize>, CliError> {
    let ladder: Vec<usize> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| CliError::usage(format!("invalid ladder entry `{}`", part.trim())))
        })
        .collect::<Result<_, _>>()?;
    if ladder.is_empty() || ladder[0] == 0 {
        return Err(CliError::usage(
            "ladder must start with a positive subinterval count",
        ));
    }
    for pair in ladder.windows(2) {
        if pair[1] != 2 * pair[0] {
            return Err(CliError::usage(format!(
                "ladder must double at every step ({} -> {})",
                pair[0], pair[1]
            )));
        }
    }
    Ok(ladder)
}

/// Quadrature order: explicit flag, then the FIDE_QUAD_ORDER environment
/// variable, then the default.
fn quadrature_rule(flag: Option<usize>) -> Result<QuadratureRule<f64>, CliError> {
    let order = match flag {
        Some(order) => order,
        None => match std::env::var(QUAD_ORDER_ENV) {
            Ok(text) => text.parse::<usize>().map_err(|_| {
                CliError::usage(format!(
                    "{QUAD_ORDER_ENV}=`{text}` is not a quadrature order"
                ))
            })?,
            Err(_) => DEFAULT_ORDER,
        },
    };
    gauss_legendre(order).map_err(|e| CliError::usage(e.to_string()))
}

enum LoadedProblem {
    Builtin(BuiltinProblem<f64>),
    Custom(Problem64),
}

impl LoadedProblem {
    fn spec(&self) -> &Problem64 {
        match self {
            LoadedProblem::Builtin(b) => b.spec(),
            LoadedProblem::Custom(p) => p,
        }
    }
}

fn load(problem: &str) -> Result<LoadedProblem, CliError> {
    if let Some(b) = builtin::<f64>(problem) {
        return Ok(LoadedProblem::Builtin(b));
    }
    if BUILTIN_NAMES
        .iter()
        .any(|n| problem.eq_ignore_ascii_case(n))
    {
        // e.g. `EX5.1`; keep the accepted spellings strict but explain
        return Err(CliError::usage(format!(
            "unknown problem `{problem}`; built-ins are {}",
            BUILTIN_NAMES.join(", ")
        )));
    }
    let text = std::fs::read_to_string(problem).map_err(|e| {
        CliError::usage(format!(
            "`{problem}` is not a built-in problem ({}) and could not be read as a config file: {e}",
            BUILTIN_NAMES.join(", ")
        ))
    })?;
    let spec =
        load_problem::<f64>(&text).map_err(|e| CliError::usage(format!("{problem}: {e}")))?;
    Ok(LoadedProblem::Custom(spec))
}

fn emit(table: &OutputTable, output: &OutputArgs) -> Result<(), CliError> {
    let rendered = match output.format.as_str() {
        "csv" => table.to_csv(),
        _ => table.to_text(),
    };
    write_out(rendered, output)
}

fn write_out(rendered: String, output: &OutputArgs) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn number_renderer(output: &OutputArgs) -> fn(f64) -> String {
    if output.format == "csv" {
        full
    } else {
        sig6
    }
}

fn cmd_solve(args: SolveArgs) -> Result<(), CliError> {
    let scheme = parse_scheme(&args.scheme)?;
    if args.n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let problem = load(&args.problem)?;
    let rule = quadrature_rule(args.quad_order)?;
    let result = solve(problem.spec(), scheme, args.n, &rule).map_err(classify)?;

    let fmt = number_renderer(&args.output);
    let with_exact = problem.spec().has_exact();
    let headers: &[&str] = if with_exact {
        &["x_j", "numerical", "exact", "error"]
    } else {
        &["x_j", "numerical"]
    };
    let title = format!(
        "{} | scheme {} | n = {}",
        problem.spec().name(),
        scheme,
        args.n
    );
    let mut out = OutputTable::new(title, headers);
    for (k, &phi) in result.values().iter().enumerate() {
        let x = result.mesh().node(k);
        let mut row = vec![fmt(x), fmt(phi)];
        if with_exact {
            let exact = problem.spec().exact(x).expect("checked above");
            row.push(fmt(exact));
            row.push(fmt(result.errors().expect("exact present")[k]));
        }
        out.push_row(row);
    }
    emit(&out, &args.output)
}

fn cmd_convergence(args: ConvergenceArgs) -> Result<(), CliError> {
    let schemes = parse_schemes(&args.schemes)?;
    let ladder = parse_ladder(&args.n_ladder)?;
    let problem = load(&args.problem)?;
    if !problem.spec().has_exact() {
        return Err(CliError::usage(format!(
            "problem `{}` has no exact solution, so the error ladder is undefined",
            problem.spec().name()
        )));
    }
    let rule = quadrature_rule(None)?;
    let fmt = number_renderer(&args.output);

    if args.output.format == "csv" {
        // one flat table; a scheme column keeps the single header line
        let mut out = OutputTable::new(String::new(), &["scheme", "h", "mae", "co"]);
        for &scheme in &schemes {
            let report =
                convergence_study(problem.spec(), scheme, &ladder, &rule).map_err(classify)?;
            for row in &report.rows {
                out.push_row(vec![
                    scheme.to_string(),
                    fmt(row.h),
                    fmt(row.mae),
                    row.order.map(fmt).unwrap_or_default(),
                ]);
            }
        }
        return emit(&out, &args.output);
    }

    let mut rendered = String::new();
    for (i, &scheme) in schemes.iter().enumerate() {
        let report = convergence_study(problem.spec(), scheme, &ladder, &rule).map_err(classify)?;
        let title = format!(
            "{} | scheme {} | MAE and convergence order",
            report.problem, scheme
        );
        let mut out = OutputTable::new(title, &["h", "mae", "co"]);
        for row in &report.rows {
            out.push_row(vec![
                fmt(row.h),
                fmt(row.mae),
                row.order.map(fmt).unwrap_or_default(),
            ]);
        }
        if i > 0 {
            rendered.push('\n');
        }
        rendered.push_str(&out.to_text());
    }
    write_out(rendered, &args.output)
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), CliError> {
    let scheme = parse_scheme(&args.scheme)?;
    let ladder = parse_ladder(&args.n_ladder)?;
    let problem = match load(&args.problem)? {
        LoadedProblem::Builtin(b) => b,
        LoadedProblem::Custom(_) => {
            return Err(CliError::usage(
                "bounds need the built-in derivative metadata; use ex5.1 or ex5.2",
            ))
        }
    };
    let rule = quadrature_rule(None)?;
    let fmt = number_renderer(&args.output);

    let title = format!(
        "{} | scheme {} | measured error vs theoretical bound",
        problem.name(),
        scheme
    );
    let mut out = OutputTable::new(title, &["h", "mae", "bound", "ratio"]);
    for &n in &ladder {
        let inputs = problem.bound_inputs(n).map_err(|err| match err {
            FideError::UnboundedDerivatives { .. } => CliError::usage(format!(
                "the exact solution of {} has unbounded second derivative at 0 \
                 (it is not twice continuously differentiable on [0, 1]), \
                 so the error bounds do not apply",
                problem.name()
            )),
            other => classify(other),
        })?;
        let result = solve(problem.spec(), scheme, n, &rule).map_err(classify)?;
        let measured = mae(&result).map_err(classify)?;
        let bound = match scheme {
            SchemeKind::Linear => bound_s1(&inputs),
            SchemeKind::Quadratic => bound_s2(n, &inputs),
            SchemeKind::QuadraticLinear => bound_s3(n, &inputs),
        }
        .map_err(classify)?;
        out.push_row(vec![
            fmt(1.0 / n as f64),
            fmt(measured),
            fmt(bound),
            fmt(measured / bound),
        ]);
    }
    emit(&out, &args.output)
}
