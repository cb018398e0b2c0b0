use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use measuring_lab_cli::commands::{self, FibMode, Opts};
use measuring_lab_cli::config::Budgets;
use measuring_lab_cli::error::CliError;
use measuring_lab_cli::report::{Input, Report};
use measuring_lab_cli::spec::{parse_field, Loader};
use measuring_lab_cli::truncation::Cache;

/// Check algebraic structures and compute truncated measuring coalgebras.
///
/// Writes a JSON report to stdout (or --out) and a summary to stderr. Exit
/// codes: 0 pass, 1 check failure, 2 parse or schema error, 3 budget
/// exceeded, 4 truncation insufficient, 5 other errors.
#[derive(Parser)]
#[command(name = "measuring-lab", version)]
struct Cli {
    /// Truncation degree.
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Largest matrix size for block representations.
    #[arg(long, global = true, default_value_t = 1)]
    mmax: usize,
    /// Field for every loaded file, overriding the files' own ("Q", "F2", ...).
    #[arg(long, global = true)]
    field: Option<String>,
    /// TOML file with a [budgets] table.
    #[arg(long, global = true)]
    budget: Option<String>,
    /// JSON list of extra algebra maps, as row lists, to seed the truncation.
    #[arg(long, global = true)]
    hints: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for cached truncations; MEASURING_LAB_CACHE takes precedence.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Write the produced structure or truncation bundle here.
    #[arg(long, global = true)]
    emit: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate any structure file against its axioms.
    Check { path: String },
    /// Dualize an algebra, coalgebra or bimonoid.
    Dual { path: String },
    /// The convolution algebra [C, A].
    Convolution { coalgebra: String, algebra: String },
    /// Restrict a module along an algebra map.
    Restrict { morphism: String, module: String },
    /// Corestrict a comodule along a coalgebra map.
    Corestrict { morphism: String, comodule: String },
    /// Verify a measuring C ⊗ A → B.
    MeasureVerify { path: String },
    /// The truncated universal measuring coalgebra P_n(A, B).
    Pab { a: String, b: String },
    /// The truncated universal measuring comodule Q_n(M, N).
    Qmn { m: String, n: String },
    /// Count measurings C ⊗ A → B and coalgebra maps C → P_n(A, B).
    Census { a: String, b: String, c: String },
    /// Compare P_n ⊗ [V, N] with Q_n(A ⊗ V, N).
    Isocomod {
        a: String,
        b: String,
        n: String,
        #[arg(long, default_value_t = 1)]
        vdim: usize,
    },
    /// Fibration checks on a finite category instance.
    Fib { mode: FibMode, instance: String },
    /// Hopf-type structures.
    #[command(subcommand)]
    Hopf(HopfCommand),
}

#[derive(Subcommand)]
enum HopfCommand {
    /// Validate a bimonoid or Hopf-type structure file.
    Check { path: String },
    /// Q_n(M, N) as a comodule monoid over P_n(H, A).
    Qmonoid { comonoid: String, monoid: String },
    /// Lift a Hopf module over H to one over its finite dual.
    Lift {
        path: String,
        /// Also run the route through the lax monoidal structure.
        #[arg(long)]
        lax: bool,
    },
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Dual { .. } => "dual",
        Command::Convolution { .. } => "convolution",
        Command::Restrict { .. } => "restrict",
        Command::Corestrict { .. } => "corestrict",
        Command::MeasureVerify { .. } => "measure-verify",
        Command::Pab { .. } => "pab",
        Command::Qmn { .. } => "qmn",
        Command::Census { .. } => "census",
        Command::Isocomod { .. } => "isocomod",
        Command::Fib { .. } => "fib",
        Command::Hopf(HopfCommand::Check { .. }) => "hopf check",
        Command::Hopf(HopfCommand::Qmonoid { .. }) => "hopf qmonoid",
        Command::Hopf(HopfCommand::Lift { .. }) => "hopf lift",
    }
}

fn dispatch(cli: &Cli, loader: &mut Loader) -> Result<Report, CliError> {
    let budgets = match &cli.budget {
        Some(p) => Budgets::from_toml(p)?,
        None => Budgets::default(),
    };
    let (v_dim, lax) = match &cli.command {
        Command::Isocomod { vdim, .. } => (*vdim, false),
        Command::Hopf(HopfCommand::Lift { lax, .. }) => (1, *lax),
        _ => (1, false),
    };
    let opts = Opts {
        degree: cli.degree,
        m_max: cli.mmax,
        budgets,
        hints: cli.hints.clone(),
        cache: std::env::var_os("MEASURING_LAB_CACHE")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| cli.cache_dir.clone())
            .map(|d| Cache::new(&d)),
        emit: cli.emit.clone(),
        v_dim,
        lax,
    };
    match &cli.command {
        Command::Check { path } => commands::check(loader, &opts, path),
        Command::Dual { path } => commands::dual(loader, &opts, path),
        Command::Convolution { coalgebra, algebra } => commands::convolution(loader, &opts, coalgebra, algebra),
        Command::Restrict { morphism, module } => commands::restrict_cmd(loader, &opts, morphism, module),
        Command::Corestrict { morphism, comodule } => commands::corestrict_cmd(loader, &opts, morphism, comodule),
        Command::MeasureVerify { path } => commands::measure_verify(loader, path),
        Command::Pab { a, b } => commands::pab(loader, &opts, a, b),
        Command::Qmn { m, n } => commands::qmn(loader, &opts, m, n),
        Command::Census { a, b, c } => commands::census(loader, &opts, a, b, c),
        Command::Isocomod { a, b, n, .. } => commands::isocomod(loader, &opts, a, b, n),
        Command::Fib { mode, instance } => commands::fib(loader, &opts, *mode, instance),
        Command::Hopf(HopfCommand::Check { path }) => commands::hopf_check(loader, &opts, path),
        Command::Hopf(HopfCommand::Qmonoid { comonoid, monoid }) => {
            commands::hopf_qmonoid(loader, &opts, comonoid, monoid)
        }
        Command::Hopf(HopfCommand::Lift { path, .. }) => commands::hopf_lift(loader, &opts, path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = Report::new(name(&cli.command));
    let field = match cli.field.as_deref().map(|s| parse_field(s).ok_or(s)).transpose() {
        Ok(f) => f,
        Err(s) => {
            let e = CliError::schema("--field", format!("unknown field {s:?}"));
            report.fail_with(&e);
            return finish(&cli, report, start, Some(e.exit_code()));
        }
    };
    let mut loader = Loader::new(field);
    let outcome = dispatch(&cli, &mut loader);
    let inputs: Vec<Input> =
        loader.inputs.iter().map(|(path, sha256)| Input { path: path.clone(), sha256: sha256.clone() }).collect();
    let code = match outcome {
        Ok(r) => {
            report = r;
            None
        }
        Err(e) => {
            report.fail_with(&e);
            Some(e.exit_code())
        }
    };
    report.inputs = inputs;
    finish(&cli, report, start, code)
}

fn finish(cli: &Cli, mut report: Report, start: Instant, code: Option<i32>) -> ExitCode {
    report.runtime.insert("elapsed_ms".into(), serde_json::json!(start.elapsed().as_millis() as u64));
    let json = report.to_json();
    let mut code = code.unwrap_or(if report.passed() { 0 } else { 1 });
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &json) {
                eprintln!("cannot write {}: {e}", p.display());
                code = 5;
            }
        }
        None => print!("{json}"),
    }
    eprint!("{}", report.summary());
    ExitCode::from(code as u8)
}
