//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid arguments or I/O failure, 2 unreadable or
//! invalid scenario config, 3 numeric failure (including failed self-checks).

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{ArgAction, Args, Parser, Subcommand};

use crate::error::BinghamError;
use crate::eval::csv::{write_kld_rows, write_pdf_rows, write_step_errors, write_step_means};
use crate::eval::figures::{figure_kld_data, figure_pdf_data, DEFAULT_RESOLUTION, DEFAULT_Z1};
use crate::eval::scenario::{simulate_with_threads, ScenarioConfig};
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Environment variable capping the number of simulation threads.
pub const THREADS_ENV: &str = "BINGHAM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bingham", version, about = "Bingham filtering on the circle")]
struct Cli {
    /// Only print errors.
    #[arg(short, long, global = true, conflicts_with = "verbose")]
    quiet: bool,

    /// Print extra diagnostics to stderr.
    #[arg(short, long, global = true, action = ArgAction::SetTrue)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the Monte-Carlo filter comparison and write per-step errors.
    Simulate(SimulateArgs),
    /// Write density curves and divergence-to-Gaussian tables.
    Figures(FiguresArgs),
    /// Run the numeric self-check battery.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Scenario file (`key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// CSV with one row per run and step.
    #[arg(long)]
    out: PathBuf,
    /// Override the seed given in the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Optional CSV with errors averaged over runs.
    #[arg(long)]
    means_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FiguresArgs {
    /// Concentrations to tabulate, repeatable or comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    z1: Vec<f64>,
    /// Density table `theta_rad,z1,pdf`.
    #[arg(long)]
    out: PathBuf,
    /// Points per curve over [0, 2 pi).
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    resolution: usize,
    /// Optional divergence table `z1,kld_nats`.
    #[arg(long)]
    kld_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<BinghamError> for Failure {
    fn from(e: BinghamError) -> Self {
        let code = if e.is_numeric() {
            EXIT_NUMERIC
        } else {
            EXIT_CONFIG
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verbosity {
    Quiet,
    Normal,
    Verbose,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let verbosity = if cli.quiet {
        Verbosity::Quiet
    } else if cli.verbose {
        Verbosity::Verbose
    } else {
        Verbosity::Normal
    };
    let result = match cli.command {
        Command::Simulate(args) => simulate_cmd(args, verbosity),
        Command::Figures(args) => figures_cmd(args, verbosity),
        Command::Selftest(args) => selftest_cmd(args, verbosity),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::usage(format!(
                "{THREADS_ENV} must be a positive integer, got '{v}'"
            ))),
        },
    }
}

fn check_parent(path: &Path) -> Result<(), Failure> {
    let parent = parent_dir(path);
    if !parent.is_dir() {
        return Err(Failure::usage(format!(
            "output directory {} does not exist",
            parent.display()
        )));
    }
    Ok(())
}

fn parent_dir(path: &Path) -> &Path {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run leaves nothing behind.
fn write_atomic(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<&mut fs::File>) -> io::Result<()>,
) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::usage(format!("writing {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(parent_dir(path)).map_err(io_err)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        body(&mut w).map_err(io_err)?;
        w.flush().map_err(io_err)?;
    }
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn simulate_cmd(args: SimulateArgs, verbosity: Verbosity) -> Result<(), Failure> {
    check_parent(&args.out)?;
    if let Some(p) = &args.means_out {
        check_parent(p)?;
    }
    let threads = threads_from_env()?;
    let text = fs::read_to_string(&args.config).map_err(|e| Failure {
        code: EXIT_CONFIG,
        message: format!("reading {}: {e}", args.config.display()),
    })?;
    let mut cfg: ScenarioConfig = text.parse()?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let metrics = simulate_with_threads(&cfg, threads)?;
    write_atomic(&args.out, |w| write_step_errors(w, &metrics))?;
    if let Some(p) = &args.means_out {
        write_atomic(p, |w| write_step_means(w, &metrics))?;
    }
    if verbosity != Verbosity::Quiet {
        println!("mean_err_bingham_rad {:.14e}", metrics.mean_err_bingham);
        println!("mean_err_kalman_rad {:.14e}", metrics.mean_err_kalman);
    }
    if verbosity == Verbosity::Verbose {
        eprintln!(
            "{} runs x {} steps in {:.3} s",
            cfg.runs, cfg.steps, metrics.wallclock
        );
    }
    Ok(())
}

fn figures_cmd(args: FiguresArgs, verbosity: Verbosity) -> Result<(), Failure> {
    check_parent(&args.out)?;
    if let Some(p) = &args.kld_out {
        check_parent(p)?;
    }
    let z1 = if args.z1.is_empty() {
        DEFAULT_Z1.to_vec()
    } else {
        args.z1
    };
    if let Some(bad) = z1.iter().find(|z| !(z.is_finite() && **z <= 0.0)) {
        return Err(Failure::usage(format!(
            "--z1 {bad}: must be finite and <= 0"
        )));
    }
    if args.resolution == 0 {
        return Err(Failure::usage("--resolution must be positive"));
    }
    let rows = figure_pdf_data(&z1, args.resolution)?;
    let kld = match &args.kld_out {
        Some(_) => {
            if z1.contains(&0.0) {
                return Err(Failure::usage("--kld-out needs every --z1 < 0"));
            }
            Some(figure_kld_data(&z1)?)
        }
        None => None,
    };
    write_atomic(&args.out, |w| write_pdf_rows(w, &rows))?;
    if let (Some(p), Some(k)) = (&args.kld_out, &kld) {
        write_atomic(p, |w| write_kld_rows(w, k))?;
    }
    if verbosity == Verbosity::Verbose {
        eprintln!("{} curves x {} points", z1.len(), args.resolution);
    }
    Ok(())
}

fn selftest_cmd(args: SelftestArgs, verbosity: Verbosity) -> Result<(), Failure> {
    if let Some(p) = &args.out {
        check_parent(p)?;
    }
    let results = selftest::run_all(args.seed);
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut report = String::new();
    for r in &results {
        report.push_str(&r.to_string());
        report.push('\n');
    }
    report.push_str(&format!(
        "{} of {} checks passed\n",
        results.len() - failed,
        results.len()
    ));
    if verbosity != Verbosity::Quiet {
        print!("{report}");
    }
    if let Some(p) = &args.out {
        write_atomic(p, |w| w.write_all(report.as_bytes()))?;
    }
    if failed > 0 {
        return Err(Failure {
            code: EXIT_NUMERIC,
            message: format!("{failed} self-check(s) failed"),
        });
    }
    Ok(())
}
