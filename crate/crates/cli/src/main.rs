use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use rp2q::manifold::build_quadrature;
use rp2q_cli::config::{parse_tol, read_config_file, ConfigPatch};
use rp2q_cli::report::write_report;
use rp2q_cli::{checks, run_suite, Format, Report, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "rp2q", version, about = "Numerical verification suites for quantization on RP2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite of checks and report residuals.
    Run(RunArgs),
    /// List every check with its default tolerance.
    List,
    /// Quadrature grid utilities.
    Quadrature {
        #[command(subcommand)]
        action: QuadratureAction,
    },
}

#[derive(Args)]
struct RunArgs {
    suite: Suite,
    /// Highest harmonic degree (default 8, at most 32)
    #[arg(long)]
    lmax: Option<usize>,
    /// Points on the Heisenberg line grid, a power of two (default 1024)
    #[arg(long)]
    grid_n: Option<usize>,
    /// Radial nodes for canonical-group checks (default 64)
    #[arg(long)]
    radial_nodes: Option<usize>,
    /// Random cases per check (default 200)
    #[arg(long)]
    samples: Option<usize>,
    /// Master RNG seed (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override `check.name=value`; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// `key = value` configuration file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report zero wall times, making the output reproducible byte for byte.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Subcommand)]
enum QuadratureAction {
    /// Write nodes and weights as CSV.
    Export {
        #[arg(long, default_value_t = 8)]
        lmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn build_config(args: &RunArgs) -> Result<SuiteConfig> {
    let mut cfg = SuiteConfig::default();
    if let Some(path) = &args.config {
        cfg.apply(&read_config_file(path)?);
    }
    let flags = ConfigPatch {
        lmax: args.lmax,
        grid_n: args.grid_n,
        radial_nodes: args.radial_nodes,
        samples: args.samples,
        seed: args.seed,
        tol_overrides: args.tol.iter().map(|t| parse_tol(t)).collect::<Result<_>>()?,
    };
    cfg.apply(&flags);
    cfg.validate()?;
    rp2q_cli::validate_overrides(&cfg)?;
    Ok(cfg)
}

fn run(args: RunArgs) -> ExitCode {
    let cfg = match build_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let result = run_suite(args.suite, &cfg, !args.no_timings).and_then(|checks| {
        let report = Report::new(&cfg, checks);
        let mut out = output(&args.out)?;
        write_report(&report, args.format, &mut out)?;
        out.flush()?;
        Ok(report.all_passed())
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn list() -> Result<()> {
    let mut out = io::stdout().lock();
    for c in checks::registry() {
        writeln!(out, "{:<44} {:>9.1e}  {}", c.name, c.tolerance, c.anchor)?;
    }
    Ok(())
}

fn export_quadrature(lmax: usize, path: &Option<PathBuf>) -> Result<()> {
    let grid = build_quadrature::<f64>(lmax)?;
    let mut out = output(path)?;
    grid.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => return run(args),
        Command::List => list(),
        Command::Quadrature { action: QuadratureAction::Export { lmax, out } } => export_quadrature(lmax, &out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe (`rp2q list | head`) is not worth reporting.
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
