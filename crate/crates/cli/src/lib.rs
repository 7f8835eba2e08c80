//! The `lfhh` command line: argument handling, record emission and the
//! exit-code contract (0 all satisfied, 1 violations or errored records in a
//! sweep, 2 usage errors). `main` is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use lfhh::report::{write_csv, write_json};
use lfhh::sweep::{constants_table, write_constants_csv};
use lfhh::{run_sweep, Status, SweepOutcome, TheoremReport};

pub mod config;

use config::{parse_config, ConfigError, Format, RawSettings};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "lfhh", version, about = "Verify Hermite-Hadamard type inequalities for local fractional integrals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the selected checks and print one line per record to stderr.
    Verify(RunArgs),
    /// Run the full grid and print a summary plus the per-α constants table.
    Sweep(RunArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// thm1, thm2, thm3, thm4, thmD, holder, prop1, convexity or constants
    #[arg(long = "theorem")]
    theorems: Vec<String>,
    /// Fractal order in (0, 1]
    #[arg(long = "alpha")]
    alphas: Vec<f64>,
    /// poly:c0,c1,..., spoly:c0,c1,... or ml:s
    #[arg(long = "function", allow_hyphen_values = true)]
    functions: Vec<String>,
    #[arg(long = "interval", num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    intervals: Vec<f64>,
    #[arg(long)]
    p: Vec<f64>,
    #[arg(long)]
    q: Vec<f64>,
    /// Exponent n of the special-means check
    #[arg(long, allow_negative_numbers = true)]
    n: Vec<i32>,
    /// Write records here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Identity tolerance (relative to max(1, |lhs|))
    #[arg(long)]
    tol: Option<f64>,
    /// Points per axis of the convexity sampling grid
    #[arg(long)]
    grid: Option<usize>,
    /// key = value file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

impl RunArgs {
    fn settings(&self) -> Result<RawSettings, ConfigError> {
        let flags = RawSettings {
            theorems: self.theorems.clone(),
            alphas: self.alphas.clone(),
            functions: self.functions.clone(),
            intervals: self.intervals.chunks(2).map(|c| (c[0], c[1])).collect(),
            p: self.p.clone(),
            q: self.q.clone(),
            n: self.n.clone(),
            out: self.out.clone(),
            format: self.format,
            tol: self.tol,
            grid: self.grid,
        };
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
                parse_config(&text)?
            }
            None => RawSettings::default(),
        };
        Ok(file.overlay(flags))
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.10e}"))
}

fn record_line(r: &TheoremReport) -> String {
    let verdict = match (r.status, r.satisfied_engine) {
        (Status::Error, _) => "ERROR",
        (Status::PreconditionFailed, _) => "PRECONDITION",
        (Status::Ok, Some(true)) => "ok",
        (Status::Ok, Some(false)) => "VIOLATED",
        (Status::Ok, None) => "info",
    };
    let pq = match (r.p, r.q) {
        (Some(p), Some(q)) => format!(" p={p} q={q}"),
        _ => String::new(),
    };
    let mut line = format!(
        "{:<9} a={:<5} {:<18} [{}, {}]{pq}  lhs={:.10e} rhs_engine={} rhs_paper={} residual={}  {verdict}",
        r.theorem.as_str(),
        r.alpha,
        r.function,
        r.interval.0,
        r.interval.1,
        r.lhs,
        fmt_opt(r.rhs_engine),
        fmt_opt(r.rhs_paper),
        fmt_opt(r.residual),
    );
    if !r.note.is_empty() {
        line.push_str("  # ");
        line.push_str(&r.note);
    }
    line
}

fn write_records(out: Option<&Path>, stdout: &mut dyn Write, format: Format, records: &[TheoremReport]) -> Result<()> {
    let sink: Box<dyn Write + '_> = match out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(stdout),
    };
    let mut sink = BufWriter::new(sink);
    match format {
        Format::Json => write_json(&mut sink, records)?,
        Format::Csv => write_csv(&mut sink, records)?,
    }
    sink.flush()?;
    Ok(())
}

fn print_summary(err: &mut dyn Write, outcome: &SweepOutcome) -> Result<()> {
    let s = outcome.summary;
    writeln!(
        err,
        "records: {}  satisfied: {}  violated: {}  precondition_failed: {}  errored: {}  informational: {}",
        s.total, s.satisfied, s.violated, s.precondition_failed, s.errored, s.informational
    )?;
    Ok(())
}

fn execute(sweep: bool, args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let settings = match args.settings() {
        Ok(s) => s,
        Err(e) => return usage_error(err, &e),
    };
    let format = settings.format.unwrap_or_default();
    let path = settings.out.clone();
    let config = match settings.into_sweep_config() {
        Ok(c) => c,
        Err(e) => return usage_error(err, &e),
    };
    let outcome = run_sweep(&config)?;
    write_records(path.as_deref(), out, format, &outcome.records)?;

    if sweep {
        print_summary(err, &outcome)?;
        let rows = constants_table(&config.alphas, config.intervals[0])?;
        writeln!(err, "alpha       kind   engine                  paper                   engine/paper")?;
        for row in &rows {
            writeln!(
                err,
                "{:<11} {:<6} {:<23.16e} {:<23.16e} {:.12}",
                row.alpha,
                row.kind.as_str(),
                row.engine,
                row.paper,
                row.engine / row.paper
            )?;
        }
        if let Some(path) = &path {
            let mut side = path.clone().into_os_string();
            side.push(".constants.csv");
            let side = PathBuf::from(side);
            let file = File::create(&side).with_context(|| format!("creating {}", side.display()))?;
            write_constants_csv(file, &rows)?;
        }
        Ok(outcome.summary.exit_code() as u8)
    } else {
        for r in &outcome.records {
            writeln!(err, "{}", record_line(r))?;
        }
        print_summary(err, &outcome)?;
        // a check that could not run is a usage problem for a single verification
        let code = if outcome.summary.errored > 0 { EXIT_USAGE } else { outcome.summary.exit_code() as u8 };
        Ok(code)
    }
}

fn usage_error(err: &mut dyn Write, e: &ConfigError) -> Result<u8> {
    writeln!(err, "error: {e}")?;
    Ok(EXIT_USAGE)
}

/// Parse `args` (program name first) and run the command. Records go to
/// `out` unless `--out` is given; summaries and diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            let _ = if shown { write!(out, "{text}") } else { write!(err, "{text}") };
            return if shown { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match &cli.command {
        Command::Verify(args) => execute(false, args, out, err),
        Command::Sweep(args) => execute(true, args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}
