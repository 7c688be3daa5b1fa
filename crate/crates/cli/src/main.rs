//! `spectype`: classify equilibria, evaluate marginal loci and sweep
//! parametric Jacobians from the command line.
//!
//! Exit codes: `0` classified (or success), `2` marginal, `1` error.

mod input;
mod lorenz_cmd;
mod report;
mod sweep_out;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use spectype::indices::sturm_counts;
use spectype::remainder::{
    sturm_chain, variations_at, variations_at_neg_inf, variations_at_pos_inf,
};
use spectype::sweep::ParamSpec;
use spectype::{
    char_poly, check_transitions, detect_crossings, run_sweep, winding, Mode, Rational, SweepSpec,
};

use input::Subject;
use report::Format;

#[derive(Parser, Debug)]
#[command(
    name = "spectype",
    version,
    about = "Spectral types of equilibria from principal invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(skip)]
struct Source {
    /// Principal invariants d1,...,dm, e.g. "2,-1,-2" or "1/2,3".
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["matrix", "coeffs"])]
    invariants: Option<String>,
    /// JSON document holding a matrix, invariants or a parametric matrix.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Characteristic polynomial coefficients, highest degree first.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "matrix")]
    coeffs: Option<String>,
    /// Parameter values for a parametric document, e.g. "a=10,b=28,c=8/3".
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
}

impl Source {
    fn subject(&self) -> Result<Subject> {
        if self.params.is_some() && self.matrix.is_none() {
            bail!("--params applies to --matrix documents only");
        }
        match (&self.invariants, &self.matrix, &self.coeffs) {
            (Some(s), _, _) => input::from_invariants(s),
            (_, Some(p), _) => input::from_document(p, self.params.as_deref()),
            (_, _, Some(s)) => input::from_coeffs(s),
            _ => bail!("one of --invariants, --matrix or --coeffs is required"),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct Arith {
    /// Exact rational arithmetic, or float inputs with tolerance-based zero tests.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Zero tolerance for float mode.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral type of one point; exit 2 if it lies on a marginal locus.
    Classify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        arith: Arith,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        /// Include numeric eigenvalues from the root finder.
        #[arg(long)]
        roots: bool,
    },
    /// Marginal-locus functions and memberships of one point.
    Loci {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        arith: Arith,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        #[arg(long)]
        roots: bool,
    },
    /// Sweep a parametric document over a grid and write CSV artifacts.
    Sweep {
        /// Parametric JSON document.
        #[arg(long)]
        matrix: PathBuf,
        /// Per parameter "name=value" or "name=lo:hi:steps", comma separated.
        #[arg(long, allow_hyphen_values = true)]
        params: String,
        #[command(flatten)]
        arith: Arith,
        /// Relative threshold for touches without a sign change.
        #[arg(long)]
        touch_tol: Option<f64>,
        /// Directory for cells.csv, crossings.csv, transitions.csv, contours.csv.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// The built-in Lorenz example at the origin equilibrium.
    DemoLorenz {
        /// Classify one point "a,b,c".
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Fix one parameter, e.g. "c=2", and tabulate the other two.
        #[arg(long, allow_hyphen_values = true)]
        slice: Option<String>,
        /// Random points for the factorisation checks.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the sweep artifacts of the slice (or of the default runs) here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Sturm chain of the characteristic polynomial with sign variations.
    Sturm {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

fn point_command(
    source: &Source,
    arith: &Arith,
    format: Format,
    roots: bool,
    loci_only: bool,
) -> Result<u8> {
    let subject = source.subject()?;
    let rec = report::build(&subject, arith.mode.into(), arith.tol, roots)?;
    let mut out = io::stdout().lock();
    report::write(&rec, format, loci_only, &mut out)?;
    Ok(if rec.is_marginal() { 2 } else { 0 })
}

/// `name=value` or `name=lo:hi:steps`, comma separated.
fn parse_sweep_params(s: &str) -> Result<Vec<(String, ParamSpec)>> {
    s.split(',')
        .map(|item| {
            let (name, rhs) = item
                .split_once('=')
                .ok_or_else(|| anyhow!("expected name=value or name=lo:hi:steps, got `{item}`"))?;
            let name = name.trim();
            let parts: Vec<&str> = rhs.split(':').collect();
            let value = |s: &str| -> Result<Rational> {
                input::parse_list(s)?
                    .pop()
                    .ok_or_else(|| anyhow!("missing value in `{item}`"))
            };
            match parts.as_slice() {
                [v] => Ok(SweepSpec::fixed(name, value(v)?)),
                [lo, hi, steps] => {
                    let steps: usize = steps
                        .trim()
                        .parse()
                        .map_err(|_| anyhow!("`{steps}` is not a step count"))?;
                    Ok(SweepSpec::range(name, value(lo)?, value(hi)?, steps))
                }
                _ => bail!("expected name=value or name=lo:hi:steps, got `{item}`"),
            }
        })
        .collect()
}

fn sweep_command(
    matrix: &Path,
    params: &str,
    arith: &Arith,
    touch_tol: Option<f64>,
    out: &Path,
    format: Format,
) -> Result<u8> {
    let pm = input::Document::load(matrix)?.parametric()?;
    let mut spec = SweepSpec::new(parse_sweep_params(params)?).with_mode(arith.mode.into());
    if let Some(t) = arith.tol {
        spec = spec.with_tol(t);
    }
    if let Some(t) = touch_tol {
        spec = spec.with_touch_tol(t);
    }
    let result = run_sweep(&pm, &spec)?;
    let report = detect_crossings(&result);
    let checks = check_transitions(&result, &report);
    let files = sweep_out::write_all(&result, &report, &checks, out)?;
    let summary = sweep_out::summarize(&result, &report, &checks, &files);
    let mut stdout = io::stdout().lock();
    match format {
        Format::Human => sweep_out::write_summary_human(&summary, &mut stdout)?,
        Format::Records => {
            serde_json::to_writer(&mut stdout, &summary)?;
            writeln!(stdout)?;
        }
        Format::Csv => sweep_out::write_cells(&result, &mut stdout)?,
    }
    Ok(0)
}

#[derive(Serialize)]
struct SturmRecord {
    input: String,
    chain: Vec<String>,
    variations_neg_inf: usize,
    variations_zero: Option<usize>,
    variations_pos_inf: usize,
    negative_roots: Option<usize>,
    positive_roots: Option<usize>,
    twice_wind: Option<i64>,
}

fn sturm_command(source: &Source, format: Format) -> Result<u8> {
    let subject = source.subject()?;
    let p = char_poly(&subject.invariants);
    let chain = sturm_chain(&p);
    let at_zero = (!p.coeff(0).eq(&Rational::from_integer(0.into())))
        .then(|| variations_at(&chain, &Rational::from_integer(0.into())));
    let counts = sturm_counts(&p).ok();
    let rec = SturmRecord {
        input: subject.source.clone(),
        chain: chain.iter().map(|q| q.display_with("x")).collect(),
        variations_neg_inf: variations_at_neg_inf(&chain),
        variations_zero: at_zero,
        variations_pos_inf: variations_at_pos_inf(&chain),
        negative_roots: counts.map(|c| c.1),
        positive_roots: counts.map(|c| c.0),
        twice_wind: winding(&p).ok().map(|w| w.twice_wind),
    };
    let mut out = io::stdout().lock();
    match format {
        Format::Records => {
            serde_json::to_writer(&mut out, &rec)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = report::csv_writer(&mut out);
            w.write_record(["index", "polynomial"])?;
            for (k, q) in rec.chain.iter().enumerate() {
                w.write_record([k.to_string(), q.clone()])?;
            }
            w.flush()?;
        }
        Format::Human => {
            writeln!(out, "input       {}", rec.input)?;
            for (k, q) in rec.chain.iter().enumerate() {
                writeln!(out, "p{k:<10} {q}")?;
            }
            let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
            writeln!(
                out,
                "variations  -inf {}  0 {}  +inf {}",
                rec.variations_neg_inf,
                opt(rec.variations_zero),
                rec.variations_pos_inf
            )?;
            writeln!(
                out,
                "real roots  negative {}  positive {}",
                opt(rec.negative_roots),
                opt(rec.positive_roots)
            )?;
            writeln!(
                out,
                "twice wind  {}",
                rec.twice_wind.map_or("-".to_string(), |w| w.to_string())
            )?;
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match &cli.command {
        Command::Classify {
            source,
            arith,
            format,
            roots,
        } => point_command(source, arith, *format, *roots, false),
        Command::Loci {
            source,
            arith,
            format,
            roots,
        } => point_command(source, arith, *format, *roots, true),
        Command::Sweep {
            matrix,
            params,
            arith,
            touch_tol,
            out,
            format,
        } => sweep_command(matrix, params, arith, *touch_tol, out, *format),
        Command::DemoLorenz {
            point,
            slice,
            samples,
            seed,
            out,
            format,
        } => lorenz_cmd::run(lorenz_cmd::Options {
            point: point.as_deref(),
            slice: slice.as_deref(),
            samples: *samples,
            seed: *seed,
            out: out.as_deref(),
            format: *format,
        }),
        Command::Sturm { source, format } => sturm_command(source, *format),
    }
}

fn main() -> ExitCode {
    // usage errors exit 1, keeping 2 for marginal points
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
