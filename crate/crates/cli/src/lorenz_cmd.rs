//! `demo-lorenz`: factorisation checks, the classical point and the sweeps.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};
use std::path::Path;

use anyhow::{anyhow, bail, Result};
use serde::Serialize;

use spectype::lorenz::{self, check_identities, lorenz_demo, lorenz_matrix, PARAMS};
use spectype::scalar::{frac, int};
use spectype::{
    check_transitions, detect_crossings, run_sweep, CrossingReport, Mode, Rational, SweepResult,
    SweepSpec,
};

use crate::input::{self, Subject};
use crate::report::{self, Format};
use crate::sweep_out;

pub struct Options<'a> {
    pub point: Option<&'a str>,
    pub slice: Option<&'a str>,
    pub samples: usize,
    pub seed: u64,
    pub out: Option<&'a Path>,
    pub format: Format,
}

pub fn run(opts: Options) -> Result<u8> {
    if let Some(p) = opts.point {
        return point(p, opts.format);
    }
    let ids = check_identities(opts.samples, opts.seed)?;
    if let Some(bad) = ids.checks.iter().find(|c| c.counterexample.is_some()) {
        bail!(
            "identity {} fails at {}",
            bad.name,
            bad.counterexample.as_deref().unwrap_or("?")
        );
    }
    match opts.slice {
        Some(s) => slice(s, &ids, opts.out, opts.format),
        None => default_run(opts.samples, opts.seed, opts.out, opts.format),
    }
}

fn point(p: &str, format: Format) -> Result<u8> {
    let v = input::parse_list(p)?;
    let [a, b, c] = v.as_slice() else {
        bail!("--point expects a,b,c");
    };
    let subject = Subject {
        source: format!("lorenz a={a}, b={b}, c={c}"),
        matrix: None,
        invariants: lorenz::lorenz_invariants(a, b, c)?,
    };
    let rec = report::build(&subject, Mode::Exact, None, false)?;
    report::write(&rec, format, false, &mut io::stdout().lock())?;
    Ok(if rec.is_marginal() { 2 } else { 0 })
}

fn default_range(name: &str) -> (String, spectype::sweep::ParamSpec) {
    match name {
        "b" => SweepSpec::range("b", int(-1), int(3), 17),
        _ => SweepSpec::range(name, frac(1, 4), int(4), 16),
    }
}

/// One fixed parameter, the other two over their default ranges.
fn slice_spec(s: &str) -> Result<(SweepSpec, String, Rational)> {
    let fixed = input::parse_point(s)?;
    let (name, value) = match fixed.into_iter().collect::<Vec<_>>().as_slice() {
        [(n, v)] if PARAMS.contains(&n.as_str()) => (n.clone(), v.clone()),
        _ => bail!("--slice expects one of a=, b= or c=, e.g. c=2"),
    };
    let params = PARAMS
        .iter()
        .map(|&p| {
            if p == name {
                SweepSpec::fixed(p, value.clone())
            } else {
                default_range(p)
            }
        })
        .collect();
    Ok((SweepSpec::new(params), name, value))
}

#[derive(Serialize)]
struct SliceRecord {
    fixed: String,
    x_axis: String,
    y_axis: String,
    x: Vec<String>,
    y: Vec<String>,
    /// `symbols[j][i]` is the cell at `x[i]`, `y[j]`.
    symbols: Vec<Vec<String>>,
    regions: BTreeMap<String, usize>,
    adjacent: Vec<(String, String)>,
    crossings: BTreeMap<String, usize>,
}

fn slice_record(result: &SweepResult, report: &CrossingReport, fixed: String) -> SliceRecord {
    let (nx, ny) = (result.axes[0].values.len(), result.axes[1].values.len());
    let sym = |i: usize, j: usize| result.cells[result.flat_index(&[i, j])].symbol();
    let symbols: Vec<Vec<String>> = (0..ny)
        .map(|j| (0..nx).map(|i| sym(i, j)).collect())
        .collect();
    let mut regions = BTreeMap::new();
    let mut adjacent = BTreeSet::new();
    for j in 0..ny {
        for i in 0..nx {
            *regions.entry(symbols[j][i].clone()).or_insert(0) += 1;
            for (di, dj) in [(1, 0), (0, 1)] {
                if i + di < nx && j + dj < ny {
                    let (a, b) = (&symbols[j][i], &symbols[j + dj][i + di]);
                    if a != b {
                        let pair = if a < b { (a, b) } else { (b, a) };
                        adjacent.insert((pair.0.clone(), pair.1.clone()));
                    }
                }
            }
        }
    }
    let mut crossings = BTreeMap::new();
    for c in &report.crossings {
        *crossings
            .entry(format!("{} {}", c.function.name(), c.kind.name()))
            .or_insert(0) += 1;
    }
    SliceRecord {
        fixed,
        x_axis: result.axes[0].name.clone(),
        y_axis: result.axes[1].name.clone(),
        x: result.axes[0]
            .values
            .iter()
            .map(|v| v.to_string())
            .collect(),
        y: result.axes[1]
            .values
            .iter()
            .map(|v| v.to_string())
            .collect(),
        symbols,
        regions,
        adjacent: adjacent.into_iter().collect(),
        crossings,
    }
}

fn write_table(r: &SliceRecord, out: &mut impl Write) -> Result<()> {
    let width = r
        .symbols
        .iter()
        .flatten()
        .chain(r.x.iter())
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1)
        + 2;
    let label =
        r.y.iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(1)
            .max(r.y_axis.len() + 2);
    writeln!(
        out,
        "slice {}; rows {} (descending), columns {}",
        r.fixed, r.y_axis, r.x_axis
    )?;
    write!(out, "{:>label$} |", format!("{}\\{}", r.y_axis, r.x_axis))?;
    for x in &r.x {
        write!(out, "{x:>width$}")?;
    }
    writeln!(out)?;
    for (j, row) in r.symbols.iter().enumerate().rev() {
        write!(out, "{:>label$} |", r.y[j])?;
        for s in row {
            write!(out, "{s:>width$}")?;
        }
        writeln!(out)?;
    }
    writeln!(out, "regions")?;
    for (s, n) in &r.regions {
        writeln!(out, "  {s:<12} {n} cells")?;
    }
    writeln!(out, "adjacent regions")?;
    for (a, b) in &r.adjacent {
        writeln!(out, "  {a} | {b}")?;
    }
    writeln!(out, "crossings")?;
    for (k, n) in &r.crossings {
        writeln!(out, "  {k:<36} {n}")?;
    }
    Ok(())
}

fn slice(
    s: &str,
    ids: &lorenz::LorenzIdentities,
    out: Option<&Path>,
    format: Format,
) -> Result<u8> {
    let (spec, name, value) = slice_spec(s)?;
    let result = run_sweep(&lorenz_matrix(), &spec)?;
    let report = detect_crossings(&result);
    let checks = check_transitions(&result, &report);
    let rec = slice_record(&result, &report, format!("{name}={value}"));
    let mut stdout = io::stdout().lock();
    match format {
        Format::Human => {
            writeln!(
                stdout,
                "identities  all {} hold at {} points",
                ids.checks.len(),
                ids.samples
            )?;
            write_table(&rec, &mut stdout)?;
        }
        Format::Records => {
            serde_json::to_writer(&mut stdout, &rec)?;
            writeln!(stdout)?;
        }
        Format::Csv => sweep_out::write_cells(&result, &mut stdout)?,
    }
    if let Some(dir) = out {
        for f in sweep_out::write_all(&result, &report, &checks, dir)? {
            if format == Format::Human {
                writeln!(stdout, "wrote {}", f.display())?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct DemoRecord {
    samples: usize,
    identities: BTreeMap<String, usize>,
    point: String,
    b_line: Vec<(String, String)>,
    b_line_crossings: BTreeMap<String, usize>,
    slice_crossings: BTreeMap<String, usize>,
}

fn crossing_counts(r: &CrossingReport) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for c in &r.crossings {
        *m.entry(format!("{} {}", c.function.name(), c.kind.name()))
            .or_insert(0) += 1;
    }
    m
}

fn default_run(samples: usize, seed: u64, out: Option<&Path>, format: Format) -> Result<u8> {
    let demo = lorenz_demo(samples, seed).map_err(|e| anyhow!("{e}"))?;
    let (line, line_rep) = &demo.b_line;
    let (_, slice_rep) = &demo.slice;
    let rec = DemoRecord {
        samples,
        identities: demo
            .identities
            .checks
            .iter()
            .map(|c| (c.name.to_string(), c.passed))
            .collect(),
        point: demo.point.to_string(),
        b_line: line
            .cells
            .iter()
            .map(|c| (c.values[1].1.to_string(), c.symbol()))
            .collect(),
        b_line_crossings: crossing_counts(line_rep),
        slice_crossings: crossing_counts(slice_rep),
    };
    let mut stdout = io::stdout().lock();
    match format {
        Format::Records => {
            serde_json::to_writer(&mut stdout, &rec)?;
            writeln!(stdout)?;
        }
        Format::Csv => sweep_out::write_cells(line, &mut stdout)?,
        Format::Human => {
            for (name, passed) in &rec.identities {
                writeln!(
                    stdout,
                    "identity {name:<6} holds at {passed}/{samples} points"
                )?;
            }
            writeln!(stdout, "point (10, 28, 8/3)  {}", rec.point)?;
            writeln!(stdout, "b-line a=10, c=8/3")?;
            let mut last = String::new();
            for (b, s) in &rec.b_line {
                if *s != last {
                    writeln!(stdout, "  from b={b:<6} {s}")?;
                    last = s.clone();
                }
            }
            for (k, n) in &rec.b_line_crossings {
                writeln!(stdout, "  {k:<36} {n}")?;
            }
            writeln!(stdout, "slice c=2")?;
            for (k, n) in &rec.slice_crossings {
                writeln!(stdout, "  {k:<36} {n}")?;
            }
        }
    }
    if let Some(dir) = out {
        for (sub, (res, rep)) in [("b_line", &demo.b_line), ("c2_slice", &demo.slice)] {
            let checks = check_transitions(res, rep);
            for f in sweep_out::write_all(res, rep, &checks, &dir.join(sub))? {
                if format == Format::Human {
                    writeln!(stdout, "wrote {}", f.display())?;
                }
            }
        }
    }
    Ok(0)
}
