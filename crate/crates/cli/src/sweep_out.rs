//! CSV artifacts of a sweep: `cells.csv`, `crossings.csv`,
//! `transitions.csv` and, with two or more ranged parameters,
//! `contours.csv`.
//!
//! Fractions are written as `p/q` (integers without a denominator), lines
//! end in LF and every file starts with a header row.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

use spectype::contour::all_contours;
use spectype::sweep::{TransitionCheck, Verdict};
use spectype::{
    CellOutcome, CrossingKind, CrossingReport, LocusFn, OracleVerdict, SweepCell, SweepResult,
};

use crate::report::csv_writer;

fn opt_str<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn flags(cell: &SweepCell) -> String {
    let mut f = Vec::new();
    if let Some(l) = &cell.loci {
        for (on, name) in [
            (l.in_z, "in_z"),
            (l.in_d, "in_d"),
            (l.in_r, "in_r"),
            (l.thread, "thread"),
            (l.fallback, "fallback"),
        ] {
            if on {
                f.push(name.to_string());
            }
        }
        if l.in_d {
            f.push(format!("d_split{}", l.d_split.symbol()));
        }
    }
    if let CellOutcome::Failed(msg) = &cell.outcome {
        f.push(format!("failed: {msg}"));
    }
    f.join(";")
}

fn oracle_column(cell: &SweepCell) -> String {
    match &cell.outcome {
        CellOutcome::Marginal { oracle, .. } => match oracle {
            Some(OracleVerdict::Classified(t)) => t.to_string(),
            Some(OracleVerdict::MarginalAmbiguous) => "ambiguous".into(),
            None => "no-convergence".into(),
        },
        _ => String::new(),
    }
}

pub fn write_cells(result: &SweepResult, out: impl Write) -> Result<()> {
    let m = result
        .cells
        .iter()
        .find_map(|c| c.invariants.as_ref().map(|i| i.dim()))
        .unwrap_or(0);
    let mut w = csv_writer(out);
    let mut header = vec!["cell".to_string()];
    if let Some(c) = result.cells.first() {
        header.extend(c.values.iter().map(|(n, _)| n.clone()));
    }
    header.extend((1..=m).map(|k| format!("d{k}")));
    header.extend(
        [
            "zeta",
            "disc",
            "rho",
            "sigma_root",
            "tau_root",
            "alpha",
            "beta",
            "gamma",
            "delta",
            "type_symbol",
            "oracle",
            "flags",
        ]
        .map(String::from),
    );
    w.write_record(&header)?;
    for (k, cell) in result.cells.iter().enumerate() {
        let mut row = vec![k.to_string()];
        row.extend(cell.values.iter().map(|(_, v)| v.to_string()));
        match &cell.invariants {
            Some(inv) => row.extend(inv.values().iter().map(|v| v.to_string())),
            None => row.extend((0..m).map(|_| String::new())),
        }
        let l = cell.loci.as_ref();
        row.push(opt_str(l.map(|l| &l.zeta)));
        row.push(opt_str(l.map(|l| &l.disc)));
        row.push(opt_str(l.map(|l| &l.rho)));
        row.push(opt_str(l.and_then(|l| l.sigma_root.as_ref())));
        row.push(opt_str(l.and_then(|l| l.tau_root.as_ref())));
        let t = cell.spectral_type();
        row.push(opt_str(t.map(|t| t.alpha)));
        row.push(opt_str(t.map(|t| t.beta)));
        row.push(opt_str(t.map(|t| t.gamma)));
        row.push(opt_str(t.map(|t| t.delta)));
        row.push(cell.symbol());
        row.push(oracle_column(cell));
        row.push(flags(cell));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn point(result: &SweepResult, flat: usize) -> String {
    result.cells[flat]
        .values
        .iter()
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn write_crossings(
    result: &SweepResult,
    report: &CrossingReport,
    out: impl Write,
) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record([
        "function",
        "kind",
        "axis",
        "from_cell",
        "to_cell",
        "near_cell",
        "near_point",
        "from_symbol",
        "to_symbol",
        "sigma_sign",
        "d_split",
        "hopf",
    ])?;
    for c in &report.crossings {
        w.write_record([
            c.function.name().to_string(),
            c.kind.name().to_string(),
            result.axes[c.axis].name.clone(),
            c.from.to_string(),
            c.to.to_string(),
            c.near.to_string(),
            point(result, c.near),
            result.cells[c.from].symbol(),
            result.cells[c.to].symbol(),
            c.sigma_sign.to_string(),
            c.d_split.symbol().to_string(),
            c.is_hopf().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn delta(d: &[i64; 4]) -> String {
    format!("({},{},{},{})", d[0], d[1], d[2], d[3])
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Consistent => "consistent",
        Verdict::Inconsistent => "inconsistent",
        Verdict::Skipped => "skipped",
    }
}

pub fn write_transitions(
    result: &SweepResult,
    checks: &[TransitionCheck],
    out: impl Write,
) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record([
        "axis",
        "from_cell",
        "to_cell",
        "from_symbol",
        "to_symbol",
        "crossings",
        "observed",
        "allowed",
        "verdict",
    ])?;
    for t in checks {
        w.write_record([
            result.axes[t.axis].name.clone(),
            t.from.to_string(),
            t.to.to_string(),
            result.cells[t.from].symbol(),
            result.cells[t.to].symbol(),
            t.crossings
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            t.observed.as_ref().map(delta).unwrap_or_default(),
            t.allowed.iter().map(delta).collect::<Vec<_>>().join(";"),
            verdict_name(t.verdict).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_contours(result: &SweepResult, out: impl Write) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["function", "slice", "x0", "y0", "x1", "y1"])?;
    for s in all_contours(result)? {
        w.write_record([
            s.function.name().to_string(),
            opt_str(s.slice),
            s.start.0.to_string(),
            s.start.1.to_string(),
            s.end.0.to_string(),
            s.end.1.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn create(dir: &Path, name: &str) -> Result<(PathBuf, File)> {
    let path = dir.join(name);
    let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    Ok((path, f))
}

/// Writes every artifact into `dir` and returns the paths written.
pub fn write_all(
    result: &SweepResult,
    report: &CrossingReport,
    checks: &[TransitionCheck],
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    let (p, f) = create(dir, "cells.csv")?;
    write_cells(result, f)?;
    written.push(p);
    let (p, f) = create(dir, "crossings.csv")?;
    write_crossings(result, report, f)?;
    written.push(p);
    let (p, f) = create(dir, "transitions.csv")?;
    write_transitions(result, checks, f)?;
    written.push(p);
    if result.axes.len() >= 2 {
        let (p, f) = create(dir, "contours.csv")?;
        write_contours(result, f)?;
        written.push(p);
    }
    Ok(written)
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub cells: usize,
    pub classified: usize,
    pub marginal: usize,
    pub failed: usize,
    /// Symbol to cell count.
    pub types: BTreeMap<String, usize>,
    /// `function kind` to count.
    pub crossings: BTreeMap<String, usize>,
    pub transitions: BTreeMap<String, usize>,
    pub files: Vec<String>,
}

pub fn summarize(
    result: &SweepResult,
    report: &CrossingReport,
    checks: &[TransitionCheck],
    files: &[PathBuf],
) -> Summary {
    let mut s = Summary {
        cells: result.cells.len(),
        classified: 0,
        marginal: 0,
        failed: 0,
        types: BTreeMap::new(),
        crossings: BTreeMap::new(),
        transitions: BTreeMap::new(),
        files: files.iter().map(|p| p.display().to_string()).collect(),
    };
    for c in &result.cells {
        match c.outcome {
            CellOutcome::Classified(_) => s.classified += 1,
            CellOutcome::Marginal { .. } => s.marginal += 1,
            CellOutcome::Failed(_) => s.failed += 1,
        }
        *s.types.entry(c.symbol()).or_default() += 1;
    }
    for f in LocusFn::ALL {
        for kind in [CrossingKind::SignChange, CrossingKind::TouchNoSignChange] {
            let n = report.count(f, kind);
            if n > 0 {
                s.crossings
                    .insert(format!("{} {}", f.name(), kind.name()), n);
            }
        }
    }
    for t in checks {
        *s.transitions
            .entry(verdict_name(t.verdict).to_string())
            .or_default() += 1;
    }
    s
}

pub fn write_summary_human(s: &Summary, out: &mut impl Write) -> Result<()> {
    writeln!(
        out,
        "cells       {} ({} classified, {} marginal, {} failed)",
        s.cells, s.classified, s.marginal, s.failed
    )?;
    for (sym, n) in &s.types {
        writeln!(out, "  {sym:<12} {n}")?;
    }
    writeln!(out, "crossings")?;
    for (k, n) in &s.crossings {
        writeln!(out, "  {k:<36} {n}")?;
    }
    writeln!(out, "transitions")?;
    for (k, n) in &s.transitions {
        writeln!(out, "  {k:<12} {n}")?;
    }
    for f in &s.files {
        writeln!(out, "wrote {f}")?;
    }
    Ok(())
}
