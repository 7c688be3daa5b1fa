//! Output records for single-point commands.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;

use spectype::loci::policy_for;
use spectype::oracle;
use spectype::{
    char_poly, evaluate_loci_with, spectral_type, LociEvaluation, Mode, Rational, SpectralType,
};

use crate::input::Subject;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Records,
    Csv,
}

fn frac(v: &Rational) -> String {
    v.to_string()
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeRecord {
    pub symbol: String,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub delta: usize,
}

impl From<&SpectralType> for TypeRecord {
    fn from(t: &SpectralType) -> Self {
        TypeRecord {
            symbol: t.to_string(),
            alpha: t.alpha,
            beta: t.beta,
            gamma: t.gamma,
            delta: t.delta,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LociRecord {
    pub zeta: String,
    pub disc: String,
    pub rho: String,
    pub sigma_root: Option<String>,
    pub sigma_cert: Option<String>,
    pub tau_root: Option<String>,
    pub in_z: bool,
    pub in_d: bool,
    pub in_r: bool,
    pub thread: bool,
    pub d_split: String,
    pub fallback: bool,
}

impl From<&LociEvaluation> for LociRecord {
    fn from(e: &LociEvaluation) -> Self {
        LociRecord {
            zeta: frac(&e.zeta),
            disc: frac(&e.disc),
            rho: frac(&e.rho),
            sigma_root: e.sigma_root.as_ref().map(frac),
            sigma_cert: e.sigma_cert.as_ref().map(frac),
            tau_root: e.tau_root.as_ref().map(frac),
            in_z: e.in_z,
            in_d: e.in_d,
            in_r: e.in_r,
            thread: e.thread,
            d_split: e.d_split.symbol().to_string(),
            fallback: e.fallback,
        }
    }
}

/// One classified or marginal point. Exactly one of `spectral_type` and
/// `marginal` is set.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub input: String,
    /// The instantiated matrix, when the input was one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
    pub m: usize,
    pub invariants: Vec<String>,
    pub spectral_type: Option<TypeRecord>,
    pub marginal: Option<String>,
    pub loci: LociRecord,
    /// `[re, im]` pairs, only when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<[f64; 2]>>,
}

impl Record {
    pub fn is_marginal(&self) -> bool {
        self.marginal.is_some()
    }
}

pub fn build(subject: &Subject, mode: Mode, tol: Option<f64>, roots: bool) -> Result<Record> {
    let inv = match mode {
        Mode::Exact => subject.invariants.clone(),
        Mode::Float => spectype::PrincipalInvariants::from_f64(&subject.invariants.to_f64())?,
    };
    let policy = policy_for(mode, tol)?;
    let loci = evaluate_loci_with(&inv, policy)?;
    let (spectral_type, marginal) = match loci.label() {
        Some(label) => (None, Some(label)),
        None => (Some(TypeRecord::from(&spectral_type(&inv)?)), None),
    };
    let roots = if roots {
        let rs = oracle::roots(&char_poly(&inv))?;
        Some(rs.roots.iter().map(|z| [z.re, z.im]).collect())
    } else {
        None
    };
    Ok(Record {
        input: subject.source.clone(),
        matrix: subject.matrix.as_ref().map(|a| {
            (0..a.dim())
                .map(|i| (0..a.dim()).map(|j| frac(a.get(i, j))).collect())
                .collect()
        }),
        m: inv.dim(),
        invariants: inv.values().iter().map(frac).collect(),
        spectral_type,
        marginal,
        loci: LociRecord::from(&loci),
        roots,
    })
}

const CSV_HEADER: [&str; 20] = [
    "input",
    "m",
    "invariants",
    "type_symbol",
    "alpha",
    "beta",
    "gamma",
    "delta",
    "marginal",
    "zeta",
    "disc",
    "rho",
    "sigma_root",
    "sigma_cert",
    "tau_root",
    "in_z",
    "in_d",
    "in_r",
    "thread",
    "d_split",
];

pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn opt(v: &Option<String>) -> String {
    v.clone().unwrap_or_default()
}

pub fn write(rec: &Record, format: Format, loci_only: bool, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Records => {
            serde_json::to_writer(&mut *out, rec)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(CSV_HEADER)?;
            let t = rec.spectral_type.as_ref();
            let count =
                |f: fn(&TypeRecord) -> usize| t.map(|t| f(t).to_string()).unwrap_or_default();
            let l = &rec.loci;
            w.write_record([
                rec.input.clone(),
                rec.m.to_string(),
                rec.invariants.join(";"),
                t.map(|t| t.symbol.clone()).unwrap_or_default(),
                count(|t| t.alpha),
                count(|t| t.beta),
                count(|t| t.gamma),
                count(|t| t.delta),
                opt(&rec.marginal),
                l.zeta.clone(),
                l.disc.clone(),
                l.rho.clone(),
                opt(&l.sigma_root),
                opt(&l.sigma_cert),
                opt(&l.tau_root),
                l.in_z.to_string(),
                l.in_d.to_string(),
                l.in_r.to_string(),
                l.thread.to_string(),
                l.d_split.clone(),
            ])?;
            w.flush()?;
        }
        Format::Human => write_human(rec, loci_only, out)?,
    }
    Ok(())
}

fn write_human(rec: &Record, loci_only: bool, out: &mut impl Write) -> Result<()> {
    writeln!(out, "input       {}", rec.input)?;
    if let Some(rows) = &rec.matrix {
        for row in rows {
            writeln!(out, "matrix      [{}]", row.join(", "))?;
        }
    }
    writeln!(out, "invariants  ({})", rec.invariants.join(", "))?;
    match (&rec.spectral_type, &rec.marginal) {
        (Some(t), _) => writeln!(
            out,
            "type        {}  (alpha {}, beta {}, gamma {}, delta {})",
            t.symbol, t.alpha, t.beta, t.gamma, t.delta
        )?,
        (None, Some(label)) => writeln!(out, "marginal    on {label}")?,
        (None, None) => {}
    }
    let l = &rec.loci;
    let none = || "undefined".to_string();
    if loci_only || rec.is_marginal() {
        writeln!(out, "zeta        {}", l.zeta)?;
        writeln!(out, "disc        {}", l.disc)?;
        writeln!(out, "rho         {}", l.rho)?;
        writeln!(
            out,
            "sigma       {}  (certificate {})",
            l.sigma_root.clone().unwrap_or_else(none),
            l.sigma_cert.clone().unwrap_or_else(none)
        )?;
        writeln!(
            out,
            "tau         {}",
            l.tau_root.clone().unwrap_or_else(none)
        )?;
        writeln!(
            out,
            "members     Z {}  D {}  R {}  thread {}  d_split {}{}",
            l.in_z,
            l.in_d,
            l.in_r,
            l.thread,
            l.d_split,
            if l.fallback {
                "  (oracle fallback)"
            } else {
                ""
            }
        )?;
    }
    if let Some(roots) = &rec.roots {
        for [re, im] in roots {
            writeln!(out, "root        {re:+.12e} {im:+.12e}i")?;
        }
    }
    Ok(())
}
