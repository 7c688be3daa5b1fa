//! Input documents and inline argument parsing.
//!
//! Documents are JSON with exactly one top-level key naming the variant:
//!
//! ```json
//! {"matrix": {"m": 2, "entries": [["1", "-1/2"], ["3", "0"]]}}
//! {"invariants": {"m": 3, "d": ["2", "-1", "-2"]}}
//! {"parametric": {"m": 2, "params": ["t"], "entries": [["t", "-1"], ["1", "t"]]}}
//! ```
//!
//! Numbers are strings (`"7"`, `"-3/4"`, `"0.25"`) or JSON integers, so every
//! value stays exact.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use spectype::scalar::parse_rational;
use spectype::{parse_free, ParametricMatrix, Poly, PrincipalInvariants, Rational, SquareMatrix};

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            Number::Int(v) => Ok(Rational::from_integer((*v).into())),
            Number::Text(s) => Ok(parse_rational(s)?),
        }
    }

    fn as_expr(&self) -> String {
        match self {
            Number::Int(v) => v.to_string(),
            Number::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Document {
    Matrix {
        m: usize,
        entries: Vec<Vec<Number>>,
    },
    Invariants {
        m: usize,
        d: Vec<Number>,
    },
    Parametric {
        m: usize,
        params: Vec<String>,
        entries: Vec<Vec<Number>>,
    },
}

fn check_square(m: usize, entries: &[Vec<Number>]) -> Result<()> {
    if entries.len() != m || entries.iter().any(|r| r.len() != m) {
        bail!("expected a {m}x{m} entries array");
    }
    Ok(())
}

impl Document {
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn parametric(&self) -> Result<ParametricMatrix> {
        match self {
            Document::Parametric { m, params, entries } => {
                check_square(*m, entries)?;
                let rows: Vec<Vec<String>> = entries
                    .iter()
                    .map(|r| r.iter().map(Number::as_expr).collect())
                    .collect();
                Ok(ParametricMatrix::new(params.clone(), &rows)?)
            }
            _ => bail!("a parametric document is required"),
        }
    }
}

/// What a single-point command operates on.
#[derive(Clone, Debug)]
pub struct Subject {
    pub source: String,
    pub matrix: Option<SquareMatrix>,
    pub invariants: PrincipalInvariants,
}

/// Comma-separated exact values; each item may be an arithmetic expression
/// without parameters (`"8/3"`, `"2^-3"`).
pub fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|item| {
            let item = item.trim();
            let v = parse_free(item).and_then(|e| e.evaluate(&BTreeMap::new()));
            v.map_err(|e| anyhow!("`{item}`: {e}"))
        })
        .collect()
}

/// `name=value` pairs separated by commas.
pub fn parse_point(s: &str) -> Result<BTreeMap<String, Rational>> {
    s.split(',')
        .map(|pair| {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| anyhow!("expected name=value, got `{pair}`"))?;
            let value = parse_list(value)?
                .pop()
                .ok_or_else(|| anyhow!("missing value for `{name}`"))?;
            Ok((name.trim().to_string(), value))
        })
        .collect()
}

pub fn from_invariants(s: &str) -> Result<Subject> {
    let d = parse_list(s)?;
    Ok(Subject {
        source: format!("invariants {s}"),
        matrix: None,
        invariants: PrincipalInvariants::new(d)?,
    })
}

/// Characteristic polynomial coefficients, highest degree first; the
/// polynomial is made monic.
pub fn from_coeffs(s: &str) -> Result<Subject> {
    let c = parse_list(s)?;
    let p = Poly::from_descending(c);
    if p.degree().unwrap_or(0) == 0 {
        bail!("--coeffs needs a polynomial of degree at least 1");
    }
    Ok(Subject {
        source: format!("coeffs {s}"),
        matrix: None,
        invariants: PrincipalInvariants::from_poly(&p.monic())?,
    })
}

pub fn from_document(path: &Path, params: Option<&str>) -> Result<Subject> {
    let doc = Document::load(path)?;
    let source = format!("matrix {}", path.display());
    let (matrix, source) = match &doc {
        Document::Invariants { m, d } => {
            if d.len() != *m {
                bail!("expected {m} invariants, got {}", d.len());
            }
            let d = d.iter().map(Number::to_rational).collect::<Result<_>>()?;
            return Ok(Subject {
                source,
                matrix: None,
                invariants: PrincipalInvariants::new(d)?,
            });
        }
        Document::Matrix { m, entries } => {
            check_square(*m, entries)?;
            let rows = entries
                .iter()
                .map(|r| r.iter().map(Number::to_rational).collect())
                .collect::<Result<Vec<Vec<Rational>>>>()?;
            (SquareMatrix::from_rows(rows)?, source)
        }
        Document::Parametric { .. } => {
            let pm = doc.parametric()?;
            let params = params.ok_or_else(|| anyhow!("a parametric matrix needs --params"))?;
            let point = parse_point(params)?;
            let m = pm.instantiate(&point)?;
            (m, format!("{source} at {params}"))
        }
    };
    Ok(Subject {
        source,
        invariants: spectype::principal_invariants(&matrix),
        matrix: Some(matrix),
    })
}
