//! Parameter sweeps over a parametric Jacobian.
//!
//! Every grid cell is instantiated, reduced to principal invariants,
//! checked against the marginal loci and classified. Adjacent cells along
//! each grid line are then compared to find where `ζ`, the discriminant or
//! `ρ` vanish, with or without a sign change, and the spectral type changes
//! across each crossing are checked against the transition rules.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expr::ParametricMatrix;
use crate::indices::{spectral_type, SpectralType};
use crate::invariants::{char_poly, principal_invariants, PrincipalInvariants};
use crate::loci::{evaluate_loci_with, policy_for, DSplit, LociEvaluation, LocusFn, ZeroPolicy};
use crate::oracle::{self, OracleVerdict};
use crate::scalar::{rational_from_f64, Coeff, Mode, Rational};

pub const MAX_RANGED: usize = 3;
pub const DEFAULT_TOUCH_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub enum ParamSpec {
    Fixed(Rational),
    Range {
        lo: Rational,
        hi: Rational,
        steps: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub params: Vec<(String, ParamSpec)>,
    pub mode: Mode,
    /// Zero tolerance in float mode; the default applies when `None`.
    pub tol: Option<f64>,
    /// Relative threshold for a nonzero local minimum to count as a touch.
    pub touch_tol: f64,
}

impl SweepSpec {
    pub fn new(params: Vec<(String, ParamSpec)>) -> Self {
        SweepSpec {
            params,
            mode: Mode::Exact,
            tol: None,
            touch_tol: DEFAULT_TOUCH_TOL,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = Some(tol);
        self
    }

    pub fn with_touch_tol(mut self, tol: f64) -> Self {
        self.touch_tol = tol;
        self
    }

    pub fn fixed(name: &str, v: Rational) -> (String, ParamSpec) {
        (name.to_string(), ParamSpec::Fixed(v))
    }

    pub fn range(name: &str, lo: Rational, hi: Rational, steps: usize) -> (String, ParamSpec) {
        (name.to_string(), ParamSpec::Range { lo, hi, steps })
    }

    pub fn policy(&self) -> Result<ZeroPolicy> {
        policy_for(self.mode, self.tol)
    }

    /// Checks the spec against the matrix's declared parameters.
    pub fn validate(&self, pm: &ParametricMatrix) -> Result<()> {
        let mut seen = BTreeSet::new();
        let mut ranged = 0;
        for (name, p) in &self.params {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidSweep(format!(
                    "parameter `{name}` given twice"
                )));
            }
            if !pm.params().contains(name) {
                return Err(Error::InvalidSweep(format!("unknown parameter `{name}`")));
            }
            if let ParamSpec::Range { lo, hi, steps } = p {
                ranged += 1;
                if *steps < 2 {
                    return Err(Error::InvalidSweep(format!(
                        "range for `{name}` needs at least 2 steps"
                    )));
                }
                if lo == hi {
                    return Err(Error::InvalidSweep(format!("empty range for `{name}`")));
                }
            }
        }
        if let Some(missing) = pm.params().iter().find(|p| !seen.contains(p.as_str())) {
            return Err(Error::InvalidSweep(format!(
                "parameter `{missing}` is unbound"
            )));
        }
        if ranged > MAX_RANGED {
            return Err(Error::InvalidSweep(format!(
                "at most {MAX_RANGED} ranged parameters, got {ranged}"
            )));
        }
        if !(self.touch_tol >= 0.0) {
            return Err(Error::InvalidSweep(
                "touch tolerance must be non-negative".into(),
            ));
        }
        self.policy().map(|_| ())
    }
}

/// A ranged parameter and its grid values.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CellOutcome {
    Classified(SpectralType),
    /// On a marginal locus; `oracle` is the numeric classification attempt.
    Marginal {
        label: String,
        oracle: Option<OracleVerdict>,
    },
    Failed(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepCell {
    /// Position along each ranged axis.
    pub index: Vec<usize>,
    /// Every parameter's value, in the spec's order.
    pub values: Vec<(String, Rational)>,
    pub invariants: Option<PrincipalInvariants>,
    pub loci: Option<LociEvaluation>,
    pub outcome: CellOutcome,
}

impl SweepCell {
    pub fn spectral_type(&self) -> Option<SpectralType> {
        match self.outcome {
            CellOutcome::Classified(t) => Some(t),
            _ => None,
        }
    }

    /// Type symbol, marginal label or `"failed"`.
    pub fn symbol(&self) -> String {
        match &self.outcome {
            CellOutcome::Classified(t) => t.to_string(),
            CellOutcome::Marginal { label, .. } => label.clone(),
            CellOutcome::Failed(_) => "failed".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<Axis>,
    pub cells: Vec<SweepCell>,
    pub policy: ZeroPolicy,
    pub touch_tol: f64,
    /// Kept so crossings can be located between grid points.
    pub matrix: ParametricMatrix,
}

impl SweepResult {
    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.values.len()).collect()
    }

    /// Row-major strides, last axis fastest.
    pub fn strides(&self) -> Vec<usize> {
        strides(&self.shape())
    }

    pub fn flat_index(&self, index: &[usize]) -> usize {
        index.iter().zip(self.strides()).map(|(i, s)| i * s).sum()
    }
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * shape[k + 1];
    }
    s
}

fn grid_values(lo: &Rational, hi: &Rational, steps: usize, mode: Mode) -> Result<Vec<Rational>> {
    let n = Rational::from_i64((steps - 1) as i64);
    (0..steps)
        .map(|k| {
            let v = lo + (hi - lo) * Rational::from_i64(k as i64) / &n;
            round_to_mode(v, mode)
        })
        .collect()
}

fn round_to_mode(v: Rational, mode: Mode) -> Result<Rational> {
    match mode {
        Mode::Exact => Ok(v),
        Mode::Float => rational_from_f64(v.to_f64().unwrap_or(f64::NAN)),
    }
}

fn evaluate_cell(
    pm: &ParametricMatrix,
    bindings: &BTreeMap<String, Rational>,
    mode: Mode,
    policy: ZeroPolicy,
) -> (
    Option<PrincipalInvariants>,
    Option<LociEvaluation>,
    CellOutcome,
) {
    let fail = |e: Error| CellOutcome::Failed(e.to_string());
    let matrix = match pm.instantiate(bindings) {
        Ok(m) => m,
        Err(e) => return (None, None, fail(e)),
    };
    let mut inv = principal_invariants(&matrix);
    if mode == Mode::Float {
        match PrincipalInvariants::from_f64(&inv.to_f64()) {
            Ok(r) => inv = r,
            Err(e) => return (None, None, fail(e)),
        }
    }
    let loci = match evaluate_loci_with(&inv, policy) {
        Ok(l) => l,
        Err(e) => return (Some(inv), None, fail(e)),
    };
    let outcome = if let Some(label) = loci.label() {
        CellOutcome::Marginal {
            label,
            oracle: oracle::classify_poly(&char_poly(&inv)).ok(),
        }
    } else {
        match spectral_type(&inv) {
            Ok(t) => CellOutcome::Classified(t),
            Err(e) => fail(e),
        }
    };
    (Some(inv), Some(loci), outcome)
}

/// Evaluates every grid cell; cells come back in row-major order with the
/// last ranged parameter varying fastest, whatever the thread count.
pub fn run_sweep(pm: &ParametricMatrix, spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate(pm)?;
    let policy = spec.policy()?;
    let mut axes = Vec::new();
    let mut slots = Vec::new();
    for (name, p) in &spec.params {
        match p {
            ParamSpec::Fixed(v) => slots.push(Err(round_to_mode(v.clone(), spec.mode)?)),
            ParamSpec::Range { lo, hi, steps } => {
                slots.push(Ok(axes.len()));
                axes.push(Axis {
                    name: name.clone(),
                    values: grid_values(lo, hi, *steps, spec.mode)?,
                });
            }
        }
    }
    let shape: Vec<usize> = axes.iter().map(|a| a.values.len()).collect();
    let st = strides(&shape);
    let total: usize = shape.iter().product();

    let cells = (0..total)
        .into_par_iter()
        .map(|flat| {
            let index: Vec<usize> = st.iter().zip(&shape).map(|(s, n)| (flat / s) % n).collect();
            let values: Vec<(String, Rational)> = spec
                .params
                .iter()
                .zip(&slots)
                .map(|((name, _), slot)| {
                    let v = match slot {
                        Err(v) => v.clone(),
                        Ok(a) => axes[*a].values[index[*a]].clone(),
                    };
                    (name.clone(), v)
                })
                .collect();
            let bindings = values.iter().cloned().collect();
            let (invariants, loci, outcome) = evaluate_cell(pm, &bindings, spec.mode, policy);
            SweepCell {
                index,
                values,
                invariants,
                loci,
                outcome,
            }
        })
        .collect();
    Ok(SweepResult {
        axes,
        cells,
        policy,
        touch_tol: spec.touch_tol,
        matrix: pm.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    SignChange,
    TouchNoSignChange,
}

impl CrossingKind {
    pub fn name(&self) -> &'static str {
        match self {
            CrossingKind::SignChange => "sign-change",
            CrossingKind::TouchNoSignChange => "touch-no-sign-change",
        }
    }
}

/// A locus function vanishing between cells `from` and `to` (flat indices,
/// both off that function's locus) along one grid line.
#[derive(Clone, Debug, PartialEq)]
pub struct Crossing {
    pub function: LocusFn,
    pub kind: CrossingKind,
    pub axis: usize,
    pub from: usize,
    pub to: usize,
    /// Cell with the smallest `|f|` in the span.
    pub near: usize,
    /// Sign of `σ` on the locus (`ρ` crossings); `0` when undefined. Read at
    /// `near` for zero runs, located by bisection otherwise.
    pub sigma_sign: i8,
    /// Sign of `τ` on the locus (discriminant crossings), located like
    /// `sigma_sign`.
    pub d_split: DSplit,
}

impl Crossing {
    /// A `ρ` crossing with `σ > 0`, i.e. through `R` rather than `R̃ \ R`.
    pub fn is_hopf(&self) -> bool {
        self.function == LocusFn::Rho && self.sigma_sign > 0
    }

    /// Admissible spectral-type deltas `(α, β, γ, δ)` across this crossing.
    pub fn allowed_deltas(&self) -> Vec<[i64; 4]> {
        let pm = |d: [i64; 4]| vec![d, d.map(|x| -x)];
        if self.kind == CrossingKind::TouchNoSignChange {
            return vec![[0; 4]];
        }
        match self.function {
            LocusFn::Zeta => pm([0, 0, 1, -1]),
            LocusFn::Rho => match self.sigma_sign {
                1 => pm([1, -1, 0, 0]),
                -1 => vec![[0; 4]],
                _ => [vec![[0; 4]], pm([1, -1, 0, 0])].concat(),
            },
            LocusFn::Disc => match self.d_split {
                DSplit::Plus => pm([1, 0, -2, 0]),
                DSplit::Minus => pm([0, 1, 0, -2]),
                DSplit::NotApplicable => [pm([1, 0, -2, 0]), pm([0, 1, 0, -2])].concat(),
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CrossingReport {
    pub crossings: Vec<Crossing>,
}

impl CrossingReport {
    pub fn count(&self, f: LocusFn, kind: CrossingKind) -> usize {
        self.crossings
            .iter()
            .filter(|c| c.function == f && c.kind == kind)
            .count()
    }
}

struct LinePoint {
    flat: usize,
    sign: i8,
    mag: f64,
    scale: f64,
}

fn magnitude(v: &Rational) -> f64 {
    v.abs().to_f64().unwrap_or(f64::INFINITY)
}

/// Scans every grid line for each locus function.
pub fn detect_crossings(result: &SweepResult) -> CrossingReport {
    let shape = result.shape();
    let st = strides(&shape);
    let mut crossings = Vec::new();
    for axis in 0..shape.len() {
        let n = shape[axis];
        for (start, cell) in result.cells.iter().enumerate() {
            if cell.index[axis] != 0 {
                continue;
            }
            let line: Vec<usize> = (0..n).map(|k| start + k * st[axis]).collect();
            for f in LocusFn::ALL {
                scan_line(result, &line, axis, f, &mut crossings);
            }
        }
    }
    CrossingReport { crossings }
}

fn scan_line(
    result: &SweepResult,
    line: &[usize],
    axis: usize,
    f: LocusFn,
    out: &mut Vec<Crossing>,
) {
    // split at cells without a loci evaluation
    let mut segment: Vec<LinePoint> = Vec::new();
    let flush = |seg: &mut Vec<LinePoint>, out: &mut Vec<Crossing>| {
        scan_segment(result, seg, axis, f, out);
        seg.clear();
    };
    for &flat in line {
        let cell = &result.cells[flat];
        match (&cell.loci, &cell.invariants) {
            (Some(l), Some(inv)) => segment.push(LinePoint {
                flat,
                sign: l.sign(f),
                mag: magnitude(l.value(f)),
                scale: (1.0 + inv.root_scale()).powi(f.weight(inv.dim()) as i32),
            }),
            _ => flush(&mut segment, out),
        }
    }
    flush(&mut segment, out);
}

fn sigma_sign(l: &LociEvaluation) -> i8 {
    l.sigma_root.as_ref().map_or(0, |s| s.sign())
}

fn d_split(l: &LociEvaluation, f: LocusFn) -> DSplit {
    match &l.tau_root {
        Some(t) if f == LocusFn::Disc && !t.is_zero() => {
            if t.is_positive() {
                DSplit::Plus
            } else {
                DSplit::Minus
            }
        }
        _ => DSplit::NotApplicable,
    }
}

const BISECTION_STEPS: usize = 64;

/// `σ` and `τ` signs at a crossing strictly between two grid points, found by
/// exact bisection until both ends of the bracket agree. Signs read at a grid
/// point can differ from those on the locus when `σ` varies fast.
fn locate(result: &SweepResult, f: LocusFn, from: usize, to: usize) -> Option<(i8, DSplit)> {
    if f == LocusFn::Zeta {
        return None;
    }
    let eval = |vals: &[(String, Rational)]| -> Option<LociEvaluation> {
        let bindings: BTreeMap<String, Rational> = vals.iter().cloned().collect();
        let inv = principal_invariants(&result.matrix.instantiate(&bindings).ok()?);
        evaluate_loci_with(&inv, result.policy).ok()
    };
    let signs = |l: &LociEvaluation| (sigma_sign(l), d_split(l, f));
    let agreed = |a: (i8, DSplit), b: (i8, DSplit)| match f {
        LocusFn::Rho => a.0 == b.0 && a.0 != 0,
        _ => a.1 == b.1 && a.1 != DSplit::NotApplicable,
    };
    let mut lo = result.cells[from].values.clone();
    let mut hi = result.cells[to].values.clone();
    let mut lo_l = result.cells[from].loci.clone()?;
    let mut hi_l = result.cells[to].loci.clone()?;
    let lo_sign = lo_l.sign(f);
    for _ in 0..BISECTION_STEPS {
        if agreed(signs(&lo_l), signs(&hi_l)) {
            return Some(signs(&lo_l));
        }
        let mid: Vec<(String, Rational)> = lo
            .iter()
            .zip(&hi)
            .map(|((n, a), (_, b))| (n.clone(), (a + b) / Rational::from_i64(2)))
            .collect();
        let mid_l = eval(&mid)?;
        match mid_l.sign(f) {
            0 => return Some(signs(&mid_l)),
            s if s == lo_sign => {
                lo = mid;
                lo_l = mid_l;
            }
            _ => {
                hi = mid;
                hi_l = mid_l;
            }
        }
    }
    None
}

fn scan_segment(
    result: &SweepResult,
    seg: &[LinePoint],
    axis: usize,
    f: LocusFn,
    out: &mut Vec<Crossing>,
) {
    let make = |kind, from: usize, to: usize, near: usize| {
        let loci = result.cells[near]
            .loci
            .as_ref()
            .expect("segment cells have loci");
        let sigma = if f == LocusFn::Rho { sigma_sign(loci) } else { 0 };
        let at_near = (sigma, d_split(loci, f));
        // a strict sign change has no grid point on the locus
        let (sigma_sign, d_split) = if kind == CrossingKind::SignChange && loci.sign(f) != 0 {
            locate(result, f, from, to).unwrap_or(at_near)
        } else {
            at_near
        };
        Crossing {
            function: f,
            kind,
            axis,
            from,
            to,
            near,
            sigma_sign,
            d_split,
        }
    };
    let mut i = 0;
    while i < seg.len() {
        let p = &seg[i];
        if p.sign == 0 {
            // zero run [i, j)
            let mut j = i;
            while j < seg.len() && seg[j].sign == 0 {
                j += 1;
            }
            if i > 0 && j < seg.len() {
                let (a, b) = (&seg[i - 1], &seg[j]);
                let kind = if a.sign == b.sign {
                    CrossingKind::TouchNoSignChange
                } else {
                    CrossingKind::SignChange
                };
                let near = (i..j)
                    .min_by(|&x, &y| seg[x].mag.total_cmp(&seg[y].mag))
                    .unwrap();
                out.push(make(kind, a.flat, b.flat, seg[near].flat));
            }
            i = j;
            continue;
        }
        if let Some(q) = seg.get(i + 1) {
            if q.sign == -p.sign {
                let near = if q.mag < p.mag { q.flat } else { p.flat };
                out.push(make(CrossingKind::SignChange, p.flat, q.flat, near));
            }
        }
        if i > 0 && i + 1 < seg.len() {
            let (a, b) = (&seg[i - 1], &seg[i + 1]);
            let small = p.mag <= result.touch_tol * p.scale;
            if small && a.sign == p.sign && b.sign == p.sign && p.mag < a.mag && p.mag <= b.mag {
                out.push(make(
                    CrossingKind::TouchNoSignChange,
                    a.flat,
                    b.flat,
                    p.flat,
                ));
            }
        }
        i += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent,
    /// An endpoint is marginal or failed.
    Skipped,
}

/// Type bookkeeping across a cluster of overlapping crossings on one line.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionCheck {
    pub axis: usize,
    pub from: usize,
    pub to: usize,
    /// Indices into the report's crossings.
    pub crossings: Vec<usize>,
    pub observed: Option<[i64; 4]>,
    pub allowed: Vec<[i64; 4]>,
    pub verdict: Verdict,
}

fn minkowski(a: &[[i64; 4]], b: &[[i64; 4]]) -> Vec<[i64; 4]> {
    let set: BTreeSet<[i64; 4]> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| [0, 1, 2, 3].map(|k| x[k] + y[k])))
        .collect();
    set.into_iter().collect()
}

/// Groups crossings whose spans overlap on the same grid line and compares
/// the observed type change with the admissible sum of rule deltas.
pub fn check_transitions(result: &SweepResult, report: &CrossingReport) -> Vec<TransitionCheck> {
    let st = result.strides();
    let pos = |flat: usize, axis: usize| result.cells[flat].index[axis];
    let mut lines: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (k, c) in report.crossings.iter().enumerate() {
        let key = c.from - pos(c.from, c.axis) * st[c.axis];
        lines.entry((c.axis, key)).or_default().push(k);
    }
    let mut checks = Vec::new();
    for ((axis, _), mut ks) in lines {
        ks.sort_by_key(|&k| {
            (
                pos(report.crossings[k].from, axis),
                pos(report.crossings[k].to, axis),
            )
        });
        let mut clusters: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for k in ks {
            let c = &report.crossings[k];
            match clusters.last_mut() {
                Some((_, to, members)) if pos(c.from, axis) < pos(*to, axis) => {
                    if pos(c.to, axis) > pos(*to, axis) {
                        *to = c.to;
                    }
                    members.push(k);
                }
                _ => clusters.push((c.from, c.to, vec![k])),
            }
        }
        for (from, to, members) in clusters {
            let allowed = members.iter().fold(vec![[0i64; 4]], |acc, &k| {
                minkowski(&acc, &report.crossings[k].allowed_deltas())
            });
            let ends = (
                result.cells[from].spectral_type(),
                result.cells[to].spectral_type(),
            );
            let (observed, verdict) = match ends {
                (Some(a), Some(b)) => {
                    let d = a.delta_to(&b);
                    let v = if allowed.contains(&d) {
                        Verdict::Consistent
                    } else {
                        Verdict::Inconsistent
                    };
                    (Some(d), v)
                }
                _ => (None, Verdict::Skipped),
            };
            checks.push(TransitionCheck {
                axis,
                from,
                to,
                crossings: members,
                observed,
                allowed,
                verdict,
            });
        }
    }
    checks
}
