//! Marginal-locus functions and membership tests.
//!
//! At a point `d` of invariant space this evaluates
//!
//! * `ζ = d_m` (determinant locus `Z`),
//! * the discriminant of the characteristic polynomial (locus `D̃`, split
//!   into the real-double-root part `D` and the complex thread),
//! * `ρ = res(q^r, q^i)` (locus `R̃`, with `R ⊂ R̃` cut out by `σ > 0`),
//!
//! together with `σ` and `τ`, the roots of the linear penultimate remainders
//! of `(q^r, q^i)` and `(p, p')`.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::invariants::{char_poly, PrincipalInvariants};
use crate::oracle;
use crate::poly::Poly;
use crate::remainder::{
    count_positive_roots, count_real_roots, discriminant, gcd, linear_root, penultimate_remainder,
    resultant, squarefree_decomposition,
};
use crate::scalar::{pow_i, Coeff, Rational};

pub const DEFAULT_FLOAT_TOL: f64 = 1e-9;

/// How a locus value is compared with zero.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum ZeroPolicy {
    #[default]
    Exact,
    /// `|v| <= tol * (1 + R)^w`, with `R` the root scale of the invariants
    /// and `w` the homogeneous weight of the function.
    Tolerance(f64),
}

/// The three marginal-locus functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocusFn {
    Zeta,
    Disc,
    Rho,
}

impl LocusFn {
    pub const ALL: [LocusFn; 3] = [LocusFn::Zeta, LocusFn::Disc, LocusFn::Rho];

    pub fn name(&self) -> &'static str {
        match self {
            LocusFn::Zeta => "zeta",
            LocusFn::Disc => "disc",
            LocusFn::Rho => "rho",
        }
    }

    /// Homogeneous weight in the invariants, with `d_k` of weight `k`.
    pub fn weight(&self, m: usize) -> usize {
        match self {
            LocusFn::Zeta => m,
            LocusFn::Disc => m * m.saturating_sub(1),
            LocusFn::Rho => m * m.saturating_sub(1) / 2,
        }
    }
}

/// Which half of `D` a real double root lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DSplit {
    Plus,
    Minus,
    NotApplicable,
}

impl DSplit {
    pub fn symbol(&self) -> &'static str {
        match self {
            DSplit::Plus => "+",
            DSplit::Minus => "-",
            DSplit::NotApplicable => "n/a",
        }
    }

    fn from_sign(s: i8) -> Self {
        match s {
            1 => DSplit::Plus,
            -1 => DSplit::Minus,
            _ => DSplit::NotApplicable,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LociEvaluation {
    pub zeta: Rational,
    pub disc: Rational,
    pub rho: Rational,
    /// `None` when the remainder sequence of `(q^r, q^i)` is degenerate.
    pub sigma_root: Option<Rational>,
    /// `−s0·s1` of the formal first subresultant for `m >= 4`, otherwise
    /// the penultimate remainder's `−c0·c1`.
    pub sigma_cert: Option<Rational>,
    /// `None` when the remainder sequence of `(p, p')` is degenerate.
    pub tau_root: Option<Rational>,
    pub in_z: bool,
    pub in_d: bool,
    pub in_r: bool,
    /// On `D̃` but not on `D`.
    pub thread: bool,
    pub d_split: DSplit,
    /// Signs after the zero policy; `0` means "on the locus".
    pub zeta_sign: i8,
    pub disc_sign: i8,
    pub rho_sign: i8,
    /// Some membership was decided by a route other than `σ`/`τ`.
    pub fallback: bool,
}

impl LociEvaluation {
    pub fn value(&self, f: LocusFn) -> &Rational {
        match f {
            LocusFn::Zeta => &self.zeta,
            LocusFn::Disc => &self.disc,
            LocusFn::Rho => &self.rho,
        }
    }

    pub fn sign(&self, f: LocusFn) -> i8 {
        match f {
            LocusFn::Zeta => self.zeta_sign,
            LocusFn::Disc => self.disc_sign,
            LocusFn::Rho => self.rho_sign,
        }
    }

    pub fn is_marginal(&self) -> bool {
        self.in_z || self.in_d || self.in_r
    }

    /// `"Z"`, `"D"`, `"R"` joined with `+`, or `None` off the marginal locus.
    pub fn label(&self) -> Option<String> {
        let parts: Vec<&str> = [(self.in_z, "Z"), (self.in_d, "D"), (self.in_r, "R")]
            .into_iter()
            .filter_map(|(on, s)| on.then_some(s))
            .collect();
        (!parts.is_empty()).then(|| parts.join("+"))
    }
}

/// `q^r(ν) = Σ (−1)^j d_{m−2j} ν^j` and `q^i(ν) = Σ (−1)^j d_{m−1−2j} ν^j`.
pub fn qr_qi(inv: &PrincipalInvariants) -> (Poly<Rational>, Poly<Rational>) {
    let m = inv.dim() as isize;
    (Poly::new(formal_q(inv, m)), Poly::new(formal_q(inv, m - 1)))
}

fn weighted_zero(v: &Rational, weight: usize, scale: f64, policy: ZeroPolicy) -> bool {
    match policy {
        ZeroPolicy::Exact => v.is_zero(),
        ZeroPolicy::Tolerance(tol) => {
            let x = v.abs().to_f64().unwrap_or(f64::INFINITY);
            x <= tol * (1.0 + scale).powi(weight as i32)
        }
    }
}

fn sign_with(v: &Rational, on_locus: bool) -> i8 {
    if on_locus {
        0
    } else {
        v.sign()
    }
}

/// Ascending coefficients of `q^r` (`top = m`) or `q^i` (`top = m − 1`) up
/// to their formal degree, zero leading coefficients included.
fn formal_q(inv: &PrincipalInvariants, top: isize) -> Vec<Rational> {
    (0..=(top.max(0) / 2))
        .map(|j| {
            let c = inv.get(top - 2 * j);
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = Rational::from_i64(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

/// `(s1, s0)` with `S_1 = s1 ν + s0` the first subresultant of `a` and `b`
/// taken at their formal degrees `p >= q >= 1`.
///
/// Unlike a remainder sequence this is a polynomial in the coefficients, so
/// it does not change shape when a leading coefficient vanishes.
fn first_subresultant(a: &[Rational], b: &[Rational]) -> (Rational, Rational) {
    let (p, q) = (a.len() - 1, b.len() - 1);
    let cols = p + q - 1;
    // row for ν^shift · f, columns from ν^(cols−1) down to ν^0
    let row = |f: &[Rational], shift: usize| -> Vec<Rational> {
        let mut r = vec![Rational::zero(); cols];
        for (k, c) in f.iter().enumerate() {
            r[cols - 1 - (k + shift)] = c.clone();
        }
        r
    };
    let mut rows: Vec<Vec<Rational>> = (0..q - 1).rev().map(|s| row(a, s)).collect();
    rows.extend((0..p - 1).rev().map(|s| row(b, s)));
    let keep = cols - 2;
    let minor = |last: usize| -> Rational {
        det(rows
            .iter()
            .map(|r| r[..keep].iter().chain([&r[last]]).cloned().collect())
            .collect())
    };
    (minor(cols - 2), minor(cols - 1))
}

/// The `σ` certificate `−s0·s1` for `m >= 4`; its sign is the sign of `σ`
/// whenever `s1 ≠ 0`.
fn sigma_certificate(inv: &PrincipalInvariants) -> Option<Rational> {
    let m = inv.dim() as isize;
    if m < 4 {
        return None;
    }
    let (qr, qi) = (formal_q(inv, m), formal_q(inv, m - 1));
    let (a, b) = if qr.len() >= qi.len() {
        (qr, qi)
    } else {
        (qi, qr)
    };
    let (s1, s0) = first_subresultant(&a, &b);
    Some(-(s0 * s1))
}

/// `res(q^r, q^i)` at the formal degrees `(⌊m/2⌋, ⌊(m−1)/2⌋)`, a polynomial
/// in the invariants. Only the `d1`-led factor can lose degree; the other has
/// leading coefficient `±1`.
fn formal_resultant(
    inv: &PrincipalInvariants,
    qr: &Poly<Rational>,
    qi: &Poly<Rational>,
) -> Result<Rational> {
    if qr.is_zero() || qi.is_zero() {
        return Ok(Rational::zero());
    }
    let m = inv.dim();
    let (p, q) = (m / 2, (m - 1) / 2);
    let (da, db) = (qr.degree().unwrap_or(0), qi.degree().unwrap_or(0));
    let r = resultant(qr, qi)?;
    // expanding the Sylvester matrix along its first column
    Ok(if db < q {
        pow_i(&qr.coeff(p), (q - db) as i64)? * r
    } else if da < p {
        let k = p - da;
        let f = pow_i(&qi.coeff(q), k as i64)? * r;
        if (q * k) % 2 == 1 {
            -f
        } else {
            f
        }
    } else {
        r
    })
}

/// Root and certificate of the linear penultimate remainder of `(a, b)`.
///
/// A zero `b` ends the sequence at `a` itself.
fn penultimate_root(a: &Poly<Rational>, b: &Poly<Rational>) -> Option<(Rational, Rational)> {
    let (a, b) = match (a.degree(), b.degree()) {
        // a zero argument leaves the other as the gcd
        (Some(_), None) => return linear_root(a),
        (None, Some(_)) => return linear_root(b),
        (None, None) => return None,
        (Some(da), Some(db)) if da < db => (b, a),
        _ => (a, b),
    };
    let pen = penultimate_remainder(a, b).ok()?;
    linear_root(&pen)
}

/// Sign of the real roots of `g` when they all agree, otherwise `0`.
fn common_real_root_sign(g: &Poly<Rational>) -> i8 {
    if g.is_constant() || g.coeff(0).is_zero() {
        return 0;
    }
    let total = count_real_roots(g);
    let pos = count_positive_roots(g);
    match (total, pos) {
        (0, _) => 0,
        (t, p) if p == t => 1,
        (_, 0) => -1,
        _ => 0,
    }
}

/// Evaluates all locus functions with exact zero tests.
pub fn evaluate_loci(inv: &PrincipalInvariants) -> Result<LociEvaluation> {
    evaluate_loci_with(inv, ZeroPolicy::Exact)
}

pub fn evaluate_loci_with(inv: &PrincipalInvariants, policy: ZeroPolicy) -> Result<LociEvaluation> {
    let m = inv.dim();
    let scale = inv.root_scale();
    let p = char_poly(inv);
    let dp = p.derivative();

    let zeta = inv.determinant().clone();
    let disc = if m >= 2 {
        discriminant(&p)?
    } else {
        Rational::from_i64(1)
    };
    let (qr, qi) = qr_qi(inv);
    let rho = formal_resultant(inv, &qr, &qi)?;

    let sigma = penultimate_root(&qr, &qi);
    let tau = if m >= 2 {
        penultimate_root(&p, &dp)
    } else {
        None
    };

    let in_z = weighted_zero(&zeta, LocusFn::Zeta.weight(m), scale, policy);
    let disc_zero = m >= 2 && weighted_zero(&disc, LocusFn::Disc.weight(m), scale, policy);
    let rho_zero = weighted_zero(&rho, LocusFn::Rho.weight(m), scale, policy);
    let mut fallback = false;

    // D versus the thread
    let (in_d, thread, d_split) = if !disc_zero {
        (false, false, DSplit::NotApplicable)
    } else {
        let real_double = match policy {
            ZeroPolicy::Exact => {
                let g = gcd(&p, &dp);
                !g.is_constant() && count_real_roots(&g) > 0
            }
            ZeroPolicy::Tolerance(tol) => {
                fallback = true;
                closest_pair_is_real(&p, tol, scale)?
            }
        };
        let split = if !real_double {
            DSplit::NotApplicable
        } else if let Some((root, _)) = &tau {
            DSplit::from_sign(root.sign())
        } else {
            fallback = true;
            DSplit::from_sign(real_double_root_sign(&p)?)
        };
        (real_double, !real_double, split)
    };

    // R versus R̃
    let in_r = if !rho_zero {
        false
    } else if let Some((root, _)) = &sigma {
        root.is_positive()
    } else {
        fallback = true;
        match policy {
            ZeroPolicy::Exact => {
                let g = if qi.is_zero() {
                    qr.clone()
                } else {
                    gcd(&qr, &qi)
                };
                !g.is_constant() && count_positive_roots(&g) > 0
            }
            ZeroPolicy::Tolerance(tol) => has_imaginary_pair(&p, tol, scale)?,
        }
    };

    let (sigma_root, sigma_cert) = match sigma {
        Some((r, c)) => (Some(r), sigma_certificate(inv).or(Some(c))),
        None => (None, sigma_certificate(inv)),
    };
    Ok(LociEvaluation {
        zeta_sign: sign_with(&zeta, in_z),
        disc_sign: sign_with(&disc, disc_zero),
        rho_sign: sign_with(&rho, rho_zero),
        zeta,
        disc,
        rho,
        sigma_root,
        sigma_cert,
        tau_root: tau.map(|(r, _)| r),
        in_z,
        in_d,
        in_r,
        thread,
        d_split,
        fallback,
    })
}

/// Sign shared by all real multiple roots of `p`, or `0` if mixed or absent.
fn real_double_root_sign(p: &Poly<Rational>) -> Result<i8> {
    let mut repeated = Poly::one();
    for (f, k) in squarefree_decomposition(p)? {
        if k >= 2 {
            repeated = &repeated * &f;
        }
    }
    Ok(common_real_root_sign(&repeated))
}

/// Tolerance-mode test: the two closest roots meet near the real axis.
fn closest_pair_is_real(p: &Poly<Rational>, tol: f64, scale: f64) -> Result<bool> {
    let rs = oracle::roots(p)?;
    let z = &rs.roots;
    let mut best: Option<(f64, f64)> = None;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let dist = (z[i] - z[j]).norm();
            let mid_im = 0.5 * (z[i].im + z[j].im);
            if best.is_none_or(|(d, _)| dist < d) {
                best = Some((dist, mid_im));
            }
        }
    }
    Ok(best.is_some_and(|(_, im)| im.abs() <= tol.sqrt() * (1.0 + scale)))
}

/// Tolerance-mode test: a non-real root sits on the imaginary axis.
fn has_imaginary_pair(p: &Poly<Rational>, tol: f64, scale: f64) -> Result<bool> {
    let rs = oracle::roots(p)?;
    let small = tol.sqrt() * (1.0 + scale);
    Ok(rs
        .roots
        .iter()
        .any(|r| r.re.abs() <= small && r.im.abs() > small))
}

/// Parses a policy from a mode and an optional tolerance.
pub fn policy_for(mode: crate::scalar::Mode, tol: Option<f64>) -> Result<ZeroPolicy> {
    match (mode, tol) {
        (crate::scalar::Mode::Exact, _) => Ok(ZeroPolicy::Exact),
        (crate::scalar::Mode::Float, None) => Ok(ZeroPolicy::Tolerance(DEFAULT_FLOAT_TOL)),
        (crate::scalar::Mode::Float, Some(t)) if t.is_finite() && t >= 0.0 => {
            Ok(ZeroPolicy::Tolerance(t))
        }
        (_, Some(t)) => Err(Error::Precondition(format!("invalid tolerance {t}"))),
    }
}
