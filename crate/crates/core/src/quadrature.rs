//! Winding number by numerical quadrature of `d arg p(iμ) / dμ`.
//!
//! A float cross-check of [`crate::indices::winding`] for `m <= 4`, using
//! the printed rational integrands. The integrand is even, so the integral
//! over the real line is twice the integral over `[0, ∞)`, which is mapped
//! onto `[0, π/2)` by `μ = k tan θ`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::expr::{parse_free, Expr};
use crate::indices::imaginary_axis_parts;
use crate::invariants::{char_poly, PrincipalInvariants};
use crate::oracle;
use crate::poly::Poly;
use crate::scalar::Rational;

const ABS_TOL: f64 = 1e-11;
const MAX_INTERVALS: usize = 4000;

// Gauss–Kronrod 7/15 nodes on [-1, 1]; the Gauss nodes are the odd entries.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Coefficients of numerator and denominator in powers of `μ²`.
const PRINTED: [(&[&str], &[&str]); 3] = [
    (&["-d1*d2", "-d1"], &["d2^2", "d1^2 - 2*d2", "1"]),
    (
        &["-d2*d3", "3*d3 - d1*d2", "-d1"],
        &["d3^2", "d2^2 - 2*d1*d3", "d1^2 - 2*d2", "1"],
    ),
    (
        &["-d3*d4", "3*d1*d4 - d2*d3", "3*d3 - d1*d2", "-d1"],
        &[
            "d4^2",
            "d3^2 - 2*d2*d4",
            "d2^2 - 2*d1*d3 + 2*d4",
            "d1^2 - 2*d2",
            "1",
        ],
    ),
];

type ParsedIntegrand = (Vec<Expr>, Vec<Expr>);

static PARSED: Lazy<Vec<ParsedIntegrand>> = Lazy::new(|| {
    let p = |v: &[&str]| -> Vec<Expr> {
        v.iter()
            .map(|s| parse_free(s).expect("integrands are well formed"))
            .collect()
    };
    PRINTED.iter().map(|(n, d)| (p(n), p(d))).collect()
});

/// `Σ c_j μ^(2j)` from coefficients in `μ²`.
fn even_poly(coeffs: Vec<Rational>) -> Poly<Rational> {
    let mut out = Vec::with_capacity(2 * coeffs.len());
    for c in coeffs {
        out.push(c);
        out.push(Rational::from_integer(0.into()));
    }
    Poly::new(out)
}

/// The printed integrand `(numerator, denominator)` as polynomials in `μ`.
pub fn printed_integrand(inv: &PrincipalInvariants) -> Result<(Poly<Rational>, Poly<Rational>)> {
    let m = inv.dim();
    if !(2..=4).contains(&m) {
        return Err(Error::Dimension(format!(
            "printed integrands exist for 2 <= m <= 4, got m = {m}"
        )));
    }
    let bindings: BTreeMap<String, Rational> = inv
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| (format!("d{}", k + 1), v.clone()))
        .collect();
    let (num, den) = &PARSED[m - 2];
    let eval = |es: &[Expr]| -> Result<Vec<Rational>> {
        es.iter().map(|e| e.evaluate(&bindings)).collect()
    };
    Ok((even_poly(eval(num)?), even_poly(eval(den)?)))
}

/// `(P Q' − Q P', P² + Q²)` for `p(iμ) = P(μ) + i Q(μ)`, valid for any `m`.
pub fn argument_derivative(inv: &PrincipalInvariants) -> (Poly<Rational>, Poly<Rational>) {
    let (re, im) = imaginary_axis_parts(&char_poly(inv));
    let num = &(&re * &im.derivative()) - &(&im * &re.derivative());
    let den = &(&re * &re) + &(&im * &im);
    (num, den)
}

fn kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive Gauss–Kronrod integration over `[a, b]` split at
/// `breaks`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<f64> {
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|x| *x > a && *x < b)
        .collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut parts: Vec<(f64, f64, f64, f64)> = cuts
        .windows(2)
        .map(|w| {
            let (v, e) = kronrod(&f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();
    loop {
        let total: f64 = parts.iter().map(|p| p.2).sum();
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::QuadratureFailed { estimate: total });
        }
        if err <= tol.max(1e-13 * total.abs()) {
            return Ok(total);
        }
        if parts.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureFailed { estimate: total });
        }
        let worst = (0..parts.len())
            .max_by(|&i, &j| parts[i].3.total_cmp(&parts[j].3))
            .unwrap();
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::QuadratureFailed { estimate: total });
        }
        for (x, y) in [(lo, mid), (mid, hi)] {
            let (v, e) = kronrod(&f, x, y);
            parts.push((x, y, v, e));
        }
    }
}

/// `(1/2π) ∫ num/den dμ` over the real line with the printed integrand.
pub fn winding_quadrature(inv: &PrincipalInvariants) -> Result<f64> {
    let (num, den) = printed_integrand(inv)?;
    let num = num.to_f64();
    let den = den.to_f64();
    let k = 1.0 + inv.root_scale();
    // the integrand peaks where μ is close to the imaginary part of a root
    let rs = oracle::roots(&char_poly(inv))?;
    let breaks: Vec<f64> = rs
        .roots
        .iter()
        .map(|r| (r.im.abs() / k).atan())
        .filter(|t| *t > 0.0)
        .collect();
    let g = |theta: f64| {
        let t = theta.tan();
        let mu = k * t;
        let jac = k * (1.0 + t * t);
        num.eval(&mu) / den.eval(&mu) * jac
    };
    let half = integrate(g, 0.0, FRAC_PI_2, &breaks, ABS_TOL)?;
    Ok(2.0 * half / (2.0 * PI))
}
