//! Numeric eigenvalue oracle.
//!
//! Finds all complex roots of a polynomial with the Aberth–Ehrlich
//! simultaneous iteration and classifies them directly by counting. This is
//! the independent brute-force check for every exact classification, and the
//! fallback for membership tests in tolerance mode.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::indices::SpectralType;
use crate::poly::Poly;
use crate::scalar::Coeff;

pub const DEFAULT_AXIS_TOL: f64 = 1e-6;
const MAX_ITER: usize = 200;
const PAIR_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `|p(r)|` for each root.
    pub residuals: Vec<f64>,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Classified(SpectralType),
    /// Some root lies within the axis tolerance of the imaginary axis, or
    /// the conjugate pairing could not be established.
    MarginalAmbiguous,
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    // value and derivative
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn abs_scale(coeffs: &[f64], r: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
}

/// All complex roots of `p`.
pub fn roots<T: Coeff>(p: &Poly<T>) -> Result<RootSet> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
    }
    let raw: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64_lossy()).collect();
    let lc = raw[n];
    let coeffs: Vec<f64> = raw.iter().map(|c| c / lc).collect();

    // start on a circle around the centroid with a root-bound radius
    let center = -coeffs[n - 1] / n as f64;
    let radius = (0..n)
        .map(|k| coeffs[k].abs().powf(1.0 / (n - k) as f64))
        .fold(1e-3, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::new(center, 0.0) + Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (val, der) = horner(&coeffs, z[k]);
            if val.norm() == 0.0 {
                continue;
            }
            let ratio = val / der;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            let step = if step.is_finite() { step } else { ratio };
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }

    enforce_conjugate_pairs(&mut z);
    let residuals: Vec<f64> = z
        .iter()
        .map(|&r| horner(&coeffs, r).0.norm() * lc.abs())
        .collect();
    let within = z
        .iter()
        .zip(&residuals)
        .all(|(r, res)| *res <= 1e-10 * abs_scale(&raw, r.norm()).max(f64::MIN_POSITIVE));
    Ok(RootSet {
        roots: z,
        residuals,
        converged: converged || within,
    })
}

/// Makes roots exact conjugates of each other when they pair within the
/// pairing tolerance; nearly real roots without a partner become real.
fn enforce_conjugate_pairs(z: &mut [Complex64]) {
    let n = z.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || z[i].im <= 0.0 {
            continue;
        }
        let target = z[i].conj();
        let partner = (0..n)
            .filter(|&j| j != i && !used[j] && z[j].im <= 0.0)
            .min_by(|&a, &b| (z[a] - target).norm().total_cmp(&(z[b] - target).norm()));
        if let Some(j) = partner {
            if (z[j] - target).norm() <= PAIR_TOL * (1.0 + z[i].norm()) {
                let re = 0.5 * (z[i].re + z[j].re);
                let im = 0.5 * (z[i].im - z[j].im);
                z[i] = Complex64::new(re, im);
                z[j] = Complex64::new(re, -im);
                used[i] = true;
                used[j] = true;
            }
        }
    }
    for (i, r) in z.iter_mut().enumerate() {
        if !used[i] && r.im.abs() <= PAIR_TOL * (1.0 + r.norm()) {
            r.im = 0.0;
        }
    }
}

/// Counts the spectral indices of a root set.
pub fn classify_roots(rs: &RootSet, axis_tol: f64) -> Result<OracleVerdict> {
    if !rs.converged {
        return Err(Error::NoConvergence {
            iterations: MAX_ITER,
        });
    }
    let (mut alpha, mut beta, mut gamma, mut delta) = (0usize, 0usize, 0usize, 0usize);
    let mut lower = 0usize;
    for r in &rs.roots {
        if r.re.abs() <= axis_tol {
            return Ok(OracleVerdict::MarginalAmbiguous);
        }
        if r.im.abs() <= axis_tol {
            if r.re > 0.0 {
                gamma += 1;
            } else {
                delta += 1;
            }
        } else if r.im > 0.0 {
            if r.re > 0.0 {
                alpha += 1;
            } else {
                beta += 1;
            }
        } else {
            lower += 1;
        }
    }
    if lower != alpha + beta {
        return Ok(OracleVerdict::MarginalAmbiguous);
    }
    Ok(OracleVerdict::Classified(SpectralType::new(
        alpha, beta, gamma, delta,
    )?))
}

/// Convenience: roots then classification with the default axis tolerance.
pub fn classify_poly<T: Coeff>(p: &Poly<T>) -> Result<OracleVerdict> {
    classify_roots(&roots(p)?, DEFAULT_AXIS_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn imaginary_pair() {
        let rs = roots(&Poly::new(vec![1.0, 0.0, 1.0])).unwrap();
        assert!(rs.converged);
        let got = sorted(rs.roots);
        let want = [Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)];
        assert!(close(&got, &want, 1e-12), "{got:?}");
    }

    #[test]
    fn planted_real_roots() {
        let p = Poly::<Rational>::from_roots(&[int(1), int(-1), int(2)]);
        let rs = roots(&p).unwrap();
        let got = sorted(rs.roots);
        let want: Vec<_> = [-1.0, 1.0, 2.0]
            .iter()
            .map(|&r| Complex64::new(r, 0.0))
            .collect();
        assert!(close(&got, &want, 1e-10), "{got:?}");
    }

    #[test]
    fn planted_mixed_roots() {
        // (λ² + 2λ + 5)(λ − 3)(λ + 5)
        let quad = Poly::new(vec![int(5), int(2), int(1)]);
        let p = &quad * &Poly::from_roots(&[int(3), int(-5)]);
        let rs = roots(&p).unwrap();
        let got = sorted(rs.roots);
        let want = [
            Complex64::new(-5.0, 0.0),
            Complex64::new(-1.0, -2.0),
            Complex64::new(-1.0, 2.0),
            Complex64::new(3.0, 0.0),
        ];
        assert!(close(&got, &want, 1e-10), "{got:?}");
    }

    #[test]
    fn classification_examples() {
        let real = |rs: &[f64]| RootSet {
            roots: rs.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
            residuals: vec![0.0; rs.len()],
            converged: true,
        };
        assert_eq!(
            classify_roots(&real(&[1.0, -1.0, 2.0]), DEFAULT_AXIS_TOL).unwrap(),
            OracleVerdict::Classified(SpectralType::new(0, 0, 2, 1).unwrap())
        );
        let focus = RootSet {
            roots: vec![Complex64::new(-1.0, 1.0), Complex64::new(-1.0, -1.0)],
            residuals: vec![0.0; 2],
            converged: true,
        };
        assert_eq!(
            classify_roots(&focus, DEFAULT_AXIS_TOL).unwrap(),
            OracleVerdict::Classified(SpectralType::new(0, 1, 0, 0).unwrap())
        );
        let near_axis = RootSet {
            roots: vec![
                Complex64::new(1e-10, 0.9999999999),
                Complex64::new(1e-10, -0.9999999999),
            ],
            residuals: vec![0.0; 2],
            converged: true,
        };
        assert_eq!(
            classify_roots(&near_axis, DEFAULT_AXIS_TOL).unwrap(),
            OracleVerdict::MarginalAmbiguous
        );
    }

    #[test]
    fn vieta_sum_and_product() {
        let p = Poly::new(vec![3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, -6.0, 1.0]);
        let rs = roots(&p).unwrap();
        assert!(rs.converged);
        let sum: Complex64 = rs.roots.iter().sum();
        let prod: Complex64 = rs.roots.iter().product();
        // monic degree 8: sum = −c7, product = c0
        assert!((sum.re - 6.0).abs() < 1e-8 * 6.0 && sum.im.abs() < 1e-8);
        assert!((prod.re - 3.0).abs() < 1e-8 * 3.0 && prod.im.abs() < 1e-8);
    }

    #[test]
    fn conjugates_are_exact_pairs() {
        let p = Poly::new(vec![7.0, -3.0, 2.0, 0.5, 1.0]);
        let rs = roots(&p).unwrap();
        for r in &rs.roots {
            if r.im != 0.0 {
                assert!(rs.roots.iter().any(|s| *s == r.conj()));
            }
        }
    }
}
