//! Spectral indices from the characteristic polynomial.
//!
//! `γ` and `δ` (positive and negative real eigenvalues) come from Sturm
//! sign-variation counts. The numbers of roots in each open half-plane come
//! from the winding of `s ↦ p(is)`, evaluated exactly as a Cauchy index on
//! a signed remainder sequence; the focus counts `α`, `β` follow.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Locus, Result};
use crate::invariants::{char_poly, PrincipalInvariants};
use crate::poly::Poly;
use crate::remainder::{
    cauchy_index, count_real_roots, gcd, squarefree_decomposition, strip_zero_roots, sturm_chain,
    variations_at, variations_at_neg_inf, variations_at_pos_inf,
};
use crate::scalar::Rational;

/// `f^α_β n^γ_δ`: unstable foci, stable foci, unstable nodes, stable nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectralType {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub delta: usize,
}

impl SpectralType {
    pub fn new(alpha: usize, beta: usize, gamma: usize, delta: usize) -> Result<Self> {
        if alpha + beta + gamma + delta == 0 {
            return Err(Error::Precondition("empty spectral type".into()));
        }
        Ok(SpectralType {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    /// `2α + 2β + γ + δ`.
    pub fn dim(&self) -> usize {
        2 * self.alpha + 2 * self.beta + self.gamma + self.delta
    }

    /// Type of the reversed field `−X`.
    pub fn swapped(&self) -> Self {
        SpectralType {
            alpha: self.beta,
            beta: self.alpha,
            gamma: self.delta,
            delta: self.gamma,
        }
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    /// Componentwise difference `other − self`.
    pub fn delta_to(&self, other: &Self) -> [i64; 4] {
        let a = self.as_array();
        let b = other.as_array();
        [0, 1, 2, 3].map(|i| b[i] as i64 - a[i] as i64)
    }
}

impl fmt::Display for SpectralType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_type(self))
    }
}

/// `"f^{α}_{β} n^{γ}_{δ}"` with zero indices and empty factors left out.
pub fn format_type(t: &SpectralType) -> String {
    fn factor(letter: char, up: usize, down: usize) -> Option<String> {
        if up == 0 && down == 0 {
            return None;
        }
        let mut s = letter.to_string();
        if up > 0 {
            s.push_str(&format!("^{up}"));
        }
        if down > 0 {
            s.push_str(&format!("_{down}"));
        }
        Some(s)
    }
    [factor('f', t.alpha, t.beta), factor('n', t.gamma, t.delta)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(" ")
}

/// Parses the output of [`format_type`].
pub fn parse_type(s: &str) -> Result<SpectralType> {
    let bad = || Error::Syntax {
        pos: 0,
        msg: format!("`{s}` is not a spectral type symbol"),
    };
    let mut idx = [0usize; 4];
    for part in s.split_whitespace() {
        let (base, rest) = part.split_at(1);
        let offset = match base {
            "f" => 0,
            "n" => 2,
            _ => return Err(bad()),
        };
        let mut rest = rest;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r.find('_').unwrap_or(r.len());
            idx[offset] = r[..end].parse().map_err(|_| bad())?;
            rest = &r[end..];
        }
        if let Some(r) = rest.strip_prefix('_') {
            idx[offset + 1] = r.parse().map_err(|_| bad())?;
            rest = "";
        }
        if !rest.is_empty() {
            return Err(bad());
        }
    }
    SpectralType::new(idx[0], idx[1], idx[2], idx[3])
}

/// Winding number of `s ↦ p(is)`, stored doubled so odd degrees stay integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Winding {
    pub twice_wind: i64,
}

impl Winding {
    pub fn value(&self) -> f64 {
        self.twice_wind as f64 / 2.0
    }
}

/// Positive and negative real root counts of a square-free `p` with `p(0) ≠ 0`.
pub fn sturm_counts(p: &Poly<Rational>) -> Result<(usize, usize)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.eval(&Rational::zero()).is_zero() {
        return Err(Error::Precondition(
            "Sturm counts need p(0) != 0; strip zero roots first".into(),
        ));
    }
    let chain = sturm_chain(p);
    let at_zero = variations_at(&chain, &Rational::zero());
    let gamma = at_zero
        .checked_sub(variations_at_pos_inf(&chain))
        .ok_or_else(|| Error::Internal("negative positive-root count".into()))?;
    let delta = variations_at_neg_inf(&chain)
        .checked_sub(at_zero)
        .ok_or_else(|| Error::Internal("negative negative-root count".into()))?;
    Ok((gamma, delta))
}

/// Real-axis and imaginary-axis parts: `p(is) = P(s) + i Q(s)`.
pub fn imaginary_axis_parts(p: &Poly<Rational>) -> (Poly<Rational>, Poly<Rational>) {
    let n = p.coeffs().len();
    let mut re = vec![Rational::zero(); n];
    let mut im = vec![Rational::zero(); n];
    for (k, c) in p.coeffs().iter().enumerate() {
        // i^k cycles 1, i, -1, -i
        match k % 4 {
            0 => re[k] = c.clone(),
            1 => im[k] = c.clone(),
            2 => re[k] = -c.clone(),
            _ => im[k] = -c.clone(),
        }
    }
    (Poly::new(re), Poly::new(im))
}

/// Exact winding of `s ↦ p(is)` as `s` runs from `−∞` to `+∞`.
///
/// Equals half of (#roots with negative real part − #roots with positive
/// real part), counted with multiplicity.
pub fn winding(p: &Poly<Rational>) -> Result<Winding> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 {
        return Ok(Winding { twice_wind: 0 });
    }
    let (re, im) = imaginary_axis_parts(p);
    let common = gcd(&re, &im);
    if !common.is_constant() && count_real_roots(&common) > 0 {
        return Err(Error::ImaginaryAxisRoot);
    }
    if p.coeff(0).is_zero() {
        return Err(Error::ImaginaryAxisRoot);
    }
    // Δarg/π = −Ind(Q/P) when deg P > deg Q, and Ind(P/Q) otherwise
    let twice_wind = if m % 2 == 0 {
        -cauchy_index(&im, &re)?
    } else {
        cauchy_index(&re, &im)?
    };
    Ok(Winding { twice_wind })
}

/// Root counts with multiplicity: (positive real, negative real, zero).
pub fn real_root_counts(p: &Poly<Rational>) -> Result<(usize, usize, usize)> {
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for (factor, mult) in squarefree_decomposition(p)? {
        let stripped = strip_zero_roots(&factor);
        if stripped.degree() != factor.degree() {
            zero += mult;
        }
        if stripped.is_constant() {
            continue;
        }
        let (g, d) = sturm_counts(&stripped)?;
        pos += mult * g;
        neg += mult * d;
    }
    Ok((pos, neg, zero))
}

/// Spectral type of a hyperbolic point of invariant space.
///
/// Repeated eigenvalues (points on the discriminant locus or its thread) are
/// counted with multiplicity; points with an eigenvalue on the imaginary
/// axis are refused with [`Error::Marginal`].
pub fn spectral_type(inv: &PrincipalInvariants) -> Result<SpectralType> {
    if inv.determinant().is_zero() {
        return Err(Error::Marginal(Locus::Determinant));
    }
    let p = char_poly(inv);
    spectral_type_of_poly(&p)
}

pub fn spectral_type_of_poly(p: &Poly<Rational>) -> Result<SpectralType> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    if p.coeff(0).is_zero() {
        return Err(Error::Marginal(Locus::Determinant));
    }
    let wind = match winding(p) {
        Ok(w) => w,
        Err(Error::ImaginaryAxisRoot) => return Err(Error::Marginal(Locus::Resultant)),
        Err(e) => return Err(e),
    };
    let (gamma, delta, _) = real_root_counts(p)?;
    // roots in the right half-plane: m/2 − wind
    let right2 = m as i64 - wind.twice_wind;
    let left2 = m as i64 + wind.twice_wind;
    if right2 % 2 != 0 || right2 < 0 || left2 < 0 {
        return Err(Error::Internal(format!(
            "winding {} has the wrong parity for degree {m}",
            wind.value()
        )));
    }
    let alpha2 = right2 / 2 - gamma as i64;
    let beta2 = left2 / 2 - delta as i64;
    if alpha2 < 0 || beta2 < 0 || alpha2 % 2 != 0 || beta2 % 2 != 0 {
        return Err(Error::Internal(format!(
            "inconsistent counts: wind = {}, γ = {gamma}, δ = {delta}",
            wind.value()
        )));
    }
    let t = SpectralType::new((alpha2 / 2) as usize, (beta2 / 2) as usize, gamma, delta)?;
    debug_assert_eq!(t.dim(), m);
    Ok(t)
}

/// Whether the characteristic polynomial has a repeated root.
pub fn has_repeated_roots(inv: &PrincipalInvariants) -> bool {
    let p = char_poly(inv);
    !gcd(&p, &p.derivative()).is_constant()
}
