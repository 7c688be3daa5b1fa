//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Dense polynomial with coefficients in ascending degree order.
///
/// The zero polynomial is the empty coefficient list; every constructor
/// trims trailing zeros so the leading coefficient is always nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds from coefficients given highest degree first.
    pub fn from_descending(mut coeffs: Vec<T>) -> Self {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    pub fn monomial(c: T, degree: usize) -> Self {
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            &acc * &Poly::new(vec![-r.clone(), T::one()])
        })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// `p(x) -> p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Euclidean division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let lc = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = rem[idx].clone() - c.clone() * dc.clone();
            }
            // exact cancellation of the leading term
            rem[k] = T::zero();
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) * self mod d`, computed
    /// without divisions.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self> {
        let dd = d.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let Some(da) = self.degree() else {
            return Ok(Self::zero());
        };
        if da < dd {
            return Ok(self.clone());
        }
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        // one step per degree from da down to dd: r <- lc*r - r[top]*x^(top-dd)*d
        for top in (dd..=da).rev() {
            let lead = r[top].clone();
            for c in r.iter_mut() {
                *c = c.clone() * lc.clone();
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = top - dd + j;
                r[idx] = r[idx].clone() - lead.clone() * dc.clone();
            }
            r[top] = T::zero();
        }
        Ok(Self::new(r))
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Precondition("division is not exact".into()));
        }
        Ok(q)
    }

    /// Sign of `p(x)`.
    pub fn sign_at(&self, x: &T) -> i8 {
        self.eval(x).sign()
    }

    /// Sign of `p(x)` as `x -> +inf`.
    pub fn sign_at_pos_inf(&self) -> i8 {
        self.leading().map_or(0, |c| c.sign())
    }

    /// Sign of `p(x)` as `x -> -inf`.
    pub fn sign_at_neg_inf(&self) -> i8 {
        match (self.leading(), self.degree()) {
            (Some(c), Some(d)) => {
                if d % 2 == 0 {
                    c.sign()
                } else {
                    -c.sign()
                }
            }
            _ => 0,
        }
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        self.map(|c| c.to_f64_lossy())
    }

    /// Renders with the given variable name, highest degree first.
    pub fn display_with(&self, var: &str) -> String
    where
        T: fmt::Display,
    {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one();
            match k {
                0 => out.push_str(&mag.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&format!("{mag}*"));
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        -&self
    }
}
