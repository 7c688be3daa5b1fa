//! Principal invariants of a square matrix and the characteristic polynomial
//! built from them.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{int, rational_from_f64, Rational};

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix {
    m: usize,
    entries: Vec<Rational>,
}

impl SquareMatrix {
    pub fn new(m: usize, entries: Vec<Rational>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Dimension("matrix must be at least 1x1".into()));
        }
        if entries.len() != m * m {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {m}x{m} matrix, got {}",
                m * m,
                entries.len()
            )));
        }
        Ok(SquareMatrix { m, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("matrix is not square".into()));
        }
        Self::new(m, rows.into_iter().flatten().collect())
    }

    pub fn identity(m: usize) -> Self {
        let mut entries = vec![Rational::zero(); m * m];
        for i in 0..m {
            entries[i * m + i] = Rational::one();
        }
        SquareMatrix { m, entries }
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let m = a.m + b.m;
        let mut entries = vec![Rational::zero(); m * m];
        for i in 0..a.m {
            for j in 0..a.m {
                entries[i * m + j] = a.get(i, j).clone();
            }
        }
        for i in 0..b.m {
            for j in 0..b.m {
                entries[(a.m + i) * m + a.m + j] = b.get(i, j).clone();
            }
        }
        SquareMatrix { m, entries }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.m + j]
    }

    pub fn trace(&self) -> Rational {
        (0..self.m).map(|i| self.get(i, i).clone()).sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let m = self.m;
        let mut entries = vec![Rational::zero(); m * m];
        for i in 0..m {
            for k in 0..m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    entries[i * m + j] += a * other.get(k, j);
                }
            }
        }
        SquareMatrix { m, entries }
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|j| self.get(i, j).to_f64().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    }
}

/// The invariants `(d_1, ..., d_m)`; `d_0 = 1` implicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrincipalInvariants {
    d: Vec<Rational>,
}

impl PrincipalInvariants {
    pub fn new(d: Vec<Rational>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::Dimension("need at least one invariant".into()));
        }
        Ok(PrincipalInvariants { d })
    }

    pub fn from_ints(d: &[i64]) -> Self {
        PrincipalInvariants {
            d: d.iter().map(|&v| int(v)).collect(),
        }
    }

    /// Exact rational images of double-precision values.
    pub fn from_f64(d: &[f64]) -> Result<Self> {
        Self::new(
            d.iter()
                .map(|&v| rational_from_f64(v))
                .collect::<Result<_>>()?,
        )
    }

    /// Reads the invariants off a polynomial with the same roots as the
    /// characteristic polynomial (any nonzero leading coefficient).
    pub fn from_poly(p: &Poly<Rational>) -> Result<Self> {
        let m = p.degree().ok_or(Error::ZeroPolynomial)?;
        if m == 0 {
            return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
        }
        let monic = p.monic();
        let d = (1..=m)
            .map(|k| {
                let c = monic.coeff(m - k);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        Ok(PrincipalInvariants { d })
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.d
    }

    /// `d_k` with `d_0 = 1` and `d_k = 0` outside `0..=m`.
    pub fn get(&self, k: isize) -> Rational {
        match k {
            0 => Rational::one(),
            k if k < 0 || k as usize > self.d.len() => Rational::zero(),
            k => self.d[k as usize - 1].clone(),
        }
    }

    pub fn determinant(&self) -> &Rational {
        self.d.last().expect("nonempty")
    }

    /// Magnitude scale `max_j |d_j|^(1/j)`, a bound-like size of the roots.
    pub fn root_scale(&self) -> f64 {
        self.d
            .iter()
            .enumerate()
            .map(|(j, v)| {
                v.abs()
                    .to_f64()
                    .unwrap_or(f64::INFINITY)
                    .powf(1.0 / (j + 1) as f64)
            })
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.d
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

/// Faddeev–LeVerrier recurrence in exact arithmetic.
pub fn principal_invariants(a: &SquareMatrix) -> PrincipalInvariants {
    let m = a.dim();
    // det(λI − A) = Σ c_k λ^k, c_m = 1
    let mut c = vec![Rational::zero(); m + 1];
    c[m] = Rational::one();
    let mut mk = SquareMatrix {
        m,
        entries: vec![Rational::zero(); m * m],
    };
    for k in 1..=m {
        let mut next = a.mul(&mk);
        for i in 0..m {
            next.entries[i * m + i] += &c[m - k + 1];
        }
        mk = next;
        let am = a.mul(&mk);
        c[m - k] = -am.trace() / int(k as i64);
    }
    let d = (1..=m)
        .map(|k| {
            if k % 2 == 1 {
                -c[m - k].clone()
            } else {
                c[m - k].clone()
            }
        })
        .collect();
    PrincipalInvariants { d }
}

/// `λ^m − d_1 λ^(m−1) + d_2 λ^(m−2) − … + (−1)^m d_m`, the monic form of the
/// characteristic polynomial (it differs from `det(A − λI)` by `(−1)^m`).
pub fn char_poly(inv: &PrincipalInvariants) -> Poly<Rational> {
    let m = inv.dim();
    let coeffs = (0..=m)
        .map(|power| {
            let k = m - power;
            let dk = inv.get(k as isize);
            if k % 2 == 1 {
                -dk
            } else {
                dk
            }
        })
        .collect();
    Poly::new(coeffs)
}

/// Invariants rescaled by `k = |d_m|^(1/m)`, leaving `(b_1, …, b_{m−1}, ±1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedInvariants {
    pub sign_dm: i8,
    pub b: Vec<f64>,
}

impl ReducedInvariants {
    pub fn dim(&self) -> usize {
        self.b.len() + 1
    }

    /// The point `(b_1, …, b_{m−1}, sign)` of invariant space.
    pub fn to_invariants(&self) -> Result<PrincipalInvariants> {
        let mut d = self.b.clone();
        d.push(self.sign_dm as f64);
        PrincipalInvariants::from_f64(&d)
    }
}

pub fn reduce_rescale(inv: &PrincipalInvariants) -> Result<ReducedInvariants> {
    let m = inv.dim();
    let dm = inv.determinant();
    if dm.is_zero() {
        return Err(Error::Marginal(crate::error::Locus::Determinant));
    }
    let k = dm.abs().to_f64().unwrap_or(f64::NAN).powf(1.0 / m as f64);
    let b = inv.values()[..m - 1]
        .iter()
        .enumerate()
        .map(|(j, v)| v.to_f64().unwrap_or(f64::NAN) / k.powi(j as i32 + 1))
        .collect();
    Ok(ReducedInvariants {
        sign_dm: if dm.is_positive() { 1 } else { -1 },
        b,
    })
}

/// The invariants of `−A`: odd-indexed `d_j` change sign.
pub fn z2_mirror(inv: &PrincipalInvariants) -> PrincipalInvariants {
    PrincipalInvariants {
        d: inv
            .d
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { -v.clone() } else { v.clone() })
            .collect(),
    }
}
