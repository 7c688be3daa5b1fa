//! Coefficient types.
//!
//! Two arithmetic modes exist: exact rationals ([`Rational`]) and `f64`.
//! Both implement [`Coeff`]; a polynomial fixes its mode through its type
//! parameter, so mixing modes inside one operation is rejected at compile
//! time.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Arithmetic mode selected by the user at the boundary (CLI, sweeps).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Precondition(format!("unknown mode `{other}`"))),
        }
    }
}

/// Field of polynomial coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Num + Signed + ToPrimitive + Send + Sync {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self;

    /// Sign as -1, 0 or 1.
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
}

impl Coeff for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl Coeff for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_f64(x).ok_or_else(|| Error::Precondition(format!("{x} is not finite")))
}

/// `base^exp` for a possibly negative integer exponent.
pub fn pow_i(base: &Rational, exp: i64) -> Result<Rational> {
    if exp < 0 && base.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut acc = Rational::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    Ok(acc)
}

/// Parses `"7"`, `"-3/4"`, `"0.125"` or `"-2.5"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Syntax {
        pos: 0,
        msg: format!("`{s}` is not a rational number"),
    };
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10u32), fp.len());
    let v = Rational::new(num, den);
    Ok(if neg { -v } else { v })
}

/// Renders a rational as a terminating decimal when possible.
pub fn decimal_string(v: &Rational) -> Option<String> {
    let mut den = v.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while den.is_multiple_of(&two) {
        den /= &two;
        twos += 1;
    }
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = v * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let n = scaled.to_integer();
    if places == 0 {
        return Some(n.to_string());
    }
    let neg = n.is_negative();
    let mut digits = n.abs().to_string();
    while digits.len() <= places {
        digits.insert(0, '0');
    }
    let split = digits.len() - places;
    Some(format!(
        "{}{}.{}",
        if neg { "-" } else { "" },
        &digits[..split],
        &digits[split..]
    ))
}
