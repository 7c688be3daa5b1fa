//! Remainder sequences and the quantities derived from them: Sturm chains,
//! resultants, discriminants, penultimate remainders, gcds and square-free
//! decompositions.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Coeff;

/// Signed remainder sequence `f0 = a, f1 = b, f_{j} = -rem(f_{j-2}, f_{j-1})`,
/// stopping before the first zero remainder.
pub fn signed_remainder_sequence<T: Coeff>(a: &Poly<T>, b: &Poly<T>) -> Vec<Poly<T>> {
    let mut seq = Vec::new();
    if a.is_zero() {
        return seq;
    }
    seq.push(a.clone());
    if b.is_zero() {
        return seq;
    }
    seq.push(b.clone());
    loop {
        let n = seq.len();
        let r = seq[n - 2]
            .rem(&seq[n - 1])
            .expect("divisor is nonzero by construction");
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

/// Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_chain<T: Coeff>(p: &Poly<T>) -> Vec<Poly<T>> {
    signed_remainder_sequence(p, &p.derivative())
}

/// Number of sign changes in a sequence, zeros skipped.
pub fn sign_variations(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

pub fn variations_at<T: Coeff>(chain: &[Poly<T>], x: &T) -> usize {
    sign_variations(chain.iter().map(|p| p.sign_at(x)))
}

pub fn variations_at_pos_inf<T: Coeff>(chain: &[Poly<T>]) -> usize {
    sign_variations(chain.iter().map(|p| p.sign_at_pos_inf()))
}

pub fn variations_at_neg_inf<T: Coeff>(chain: &[Poly<T>]) -> usize {
    sign_variations(chain.iter().map(|p| p.sign_at_neg_inf()))
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots<T: Coeff>(p: &Poly<T>) -> usize {
    if p.is_constant() {
        return 0;
    }
    let chain = sturm_chain(p);
    variations_at_neg_inf(&chain) - variations_at_pos_inf(&chain)
}

/// Number of distinct roots of `p` in `(0, +inf)`.
pub fn count_positive_roots<T: Coeff>(p: &Poly<T>) -> usize {
    if p.is_constant() {
        return 0;
    }
    let p = strip_zero_roots(p);
    let chain = sturm_chain(&p);
    variations_at(&chain, &T::zero()) - variations_at_pos_inf(&chain)
}

/// Divides out every factor `x` of `p`.
pub fn strip_zero_roots<T: Coeff>(p: &Poly<T>) -> Poly<T> {
    let lead_zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    Poly::new(p.coeffs()[lead_zeros..].to_vec())
}

/// Cauchy index of `num/den` over the whole real line, computed from the
/// signed remainder sequence of `(den, num)`.
pub fn cauchy_index<T: Coeff>(num: &Poly<T>, den: &Poly<T>) -> Result<i64> {
    if den.is_zero() {
        return Err(Error::DivisionByZeroPolynomial);
    }
    let seq = signed_remainder_sequence(den, num);
    Ok(variations_at_neg_inf(&seq) as i64 - variations_at_pos_inf(&seq) as i64)
}

/// Resultant in the Sylvester-determinant convention, computed by the
/// subresultant pseudo-remainder sequence.
pub fn resultant<T: Coeff>(a: &Poly<T>, b: &Poly<T>) -> Result<T> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = T::one();
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if (da * db) % 2 == 1 {
            s = -s;
        }
    }
    let mut deg_a = a.degree().unwrap();
    let mut deg_b = b.degree().unwrap();
    if deg_b == 0 {
        return Ok(s * pow(b.leading().unwrap(), deg_a));
    }
    let mut g = T::one();
    let mut h = T::one();
    loop {
        let delta = deg_a - deg_b;
        if deg_a % 2 == 1 && deg_b % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b)?;
        a = b;
        let Some(deg_r) = r.degree() else {
            return Ok(T::zero());
        };
        let divisor = g.clone() * pow(&h, delta);
        b = r.scale(&(T::one() / divisor));
        g = a.leading().unwrap().clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            pow(&g, delta) / pow(&h, delta - 1)
        };
        deg_a = a.degree().unwrap();
        deg_b = deg_r;
        if deg_b == 0 {
            let lb = b.leading().unwrap();
            return Ok(s * pow(lb, deg_a) / pow(&h, deg_a - 1));
        }
    }
}

fn pow<T: Coeff>(x: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * x.clone())
}

/// Discriminant `(-1)^(m(m-1)/2) res(p, p') / lc(p)`.
pub fn discriminant<T: Coeff>(p: &Poly<T>) -> Result<T> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    if m < 2 {
        return Err(Error::DegreeTooSmall { degree: m, min: 2 });
    }
    let r = resultant(p, &p.derivative())?;
    let r = if (m * (m - 1) / 2) % 2 == 1 { -r } else { r };
    Ok(r / p.leading().unwrap().clone())
}

/// Next-to-last element of the pseudo-remainder sequence of `(a, b)`.
///
/// The sequence `a, b, prem(a, b), ...` is continued until an element of
/// degree zero (or the zero polynomial) appears; the element before it is
/// returned. The result is only meaningful when the degrees after `b` drop
/// by exactly one each step and the returned element is linear; anything
/// else is reported as [`Error::DegenerateSequence`].
///
/// Pseudo-remainders keep the coefficients polynomial in the inputs, so
/// the product of the two coefficients of the result is a sign certificate
/// for its root.
pub fn penultimate_remainder<T: Coeff>(a: &Poly<T>, b: &Poly<T>) -> Result<Poly<T>> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::ZeroPolynomial);
    };
    if da < db {
        return Err(Error::Precondition(
            "penultimate remainder needs deg(a) >= deg(b)".into(),
        ));
    }
    let mut seq = vec![a.clone(), b.clone()];
    while seq.last().unwrap().degree().is_some_and(|d| d > 0) {
        let n = seq.len();
        let r = seq[n - 2].pseudo_rem(&seq[n - 1])?;
        seq.push(r);
    }
    let degrees: Vec<usize> = seq.iter().map(|p| p.degree().unwrap_or(0)).collect();
    let pen = seq.len() - 2;
    let drops_ok = (1..pen).all(|i| degrees[i + 1] + 1 == degrees[i]);
    if degrees[pen] != 1 || !drops_ok {
        return Err(Error::DegenerateSequence { degrees });
    }
    Ok(seq.swap_remove(pen))
}

/// Root `-c0/c1` of a linear polynomial together with the sign certificate
/// `-c0*c1` (same sign as the root, polynomial in the coefficients).
pub fn linear_root<T: Coeff>(p: &Poly<T>) -> Option<(T, T)> {
    if p.degree() != Some(1) {
        return None;
    }
    let c0 = p.coeff(0);
    let c1 = p.coeff(1);
    Some((-c0.clone() / c1.clone(), -c0 * c1))
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<T: Coeff>(a: &Poly<T>, b: &Poly<T>) -> Poly<T> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    x.monic()
}

/// `(gcd(p, p'), p / gcd(p, p'))` with the gcd monic.
pub fn gcd_squarefree<T: Coeff>(p: &Poly<T>) -> Result<(Poly<T>, Poly<T>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = gcd(p, &p.derivative());
    let g = if g.is_zero() { Poly::one() } else { g };
    let sqf = p.exact_div(&g)?;
    Ok((g, sqf))
}

/// Yun's square-free decomposition: monic factors `f_k` with multiplicity
/// `k`, pairwise coprime and square-free, such that `p = lc(p) * prod f_k^k`.
/// Trivial factors are omitted.
pub fn squarefree_decomposition<T: Coeff>(p: &Poly<T>) -> Result<Vec<(Poly<T>, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.monic();
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = gcd(&p, &dp);
    let mut b = p.exact_div(&a0)?;
    let mut c = dp.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut k = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        let a = if a.is_zero() { Poly::one() } else { a };
        if !a.is_constant() {
            out.push((a.clone(), k));
        }
        b = b.exact_div(&a)?;
        c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        k += 1;
    }
    Ok(out)
}
