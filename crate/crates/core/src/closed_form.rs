//! The printed closed forms of the locus polynomials for `3 <= m <= 6`.
//!
//! These are kept verbatim as expressions in `d1..d6` and serve only to
//! cross-check the algorithmic path in [`crate::loci`].

use std::collections::BTreeMap;

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::expr::{parse_free, Expr};
use crate::invariants::PrincipalInvariants;
use crate::scalar::Rational;

/// Values of the closed forms at a point; `None` where no form is printed
/// (or, for `τ`, where its denominator vanishes).
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForms {
    pub delta: Option<Rational>,
    pub rho: Rational,
    pub sigma_cert: Rational,
    pub tau: Option<Rational>,
}

struct Forms {
    delta: Option<&'static str>,
    rho: &'static str,
    sigma: &'static str,
    tau: Option<&'static str>,
}

const FORMS: [Forms; 4] = [
    Forms {
        delta: Some("-4*d3*d1^3 + d2^2*d1^2 + 18*d2*d3*d1 - 4*d2^3 - 27*d3^2"),
        rho: "d3 - d1*d2",
        sigma: "d2",
        tau: Some("(d1*d2 - 9*d3)/(2*(d1^2 - 3*d2))"),
    },
    Forms {
        delta: Some(concat!(
            "-27*d4^2*d1^4 - 4*d3^3*d1^3 + 18*d2*d3*d4*d1^3 + d2^2*d3^2*d1^2 ",
            "+ 144*d2*d4^2*d1^2 - 4*d2^3*d4*d1^2 - 6*d3^2*d4*d1^2 + 18*d2*d3^3*d1 ",
            "- 192*d3*d4^2*d1 - 80*d2^2*d3*d4*d1 - 27*d3^4 + 256*d4^3 - 4*d2^3*d3^2 ",
            "- 128*d2^2*d4^2 + 16*d2^4*d4 + 144*d2*d3^2*d4",
        )),
        rho: "d4*d1^2 - d2*d3*d1 + d3^2",
        sigma: "d1*d3",
        tau: None,
    },
    Forms {
        delta: Some(concat!(
            "256*d5^3*d1^5 - 27*d4^4*d1^4 - 128*d3^2*d5^2*d1^4 - 192*d2*d4*d5^2*d1^4 ",
            "+ 144*d3*d4^2*d5*d1^4 + 18*d2*d3*d4^3*d1^3 - 1600*d2*d5^3*d1^3 ",
            "- 4*d3^3*d4^2*d1^3 + 144*d2^2*d3*d5^2*d1^3 + 160*d3*d4*d5^2*d1^3 ",
            "+ 16*d3^4*d5*d1^3 - 36*d4^3*d5*d1^3 - 6*d2^2*d4^2*d5*d1^3 ",
            "- 80*d2*d3^2*d4*d5*d1^3 + 144*d2*d4^4*d1^2 - 4*d2^3*d4^3*d1^2 - 6*d3^2*d4^3*d1^2 ",
            "+ 2000*d3*d5^3*d1^2 + d2^2*d3^2*d4^2*d1^2 - 27*d2^4*d5^2*d1^2 ",
            "+ 560*d2*d3^2*d5^2*d1^2 - 50*d4^2*d5^2*d1^2 + 1020*d2^2*d4*d5^2*d1^2 ",
            "- 4*d2^2*d3^3*d5*d1^2 - 746*d2*d3*d4^2*d5*d1^2 + 24*d3^3*d4*d5*d1^2 ",
            "+ 18*d2^3*d3*d4*d5*d1^2 - 192*d3*d4^4*d1 - 80*d2^2*d3*d4^3*d1 ",
            "+ 2250*d2^2*d5^3*d1 - 2500*d4*d5^3*d1 + 18*d2*d3^3*d4^2*d1 - 900*d3^3*d5^2*d1 ",
            "- 630*d2^3*d3*d5^2*d1 - 2050*d2*d3*d4*d5^2*d1 - 72*d2*d3^4*d5*d1 ",
            "+ 160*d2*d4^3*d5*d1 + 24*d2^3*d4^2*d5*d1 + 1020*d3^2*d4^2*d5*d1 ",
            "+ 356*d2^2*d3^2*d4*d5*d1 + 256*d4^5 - 128*d2^2*d4^4 + 3125*d5^4 + 16*d2^4*d4^3 ",
            "+ 144*d2*d3^2*d4^3 - 3750*d2*d3*d5^3 - 27*d3^4*d4^2 - 4*d2^3*d3^2*d4^2 ",
            "+ 108*d2^5*d5^2 + 825*d2^2*d3^2*d5^2 + 2000*d2*d4^2*d5^2 - 900*d2^3*d4*d5^2 ",
            "+ 2250*d3^2*d4*d5^2 + 108*d3^5*d5 + 16*d2^3*d3^3*d5 - 1600*d3*d4^3*d5 ",
            "+ 560*d2^2*d3*d4^2*d5 - 630*d2*d3^3*d4*d5 - 72*d2^4*d3*d4*d5",
        )),
        rho: "d1*d5*d2^2 - d1*d3*d4*d2 - d3*d5*d2 + d1^2*d4^2 + d5^2 + d3^2*d4 - 2*d1*d4*d5",
        sigma: "d2*d4*d1^2 - d3*d4*d1 - d2*d5*d1 + d3*d5",
        tau: None,
    },
    Forms {
        delta: None,
        rho: concat!(
            "-d6^2*d1^3 - d4^2*d5*d1^2 + d3*d4*d6*d1^2 + 2*d2*d5*d6*d1^2 - d2^2*d5^2*d1 ",
            "+ 2*d4*d5^2*d1 + d2*d3*d4*d5*d1 - d2*d3^2*d6*d1 - 3*d3*d5*d6*d1 - d5^3 ",
            "+ d2*d3*d5^2 - d3^2*d4*d5 + d3^3*d6",
        ),
        sigma: "(d4*d1^2 - d1*d2*d3 - d1*d5 + d3^2)*(d6*d1^2 - d2*d5*d1 + d3*d5)",
        tau: None,
    },
];

struct Parsed {
    delta: Option<Expr>,
    rho: Expr,
    sigma: Expr,
    tau: Option<Expr>,
}

static PARSED: Lazy<Vec<Parsed>> = Lazy::new(|| {
    let p = |s: &str| parse_free(s).expect("closed forms are well formed");
    FORMS
        .iter()
        .map(|f| Parsed {
            delta: f.delta.map(p),
            rho: p(f.rho),
            sigma: p(f.sigma),
            tau: f.tau.map(p),
        })
        .collect()
});

/// Global sign `s` with `res(q^r, q^i) = s * ρ_printed`.
///
/// The printed `q^i` for even `m` is the negative of the summation formula
/// used by [`crate::loci::qr_qi`], which flips the resultant by
/// `(-1)^(m/2)`.
pub fn rho_sign(m: usize) -> i8 {
    if m.is_multiple_of(2) && (m / 2) % 2 == 1 {
        -1
    } else {
        1
    }
}

pub fn closed_form_oracles(inv: &PrincipalInvariants) -> Result<ClosedForms> {
    let m = inv.dim();
    if !(3..=6).contains(&m) {
        return Err(Error::Dimension(format!(
            "closed forms exist for 3 <= m <= 6, got m = {m}"
        )));
    }
    let bindings: BTreeMap<String, Rational> = inv
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| (format!("d{}", k + 1), v.clone()))
        .collect();
    let f = &PARSED[m - 3];
    let delta = f
        .delta
        .as_ref()
        .map(|e| e.evaluate(&bindings))
        .transpose()?;
    let tau = match &f.tau {
        Some(e) => match e.evaluate(&bindings) {
            Ok(v) => Some(v),
            Err(Error::DivisionByZero) => None,
            Err(e) => return Err(e),
        },
        None => None,
    };
    Ok(ClosedForms {
        delta,
        rho: f.rho.evaluate(&bindings)?,
        sigma_cert: f.sigma.evaluate(&bindings)?,
        tau,
    })
}
