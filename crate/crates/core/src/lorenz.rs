//! The Lorenz system at the origin equilibrium, as a built-in demo.
//!
//! With `X = (a(y − x), bx − y − xz, xy − cz)` the linearisation at the
//! origin depends on `(a, b, c)` only. The locus functions factor as
//!
//! * `ζ = a (b − 1) c`,
//! * `ρ = (1 + a)(a − ab + c + ac + c²)` with `σ = a − ab + c + ac`,
//! * `disc = δ₁ δ₂²`, `δ₁ = (a − 1)² + 4ab`, `δ₂ = (c − 1)c − a(b + c − 1)`,
//!
//! all with global sign `+1` in the conventions of this crate, and `σ`
//! equal to the penultimate-remainder root itself, not just in sign.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::expr::ParametricMatrix;
use crate::indices::{spectral_type, SpectralType};
use crate::invariants::{principal_invariants, PrincipalInvariants};
use crate::loci::evaluate_loci;
use crate::scalar::{frac, int, Rational};
use crate::sweep::{detect_crossings, run_sweep, CrossingReport, SweepResult, SweepSpec};

pub const PARAMS: [&str; 3] = ["a", "b", "c"];

/// `JX_e` in the printed layout (the transpose of the Jacobian, which has
/// the same invariants).
pub fn lorenz_matrix() -> ParametricMatrix {
    ParametricMatrix::from_strs(
        &PARAMS,
        &[&["-a", "b", "0"], &["a", "-1", "0"], &["0", "0", "-c"]],
    )
    .expect("the Lorenz matrix is well formed")
}

fn bindings(a: &Rational, b: &Rational, c: &Rational) -> BTreeMap<String, Rational> {
    PARAMS
        .iter()
        .zip([a, b, c])
        .map(|(n, v)| (n.to_string(), v.clone()))
        .collect()
}

pub fn lorenz_invariants(a: &Rational, b: &Rational, c: &Rational) -> Result<PrincipalInvariants> {
    Ok(principal_invariants(
        &lorenz_matrix().instantiate(&bindings(a, b, c))?,
    ))
}

pub fn point_type(a: &Rational, b: &Rational, c: &Rational) -> Result<SpectralType> {
    spectral_type(&lorenz_invariants(a, b, c)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: usize,
    /// First failing point, if any.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LorenzIdentities {
    pub samples: usize,
    pub checks: Vec<IdentityCheck>,
}

impl LorenzIdentities {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.counterexample.is_none())
    }
}

fn random_rational(rng: &mut StdRng) -> Rational {
    frac(rng.gen_range(-30..=30), rng.gen_range(1..=6))
}

/// Checks the four factorisations at `samples` seeded random rational points.
pub fn check_identities(samples: usize, seed: u64) -> Result<LorenzIdentities> {
    let mut rng = StdRng::seed_from_u64(seed);
    let names = ["zeta", "rho", "sigma", "disc"];
    let mut checks: Vec<IdentityCheck> = names
        .iter()
        .map(|&name| IdentityCheck {
            name,
            passed: 0,
            counterexample: None,
        })
        .collect();
    for _ in 0..samples {
        let (a, b, c) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        let e = evaluate_loci(&lorenz_invariants(&a, &b, &c)?)?;
        let one = int(1);
        let d1 = (&a - &one) * (&a - &one) + int(4) * &a * &b;
        let d2 = (&c - &one) * &c - &a * (&b + &c - &one);
        let sigma = &a - &a * &b + &c + &a * &c;
        let results = [
            e.zeta == &a * (&b - &one) * &c,
            e.rho == (&one + &a) * (&sigma + &c * &c),
            e.sigma_root.as_ref() == Some(&sigma),
            e.disc == d1 * &d2 * &d2,
        ];
        for (check, ok) in checks.iter_mut().zip(results) {
            if ok {
                check.passed += 1;
            } else if check.counterexample.is_none() {
                check.counterexample = Some(format!("a = {a}, b = {b}, c = {c}"));
            }
        }
    }
    Ok(LorenzIdentities { samples, checks })
}

/// `a = 10`, `c = 8/3`, `b` from 0 to 2 in 21 steps: crosses `ζ = 0` at `b = 1`.
pub fn b_line_spec() -> SweepSpec {
    SweepSpec::new(vec![
        SweepSpec::fixed("a", int(10)),
        SweepSpec::range("b", int(0), int(2), 21),
        SweepSpec::fixed("c", frac(8, 3)),
    ])
}

/// The `c = 2` slice, `a` in `[1/4, 4]`, `b` in `[-1, 3]`, both in quarter steps.
pub fn c2_slice_spec() -> SweepSpec {
    SweepSpec::new(vec![
        SweepSpec::range("a", frac(1, 4), int(4), 16),
        SweepSpec::range("b", int(-1), int(3), 17),
        SweepSpec::fixed("c", int(2)),
    ])
}

#[derive(Clone, Debug)]
pub struct LorenzDemo {
    pub identities: LorenzIdentities,
    pub point: SpectralType,
    pub b_line: (SweepResult, CrossingReport),
    pub slice: (SweepResult, CrossingReport),
}

/// Identity checks, the classical parameter point and both sweeps. Fails
/// with the first counterexample if an identity does not hold.
pub fn lorenz_demo(samples: usize, seed: u64) -> Result<LorenzDemo> {
    let identities = check_identities(samples, seed)?;
    if let Some(bad) = identities
        .checks
        .iter()
        .find(|c| c.counterexample.is_some())
    {
        return Err(Error::IdentityFailed(format!(
            "{} at {}",
            bad.name,
            bad.counterexample.as_deref().unwrap_or("?")
        )));
    }
    let point = point_type(&int(10), &int(28), &frac(8, 3))?;
    let pm = lorenz_matrix();
    let line = run_sweep(&pm, &b_line_spec())?;
    let line_report = detect_crossings(&line);
    let slice = run_sweep(&pm, &c2_slice_spec())?;
    let slice_report = detect_crossings(&slice);
    Ok(LorenzDemo {
        identities,
        point,
        b_line: (line, line_report),
        slice: (slice, slice_report),
    })
}
