//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Reference values come from oracles that live here and share no code path
//! with the classifier: characteristic polynomials by exact determinant
//! interpolation, planted root multisets, numeric eigenvalue counting and
//! literal closed-form strings.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use spectype::closed_form::{closed_form_oracles, rho_sign};
use spectype::indices::spectral_type_of_poly;
use spectype::loci::LocusFn;
use spectype::lorenz::{self, b_line_spec, c2_slice_spec, check_identities, lorenz_matrix};
use spectype::oracle::{self, DEFAULT_AXIS_TOL};
use spectype::quadrature::winding_quadrature;
use spectype::remainder::discriminant;
use spectype::scalar::{frac, int};
use spectype::sweep::{TransitionCheck, Verdict};
use spectype::{
    char_poly, check_transitions, detect_crossings, evaluate_loci, parse_free,
    principal_invariants, reduce_rescale, run_sweep, spectral_type, winding, z2_mirror,
    CrossingKind, CrossingReport, DSplit, OracleVerdict, ParametricMatrix, Poly,
    PrincipalInvariants, Rational, SpectralType, SquareMatrix, SweepResult, SweepSpec,
};

const AXIS_GAP: f64 = 1e-6;
const QUAD_TOL: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

/// Empty, or the first failure for the detail line.
fn first_failure(fails: &[String]) -> String {
    fails
        .first()
        .map(|f| format!(", first: {f}"))
        .unwrap_or_default()
}

fn within(limit_s: u64, elapsed: Duration, o: Outcome) -> Outcome {
    if elapsed > Duration::from_secs(limit_s) {
        Outcome::new(
            false,
            format!("{} but took {elapsed:.2?} (limit {limit_s} s)", o.detail),
        )
    } else {
        o
    }
}

// ---------------------------------------------------------------- oracles

fn rq(rng: &mut StdRng, num: i64, den: i64) -> Rational {
    frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn nonzero_rq(rng: &mut StdRng, num: i64, den: i64) -> Rational {
    loop {
        let v = rq(rng, num, den);
        if !v.is_zero() {
            return v;
        }
    }
}

fn random_invariants(rng: &mut StdRng, m: usize) -> PrincipalInvariants {
    PrincipalInvariants::new((0..m).map(|_| rq(rng, 20, 9)).collect()).unwrap()
}

/// Entries `p/q` in `[-10, 10]` with `q <= 4`.
fn random_matrix(rng: &mut StdRng, m: usize) -> Vec<Vec<Rational>> {
    (0..m)
        .map(|_| {
            (0..m)
                .map(|_| {
                    let q = rng.gen_range(1..=4);
                    frac(rng.gen_range(-10 * q..=10 * q), q)
                })
                .collect()
        })
        .collect()
}

/// Exact determinant by fraction-exact Gaussian elimination.
fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return int(0);
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            let f = &a[r][c] / &piv;
            if f.is_zero() {
                continue;
            }
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

/// `det(x I − A)` sampled at `x = 0..=m` and interpolated in Newton form.
fn char_poly_by_interpolation(a: &[Vec<Rational>]) -> Poly<Rational> {
    let m = a.len();
    let xs: Vec<Rational> = (0..=m as i64).map(int).collect();
    let mut c: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let shifted = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            let id = if i == j { x.clone() } else { int(0) };
                            id - &a[i][j]
                        })
                        .collect()
                })
                .collect();
            det(shifted)
        })
        .collect();
    for k in 1..=m {
        for i in (k..=m).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - k]);
        }
    }
    let mut p = Poly::constant(c[m].clone());
    for i in (0..m).rev() {
        let lin = Poly::new(vec![-xs[i].clone(), int(1)]);
        p = &(&p * &lin) + &Poly::constant(c[i].clone());
    }
    p
}

/// A planted root: real (`im2 == 0`) or the conjugate pair `re ± i·sqrt(im2)`.
#[derive(Clone, Debug)]
struct Planted {
    re: Rational,
    im2: Rational,
}

impl Planted {
    fn factor(&self) -> Poly<Rational> {
        if self.im2.is_zero() {
            Poly::new(vec![-self.re.clone(), int(1)])
        } else {
            let two = int(2);
            Poly::new(vec![
                &self.re * &self.re + &self.im2,
                -(two * &self.re),
                int(1),
            ])
        }
    }

    /// Two planted roots with zero sum make `(q^r, q^i)` share an extra factor.
    fn cancels(&self, other: &Planted) -> bool {
        self.re == -other.re.clone() && self.im2 == other.im2
    }
}

fn product(roots: &[Planted]) -> Poly<Rational> {
    roots.iter().fold(Poly::one(), |acc, r| &acc * &r.factor())
}

fn planted_type(roots: &[Planted]) -> SpectralType {
    let mut t = [0usize; 4];
    for r in roots {
        let k = match (r.im2.is_zero(), r.re.is_positive()) {
            (false, true) => 0,
            (false, false) => 1,
            (true, true) => 2,
            (true, false) => 3,
        };
        t[k] += 1;
    }
    SpectralType::new(t[0], t[1], t[2], t[3]).unwrap()
}

/// Random roots of total degree `m`, real parts at least `1/8` from zero.
fn random_planted(rng: &mut StdRng, m: usize) -> Vec<Planted> {
    let mut out = Vec::new();
    let mut left = m;
    while left > 0 {
        let pair = left >= 2 && rng.gen_bool(0.5);
        let re = nonzero_rq(rng, 20, 8);
        let im2 = if pair {
            let im = nonzero_rq(rng, 20, 8);
            &im * &im
        } else {
            int(0)
        };
        out.push(Planted { re, im2 });
        left -= if pair { 2 } else { 1 };
    }
    out
}

/// Like [`random_planted`] but simple and free of root pairs summing to zero.
fn generic_planted(rng: &mut StdRng, m: usize, avoid: &[Planted]) -> Vec<Planted> {
    loop {
        let roots = random_planted(rng, m);
        let all: Vec<&Planted> = roots.iter().chain(avoid).collect();
        let clash = all.iter().enumerate().any(|(i, a)| {
            all[i + 1..]
                .iter()
                .any(|b| a.cancels(b) || (a.re == b.re && a.im2 == b.im2))
        });
        if !clash {
            return roots;
        }
    }
}

fn oracle_verdict(p: &Poly<Rational>) -> Option<OracleVerdict> {
    let rs = oracle::roots(p).ok()?;
    if rs.roots.iter().any(|r| r.re.abs() <= AXIS_GAP) {
        return Some(OracleVerdict::MarginalAmbiguous);
    }
    oracle::classify_roots(&rs, DEFAULT_AXIS_TOL).ok()
}

fn bindings(inv: &PrincipalInvariants) -> BTreeMap<String, Rational> {
    inv.values()
        .iter()
        .enumerate()
        .map(|(k, v)| (format!("d{}", k + 1), v.clone()))
        .collect()
}

// --------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let delta = parse_free("-4*d3*d1^3 + d2^2*d1^2 + 18*d2*d3*d1 - 4*d2^3 - 27*d3^2").unwrap();
    let rho = parse_free("d3 - d1*d2").unwrap();
    // frozen global sign of the resultant against the printed ρ
    const RHO_SIGN_3: i64 = 1;
    let mut rng = StdRng::seed_from_u64(101);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let inv = random_invariants(&mut rng, 3);
        let b = bindings(&inv);
        let d = discriminant(&char_poly(&inv)).unwrap();
        let r = evaluate_loci(&inv).unwrap().rho;
        if d != delta.evaluate(&b).unwrap() || r != rho.evaluate(&b).unwrap() * int(RHO_SIGN_3) {
            bad.push(format!("{:?}", inv.values()));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("200 triples, {} mismatches{}", bad.len(), first_failure(&bad)),
    )
}

fn criterion_2() -> Outcome {
    const FROZEN: [(usize, i64); 3] = [(4, 1), (5, 1), (6, -1)];
    let mut rng = StdRng::seed_from_u64(202);
    let mut notes = Vec::new();
    let mut fails = 0;
    for (m, sign) in FROZEN {
        let mut checked = [0usize; 3];
        assert_eq!(rho_sign(m) as i64, sign);
        for _ in 0..100 {
            let inv = random_invariants(&mut rng, m);
            let cf = closed_form_oracles(&inv).unwrap();
            let e = evaluate_loci(&inv).unwrap();
            let res = e.rho.clone();
            if let Some(d) = &cf.delta {
                checked[0] += 1;
                if d != &discriminant(&char_poly(&inv)).unwrap() {
                    fails += 1;
                }
            }
            checked[1] += 1;
            if res != &cf.rho * int(sign) {
                fails += 1;
            }
            checked[2] += 1;
            if e.sigma_cert.as_ref() != Some(&cf.sigma_cert) {
                fails += 1;
            }
        }
        notes.push(format!(
            "m={m}: disc {} rho {} sigma {}",
            checked[0], checked[1], checked[2]
        ));
    }
    Outcome::new(
        fails == 0,
        format!("{}; {fails} mismatches", notes.join(", ")),
    )
}

fn criterion_3(parity: &mut (usize, usize)) -> Outcome {
    let mut rng = StdRng::seed_from_u64(303);
    let (mut agree, mut excluded, mut fails) = (0usize, 0usize, Vec::new());
    let mut cp_mismatch = 0usize;
    for n in 0..1300 {
        let m = 2 + n % 5;
        let a = random_matrix(&mut rng, m);
        let p = char_poly_by_interpolation(&a);
        let inv = principal_invariants(&SquareMatrix::from_rows(a.clone()).unwrap());
        if char_poly(&inv) != p {
            cp_mismatch += 1;
        }
        if let Ok(w) = winding(&p) {
            parity.0 += 1;
            if w.twice_wind.rem_euclid(2) as usize != m % 2 {
                parity.1 += 1;
            }
        }
        match oracle_verdict(&p) {
            Some(OracleVerdict::Classified(t)) => match spectral_type(&inv) {
                Ok(s) if s == t => agree += 1,
                other => fails.push(format!("{a:?}: {other:?} vs {t}")),
            },
            Some(OracleVerdict::MarginalAmbiguous) => excluded += 1,
            None => fails.push(format!("{a:?}: oracle did not converge")),
        }
    }
    let pass = fails.is_empty() && cp_mismatch == 0 && agree >= 1000;
    Outcome::new(
        pass,
        format!(
            "{agree} agree, {} disagree, {excluded} excluded near the axis, {cp_mismatch} char-poly mismatches{}",
            fails.len(),
            first_failure(&fails)
        ),
    )
}

fn criterion_4(parity: &mut (usize, usize)) -> Outcome {
    let mut rng = StdRng::seed_from_u64(404);
    let mut fails = Vec::new();
    for n in 0..500 {
        let m = 1 + n % 6;
        let roots = random_planted(&mut rng, m);
        let p = product(&roots);
        let want = planted_type(&roots);
        if let Ok(w) = winding(&p) {
            parity.0 += 1;
            if w.twice_wind.rem_euclid(2) as usize != m % 2 {
                parity.1 += 1;
            }
        }
        match spectral_type_of_poly(&p) {
            Ok(t) if t == want => {}
            other => fails.push(format!("{roots:?}: {other:?} vs {want}")),
        }
    }
    Outcome::new(
        fails.is_empty(),
        format!("500 multisets, {} wrong{}", fails.len(), first_failure(&fails)),
    )
}

fn criterion_5(parity: (usize, usize)) -> Outcome {
    let mut rng = StdRng::seed_from_u64(505);
    let (mut total, mut parity_bad) = parity;
    let worked = winding_quadrature(&PrincipalInvariants::from_ints(&[-2, 2])).unwrap();
    let mut worst = (worked - 1.0).abs();
    let mut fails = Vec::new();
    let mut done = 0;
    let mut n = 0;
    while done < 100 {
        let m = 2 + n % 3;
        n += 1;
        let inv = random_invariants(&mut rng, m);
        let exact = winding(&char_poly(&inv));
        total += 1;
        if let Ok(w) = &exact {
            if w.twice_wind.rem_euclid(2) as usize != m % 2 {
                parity_bad += 1;
            }
        }
        let Ok(w) = exact else { continue };
        if !matches!(
            oracle_verdict(&char_poly(&inv)),
            Some(OracleVerdict::Classified(_))
        ) {
            continue;
        }
        done += 1;
        match winding_quadrature(&inv) {
            Ok(q) => {
                let err = (q - w.value()).abs();
                worst = worst.max(err);
                if err > QUAD_TOL {
                    fails.push(format!("{:?}: {q} vs {}", inv.values(), w.value()));
                }
            }
            Err(e) => fails.push(format!("{:?}: {e}", inv.values())),
        }
    }
    let pass = parity_bad == 0 && fails.is_empty() && (worked - 1.0).abs() <= QUAD_TOL;
    Outcome::new(
        pass,
        format!(
            "parity {}/{total}, worked value {worked:.9}, quadrature worst error {worst:.1e} over 100 points{}",
            total - parity_bad,
            first_failure(&fails)
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(606);
    let mut fails = Vec::new();
    for n in 0..60 {
        // planted pure-imaginary pair ±iμ
        let mu = nonzero_rq(&mut rng, 20, 8);
        let mu2 = &mu * &mu;
        let axis = Planted {
            re: int(0),
            im2: mu2.clone(),
        };
        let rest = generic_planted(&mut rng, n % 5, std::slice::from_ref(&axis));
        let mut roots = rest.clone();
        roots.push(axis);
        let e = evaluate_loci(&PrincipalInvariants::from_poly(&product(&roots)).unwrap()).unwrap();
        if !e.rho.is_zero() || e.sigma_root.as_ref() != Some(&mu2) {
            fails.push(format!(
                "pair ±i{mu} with {rest:?}: rho {} sigma {:?}",
                e.rho, e.sigma_root
            ));
        }

        // planted real double root r
        let r = nonzero_rq(&mut rng, 20, 8);
        let double = Planted {
            re: r.clone(),
            im2: int(0),
        };
        let rest = generic_planted(&mut rng, n % 5, std::slice::from_ref(&double));
        let mut roots = rest.clone();
        roots.push(double.clone());
        roots.push(double);
        let e = evaluate_loci(&PrincipalInvariants::from_poly(&product(&roots)).unwrap()).unwrap();
        let split = if r.is_positive() {
            DSplit::Plus
        } else {
            DSplit::Minus
        };
        if !e.disc.is_zero() || e.tau_root.as_ref() != Some(&r) || e.d_split != split || !e.in_d {
            fails.push(format!(
                "double {r} with {rest:?}: disc {} tau {:?} split {:?}",
                e.disc, e.tau_root, e.d_split
            ));
        }

        // planted zero root
        let mut roots = random_planted(&mut rng, n % 5 + 1);
        roots.push(Planted {
            re: int(0),
            im2: int(0),
        });
        let e = evaluate_loci(&PrincipalInvariants::from_poly(&product(&roots)).unwrap()).unwrap();
        if !e.in_z || !e.zeta.is_zero() {
            fails.push(format!("zero root with {roots:?}: not in Z"));
        }
    }
    // (λ² + 1)² and a random complex double pair
    let i2 = Planted {
        re: int(0),
        im2: int(1),
    };
    let e = evaluate_loci(&PrincipalInvariants::from_poly(&product(&[i2.clone(), i2])).unwrap())
        .unwrap();
    if !e.thread || e.in_d {
        fails.push(format!("(l^2+1)^2: thread {} in_d {}", e.thread, e.in_d));
    }
    let c = Planted {
        re: frac(-3, 2),
        im2: int(5),
    };
    let e =
        evaluate_loci(&PrincipalInvariants::from_poly(&product(&[c.clone(), c])).unwrap()).unwrap();
    if !e.thread || e.in_d {
        fails.push("complex double pair: not a thread".into());
    }
    Outcome::new(
        fails.is_empty(),
        format!(
            "182 planted cases, {} wrong{}",
            fails.len(),
            first_failure(&fails)
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let ids = check_identities(100, 707).unwrap();
    pass &= ids.all_pass() && ids.checks.iter().all(|c| c.passed == 100);
    notes.push(format!(
        "identities {}",
        ids.checks
            .iter()
            .map(|c| format!("{} {}/100", c.name, c.passed))
            .collect::<Vec<_>>()
            .join(" ")
    ));

    let point = lorenz::point_type(&int(10), &int(28), &frac(8, 3)).unwrap();
    pass &= point.to_string() == "n^1_2";
    notes.push(format!("(10,28,8/3) is {point}"));

    let pm = lorenz_matrix();
    let line = run_sweep(&pm, &b_line_spec()).unwrap();
    let rep = detect_crossings(&line);
    let zeta: Vec<_> = rep
        .crossings
        .iter()
        .filter(|c| c.function == LocusFn::Zeta && c.kind == CrossingKind::SignChange)
        .collect();
    let line_ok = zeta.len() == 1 && {
        let c = zeta[0];
        let b_at = &line.cells[c.near].values[1].1;
        let ends = [line.cells[c.from].symbol(), line.cells[c.to].symbol()];
        b_at == &int(1) && ends == ["n_3", "n^1_2"]
    };
    pass &= line_ok;
    notes.push(format!("b-line zeta sign changes {}", zeta.len()));

    let slice = run_sweep(&pm, &c2_slice_spec()).unwrap();
    let rep = detect_crossings(&slice);
    let touches: Vec<_> = rep
        .crossings
        .iter()
        .filter(|c| c.function == LocusFn::Disc && c.kind == CrossingKind::TouchNoSignChange)
        .collect();
    // every touch lies on δ₂ = 0, or on a double zero of δ₁ along the line
    let one = int(1);
    let deltas = |flat: usize| {
        let v = &slice.cells[flat].values;
        let (a, b, c) = (&v[0].1, &v[1].1, &v[2].1);
        let d1 = (a - &one) * (a - &one) + int(4) * a * b;
        let d2 = (c - &one) * c - a * (b + c - &one);
        (d1, d2)
    };
    let (mut on_d2, mut on_d1, mut other) = (0, 0, Vec::new());
    for t in &touches {
        let (d1, d2) = deltas(t.near);
        let (e1, _) = deltas(t.from);
        let (f1, _) = deltas(t.to);
        if d2.is_zero() {
            on_d2 += 1;
        } else if d1.is_zero() && e1.signum() == f1.signum() {
            on_d1 += 1;
        } else {
            other.push(slice.cells[t.near].symbol());
        }
    }
    pass &= on_d2 > 0 && other.is_empty();
    notes.push(format!(
        "c=2 slice disc touches {}: {on_d2} on delta2 = 0, {on_d1} on a double zero of delta1, {} unexplained",
        touches.len(),
        other.len()
    ));
    Outcome::new(pass, notes.join(", "))
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(808);
    let mut fails = Vec::new();
    let (mut mirrored, mut rescaled) = (0, 0);
    while mirrored < 100 {
        let m = 2 + mirrored % 5;
        let inv = random_invariants(&mut rng, m);
        let Ok(t) = spectral_type(&inv) else { continue };
        mirrored += 1;
        match spectral_type(&z2_mirror(&inv)) {
            Ok(s) if s == t.swapped() => {}
            other => fails.push(format!(
                "mirror {:?}: {other:?} vs {}",
                inv.values(),
                t.swapped()
            )),
        }
        // independent: the invariants of −A
        let a = random_matrix(&mut rng, m);
        let neg: Vec<Vec<Rational>> = a
            .iter()
            .map(|r| r.iter().map(|v| -v.clone()).collect())
            .collect();
        let pa = principal_invariants(&SquareMatrix::from_rows(a).unwrap());
        let pn = principal_invariants(&SquareMatrix::from_rows(neg).unwrap());
        if z2_mirror(&pa) != pn {
            fails.push(format!("mirror of -A at {:?}", pa.values()));
        }
    }
    while rescaled < 100 {
        let m = 2 + rescaled % 5;
        let inv = random_invariants(&mut rng, m);
        if inv.determinant().is_zero() {
            continue;
        }
        let Ok(t) = spectral_type(&inv) else { continue };
        rescaled += 1;
        let r = reduce_rescale(&inv).unwrap();
        match r.to_invariants().and_then(|i| spectral_type(&i)) {
            Ok(s) if s.to_string() == t.to_string() => {}
            other => fails.push(format!("rescale {:?}: {other:?} vs {t}", inv.values())),
        }
    }
    Outcome::new(
        fails.is_empty(),
        format!(
            "{mirrored} mirrored, {rescaled} rescaled, {} wrong{}",
            fails.len(),
            first_failure(&fails)
        ),
    )
}

struct Fixture {
    name: &'static str,
    result: SweepResult,
    report: CrossingReport,
    checks: Vec<TransitionCheck>,
}

fn fixture(name: &'static str, pm: &ParametricMatrix, spec: &SweepSpec) -> Fixture {
    let result = run_sweep(pm, spec).unwrap();
    let report = detect_crossings(&result);
    let checks = check_transitions(&result, &report);
    Fixture {
        name,
        result,
        report,
        checks,
    }
}

fn criterion_9() -> Outcome {
    let lz = lorenz_matrix();
    // Hopf: conjugate pair t ± i with a stable node
    let hopf = ParametricMatrix::from_strs(
        &["t"],
        &[&["t", "-1", "0"], &["1", "t", "0"], &["0", "0", "-1"]],
    )
    .unwrap();
    // saddle-node in s, focus-node in u: the block [[-1, 1], [u, -1]] has
    // eigenvalues -1 ± sqrt(u)
    let sn_fn = ParametricMatrix::from_strs(
        &["s", "u"],
        &[&["s", "0", "0"], &["0", "-1", "1"], &["0", "u", "-1"]],
    )
    .unwrap();
    // unstable focus-node in v (eigenvalues 1 ± sqrt(v)) beside a pair w ± 2i
    let fn_hopf = ParametricMatrix::from_strs(
        &["v", "w"],
        &[
            &["1", "1", "0", "0"],
            &["v", "1", "0", "0"],
            &["0", "0", "w", "-2"],
            &["0", "0", "2", "w"],
        ],
    )
    .unwrap();
    let fixtures = [
        fixture("lorenz b-line", &lz, &b_line_spec()),
        fixture("lorenz c=2 slice", &lz, &c2_slice_spec()),
        fixture(
            "hopf",
            &hopf,
            &SweepSpec::new(vec![SweepSpec::range("t", int(-1), int(1), 9)]),
        ),
        fixture(
            "saddle-node/focus-node",
            &sn_fn,
            &SweepSpec::new(vec![
                SweepSpec::range("s", int(-1), int(1), 7),
                SweepSpec::range("u", frac(-1, 2), frac(1, 2), 6),
            ]),
        ),
        fixture(
            "focus-node/hopf 4d",
            &fn_hopf,
            &SweepSpec::new(vec![
                SweepSpec::range("v", int(-1), int(1), 5),
                SweepSpec::range("w", frac(-1, 2), frac(1, 2), 4),
            ]),
        ),
    ];
    // crossings each synthetic fixture must exhibit: (function, hopf / d-split)
    let expected: [(&str, &[(LocusFn, Option<DSplit>)]); 3] = [
        ("hopf", &[(LocusFn::Rho, None)]),
        (
            "saddle-node/focus-node",
            &[(LocusFn::Zeta, None), (LocusFn::Disc, Some(DSplit::Minus))],
        ),
        (
            "focus-node/hopf 4d",
            &[(LocusFn::Rho, None), (LocusFn::Disc, Some(DSplit::Plus))],
        ),
    ];
    let mut pass = true;
    let mut notes = Vec::new();
    for f in &fixtures {
        let count = |v: Verdict| f.checks.iter().filter(|c| c.verdict == v).count();
        let (ok, bad, skipped) = (
            count(Verdict::Consistent),
            count(Verdict::Inconsistent),
            count(Verdict::Skipped),
        );
        let sign_changes = f
            .report
            .crossings
            .iter()
            .filter(|c| c.kind == CrossingKind::SignChange)
            .count();
        let mut fixture_ok = bad == 0 && ok > 0;
        if let Some((_, want)) = expected.iter().find(|(n, _)| *n == f.name) {
            for (func, split) in want.iter() {
                let seen = f.report.crossings.iter().any(|c| {
                    c.function == *func
                        && c.kind == CrossingKind::SignChange
                        && (*func != LocusFn::Rho || c.is_hopf())
                        && split.is_none_or(|s| c.d_split == s)
                        && f.checks.iter().any(|t| {
                            t.verdict == Verdict::Consistent
                                && t.crossings
                                    .iter()
                                    .any(|&i| std::ptr::eq(&f.report.crossings[i], c))
                        })
                });
                fixture_ok &= seen;
            }
        }
        if let Some(first) = f.checks.iter().find(|c| c.verdict == Verdict::Inconsistent) {
            notes.push(format!(
                "{} inconsistent: {} -> {} observed {:?} allowed {:?}",
                f.name,
                f.result.cells[first.from].symbol(),
                f.result.cells[first.to].symbol(),
                first.observed,
                first.allowed
            ));
        }
        pass &= fixture_ok;
        notes.push(format!(
            "{}: {sign_changes} sign changes, {ok} consistent, {bad} inconsistent, {skipped} skipped{}",
            f.name,
            if fixture_ok { "" } else { " (FAILED)" }
        ));
    }
    Outcome::new(pass, notes.join("; "))
}

fn main() -> ExitCode {
    let mut parity = (0usize, 0usize);
    let mut all = true;
    let mut report = |n: usize, limit: Option<u64>, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let o = match limit {
            Some(s) => within(s, elapsed, o),
            None => o,
        };
        all &= o.pass;
        println!(
            "criterion {n}: {} ({elapsed:.2?}) {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    };
    report(1, Some(1), &mut criterion_1);
    report(2, Some(10), &mut criterion_2);
    report(3, Some(60), &mut || criterion_3(&mut parity));
    report(4, None, &mut || criterion_4(&mut parity));
    report(5, None, &mut || criterion_5(parity));
    report(6, None, &mut criterion_6);
    report(7, Some(30), &mut criterion_7);
    report(8, None, &mut criterion_8);
    report(9, None, &mut criterion_9);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
