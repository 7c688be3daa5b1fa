use num_traits::Signed;
use proptest::prelude::*;

use spectype::scalar::{frac, int, Coeff};
use spectype::{
    char_poly, detect_crossings, evaluate_loci, principal_invariants, run_sweep, spectral_type,
    winding, z2_mirror, ParametricMatrix, Poly, PrincipalInvariants, Rational, SquareMatrix,
    SweepSpec,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

fn invariants(max_m: usize) -> impl Strategy<Value = PrincipalInvariants> {
    prop::collection::vec(rational(), 1..=max_m)
        .prop_map(|d| PrincipalInvariants::new(d).unwrap())
}

fn matrix(m: usize) -> impl Strategy<Value = SquareMatrix> {
    prop::collection::vec(rational(), m * m).prop_map(move |e| SquareMatrix::new(m, e).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn type_accounts_for_every_eigenvalue(inv in invariants(7)) {
        if let Ok(t) = spectral_type(&inv) {
            prop_assert_eq!(2 * t.alpha + 2 * t.beta + t.gamma + t.delta, inv.dim());
        }
    }

    #[test]
    fn winding_is_left_minus_right(inv in invariants(7)) {
        let p = char_poly(&inv);
        if let (Ok(w), Ok(t)) = (winding(&p), spectral_type(&inv)) {
            let left = (2 * t.beta + t.delta) as i64;
            let right = (2 * t.alpha + t.gamma) as i64;
            prop_assert_eq!(w.twice_wind, left - right);
            prop_assert_eq!(w.twice_wind.rem_euclid(2) as usize, inv.dim() % 2);
        }
    }

    #[test]
    fn mirror_swaps_and_is_an_involution(inv in invariants(7)) {
        let mirrored = z2_mirror(&inv);
        prop_assert_eq!(&z2_mirror(&mirrored), &inv);
        if let Ok(t) = spectral_type(&inv) {
            prop_assert_eq!(spectral_type(&mirrored).unwrap(), t.swapped());
        }
    }

    #[test]
    fn block_diagonal_types_add(a in matrix(2), b in matrix(3)) {
        let ab = SquareMatrix::block_diag(&a, &b);
        let (pa, pb) = (principal_invariants(&a), principal_invariants(&b));
        let pab = principal_invariants(&ab);
        prop_assert_eq!(char_poly(&pab), &char_poly(&pa) * &char_poly(&pb));
        if let (Ok(ta), Ok(tb)) = (spectral_type(&pa), spectral_type(&pb)) {
            let t = spectral_type(&pab).unwrap();
            prop_assert_eq!(
                t.as_array(),
                [0, 1, 2, 3].map(|k| ta.as_array()[k] + tb.as_array()[k])
            );
        }
    }

    #[test]
    fn scaling_the_matrix_keeps_the_type(inv in invariants(6), k in 1i64..=9) {
        // invariants of kA are k^j d_j
        let k = int(k);
        let scaled = PrincipalInvariants::new(
            inv.values()
                .iter()
                .enumerate()
                .map(|(j, d)| d * spectype::scalar::pow_i(&k, j as i64 + 1).unwrap())
                .collect(),
        )
        .unwrap();
        prop_assert_eq!(spectral_type(&scaled).ok(), spectral_type(&inv).ok());
    }

    #[test]
    fn sigma_certificate_carries_the_sign_of_sigma(inv in invariants(7)) {
        let e = evaluate_loci(&inv).unwrap();
        if let (Some(r), Some(c)) = (&e.sigma_root, &e.sigma_cert) {
            prop_assert_eq!(r.signum(), c.signum());
        }
    }

    #[test]
    fn loci_membership_requires_a_zero(inv in invariants(7)) {
        let e = evaluate_loci(&inv).unwrap();
        prop_assert!(!e.in_z || e.zeta.sign() == 0);
        prop_assert!(!e.in_d || e.disc.sign() == 0);
        prop_assert!(!e.in_r || e.rho.sign() == 0);
        prop_assert!(!(e.in_d && e.thread));
        if !e.is_marginal() {
            prop_assert!(spectral_type(&inv).is_ok());
        }
    }

    #[test]
    fn planted_real_roots_are_counted(roots in prop::collection::vec(rational(), 1..=6)) {
        prop_assume!(roots.iter().all(|r| r.sign() != 0));
        let p = Poly::from_roots(&roots);
        let t = spectral_type(&PrincipalInvariants::from_poly(&p).unwrap()).unwrap();
        prop_assert_eq!(t.gamma, roots.iter().filter(|r| r.is_positive()).count());
        prop_assert_eq!(t.delta, roots.iter().filter(|r| r.is_negative()).count());
    }
}

#[test]
fn sweeps_are_deterministic_across_thread_counts() {
    let pm = ParametricMatrix::from_strs(
        &["x", "y"],
        &[&["x", "-1", "0"], &["1", "x", "y"], &["0", "y", "-1"]],
    )
    .unwrap();
    let spec = SweepSpec::new(vec![
        SweepSpec::range("x", int(-1), int(1), 9),
        SweepSpec::range("y", int(-2), int(2), 9),
    ]);
    let many = run_sweep(&pm, &spec).unwrap();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_sweep(&pm, &spec).unwrap());
    assert_eq!(many, one);
    assert_eq!(detect_crossings(&many), detect_crossings(&one));
}
