//! Shared fixtures for the benchmarks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use spectype::lorenz::PARAMS;
use spectype::scalar::{frac, int};
use spectype::{PrincipalInvariants, SweepSpec};

/// `count` seeded points of dimension `m`, entries `p/q` with `|p| ≤ 20`, `q ≤ 4`.
pub fn random_invariants(m: usize, count: usize, seed: u64) -> Vec<PrincipalInvariants> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = (0..m)
                .map(|_| frac(rng.gen_range(-20..=20), rng.gen_range(1..=4)))
                .collect();
            PrincipalInvariants::new(d).expect("nonempty")
        })
        .collect()
}

/// `a = 10`, `c = 8/3`, `b` over `[0, 2]` in `steps` points.
pub fn lorenz_b_line(steps: usize) -> SweepSpec {
    SweepSpec::new(vec![
        SweepSpec::fixed(PARAMS[0], int(10)),
        SweepSpec::range(PARAMS[1], int(0), int(2), steps),
        SweepSpec::fixed(PARAMS[2], frac(8, 3)),
    ])
}

/// `c = 2`, `a` over `[1/4, 4]` and `b` over `[-1, 3]`, `n` points each.
pub fn lorenz_c_slice(n: usize) -> SweepSpec {
    SweepSpec::new(vec![
        SweepSpec::range(PARAMS[0], frac(1, 4), int(4), n),
        SweepSpec::range(PARAMS[1], int(-1), int(3), n),
        SweepSpec::fixed(PARAMS[2], int(2)),
    ])
}
