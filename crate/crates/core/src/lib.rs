//! Spectral-type classification of equilibria from principal invariants.
//!
//! An equilibrium with Jacobian `A` has spectral type `f^α_β n^γ_δ`: `α`
//! and `β` count conjugate pairs with positive and negative real part, `γ`
//! and `δ` count positive and negative real eigenvalues. This crate computes
//! the type exactly from the principal invariants `d_1..d_m` of `A` (Sturm
//! counts plus an exact winding number), evaluates the three marginal-locus
//! functions across which the type can change (`ζ`, the discriminant and
//! `ρ`), and sweeps parametric Jacobians over grids.
//!
//! All decisions are made in exact rational arithmetic. Floating point is
//! used only by the numeric eigenvalue oracle and the quadrature check.
//!
//! ```
//! use spectype::{spectral_type, PrincipalInvariants};
//!
//! // roots 1, -1, 2
//! let inv = PrincipalInvariants::from_ints(&[2, -1, -2]);
//! assert_eq!(spectral_type(&inv).unwrap().to_string(), "n^2_1");
//! ```

pub mod closed_form;
pub mod contour;
pub mod error;
pub mod expr;
pub mod indices;
pub mod invariants;
pub mod loci;
pub mod lorenz;
pub mod oracle;
pub mod poly;
pub mod quadrature;
pub mod remainder;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Locus, Result};
pub use expr::{parse, parse_free, Expr, ParametricMatrix};
pub use indices::{format_type, parse_type, spectral_type, winding, SpectralType, Winding};
pub use invariants::{
    char_poly, principal_invariants, reduce_rescale, z2_mirror, PrincipalInvariants,
    ReducedInvariants, SquareMatrix,
};
pub use loci::{
    evaluate_loci, evaluate_loci_with, qr_qi, DSplit, LociEvaluation, LocusFn, ZeroPolicy,
};
pub use oracle::{classify_roots, OracleVerdict, RootSet};
pub use poly::Poly;
pub use scalar::{Mode, Rational};
pub use sweep::{
    check_transitions, detect_crossings, run_sweep, CellOutcome, Crossing, CrossingKind,
    CrossingReport, ParamSpec, SweepCell, SweepResult, SweepSpec,
};
