//! Exact homological computations for the solvable Lie algebra
//! `g_d = span{X_0, X_1, ..., X_d}` with `[X_0, X_j] = X_j` and `[X_j, X_k] = 0`,
//! together with a capped-precision p-adic model of the group `U ⋉ Z_p^d`
//! whose Lie algebra it is.
//!
//! Layout:
//! - [`arith`]: rationals, polynomials, dense matrices and exact elimination.
//! - [`lie`]: the algebra, its subalgebras and finite-dimensional representations.
//! - [`ce`]: Chevalley–Eilenberg cochains, cohomology, derivations and cup products.
//! - [`structure`]: composition factors, the integer/non-integer block split and
//!   unipotent block recovery.
//! - [`padic`]: p-adic scalars, the matrix group, exp/log, cocycles and the
//!   integration functor from representations of `g_d` to group actions.
//! - [`suites`]: seeded verification suites shared by the CLI and the tests.

pub mod arith;
pub mod ce;
pub mod error;
pub mod lie;
pub mod padic;
pub mod par;
pub mod random;
pub mod structure;
pub mod suites;

pub use arith::{Mat, Poly, Rational};
pub use error::{Error, Result};
pub use lie::{LieAlgebraGd, LieRep, RepMorphism, SubalgebraTag};
