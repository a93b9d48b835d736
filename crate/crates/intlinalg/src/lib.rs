//! Exact linear algebra over the integers.
//!
//! Everything here works with arbitrary-precision integers and is fully
//! deterministic: the Smith reduction uses a pinned pivot rule, so equal
//! inputs produce byte-identical outputs across runs.
//!
//! The pieces:
//!
//! * [`IntMatrix`] — a dense row-major matrix of `BigInt`s.
//! * [`smith_normal_form`] — `L·A·R = D` with unimodular `L`, `R` (and their
//!   inverses) and a diagonal `D` whose entries form a divisibility chain.
//! * [`invariant_factors`] — the abelian group `Z^g / rowspace(relations)`
//!   in invariant-factor normal form.
//! * [`maximal_minors_gcd`] — gcd of all maximal minors, cross-checked
//!   against the product of invariant factors when small enough.
//! * [`lattice_member`] / [`Lattice`] / [`lattice_quotient`] — membership
//!   and quotients for row lattices in `Z^n`.

mod group;
mod lattice;
mod matrix;
mod minors;
mod snf;

pub use group::{invariant_factors, AbelianGroupSpec};
pub use lattice::{lattice_member, lattice_quotient, Lattice};
pub use matrix::IntMatrix;
pub use minors::{determinant, maximal_minors_gcd};
pub use snf::{smith_diagonal, smith_normal_form, SmithForm};

use std::fmt;

/// Errors for shape preconditions and lattice containment violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// Dimensions of the arguments do not line up for the requested operation.
    ShapeMismatch {
        context: &'static str,
    },
    /// A vector claimed to lie in a lattice does not.
    NotInLattice,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::ShapeMismatch { context } => {
                write!(f, "shape mismatch: {context}")
            }
            LinalgError::NotInLattice => write!(f, "vector is not in the lattice"),
        }
    }
}

impl std::error::Error for LinalgError {}
