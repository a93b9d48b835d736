//! Finite quandles, with a focus on the abelian ones.
//!
//! A quandle is a set with a binary operation `a ◁ b` such that every right
//! translation `– ◁ b` is a bijection, `a ◁ a = a`, and the operation is
//! self-distributive: `(a ◁ b) ◁ c = (a ◁ c) ◁ (b ◁ c)`. This crate covers:
//!
//! * [`table`] — multiplication tables, axiom validation, orbits, inner
//!   translations;
//! * [`enumerate`] — brute-force enumeration of small quandles and
//!   isomorphism testing;
//! * [`fp`] — the filtered-permutation classification of abelian quandles:
//!   every abelian (equivalently 2-reductive) quandle is determined by a
//!   family of lower-triangular parameter matrices, one per orbit;
//! * [`families`] — the named two- and three-orbit families and the graphic
//!   quandles used as fixtures throughout;
//! * [`sgroup`] — the structure group: parameter matrix, the equivalent
//!   freeness criteria, and a finite presentation;
//! * [`homology`] — integral rack homology in degrees one and two, with the
//!   per-orbit torsion decomposition and path chains;
//! * [`json`] — the interchange formats for tables and parameters.
//!
//! All types are immutable and all operations are pure functions; equal
//! inputs give identical outputs across runs.

pub mod enumerate;
pub mod families;
pub mod fp;
pub mod homology;
pub mod json;
mod perm;
pub mod sgroup;
pub mod table;

pub use enumerate::{are_isomorphic, canonical_table, enumerate_quandles};
pub use families::{family_graphic, family_u, family_u_star, family_u_starstar, LabelledQuandle};
pub use fp::{
    build_fp_quandle, canonical_parameters, enumerate_abelian_quandles, extract_parameters,
    extract_parameters_with_map, FpParameters, GmElement, ParamCollection,
};
pub use json::{integer_value, ParametersJson, QuandleJson};

pub use homology::{
    chains_equal_mod_boundaries, differential, homology_h1, homology_h2, orbit_slice, path_map,
    torsion_generators, Homology2, OrbitHomology, OrbitSlice, PathChain, MAX_HOMOLOGY_SIZE,
};
pub use sgroup::{
    act, commutator_word, diagonal_criterion, parameter_group, parameter_matrix,
    structure_group_is_free_abelian, structure_group_presentation, z3_criterion,
    FreeAbelianCertificate, Generator, GroupWord, ParameterMatrix, PresentationSpec, Relation,
    RelationKind, Z3Report,
};
pub use table::{InnerTranslations, OrbitDecomposition, QuandleTable};

use std::fmt;

/// Structured rejections: every axiom failure names its first witness in
/// scan order, so two runs on the same input report the same violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The raw table is not a nonempty square array.
    BadShape { rows: usize, row: usize, len: usize },
    /// A table entry is outside `0..n`.
    EntryOutOfRange { row: usize, col: usize, value: usize },
    /// Column `column` is not a permutation of the element set.
    NotAPermutation { column: usize },
    /// `a ◁ a ≠ a`.
    NotIdempotent { element: usize },
    /// `(a ◁ b) ◁ c ≠ (a ◁ c) ◁ (b ◁ c)`.
    NotSelfDistributive { a: usize, b: usize, c: usize },
    /// `a ◁ (b ◁ c) ≠ a ◁ b` — the quandle is not 2-reductive.
    NotTwoReductive { a: usize, b: usize, c: usize },
    /// `(a ◁ b) ◁ c ≠ (a ◁ c) ◁ b` — the quandle is not abelian.
    NotAbelian { a: usize, b: usize, c: usize },
    /// The translation group of an orbit does not act freely. Cannot occur
    /// for a valid abelian quandle; firing signals an internal inconsistency.
    FreenessViolated { orbit: usize },
    /// An operation guard: the input exceeds the supported size.
    SizeTooLarge { size: usize, max: usize },
    /// An operation that requires a specific orbit count got another.
    WrongOrbitCount { expected: usize, got: usize },
    /// Parameters have nonzero off-diagonal entries where a diagonal
    /// collection is required.
    NotDiagonal,
    /// Parameter data violates the triangular-shape or bound invariants.
    InvalidParameters { reason: String },
    /// An orbit index out of range, or a chain living outside its slice.
    BadIndex { index: usize, bound: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadShape { rows, row, len } => write!(
                f,
                "table is not square: {rows} rows but row {row} has length {len}"
            ),
            Error::EntryOutOfRange { row, col, value } => {
                write!(f, "entry {value} at ({row}, {col}) is out of range")
            }
            Error::NotAPermutation { column } => {
                write!(f, "column {column} is not a permutation")
            }
            Error::NotIdempotent { element } => {
                write!(f, "{element} ◁ {element} ≠ {element}")
            }
            Error::NotSelfDistributive { a, b, c } => write!(
                f,
                "({a} ◁ {b}) ◁ {c} ≠ ({a} ◁ {c}) ◁ ({b} ◁ {c})"
            ),
            Error::NotTwoReductive { a, b, c } => {
                write!(f, "{a} ◁ ({b} ◁ {c}) ≠ {a} ◁ {b}")
            }
            Error::NotAbelian { a, b, c } => {
                write!(f, "({a} ◁ {b}) ◁ {c} ≠ ({a} ◁ {c}) ◁ {b}")
            }
            Error::FreenessViolated { orbit } => write!(
                f,
                "translation group of orbit {orbit} does not act freely (internal inconsistency)"
            ),
            Error::SizeTooLarge { size, max } => {
                write!(f, "size {size} exceeds the supported maximum {max}")
            }
            Error::WrongOrbitCount { expected, got } => {
                write!(f, "operation requires {expected} orbits, quandle has {got}")
            }
            Error::NotDiagonal => write!(f, "parameters have nonzero off-diagonal entries"),
            Error::InvalidParameters { reason } => write!(f, "invalid parameters: {reason}"),
            Error::BadIndex { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
        }
    }
}

impl std::error::Error for Error {}
