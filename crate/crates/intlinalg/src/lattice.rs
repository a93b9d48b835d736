//! Row lattices in `Z^n`: membership tests, coordinates, and quotients.

use crate::{invariant_factors, smith_normal_form, AbelianGroupSpec, IntMatrix, LinalgError};
use num_bigint::BigInt;
use num_traits::Zero;

/// The sublattice of `Z^n` spanned by the rows of a generating matrix,
/// preprocessed for repeated membership / coordinate queries.
pub struct Lattice {
    ambient_dim: usize,
    rank: usize,
    diag: Vec<BigInt>,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl Lattice {
    pub fn new(basis_rows: &IntMatrix) -> Self {
        let s = smith_normal_form(basis_rows);
        Lattice {
            ambient_dim: basis_rows.cols(),
            rank: s.rank,
            diag: s.diag,
            right: s.transform_right,
            right_inv: s.transform_right_inv,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Is `v` an integer combination of the generating rows?
    ///
    /// With `L·B·R = D`, solving `x·B = v` over the integers is equivalent
    /// to `y·D = v·R`: each coordinate of `v·R` under a nonzero diagonal
    /// entry must be divisible by it, and the rest must vanish.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.coordinates_in_diag_basis(v)?.is_some())
    }

    /// Coordinates of `v` in the canonical basis `{d_j · (row j of R⁻¹)}`
    /// of the lattice, or `None` when `v` is not a member.
    fn coordinates_in_diag_basis(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        let w = self.right.row_vec_mul(v)?;
        for j in self.rank..self.ambient_dim {
            if !w[j].is_zero() {
                return Ok(None);
            }
        }
        let mut coords = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let (q, r) = num_integer::Integer::div_rem(&w[j], &self.diag[j]);
            if !r.is_zero() {
                return Ok(None);
            }
            coords.push(q);
        }
        Ok(Some(coords))
    }

    /// Express each row of `sub` in the canonical basis of this lattice.
    /// Errors with [`LinalgError::NotInLattice`] if some row is not a member.
    pub fn coordinates_of_rows(&self, sub: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if sub.cols() != self.ambient_dim {
            return Err(LinalgError::ShapeMismatch {
                context: "sublattice rows live in a different ambient space",
            });
        }
        let mut rows = Vec::with_capacity(sub.rows());
        for r in 0..sub.rows() {
            match self.coordinates_in_diag_basis(sub.row(r))? {
                Some(c) => rows.push(c),
                None => return Err(LinalgError::NotInLattice),
            }
        }
        IntMatrix::from_rows(rows, self.rank)
    }

    /// A basis of the lattice as rows (the canonical basis used by
    /// [`Lattice::coordinates_of_rows`]).
    pub fn basis_rows(&self) -> IntMatrix {
        let mut rows = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let row: Vec<BigInt> = self
                .right_inv
                .row(j)
                .iter()
                .map(|x| x * &self.diag[j])
                .collect();
            rows.push(row);
        }
        IntMatrix::from_rows(rows, self.ambient_dim).expect("basis rows are rectangular")
    }
}

/// Does `v` lie in the row lattice spanned by `basis_rows`?
pub fn lattice_member(v: &[BigInt], basis_rows: &IntMatrix) -> Result<bool, LinalgError> {
    if v.len() != basis_rows.cols() {
        return Err(LinalgError::ShapeMismatch {
            context: "vector length differs from lattice ambient dimension",
        });
    }
    Lattice::new(basis_rows).contains(v)
}

/// The quotient group `L(sup) / L(sub)` of two row lattices with
/// `L(sub) ⊆ L(sup)`, in invariant-factor form.
///
/// Errors with [`LinalgError::NotInLattice`] when some row of `sub` is not
/// in the lattice of `sup`.
pub fn lattice_quotient(
    sup_rows: &IntMatrix,
    sub_rows: &IntMatrix,
) -> Result<AbelianGroupSpec, LinalgError> {
    if sup_rows.cols() != sub_rows.cols() {
        return Err(LinalgError::ShapeMismatch {
            context: "lattice quotient of lattices in different ambient spaces",
        });
    }
    let sup = Lattice::new(sup_rows);
    let coords = sup.coordinates_of_rows(sub_rows)?;
    invariant_factors(&coords, sup.rank())
}
