//! Smith normal form with unimodular transform witnesses.
//!
//! For an integer matrix `A` the reduction produces `L·A·R = D` where `L`
//! and `R` are unimodular and `D` is diagonal with nonnegative entries
//! `d_1 | d_2 | … | d_k` (trailing entries may be zero). The pivot rule is
//! pinned for determinism: among the nonzero entries of the active
//! submatrix, pick one of minimal absolute value, breaking ties by (row,
//! col) scan order.

use crate::IntMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Result of the Smith reduction of a matrix `A`:
/// `transform_left · A · transform_right` is diagonal with diagonal `diag`.
///
/// The inverse witnesses satisfy
/// `transform_left_inv · diag(diag) · transform_right_inv = A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonnegative diagonal `d_1 | d_2 | …` of length `min(rows, cols)`;
    /// trailing entries may be zero.
    pub diag: Vec<BigInt>,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
    pub transform_left: IntMatrix,
    pub transform_left_inv: IntMatrix,
    pub transform_right: IntMatrix,
    pub transform_right_inv: IntMatrix,
}

/// Working state: the matrix plus optionally-tracked transform witnesses.
struct Reduction {
    m: IntMatrix,
    witnesses: Option<Witnesses>,
}

struct Witnesses {
    left: IntMatrix,
    left_inv: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl Reduction {
    fn new(a: &IntMatrix, track: bool) -> Self {
        let witnesses = track.then(|| Witnesses {
            left: IntMatrix::identity(a.rows()),
            left_inv: IntMatrix::identity(a.rows()),
            right: IntMatrix::identity(a.cols()),
            right_inv: IntMatrix::identity(a.cols()),
        });
        Reduction {
            m: a.clone(),
            witnesses,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(w) = &mut self.witnesses {
            w.left.swap_rows(a, b);
            w.left_inv.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(w) = &mut self.witnesses {
            w.right.swap_cols(a, b);
            w.right_inv.swap_rows(a, b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.m.add_row_multiple(dst, src, k);
        if let Some(w) = &mut self.witnesses {
            w.left.add_row_multiple(dst, src, k);
            w.left_inv.add_col_multiple(src, dst, &(-k));
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.m.add_col_multiple(dst, src, k);
        if let Some(w) = &mut self.witnesses {
            w.right.add_col_multiple(dst, src, k);
            w.right_inv.add_row_multiple(src, dst, &(-k));
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.m.negate_row(r);
        if let Some(w) = &mut self.witnesses {
            w.left.negate_row(r);
            w.left_inv.negate_col(r);
        }
    }

    /// Minimal-absolute-value nonzero entry of the submatrix at `(k.., k..)`,
    /// ties broken by (row, col) scan order.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs: Option<BigInt> = None;
        for i in k..self.m.rows() {
            for j in k..self.m.cols() {
                let v = self.m.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                match &best_abs {
                    Some(cur) if *cur <= a => {}
                    _ => {
                        best_abs = Some(a);
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }

    /// Diagonalize position `k`; returns false when the remaining submatrix
    /// is zero (reduction finished early).
    fn step(&mut self, k: usize) -> bool {
        loop {
            let Some((pi, pj)) = self.find_pivot(k) else {
                return false;
            };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);

            // Clear column k and row k by division with remainder. Truncating
            // division leaves remainders strictly smaller than the pivot; if
            // any remain nonzero we loop and re-pick the now-smaller pivot.
            let mut dirty = false;
            for i in k + 1..self.m.rows() {
                if self.m.get(i, k).is_zero() {
                    continue;
                }
                let q = self.m.get(i, k) / self.m.get(k, k);
                self.add_row(i, k, &(-q));
                if !self.m.get(i, k).is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..self.m.cols() {
                if self.m.get(k, j).is_zero() {
                    continue;
                }
                let q = self.m.get(k, j) / self.m.get(k, k);
                self.add_col(j, k, &(-q));
                if !self.m.get(k, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // Row and column are clean. Enforce that the pivot divides every
            // remaining entry, otherwise fold the offending row in and retry.
            let offender = (k + 1..self.m.rows()).find(|&i| {
                (k + 1..self.m.cols())
                    .any(|j| !(self.m.get(i, j) % self.m.get(k, k)).is_zero())
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    self.add_row(k, i, &one);
                }
                None => break,
            }
        }
        if self.m.get(k, k).is_negative() {
            self.negate_row(k);
        }
        true
    }

    fn run(&mut self) -> (Vec<BigInt>, usize) {
        let n = self.m.rows().min(self.m.cols());
        let mut rank = 0;
        for k in 0..n {
            if !self.step(k) {
                break;
            }
            rank += 1;
        }
        let diag = (0..n).map(|k| self.m.get(k, k).clone()).collect();
        (diag, rank)
    }
}

/// Full Smith reduction with unimodular witnesses.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut red = Reduction::new(a, true);
    let (diag, rank) = red.run();
    let w = red.witnesses.expect("witnesses were requested");
    SmithForm {
        diag,
        rank,
        transform_left: w.left,
        transform_left_inv: w.left_inv,
        transform_right: w.right,
        transform_right_inv: w.right_inv,
    }
}

/// Diagonal of the Smith form only — same reduction without the witness
/// bookkeeping. Returns `(diag, rank)`.
pub fn smith_diagonal(a: &IntMatrix) -> (Vec<BigInt>, usize) {
    let mut red = Reduction::new(a, false);
    red.run()
}

impl SmithForm {
    /// The diagonal as a full matrix of the original shape.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let rows = self.transform_left.rows();
        let cols = self.transform_right.cols();
        let mut d = IntMatrix::zero(rows, cols);
        for (k, v) in self.diag.iter().enumerate() {
            d.set(k, k, v.clone());
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn check_witnesses(a: &IntMatrix, s: &SmithForm) {
        // L · A · R = D
        let lar = s
            .transform_left
            .mul(a)
            .unwrap()
            .mul(&s.transform_right)
            .unwrap();
        assert_eq!(lar, s.diagonal_matrix());
        // witnesses really are mutually inverse
        assert_eq!(
            s.transform_left.mul(&s.transform_left_inv).unwrap(),
            IntMatrix::identity(a.rows())
        );
        assert_eq!(
            s.transform_right.mul(&s.transform_right_inv).unwrap(),
            IntMatrix::identity(a.cols())
        );
        // divisibility chain, nonnegative, trailing zeros
        for w in s.diag.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(!w[0].is_zero(), "zero before nonzero in diagonal");
            assert!((&w[1] % &w[0]).is_zero(), "diagonal not a divisor chain");
        }
        for d in &s.diag {
            assert!(!d.is_negative());
        }
        assert_eq!(s.rank, s.diag.iter().filter(|d| !d.is_zero()).count());
    }

    #[test]
    fn identity_three() {
        let a = IntMatrix::identity(3);
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![BigInt::one(), BigInt::one(), BigInt::one()]);
        assert_eq!(s.rank, 3);
        check_witnesses(&a, &s);
    }

    #[test]
    fn diag_4_6_gives_2_12() {
        let a = IntMatrix::from_i64_rows(&[&[4, 0], &[0, 6]], 2);
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(12)]);
        check_witnesses(&a, &s);
    }

    #[test]
    fn zero_and_empty_matrices() {
        let z = IntMatrix::zero(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.rank, 0);
        assert_eq!(s.diag, vec![BigInt::zero(), BigInt::zero()]);

        let e = IntMatrix::from_rows(vec![], 4).unwrap();
        let s = smith_normal_form(&e);
        assert_eq!(s.rank, 0);
        assert!(s.diag.is_empty());
        check_witnesses(&e, &s);
    }

    #[test]
    fn unit_offsets_collapse_everything() {
        // rows (1,0,0),(0,1,0),(0,0,1),(-1,0,0),(0,-1,0),(0,0,-1):
        // the relation matrix of three orbits of size one.
        let a = IntMatrix::from_i64_rows(
            &[
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[-1, 0, 0],
                &[0, -1, 0],
                &[0, 0, -1],
            ],
            3,
        );
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![BigInt::one(), BigInt::one(), BigInt::one()]);
        check_witnesses(&a, &s);
    }

    #[test]
    fn fast_path_matches_witness_path() {
        let a = IntMatrix::from_i64_rows(&[&[6, 4, 2], &[2, 8, 0], &[0, 0, 5]], 3);
        let s = smith_normal_form(&a);
        let (diag, rank) = smith_diagonal(&a);
        assert_eq!(diag, s.diag);
        assert_eq!(rank, s.rank);
        check_witnesses(&a, &s);
    }

    proptest! {
        #[test]
        fn random_matrices_reduce_correctly(
            entries in proptest::collection::vec(-20i64..=20, 1..=20),
            cols in 1usize..=4,
        ) {
            let rows: Vec<Vec<BigInt>> = entries
                .chunks(cols)
                .filter(|c| c.len() == cols)
                .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            prop_assume!(!rows.is_empty());
            let a = IntMatrix::from_rows(rows, cols).unwrap();
            let s = smith_normal_form(&a);
            check_witnesses(&a, &s);
        }
    }
}
