//! Finitely generated abelian groups presented as `Z^g / rowspace(R)`.

use crate::{smith_diagonal, IntMatrix, LinalgError};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// An abelian group in invariant-factor normal form.
///
/// `invariant_factors` lists the nontrivial factors: torsion orders
/// `d_1 | d_2 | …` (each > 1) first, then one `0` per free summand.
/// Factors equal to 1 are dropped. The trivial group has an empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    pub generator_count: usize,
    pub relations: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl AbelianGroupSpec {
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// The torsion factors (the nonzero invariant factors).
    pub fn torsion(&self) -> &[BigInt] {
        let free = self.free_rank();
        &self.invariant_factors[..self.invariant_factors.len() - free]
    }

    /// Rank of the free part.
    pub fn free_rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| d.is_zero())
            .count()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion().iter().product()
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let free = self.free_rank();
        if free == 1 {
            parts.push("Z".to_string());
        } else if free > 1 {
            parts.push(format!("Z^{free}"));
        }
        for d in self.torsion() {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// The group `Z^generators / rowspace(relations)` in invariant-factor form.
///
/// `relations` has one relation per row; its column count must equal
/// `generators`.
pub fn invariant_factors(
    relations: &IntMatrix,
    generators: usize,
) -> Result<AbelianGroupSpec, LinalgError> {
    if relations.cols() != generators {
        return Err(LinalgError::ShapeMismatch {
            context: "relation columns differ from generator count",
        });
    }
    let (diag, rank) = smith_diagonal(relations);
    let mut factors: Vec<BigInt> = diag
        .into_iter()
        .take(rank)
        .filter(|d| !d.is_one())
        .collect();
    factors.extend(std::iter::repeat_n(BigInt::zero(), generators - rank));
    Ok(AbelianGroupSpec {
        generator_count: generators,
        relations: relations.clone(),
        invariant_factors: factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factors(rows: &[&[i64]], g: usize) -> Vec<BigInt> {
        invariant_factors(&IntMatrix::from_i64_rows(rows, g), g)
            .unwrap()
            .invariant_factors
    }

    #[test]
    fn cyclic_gcd_presentation() {
        // one generator, relations m·x = 0 and -n·x = 0 → Z/gcd(m,n)
        assert_eq!(factors(&[&[4], &[-6]], 1), vec![BigInt::from(2)]);
        // gcd 1 → trivial
        assert_eq!(factors(&[&[2], &[-3]], 1), Vec::<BigInt>::new());
    }

    #[test]
    fn no_relations_gives_free_group() {
        let g = invariant_factors(&IntMatrix::from_rows(vec![], 3).unwrap(), 3).unwrap();
        assert_eq!(
            g.invariant_factors,
            vec![BigInt::zero(), BigInt::zero(), BigInt::zero()]
        );
        assert_eq!(g.free_rank(), 3);
        assert!(g.torsion().is_empty());
        assert_eq!(g.to_string(), "Z^3");
    }

    #[test]
    fn coprime_minor_pattern_is_trivial() {
        // rows (2,0),(0,3),(1,1): the 2x2 minors 6, 2, 3 are globally coprime
        assert_eq!(factors(&[&[2, 0], &[0, 3], &[1, 1]], 2), Vec::<BigInt>::new());
    }

    #[test]
    fn mixed_torsion_and_free() {
        let g = invariant_factors(&IntMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 6, 0]], 3), 3)
            .unwrap();
        assert_eq!(
            g.invariant_factors,
            vec![BigInt::from(2), BigInt::from(6), BigInt::zero()]
        );
        assert_eq!(g.torsion(), &[BigInt::from(2), BigInt::from(6)]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion_order(), BigInt::from(12));
        assert_eq!(g.to_string(), "Z + Z/2 + Z/6");
    }

    proptest! {
        /// The presented group is invariant under row operations on the
        /// relation matrix.
        #[test]
        fn row_ops_do_not_change_the_group(
            entries in proptest::collection::vec(-9i64..=9, 6),
            k in -3i64..=3,
        ) {
            let a = IntMatrix::from_rows(
                entries.chunks(2).map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                2,
            ).unwrap();
            let base = invariant_factors(&a, 2).unwrap().invariant_factors;

            let mut permuted = a.clone();
            permuted.swap_rows(0, 2);
            prop_assert_eq!(&invariant_factors(&permuted, 2).unwrap().invariant_factors, &base);

            let mut combined = a.clone();
            combined.add_row_multiple(1, 0, &BigInt::from(k));
            prop_assert_eq!(&invariant_factors(&combined, 2).unwrap().invariant_factors, &base);

            let mut negated = a.clone();
            negated.negate_row(1);
            prop_assert_eq!(&invariant_factors(&negated, 2).unwrap().invariant_factors, &base);

            // appending a zero row changes nothing
            let padded = a.vstack(&IntMatrix::zero(1, 2)).unwrap();
            prop_assert_eq!(&invariant_factors(&padded, 2).unwrap().invariant_factors, &base);
        }
    }
}
