//! Integral rack homology in low degrees, with the orbit decomposition.
//!
//! Chains in degree `k` are integer combinations of `k`-tuples of quandle
//! elements, with differentials
//!
//! ```text
//! d₂(a, b)    = (a◁b) − (a)
//! d₃(a, b, c) = (a◁b, c) − (a, c) − (a◁c, b◁c) + (a, b)
//! ```
//!
//! Both differentials keep the first tuple coordinate inside its orbit, so
//! `H₂` splits as a direct sum of orbit slices; each slice is computed as
//! cycles-modulo-boundaries of integer lattices ([`orbit_slice`],
//! [`homology_h2`]).  [`path_map`] turns a structure-group word into a
//! degree-2 chain whose boundary is `endpoint − start`; loops based in an
//! orbit land in the slice's cycles, and for abelian quandles the images of
//! the commutator generators ([`torsion_generators`]) generate exactly the
//! torsion of the slice.

use std::collections::{BTreeMap, BTreeSet};

use intlinalg::{
    invariant_factors, lattice_member, smith_normal_form, AbelianGroupSpec, IntMatrix,
};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::sgroup::GroupWord;
use crate::table::QuandleTable;
use crate::Error;

/// Largest quandle size accepted by the degree-2 homology pipeline (and by
/// the degree-3 differential feeding it): `d₃` has `n³` rows, and exact
/// arithmetic on the resulting lattices stays comfortably fast up to here.
pub const MAX_HOMOLOGY_SIZE: usize = 14;

fn check_homology_size(n: usize) -> Result<(), Error> {
    if n > MAX_HOMOLOGY_SIZE {
        return Err(Error::SizeTooLarge {
            size: n,
            max: MAX_HOMOLOGY_SIZE,
        });
    }
    Ok(())
}

/// Matrix of the rack differential `d_k : C_k → C_{k−1}` for `k` = 2 or 3,
/// rows indexed by the domain basis.  Tuple bases are ordered
/// lexicographically: `(a, b) ↦ a·n + b` and `(a, b, c) ↦ a·n² + b·n + c`.
pub fn differential(q: &QuandleTable, k: usize) -> Result<IntMatrix, Error> {
    let n = q.size();
    check_homology_size(n)?;
    match k {
        2 => {
            let mut m = IntMatrix::zero(n * n, n);
            for a in 0..n {
                for b in 0..n {
                    let row = a * n + b;
                    let target = q.op(a, b);
                    if target != a {
                        m.set(row, target, BigInt::from(1));
                        m.set(row, a, BigInt::from(-1));
                    }
                }
            }
            Ok(m)
        }
        3 => {
            let mut m = IntMatrix::zero(n * n * n, n * n);
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let row = a * n * n + b * n + c;
                        for (pair, sign) in [
                            ((q.op(a, b), c), 1),
                            ((a, c), -1),
                            ((q.op(a, c), q.op(b, c)), -1),
                            ((a, b), 1),
                        ] {
                            let col = pair.0 * n + pair.1;
                            let cur = m.get(row, col).clone();
                            m.set(row, col, cur + BigInt::from(sign));
                        }
                    }
                }
            }
            Ok(m)
        }
        _ => Err(Error::InvalidParameters {
            reason: format!("differential degree must be 2 or 3, got {k}"),
        }),
    }
}

/// The degree-2 chain slice of one orbit: the basis tuples `(a, b)` with
/// `a` in the orbit, the restricted differentials, and an integer basis of
/// the degree-2 cycles of the slice.
#[derive(Debug, Clone)]
pub struct OrbitSlice {
    orbit: usize,
    basis: Vec<(usize, usize)>,
    positions: BTreeMap<(usize, usize), usize>,
    /// `d₂` restricted to the slice: `|basis| × n`.
    d2: IntMatrix,
    /// Deduplicated nonzero `d₃` rows landing in the slice, over `basis`.
    boundaries: IntMatrix,
    /// Rows form a basis of the cycle lattice `ker d₂` inside the slice.
    kernel: IntMatrix,
    /// Boundary rows expressed in the kernel basis.
    boundary_coords: IntMatrix,
    left_inv: IntMatrix,
    rank: usize,
}

/// Cokernel-free description of one orbit's contribution to `H₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitHomology {
    pub orbit: usize,
    pub free_rank: usize,
    /// Invariant factors of the torsion subgroup, divisibility-ordered,
    /// trivial factors dropped.
    pub torsion: Vec<BigInt>,
}

/// Degree-2 homology assembled from the orbit slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology2 {
    pub per_orbit: Vec<OrbitHomology>,
    pub total_free_rank: usize,
    /// Invariant factors of the direct sum of the per-orbit torsion
    /// subgroups, renormalised into one divisibility chain.
    pub total_torsion: Vec<BigInt>,
}

/// Builds the degree-2 slice of orbit `i`: basis, restricted differentials,
/// cycle basis, and boundary coordinates.  Costs one exact Smith reduction
/// of the restricted `d₂` plus one coordinate solve per boundary row.
pub fn orbit_slice(q: &QuandleTable, i: usize) -> Result<OrbitSlice, Error> {
    let n = q.size();
    check_homology_size(n)?;
    let orbits = q.orbits();
    if i >= orbits.count() {
        return Err(Error::BadIndex {
            index: i,
            bound: orbits.count(),
        });
    }

    let members = &orbits.orbits[i];
    let mut basis = Vec::with_capacity(members.len() * n);
    let mut positions = BTreeMap::new();
    for &a in members {
        for b in 0..n {
            positions.insert((a, b), basis.len());
            basis.push((a, b));
        }
    }

    // d₂ restricted to the slice (columns live in all of C₁).
    let mut d2 = IntMatrix::zero(basis.len(), n);
    for (row, &(a, b)) in basis.iter().enumerate() {
        let target = q.op(a, b);
        if target != a {
            d2.set(row, target, BigInt::from(1));
            d2.set(row, a, BigInt::from(-1));
        }
    }

    // Deduplicated nonzero d₃ rows with first coordinate in the orbit;
    // every term of such a row stays inside the slice.
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for &a in members {
        for b in 0..n {
            for c in 0..n {
                let mut row = vec![BigInt::zero(); basis.len()];
                for (pair, sign) in [
                    ((q.op(a, b), c), 1),
                    ((a, c), -1),
                    ((q.op(a, c), q.op(b, c)), -1),
                    ((a, b), 1),
                ] {
                    row[positions[&pair]] += BigInt::from(sign);
                }
                if row.iter().any(|e| !e.is_zero()) {
                    seen.insert(row);
                }
            }
        }
    }
    let boundary_rows: Vec<Vec<BigInt>> = seen.into_iter().collect();
    let boundaries =
        IntMatrix::from_rows(boundary_rows, basis.len()).expect("rows sized to slice basis");

    // Cycle basis: with L·d₂·R diagonal of rank k, the rows of L from k on
    // form a basis of the row kernel of d₂.
    let snf = smith_normal_form(&d2);
    let rank = snf.rank;
    let kernel_rows: Vec<Vec<BigInt>> = (rank..basis.len())
        .map(|r| snf.transform_left.row(r).to_vec())
        .collect();
    let kernel = IntMatrix::from_rows(kernel_rows, basis.len()).expect("rows sized to basis");

    let left_inv = snf.transform_left_inv;
    let boundary_coords =
        cycle_coordinates_impl(&boundaries, &left_inv, rank, basis.len(), i)?;

    Ok(OrbitSlice {
        orbit: i,
        basis,
        positions,
        d2,
        boundaries,
        kernel,
        boundary_coords,
        left_inv,
        rank,
    })
}

fn cycle_coordinates_impl(
    vectors: &IntMatrix,
    left_inv: &IntMatrix,
    rank: usize,
    basis_len: usize,
    orbit: usize,
) -> Result<IntMatrix, Error> {
    let kdim = basis_len - rank;
    let mut rows = Vec::with_capacity(vectors.rows());
    for r in 0..vectors.rows() {
        // v = u·L with u = v·L⁻¹; v is a cycle iff u vanishes on the first
        // `rank` coordinates, and then u[rank..] are its kernel coordinates.
        let u = left_inv
            .row_vec_mul(vectors.row(r))
            .expect("vector sized to slice basis");
        if u[..rank].iter().any(|e| !e.is_zero()) {
            return Err(Error::InvalidParameters {
                reason: format!("row {r} is not a degree-2 cycle of orbit slice {orbit}"),
            });
        }
        rows.push(u[rank..].to_vec());
    }
    Ok(IntMatrix::from_rows(rows, kdim).expect("rows sized to kernel dimension"))
}

impl OrbitSlice {
    pub fn orbit(&self) -> usize {
        self.orbit
    }

    /// Basis tuples `(a, b)` of the slice, lexicographic.
    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    /// Index of the tuple `(a, b)` within the slice basis, if it lies in
    /// this orbit's slice.
    pub fn position(&self, a: usize, b: usize) -> Option<usize> {
        self.positions.get(&(a, b)).copied()
    }

    /// The restricted degree-2 differential (`|basis| × n`).
    pub fn d2(&self) -> &IntMatrix {
        &self.d2
    }

    /// Deduplicated nonzero boundary rows of the slice, over [`Self::basis`].
    pub fn boundaries(&self) -> &IntMatrix {
        &self.boundaries
    }

    /// Rows form an integer basis of the cycle lattice `ker d₂` in the slice.
    pub fn cycle_basis(&self) -> &IntMatrix {
        &self.kernel
    }

    /// Coordinates of slice vectors in the cycle basis.  Errors when some
    /// row is not a cycle.
    pub fn cycle_coordinates(&self, vectors: &IntMatrix) -> Result<IntMatrix, Error> {
        cycle_coordinates_impl(
            vectors,
            &self.left_inv,
            self.rank,
            self.basis.len(),
            self.orbit,
        )
    }

    /// The boundary rows in cycle-basis coordinates.
    pub fn boundary_coordinates(&self) -> &IntMatrix {
        &self.boundary_coords
    }

    /// Cycles modulo boundaries of the slice in invariant-factor form.
    pub fn homology(&self) -> OrbitHomology {
        let kdim = self.kernel.rows();
        let spec = invariant_factors(&self.boundary_coords, kdim)
            .expect("coordinates sized to kernel dimension");
        OrbitHomology {
            orbit: self.orbit,
            free_rank: spec.free_rank(),
            torsion: spec.torsion().to_vec(),
        }
    }
}

/// Second integral homology, orbit slice by orbit slice.
pub fn homology_h2(q: &QuandleTable) -> Result<Homology2, Error> {
    check_homology_size(q.size())?;
    let orbits = q.orbits();
    let mut per_orbit = Vec::with_capacity(orbits.count());
    for i in 0..orbits.count() {
        per_orbit.push(orbit_slice(q, i)?.homology());
    }
    let total_free_rank = per_orbit.iter().map(|o| o.free_rank).sum();

    // Renormalise the direct sum of the torsion parts into one
    // invariant-factor chain.
    let all: Vec<BigInt> = per_orbit
        .iter()
        .flat_map(|o| o.torsion.iter().cloned())
        .collect();
    let mut diag = IntMatrix::zero(all.len(), all.len());
    for (k, d) in all.iter().enumerate() {
        diag.set(k, k, d.clone());
    }
    let total_torsion = invariant_factors(&diag, all.len())
        .expect("square diagonal matrix")
        .torsion()
        .to_vec();

    Ok(Homology2 {
        per_orbit,
        total_free_rank,
        total_torsion,
    })
}

/// First integral homology: the degree-1 differential is zero, so `H₁` is
/// the cokernel of `d₂`, whose rows are the differences `(a◁b) − (a)`.
/// That is the boundary matrix of a graph on the elements whose connected
/// components are the orbits, and such quotients are free on the
/// components: contracting a spanning forest is a unimodular change of
/// basis taking the relation rows to distinct basis vectors.  Hence
/// `H₁ ≅ ℤ^r` with `r` the orbit count, with no size restriction (the
/// agreement with the Smith-form computation is pinned in the tests).
pub fn homology_h1(q: &QuandleTable) -> AbelianGroupSpec {
    let r = q.orbits().count();
    invariant_factors(&IntMatrix::zero(0, r), r).expect("empty relation matrix")
}

/// A structure-group word realised as a degree-2 chain: walking the word
/// letter by letter from `start` emits `+(current, b)` for `g_b` and
/// `−(current◁̃b, b)` for `g_b⁻¹`, ending at `endpoint`.  Its boundary is
/// `(endpoint) − (start)`, so words fixing `start` yield cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathChain {
    pub start: usize,
    pub endpoint: usize,
    /// Sparse degree-2 vector: coefficient of the basis tuple `(a, b)`.
    pub chain: BTreeMap<(usize, usize), i64>,
}

impl PathChain {
    /// Dense coordinates over the full degree-2 basis of a size-`n`
    /// quandle, tuple `(a, b)` at index `a·n + b`.
    pub fn dense(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n * n];
        for (&(a, b), &coeff) in &self.chain {
            assert!(a < n && b < n, "chain tuple out of range for size {n}");
            v[a * n + b] = coeff;
        }
        v
    }
}

/// Evaluates the path map: the chain traced in the quandle by a
/// structure-group word starting at `start`.  The endpoint reproduces the
/// right action of the word ([`crate::sgroup::act`]).
pub fn path_map(q: &QuandleTable, start: usize, w: &GroupWord) -> Result<PathChain, Error> {
    let n = q.size();
    if start >= n {
        return Err(Error::BadIndex {
            index: start,
            bound: n,
        });
    }
    let mut chain: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let mut add = |key: (usize, usize), delta: i64| {
        let slot = chain.entry(key).or_insert(0);
        *slot += delta;
        if *slot == 0 {
            chain.remove(&key);
        }
    };
    let mut current = start;
    for &(b, sign) in &w.letters {
        if b >= n {
            return Err(Error::BadIndex { index: b, bound: n });
        }
        match sign {
            1 => {
                add((current, b), 1);
                current = q.op(current, b);
            }
            -1 => {
                current = q.op_inv(current, b);
                add((current, b), -1);
            }
            _ => {
                return Err(Error::InvalidParameters {
                    reason: format!("word letter sign must be +1 or -1, got {sign}"),
                })
            }
        }
    }
    Ok(PathChain {
        start,
        endpoint: current,
        chain,
    })
}

/// Are two degree-2 chains (dense, tuple `(a, b)` at index `a·n + b`) equal
/// modulo boundaries, i.e. equal in `Q₂ = C₂ / im d₃`?  Decided slice by
/// slice: the difference lies in the boundary lattice iff each of its orbit
/// components does.
pub fn chains_equal_mod_boundaries(
    q: &QuandleTable,
    u: &[i64],
    v: &[i64],
) -> Result<bool, Error> {
    let n = q.size();
    check_homology_size(n)?;
    if u.len() != n * n || v.len() != n * n {
        return Err(Error::InvalidParameters {
            reason: format!(
                "degree-2 chains over {n} elements have length {}, got {} and {}",
                n * n,
                u.len(),
                v.len()
            ),
        });
    }
    let orbits = q.orbits();
    for i in 0..orbits.count() {
        let slice = orbit_slice(q, i)?;
        let diff: Vec<BigInt> = slice
            .basis()
            .iter()
            .map(|&(a, b)| BigInt::from(u[a * n + b] - v[a * n + b]))
            .collect();
        if diff.iter().all(|e| e.is_zero()) {
            continue;
        }
        if !lattice_member(&diff, slice.boundaries()).expect("vector sized to slice basis") {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generating chains of the torsion subgroup of the slice `H_{2;i}` of an
/// abelian quandle: with `a` the smallest element of orbit `i`, the chains
/// `(a, b◁c) − (a, b)` for orbit representatives `b`, `c` (zero chains
/// skipped, duplicates removed).  These are path-map images of the
/// commutators `g_b⁻¹ g_{b◁c}`, which generate the commutator subgroup, so
/// their classes generate exactly the torsion of the slice.  Returned as
/// dense degree-2 vectors.
pub fn torsion_generators(q: &QuandleTable, i: usize) -> Result<Vec<Vec<i64>>, Error> {
    let n = q.size();
    check_homology_size(n)?;
    // Verifies abelianity (and the orbit-wise freeness that follows).
    q.inner_translations()?;
    let orbits = q.orbits();
    if i >= orbits.count() {
        return Err(Error::BadIndex {
            index: i,
            bound: orbits.count(),
        });
    }
    let a = orbits.orbits[i][0];
    let representatives: Vec<usize> = orbits.orbits.iter().map(|o| o[0]).collect();

    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    for &b in &representatives {
        for &c in &representatives {
            let t = q.op(b, c);
            if t == b {
                continue;
            }
            let mut chain = vec![0i64; n * n];
            chain[a * n + t] += 1;
            chain[a * n + b] -= 1;
            if seen.insert(chain.clone()) {
                out.push(chain);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{family_graphic, family_u, family_u_star, family_u_starstar};
    use crate::fp::{build_fp_quandle, enumerate_abelian_quandles};
    use crate::sgroup::{act, parameter_group, structure_group_is_free_abelian};
    use intlinalg::lattice_quotient;
    use num_integer::Integer;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dihedral_three() -> QuandleTable {
        QuandleTable::validate(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap()
    }

    fn torsion_u64(factors: &[BigInt]) -> Vec<u64> {
        factors
            .iter()
            .map(|d| u64::try_from(d).expect("small torsion"))
            .collect()
    }

    fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> GroupWord {
        GroupWord {
            letters: (0..rng.gen_range(0..=max_len))
                .map(|_| (rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 }))
                .collect(),
        }
    }

    #[test]
    fn differentials_have_known_entries_and_compose_to_zero() {
        // Trivial quandle: every translation fixes everything, d₂ = 0.
        let d2 = differential(&QuandleTable::trivial(3), 2).unwrap();
        assert!(d2.is_zero());

        // Two 2-cycles: the row of (x₀, y₀) = (0, 2) is (x₁) − (x₀).
        let u22 = family_u(2, 2).unwrap().table;
        let d2 = differential(&u22, 2).unwrap();
        let row = d2.row(0 * 4 + 2);
        assert_eq!(row[1], BigInt::from(1));
        assert_eq!(row[0], BigInt::from(-1));
        assert!(row[2].is_zero() && row[3].is_zero());

        // d₂ ∘ d₃ = 0 on a mixed zoo, non-abelian included.
        for q in [
            QuandleTable::trivial(1),
            QuandleTable::trivial(4),
            dihedral_three(),
            u22,
            family_u(2, 3).unwrap().table,
            family_graphic(&[1, 2, 3]).unwrap().table,
            family_u_starstar(2, 2).unwrap().table,
        ] {
            let d3 = differential(&q, 3).unwrap();
            let d2 = differential(&q, 2).unwrap();
            assert!(d3.mul(&d2).unwrap().is_zero(), "size {}", q.size());
        }

        assert!(matches!(
            differential(&QuandleTable::trivial(2), 4),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            differential(&QuandleTable::trivial(MAX_HOMOLOGY_SIZE + 1), 2),
            Err(Error::SizeTooLarge { .. })
        ));
    }

    #[test]
    fn slice_cycles_and_boundaries_are_consistent() {
        let q = family_u(2, 4).unwrap().table;
        let orbits = q.orbits();
        let n = q.size();
        let mut total_basis = 0;
        for i in 0..orbits.count() {
            let slice = orbit_slice(&q, i).unwrap();
            total_basis += slice.basis().len();
            assert_eq!(slice.basis().len(), orbits.orbits[i].len() * n);
            // Cycle basis rows really are cycles.
            for r in 0..slice.cycle_basis().rows() {
                let image = slice.d2().row_vec_mul(slice.cycle_basis().row(r)).unwrap();
                assert!(image.iter().all(|e| e.is_zero()));
            }
            // Boundary rows are cycles, and their stored coordinates
            // reproduce them against the cycle basis.
            let coords = slice.cycle_coordinates(slice.boundaries()).unwrap();
            assert_eq!(&coords, slice.boundary_coordinates());
            let reconstructed = coords.mul(slice.cycle_basis()).unwrap();
            assert_eq!(&reconstructed, slice.boundaries());
        }
        assert_eq!(total_basis, n * n);

        // A non-cycle is rejected by the coordinate solve.
        let slice = orbit_slice(&q, 0).unwrap();
        let mut probe = IntMatrix::zero(1, slice.basis().len());
        let col = slice.position(0, 2).unwrap(); // (x₀, y₀): moves x₀
        probe.set(0, col, BigInt::from(1));
        assert!(slice.cycle_coordinates(&probe).is_err());

        assert!(matches!(
            orbit_slice(&q, orbits.count()),
            Err(Error::BadIndex { .. })
        ));
    }

    #[test]
    fn two_orbit_cycle_families_have_square_rank_and_gcd_torsion() {
        // H₂ = ℤ⁴ ⊕ (ℤ_gcd)², one gcd factor per orbit.
        for (m, n) in [(2u64, 2u64), (2, 3), (2, 4), (3, 6), (4, 6)] {
            let q = family_u(m, n).unwrap().table;
            let h = homology_h2(&q).unwrap();
            let d = m.gcd(&n);
            let expected: Vec<u64> = if d == 1 { vec![] } else { vec![d] };
            assert_eq!(h.per_orbit.len(), 2);
            for o in &h.per_orbit {
                assert_eq!(o.free_rank, 2, "U_{{{m},{n}}}");
                assert_eq!(torsion_u64(&o.torsion), expected, "U_{{{m},{n}}}");
            }
            assert_eq!(h.total_free_rank, 4);
            let total: Vec<u64> = if d == 1 { vec![] } else { vec![d, d] };
            assert_eq!(torsion_u64(&h.total_torsion), total);
        }
    }

    #[test]
    fn trivial_quandles_have_free_homology_of_square_rank() {
        for n in 1..=4 {
            let h = homology_h2(&QuandleTable::trivial(n)).unwrap();
            assert_eq!(h.total_free_rank, n * n);
            assert!(h.total_torsion.is_empty());
            for o in &h.per_orbit {
                assert_eq!(o.free_rank, n);
                assert!(o.torsion.is_empty());
            }
        }
    }

    #[test]
    fn extension_families_differ_only_in_the_third_orbit_torsion() {
        // Fixed-point extension: ℤ⁹ ⊕ (ℤ_gcd)², third orbit torsion-free.
        let h = homology_h2(&family_u_star(2, 2).unwrap().table).unwrap();
        assert_eq!(h.total_free_rank, 9);
        assert_eq!(torsion_u64(&h.total_torsion), vec![2, 2]);
        let per: Vec<Vec<u64>> = h.per_orbit.iter().map(|o| torsion_u64(&o.torsion)).collect();
        assert_eq!(per, vec![vec![2], vec![2], vec![]]);

        // Swap extension: same parameter group, but the swapped pair
        // contributes one extra ℤ_gcd(m,n,2).
        let h = homology_h2(&family_u_starstar(2, 2).unwrap().table).unwrap();
        assert_eq!(h.total_free_rank, 9);
        assert_eq!(torsion_u64(&h.total_torsion), vec![2, 2, 2]);
        let per: Vec<Vec<u64>> = h.per_orbit.iter().map(|o| torsion_u64(&o.torsion)).collect();
        assert_eq!(per, vec![vec![2], vec![2], vec![2]]);

        // With gcd(m, n, 2) = 1 the two extensions agree.
        let star = homology_h2(&family_u_star(3, 3).unwrap().table).unwrap();
        let swap = homology_h2(&family_u_starstar(3, 3).unwrap().table).unwrap();
        assert_eq!(torsion_u64(&star.total_torsion), vec![3, 3]);
        assert_eq!(torsion_u64(&swap.total_torsion), vec![3, 3]);
        assert_eq!(star.total_free_rank, 9);
        assert_eq!(swap.total_free_rank, 9);
    }

    #[test]
    fn graphic_families_match_the_parity_gcd_formula() {
        // Three orbits: each slice contributes ℤ_gcd(n₁,n₂,n₃,2).
        let h = homology_h2(&family_graphic(&[2, 2, 2]).unwrap().table).unwrap();
        assert_eq!(h.total_free_rank, 9);
        assert_eq!(torsion_u64(&h.total_torsion), vec![2, 2, 2]);

        let h = homology_h2(&family_graphic(&[1, 2, 3]).unwrap().table).unwrap();
        assert_eq!(h.total_free_rank, 9);
        assert!(h.total_torsion.is_empty());

        let h = homology_h2(&family_graphic(&[2, 4, 2]).unwrap().table).unwrap();
        assert_eq!(torsion_u64(&h.total_torsion), vec![2, 2, 2]);

        // Four or more orbits: torsion-free of rank r².
        let h = homology_h2(&family_graphic(&[2, 2, 2, 2]).unwrap().table).unwrap();
        assert_eq!(h.total_free_rank, 16);
        assert!(h.total_torsion.is_empty());
        for o in &h.per_orbit {
            assert_eq!(o.free_rank, 4);
            assert!(o.torsion.is_empty());
        }
    }

    #[test]
    fn first_homology_is_free_on_the_orbits() {
        for (q, r) in [
            (QuandleTable::trivial(1), 1),
            (QuandleTable::trivial(5), 5),
            (family_u(2, 3).unwrap().table, 2),
            (family_u_star(2, 2).unwrap().table, 3),
            (dihedral_three(), 1),
        ] {
            let h1 = homology_h1(&q);
            assert_eq!(h1.free_rank(), r);
            assert!(h1.torsion().is_empty());

            // Independent check through the full Smith reduction of d₂.
            let d2 = differential(&q, 2).unwrap();
            let direct = invariant_factors(&d2, q.size()).unwrap();
            assert_eq!(direct.free_rank(), r);
            assert!(direct.torsion().is_empty());
        }
    }

    #[test]
    fn path_chain_follows_the_edge_walk() {
        let q = family_graphic(&[2, 3]).unwrap().table;
        // Word g_b g_c⁻¹ g_d from a: the chain is
        // (a, b) − ((a◁b)◁̃c, c) + ((a◁b)◁̃c, d).
        let (a, b, c, d) = (0usize, 2usize, 3usize, 1usize);
        let w = GroupWord {
            letters: vec![(b, 1), (c, -1), (d, 1)],
        };
        let p = path_map(&q, a, &w).unwrap();
        let mid = q.op_inv(q.op(a, b), c);
        let mut expected: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        *expected.entry((a, b)).or_insert(0) += 1;
        *expected.entry((mid, c)).or_insert(0) -= 1;
        *expected.entry((mid, d)).or_insert(0) += 1;
        expected.retain(|_, v| *v != 0);
        assert_eq!(p.chain, expected);
        assert_eq!(p.endpoint, q.op(mid, d));

        // Empty word: zero chain, endpoint = start.
        let p = path_map(&q, a, &GroupWord::default()).unwrap();
        assert!(p.chain.is_empty());
        assert_eq!(p.endpoint, a);

        // Immediate cancellations collapse to the zero chain exactly.
        for start in 0..q.size() {
            for b in 0..q.size() {
                for letters in [vec![(b, 1), (b, -1)], vec![(b, -1), (b, 1)]] {
                    let p = path_map(&q, start, &GroupWord { letters }).unwrap();
                    assert!(p.chain.is_empty());
                    assert_eq!(p.endpoint, start);
                }
            }
        }
    }

    #[test]
    fn path_boundary_and_cocycle_laws_hold_on_random_words() {
        let tables = vec![
            family_u(2, 4).unwrap().table,
            family_graphic(&[2, 2, 2]).unwrap().table,
            dihedral_three(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(20260816);
        for q in &tables {
            let n = q.size();
            let d2 = differential(q, 2).unwrap();
            for _ in 0..150 {
                let w = random_word(&mut rng, n, 8);
                let a = rng.gen_range(0..n);
                let p = path_map(q, a, &w).unwrap();

                // Boundary identity: d₂(chain) = endpoint − start.
                assert_eq!(p.endpoint, act(q, a, &w).unwrap());
                let dense: Vec<BigInt> = p.dense(n).iter().map(|&x| BigInt::from(x)).collect();
                let boundary = d2.row_vec_mul(&dense).unwrap();
                let mut expected = vec![BigInt::zero(); n];
                expected[p.endpoint] += 1;
                expected[a] -= 1;
                assert_eq!(boundary, expected);

                // Chain-level cocycle law for a split of the word.
                let cut = rng.gen_range(0..=w.letters.len());
                let w1 = GroupWord {
                    letters: w.letters[..cut].to_vec(),
                };
                let w2 = GroupWord {
                    letters: w.letters[cut..].to_vec(),
                };
                let p1 = path_map(q, a, &w1).unwrap();
                let p2 = path_map(q, p1.endpoint, &w2).unwrap();
                let mut sum = p1.chain.clone();
                for (&key, &coeff) in &p2.chain {
                    let slot = sum.entry(key).or_insert(0);
                    *slot += coeff;
                    if *slot == 0 {
                        sum.remove(&key);
                    }
                }
                assert_eq!(p.chain, sum);
            }
        }
    }

    #[test]
    fn path_map_is_well_defined_modulo_boundaries() {
        // The two sides of the defining relation g_b g_c = g_c g_{b◁c}
        // trace chains that differ by the boundary of one square.
        for q in [
            family_u(2, 2).unwrap().table,
            family_graphic(&[1, 2]).unwrap().table,
            dihedral_three(),
        ] {
            let n = q.size();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let left = path_map(
                            &q,
                            a,
                            &GroupWord {
                                letters: vec![(b, 1), (c, 1)],
                            },
                        )
                        .unwrap();
                        let right = path_map(
                            &q,
                            a,
                            &GroupWord {
                                letters: vec![(c, 1), (q.op(b, c), 1)],
                            },
                        )
                        .unwrap();
                        assert_eq!(left.endpoint, right.endpoint);
                        assert!(chains_equal_mod_boundaries(
                            &q,
                            &left.dense(n),
                            &right.dense(n)
                        )
                        .unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn chain_comparison_detects_torsion_representatives() {
        let q = family_u(2, 2).unwrap().table;
        let n = q.size();
        // (x₀, x₁) − (x₀, x₀) is a cycle that is NOT a boundary: it
        // generates the first slice's ℤ₂.
        let mut u = vec![0i64; n * n];
        u[0 * n + 1] = 1;
        u[0 * n + 0] = -1;
        let zero = vec![0i64; n * n];
        assert!(!chains_equal_mod_boundaries(&q, &u, &zero).unwrap());
        assert!(chains_equal_mod_boundaries(&q, &u, &u).unwrap());

        // Doubling it lands in the boundaries (the class has order 2).
        let doubled: Vec<i64> = u.iter().map(|&x| 2 * x).collect();
        assert!(chains_equal_mod_boundaries(&q, &doubled, &zero).unwrap());

        // Adding any boundary row does not change the class.
        let slice = orbit_slice(&q, 0).unwrap();
        let mut shifted = u.clone();
        for (col, &(a, b)) in slice.basis().iter().enumerate() {
            shifted[a * n + b] += i64::try_from(slice.boundaries().get(0, col)).unwrap();
        }
        assert!(chains_equal_mod_boundaries(&q, &shifted, &u).unwrap());

        let short = vec![0i64; 3];
        assert!(chains_equal_mod_boundaries(&q, &short, &zero).is_err());
    }

    #[test]
    fn torsion_generator_chains_span_exactly_the_slice_torsion() {
        // Across a family zoo: the subgroup of H_{2;i} generated by the
        // torsion generator classes has the same invariant factors as the
        // torsion of the slice itself, each factor divides |Oᵢ|², and the
        // factor list is dominated by the parameter group's.
        let zoo = vec![
            family_u(2, 2).unwrap(),
            family_u(2, 3).unwrap(),
            family_u(4, 6).unwrap(),
            family_u_star(2, 2).unwrap(),
            family_u_starstar(2, 2).unwrap(),
            family_graphic(&[2, 2, 2]).unwrap(),
            family_graphic(&[1, 2, 3]).unwrap(),
        ];
        for lq in &zoo {
            let q = &lq.table;
            let n = q.size();
            let orbits = q.orbits();
            let gprime = parameter_group(&lq.parameters);
            for i in 0..orbits.count() {
                let slice = orbit_slice(q, i).unwrap();
                let slice_homology = slice.homology();
                let generators = torsion_generators(q, i).unwrap();

                // Express the generators in cycle coordinates and compute
                // the subgroup they generate modulo boundaries.
                let rows: Vec<Vec<BigInt>> = generators
                    .iter()
                    .map(|chain| {
                        slice
                            .basis()
                            .iter()
                            .map(|&(a, b)| BigInt::from(chain[a * n + b]))
                            .collect()
                    })
                    .collect();
                let as_matrix = IntMatrix::from_rows(rows, slice.basis().len()).unwrap();
                let coords = slice.cycle_coordinates(&as_matrix).unwrap();
                let stacked = coords.vstack(slice.boundary_coordinates()).unwrap();
                let subgroup = lattice_quotient(&stacked, slice.boundary_coordinates()).unwrap();

                assert_eq!(subgroup.free_rank(), 0, "torsion subgroup is finite");
                assert_eq!(
                    subgroup.torsion(),
                    &slice_homology.torsion[..],
                    "orbit {i} of size-{n} table"
                );

                // Divisibility bound: each factor divides |Oᵢ|².
                let bound = BigInt::from(orbits.orbits[i].len().pow(2));
                for d in &slice_homology.torsion {
                    assert!(bound.clone() % d == BigInt::zero());
                }
                // Tᵢ is a quotient of G′: factors dominated largest-to-largest.
                let gfactors = gprime.torsion();
                assert!(gfactors.len() >= slice_homology.torsion.len());
                for (k, d) in slice_homology.torsion.iter().rev().enumerate() {
                    let g = &gfactors[gfactors.len() - 1 - k];
                    assert!(g % d == BigInt::zero(), "T factor {d} divides G' factor {g}");
                }
            }
        }

        // Singleton orbits contribute no torsion: the third orbit of the
        // fixed-point extension.
        let q = family_u_star(2, 2).unwrap().table;
        let gens = torsion_generators(&q, 2).unwrap();
        let slice = orbit_slice(&q, 2).unwrap();
        assert!(slice.homology().torsion.is_empty());
        // Its generator chains are all boundaries.
        let n = q.size();
        let zero = vec![0i64; n * n];
        for g in &gens {
            assert!(chains_equal_mod_boundaries(&q, g, &zero).unwrap());
        }

        // The headline generator of the first slice of U_{2,2}.
        let q = family_u(2, 2).unwrap().table;
        let gens = torsion_generators(&q, 0).unwrap();
        let mut expected = vec![0i64; 16];
        expected[0 * 4 + 1] = 1;
        expected[0 * 4 + 0] = -1;
        assert!(gens.contains(&expected));

        assert!(matches!(
            torsion_generators(&dihedral_three(), 0),
            Err(Error::NotTwoReductive { .. })
        ));
    }

    #[test]
    fn abelian_structure_group_forces_torsion_free_homology() {
        for n in 1..=6u64 {
            for p in enumerate_abelian_quandles(n).unwrap() {
                let table = build_fp_quandle(&p).unwrap();
                let cert = structure_group_is_free_abelian(&table);
                let h = homology_h2(&table).unwrap();
                assert_eq!(
                    h.total_free_rank,
                    p.orbit_count() * p.orbit_count(),
                    "rank r² for {p}"
                );
                if cert.free_abelian {
                    assert!(h.total_torsion.is_empty(), "torsion-free for {p}");
                }
            }
        }
    }

    #[test]
    fn size_guards_reject_oversized_tables() {
        let big = QuandleTable::trivial(MAX_HOMOLOGY_SIZE + 1);
        assert!(matches!(
            homology_h2(&big),
            Err(Error::SizeTooLarge { .. })
        ));
        assert!(matches!(
            orbit_slice(&big, 0),
            Err(Error::SizeTooLarge { .. })
        ));
        let zero = vec![0i64; (MAX_HOMOLOGY_SIZE + 1) * (MAX_HOMOLOGY_SIZE + 1)];
        assert!(matches!(
            chains_equal_mod_boundaries(&big, &zero, &zero),
            Err(Error::SizeTooLarge { .. })
        ));
        assert!(matches!(
            torsion_generators(&big, 0),
            Err(Error::SizeTooLarge { .. })
        ));
    }
}
