//! Quandle multiplication tables and the structure read off from them.
//!
//! A table stores `a ◁ b` at row `a`, column `b`. Validation checks, in
//! order: shape, entry range, each column a permutation (row scan per
//! column), idempotence of the diagonal, and self-distributivity on the
//! first violating triple `(a, b, c)` in lexicographic order.

use crate::perm;
use crate::Error;

/// A validated finite quandle. Elements are `0..n`; the inverse table for
/// the undo operation `a ◁̃ b` is precomputed on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuandleTable {
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

/// The decomposition of the element set into orbits: the minimal subsets
/// closed under all translations. Orbits are sorted by minimal element and
/// each orbit lists its elements in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    /// `orbit_of[a]` is the index of the orbit containing `a`.
    pub orbit_of: Vec<usize>,
    /// The orbits themselves, each sorted increasingly.
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitDecomposition {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    /// Position of element `a` inside its (sorted) orbit.
    pub fn position(&self, a: usize) -> usize {
        let orbit = &self.orbits[self.orbit_of[a]];
        orbit.binary_search(&a).expect("element is in its orbit")
    }
}

/// For a 2-reductive quandle, translation by any element of a fixed orbit
/// `j` restricts to one and the same permutation of each orbit `i`. The
/// permutation `f[i][j]` is stored in position space: it maps the position
/// of `a` in orbit `i` to the position of `a ◁ b` (`b ∈ O_j`).
///
/// Construction verifies well-definedness and, per orbit, that the
/// translation permutations commute and generate a group acting freely and
/// transitively on the orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerTranslations {
    pub orbits: OrbitDecomposition,
    /// `f[i][j]`: how orbit `j` translates orbit `i`, in position space.
    pub f: Vec<Vec<Vec<usize>>>,
}

impl QuandleTable {
    /// Validate a raw table against the quandle axioms.
    pub fn validate(raw: &[Vec<usize>]) -> Result<Self, Error> {
        let n = raw.len();
        if n == 0 {
            return Err(Error::BadShape {
                rows: 0,
                row: 0,
                len: 0,
            });
        }
        for (i, row) in raw.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadShape {
                    rows: n,
                    row: i,
                    len: row.len(),
                });
            }
        }
        for (i, row) in raw.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        // each column is a permutation
        for b in 0..n {
            let mut seen = vec![false; n];
            for row in raw {
                let v = row[b];
                if seen[v] {
                    return Err(Error::NotAPermutation { column: b });
                }
                seen[v] = true;
            }
        }
        // idempotence
        for (a, row) in raw.iter().enumerate() {
            if row[a] != a {
                return Err(Error::NotIdempotent { element: a });
            }
        }
        // self-distributivity
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if raw[raw[a][b]][c] != raw[raw[a][c]][raw[b][c]] {
                        return Err(Error::NotSelfDistributive { a, b, c });
                    }
                }
            }
        }

        let table: Vec<usize> = raw.iter().flatten().copied().collect();
        let mut inverse = vec![0usize; n * n];
        for b in 0..n {
            for a in 0..n {
                inverse[table[a * n + b] * n + b] = a;
            }
        }
        Ok(QuandleTable { n, table, inverse })
    }

    /// Wrap a flat row-major table that is known to satisfy the quandle
    /// axioms by construction, skipping the `O(n³)` validation pass. Column
    /// bijectivity is still checked (cheaply) while precomputing inverses.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> Self {
        assert_eq!(table.len(), n * n);
        let mut inverse = vec![usize::MAX; n * n];
        for b in 0..n {
            for a in 0..n {
                let slot = &mut inverse[table[a * n + b] * n + b];
                assert_eq!(*slot, usize::MAX, "column {b} is not a permutation");
                *slot = a;
            }
        }
        QuandleTable { n, table, inverse }
    }

    /// The trivial quandle: `a ◁ b = a` for all `a, b`.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1, "a quandle is nonempty");
        let table: Vec<usize> = (0..n).flat_map(|a| std::iter::repeat_n(a, n)).collect();
        let inverse = table.clone();
        QuandleTable { n, table, inverse }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `a ◁ b`
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    /// `a ◁̃ b`, the inverse translation: `(a ◁ b) ◁̃ b = a`.
    pub fn op_inv(&self, a: usize, b: usize) -> usize {
        self.inverse[a * self.n + b]
    }

    /// The table as nested rows (for serialization).
    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| self.table[a * self.n..(a + 1) * self.n].to_vec())
            .collect()
    }

    /// Relabel elements by a permutation `sigma` of `0..n`:
    /// the new table satisfies `σ(a) ◁' σ(b) = σ(a ◁ b)`.
    pub fn relabel(&self, sigma: &[usize]) -> QuandleTable {
        assert_eq!(sigma.len(), self.n);
        let n = self.n;
        let mut table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                table[sigma[a] * n + sigma[b]] = sigma[self.op(a, b)];
            }
        }
        let mut inverse = vec![0usize; n * n];
        for b in 0..n {
            for a in 0..n {
                inverse[table[a * n + b] * n + b] = a;
            }
        }
        QuandleTable {
            n,
            table,
            inverse,
        }
    }

    /// Does `a ◁ (b ◁ c) = a ◁ b` hold for all triples?
    pub fn is_two_reductive(&self) -> bool {
        self.two_reductive_witness().is_none()
    }

    /// First triple violating 2-reductivity, in lexicographic order.
    pub fn two_reductive_witness(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    if self.op(a, self.op(b, c)) != self.op(a, b) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Does `(a ◁ b) ◁ c = (a ◁ c) ◁ b` hold for all triples?
    pub fn is_abelian(&self) -> bool {
        self.abelian_witness().is_none()
    }

    /// First triple violating the abelian law, in lexicographic order.
    pub fn abelian_witness(&self) -> Option<(usize, usize, usize)> {
        for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    if self.op(self.op(a, b), c) != self.op(self.op(a, c), b) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Orbit decomposition under the group generated by all translations.
    ///
    /// Forward closure under the translations suffices: each translation has
    /// finite order, so its inverse is a forward power.
    pub fn orbits(&self) -> OrbitDecomposition {
        let n = self.n;
        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let idx = orbits.len();
            let mut members = vec![start];
            orbit_of[start] = idx;
            let mut frontier = vec![start];
            while let Some(a) = frontier.pop() {
                for b in 0..n {
                    let y = self.op(a, b);
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = idx;
                        members.push(y);
                        frontier.push(y);
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        OrbitDecomposition { orbit_of, orbits }
    }

    /// The orbit-to-orbit translation permutations of a 2-reductive quandle.
    ///
    /// Checks, in order: 2-reductivity; that translations by elements of the
    /// same orbit agree (well-definedness); per orbit, that the translations
    /// pairwise commute and that the group they generate is transitive and
    /// free. The freeness rejection cannot fire for valid input — 2-reductive
    /// quandles always pass — so it signals an internal inconsistency.
    pub fn inner_translations(&self) -> Result<InnerTranslations, Error> {
        if let Some((a, b, c)) = self.two_reductive_witness() {
            return Err(Error::NotTwoReductive { a, b, c });
        }
        let orbits = self.orbits();
        let r = orbits.count();
        let mut f: Vec<Vec<Vec<usize>>> = Vec::with_capacity(r);
        for i in 0..r {
            let oi = &orbits.orbits[i];
            let mut row = Vec::with_capacity(r);
            for j in 0..r {
                let oj = &orbits.orbits[j];
                let rep = oj[0];
                let map: Vec<usize> = oi
                    .iter()
                    .map(|&a| orbits.position(self.op(a, rep)))
                    .collect();
                // well-definedness across the orbit
                for &b in &oj[1..] {
                    for (pos, &a) in oi.iter().enumerate() {
                        if orbits.position(self.op(a, b)) != map[pos] {
                            return Err(Error::NotTwoReductive { a, b: rep, c: b });
                        }
                    }
                }
                row.push(map);
            }
            f.push(row);
        }
        for i in 0..r {
            let size = orbits.orbits[i].len();
            // commutativity
            for j in 0..r {
                for k in j + 1..r {
                    if perm::compose(&f[i][j], &f[i][k]) != perm::compose(&f[i][k], &f[i][j]) {
                        return Err(Error::NotAbelian {
                            a: orbits.orbits[i][0],
                            b: orbits.orbits[j][0],
                            c: orbits.orbits[k][0],
                        });
                    }
                }
            }
            // transitive and free
            if !perm::is_transitive(&f[i], size) {
                return Err(Error::FreenessViolated { orbit: i });
            }
            if perm::group_closure(&f[i], size).len() != size {
                return Err(Error::FreenessViolated { orbit: i });
            }
        }
        Ok(InnerTranslations { orbits, f })
    }
}
