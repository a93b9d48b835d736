//! Parameter data for finite abelian quandles, and the translation in both
//! directions between parameters and multiplication tables.
//!
//! An abelian quandle with `r` **ordered** orbits is described, orbit by
//! orbit, by a lower-triangular collection of integers. Orbit `i`'s
//! collection has `r − 1` rows; row `j` (1-based) is
//! `(m_{j,1}, …, m_{j,j−1}, m_j)` with `m_j ≥ 1` and `0 ≤ m_{j,k} < m_k`.
//! The collection presents a finite abelian group
//!
//! ```text
//! G = ⟨ x_1, …, x_{r−1} | x_k x_l = x_l x_k,  x_1^{m_{j,1}} ⋯ x_{j−1}^{m_{j,j−1}} x_j^{m_j} = 1 ⟩
//! ```
//!
//! of order `m_1 ⋯ m_{r−1}`. Orbit `i` is a copy of its group, and the
//! quandle operation is `a ◁ b = a · x_k` for `a` in orbit `i` and `b` in
//! orbit `i + k mod r` (with `x_0 = 1`). Conversely, the parameters can be
//! recovered from any abelian quandle table, and they are a complete
//! isomorphism invariant once the orbit order is fixed.
//!
//! Every group element has a unique normal form `x_1^{e_1} ⋯ x_{r−1}^{e_{r−1}}`
//! with `0 ≤ e_j < m_j`. Elements are indexed by counting those digit
//! vectors with `e_1` varying fastest, which fixes a canonical labelling of
//! the built quandle: orbit 1's elements first, each orbit internally in
//! counting order.

use crate::perm::next_permutation;
use crate::table::{InnerTranslations, OrbitDecomposition, QuandleTable};
use crate::Error;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Entries of a parameter collection must stay below this bound so that all
/// normal-form arithmetic fits comfortably in `i128`.
pub const MAX_PARAM_ENTRY: u64 = 1 << 32;

/// Largest quandle (total element count) the table builder materialises.
pub const MAX_BUILD_SIZE: u128 = 4096;

/// Largest size accepted by the abelian-quandle enumerator.
pub const MAX_ABELIAN_ENUMERATION_SIZE: u64 = 10;

/// Cap on the number of orbit orderings the canonical-form search may visit.
pub const MAX_ORBIT_ORDERINGS: u128 = 100_000;

/// One orbit's lower-triangular parameter collection. Row `j` (0-based) has
/// `j + 1` entries: `j` offsets followed by the diagonal entry `m_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamCollection {
    rows: Vec<Vec<u64>>,
}

/// An element of the abelian group presented by a [`ParamCollection`], in
/// normal form: exponent `e_j` of the `j`-th generator, `0 ≤ e_j < m_j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GmElement {
    exponents: Vec<u64>,
}

impl GmElement {
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
}

/// Bring a raw exponent vector to normal form, in place. One downward pass
/// suffices: reducing coordinate `j` modulo `m_j` trades the quotient for
/// offset adjustments on strictly lower coordinates.
///
/// Entry magnitudes stay far below `i128::MAX`: all collection entries are
/// `< 2³²`, the offsets in row `j` are bounded by the *target* coordinate's
/// diagonal, and coordinates with diagonal 1 never propagate anything, so
/// the pass can only grow values by a factor polynomial in the number of
/// coordinates with diagonal `≥ 2` — at most a few dozen for any quandle
/// this crate materialises.
fn reduce_in_place(rows: &[Vec<u64>], n: &mut [i128]) {
    debug_assert_eq!(rows.len(), n.len());
    for j in (0..rows.len()).rev() {
        let m = rows[j][j] as i128;
        let q = n[j].div_euclid(m);
        if q != 0 {
            n[j] -= q * m;
            for k in 0..j {
                n[k] -= q * rows[j][k] as i128;
            }
        }
    }
}

impl ParamCollection {
    /// Validate a lower-triangular collection: row `j` has `j + 1` entries,
    /// diagonals are `≥ 1`, each offset is smaller than the diagonal of its
    /// column, and everything is below [`MAX_PARAM_ENTRY`].
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self, Error> {
        for (j, row) in rows.iter().enumerate() {
            if row.len() != j + 1 {
                return Err(Error::InvalidParameters {
                    reason: format!("row {} must have {} entries, found {}", j, j + 1, row.len()),
                });
            }
            for (k, &v) in row.iter().enumerate() {
                if v >= MAX_PARAM_ENTRY {
                    return Err(Error::InvalidParameters {
                        reason: format!("entry ({j},{k}) = {v} exceeds the bound {MAX_PARAM_ENTRY}"),
                    });
                }
                if k == j && v == 0 {
                    return Err(Error::InvalidParameters {
                        reason: format!("diagonal entry {j} must be positive"),
                    });
                }
            }
        }
        for (j, row) in rows.iter().enumerate() {
            for k in 0..j {
                if row[k] >= rows[k][k] {
                    return Err(Error::InvalidParameters {
                        reason: format!(
                            "offset ({j},{k}) = {} must be smaller than the diagonal {}",
                            row[k], rows[k][k]
                        ),
                    });
                }
            }
        }
        Ok(ParamCollection { rows })
    }

    /// Number of group generators (= number of rows).
    pub fn generator_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Diagonal entry `m_{j+1}` of row `j` (0-based).
    pub fn diagonal(&self, j: usize) -> u64 {
        self.rows[j][j]
    }

    /// Group order: the product of the diagonal entries.
    pub fn order(&self) -> u128 {
        self.rows
            .iter()
            .enumerate()
            .fold(1u128, |acc, (j, row)| acc.saturating_mul(row[j] as u128))
    }

    pub fn identity(&self) -> GmElement {
        GmElement {
            exponents: vec![0; self.rows.len()],
        }
    }

    /// Generator `x_j` in normal form, where `j` is 1-based and `x_0` is the
    /// identity (matching the quandle operation's shift convention).
    pub fn generator(&self, j: usize) -> GmElement {
        assert!(j <= self.rows.len(), "generator index out of range");
        if j == 0 {
            return self.identity();
        }
        let mut raw = vec![0i128; self.rows.len()];
        raw[j - 1] = 1;
        self.reduce(&raw)
    }

    /// Normal form of the product `x_1^{raw_1} ⋯ x_g^{raw_g}` for an
    /// arbitrary (signed) exponent vector.
    pub fn reduce(&self, raw: &[i128]) -> GmElement {
        assert_eq!(raw.len(), self.rows.len(), "exponent vector length");
        let mut v = raw.to_vec();
        reduce_in_place(&self.rows, &mut v);
        GmElement {
            exponents: v.into_iter().map(|x| x as u64).collect(),
        }
    }

    pub fn multiply(&self, a: &GmElement, b: &GmElement) -> GmElement {
        let raw: Vec<i128> = a
            .exponents
            .iter()
            .zip(&b.exponents)
            .map(|(&x, &y)| x as i128 + y as i128)
            .collect();
        self.reduce(&raw)
    }

    pub fn inverse(&self, a: &GmElement) -> GmElement {
        let raw: Vec<i128> = a.exponents.iter().map(|&x| -(x as i128)).collect();
        self.reduce(&raw)
    }

    pub fn power(&self, a: &GmElement, e: i64) -> GmElement {
        let raw: Vec<i128> = a.exponents.iter().map(|&x| x as i128 * e as i128).collect();
        self.reduce(&raw)
    }

    /// All group elements, in counting order (first exponent fastest).
    /// Allocates `order()` elements, so callers must keep orders moderate.
    pub fn elements(&self) -> Vec<GmElement> {
        let order = self.order();
        assert!(order <= 1 << 24, "group too large to enumerate");
        let g = self.rows.len();
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = vec![0u64; g];
        loop {
            out.push(GmElement {
                exponents: cur.clone(),
            });
            let mut j = 0;
            loop {
                if j == g {
                    return out;
                }
                cur[j] += 1;
                if cur[j] < self.rows[j][j] {
                    break;
                }
                cur[j] = 0;
                j += 1;
            }
        }
    }

    /// Position of a normal form in the counting order.
    pub fn index_of(&self, el: &GmElement) -> usize {
        self.index_of_exponents(&el.exponents)
    }

    fn index_of_exponents(&self, exps: &[u64]) -> usize {
        assert_eq!(exps.len(), self.rows.len());
        let mut index = 0u128;
        let mut stride = 1u128;
        for (j, &e) in exps.iter().enumerate() {
            debug_assert!(e < self.rows[j][j]);
            index += e as u128 * stride;
            stride *= self.rows[j][j] as u128;
        }
        index.try_into().expect("group order fits in memory")
    }

    /// Inverse of [`Self::index_of`].
    pub fn element_at(&self, index: usize) -> GmElement {
        let mut rest = index as u128;
        let exponents: Vec<u64> = self
            .rows
            .iter()
            .enumerate()
            .map(|(j, row)| {
                let m = row[j] as u128;
                let e = (rest % m) as u64;
                rest /= m;
                e
            })
            .collect();
        assert_eq!(rest, 0, "index out of range");
        GmElement { exponents }
    }
}

impl fmt::Display for ParamCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, row) in self.rows.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The full parameter datum of an abelian quandle with ordered orbits: one
/// collection per orbit, each with `orbit count − 1` rows. (A one-element
/// quandle is the degenerate case of a single empty collection.)
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpParameters {
    collections: Vec<ParamCollection>,
}

impl FpParameters {
    pub fn new(collections: Vec<ParamCollection>) -> Result<Self, Error> {
        let r = collections.len();
        if r == 0 {
            return Err(Error::InvalidParameters {
                reason: "at least one orbit is required".into(),
            });
        }
        for (i, c) in collections.iter().enumerate() {
            if c.generator_count() != r - 1 {
                return Err(Error::InvalidParameters {
                    reason: format!(
                        "orbit {} has {} rows; a family of {} collections needs {} rows each",
                        i,
                        c.generator_count(),
                        r,
                        r - 1
                    ),
                });
            }
        }
        Ok(FpParameters { collections })
    }

    pub fn orbit_count(&self) -> usize {
        self.collections.len()
    }

    pub fn collections(&self) -> &[ParamCollection] {
        &self.collections
    }

    pub fn orbit_sizes(&self) -> Vec<u128> {
        self.collections.iter().map(|c| c.order()).collect()
    }

    pub fn total_size(&self) -> u128 {
        self.collections
            .iter()
            .fold(0u128, |acc, c| acc.saturating_add(c.order()))
    }
}

/// Order parameters by orbit count, then by the orbit size sequence, then by
/// the collections themselves — so the minimum over reorderings has
/// ascending orbit sizes.
impl Ord for FpParameters {
    fn cmp(&self, other: &Self) -> Ordering {
        self.orbit_count()
            .cmp(&other.orbit_count())
            .then_with(|| self.orbit_sizes().cmp(&other.orbit_sizes()))
            .then_with(|| self.collections.cmp(&other.collections))
    }
}

impl PartialOrd for FpParameters {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FpParameters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.collections.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Materialise the quandle table described by a parameter datum.
///
/// Elements are numbered orbit by orbit, each orbit in the counting order of
/// its group. Guarded by [`MAX_BUILD_SIZE`].
pub fn build_fp_quandle(params: &FpParameters) -> Result<QuandleTable, Error> {
    let total = params.total_size();
    if total > MAX_BUILD_SIZE {
        return Err(Error::SizeTooLarge {
            size: total.min(usize::MAX as u128) as usize,
            max: MAX_BUILD_SIZE as usize,
        });
    }
    let n = total as usize;
    let r = params.orbit_count();
    let sizes: Vec<usize> = params.collections.iter().map(|c| c.order() as usize).collect();
    let mut offsets = Vec::with_capacity(r);
    let mut acc = 0usize;
    for &s in &sizes {
        offsets.push(acc);
        acc += s;
    }

    let mut table = vec![0usize; n * n];
    for i in 0..r {
        let coll = &params.collections[i];
        let elems = coll.elements();
        // index-space translation a ↦ a · x_k, one per shift
        let shift: Vec<Vec<usize>> = (0..r)
            .map(|k| {
                let gk = coll.generator(k);
                elems
                    .iter()
                    .map(|e| coll.index_of(&coll.multiply(e, &gk)))
                    .collect()
            })
            .collect();
        for p in 0..sizes[i] {
            let a = offsets[i] + p;
            let row = &mut table[a * n..(a + 1) * n];
            for j in 0..r {
                let k = (j + r - i) % r;
                let image = offsets[i] + shift[k][p];
                for b in offsets[j]..offsets[j] + sizes[j] {
                    row[b] = image;
                }
            }
        }
    }
    Ok(QuandleTable::from_flat_unchecked(n, table))
}

/// Extract one orbit's collection from its translation permutations
/// (`gens[k]` is the permutation induced by orbit `i + k + 1 mod r`), along
/// with the normal form attached to each orbit position.
///
/// Row `j` is found by walking the `j`-th permutation from the base position
/// until it first re-enters the part of the orbit already reached by the
/// previous permutations; the step count is the diagonal entry, and the
/// offsets are the normal form of the inverse of the landing element.
fn extract_orbit(
    size: usize,
    gens: &[&Vec<usize>],
    orbit_label: usize,
) -> Result<(Vec<Vec<u64>>, Vec<Vec<u64>>), Error> {
    let g = gens.len();
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(g);
    let mut exps_of: Vec<Option<Vec<u64>>> = vec![None; size];
    exps_of[0] = Some(vec![0u64; g]);
    let mut mapped: Vec<usize> = vec![0];

    for (jj, fj) in gens.iter().enumerate() {
        let mut p = 0usize;
        let mut t = 0u64;
        let landing: Vec<u64> = loop {
            p = fj[p];
            t += 1;
            if let Some(e) = &exps_of[p] {
                break e[..jj].to_vec();
            }
        };
        let mut raw: Vec<i128> = landing.iter().map(|&x| -(x as i128)).collect();
        reduce_in_place(&rows, &mut raw);
        let mut row: Vec<u64> = raw.into_iter().map(|x| x as u64).collect();
        row.push(t);
        rows.push(row);

        // extend the position ↦ normal form map along fj
        let snapshot = mapped.clone();
        let mut level = snapshot.clone();
        for e in 1..t {
            for pos in level.iter_mut() {
                *pos = fj[*pos];
            }
            for (&p0, &p) in snapshot.iter().zip(level.iter()) {
                let mut exps = exps_of[p0].clone().expect("snapshot positions are mapped");
                exps[jj] = e;
                if exps_of[p].is_some() {
                    return Err(Error::FreenessViolated { orbit: orbit_label });
                }
                exps_of[p] = Some(exps);
                mapped.push(p);
            }
        }
    }
    if mapped.len() != size {
        return Err(Error::FreenessViolated { orbit: orbit_label });
    }
    let exps = exps_of
        .into_iter()
        .map(|o| o.expect("all positions reached"))
        .collect();
    Ok((rows, exps))
}

/// Extract parameters with the orbits taken in the order `pi` (`pi[new]` is
/// the orbit index in the table's own orbit numbering). Also returns the
/// relabelling `sigma` with `table.relabel(&sigma) == build_fp_quandle(&params)`.
fn extract_for_ordering(
    t: &InnerTranslations,
    pi: &[usize],
) -> Result<(FpParameters, Vec<usize>), Error> {
    let r = pi.len();
    let n: usize = t.orbits.orbits.iter().map(|o| o.len()).sum();
    let mut collections = Vec::with_capacity(r);
    let mut sigma = vec![0usize; n];
    let mut offset = 0usize;
    for new_i in 0..r {
        let old_i = pi[new_i];
        let orbit = &t.orbits.orbits[old_i];
        let gens: Vec<&Vec<usize>> = (1..r)
            .map(|k| &t.f[old_i][pi[(new_i + k) % r]])
            .collect();
        let (rows, exps) = extract_orbit(orbit.len(), &gens, old_i)?;
        let coll = ParamCollection::new(rows).expect("extracted rows satisfy the constraints");
        for (pos, e) in exps.iter().enumerate() {
            sigma[orbit[pos]] = offset + coll.index_of_exponents(e);
        }
        offset += orbit.len();
        collections.push(coll);
    }
    let params = FpParameters::new(collections).expect("one collection per orbit");
    Ok((params, sigma))
}

/// Read the parameters of an abelian quandle off its table, with orbits in
/// the table's own order (sorted by minimal element). Fails with a witness
/// if the table is not abelian.
pub fn extract_parameters(q: &QuandleTable) -> Result<FpParameters, Error> {
    extract_parameters_with_map(q).map(|(params, _)| params)
}

/// Like [`extract_parameters`], but also returns the relabelling `sigma`
/// with `q.relabel(&sigma) == build_fp_quandle(&params)`.
pub fn extract_parameters_with_map(q: &QuandleTable) -> Result<(FpParameters, Vec<usize>), Error> {
    let t = q.inner_translations()?;
    let identity: Vec<usize> = (0..t.orbits.count()).collect();
    extract_for_ordering(&t, &identity)
}

/// All orbit orderings that can realise the minimal parameter datum:
/// sizes must come in ascending order, and only permutations within blocks
/// of equal size matter. One-element orbits whose translation columns
/// coincide are interchangeable and are not permuted against each other.
fn orbit_orderings(q: &QuandleTable, orbits: &OrbitDecomposition) -> Result<Vec<Vec<usize>>, Error> {
    let r = orbits.count();
    let mut by_size: Vec<usize> = (0..r).collect();
    by_size.sort_by_key(|&o| (orbits.orbits[o].len(), o));

    // arrangements per block of equal-size orbits
    let mut block_arrangements: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut start = 0;
    while start < r {
        let size = orbits.orbits[by_size[start]].len();
        let mut end = start;
        while end < r && orbits.orbits[by_size[end]].len() == size {
            end += 1;
        }
        let block: Vec<usize> = by_size[start..end].to_vec();
        let arrangements = if size == 1 {
            // interchangeable singletons: distinct translation columns only
            let mut class_of = Vec::with_capacity(block.len());
            let mut signatures: Vec<Vec<usize>> = Vec::new();
            let mut members: Vec<Vec<usize>> = Vec::new();
            for &o in &block {
                let a = orbits.orbits[o][0];
                let column: Vec<usize> = (0..q.size()).map(|x| q.op(x, a)).collect();
                match signatures.iter().position(|s| *s == column) {
                    Some(c) => {
                        class_of.push(c);
                        members[c].push(o);
                    }
                    None => {
                        class_of.push(signatures.len());
                        members.push(vec![o]);
                        signatures.push(column);
                    }
                }
            }
            let mut seq = class_of;
            seq.sort_unstable();
            let mut out = Vec::new();
            loop {
                let mut next = vec![0usize; members.len()];
                let arrangement: Vec<usize> = seq
                    .iter()
                    .map(|&c| {
                        let o = members[c][next[c]];
                        next[c] += 1;
                        o
                    })
                    .collect();
                out.push(arrangement);
                if out.len() as u128 > MAX_ORBIT_ORDERINGS {
                    return Err(Error::SizeTooLarge {
                        size: out.len(),
                        max: MAX_ORBIT_ORDERINGS as usize,
                    });
                }
                if !next_permutation(&mut seq) {
                    break;
                }
            }
            out
        } else {
            let mut seq = block.clone();
            let mut out = Vec::new();
            loop {
                out.push(seq.clone());
                if out.len() as u128 > MAX_ORBIT_ORDERINGS {
                    return Err(Error::SizeTooLarge {
                        size: out.len(),
                        max: MAX_ORBIT_ORDERINGS as usize,
                    });
                }
                if !next_permutation(&mut seq) {
                    break;
                }
            }
            out
        };
        block_arrangements.push(arrangements);
        start = end;
    }

    let count = block_arrangements
        .iter()
        .fold(1u128, |acc, b| acc.saturating_mul(b.len() as u128));
    if count > MAX_ORBIT_ORDERINGS {
        return Err(Error::SizeTooLarge {
            size: count.min(usize::MAX as u128) as usize,
            max: MAX_ORBIT_ORDERINGS as usize,
        });
    }

    let mut orderings = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; block_arrangements.len()];
    'product: loop {
        let mut ordering = Vec::with_capacity(r);
        for (b, &i) in block_arrangements.iter().zip(idx.iter()) {
            ordering.extend_from_slice(&b[i]);
        }
        orderings.push(ordering);
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < block_arrangements[k].len() {
                continue 'product;
            }
            idx[k] = 0;
            k += 1;
        }
        break;
    }
    Ok(orderings)
}

/// The minimal parameter datum of an abelian quandle over all orbit
/// orderings — a canonical form for the isomorphism class.
pub fn canonical_parameters(q: &QuandleTable) -> Result<FpParameters, Error> {
    let t = q.inner_translations()?;
    let orderings = orbit_orderings(q, &t.orbits)?;
    let mut best: Option<FpParameters> = None;
    for pi in &orderings {
        let (params, _) = extract_for_ordering(&t, pi)?;
        if best.as_ref().is_none_or(|b| params < *b) {
            best = Some(params);
        }
    }
    Ok(best.expect("at least one ordering"))
}

/// All abelian quandles of size `n` up to isomorphism, as canonical
/// parameter data in ascending order. Guarded by
/// [`MAX_ABELIAN_ENUMERATION_SIZE`].
pub fn enumerate_abelian_quandles(n: u64) -> Result<Vec<FpParameters>, Error> {
    if n == 0 {
        return Err(Error::BadShape {
            rows: 0,
            row: 0,
            len: 0,
        });
    }
    if n > MAX_ABELIAN_ENUMERATION_SIZE {
        return Err(Error::SizeTooLarge {
            size: n as usize,
            max: MAX_ABELIAN_ENUMERATION_SIZE as usize,
        });
    }
    let mut seen: BTreeSet<FpParameters> = BTreeSet::new();
    for r in 1..=n as usize {
        for sizes in ascending_partitions(n, r) {
            let per_orbit: Vec<Vec<ParamCollection>> = sizes
                .iter()
                .map(|&s| collections_of_order(s, r - 1))
                .collect();
            if per_orbit.iter().any(|v| v.is_empty()) {
                continue;
            }
            let mut idx = vec![0usize; r];
            'product: loop {
                let collections: Vec<ParamCollection> = idx
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| per_orbit[i][c].clone())
                    .collect();
                let params = FpParameters::new(collections).expect("matching row counts");
                let table = build_fp_quandle(&params).expect("size bounded by n");
                let canon = canonical_parameters(&table).expect("built tables are abelian");
                seen.insert(canon);
                let mut k = 0;
                while k < r {
                    idx[k] += 1;
                    if idx[k] < per_orbit[k].len() {
                        continue 'product;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                break;
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Partitions of `n` into exactly `parts` parts, each part `≥ 1`, listed in
/// ascending order within each partition.
fn ascending_partitions(n: u64, parts: usize) -> Vec<Vec<u64>> {
    fn rec(n: u64, parts: usize, min: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 0 {
            if n == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut m = min;
        while m * parts as u64 <= n {
            cur.push(m);
            rec(n - m, parts - 1, m, cur, out);
            cur.pop();
            m += 1;
        }
    }
    let mut out = Vec::new();
    rec(n, parts, 1, &mut Vec::new(), &mut out);
    out
}

/// Every valid collection with `gens` rows whose group order is exactly
/// `order`: all ordered factorizations of `order` into diagonals, combined
/// with all admissible offset choices.
fn collections_of_order(order: u64, gens: usize) -> Vec<ParamCollection> {
    fn rec(remaining: u64, gens_left: usize, rows: &mut Vec<Vec<u64>>, out: &mut Vec<ParamCollection>) {
        if gens_left == 0 {
            if remaining == 1 {
                out.push(ParamCollection::new(rows.clone()).expect("constructed within bounds"));
            }
            return;
        }
        let diags: Vec<u64> = rows.iter().enumerate().map(|(k, row)| row[k]).collect();
        for m in 1..=remaining {
            if remaining % m != 0 {
                continue;
            }
            for mut offs in offset_vectors(&diags) {
                offs.push(m);
                rows.push(offs);
                rec(remaining / m, gens_left - 1, rows, out);
                rows.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(order, gens, &mut Vec::new(), &mut out);
    out
}

/// All vectors `(o_1, …, o_g)` with `0 ≤ o_k < diags[k]`, in counting order.
fn offset_vectors(diags: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; diags.len()];
    loop {
        out.push(cur.clone());
        let mut k = 0;
        loop {
            if k == diags.len() {
                return out;
            }
            cur[k] += 1;
            if cur[k] < diags[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{are_isomorphic, enumerate_quandles};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn coll(rows: &[&[u64]]) -> ParamCollection {
        ParamCollection::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn params(collections: &[&[&[u64]]]) -> FpParameters {
        FpParameters::new(collections.iter().map(|c| coll(c)).collect()).unwrap()
    }

    fn u23_rows() -> Vec<Vec<usize>> {
        vec![
            vec![0, 0, 1, 1, 1],
            vec![1, 1, 0, 0, 0],
            vec![3, 3, 2, 2, 2],
            vec![4, 4, 3, 3, 3],
            vec![2, 2, 4, 4, 4],
        ]
    }

    #[test]
    fn validation_rejects_bad_collections() {
        assert!(matches!(
            ParamCollection::new(vec![vec![2, 0]]),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            ParamCollection::new(vec![vec![0]]),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            ParamCollection::new(vec![vec![2], vec![2, 3]]),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            ParamCollection::new(vec![vec![1 << 32]]),
            Err(Error::InvalidParameters { .. })
        ));
        // offsets strictly below the column's diagonal are fine
        assert!(ParamCollection::new(vec![vec![2], vec![1, 3]]).is_ok());

        // row counts must match the orbit count
        assert!(matches!(
            FpParameters::new(vec![coll(&[&[2]]), coll(&[])]),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(FpParameters::new(vec![]).is_err());
    }

    #[test]
    fn group_arithmetic_in_a_two_generator_collection() {
        // relations: x1³ = 1, x1² x2² = 1, hence x2² = x1
        let c = coll(&[&[3], &[2, 2]]);
        assert_eq!(c.order(), 6);
        let x1 = c.generator(1);
        let x2 = c.generator(2);
        assert_eq!(c.generator(0), c.identity());
        assert_eq!(x1.exponents(), &[1, 0]);
        assert_eq!(x2.exponents(), &[0, 1]);
        assert_eq!(c.multiply(&x2, &x2), x1, "x2 squared collapses to x1");
        assert_eq!(c.power(&x2, 2), x1);
        assert_eq!(c.inverse(&x2).exponents(), &[2, 1]);
        assert_eq!(c.multiply(&c.inverse(&x2), &x2), c.identity());
        assert_eq!(c.power(&x2, -1), c.inverse(&x2));
        // the order of x2 is 12 / ... : x2^2 = x1, x2^6 = x1^3 = 1
        assert_eq!(c.power(&x2, 6), c.identity());
        assert_ne!(c.power(&x2, 3), c.identity());
    }

    #[test]
    fn element_indexing_roundtrip() {
        let c = coll(&[&[3], &[2, 2]]);
        let elems = c.elements();
        assert_eq!(elems.len(), 6);
        let expected: Vec<&[u64]> = vec![
            &[0, 0],
            &[1, 0],
            &[2, 0],
            &[0, 1],
            &[1, 1],
            &[2, 1],
        ];
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(e.exponents(), expected[i]);
            assert_eq!(c.index_of(e), i);
            assert_eq!(&c.element_at(i), e);
        }
    }

    #[test]
    fn three_generator_collection() {
        // relations: x1³ = 1, x1² x2² = 1, x3² = 1
        let c = coll(&[&[3], &[2, 2], &[0, 0, 2]]);
        assert_eq!(c.order(), 12);
        let x3 = c.generator(3);
        assert_eq!(c.multiply(&x3, &x3), c.identity());
        assert_eq!(c.elements().len(), 12);
    }

    #[test]
    fn built_two_orbit_table_matches_handwritten_one() {
        let p = params(&[&[&[2]], &[&[3]]]);
        assert_eq!(p.total_size(), 5);
        let q = build_fp_quandle(&p).unwrap();
        assert_eq!(q.to_rows(), u23_rows());
        // the builder's shortcut agrees with full validation
        assert_eq!(QuandleTable::validate(&q.to_rows()).unwrap(), q);
    }

    #[test]
    fn built_all_ones_table_is_trivial() {
        let p = params(&[
            &[&[1], &[0, 1]],
            &[&[1], &[0, 1]],
            &[&[1], &[0, 1]],
        ]);
        assert_eq!(build_fp_quandle(&p).unwrap(), QuandleTable::trivial(3));
    }

    #[test]
    fn builder_rejects_oversized_quandles() {
        let p = params(&[&[&[5000]], &[&[1]]]);
        assert!(matches!(
            build_fp_quandle(&p),
            Err(Error::SizeTooLarge { .. })
        ));
    }

    #[test]
    fn extraction_recovers_known_parameters() {
        let q = QuandleTable::validate(&u23_rows()).unwrap();
        let (p, sigma) = extract_parameters_with_map(&q).unwrap();
        assert_eq!(p, params(&[&[&[2]], &[&[3]]]));
        assert_eq!(sigma, vec![0, 1, 2, 3, 4], "already in canonical labelling");
        assert_eq!(q.relabel(&sigma), build_fp_quandle(&p).unwrap());

        let t = QuandleTable::trivial(3);
        let pt = extract_parameters(&t).unwrap();
        assert_eq!(
            pt,
            params(&[
                &[&[1], &[0, 1]],
                &[&[1], &[0, 1]],
                &[&[1], &[0, 1]],
            ])
        );

        let single = extract_parameters(&QuandleTable::validate(&[vec![0]]).unwrap()).unwrap();
        assert_eq!(single.orbit_count(), 1);
        assert_eq!(single.total_size(), 1);
    }

    #[test]
    fn extraction_rejects_non_abelian_tables() {
        let d = QuandleTable::validate(&[vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]).unwrap();
        assert!(matches!(
            extract_parameters(&d),
            Err(Error::NotTwoReductive { .. })
        ));
    }

    fn random_parameters(rng: &mut ChaCha8Rng) -> FpParameters {
        let r = rng.gen_range(1..=4usize);
        let collections: Vec<ParamCollection> = (0..r)
            .map(|_| {
                let mut rows: Vec<Vec<u64>> = Vec::with_capacity(r - 1);
                for j in 0..r - 1 {
                    let mut row: Vec<u64> =
                        (0..j).map(|k| rng.gen_range(0..rows[k][k])).collect();
                    row.push(rng.gen_range(1..=4u64));
                    rows.push(row);
                }
                ParamCollection::new(rows).unwrap()
            })
            .collect();
        FpParameters::new(collections).unwrap()
    }

    #[test]
    fn extraction_inverts_building() {
        let mut rng = ChaCha8Rng::seed_from_u64(20260816);
        for _ in 0..100 {
            let p = random_parameters(&mut rng);
            let q = build_fp_quandle(&p).unwrap();
            let (extracted, sigma) = extract_parameters_with_map(&q).unwrap();
            assert_eq!(extracted, p, "parameters are a complete invariant");
            assert_eq!(q.relabel(&sigma), q, "built tables are already canonical");
        }
    }

    #[test]
    fn extraction_map_normalises_scrambled_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let p = random_parameters(&mut rng);
            let q = build_fp_quandle(&p).unwrap();
            let mut sigma: Vec<usize> = (0..q.size()).collect();
            sigma.shuffle(&mut rng);
            let scrambled = q.relabel(&sigma);
            let (extracted, map) = extract_parameters_with_map(&scrambled).unwrap();
            assert_eq!(
                scrambled.relabel(&map),
                build_fp_quandle(&extracted).unwrap()
            );
        }
    }

    #[test]
    fn canonical_form_sorts_orbit_sizes() {
        let q32 = build_fp_quandle(&params(&[&[&[3]], &[&[2]]])).unwrap();
        let canon = canonical_parameters(&q32).unwrap();
        assert_eq!(canon, params(&[&[&[2]], &[&[3]]]));
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..40 {
            let p = random_parameters(&mut rng);
            let q = build_fp_quandle(&p).unwrap();
            let base = canonical_parameters(&q).unwrap();
            let mut sigma: Vec<usize> = (0..q.size()).collect();
            sigma.shuffle(&mut rng);
            assert_eq!(canonical_parameters(&q.relabel(&sigma)).unwrap(), base);
        }
    }

    #[test]
    fn enumeration_counts_for_tiny_sizes() {
        // size 1: only the one-element quandle
        assert_eq!(enumerate_abelian_quandles(1).unwrap().len(), 1);
        // size 2: only the trivial quandle (two one-element orbits)
        assert_eq!(enumerate_abelian_quandles(2).unwrap().len(), 1);
        // size 3: the trivial quandle, and one with orbit sizes (1, 2)
        let three = enumerate_abelian_quandles(3).unwrap();
        assert_eq!(three.len(), 2);
        assert_eq!(three[0], params(&[&[&[1]], &[&[2]]]));
        assert_eq!(
            three[1],
            params(&[
                &[&[1], &[0, 1]],
                &[&[1], &[0, 1]],
                &[&[1], &[0, 1]],
            ])
        );
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        for n in 1..=5usize {
            let from_parameters = enumerate_abelian_quandles(n as u64).unwrap();
            let brute = enumerate_quandles(n, true)
                .unwrap()
                .into_iter()
                .filter(|q| q.is_abelian())
                .count();
            assert_eq!(from_parameters.len(), brute, "size {n}");
        }
    }

    #[test]
    fn enumerated_parameters_are_canonical_and_pairwise_distinct() {
        let all = enumerate_abelian_quandles(4).unwrap();
        let tables: Vec<QuandleTable> = all
            .iter()
            .map(|p| build_fp_quandle(p).unwrap())
            .collect();
        for (p, q) in all.iter().zip(tables.iter()) {
            assert_eq!(q.size(), 4);
            assert!(q.is_abelian());
            assert_eq!(&canonical_parameters(q).unwrap(), p, "canonical form is stable");
        }
        for i in 0..tables.len() {
            for j in i + 1..tables.len() {
                assert!(!are_isomorphic(&tables[i], &tables[j]).unwrap());
            }
        }
    }

    #[test]
    fn enumeration_is_guarded() {
        assert!(matches!(
            enumerate_abelian_quandles(MAX_ABELIAN_ENUMERATION_SIZE + 1),
            Err(Error::SizeTooLarge { .. })
        ));
        assert!(enumerate_abelian_quandles(0).is_err());
    }
}
