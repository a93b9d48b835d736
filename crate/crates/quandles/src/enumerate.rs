//! Brute-force enumeration of small quandles and isomorphism testing.
//!
//! A quandle table is determined by its columns: column `b` is the right
//! translation by `b`, a permutation fixing `b`. The enumerator backtracks
//! over columns in order, pruning with the translation form of
//! self-distributivity: writing `R_b` for column `b`,
//! `R_c ∘ R_b = R_{b◁c} ∘ R_c` must hold whenever all three columns are
//! already assigned.

use crate::perm::next_permutation;
use crate::table::QuandleTable;
use crate::Error;
use std::collections::BTreeSet;

/// Largest size accepted by the brute-force enumerator.
pub const MAX_ENUMERATION_SIZE: usize = 6;

/// Largest size accepted by the brute-force isomorphism fallback.
pub const MAX_ISOMORPHISM_SIZE: usize = 8;

/// All quandle tables of size `n`, labeled (`up_to_iso = false`) or one
/// lexicographically-minimal representative per isomorphism class
/// (`up_to_iso = true`). Output order is deterministic: generation order for
/// labeled tables, sorted canonical representatives otherwise.
pub fn enumerate_quandles(n: usize, up_to_iso: bool) -> Result<Vec<QuandleTable>, Error> {
    if n == 0 {
        return Err(Error::BadShape {
            rows: 0,
            row: 0,
            len: 0,
        });
    }
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeTooLarge {
            size: n,
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let mut labeled = Vec::new();
    let mut cols: Vec<Vec<usize>> = Vec::new();
    let candidates = columns_fixing_each_point(n);
    backtrack(n, &candidates, &mut cols, &mut labeled);

    if !up_to_iso {
        return Ok(labeled);
    }
    let mut classes: BTreeSet<QuandleTable> = BTreeSet::new();
    for q in &labeled {
        classes.insert(canonical_table(q));
    }
    Ok(classes.into_iter().collect())
}

/// For each point `b`, all permutations of `0..n` fixing `b`, in
/// lexicographic order.
fn columns_fixing_each_point(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut all = vec![Vec::new(); n];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for b in 0..n {
            if perm[b] == b {
                all[b].push(perm.clone());
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    all
}

fn backtrack(
    n: usize,
    candidates: &[Vec<Vec<usize>>],
    cols: &mut Vec<Vec<usize>>,
    out: &mut Vec<QuandleTable>,
) {
    let k = cols.len();
    if k == n {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| cols.iter().map(|c| c[a]).collect()).collect();
        out.push(QuandleTable::validate(&rows).expect("backtracking enforces all axioms"));
        return;
    }
    'next: for cand in &candidates[k] {
        cols.push(cand.clone());
        // self-distributivity on every pair with all three columns assigned
        for b in 0..=k {
            for c in 0..=k {
                let d = cols[c][b]; // b ◁ c
                if d > k {
                    continue;
                }
                for a in 0..n {
                    if cols[c][cols[b][a]] != cols[d][cols[c][a]] {
                        cols.pop();
                        continue 'next;
                    }
                }
            }
        }
        backtrack(n, candidates, cols, out);
        cols.pop();
    }
}

/// The lexicographically minimal relabelling of the table — a canonical
/// form for the isomorphism class.
pub fn canonical_table(q: &QuandleTable) -> QuandleTable {
    let n = q.size();
    let mut best: Option<QuandleTable> = None;
    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        let candidate = q.relabel(&sigma);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    best.expect("n >= 1")
}

/// Brute-force isomorphism test: do the two tables agree after some
/// relabelling? Guarded at size [`MAX_ISOMORPHISM_SIZE`].
pub fn are_isomorphic(a: &QuandleTable, b: &QuandleTable) -> Result<bool, Error> {
    if a.size() != b.size() {
        return Ok(false);
    }
    let n = a.size();
    if n > MAX_ISOMORPHISM_SIZE {
        return Err(Error::SizeTooLarge {
            size: n,
            max: MAX_ISOMORPHISM_SIZE,
        });
    }
    let mut sigma: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|x| (0..n).all(|y| sigma[a.op(x, y)] == b.op(sigma[x], sigma[y]))) {
            return Ok(true);
        }
        if !next_permutation(&mut sigma) {
            return Ok(false);
        }
    }
}
