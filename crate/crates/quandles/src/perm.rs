//! Small permutation helpers, used for orbit translations. A permutation on
//! `n` points is a `Vec<usize>` mapping position to position.

use std::collections::BTreeSet;

pub(crate) fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// `(f ∘ g)(x) = f[g[x]]`.
pub(crate) fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

#[cfg(test)]
pub(crate) fn is_identity(f: &[usize]) -> bool {
    f.iter().enumerate().all(|(i, &x)| i == x)
}

/// Length of the cycle of `f` through `x`.
#[cfg(test)]
pub(crate) fn cycle_length_through(f: &[usize], x: usize) -> usize {
    let mut len = 1;
    let mut y = f[x];
    while y != x {
        y = f[y];
        len += 1;
    }
    len
}

/// The full group generated by `gens` under composition (BFS closure).
pub(crate) fn group_closure(gens: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![identity(n)];
    seen.insert(identity(n));
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = compose(g, &p);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen
}

/// Do `gens` generate a transitive group on `0..n`?
pub(crate) fn is_transitive(gens: &[Vec<usize>], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut frontier = vec![0usize];
    let mut count = 1;
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                count += 1;
                frontier.push(y);
            }
        }
    }
    count == n
}


/// Advance `p` to the next permutation in lexicographic order; `false` once
/// `p` is the last one. Duplicate entries are handled (distinct multiset
/// permutations are produced exactly once).
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}
