//! Named parameter families with human-readable element labels.

use crate::fp::{build_fp_quandle, FpParameters, ParamCollection};
use crate::table::QuandleTable;
use crate::Error;

/// A built table together with display labels for its elements and the
/// parameter datum it came from. `labels[a]` names element `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledQuandle {
    pub table: QuandleTable,
    pub labels: Vec<String>,
    pub parameters: FpParameters,
}

fn assemble(collections: Vec<ParamCollection>, labels: Vec<String>) -> Result<LabelledQuandle, Error> {
    let parameters = FpParameters::new(collections)?;
    let table = build_fp_quandle(&parameters)?;
    debug_assert_eq!(labels.len(), table.size());
    Ok(LabelledQuandle {
        table,
        labels,
        parameters,
    })
}

fn coll(rows: Vec<Vec<u64>>) -> Result<ParamCollection, Error> {
    ParamCollection::new(rows)
}

fn require_positive(value: u64, name: &str) -> Result<(), Error> {
    if value == 0 {
        return Err(Error::InvalidParameters {
            reason: format!("{name} must be at least 1"),
        });
    }
    Ok(())
}

/// The two-orbit quandle on `x_0, …, x_{m−1}, y_0, …, y_{n−1}` where each
/// orbit fixes itself and steps the other cyclically:
/// `x_i ◁ y_k = x_{i+1}`, `y_k ◁ x_i = y_{k+1}` (indices cyclic).
pub fn family_u(m: u64, n: u64) -> Result<LabelledQuandle, Error> {
    require_positive(m, "m")?;
    require_positive(n, "n")?;
    let labels = (0..m)
        .map(|i| format!("x{i}"))
        .chain((0..n).map(|k| format!("y{k}")))
        .collect();
    assemble(vec![coll(vec![vec![m]])?, coll(vec![vec![n]])?], labels)
}

/// The two-orbit family extended by a single fixed element `z`:
/// `a ◁ b = a` whenever `a = z` or `b = z`, and the `x`/`y` part is
/// unchanged. Three orbits of sizes `m`, `n`, `1`.
pub fn family_u_star(m: u64, n: u64) -> Result<LabelledQuandle, Error> {
    require_positive(m, "m")?;
    require_positive(n, "n")?;
    let labels = (0..m)
        .map(|i| format!("x{i}"))
        .chain((0..n).map(|k| format!("y{k}")))
        .chain(std::iter::once("z".to_string()))
        .collect();
    assemble(
        vec![
            coll(vec![vec![m], vec![0, 1]])?,
            coll(vec![vec![1], vec![0, n]])?,
            coll(vec![vec![1], vec![0, 1]])?,
        ],
        labels,
    )
}

/// The two-orbit family extended by a swapped pair `z_0, z_1`:
/// `a ◁ z_s = a` for every `a`, while `z_s ◁ x_i = z_s ◁ y_k = z_{s+1}`
/// (index modulo 2). Three orbits of sizes `m`, `n`, `2`.
pub fn family_u_starstar(m: u64, n: u64) -> Result<LabelledQuandle, Error> {
    require_positive(m, "m")?;
    require_positive(n, "n")?;
    let labels = (0..m)
        .map(|i| format!("x{i}"))
        .chain((0..n).map(|k| format!("y{k}")))
        .chain((0..2).map(|s| format!("z{s}")))
        .collect();
    assemble(
        vec![
            coll(vec![vec![m], vec![0, 1]])?,
            coll(vec![vec![1], vec![0, n]])?,
            coll(vec![vec![2], vec![1, 1]])?,
        ],
        labels,
    )
}

/// The cyclic-step quandle on a disjoint union of cycles `Z_{n_1}, …, Z_{n_r}`:
/// `a ◁ b = a` if `a` and `b` share an orbit, and `a + 1` (within `a`'s
/// cycle) otherwise. Requires at least two orbit sizes; the two-orbit case
/// coincides with [`family_u`].
pub fn family_graphic(sizes: &[u64]) -> Result<LabelledQuandle, Error> {
    let r = sizes.len();
    if r < 2 {
        return Err(Error::InvalidParameters {
            reason: "at least two orbit sizes are required".into(),
        });
    }
    let mut collections = Vec::with_capacity(r);
    for (i, &n) in sizes.iter().enumerate() {
        require_positive(n, &format!("orbit size {}", i + 1))?;
        // every other orbit steps this cycle by +1: after the first
        // generator (a full cycle of length n), each further generator
        // equals it, giving rows (n−1, 0, …, 0, 1)
        let rows: Vec<Vec<u64>> = (0..r - 1)
            .map(|j| {
                if j == 0 {
                    vec![n]
                } else {
                    let mut row = vec![0u64; j + 1];
                    row[0] = n - 1;
                    row[j] = 1;
                    row
                }
            })
            .collect();
        collections.push(coll(rows)?);
    }
    let labels = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| (0..n).map(move |v| format!("o{}.{v}", i + 1)))
        .collect();
    assemble(collections, labels)
}
