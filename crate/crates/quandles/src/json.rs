//! JSON interchange formats: operation tables, triangular parameter data,
//! and the integer emission rule shared by every machine-readable output.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::fp::{FpParameters, ParamCollection};
use crate::table::QuandleTable;
use crate::Error;

/// On-disk form of an operation table:
/// `{"size": n, "table": [[...], ...]}` with row = left operand, column =
/// right operand, all entries 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleJson {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

impl QuandleJson {
    pub fn from_table(q: &QuandleTable) -> Self {
        QuandleJson {
            size: q.size(),
            table: q.to_rows(),
        }
    }

    /// Checks the declared size against the table shape, then runs the full
    /// axiom validation.
    pub fn into_table(self) -> Result<QuandleTable, Error> {
        if self.table.len() != self.size {
            return Err(Error::InvalidParameters {
                reason: format!(
                    "declared size {} but the table has {} rows",
                    self.size,
                    self.table.len()
                ),
            });
        }
        QuandleTable::validate(&self.table)
    }
}

/// On-disk form of per-orbit triangular parameters:
/// `{"r": r, "collections": [[[m11], [m21, m22], ...], ...]}` — one list of
/// lower-triangle rows per orbit (`r − 1` rows each, row `j` of length `j`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParametersJson {
    pub r: usize,
    pub collections: Vec<Vec<Vec<u64>>>,
}

impl ParametersJson {
    pub fn from_parameters(p: &FpParameters) -> Self {
        ParametersJson {
            r: p.orbit_count(),
            collections: p
                .collections()
                .iter()
                .map(|c| c.rows().to_vec())
                .collect(),
        }
    }

    /// Checks the declared orbit count, then runs the full parameter
    /// validation (triangular shape, diagonal/offset bounds).
    pub fn into_parameters(self) -> Result<FpParameters, Error> {
        if self.collections.len() != self.r {
            return Err(Error::InvalidParameters {
                reason: format!(
                    "declared {} orbits but {} collections are given",
                    self.r,
                    self.collections.len()
                ),
            });
        }
        let collections = self
            .collections
            .into_iter()
            .map(ParamCollection::new)
            .collect::<Result<Vec<_>, _>>()?;
        FpParameters::new(collections)
    }
}

/// Emits an integer as a JSON number when its magnitude is below 2⁵³ (so it
/// survives any double-precision JSON reader exactly) and as a decimal
/// string otherwise.
pub fn integer_value(x: &BigInt) -> Value {
    const LIMIT: i64 = 1 << 53;
    if let Ok(v) = i64::try_from(x) {
        if -LIMIT < v && v < LIMIT {
            return Value::from(v);
        }
    }
    Value::String(x.to_string())
}
