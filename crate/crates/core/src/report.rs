//! Machine-readable report types shared by the identity registry, the
//! analytic checks, and the CLI.

use crate::qseries::Discrepancy;
use serde::Serialize;
use std::collections::BTreeMap;

/// Status of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Result of verifying one registered identity.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    /// First mismatching coefficient, when failing.
    pub first_discrepancy: Option<DiscrepancyReport>,
    /// q-order of the comparison, as a reduced fraction string.
    pub q_order: String,
    /// x-window `[lo, hi)` of the comparison; `None` for pure q-series.
    pub x_window: Option<(i64, i64)>,
    pub wall_time_ms: f64,
    /// Free-form notes (e.g. which reading of an ambiguous display verified).
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Serialized form of a first-discrepancy witness.
#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyReport {
    pub x_exp: Option<i64>,
    pub q_exp: String,
    pub lhs: String,
    pub rhs: String,
}

impl From<Discrepancy> for DiscrepancyReport {
    fn from(d: Discrepancy) -> Self {
        DiscrepancyReport {
            x_exp: Some(d.x_exp),
            q_exp: d.q_exp.to_string(),
            lhs: d.lhs.to_string(),
            rhs: d.rhs.to_string(),
        }
    }
}

/// Report emitted by numeric (high-precision) checks.
#[derive(Clone, Debug, Serialize)]
pub struct NumericReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub precision_bits: u32,
    /// Max-norm residuals or per-term errors, as decimal strings.
    pub residuals: Vec<String>,
    pub verdict: Status,
}

impl NumericReport {
    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }
}
