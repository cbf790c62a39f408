//! Experiment reports: JSON schema and flat CSV emission.

use serde::{Deserialize, Serialize};

use sparsopt_core::optimality::OptimalityCertificate;
use sparsopt_core::solvers::Termination;

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn termination_name(t: Termination) -> &'static str {
    match t {
        Termination::StepTol => "step_tol",
        Termination::NoImprovingMove => "no_improving_move",
        Termination::StationaryStop => "stationary_stop",
        Termination::SupportFull => "support_full",
        Termination::MaxIter => "max_iter",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub is_bf: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stationarity_level: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_query: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_stationary: Option<bool>,
    pub is_cw_minimum: bool,
}

impl From<&OptimalityCertificate> for CertificateSummary {
    fn from(c: &OptimalityCertificate) -> Self {
        CertificateSummary {
            is_bf: c.is_bf,
            stationarity_level: c.stationarity_level,
            l_query: c.l_stationary_at.map(|(l, _)| l),
            l_stationary: c.l_stationary_at.map(|(_, v)| v),
            is_cw_minimum: c.is_cw_minimum,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub start: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub termination: Option<String>,
    /// Zero-based index into the enumerated catalog, when the limit matched
    /// one of its entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog_index: Option<usize>,
    /// Certificate of the matched catalog entry (exact point), or of the raw
    /// limit when no catalog is available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Echo of the solver configuration a report was produced with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub algorithm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    pub max_iter: usize,
    pub step_tol: f64,
    pub decrease_tol: f64,
    pub starts: usize,
    pub start_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub format_version: u32,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub runs: Vec<RunRecord>,
    /// Counts per catalog entry; the final bin counts unmatched limits.
    pub histogram: Vec<u64>,
}

impl ExperimentReport {
    /// Flat per-run table. Columns: run, catalog_index (empty when
    /// unmatched), value, iterations, termination.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("run,catalog_index,value,iterations,termination\n");
        for r in &self.runs {
            let idx = r
                .catalog_index
                .map(|i| i.to_string())
                .unwrap_or_default();
            let value = r.value.map(|v| format!("{v:.12e}")).unwrap_or_default();
            let iters = r.iterations.map(|i| i.to_string()).unwrap_or_default();
            let term = r.termination.clone().unwrap_or_else(|| {
                r.error.clone().map(|e| format!("error: {e}")).unwrap_or_default()
            });
            out.push_str(&format!("{},{},{},{},{}\n", r.run, idx, value, iters, term));
        }
        out
    }
}
