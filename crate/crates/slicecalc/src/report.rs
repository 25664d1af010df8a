//! Verification records: per-identity residual reports and the envelope the
//! CLI emits.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Per-identity verification record: probe points, residual norms and the
/// resolution they were measured at.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity: String,
    /// paravector coordinates (m + 1 reals) per probe
    pub probes: Vec<Vec<f64>>,
    /// Clifford norm of the residual per probe
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub resolution: usize,
    pub runtime_ms: f64,
    /// notes about skipped or flagged probes
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flagged: Vec<String>,
}

impl ResidualReport {
    pub fn new(
        identity: impl Into<String>,
        probes: Vec<Vec<f64>>,
        residuals: Vec<f64>,
        resolution: usize,
    ) -> ResidualReport {
        assert!(
            !residuals.is_empty(),
            "a residual report needs at least one probe"
        );
        let max_residual = residuals.iter().copied().fold(0.0f64, f64::max);
        ResidualReport {
            identity: identity.into(),
            probes,
            residuals,
            max_residual,
            resolution,
            runtime_ms: 0.0,
            flagged: Vec::new(),
        }
    }

    pub fn with_runtime(mut self, ms: f64) -> Self {
        self.runtime_ms = ms;
        self
    }

    pub fn with_flagged(mut self, flagged: Vec<String>) -> Self {
        self.flagged = flagged;
        self
    }
}

/// Empirical order between consecutive resolutions:
/// log(r_prev / r_next) / log(n_next / n_prev). `None` marks levels at the
/// numerical floor, where no order is measurable because the residuals are
/// already converged.
pub fn convergence_orders(
    resolutions: &[usize],
    residuals: &[f64],
    floor: f64,
) -> Vec<Option<f64>> {
    assert_eq!(resolutions.len(), residuals.len());
    let mut orders = Vec::new();
    for k in 0..residuals.len().saturating_sub(1) {
        let (r0, r1) = (residuals[k], residuals[k + 1]);
        if r0 <= floor || r1 <= floor {
            orders.push(None);
            continue;
        }
        let ratio = (resolutions[k + 1] as f64 / resolutions[k] as f64).ln();
        orders.push(Some((r0 / r1).ln() / ratio));
    }
    orders
}

/// Envelope for a whole verification run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportEnvelope {
    /// format version tag
    pub schema: String,
    /// echo of the run configuration
    pub config: serde_json::Value,
    pub reports: Vec<ResidualReport>,
    /// empirical orders per identity, present when >= 2 resolutions ran
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub orders: BTreeMap<String, Vec<Option<f64>>>,
    /// pass/fail versus the documented tolerance per identity
    pub passes: BTreeMap<String, bool>,
    pub total_runtime_ms: f64,
}

impl ReportEnvelope {
    pub fn new(config: serde_json::Value) -> ReportEnvelope {
        ReportEnvelope {
            schema: "slicecalc/1".into(),
            config,
            reports: Vec::new(),
            orders: BTreeMap::new(),
            passes: BTreeMap::new(),
            total_runtime_ms: 0.0,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.passes.values().all(|&p| p)
    }
}
