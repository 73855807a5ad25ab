use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::density::Configuration;
use crate::kernels::KernelId;

/// Per-replication ISE for one (configuration, kernel, n) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MiseReport {
    pub config_id: Configuration,
    pub kernel: KernelId,
    pub n: usize,
    pub per_replication_ise: Vec<f64>,
    pub mean_ise: f64,
    pub variance_ise: f64,
    /// Replications where part of the grid was skipped (RIG at `x <= b`).
    pub truncated_replications: usize,
}

impl MiseReport {
    pub fn new(
        config_id: Configuration,
        kernel: KernelId,
        n: usize,
        per_replication_ise: Vec<f64>,
        truncated_replications: usize,
    ) -> Self {
        let (mean_ise, variance_ise) = mean_and_variance(&per_replication_ise);
        Self {
            config_id,
            kernel,
            n,
            per_replication_ise,
            mean_ise,
            variance_ise,
            truncated_replications,
        }
    }

    pub fn summary(&self) -> CellSummary {
        CellSummary {
            config: self.config_id,
            kernel: self.kernel,
            n: self.n,
            replications: self.per_replication_ise.len(),
            mean_ise: self.mean_ise,
            variance_ise: self.variance_ise,
            truncated_replications: self.truncated_replications,
        }
    }
}

// Summed in sorted order so the result does not depend on replication order.
fn mean_and_variance(values: &[f64]) -> (f64, f64) {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mean = sorted.iter().sum::<f64>() / n;
    if sorted.len() < 2 {
        return (mean, 0.0);
    }
    let mut dev: Vec<f64> = sorted.iter().map(|v| (v - mean) * (v - mean)).collect();
    dev.sort_by(f64::total_cmp);
    (mean, dev.iter().sum::<f64>() / (n - 1.0))
}

/// JSON summary row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub config: Configuration,
    pub kernel: KernelId,
    pub n: usize,
    pub replications: usize,
    pub mean_ise: f64,
    pub variance_ise: f64,
    pub truncated_replications: usize,
}

/// Long-format CSV: `config,kernel,n,replication,ise`.
pub fn reports_to_csv(reports: &[MiseReport]) -> String {
    let mut out = String::from("config,kernel,n,replication,ise\n");
    for r in reports {
        for (i, ise) in r.per_replication_ise.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{},{}", r.config_id, r.kernel, r.n, i, format!("{ise:.16e}"));
        }
    }
    out
}

pub fn summary_json(reports: &[MiseReport]) -> String {
    let rows: Vec<CellSummary> = reports.iter().map(MiseReport::summary).collect();
    serde_json::to_string_pretty(&rows).expect("summary rows serialise")
}

/// Mean-ISE table with one row per (configuration, n) and one column per kernel.
pub fn format_table(reports: &[MiseReport]) -> String {
    let mut kernels: Vec<KernelId> = Vec::new();
    let mut rows: BTreeMap<(Configuration, usize), BTreeMap<KernelId, f64>> = BTreeMap::new();
    for r in reports {
        if !kernels.contains(&r.kernel) {
            kernels.push(r.kernel);
        }
        rows.entry((r.config_id, r.n)).or_default().insert(r.kernel, r.mean_ise);
    }
    let mut out = format!("{:<14}{:>6}", "Configuration", "n");
    for k in &kernels {
        let _ = write!(out, "{:>12}", k.label());
    }
    out.push('\n');
    for ((config, n), cells) in &rows {
        let _ = write!(out, "{:<14}{:>6}", config.name(), n);
        let best = cells.values().copied().filter(|v| v.is_finite()).fold(f64::INFINITY, f64::min);
        for k in &kernels {
            match cells.get(k) {
                Some(v) => {
                    let mark = if *v == best { "*" } else { " " };
                    let _ = write!(out, "{:>11.2e}{}", v, mark);
                }
                None => {
                    let _ = write!(out, "{:>12}", "-");
                }
            }
        }
        out.push('\n');
    }
    out
}
