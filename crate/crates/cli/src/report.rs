//! Report structures and their JSON/CSV renderings.
//!
//! JSON output is pretty-printed with sorted keys (serde_json's default
//! map ordering), so identical inputs render byte-identically. Floats in
//! CSV are printed with 17 significant digits, enough to round-trip f64.

use std::collections::BTreeMap;

use entrocv::{CriterionResult, EvalConfig, Evaluation};
use serde::Serialize;

/// Grid and tolerance settings echoed into every report.
#[derive(Serialize)]
pub struct GridMeta {
    pub grid_n: usize,
    pub points_1d: usize,
    pub points_2d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    pub eps_tail: f64,
    pub tau_verdict: f64,
}

impl GridMeta {
    pub fn of(cfg: &EvalConfig) -> GridMeta {
        GridMeta {
            grid_n: cfg.grid_n,
            points_1d: cfg.n1d(),
            points_2d: cfg.n2d(),
            half_width: cfg.half_width,
            eps_tail: cfg.eps_tail,
            tau_verdict: cfg.tau_verdict,
        }
    }
}

/// The top-level report for `entropy` and `criterion`.
#[derive(Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: &'static str,
    pub descriptor: serde_json::Value,
    pub grid: GridMeta,
    pub beta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representation: Option<&'static str>,
    pub entropies: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<CriterionResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// `quantity,value` rows, one per entropy, in key order.
    pub fn entropies_csv(&self) -> String {
        let mut out = String::from("quantity,value\n");
        for (key, value) in &self.entropies {
            out.push_str(&format!("{key},{value:.16e}\n"));
        }
        out
    }
}

/// One row of a β sweep (also reused for single-criterion CSV output).
#[derive(Serialize)]
pub struct SweepRow {
    pub beta: f64,
    pub lhs: f64,
    pub bound: f64,
    pub margin: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub verdict: String,
}

impl SweepRow {
    pub fn from_evaluation(eval: &Evaluation) -> SweepRow {
        SweepRow {
            beta: eval.result.beta,
            lhs: eval.result.lhs.0,
            bound: eval.result.bound.0,
            margin: eval.result.margin,
            eta1: eval.eta1.0,
            eta2: eval.eta2.0,
            verdict: eval.result.verdict.to_string(),
        }
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("beta,lhs,bound,margin,eta1,eta2,verdict\n");
    for r in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
            r.beta, r.lhs, r.bound, r.margin, r.eta1, r.eta2, r.verdict
        ));
    }
    out
}

pub fn sweep_json(rows: &[SweepRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

/// Report for the `epi-check` self-test.
#[derive(Serialize)]
pub struct EpiReport {
    pub version: &'static str,
    pub command: &'static str,
    pub trials: usize,
    pub seed: i64,
    pub grid: GridMeta,
    pub tolerance: f64,
    pub min_epi_gap: f64,
    pub min_bbm_excess: f64,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl EpiReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        format!(
            "quantity,value\ntrials,{}\nseed,{}\ntolerance,{:.16e}\nmin_epi_gap,{:.16e}\nmin_bbm_excess,{:.16e}\nverdict,{}\n",
            self.trials, self.seed, self.tolerance, self.min_epi_gap, self.min_bbm_excess, self.verdict
        )
    }
}
