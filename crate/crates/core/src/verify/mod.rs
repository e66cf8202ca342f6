//! Reproducible property-test suites.
//!
//! Each suite runs a fixed set of randomized or exhaustive checks with a
//! seeded generator and returns a deterministic report: same seed, same
//! bytes. The CLI exposes them under `verify --suite <name>`; the
//! acceptance tests call them directly.

mod oracle;
mod suites;

pub use oracle::stable_tree_counts_brute;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tol: f64,
    /// Shrink sample counts for fast smoke runs.
    pub quick: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            tol: 1e-9,
            quick: false,
        }
    }
}

impl RunConfig {
    /// Scale a sample count down in quick mode.
    pub fn samples(&self, full: usize) -> usize {
        if self.quick {
            (full / 20).max(5)
        } else {
            full
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub trials: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            trials: 0,
            violations: 0,
            detail: None,
        }
    }

    pub fn record(&mut self, ok: bool) {
        self.trials += 1;
        if !ok {
            self.violations += 1;
        }
    }

    pub fn record_detail(&mut self, ok: bool, detail: String) {
        self.record(ok);
        if !ok && self.detail.is_none() {
            self.detail = Some(detail);
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub tol: f64,
    pub checks: Vec<CheckReport>,
    pub violations: u64,
}

impl SuiteReport {
    pub fn assemble(suite: &str, cfg: &RunConfig, checks: Vec<CheckReport>) -> Self {
        let violations = checks.iter().map(|c| c.violations).sum();
        Self {
            suite: suite.to_string(),
            seed: cfg.seed,
            tol: cfg.tol,
            checks,
            violations,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "trees",
    "dm",
    "cross-ratio",
    "types",
    "coherent",
    "angles",
    "taming",
    "donaldson",
    "intersect",
    "edge-solver",
];

/// Run one named suite; `None` for an unknown name.
pub fn run_suite(name: &str, cfg: &RunConfig) -> Option<SuiteReport> {
    let checks = match name {
        "trees" => suites::trees(cfg),
        "dm" => suites::dm(cfg),
        "cross-ratio" => suites::cross_ratio(cfg),
        "types" => suites::types(cfg),
        "coherent" => suites::coherent(cfg),
        "angles" => suites::angles(cfg),
        "taming" => suites::taming(cfg),
        "donaldson" => suites::donaldson(cfg),
        "intersect" => suites::intersect(cfg),
        "edge-solver" => suites::edge_solver(cfg),
        _ => return None,
    };
    Some(SuiteReport::assemble(name, cfg, checks))
}

/// Run every suite in declaration order.
pub fn run_all(cfg: &RunConfig) -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|name| run_suite(name, cfg).expect("known suite"))
        .collect()
}
