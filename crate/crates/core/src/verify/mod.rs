//! Structured verification runs: every claim is recomputed through an
//! independent route and recorded with its expected and computed values.
//!
//! Sampled checks draw all samples from a per-claim seeded generator before
//! any parallel work starts, and results are merged in sample order, so the
//! report depends only on the [`RunConfig`] and never on the thread count.

mod report;
mod suites;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Modulus;

pub use report::{ClaimResult, Report, ReportConfig, Status, Summary};

pub const DEFAULT_SAMPLE_PAIRS: usize = 1_000_000;
pub const DEFAULT_SAMPLE_VERTICES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ring,
    Adjacency,
    Snf,
    Degree,
    Families,
    Graph,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Ring,
        Suite::Adjacency,
        Suite::Snf,
        Suite::Degree,
        Suite::Families,
        Suite::Graph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ring => "ring",
            Suite::Adjacency => "adjacency",
            Suite::Snf => "snf",
            Suite::Degree => "degree",
            Suite::Families => "families",
            Suite::Graph => "graph",
            Suite::All => "all",
        }
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "expected one of ring, adjacency, snf, degree, families, graph, all".into(),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub modulus: Modulus,
    pub suite: Suite,
    pub seed: u64,
    pub sample_pairs: usize,
    pub sample_vertices: usize,
    /// Allows the `n = 4` graph snapshot.
    pub force: bool,
}

impl RunConfig {
    pub fn new(modulus: Modulus) -> Self {
        Self {
            modulus,
            suite: Suite::All,
            seed: 0,
            sample_pairs: DEFAULT_SAMPLE_PAIRS,
            sample_vertices: DEFAULT_SAMPLE_VERTICES,
            force: false,
        }
    }

    pub fn suite(mut self, suite: Suite) -> Self {
        self.suite = suite;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// Runs the selected suites on the current rayon pool.
pub fn run(config: &RunConfig) -> Report {
    let mut ctx = suites::Context::new(config.clone());
    let mut claims = Vec::new();
    for suite in Suite::EACH {
        if config.suite.includes(suite) {
            claims.extend(ctx.run_suite(suite));
        }
    }
    Report::new(ReportConfig::from(config), claims)
}
