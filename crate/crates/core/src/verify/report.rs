use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{RunConfig, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Only bounds were certified; equality is unverified.
    BoundConsistent,
    /// A stated template or identity turned out false; recorded, not fatal.
    DiscrepancyLogged,
    /// Outside the resource limits for this modulus.
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BoundConsistent => "bound-consistent",
            Status::DiscrepancyLogged => "discrepancy-logged",
            Status::Skipped => "skipped",
        }
    }

    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub id: String,
    /// What the claim asserts, in words.
    pub statement: String,
    pub params: Value,
    pub expected: Value,
    pub computed: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub bound_consistent: usize,
    pub discrepancy_logged: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub n: u32,
    pub suite: Suite,
    pub seed: u64,
    pub sample_pairs: usize,
    pub sample_vertices: usize,
    pub force: bool,
}

impl From<&RunConfig> for ReportConfig {
    fn from(c: &RunConfig) -> Self {
        Self {
            n: c.modulus.exponent(),
            suite: c.suite,
            seed: c.seed,
            sample_pairs: c.sample_pairs,
            sample_vertices: c.sample_vertices,
            force: c.force,
        }
    }
}

/// One verification run. Thread count is deliberately not part of it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: ReportConfig,
    pub claims: Vec<ClaimResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: ReportConfig, claims: Vec<ClaimResult>) -> Self {
        let mut summary = Summary::default();
        for c in &claims {
            *match c.status {
                Status::Pass => &mut summary.pass,
                Status::Fail => &mut summary.fail,
                Status::BoundConsistent => &mut summary.bound_consistent,
                Status::DiscrepancyLogged => &mut summary.discrepancy_logged,
                Status::Skipped => &mut summary.skipped,
            } += 1;
        }
        Self {
            config,
            claims,
            summary,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimResult> {
        self.claims.iter().find(|c| c.id == id)
    }

    /// Copy with every timing field removed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.claims {
            c.millis = None;
        }
        r
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// JSON without timing, identical across runs with the same config.
    pub fn to_canonical_json(&self) -> serde_json::Result<String> {
        self.without_timing().to_json()
    }
}

fn clip(s: String, width: usize) -> String {
    if s.chars().count() <= width {
        s
    } else {
        let mut t: String = s.chars().take(width - 3).collect();
        t.push_str("...");
        t
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n = {}  suite = {}  seed = {}",
            self.config.n, self.config.suite, self.config.seed
        )?;
        writeln!(f, "{:<20} {:<44} {:>8}  computed", "status", "claim", "ms")?;
        for c in &self.claims {
            let ms = c.millis.map_or_else(|| "-".to_string(), |m| m.to_string());
            writeln!(
                f,
                "{:<20} {:<44} {:>8}  {}",
                c.status.label(),
                c.id,
                ms,
                clip(c.computed.to_string(), 70)
            )?;
        }
        let s = &self.summary;
        write!(
            f,
            "{} pass, {} fail, {} bound-consistent, {} discrepancy-logged, {} skipped",
            s.pass, s.fail, s.bound_consistent, s.discrepancy_logged, s.skipped
        )
    }
}
