//! Counters and per-stage timings, printable as `key=value` lines.

use std::fmt;
use std::time::Instant;

/// Stage names in execution order.
pub const STAGES: [&str; 8] = [
    "triangulate",
    "division",
    "recursion",
    "intra",
    "cuts",
    "bellman_ford",
    "inter",
    "reroot",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    /// Top-level division.
    pub n: usize,
    pub r: usize,
    pub regions: usize,
    pub boundary: usize,
    pub max_holes: usize,
    pub boundary_constant: f64,
    pub region_constant: f64,
    /// Summed over every recursion level.
    pub levels: usize,
    pub base_cases: u64,
    pub smawk_calls: u64,
    pub evaluator_calls: u64,
    pub bf_rounds: u64,
    pub cut_pairs: u64,
    pub full_pairs: u64,
    pub cut_fallbacks: u64,
    pub cycle_fallbacks: u64,
    pub monge_violations: u64,
    pub hole_regions: u64,
    pub apex_violations: u64,
    /// Wall time of each top-level stage, in milliseconds.
    pub stage_millis: Vec<(&'static str, f64)>,
}

impl Report {
    /// Adds the counters of a nested call; top-level fields are kept.
    pub fn absorb(&mut self, other: &Report) {
        self.levels = self.levels.max(other.levels + 1);
        self.base_cases += other.base_cases;
        self.smawk_calls += other.smawk_calls;
        self.evaluator_calls += other.evaluator_calls;
        self.bf_rounds += other.bf_rounds;
        self.cut_pairs += other.cut_pairs;
        self.full_pairs += other.full_pairs;
        self.cut_fallbacks += other.cut_fallbacks;
        self.cycle_fallbacks += other.cycle_fallbacks;
        self.monge_violations += other.monge_violations;
        self.hole_regions += other.hole_regions;
        self.apex_violations += other.apex_violations;
    }

    pub fn time<T>(&mut self, stage: &'static str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.stage_millis.push((stage, start.elapsed().as_secs_f64() * 1e3));
        out
    }

    pub fn millis(&self, stage: &str) -> f64 {
        self.stage_millis
            .iter()
            .filter(|(s, _)| *s == stage)
            .map(|(_, t)| t)
            .sum()
    }

    pub fn total_millis(&self) -> f64 {
        self.stage_millis.iter().map(|(_, t)| t).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "r={}", self.r)?;
        writeln!(f, "regions={}", self.regions)?;
        writeln!(f, "b={}", self.boundary)?;
        writeln!(f, "max_holes={}", self.max_holes)?;
        writeln!(f, "c_b={:.3}", self.boundary_constant)?;
        writeln!(f, "c_r={:.3}", self.region_constant)?;
        writeln!(f, "levels={}", self.levels)?;
        writeln!(f, "base_cases={}", self.base_cases)?;
        writeln!(f, "smawk_calls={}", self.smawk_calls)?;
        writeln!(f, "evaluator_calls={}", self.evaluator_calls)?;
        writeln!(f, "bf_rounds={}", self.bf_rounds)?;
        writeln!(f, "cut_pairs={}", self.cut_pairs)?;
        writeln!(f, "full_pairs={}", self.full_pairs)?;
        writeln!(f, "cut_fallbacks={}", self.cut_fallbacks)?;
        writeln!(f, "cycle_fallbacks={}", self.cycle_fallbacks)?;
        writeln!(f, "monge_violations={}", self.monge_violations)?;
        writeln!(f, "hole_regions={}", self.hole_regions)?;
        writeln!(f, "apex_violations={}", self.apex_violations)?;
        for stage in STAGES {
            writeln!(f, "ms_{stage}={:.3}", self.millis(stage))?;
        }
        write!(f, "ms_total={:.3}", self.total_millis())
    }
}
