//! Machine-readable run reports.
//!
//! Floating-point values serialize in shortest round-trip form (serde_json
//! and `Display` both guarantee exact re-parsing), so determinism claims can
//! be checked byte for byte from report artifacts.

use boxmin::{RoundingPolicy, SamplingScope, SolveResult, SolverConfig};
use serde::{Deserialize, Serialize};

/// Configuration echo: everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub p: usize,
    pub s: usize,
    pub m: usize,
    pub tolerance: f64,
    pub derivative_test: bool,
    pub sampling: String,
    pub threads: usize,
    pub rounding: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub lb: f64,
    pub bounds: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub function: String,
    pub n: usize,
    pub config: ConfigEcho,
    pub iterations: u64,
    pub stop_reason: String,
    pub glb: f64,
    pub gub: f64,
    pub witness: Option<Vec<f64>>,
    pub regions: Vec<RegionReport>,
    pub wall_time_s: f64,
    pub soundness: String,
}

pub fn sampling_to_str(s: SamplingScope) -> &'static str {
    match s {
        SamplingScope::Selected => "selected",
        SamplingScope::PerSubregion => "per-subregion",
    }
}

pub fn sampling_from_str(s: &str) -> Option<SamplingScope> {
    match s {
        "selected" => Some(SamplingScope::Selected),
        "per-subregion" => Some(SamplingScope::PerSubregion),
        _ => None,
    }
}

pub fn rounding_to_string(r: RoundingPolicy) -> String {
    match r {
        RoundingPolicy::OptimalOutward => "optimal".to_string(),
        RoundingPolicy::SlackUlps(m) => format!("slack-ulps({m})"),
    }
}

pub fn rounding_from_str(s: &str) -> Option<RoundingPolicy> {
    if s == "optimal" {
        return Some(RoundingPolicy::OptimalOutward);
    }
    let m = s.strip_prefix("slack-ulps(")?.strip_suffix(')')?;
    m.parse().ok().map(RoundingPolicy::SlackUlps)
}

impl RunReport {
    pub fn from_result(res: &SolveResult) -> RunReport {
        let c = &res.config;
        RunReport {
            function: c.objective.clone(),
            n: c.n,
            config: ConfigEcho {
                p: c.dims_per_iteration,
                s: c.subintervals,
                m: c.samples_per_iteration,
                tolerance: c.width_tolerance,
                derivative_test: c.derivative_test,
                sampling: sampling_to_str(c.sampling).to_string(),
                threads: c.threads,
                rounding: rounding_to_string(c.rounding),
            },
            iterations: res.iterations,
            stop_reason: res.stop_reason.as_str().to_string(),
            glb: res.glb,
            gub: res.gub,
            witness: res.witness.clone(),
            regions: res
                .regions
                .iter()
                .map(|reg| RegionReport {
                    lb: reg.lb,
                    bounds: reg
                        .bounds
                        .intervals()
                        .iter()
                        .map(|iv| [iv.lo(), iv.hi()])
                        .collect(),
                })
                .collect(),
            wall_time_s: res.wall_time.as_secs_f64(),
            soundness: res.soundness.as_str().to_string(),
        }
    }

    /// Rebuilds a solver configuration from the report's echo; the run it
    /// drives must reproduce the report's regions, bounds and iteration
    /// count exactly.
    pub fn to_config(&self) -> Option<SolverConfig> {
        let mut cfg = SolverConfig::new(self.function.clone(), self.n);
        cfg.dims_per_iteration = self.config.p;
        cfg.subintervals = self.config.s;
        cfg.samples_per_iteration = self.config.m;
        cfg.width_tolerance = self.config.tolerance;
        cfg.derivative_test = self.config.derivative_test;
        cfg.sampling = sampling_from_str(&self.config.sampling)?;
        cfg.threads = self.config.threads;
        cfg.rounding = rounding_from_str(&self.config.rounding)?;
        Some(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn from_json(s: &str) -> Result<RunReport, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// CSV encoding: a metadata header row and its value row, then one row
    /// per region under a region header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(
            "function,n,p,s,m,tolerance,derivative_test,sampling,threads,rounding,iterations,stop_reason,glb,gub,witness,wall_time_s,soundness\n",
        );
        let witness = self
            .witness
            .as_ref()
            .map(|w| {
                w.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
            })
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},\"{}\",{},{}\n",
            self.function,
            self.n,
            self.config.p,
            self.config.s,
            self.config.m,
            self.config.tolerance,
            self.config.derivative_test,
            self.config.sampling,
            self.config.threads,
            self.config.rounding,
            self.iterations,
            self.stop_reason,
            self.glb,
            self.gub,
            witness,
            self.wall_time_s,
            self.soundness,
        ));
        out.push_str("region,lb");
        for i in 1..=self.n {
            out.push_str(&format!(",x{i}_lo,x{i}_hi"));
        }
        out.push('\n');
        for (idx, reg) in self.regions.iter().enumerate() {
            out.push_str(&format!("{idx},{}", reg.lb));
            for b in &reg.bounds {
                out.push_str(&format!(",{},{}", b[0], b[1]));
            }
            out.push('\n');
        }
        out
    }
}
