//! Benchmark-table reproduction campaigns.
//!
//! The slow suite checks the published iteration and output-region counts
//! at n = 50. The fast suite runs n = 10 with five dimensions per iteration
//! and checks counts against the cycle-count law: with survivors confined
//! to one cell per visit, a dimension group needs ceil(log_s(width/tol))
//! visits, and groups take turns.

use boxmin::{by_name, solve, Rounding, RoundingPolicy, SolveResult, SolverConfig, SolverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    N50,
    Fast,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "n50" => Some(Suite::N50),
            "fast" => Some(Suite::Fast),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub function: &'static str,
    pub n: usize,
    pub p: usize,
    pub expected_iterations: u64,
    pub expected_regions: usize,
}

/// Published iteration counts for the n = 50 experiments; every run ends
/// with a single output region.
pub const N50_ITERATIONS: [(&str, u64); 10] = [
    ("ackley", 50),
    ("belegundu", 45),
    ("breiman", 40),
    ("fu", 45),
    ("griewank", 55),
    ("levy", 45),
    ("rastrigin", 45),
    ("salomon", 55),
    ("styblinski", 45),
    ("zabinsky", 40),
];

/// Visits a dimension group needs before its width drops below `tol`:
/// the smallest `c` with `width / s^c < tol`.
pub fn cycles_to_tolerance(width: f64, s: usize, tol: f64) -> u64 {
    let mut c = 0;
    let mut w = width;
    while w >= tol {
        w /= s as f64;
        c += 1;
    }
    c
}

/// Iterations the cycle-count law predicts: groups times per-group visits.
pub fn law_iterations(n: usize, p: usize, width: f64, s: usize, tol: f64) -> u64 {
    let groups = n.div_ceil(p.min(n)) as u64;
    groups * cycles_to_tolerance(width, s, tol)
}

/// Width of a function's (uniform) domain in one dimension.
pub fn domain_width(function: &str) -> f64 {
    let o = by_name(function, 2, Rounding::new(RoundingPolicy::OptimalOutward))
        .expect("catalog function");
    let d = o.spec().domain.get(0);
    d.hi() - d.lo()
}

pub fn suite_rows(suite: Suite) -> Vec<SuiteRow> {
    match suite {
        Suite::N50 => N50_ITERATIONS
            .iter()
            .map(|&(function, expected_iterations)| SuiteRow {
                function,
                n: 50,
                p: 10,
                expected_iterations,
                expected_regions: 1,
            })
            .collect(),
        Suite::Fast => N50_ITERATIONS
            .iter()
            .map(|&(function, _)| SuiteRow {
                function,
                n: 10,
                p: 5,
                expected_iterations: law_iterations(10, 5, domain_width(function), 4, 1e-4),
                expected_regions: 1,
            })
            .collect(),
    }
}

#[derive(Debug)]
pub struct SuiteOutcome {
    pub row: SuiteRow,
    pub result: SolveResult,
    pub contains_minimizer: bool,
    pub encloses_minimum: bool,
    pub pass: bool,
}

pub fn config_for_row(row: &SuiteRow, threads: usize, debug_soundness: bool) -> SolverConfig {
    let mut cfg = SolverConfig::new(row.function, row.n);
    cfg.dims_per_iteration = row.p;
    cfg.threads = threads;
    cfg.debug_soundness = debug_soundness;
    // generous budget: expected runs stop on the width tolerance
    cfg.max_iterations = row.expected_iterations * 4 + 100;
    cfg
}

pub fn run_row(
    row: &SuiteRow,
    threads: usize,
    debug_soundness: bool,
) -> Result<SuiteOutcome, SolverError> {
    let cfg = config_for_row(row, threads, debug_soundness);
    let result = solve(cfg)?;
    let obj = by_name(
        row.function,
        row.n,
        Rounding::new(RoundingPolicy::OptimalOutward),
    )
    .unwrap();
    let spec = obj.spec();
    let contains_minimizer = result
        .regions
        .iter()
        .any(|r| r.bounds.contains_point(&spec.known_minimizer));
    let encloses_minimum = result.glb <= spec.known_minimum && spec.known_minimum <= result.gub;
    let pass = result.iterations == row.expected_iterations
        && result.regions.len() == row.expected_regions
        && contains_minimizer
        && encloses_minimum;
    Ok(SuiteOutcome {
        row: row.clone(),
        result,
        contains_minimizer,
        encloses_minimum,
        pass,
    })
}
