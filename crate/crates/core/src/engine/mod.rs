//! The complete-search loop.
//!
//! A worklist of compact region records drives best-first selection. A
//! record never stores its box: it stores the subregion index, the iteration
//! that created it and the cycling index, and the box is recomputed from the
//! per-iteration history of selected-region locations. Per entry that is
//! three integers and two scalars regardless of dimension.

use std::time::{Duration, Instant};

use crate::interval::{Rounding, RoundingPolicy};
use crate::kernel::{child_box, CyclingIndex, Kernel, PartitionScheme};
use crate::objectives::{by_name, diagonal_coordinate, Objective};
use crate::region::BoxRegion;

/// Compact worklist record. `itr == -1` marks the root sentinel that
/// reconstructs to the whole search domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionEntry {
    pub sidx: u32,
    pub itr: i32,
    pub cyc: u32,
    pub lb: f64,
    pub maxwidth: f64,
}

impl RegionEntry {
    /// Deterministic selection order: smallest lower bound, ties by
    /// creation iteration then subregion index.
    #[inline]
    fn key(&self) -> (f64, i32, u32) {
        (self.lb, self.itr, self.sidx)
    }
}

/// Location data needed to rebuild any region created at one iteration.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    pub selected: BoxRegion,
    pub cyc_used: CyclingIndex,
}

/// Multiset of region entries with extract-min, bulk insert and sweep.
#[derive(Debug, Default)]
pub struct WorkList {
    entries: Vec<RegionEntry>,
}

impl WorkList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert_bulk(&mut self, it: impl IntoIterator<Item = RegionEntry>) {
        self.entries.extend(it);
    }

    /// Removes and returns the globally minimal entry.
    pub fn extract_min(&mut self) -> Option<RegionEntry> {
        let best = self
            .entries
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.key().partial_cmp(&b.key()).expect("NaN-free keys"))
            .map(|(i, _)| i)?;
        Some(self.entries.swap_remove(best))
    }

    /// Removes every entry with `lb > gub` (strict). Returns the count.
    pub fn sweep(&mut self, gub: f64) -> usize {
        let before = self.entries.len();
        self.entries.retain(|e| e.lb <= gub);
        before - self.entries.len()
    }

    /// Largest stored per-region max-width; 0 for an empty list.
    pub fn max_maxwidth(&self) -> f64 {
        self.entries.iter().map(|e| e.maxwidth).fold(0.0, f64::max)
    }

    /// Smallest stored lower bound; +inf for an empty list.
    pub fn min_lb(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.lb)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn iter(&self) -> impl Iterator<Item = &RegionEntry> {
        self.entries.iter()
    }
}

/// Where diagonal sampling happens each iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingScope {
    /// Sample the selected region's diagonal before partitioning.
    Selected,
    /// Sample the diagonal of every subregion inside the kernel.
    PerSubregion,
}

/// Full run configuration; defaults reproduce the benchmark experiment
/// setup (p = 10, s = 4, m = 10, tolerance 1e-4, derivative test on).
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub objective: String,
    pub n: usize,
    pub dims_per_iteration: usize,
    pub subintervals: usize,
    pub samples_per_iteration: usize,
    pub width_tolerance: f64,
    pub max_iterations: u64,
    pub time_limit: Option<f64>,
    pub derivative_test: bool,
    pub full_gradient: bool,
    pub sampling: SamplingScope,
    pub debug_soundness: bool,
    /// 0 picks the machine's available parallelism.
    pub threads: usize,
    pub rounding: RoundingPolicy,
}

impl SolverConfig {
    pub fn new(objective: impl Into<String>, n: usize) -> SolverConfig {
        SolverConfig {
            objective: objective.into(),
            n,
            dims_per_iteration: 10,
            subintervals: 4,
            samples_per_iteration: 10,
            width_tolerance: 1e-4,
            max_iterations: 10_000_000,
            time_limit: None,
            derivative_test: true,
            full_gradient: false,
            sampling: SamplingScope::Selected,
            debug_soundness: false,
            threads: 0,
            rounding: RoundingPolicy::OptimalOutward,
        }
    }

    /// Dimensions actually partitioned per iteration: `min(p, n)`.
    pub fn effective_p(&self) -> usize {
        self.dims_per_iteration.min(self.n)
    }
}

/// Which stopping criterion fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    WidthTolerance,
    MaxIterations,
    TimeLimit,
    /// The worklist emptied. Cannot occur when the global minimum lies in
    /// the domain, since the region holding the best sampled point can
    /// never be swept.
    ListExhausted,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            StopReason::WidthTolerance => "width_tolerance",
            StopReason::MaxIterations => "max_iterations",
            StopReason::TimeLimit => "time_limit",
            StopReason::ListExhausted => "list_exhausted",
        }
    }
}

/// Soundness instrumentation verdict for a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Soundness {
    Ok,
    Violated,
    Off,
}

impl Soundness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Soundness::Ok => "ok",
            Soundness::Violated => "violated",
            Soundness::Off => "off",
        }
    }
}

/// One region of the final answer.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRegion {
    pub bounds: BoxRegion,
    pub lb: f64,
}

/// Everything a finished run reports.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub config: SolverConfig,
    pub regions: Vec<OutputRegion>,
    pub glb: f64,
    pub gub: f64,
    pub iterations: u64,
    pub stop_reason: StopReason,
    pub witness: Option<Vec<f64>>,
    pub wall_time: Duration,
    pub soundness: Soundness,
    pub kernel_evaluations: u64,
}

#[derive(Debug)]
pub enum SolverError {
    UnknownObjective(String),
    InvalidConfig(String),
}

impl std::fmt::Display for SolverError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolverError::UnknownObjective(name) => write!(f, "unknown objective '{name}'"),
            SolverError::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl std::error::Error for SolverError {}

/// Live state of a search.
pub struct SolverState {
    config: SolverConfig,
    objective: Box<dyn Objective>,
    kernel: Kernel,
    pool: rayon::ThreadPool,
    worklist: WorkList,
    history: Vec<IterationRecord>,
    gub: f64,
    witness: Option<Vec<f64>>,
    iteration: u64,
    started: Instant,
    stop: Option<StopReason>,
    soundness_violations: u64,
    kernel_evaluations: u64,
}

impl SolverState {
    /// Builds the initial state: the worklist holds one root entry covering
    /// the whole domain, the GUB starts at +inf.
    pub fn initialize(config: SolverConfig) -> Result<SolverState, SolverError> {
        if config.n == 0 {
            return Err(SolverError::InvalidConfig(
                "dimension must be positive".into(),
            ));
        }
        if config.subintervals < 2 {
            return Err(SolverError::InvalidConfig(
                "subintervals per dimension must be at least 2".into(),
            ));
        }
        if config.dims_per_iteration == 0 {
            return Err(SolverError::InvalidConfig(
                "dims per iteration must be positive".into(),
            ));
        }
        if config.samples_per_iteration == 0 {
            return Err(SolverError::InvalidConfig(
                "samples per iteration must be at least 1".into(),
            ));
        }
        if config.width_tolerance.is_nan() || config.width_tolerance <= 0.0 {
            return Err(SolverError::InvalidConfig(
                "width tolerance must be positive".into(),
            ));
        }
        let p = config.effective_p();
        if (config.subintervals as u64).checked_pow(p as u32).is_none()
            || (config.subintervals as u64).pow(p as u32) > u32::MAX as u64 + 1
        {
            return Err(SolverError::InvalidConfig(
                "s^p exceeds the subregion index range".into(),
            ));
        }
        let rounding = Rounding::new(config.rounding);
        let objective = by_name(&config.objective, config.n, rounding)
            .ok_or_else(|| SolverError::UnknownObjective(config.objective.clone()))?;
        Ok(SolverState::with_objective(config, objective))
    }

    /// Same as [`initialize`](Self::initialize) but with a caller-supplied
    /// objective (custom functions in tests).
    pub fn with_objective(config: SolverConfig, objective: Box<dyn Objective>) -> SolverState {
        assert_eq!(
            objective.spec().dimension,
            config.n,
            "objective dimension mismatch"
        );
        let p = config.effective_p();
        let scheme = PartitionScheme::new(p, config.subintervals);
        let m = config.samples_per_iteration;
        let ts: Vec<f64> = (1..=m).map(|j| j as f64 / (m + 1) as f64).collect();
        let kernel = Kernel {
            scheme,
            derivative_test: config.derivative_test && objective.spec().differentiable,
            full_gradient: config.full_gradient,
            sample_ts: match config.sampling {
                SamplingScope::Selected => Vec::new(),
                SamplingScope::PerSubregion => ts,
            },
            debug_soundness: config.debug_soundness,
        };
        let threads = if config.threads == 0 {
            std::thread::available_parallelism()
                .map(|t| t.get())
                .unwrap_or(1)
        } else {
            config.threads
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");

        let domain = objective.spec().domain.clone();
        let root = RegionEntry {
            sidx: 0,
            itr: -1,
            cyc: CyclingIndex::FIRST.get(),
            lb: objective.eval_interval(&domain).lo(),
            maxwidth: domain.max_width(),
        };
        let mut worklist = WorkList::default();
        worklist.insert_bulk([root]);

        SolverState {
            config,
            objective,
            kernel,
            pool,
            worklist,
            history: Vec::new(),
            gub: f64::INFINITY,
            witness: None,
            iteration: 0,
            started: Instant::now(),
            stop: None,
            soundness_violations: 0,
            kernel_evaluations: 0,
        }
    }

    pub fn gub(&self) -> f64 {
        self.gub
    }

    /// Smallest lower bound across the remaining regions; together with the
    /// GUB it brackets the global minimum.
    pub fn glb(&self) -> f64 {
        self.worklist.min_lb()
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn worklist(&self) -> &WorkList {
        &self.worklist
    }

    pub fn history_len(&self) -> usize {
        self.history.len()
    }

    pub fn objective(&self) -> &dyn Objective {
        &*self.objective
    }

    /// Rebuilds an entry's box: the root sentinel maps to the search
    /// domain, anything else re-derives the child of its creating
    /// iteration's selected region.
    pub fn reconstruct_box(&self, entry: &RegionEntry) -> BoxRegion {
        if entry.itr < 0 {
            return self.objective.spec().domain.clone();
        }
        let rec = &self.history[entry.itr as usize];
        child_box(
            &rec.selected,
            rec.cyc_used,
            entry.sidx as u64,
            &self.kernel.scheme,
        )
    }

    /// Removes and returns the min-lb entry along with its box.
    pub fn select_region(&mut self) -> Option<(RegionEntry, BoxRegion)> {
        let entry = self.worklist.extract_min()?;
        let bx = self.reconstruct_box(&entry);
        Some((entry, bx))
    }

    /// Evaluates rigorous upper bounds at `m` points that divide the box
    /// diagonal into `m + 1` equal pieces; returns the smallest bound and
    /// its (domain-clamped) location.
    pub fn sample_diagonal(&self, b: &BoxRegion, m: usize) -> (f64, Vec<f64>) {
        let domain = &self.objective.spec().domain;
        let mut best = f64::INFINITY;
        let mut best_point = Vec::new();
        for j in 1..=m {
            let t = j as f64 / (m + 1) as f64;
            let x: Vec<f64> = (0..b.dim())
                .map(|i| diagonal_coordinate(b.get(i), t, domain.get(i)))
                .collect();
            let v = self.objective.eval_point_upper(&x);
            if v < best {
                best = v;
                best_point = x;
            }
        }
        (best, best_point)
    }

    /// One full iteration: select, record, sample, sweep, partition, prune,
    /// insert.
    pub fn step(&mut self) {
        let Some((entry, selected)) = self.select_region() else {
            self.stop = Some(StopReason::ListExhausted);
            return;
        };
        let cyc = CyclingIndex::new(entry.cyc);
        self.history.push(IterationRecord {
            selected: selected.clone(),
            cyc_used: cyc,
        });

        if self.config.sampling == SamplingScope::Selected {
            let (v, point) = self.sample_diagonal(&selected, self.config.samples_per_iteration);
            if v < self.gub {
                self.gub = v;
                self.witness = Some(point);
                self.worklist.sweep(self.gub);
            }
        }

        let outcome = self
            .kernel
            .evaluate(&*self.objective, &self.pool, &selected, cyc, self.gub);
        self.kernel_evaluations += outcome.counts.evaluated;
        self.soundness_violations += outcome.counts.soundness_violations;
        if outcome.gub_candidate < self.gub {
            self.gub = outcome.gub_candidate;
            self.witness = outcome.witness.map(|w| w.point);
            self.worklist.sweep(self.gub);
        }

        #[cfg(debug_assertions)]
        if let Some(first) = outcome.survivors.first() {
            // reinserted entries must reconstruct to the kernel's own child box
            let probe = RegionEntry {
                sidx: first.sidx,
                itr: self.iteration as i32,
                cyc: 0,
                lb: first.lb,
                maxwidth: first.maxwidth,
            };
            debug_assert_eq!(
                self.reconstruct_box(&probe),
                child_box(&selected, cyc, first.sidx as u64, &self.kernel.scheme)
            );
        }

        let next_cyc = cyc
            .successor(self.kernel.scheme.dims_per_iteration(), self.config.n)
            .get();
        let itr = self.iteration as i32;
        self.worklist
            .insert_bulk(outcome.survivors.into_iter().map(|s| RegionEntry {
                sidx: s.sidx,
                itr,
                cyc: next_cyc,
                lb: s.lb,
                maxwidth: s.maxwidth,
            }));

        if self.config.debug_soundness {
            let star = &self.objective.spec().known_minimizer;
            let held = self
                .worklist
                .iter()
                .any(|e| self.reconstruct_box(e).contains_point(star));
            if !held {
                self.soundness_violations += 1;
            }
        }

        self.iteration += 1;
    }

    /// True when any stopping criterion holds; records which one fired.
    pub fn stopping_check(&mut self) -> bool {
        if let Some(_r) = self.stop {
            return true;
        }
        if !self.worklist.is_empty() && self.worklist.max_maxwidth() < self.config.width_tolerance {
            self.stop = Some(StopReason::WidthTolerance);
            return true;
        }
        if self.iteration >= self.config.max_iterations {
            self.stop = Some(StopReason::MaxIterations);
            return true;
        }
        if let Some(limit) = self.config.time_limit {
            if self.started.elapsed().as_secs_f64() >= limit {
                self.stop = Some(StopReason::TimeLimit);
                return true;
            }
        }
        false
    }

    /// Reconstructs every remaining region and packages the run's answer.
    pub fn finalize(self) -> SolveResult {
        let mut entries: Vec<RegionEntry> = self.worklist.iter().copied().collect();
        entries.sort_by_key(|e| (e.itr, e.sidx));
        let regions: Vec<OutputRegion> = entries
            .iter()
            .map(|e| OutputRegion {
                bounds: self.reconstruct_box(e),
                lb: e.lb,
            })
            .collect();
        let glb = if entries.is_empty() {
            self.gub
        } else {
            self.worklist.min_lb()
        };
        let soundness = if self.config.debug_soundness {
            if self.soundness_violations == 0 {
                Soundness::Ok
            } else {
                Soundness::Violated
            }
        } else {
            Soundness::Off
        };
        SolveResult {
            config: self.config,
            regions,
            glb,
            gub: self.gub,
            iterations: self.iteration,
            stop_reason: self.stop.unwrap_or(StopReason::WidthTolerance),
            witness: self.witness,
            wall_time: self.started.elapsed(),
            soundness,
            kernel_evaluations: self.kernel_evaluations,
        }
    }
}

/// Runs a configuration to completion.
pub fn solve(config: SolverConfig) -> Result<SolveResult, SolverError> {
    let mut state = SolverState::initialize(config)?;
    while !state.stopping_check() {
        state.step();
    }
    Ok(state.finalize())
}
