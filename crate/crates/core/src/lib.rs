//! Rigorous enclosure of global minima for box-constrained nonlinear
//! functions: interval arithmetic with outward rounding, benchmark
//! objectives with interval gradients, a data-parallel partition kernel,
//! and the complete-search loop that drives them.

pub mod engine;
pub mod interval;
pub mod kernel;
pub mod objectives;
pub mod region;

pub use engine::{
    solve, OutputRegion, RegionEntry, SamplingScope, SolveResult, SolverConfig, SolverError,
    SolverState, Soundness, StopReason, WorkList,
};
pub use interval::{Interval, IntervalError, Rounding, RoundingPolicy};
pub use kernel::{
    child_box, prune_test, subindices, CyclingIndex, Kernel, KernelOutcome, PartitionScheme,
    PruneOutcome, Survivor,
};
pub use objectives::{by_name, catalog, Objective, ObjectiveSpec, PreparedEval};
pub use region::BoxRegion;
