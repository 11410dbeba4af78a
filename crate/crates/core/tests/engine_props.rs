//! Search-loop behavior: selection order, sweeping, sampling, stopping,
//! reconstruction and solver-level determinism.

use std::ops::Range;

use boxmin::{
    solve, BoxRegion, Interval, Objective, ObjectiveSpec, RegionEntry, Rounding, RoundingPolicy,
    SamplingScope, SolverConfig, SolverError, SolverState, Soundness, StopReason, WorkList,
};

fn rounding() -> Rounding {
    Rounding::new(RoundingPolicy::OptimalOutward)
}

fn entry(lb: f64, itr: i32, sidx: u32) -> RegionEntry {
    RegionEntry {
        sidx,
        itr,
        cyc: 1,
        lb,
        maxwidth: 1.0,
    }
}

#[test]
fn worklist_extract_min_and_tie_breaks() {
    let mut l = WorkList::default();
    l.insert_bulk([entry(3.2, 0, 0), entry(0.5, 1, 4), entry(7.1, 0, 1)]);
    assert_eq!(l.extract_min().unwrap().lb, 0.5);
    assert_eq!(l.len(), 2);
    // equal lower bounds: earlier iteration wins
    let mut l = WorkList::default();
    l.insert_bulk([entry(1.0, 5, 0), entry(1.0, 3, 9)]);
    assert_eq!(l.extract_min().unwrap().itr, 3);
    // equal lb and iteration: smaller subregion index wins
    let mut l = WorkList::default();
    l.insert_bulk([entry(1.0, 2, 7), entry(1.0, 2, 3)]);
    assert_eq!(l.extract_min().unwrap().sidx, 3);
}

#[test]
fn worklist_sweep_is_strict() {
    let mut l = WorkList::default();
    l.insert_bulk([entry(0.5, 0, 0), entry(3.2, 0, 1), entry(7.1, 0, 2)]);
    assert_eq!(l.sweep(3.2), 1); // 3.2 itself is retained
    assert_eq!(l.len(), 2);
    assert_eq!(l.sweep(f64::INFINITY), 0);
    assert_eq!(l.sweep(f64::NEG_INFINITY), 2);
    assert!(l.is_empty());
}

#[test]
fn region_entry_stays_compact() {
    // three integers plus two scalars; reconstruction, not storage, carries
    // the box, so worklist memory is independent of the dimension
    assert!(std::mem::size_of::<RegionEntry>() <= 3 * 8 + 2 * 8);
}

#[test]
fn initialize_builds_root_state() {
    let cfg = SolverConfig::new("levy", 2);
    let state = SolverState::initialize(cfg).unwrap();
    assert_eq!(state.worklist().len(), 1);
    assert_eq!(state.gub(), f64::INFINITY);
    let root = *state.worklist().iter().next().unwrap();
    assert_eq!(root.itr, -1);
    assert_eq!(root.cyc, 1);
    let b = state.reconstruct_box(&root);
    assert_eq!(b, BoxRegion::uniform(2, -10.0, 10.0));
    let direct = state.objective().eval_interval(&b);
    assert_eq!(root.lb, direct.lo());
    assert_eq!(root.maxwidth, 20.0);
}

#[test]
fn initialize_rejects_bad_configs() {
    match SolverState::initialize(SolverConfig::new("nonesuch", 5)) {
        Err(SolverError::UnknownObjective(name)) => assert_eq!(name, "nonesuch"),
        Err(other) => panic!("expected unknown objective, got {other}"),
        Ok(_) => panic!("expected unknown objective, got a state"),
    }
    let mut cfg = SolverConfig::new("levy", 5);
    cfg.subintervals = 1;
    assert!(matches!(
        SolverState::initialize(cfg),
        Err(SolverError::InvalidConfig(_))
    ));
    let mut cfg = SolverConfig::new("levy", 5);
    cfg.width_tolerance = 0.0;
    assert!(matches!(
        SolverState::initialize(cfg),
        Err(SolverError::InvalidConfig(_))
    ));
}

/// 1-D identity function for the diagonal-sampling arithmetic.
struct Identity1D {
    spec: ObjectiveSpec,
    r: Rounding,
}

impl Identity1D {
    fn new() -> Identity1D {
        Identity1D {
            spec: ObjectiveSpec::new(
                "identity1d",
                BoxRegion::uniform(1, 0.0, 11.0),
                vec![0.0],
                0.0,
            ),
            r: rounding(),
        }
    }
}

impl Objective for Identity1D {
    fn spec(&self) -> &ObjectiveSpec {
        &self.spec
    }
    fn rounding(&self) -> Rounding {
        self.r
    }
    fn eval_interval(&self, b: &BoxRegion) -> Interval {
        b.get(0)
    }
    fn eval_gradient_interval(&self, _b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        for _ in dims {
            out.push(Interval::ONE);
        }
    }
}

#[test]
fn diagonal_sampling_divides_into_equal_pieces() {
    let mut cfg = SolverConfig::new("identity1d", 1);
    cfg.dims_per_iteration = 1;
    let state = SolverState::with_objective(cfg, Box::new(Identity1D::new()));
    // ten samples on [0, 11]: points 1..10, minimum at x = 1
    let (best, point) = state.sample_diagonal(&BoxRegion::uniform(1, 0.0, 11.0), 10);
    assert!((best - 1.0).abs() < 1e-12, "{best}");
    assert!((point[0] - 1.0).abs() < 1e-12);
    // single sample lands on the midpoint
    let (mid, point) = state.sample_diagonal(&BoxRegion::uniform(1, 0.0, 11.0), 1);
    assert!((mid - 5.5).abs() < 1e-12);
    assert!((point[0] - 5.5).abs() < 1e-12);
}

/// Two zero-touching cells alternate as the incumbent on x^2 over [-1, 1]
/// (the minimizer sits exactly on a shared cut), so the run keeps exactly
/// two chains, seven levels each after the initial split.
#[test]
fn square_toy_retains_both_zero_cells() {
    struct Square1D {
        spec: ObjectiveSpec,
        r: Rounding,
    }
    impl Objective for Square1D {
        fn spec(&self) -> &ObjectiveSpec {
            &self.spec
        }
        fn rounding(&self) -> Rounding {
            self.r
        }
        fn eval_interval(&self, b: &BoxRegion) -> Interval {
            self.r.sqr(b.get(0))
        }
        fn eval_gradient_interval(
            &self,
            b: &BoxRegion,
            dims: Range<usize>,
            out: &mut Vec<Interval>,
        ) {
            for i in dims {
                out.push(self.r.mul(Interval::point(2.0), b.get(i)));
            }
        }
    }
    let mut cfg = SolverConfig::new("square1d", 1);
    cfg.dims_per_iteration = 1;
    cfg.debug_soundness = true;
    let state = SolverState::with_objective(
        cfg,
        Box::new(Square1D {
            spec: ObjectiveSpec::new("square1d", BoxRegion::uniform(1, -1.0, 1.0), vec![0.0], 0.0),
            r: rounding(),
        }),
    );
    let mut state = state;
    while !state.stopping_check() {
        state.step();
    }
    let res = state.finalize();
    assert_eq!(res.iterations, 15);
    assert_eq!(res.regions.len(), 2);
    for reg in &res.regions {
        assert!(reg.bounds.contains_point(&[0.0]));
        assert!(reg.bounds.get(0).width() < 1e-4);
    }
    assert!(res.glb <= 0.0 && 0.0 <= res.gub);
    assert_eq!(res.stop_reason, StopReason::WidthTolerance);
    assert_eq!(res.soundness, Soundness::Ok);
}

#[test]
fn first_iteration_survivors_cycle_forward() {
    let mut cfg = SolverConfig::new("levy", 12);
    cfg.dims_per_iteration = 10;
    let mut state = SolverState::initialize(cfg).unwrap();
    state.step();
    assert!(!state.worklist().is_empty());
    assert!(state.worklist().iter().all(|e| e.cyc == 11 && e.itr == 0));
    // and one more cycle wraps back to dimension 1
    state.step();
    assert!(state.worklist().iter().any(|e| e.cyc == 1));
}

#[test]
fn gub_is_monotone_and_reconstruction_round_trips() {
    let mut cfg = SolverConfig::new("breiman", 4);
    cfg.dims_per_iteration = 2;
    let mut state = SolverState::initialize(cfg).unwrap();
    let mut prev = f64::INFINITY;
    for _ in 0..8 {
        if state.stopping_check() {
            break;
        }
        state.step();
        assert!(state.gub() <= prev);
        assert!(state.glb() <= state.gub());
        prev = state.gub();
        for e in state.worklist().iter() {
            let b = state.reconstruct_box(e);
            assert_eq!(b.dim(), 4);
            assert!(b.max_width() <= e.maxwidth * (1.0 + 1e-12));
        }
    }
}

#[test]
fn stopping_reasons_are_reported() {
    let mut cfg = SolverConfig::new("levy", 2);
    cfg.dims_per_iteration = 2;
    cfg.max_iterations = 3;
    let res = solve(cfg).unwrap();
    assert_eq!(res.stop_reason, StopReason::MaxIterations);
    assert_eq!(res.iterations, 3);

    let mut cfg = SolverConfig::new("levy", 2);
    cfg.dims_per_iteration = 2;
    cfg.time_limit = Some(0.0);
    let res = solve(cfg).unwrap();
    assert_eq!(res.stop_reason, StopReason::TimeLimit);
    assert_eq!(res.iterations, 0);

    let mut cfg = SolverConfig::new("levy", 2);
    cfg.dims_per_iteration = 2;
    let res = solve(cfg).unwrap();
    assert_eq!(res.stop_reason, StopReason::WidthTolerance);
    assert!(res.regions.iter().all(|r| r.bounds.max_width() < 1e-4));
}

#[test]
fn solver_output_is_thread_count_invariant() {
    for sampling in [SamplingScope::Selected, SamplingScope::PerSubregion] {
        let run = |threads: usize| {
            let mut cfg = SolverConfig::new("rastrigin", 4);
            cfg.dims_per_iteration = 2;
            cfg.sampling = sampling;
            cfg.threads = threads;
            cfg.debug_soundness = true;
            solve(cfg).unwrap()
        };
        let a = run(1);
        let b = run(8);
        assert_eq!(a.iterations, b.iterations);
        assert_eq!(a.glb.to_bits(), b.glb.to_bits());
        assert_eq!(a.gub.to_bits(), b.gub.to_bits());
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.regions.len(), b.regions.len());
        for (x, y) in a.regions.iter().zip(&b.regions) {
            assert_eq!(x, y);
        }
        assert_eq!(a.soundness, Soundness::Ok);
    }
}

#[test]
fn per_subregion_sampling_also_encloses() {
    let mut cfg = SolverConfig::new("zabinsky", 4);
    cfg.dims_per_iteration = 2;
    cfg.sampling = SamplingScope::PerSubregion;
    cfg.debug_soundness = true;
    let res = solve(cfg).unwrap();
    assert_eq!(res.regions.len(), 1);
    assert!(res.glb <= -3.5 && -3.5 <= res.gub);
    assert_eq!(res.soundness, Soundness::Ok);
    let witness = res.witness.unwrap();
    assert_eq!(witness.len(), 4);
}

#[test]
fn history_grows_one_record_per_iteration() {
    let mut cfg = SolverConfig::new("fu", 3);
    cfg.dims_per_iteration = 3;
    cfg.max_iterations = 5;
    let mut state = SolverState::initialize(cfg).unwrap();
    for expected in 1..=5 {
        state.step();
        assert_eq!(state.iteration(), expected);
        assert_eq!(state.history_len(), expected as usize);
    }
}

#[test]
fn slack_ulps_policy_still_encloses() {
    let mut cfg = SolverConfig::new("breiman", 4);
    cfg.dims_per_iteration = 2;
    cfg.rounding = RoundingPolicy::SlackUlps(2);
    cfg.debug_soundness = true;
    let res = solve(cfg).unwrap();
    assert_eq!(res.stop_reason, StopReason::WidthTolerance);
    assert!(res.glb <= -0.4 && -0.4 <= res.gub); // f* = -0.1 n = -0.4
    assert!(res.gub - res.glb < 1e-2);
    assert_eq!(res.soundness, Soundness::Ok);
    assert!(res
        .regions
        .iter()
        .any(|r| r.bounds.contains_point(&[0.0; 4])));
}
