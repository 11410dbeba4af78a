//! Benchmark objectives with interval evaluation and interval gradients.
//!
//! Every objective answers three questions rigorously: an enclosure of `f`
//! over a box, enclosures of requested first-order partials over a box, and
//! an upper bound of `f` at a point. A partition-aware prepared form caches
//! the contribution of unchanged dimensions so the kernel's inner loop pays
//! for the partitioned dimensions only.

mod functions;

pub use functions::{by_name, catalog, NAMES};

use std::ops::Range;

use crate::interval::{Interval, Rounding};
use crate::region::BoxRegion;

/// Static description of a benchmark instance.
#[derive(Debug, Clone)]
pub struct ObjectiveSpec {
    pub name: String,
    pub dimension: usize,
    pub domain: BoxRegion,
    pub known_minimizer: Vec<f64>,
    pub known_minimum: f64,
    pub differentiable: bool,
}

impl ObjectiveSpec {
    pub fn new(
        name: impl Into<String>,
        domain: BoxRegion,
        known_minimizer: Vec<f64>,
        known_minimum: f64,
    ) -> ObjectiveSpec {
        let spec = ObjectiveSpec {
            name: name.into(),
            dimension: domain.dim(),
            domain,
            known_minimizer,
            known_minimum,
            differentiable: true,
        };
        debug_assert!(spec.domain.intervals().iter().all(|d| d.lo() < d.hi()));
        debug_assert!(spec.domain.contains_point(&spec.known_minimizer));
        spec
    }
}

/// A box-constrained nonlinear function with rigorous interval semantics.
///
/// Evaluation is pure; implementations are immutable after construction and
/// safe for unrestricted concurrent use.
pub trait Objective: Send + Sync {
    fn spec(&self) -> &ObjectiveSpec;

    fn rounding(&self) -> Rounding;

    /// Enclosure of `{f(x) : x in b}`.
    ///
    /// Panics on dimension mismatch.
    fn eval_interval(&self, b: &BoxRegion) -> Interval;

    /// Enclosures of `df/dx_i` over `b` for each `i` in `dims`, appended to
    /// `out` in ascending dimension order.
    ///
    /// Panics on dimension mismatch or when the objective is not
    /// differentiable.
    fn eval_gradient_interval(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>);

    /// Rigorous upper bound of `f(x)`: the upper endpoint of the interval
    /// evaluation at the degenerate box of `x`. Feeds GUB updates.
    ///
    /// Panics when `x` lies outside the domain.
    fn eval_point_upper(&self, x: &[f64]) -> f64 {
        assert!(
            self.spec().domain.contains_point(x),
            "sample point outside the search domain"
        );
        self.eval_interval(&BoxRegion::from_point(x)).hi()
    }

    /// Partition-aware evaluation context for children of `parent` that vary
    /// only on `dims`. `ts` lists the diagonal sample fractions wanted from
    /// `PreparedEval::sample_upper`. The default clones the parent box per
    /// call; benchmark objectives override it with cached accumulators.
    fn prepare<'a>(
        &'a self,
        parent: &BoxRegion,
        dims: Range<usize>,
        ts: &[f64],
    ) -> Box<dyn PreparedEval + 'a> {
        Box::new(GenericPrepared::new(self, parent, dims, ts))
    }
}

/// Evaluation against one parent box and one partitioned-dimension group.
pub trait PreparedEval: Send + Sync {
    /// Enclosure of `f` over the child whose partitioned dimensions take the
    /// given intervals (unchanged dimensions keep the parent's).
    fn eval_child(&self, changed: &[Interval]) -> Interval;

    /// Rigorous upper bound of `f` at the `j`-th diagonal sample point of a
    /// child, given the child's coordinates on the partitioned dimensions.
    fn sample_upper(&self, j: usize, changed: &[f64]) -> f64;
}

/// Coordinate of the diagonal point at fraction `t` in one dimension,
/// clamped into the domain so GUB witnesses always stay feasible.
#[inline]
pub fn diagonal_coordinate(dim: Interval, t: f64, domain_dim: Interval) -> f64 {
    let x = dim.lo() + t * (dim.hi() - dim.lo());
    x.clamp(domain_dim.lo(), domain_dim.hi())
}

/// Fallback prepared evaluation: rebuilds the full box or point per call.
struct GenericPrepared<'a, O: ?Sized> {
    obj: &'a O,
    parent: BoxRegion,
    dims: Range<usize>,
    /// Per sample fraction, the full coordinate vector of the parent's
    /// diagonal point (partitioned dims overwritten per child).
    sample_base: Vec<Vec<f64>>,
}

impl<'a, O: Objective + ?Sized> GenericPrepared<'a, O> {
    fn new(obj: &'a O, parent: &BoxRegion, dims: Range<usize>, ts: &[f64]) -> Self {
        let domain = &obj.spec().domain;
        let sample_base = ts
            .iter()
            .map(|&t| {
                (0..parent.dim())
                    .map(|i| diagonal_coordinate(parent.get(i), t, domain.get(i)))
                    .collect()
            })
            .collect();
        GenericPrepared {
            obj,
            parent: parent.clone(),
            dims,
            sample_base,
        }
    }
}

impl<'a, O: Objective + ?Sized> PreparedEval for GenericPrepared<'a, O> {
    fn eval_child(&self, changed: &[Interval]) -> Interval {
        let mut b = self.parent.clone();
        for (k, i) in self.dims.clone().enumerate() {
            b.set(i, changed[k]);
        }
        self.obj.eval_interval(&b)
    }

    fn sample_upper(&self, j: usize, changed: &[f64]) -> f64 {
        let mut x = self.sample_base[j].clone();
        for (k, i) in self.dims.clone().enumerate() {
            x[i] = changed[k];
        }
        self.obj.eval_point_upper(&x)
    }
}

/// Accumulator kind for dimension-separable objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum AccKind {
    Sum,
    Product,
}

impl AccKind {
    #[inline]
    fn identity(self) -> Interval {
        match self {
            AccKind::Sum => Interval::ZERO,
            AccKind::Product => Interval::ONE,
        }
    }

    #[inline]
    fn fold(self, r: &Rounding, acc: Interval, v: Interval) -> Interval {
        match self {
            AccKind::Sum => r.add(acc, v),
            AccKind::Product => r.mul(acc, v),
        }
    }
}

/// Shape shared by nine of the ten benchmarks: per-dimension atoms feeding
/// one or two sum/product accumulators, then an O(1) finisher. The Levy
/// chain couples adjacent dimensions and implements its paths by hand.
pub(crate) trait SepForm: Objective {
    const ARITY: usize;
    const KINDS: [AccKind; 2];

    /// Contributions of dimension `i` with value `x` to each accumulator.
    fn atoms(&self, i: usize, x: Interval) -> [Interval; 2];

    /// Combine accumulator totals into the function enclosure.
    fn finish(&self, acc: &[Interval; 2]) -> Interval;
}

pub(crate) fn sep_identities<O: SepForm>(_o: &O) -> [Interval; 2] {
    [O::KINDS[0].identity(), O::KINDS[1].identity()]
}

pub(crate) fn sep_fold_dim<O: SepForm>(
    o: &O,
    r: &Rounding,
    acc: &mut [Interval; 2],
    i: usize,
    x: Interval,
) {
    let a = o.atoms(i, x);
    for k in 0..O::ARITY {
        acc[k] = O::KINDS[k].fold(r, acc[k], a[k]);
    }
}

/// Canonical full-box evaluation for a separable form: left-to-right fold
/// over all dimensions from the accumulator identities.
pub(crate) fn sep_eval<O: SepForm>(o: &O, b: &BoxRegion) -> Interval {
    let n = o.spec().dimension;
    assert_eq!(b.dim(), n, "box dimension mismatch");
    let r = o.rounding();
    let mut acc = sep_identities(o);
    for i in 0..n {
        sep_fold_dim(o, &r, &mut acc, i, b.get(i));
    }
    o.finish(&acc)
}

/// Cached prepared evaluation for separable forms.
pub(crate) struct SepPrepared<'a, O: SepForm> {
    obj: &'a O,
    dims: Range<usize>,
    /// Accumulator totals over the unchanged dimensions of the parent box.
    rest: [Interval; 2],
    /// Per sample fraction, accumulator totals over the unchanged
    /// dimensions evaluated at the parent's diagonal point.
    sample_rest: Vec<[Interval; 2]>,
}

impl<'a, O: SepForm> SepPrepared<'a, O> {
    pub(crate) fn new(obj: &'a O, parent: &BoxRegion, dims: Range<usize>, ts: &[f64]) -> Self {
        let n = obj.spec().dimension;
        assert_eq!(parent.dim(), n, "box dimension mismatch");
        assert!(dims.end <= n);
        let r = obj.rounding();
        let domain = &obj.spec().domain;

        let mut rest = sep_identities(obj);
        for i in (0..dims.start).chain(dims.end..n) {
            sep_fold_dim(obj, &r, &mut rest, i, parent.get(i));
        }

        let sample_rest = ts
            .iter()
            .map(|&t| {
                let mut acc = sep_identities(obj);
                for i in (0..dims.start).chain(dims.end..n) {
                    let x = diagonal_coordinate(parent.get(i), t, domain.get(i));
                    sep_fold_dim(obj, &r, &mut acc, i, Interval::point(x));
                }
                acc
            })
            .collect();

        SepPrepared {
            obj,
            dims,
            rest,
            sample_rest,
        }
    }
}

impl<'a, O: SepForm> PreparedEval for SepPrepared<'a, O> {
    fn eval_child(&self, changed: &[Interval]) -> Interval {
        debug_assert_eq!(changed.len(), self.dims.len());
        let r = self.obj.rounding();
        let mut acc = self.rest;
        for (k, i) in self.dims.clone().enumerate() {
            sep_fold_dim(self.obj, &r, &mut acc, i, changed[k]);
        }
        self.obj.finish(&acc)
    }

    fn sample_upper(&self, j: usize, changed: &[f64]) -> f64 {
        debug_assert_eq!(changed.len(), self.dims.len());
        let r = self.obj.rounding();
        let mut acc = self.sample_rest[j];
        for (k, i) in self.dims.clone().enumerate() {
            sep_fold_dim(self.obj, &r, &mut acc, i, Interval::point(changed[k]));
        }
        self.obj.finish(&acc).hi()
    }
}

/// `prod[i] = product of atoms[j] for j != i`, via prefix/suffix interval
/// products. Avoids dividing by factors that may contain zero.
pub(crate) fn products_excluding(r: &Rounding, atoms: &[Interval]) -> Vec<Interval> {
    let n = atoms.len();
    let mut pre = vec![Interval::ONE; n + 1];
    for i in 0..n {
        pre[i + 1] = r.mul(pre[i], atoms[i]);
    }
    let mut suf = vec![Interval::ONE; n + 1];
    for i in (0..n).rev() {
        suf[i] = r.mul(atoms[i], suf[i + 1]);
    }
    (0..n).map(|i| r.mul(pre[i], suf[i + 1])).collect()
}
