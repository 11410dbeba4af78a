//! The data-parallel partition kernel.
//!
//! Each iteration partitions the selected region into `k = s^p` subregions.
//! A subregion is never materialized up front: every work item derives its
//! own box from the shared parent location and its linear index `r` through
//! a mixed-radix decomposition, evaluates bounds, and applies the pruning
//! rules. Results are reproducible bit for bit across any thread count:
//! survivors are gathered in ascending `r`, reductions are associative, and
//! ties break lexicographically.

use std::ops::Range;

use rayon::prelude::*;

use crate::interval::Interval;
use crate::objectives::{diagonal_coordinate, Objective};
use crate::region::BoxRegion;

/// How many dimensions are split per iteration and into how many pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionScheme {
    p: usize,
    s: usize,
    k: u64,
}

impl PartitionScheme {
    /// Requires `s >= 2`, `p >= 1`, and `s^p` representable in 32 bits so
    /// subregion indices stay compact in the worklist.
    pub fn new(p: usize, s: usize) -> PartitionScheme {
        assert!(s >= 2, "subintervals per dimension must be at least 2");
        assert!(p >= 1, "must partition at least one dimension");
        let k = (s as u64)
            .checked_pow(p as u32)
            .filter(|&k| k <= u32::MAX as u64 + 1)
            .expect("s^p exceeds the subregion index range");
        PartitionScheme { p, s, k }
    }

    #[inline]
    pub fn dims_per_iteration(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn subintervals(&self) -> usize {
        self.s
    }

    /// Total subregions for a full group of `p` dimensions.
    #[inline]
    pub fn k(&self) -> u64 {
        self.k
    }

    /// Subregions produced when only `group_len` dimensions are split
    /// (the final group of a cycle may be short when `p` does not divide
    /// `n`).
    #[inline]
    pub fn subregions_for(&self, group_len: usize) -> u64 {
        (self.s as u64).pow(group_len as u32)
    }
}

/// 1-based index of the first dimension in the group partitioned next,
/// advancing by `p` per visit and wrapping to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclingIndex(u32);

impl CyclingIndex {
    pub const FIRST: CyclingIndex = CyclingIndex(1);

    pub fn new(c: u32) -> CyclingIndex {
        assert!(c >= 1, "cycling index is 1-based");
        CyclingIndex(c)
    }

    #[inline]
    pub fn get(&self) -> u32 {
        self.0
    }

    /// The 0-based dimension range `{c, ..., min(c+p-1, n)}` this index
    /// selects.
    #[inline]
    pub fn group(&self, p: usize, n: usize) -> Range<usize> {
        let start = self.0 as usize - 1;
        debug_assert!(start < n);
        start..(start + p).min(n)
    }

    /// `c + p` while it stays within `n`, else back to 1.
    #[inline]
    pub fn successor(&self, p: usize, n: usize) -> CyclingIndex {
        let next = self.0 as usize + p;
        if next <= n {
            CyclingIndex(next as u32)
        } else {
            CyclingIndex(1)
        }
    }
}

/// Mixed-radix digits of `r`: `I_j = (r / s^(j-1)) mod s`, dimension 1
/// fastest.
pub fn subindices(r: u64, scheme: &PartitionScheme) -> Vec<u32> {
    assert!(r < scheme.k(), "subregion index out of range");
    let mut rr = r;
    (0..scheme.p)
        .map(|_| {
            let d = (rr % scheme.s as u64) as u32;
            rr /= scheme.s as u64;
            d
        })
        .collect()
}

/// Inverse of [`subindices`]: digits back to the linear index.
pub fn recompose(digits: &[u32], scheme: &PartitionScheme) -> u64 {
    digits
        .iter()
        .rev()
        .fold(0u64, |acc, &d| acc * scheme.s as u64 + d as u64)
}

/// The `j`-th cut point of a dimension split into `s` cells. Interior cuts
/// are computed once per (dimension, j) and shared by both adjacent cells,
/// so the partition tiles the parent without gaps; the outermost endpoints
/// reuse the parent's values verbatim.
#[inline]
fn cut(dim: Interval, j: usize, s: usize) -> f64 {
    if j == 0 {
        dim.lo()
    } else if j == s {
        dim.hi()
    } else {
        let w = (dim.hi() - dim.lo()) / s as f64;
        dim.lo() + w * j as f64
    }
}

/// Cell `idx` of a dimension split into `s` pieces.
#[inline]
fn cell(dim: Interval, idx: usize, s: usize) -> Interval {
    let lo = cut(dim, idx, s);
    let hi = cut(dim, idx + 1, s);
    debug_assert!(lo <= hi, "cut points out of order");
    Interval::new(lo, hi)
}

/// Child box `r` of `parent` under cycling index `cyc`: partitioned
/// dimensions take their mixed-radix cell, the rest are copied verbatim.
pub fn child_box(
    parent: &BoxRegion,
    cyc: CyclingIndex,
    r: u64,
    scheme: &PartitionScheme,
) -> BoxRegion {
    let group = cyc.group(scheme.p, parent.dim());
    assert!(
        r < scheme.subregions_for(group.len()),
        "subregion index out of range"
    );
    let mut b = parent.clone();
    let mut rr = r;
    for i in group {
        let idx = (rr % scheme.s as u64) as usize;
        rr /= scheme.s as u64;
        b.set(i, cell(parent.get(i), idx, scheme.s));
    }
    b
}

/// Why a subregion was ruled out, or `Keep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneOutcome {
    Keep,
    PrunedByGub,
    /// First-order test fired on this dimension.
    PrunedByDerivative(usize),
}

/// The two rigorous pruning rules. The GUB rule is strict (`lb > gub`); the
/// first-order rule requires the sign-definite side of the box to sit off
/// the search-domain edge, compared by exact endpoint equality.
pub fn prune_test(
    bx: &BoxRegion,
    fbounds: Interval,
    dims: Range<usize>,
    grads: &[Interval],
    gub: f64,
    domain: &BoxRegion,
) -> PruneOutcome {
    if fbounds.lo() > gub {
        return PruneOutcome::PrunedByGub;
    }
    debug_assert_eq!(grads.len(), dims.len());
    for (g, i) in dims.enumerate() {
        let d = grads[g];
        if d.lo() > 0.0 && bx.get(i).lo() != domain.get(i).lo() {
            return PruneOutcome::PrunedByDerivative(i);
        }
        if d.hi() < 0.0 && bx.get(i).hi() != domain.get(i).hi() {
            return PruneOutcome::PrunedByDerivative(i);
        }
    }
    PruneOutcome::Keep
}

/// A subregion that survived both pruning rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Survivor {
    pub sidx: u32,
    pub lb: f64,
    pub maxwidth: f64,
}

/// Best in-kernel sample: its rigorous upper bound and location.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelWitness {
    pub value: f64,
    pub point: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KernelCounts {
    pub evaluated: u64,
    pub pruned_gub: u64,
    pub pruned_derivative: u64,
    /// Pruned subregions that contained the known minimizer. Must stay zero;
    /// counted only under soundness instrumentation.
    pub soundness_violations: u64,
}

/// Result of one partition-and-prune pass.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelOutcome {
    /// Ascending by `sidx`.
    pub survivors: Vec<Survivor>,
    /// Minimum rigorous upper bound over all in-kernel samples; `+inf` when
    /// the kernel was not asked to sample.
    pub gub_candidate: f64,
    pub witness: Option<KernelWitness>,
    pub counts: KernelCounts,
}

/// Kernel configuration, fixed for a solver run.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub scheme: PartitionScheme,
    pub derivative_test: bool,
    /// Test all `n` derivative signs instead of only the partitioned group.
    pub full_gradient: bool,
    /// Diagonal sample fractions evaluated per subregion; empty when the
    /// engine samples the selected region instead.
    pub sample_ts: Vec<f64>,
    pub debug_soundness: bool,
}

#[derive(Default)]
struct ChunkOut {
    survivors: Vec<Survivor>,
    counts: KernelCounts,
}

impl Kernel {
    /// Partitions `parent` and rules out suboptimal subregions against
    /// `gub` (tightened first by in-kernel samples when configured). Pure in
    /// its inputs: the outcome is identical for any thread count.
    pub fn evaluate(
        &self,
        obj: &dyn Objective,
        pool: &rayon::ThreadPool,
        parent: &BoxRegion,
        cyc: CyclingIndex,
        gub: f64,
    ) -> KernelOutcome {
        let n = parent.dim();
        let group = cyc.group(self.scheme.p, n);
        let glen = group.len();
        let k = self.scheme.subregions_for(glen);
        let s = self.scheme.s;

        // shared, read-only context for all work items
        let cuts: Vec<Vec<f64>> = group
            .clone()
            .map(|i| (0..=s).map(|j| cut(parent.get(i), j, s)).collect())
            .collect();
        let rest_maxwidth = (0..n)
            .filter(|i| !group.contains(i))
            .map(|i| parent.get(i).width())
            .fold(0.0, f64::max);
        let prepared = obj.prepare(parent, group.clone(), &self.sample_ts);
        let spec = obj.spec();
        let star = &spec.known_minimizer;
        let star_rest_inside = self.debug_soundness
            && (0..n)
                .filter(|i| !group.contains(i))
                .all(|i| parent.get(i).contains(star[i]));

        let chunk = (k / (pool.current_num_threads() as u64 * 8))
            .clamp(1024, 131_072)
            .min(k.max(1));
        let ranges: Vec<(u64, u64)> = (0..k)
            .step_by(chunk as usize)
            .map(|r0| (r0, (r0 + chunk).min(k)))
            .collect();

        // Pass 1 (optional): per-subregion diagonal samples tighten the GUB
        // before any pruning decision.
        let mut gub_candidate = f64::INFINITY;
        let mut best: Option<(f64, u64, u32)> = None;
        if !self.sample_ts.is_empty() {
            let chunk_bests: Vec<Option<(f64, u64, u32)>> = pool.install(|| {
                ranges
                    .par_iter()
                    .map(|&(r0, r1)| {
                        self.sample_chunk(
                            &*prepared,
                            &cuts,
                            &group,
                            spec.domain.intervals(),
                            r0,
                            r1,
                        )
                    })
                    .collect()
            });
            for b in chunk_bests.into_iter().flatten() {
                best = Some(match best {
                    None => b,
                    Some(cur) if b.0 < cur.0 => b,
                    Some(cur) => cur,
                });
            }
            if let Some((v, _, _)) = best {
                gub_candidate = v;
            }
        }
        let gub_eff = gub.min(gub_candidate);

        // Pass 2: bounds, pruning, survivor collection in ascending r.
        let outs: Vec<ChunkOut> = pool.install(|| {
            ranges
                .par_iter()
                .map(|&(r0, r1)| {
                    self.prune_chunk(
                        obj,
                        &*prepared,
                        &cuts,
                        &group,
                        parent,
                        rest_maxwidth,
                        star_rest_inside.then_some(star.as_slice()),
                        gub_eff,
                        r0,
                        r1,
                    )
                })
                .collect()
        });

        let mut survivors = Vec::new();
        let mut counts = KernelCounts::default();
        for o in outs {
            survivors.extend(o.survivors);
            counts.evaluated += o.counts.evaluated;
            counts.pruned_gub += o.counts.pruned_gub;
            counts.pruned_derivative += o.counts.pruned_derivative;
            counts.soundness_violations += o.counts.soundness_violations;
        }
        debug_assert!(survivors.windows(2).all(|w| w[0].sidx < w[1].sidx));

        let witness = best.map(|(value, r, j)| {
            let t = self.sample_ts[j as usize];
            let child = child_box(parent, cyc, r, &self.scheme);
            let point = (0..n)
                .map(|i| diagonal_coordinate(child.get(i), t, spec.domain.get(i)))
                .collect();
            KernelWitness { value, point }
        });

        KernelOutcome {
            survivors,
            gub_candidate,
            witness,
            counts,
        }
    }

    /// Writes the cells of subregion `r` into `changed`.
    #[inline]
    fn decode_cells(&self, cuts: &[Vec<f64>], r: u64, changed: &mut [Interval]) {
        let s = self.scheme.s as u64;
        let mut rr = r;
        for (g, c) in changed.iter_mut().enumerate() {
            let idx = (rr % s) as usize;
            rr /= s;
            *c = Interval::new(cuts[g][idx], cuts[g][idx + 1]);
        }
    }

    fn sample_chunk(
        &self,
        prepared: &dyn crate::objectives::PreparedEval,
        cuts: &[Vec<f64>],
        group: &Range<usize>,
        domain: &[Interval],
        r0: u64,
        r1: u64,
    ) -> Option<(f64, u64, u32)> {
        let glen = group.len();
        let mut changed = vec![Interval::ZERO; glen];
        let mut coords = vec![0.0; glen];
        let mut best: Option<(f64, u64, u32)> = None;
        for r in r0..r1 {
            self.decode_cells(cuts, r, &mut changed);
            for (j, &t) in self.sample_ts.iter().enumerate() {
                for g in 0..glen {
                    coords[g] = diagonal_coordinate(changed[g], t, domain[group.start + g]);
                }
                let v = prepared.sample_upper(j, &coords);
                let cand = (v, r, j as u32);
                best = Some(match best {
                    None => cand,
                    Some(cur) if cand.0 < cur.0 => cand,
                    Some(cur) => cur,
                });
            }
        }
        best
    }

    #[allow(clippy::too_many_arguments)]
    fn prune_chunk(
        &self,
        obj: &dyn Objective,
        prepared: &dyn crate::objectives::PreparedEval,
        cuts: &[Vec<f64>],
        group: &Range<usize>,
        parent: &BoxRegion,
        rest_maxwidth: f64,
        star_if_rest_inside: Option<&[f64]>,
        gub: f64,
        r0: u64,
        r1: u64,
    ) -> ChunkOut {
        let glen = group.len();
        let domain = &obj.spec().domain;
        let n = parent.dim();
        let grad_dims = if self.full_gradient {
            0..n
        } else {
            group.clone()
        };
        let mut changed = vec![Interval::ZERO; glen];
        let mut grads: Vec<Interval> = Vec::with_capacity(grad_dims.len());
        let mut child = parent.clone();
        let mut out = ChunkOut::default();

        for r in r0..r1 {
            self.decode_cells(cuts, r, &mut changed);
            let fb = prepared.eval_child(&changed);
            out.counts.evaluated += 1;

            let outcome = if fb.lo() > gub {
                PruneOutcome::PrunedByGub
            } else if self.derivative_test {
                for (g, i) in group.clone().enumerate() {
                    child.set(i, changed[g]);
                }
                grads.clear();
                obj.eval_gradient_interval(&child, grad_dims.clone(), &mut grads);
                prune_test(&child, fb, grad_dims.clone(), &grads, gub, domain)
            } else {
                PruneOutcome::Keep
            };

            match outcome {
                PruneOutcome::Keep => {
                    let mw = changed
                        .iter()
                        .map(|c| c.width())
                        .fold(rest_maxwidth, f64::max);
                    out.survivors.push(Survivor {
                        sidx: r as u32,
                        lb: fb.lo(),
                        maxwidth: mw,
                    });
                }
                pruned => {
                    match pruned {
                        PruneOutcome::PrunedByGub => out.counts.pruned_gub += 1,
                        PruneOutcome::PrunedByDerivative(_) => out.counts.pruned_derivative += 1,
                        PruneOutcome::Keep => unreachable!(),
                    }
                    if let Some(star) = star_if_rest_inside {
                        let star_inside = changed
                            .iter()
                            .enumerate()
                            .all(|(g, c)| c.contains(star[group.start + g]));
                        if star_inside {
                            out.counts.soundness_violations += 1;
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_validates_and_counts() {
        let sch = PartitionScheme::new(10, 4);
        assert_eq!(sch.k(), 1_048_576);
        assert_eq!(sch.subregions_for(3), 64);
    }

    #[test]
    #[should_panic(expected = "at least 2")]
    fn scheme_rejects_single_subinterval() {
        PartitionScheme::new(3, 1);
    }

    #[test]
    fn subindices_match_printed_formulas() {
        let sch = PartitionScheme::new(2, 4);
        assert_eq!(subindices(7, &sch), vec![3, 1]);
        assert_eq!(subindices(0, &sch), vec![0, 0]);
        let sch3 = PartitionScheme::new(3, 4);
        assert_eq!(subindices(37, &sch3), vec![1, 1, 2]);
        assert_eq!(recompose(&[1, 1, 2], &sch3), 37);
    }

    #[test]
    fn cycling_group_and_successor() {
        let c = CyclingIndex::FIRST;
        assert_eq!(c.group(10, 50), 0..10);
        let c2 = c.successor(10, 50);
        assert_eq!(c2.get(), 11);
        assert_eq!(c2.group(10, 50), 10..20);
        assert_eq!(CyclingIndex::new(41).successor(10, 50), CyclingIndex::FIRST);
        // short final group when p does not divide n
        assert_eq!(CyclingIndex::new(11).group(10, 13), 10..13);
        assert_eq!(CyclingIndex::new(11).successor(10, 13), CyclingIndex::FIRST);
    }

    #[test]
    fn child_box_matches_hand_computation() {
        let sch = PartitionScheme::new(2, 4);
        let parent = BoxRegion::uniform(2, 0.0, 4.0);
        let b = child_box(&parent, CyclingIndex::FIRST, 7, &sch);
        assert_eq!(b.get(0), Interval::new(3.0, 4.0));
        assert_eq!(b.get(1), Interval::new(1.0, 2.0));
        // r = 0 takes the lower corner
        let b0 = child_box(&parent, CyclingIndex::FIRST, 0, &sch);
        assert_eq!(b0.get(0), Interval::new(0.0, 1.0));
        assert_eq!(b0.get(1), Interval::new(0.0, 1.0));
    }

    #[test]
    fn child_box_copies_unpartitioned_dims() {
        let sch = PartitionScheme::new(2, 4);
        let parent = BoxRegion::uniform(3, 0.0, 4.0);
        let b = child_box(&parent, CyclingIndex::new(2), 5, &sch);
        assert_eq!(b.get(0), parent.get(0));
        assert_eq!(b.get(1), Interval::new(1.0, 2.0));
        assert_eq!(b.get(2), Interval::new(1.0, 2.0));
    }

    #[test]
    fn prune_test_rules() {
        let domain = BoxRegion::uniform(2, -1.0, 1.0);
        let inner = BoxRegion::uniform(2, -0.5, 0.5);
        let f = Interval::new(3.2, 4.0);
        assert_eq!(
            prune_test(&inner, f, 0..0, &[], 3.1, &domain),
            PruneOutcome::PrunedByGub
        );
        // boundary: lb == gub is kept
        assert_eq!(
            prune_test(&inner, Interval::new(3.1, 4.0), 0..0, &[], 3.1, &domain),
            PruneOutcome::Keep
        );
        let pos = [Interval::new(0.5, 2.0)];
        assert_eq!(
            prune_test(&inner, Interval::ZERO, 0..1, &pos, 10.0, &domain),
            PruneOutcome::PrunedByDerivative(0)
        );
        // same gradient but box touching the lower domain edge: not pruned
        let edge = BoxRegion::new(vec![Interval::new(-1.0, 0.5), Interval::new(0.0, 0.5)]);
        assert_eq!(
            prune_test(&edge, Interval::ZERO, 0..1, &pos, 10.0, &domain),
            PruneOutcome::Keep
        );
        let mixed = [Interval::new(-1.0, 1.0), Interval::new(-1.0, 1.0)];
        assert_eq!(
            prune_test(&inner, Interval::ZERO, 0..2, &mixed, 10.0, &domain),
            PruneOutcome::Keep
        );
    }
}
