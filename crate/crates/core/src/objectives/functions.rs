//! The ten scalable benchmark functions.
//!
//! Each is coded to keep every variable occurrence count low (shared inner
//! sums, `sqr` instead of self-multiplication) so enclosures stay tight, and
//! each carries hand-derived interval partials. Product-coupled gradients
//! (griewank, styblinski, zabinsky) use prefix/suffix products rather than
//! dividing by a cosine factor that may contain zero.

use std::ops::Range;

use super::{
    products_excluding, sep_eval, AccKind, Objective, ObjectiveSpec, PreparedEval, SepForm,
    SepPrepared,
};
use crate::interval::{Interval, Rounding};
use crate::region::BoxRegion;

/// Stable identifiers, in catalog order.
pub const NAMES: [&str; 10] = [
    "ackley",
    "belegundu",
    "breiman",
    "fu",
    "griewank",
    "levy",
    "rastrigin",
    "salomon",
    "styblinski",
    "zabinsky",
];

/// Builds a benchmark by its stable name, or `None` for unknown names.
pub fn by_name(name: &str, n: usize, rounding: Rounding) -> Option<Box<dyn Objective>> {
    assert!(n >= 1, "objective dimension must be positive");
    Some(match name {
        "ackley" => Box::new(Ackley::new(n, rounding)),
        "belegundu" => Box::new(Belegundu::new(n, rounding)),
        "breiman" => Box::new(Breiman::new(n, rounding)),
        "fu" => Box::new(Fu::new(n, rounding)),
        "griewank" => Box::new(Griewank::new(n, rounding)),
        "levy" => Box::new(Levy::new(n, rounding)),
        "rastrigin" => Box::new(Rastrigin::new(n, rounding)),
        "salomon" => Box::new(Salomon::new(n, rounding)),
        "styblinski" => Box::new(Styblinski::new(n, rounding)),
        "zabinsky" => Box::new(Zabinsky::new(n, rounding)),
        _ => return None,
    })
}

/// All ten benchmarks at dimension `n`.
pub fn catalog(n: usize, rounding: Rounding) -> Vec<Box<dyn Objective>> {
    NAMES
        .iter()
        .map(|name| by_name(name, n, rounding).expect("catalog name"))
        .collect()
}

macro_rules! impl_sep_objective {
    ($ty:ident) => {
        impl Objective for $ty {
            fn spec(&self) -> &ObjectiveSpec {
                &self.spec
            }

            fn rounding(&self) -> Rounding {
                self.r
            }

            fn eval_interval(&self, b: &BoxRegion) -> Interval {
                sep_eval(self, b)
            }

            fn eval_gradient_interval(
                &self,
                b: &BoxRegion,
                dims: Range<usize>,
                out: &mut Vec<Interval>,
            ) {
                assert_eq!(b.dim(), self.spec.dimension, "box dimension mismatch");
                assert!(
                    dims.end <= self.spec.dimension,
                    "gradient dims out of range"
                );
                self.grad_into(b, dims, out);
            }

            fn prepare<'a>(
                &'a self,
                parent: &BoxRegion,
                dims: Range<usize>,
                ts: &[f64],
            ) -> Box<dyn PreparedEval + 'a> {
                Box::new(SepPrepared::new(self, parent, dims, ts))
            }
        }
    };
}

// ---------------------------------------------------------------------------
// Ackley: -20 exp(-0.02 sqrt(S/n)) - exp(C/n) + 20 + e,
//         S = sum x_i^2, C = sum cos(2 pi x_i). Domain [-35, 40], f(0) = 0.
// ---------------------------------------------------------------------------

pub struct Ackley {
    spec: ObjectiveSpec,
    r: Rounding,
    n_pt: Interval,
    inv_n: Interval,
    two_pi: Interval,
    c002: Interval,
    c04: Interval,
    twenty: Interval,
    e: Interval,
}

impl Ackley {
    pub fn new(n: usize, r: Rounding) -> Ackley {
        Ackley {
            spec: ObjectiveSpec::new(
                "ackley",
                BoxRegion::uniform(n, -35.0, 40.0),
                vec![0.0; n],
                0.0,
            ),
            r,
            n_pt: Interval::point(n as f64),
            inv_n: r.recip(Interval::point(n as f64)),
            two_pi: r.mul(Interval::point(2.0), r.pi()),
            c002: r.rational(1, 50),
            c04: r.rational(2, 5),
            twenty: Interval::point(20.0),
            e: r.e(),
        }
    }

    fn grad_into(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        let r = &self.r;
        let mut s = Interval::ZERO;
        let mut c = Interval::ZERO;
        for i in 0..self.spec.dimension {
            let x = b.get(i);
            s = r.add(s, r.sqr(x));
            c = r.add(c, r.cos(r.mul(self.two_pi, x)));
        }
        let g = r.sqrt(r.mul(s, self.inv_n));
        // 0.4 exp(-0.02 g) and (2 pi / n) exp(C/n), shared across dims
        let a = r.mul(self.c04, r.exp(r.mul(self.c002, g).neg()));
        let bc = r.mul(r.mul(self.two_pi, self.inv_n), r.exp(r.mul(c, self.inv_n)));
        let ng = r.mul(self.n_pt, g);
        for i in dims {
            let x = b.get(i);
            let radial = r.div(r.mul(a, x), ng); // blows to the whole line when g contains 0
            let wave = r.mul(bc, r.sin(r.mul(self.two_pi, x)));
            out.push(r.add(radial, wave));
        }
    }
}

impl SepForm for Ackley {
    const ARITY: usize = 2;
    const KINDS: [AccKind; 2] = [AccKind::Sum, AccKind::Sum];

    fn atoms(&self, _i: usize, x: Interval) -> [Interval; 2] {
        [self.r.sqr(x), self.r.cos(self.r.mul(self.two_pi, x))]
    }

    fn finish(&self, acc: &[Interval; 2]) -> Interval {
        let r = &self.r;
        let g = r.sqrt(r.mul(acc[0], self.inv_n));
        let t1 = r.mul(self.twenty, r.exp(r.mul(self.c002, g).neg())).neg();
        let t2 = r.exp(r.mul(acc[1], self.inv_n)).neg();
        r.add(r.add(r.add(t1, t2), self.twenty), self.e)
    }
}

impl_sep_objective!(Ackley);

// ---------------------------------------------------------------------------
// Belegundu (deflected corrugated spring):
//   0.1 S - cos(5 sqrt(S)), S = sum (x_i - 5)^2. Domain [-10, 11], f(5..) = -1.
// ---------------------------------------------------------------------------

pub struct Belegundu {
    spec: ObjectiveSpec,
    r: Rounding,
    five: Interval,
    c01: Interval,
    c02: Interval,
}

impl Belegundu {
    pub fn new(n: usize, r: Rounding) -> Belegundu {
        Belegundu {
            spec: ObjectiveSpec::new(
                "belegundu",
                BoxRegion::uniform(n, -10.0, 11.0),
                vec![5.0; n],
                -1.0,
            ),
            r,
            five: Interval::point(5.0),
            c01: r.rational(1, 10),
            c02: r.rational(1, 5),
        }
    }

    fn grad_into(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        let r = &self.r;
        let mut s = Interval::ZERO;
        for i in 0..self.spec.dimension {
            s = r.add(s, r.sqr(r.sub(b.get(i), self.five)));
        }
        let root = r.sqrt(s);
        let k = r.mul(self.five, r.sin(r.mul(self.five, root)));
        for i in dims {
            let u = r.sub(b.get(i), self.five);
            // 0.2 u + 5 sin(5 sqrt(S)) u / sqrt(S); the quotient widens to the
            // whole line on boxes reaching the minimizer, which never prunes
            out.push(r.add(r.mul(self.c02, u), r.div(r.mul(k, u), root)));
        }
    }
}

impl SepForm for Belegundu {
    const ARITY: usize = 1;
    const KINDS: [AccKind; 2] = [AccKind::Sum, AccKind::Sum];

    fn atoms(&self, _i: usize, x: Interval) -> [Interval; 2] {
        [self.r.sqr(self.r.sub(x, self.five)), Interval::ZERO]
    }

    fn finish(&self, acc: &[Interval; 2]) -> Interval {
        let r = &self.r;
        let s = acc[0];
        r.sub(r.mul(self.c01, s), r.cos(r.mul(self.five, r.sqrt(s))))
    }
}

impl_sep_objective!(Belegundu);

// ---------------------------------------------------------------------------
// Breiman (cosine mixture): -0.1 sum cos(5 pi x_i) + sum x_i^2.
// Domain [-1, 2], f(0..) = -0.1 n.
// ---------------------------------------------------------------------------

pub struct Breiman {
    spec: ObjectiveSpec,
    r: Rounding,
    five_pi: Interval,
    half_pi: Interval,
    c01: Interval,
    two: Interval,
}

impl Breiman {
    pub fn new(n: usize, r: Rounding) -> Breiman {
        Breiman {
            spec: ObjectiveSpec::new(
                "breiman",
                BoxRegion::uniform(n, -1.0, 2.0),
                vec![0.0; n],
                -(n as f64) / 10.0,
            ),
            r,
            five_pi: r.mul(Interval::point(5.0), r.pi()),
            half_pi: r.mul(Interval::point(0.5), r.pi()),
            c01: r.rational(1, 10),
            two: Interval::point(2.0),
        }
    }

    fn grad_into(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        let r = &self.r;
        for i in dims {
            let x = b.get(i);
            let wave = r.mul(self.half_pi, r.sin(r.mul(self.five_pi, x)));
            out.push(r.add(wave, r.mul(self.two, x)));
        }
    }
}

impl SepForm for Breiman {
    const ARITY: usize = 2;
    const KINDS: [AccKind; 2] = [AccKind::Sum, AccKind::Sum];

    fn atoms(&self, _i: usize, x: Interval) -> [Interval; 2] {
        [self.r.cos(self.r.mul(self.five_pi, x)), self.r.sqr(x)]
    }

    fn finish(&self, acc: &[Interval; 2]) -> Interval {
        let r = &self.r;
        r.add(r.mul(self.c01, acc[0]).neg(), acc[1])
    }
}

impl_sep_objective!(Breiman);

// ---------------------------------------------------------------------------
// Fu (trigonometric): 1 + sum 8 sin^2(7 u^2) + 6 sin^2(14 u^2) + u^2 with
// u = x_i - 0.9. Domain [-10, 10], f(0.9..) = 1.
// ---------------------------------------------------------------------------

pub struct Fu {
    spec: ObjectiveSpec,
    r: Rounding,
    c09: Interval,
    seven: Interval,
    fourteen: Interval,
    eight: Interval,
    six: Interval,
    c224: Interval,
    c336: Interval,
    two: Interval,
}

impl Fu {
    pub fn new(n: usize, r: Rounding) -> Fu {
        Fu {
            spec: ObjectiveSpec::new("fu", BoxRegion::uniform(n, -10.0, 10.0), vec![0.9; n], 1.0),
            r,
            c09: r.rational(9, 10),
            seven: Interval::point(7.0),
            fourteen: Interval::point(14.0),
            eight: Interval::point(8.0),
            six: Interval::point(6.0),
            c224: Interval::point(224.0),
            c336: Interval::point(336.0),
            two: Interval::point(2.0),
        }
    }

    fn grad_into(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        let r = &self.r;
        for i in dims {
            let u = r.sub(b.get(i), self.c09);
            let u2 = r.sqr(u);
            let p1 = r.mul(self.seven, u2);
            let p2 = r.mul(self.fourteen, u2);
            // u (224 sin(7u^2) cos(7u^2) + 336 sin(14u^2) cos(14u^2) + 2),
            // with u factored out once to dodge the dependence problem
            let inner = r.add(
                r.add(
                    r.mul(self.c224, r.mul(r.sin(p1), r.cos(p1))),
                    r.mul(self.c336, r.mul(r.sin(p2), r.cos(p2))),
                ),
                self.two,
            );
            out.push(r.mul(u, inner));
        }
    }
}

impl SepForm for Fu {
    const ARITY: usize = 1;
    const KINDS: [AccKind; 2] = [AccKind::Sum, AccKind::Sum];

    fn atoms(&self, _i: usize, x: Interval) -> [Interval; 2] {
        let r = &self.r;
        let u = r.sub(x, self.c09);
        let u2 = r.sqr(u);
        let s1 = r.sin(r.mul(self.seven, u2));
        let s2 = r.sin(r.mul(self.fourteen, u2));
        let t = r.add(
            r.add(r.mul(self.eight, r.sqr(s1)), r.mul(self.six, r.sqr(s2))),
            u2,
        );
        [t, Interval::ZERO]
    }

    fn finish(&self, acc: &[Interval; 2]) -> Interval {
        self.r.add(Interval::ONE, acc[0])
    }
}

impl_sep_objective!(Fu);

// ---------------------------------------------------------------------------
// Griewank: 1 + sum x_i^2 / 4000 - prod cos(x_i / sqrt(i)).
// Domain [-100, 110], f(0..) = 0.
// ---------------------------------------------------------------------------

pub struct Griewank {
    spec: ObjectiveSpec,
    r: Rounding,
    inv4000: Interval,
    inv2000: Interval,
    inv_sqrt: Vec<Interval>,
}

impl Griewank {
    pub fn new(n: usize, r: Rounding) -> Griewank {
        Griewank {
            spec: ObjectiveSpec::new(
                "griewank",
                BoxRegion::uniform(n, -100.0, 110.0),
                vec![0.0; n],
                0.0,
            ),
            r,
            inv4000: r.rational(1, 4000),
            inv2000: r.rational(1, 2000),
            inv_sqrt: (1..=n)
                .map(|i| r.recip(r.sqrt(Interval::point(i as f64))))
                .collect(),
        }
    }

    fn grad_into(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        let r = &self.r;
        let n = self.spec.dimension;
        let cos_atoms: Vec<Interval> = (0..n)
            .map(|j| r.cos(r.mul(b.get(j), self.inv_sqrt[j])))
            .collect();
        let others = products_excluding(r, &cos_atoms);
        for i in dims {
            let x = b.get(i);
            let s = r.sin(r.mul(x, self.inv_sqrt[i]));
            out.push(r.add(
                r.mul(x, self.inv2000),
                r.mul(r.mul(s, self.inv_sqrt[i]), others[i]),
            ));
        }
    }
}

impl SepForm for Griewank {
    const ARITY: usize = 2;
    const KINDS: [AccKind; 2] = [AccKind::Sum, AccKind::Product];

    fn atoms(&self, i: usize, x: Interval) -> [Interval; 2] {
        [self.r.sqr(x), self.r.cos(self.r.mul(x, self.inv_sqrt[i]))]
    }

    fn finish(&self, acc: &[Interval; 2]) -> Interval {
        let r = &self.r;
        r.sub(r.add(Interval::ONE, r.mul(acc[0], self.inv4000)), acc[1])
    }
}

impl_sep_objective!(Griewank);

// ---------------------------------------------------------------------------
// Levy: (pi/n) [10 sin^2(pi y_1) + (y_n - 1)^2
//               + sum_{i<n} (y_i - 1)^2 (1 + 10 sin^2(pi y_{i+1}))],
// y_i = 1 + 0.25 (x_i - 1). Domain [-10, 10], f(1..) = 0. Adjacent
// dimensions couple, so the prepared form keeps its own boundary terms.
// ---------------------------------------------------------------------------

pub struct Levy {
    spec: ObjectiveSpec,
    r: Rounding,
    quarter: Interval,
    ten: Interval,
    two: Interval,
    pi: Interval,
    pi_over_n: Interval,
    coef: Interval, // 0.25 pi / n
    twenty_pi: Interval,
}

impl Levy {
    pub fn new(n: usize, r: Rounding) -> Levy {
        let pi = r.pi();
        let pi_over_n = r.div(pi, Interval::point(n as f64));
        Levy {
            spec: ObjectiveSpec::new(
                "levy",
                BoxRegion::uniform(n, -10.0, 10.0),
                vec![1.0; n],
                0.0,
            ),
            r,
            quarter: Interval::point(0.25),
            ten: Interval::point(10.0),
            two: Interval::point(2.0),
            pi,
            pi_over_n,
            coef: r.mul(pi_over_n, Interval::point(0.25)),
            twenty_pi: r.mul(Interval::point(20.0), pi),
        }
    }

    /// `y_i - 1 = 0.25 (x_i - 1)`.
    #[inline]
    fn v(&self, x: Interval) -> Interval {
        self.r.mul(self.quarter, self.r.sub(x, Interval::ONE))
    }

    /// `sin^2(pi (1 + v))` given `v = y - 1`.
    #[inline]
    fn s2_from_v(&self, v: Interval) -> Interval {
        let y = self.r.add(Interval::ONE, v);
        self.r.sqr(self.r.sin(self.r.mul(self.pi, y)))
    }

    /// Shared assembly for full boxes, children and sample points. `changed`
    /// covers dims `a..b`; `fixed` already sums every term not touching
    /// them. `sq_left` is `sqr(v_{a-1})` when the term bridging `a-1 -> a`
    /// is live, `w_right` is `1 + 10 sin^2(pi y_b)` for the bridge
    /// `b-1 -> b`.
    fn combine(
        &self,
        a: usize,
        b_end: usize,
        changed: &[Interval],
        fixed: Interval,
        sq_left: Option<Interval>,
        w_right: Option<Interval>,
    ) -> Interval {
        let r = &self.r;
        let n = self.spec.dimension;
        let mut sum = fixed;
        let mut prev_sq = Interval::ZERO;
        for (k, &x) in changed.iter().enumerate() {
            let vk = self.v(x);
            let s2k = self.s2_from_v(vk);
            if k == 0 {
                if a == 0 {
                    sum = r.add(sum, r.mul(self.ten, s2k));
                }
                if let Some(sql) = sq_left {
                    let w = r.add(Interval::ONE, r.mul(self.ten, s2k));
                    sum = r.add(sum, r.mul(sql, w));
                }
            } else {
                let w = r.add(Interval::ONE, r.mul(self.ten, s2k));
                sum = r.add(sum, r.mul(prev_sq, w));
            }
            prev_sq = r.sqr(vk);
        }
        if let Some(wr) = w_right {
            sum = r.add(sum, r.mul(prev_sq, wr));
        }
        if b_end == n {
            sum = r.add(sum, prev_sq);
        }
        r.mul(self.pi_over_n, sum)
    }
}

impl Objective for Levy {
    fn spec(&self) -> &ObjectiveSpec {
        &self.spec
    }

    fn rounding(&self) -> Rounding {
        self.r
    }

    fn eval_interval(&self, b: &BoxRegion) -> Interval {
        assert_eq!(b.dim(), self.spec.dimension, "box dimension mismatch");
        self.combine(0, b.dim(), b.intervals(), Interval::ZERO, None, None)
    }

    fn eval_gradient_interval(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        assert_eq!(b.dim(), self.spec.dimension, "box dimension mismatch");
        assert!(
            dims.end <= self.spec.dimension,
            "gradient dims out of range"
        );
        let r = &self.r;
        let n = self.spec.dimension;
        for i in dims {
            let vi = self.v(b.get(i));
            let yi = r.add(Interval::ONE, vi);
            let si = r.sin(r.mul(self.pi, yi));
            let ci = r.cos(r.mul(self.pi, yi));
            let sc = r.mul(si, ci);
            let mut acc = Interval::ZERO;
            if i == 0 {
                acc = r.add(acc, r.mul(self.twenty_pi, sc));
            }
            if i + 1 < n {
                let s2next = self.s2_from_v(self.v(b.get(i + 1)));
                let w = r.add(Interval::ONE, r.mul(self.ten, s2next));
                acc = r.add(acc, r.mul(self.two, r.mul(vi, w)));
            }
            if i > 0 {
                let sq_prev = r.sqr(self.v(b.get(i - 1)));
                acc = r.add(acc, r.mul(self.twenty_pi, r.mul(sq_prev, sc)));
            }
            if i + 1 == n {
                acc = r.add(acc, r.mul(self.two, vi));
            }
            out.push(r.mul(self.coef, acc));
        }
    }

    fn prepare<'a>(
        &'a self,
        parent: &BoxRegion,
        dims: Range<usize>,
        ts: &[f64],
    ) -> Box<dyn PreparedEval + 'a> {
        Box::new(LevyPrepared::new(self, parent, dims, ts))
    }
}

struct LevyParts {
    fixed: Interval,
    sq_left: Option<Interval>,
    w_right: Option<Interval>,
}

struct LevyPrepared<'a> {
    obj: &'a Levy,
    dims: Range<usize>,
    parts: LevyParts,
    sample_parts: Vec<LevyParts>,
}

impl<'a> LevyPrepared<'a> {
    fn new(obj: &'a Levy, parent: &BoxRegion, dims: Range<usize>, ts: &[f64]) -> Self {
        let parts = Self::parts_for(obj, parent, &dims, None);
        let sample_parts = ts
            .iter()
            .map(|&t| Self::parts_for(obj, parent, &dims, Some(t)))
            .collect();
        LevyPrepared {
            obj,
            dims,
            parts,
            sample_parts,
        }
    }

    /// Fixed terms over the unchanged dims, either of the parent's interval
    /// (t = None) or of its diagonal point at fraction `t`.
    fn parts_for(obj: &Levy, parent: &BoxRegion, dims: &Range<usize>, t: Option<f64>) -> LevyParts {
        let r = &obj.r;
        let n = obj.spec.dimension;
        let (a, b) = (dims.start, dims.end);
        let dim_iv = |i: usize| -> Interval {
            match t {
                None => parent.get(i),
                Some(t) => Interval::point(super::diagonal_coordinate(
                    parent.get(i),
                    t,
                    obj.spec.domain.get(i),
                )),
            }
        };

        let mut fixed = Interval::ZERO;
        if a > 0 {
            fixed = r.add(fixed, r.mul(obj.ten, obj.s2_from_v(obj.v(dim_iv(0)))));
        }
        // chain terms fully outside a..b: i <= a-2 and i >= b (term i touches
        // dims i and i+1)
        let add_term = |fixed: &mut Interval, i: usize| {
            let sq = r.sqr(obj.v(dim_iv(i)));
            let s2 = obj.s2_from_v(obj.v(dim_iv(i + 1)));
            let w = r.add(Interval::ONE, r.mul(obj.ten, s2));
            *fixed = r.add(*fixed, r.mul(sq, w));
        };
        for i in 0..a.saturating_sub(1) {
            add_term(&mut fixed, i);
        }
        for i in b..n.saturating_sub(1) {
            add_term(&mut fixed, i);
        }
        if b < n {
            fixed = r.add(fixed, r.sqr(obj.v(dim_iv(n - 1))));
        }

        let sq_left = (a > 0).then(|| r.sqr(obj.v(dim_iv(a - 1))));
        let w_right = (b < n).then(|| {
            let s2 = obj.s2_from_v(obj.v(dim_iv(b)));
            r.add(Interval::ONE, r.mul(obj.ten, s2))
        });
        LevyParts {
            fixed,
            sq_left,
            w_right,
        }
    }
}

impl<'a> PreparedEval for LevyPrepared<'a> {
    fn eval_child(&self, changed: &[Interval]) -> Interval {
        let p = &self.parts;
        self.obj.combine(
            self.dims.start,
            self.dims.end,
            changed,
            p.fixed,
            p.sq_left,
            p.w_right,
        )
    }

    fn sample_upper(&self, j: usize, changed: &[f64]) -> f64 {
        let p = &self.sample_parts[j];
        let mut points = [Interval::ZERO; 32];
        let iv: &mut [Interval] = if changed.len() <= 32 {
            &mut points[..changed.len()]
        } else {
            // wide partition groups only occur in small-n configurations
            return self.eval_child_points_slow(j, changed);
        };
        for (k, &x) in changed.iter().enumerate() {
            iv[k] = Interval::point(x);
        }
        self.obj
            .combine(
                self.dims.start,
                self.dims.end,
                iv,
                p.fixed,
                p.sq_left,
                p.w_right,
            )
            .hi()
    }
}

impl<'a> LevyPrepared<'a> {
    #[cold]
    fn eval_child_points_slow(&self, j: usize, changed: &[f64]) -> f64 {
        let p = &self.sample_parts[j];
        let iv: Vec<Interval> = changed.iter().map(|&x| Interval::point(x)).collect();
        self.obj
            .combine(
                self.dims.start,
                self.dims.end,
                &iv,
                p.fixed,
                p.sq_left,
                p.w_right,
            )
            .hi()
    }
}

// ---------------------------------------------------------------------------
// Rastrigin: 10 n + sum (x_i^2 - 10 cos(2 pi x_i)).
// Domain [-5.5, 6], f(0..) = 0.
// ---------------------------------------------------------------------------

pub struct Rastrigin {
    spec: ObjectiveSpec,
    r: Rounding,
    two_pi: Interval,
    ten: Interval,
    two: Interval,
    twenty_pi: Interval,
    ten_n: Interval,
}

impl Rastrigin {
    pub fn new(n: usize, r: Rounding) -> Rastrigin {
        Rastrigin {
            spec: ObjectiveSpec::new(
                "rastrigin",
                BoxRegion::uniform(n, -5.5, 6.0),
                vec![0.0; n],
                0.0,
            ),
            r,
            two_pi: r.mul(Interval::point(2.0), r.pi()),
            ten: Interval::point(10.0),
            two: Interval::point(2.0),
            twenty_pi: r.mul(Interval::point(20.0), r.pi()),
            ten_n: Interval::point(10.0 * n as f64),
        }
    }

    fn grad_into(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        let r = &self.r;
        for i in dims {
            let x = b.get(i);
            let wave = r.mul(self.twenty_pi, r.sin(r.mul(self.two_pi, x)));
            out.push(r.add(r.mul(self.two, x), wave));
        }
    }
}

impl SepForm for Rastrigin {
    const ARITY: usize = 1;
    const KINDS: [AccKind; 2] = [AccKind::Sum, AccKind::Sum];

    fn atoms(&self, _i: usize, x: Interval) -> [Interval; 2] {
        let r = &self.r;
        [
            r.sub(r.sqr(x), r.mul(self.ten, r.cos(r.mul(self.two_pi, x)))),
            Interval::ZERO,
        ]
    }

    fn finish(&self, acc: &[Interval; 2]) -> Interval {
        self.r.add(self.ten_n, acc[0])
    }
}

impl_sep_objective!(Rastrigin);

// ---------------------------------------------------------------------------
// Salomon: 1 - cos(2 pi g) + 0.1 g with g = sqrt(sum x_i^2).
// Domain [-100, 110], f(0..) = 0.
// ---------------------------------------------------------------------------

pub struct Salomon {
    spec: ObjectiveSpec,
    r: Rounding,
    two_pi: Interval,
    c01: Interval,
}

impl Salomon {
    pub fn new(n: usize, r: Rounding) -> Salomon {
        Salomon {
            spec: ObjectiveSpec::new(
                "salomon",
                BoxRegion::uniform(n, -100.0, 110.0),
                vec![0.0; n],
                0.0,
            ),
            r,
            two_pi: r.mul(Interval::point(2.0), r.pi()),
            c01: r.rational(1, 10),
        }
    }

    fn grad_into(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        let r = &self.r;
        let mut s = Interval::ZERO;
        for i in 0..self.spec.dimension {
            s = r.add(s, r.sqr(b.get(i)));
        }
        let g = r.sqrt(s);
        let k = r.add(r.mul(self.two_pi, r.sin(r.mul(self.two_pi, g))), self.c01);
        for i in dims {
            out.push(r.mul(k, r.div(b.get(i), g)));
        }
    }
}

impl SepForm for Salomon {
    const ARITY: usize = 1;
    const KINDS: [AccKind; 2] = [AccKind::Sum, AccKind::Sum];

    fn atoms(&self, _i: usize, x: Interval) -> [Interval; 2] {
        [self.r.sqr(x), Interval::ZERO]
    }

    fn finish(&self, acc: &[Interval; 2]) -> Interval {
        let r = &self.r;
        let g = r.sqrt(acc[0]);
        let c = r.cos(r.mul(self.two_pi, g));
        r.add(r.sub(Interval::ONE, c), r.mul(self.c01, g))
    }
}

impl_sep_objective!(Salomon);

// ---------------------------------------------------------------------------
// Styblinski (corrupted convex quadratic): S / (2n) - 4n prod cos(x_i).
// Domain [-10, 11], f(0..) = -4n.
// ---------------------------------------------------------------------------

pub struct Styblinski {
    spec: ObjectiveSpec,
    r: Rounding,
    inv_2n: Interval,
    inv_n: Interval,
    four_n: Interval,
}

impl Styblinski {
    pub fn new(n: usize, r: Rounding) -> Styblinski {
        Styblinski {
            spec: ObjectiveSpec::new(
                "styblinski",
                BoxRegion::uniform(n, -10.0, 11.0),
                vec![0.0; n],
                -4.0 * n as f64,
            ),
            r,
            inv_2n: r.recip(Interval::point(2.0 * n as f64)),
            inv_n: r.recip(Interval::point(n as f64)),
            four_n: Interval::point(4.0 * n as f64),
        }
    }

    fn grad_into(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        let r = &self.r;
        let n = self.spec.dimension;
        let cos_atoms: Vec<Interval> = (0..n).map(|j| r.cos(b.get(j))).collect();
        let others = products_excluding(r, &cos_atoms);
        for i in dims {
            let x = b.get(i);
            out.push(r.add(
                r.mul(x, self.inv_n),
                r.mul(self.four_n, r.mul(r.sin(x), others[i])),
            ));
        }
    }
}

impl SepForm for Styblinski {
    const ARITY: usize = 2;
    const KINDS: [AccKind; 2] = [AccKind::Sum, AccKind::Product];

    fn atoms(&self, _i: usize, x: Interval) -> [Interval; 2] {
        [self.r.sqr(x), self.r.cos(x)]
    }

    fn finish(&self, acc: &[Interval; 2]) -> Interval {
        let r = &self.r;
        r.sub(r.mul(acc[0], self.inv_2n), r.mul(self.four_n, acc[1]))
    }
}

impl_sep_objective!(Styblinski);

// ---------------------------------------------------------------------------
// Zabinsky (sinusoidal): -2.5 prod sin(x_i - pi/6) - prod sin(5 (x_i - pi/6)).
// Domain [0, pi], f(2 pi / 3 ..) = -3.5.
// ---------------------------------------------------------------------------

pub struct Zabinsky {
    spec: ObjectiveSpec,
    r: Rounding,
    pi_over_6: Interval,
    five: Interval,
    c25: Interval,
}

impl Zabinsky {
    pub fn new(n: usize, r: Rounding) -> Zabinsky {
        let pi = r.pi();
        let x_star = 2.0 * std::f64::consts::PI / 3.0;
        Zabinsky {
            spec: ObjectiveSpec::new(
                "zabinsky",
                BoxRegion::uniform(n, 0.0, pi.hi()),
                vec![x_star; n],
                -3.5,
            ),
            r,
            pi_over_6: r.div(pi, Interval::point(6.0)),
            five: Interval::point(5.0),
            c25: Interval::point(2.5),
        }
    }

    fn grad_into(&self, b: &BoxRegion, dims: Range<usize>, out: &mut Vec<Interval>) {
        let r = &self.r;
        let n = self.spec.dimension;
        let slow: Vec<Interval> = (0..n)
            .map(|j| r.sin(r.sub(b.get(j), self.pi_over_6)))
            .collect();
        let fast: Vec<Interval> = (0..n)
            .map(|j| r.sin(r.mul(self.five, r.sub(b.get(j), self.pi_over_6))))
            .collect();
        let slow_others = products_excluding(r, &slow);
        let fast_others = products_excluding(r, &fast);
        for i in dims {
            let w = r.sub(b.get(i), self.pi_over_6);
            let t1 = r.mul(self.c25, r.mul(r.cos(w), slow_others[i]));
            let t2 = r.mul(self.five, r.mul(r.cos(r.mul(self.five, w)), fast_others[i]));
            out.push(r.add(t1, t2).neg());
        }
    }
}

impl SepForm for Zabinsky {
    const ARITY: usize = 2;
    const KINDS: [AccKind; 2] = [AccKind::Product, AccKind::Product];

    fn atoms(&self, _i: usize, x: Interval) -> [Interval; 2] {
        let r = &self.r;
        let w = r.sub(x, self.pi_over_6);
        [r.sin(w), r.sin(r.mul(self.five, w))]
    }

    fn finish(&self, acc: &[Interval; 2]) -> Interval {
        let r = &self.r;
        r.add(r.mul(self.c25, acc[0]), acc[1]).neg()
    }
}

impl_sep_objective!(Zabinsky);
