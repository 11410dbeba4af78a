//! Closed interval arithmetic with outward rounding.
//!
//! Every operation returns an interval that encloses the exact real result
//! for all points of its operands, including across rounding. Endpoints may
//! be infinite; empty intervals and NaN endpoints are unrepresentable.

mod round;
mod trig;

pub use round::{next_down, next_up};

/// How endpoints are pushed outward after each primitive operation.
///
/// `OptimalOutward` reproduces true directed rounding: endpoints move one
/// ulp only when the round-to-nearest result is provably on the wrong side.
/// `SlackUlps(m)` steps every endpoint `m` ulps outward unconditionally,
/// trading width for arithmetic that never inspects rounding errors.
/// Transcendental functions always carry at least two ulps of slack around
/// the libm value under either policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RoundingPolicy {
    #[default]
    OptimalOutward,
    SlackUlps(u32),
}

/// Error type for fallible interval construction and domain checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalError {
    /// An endpoint was NaN.
    NanEndpoint,
    /// Lower endpoint above the upper endpoint.
    InvertedEndpoints,
    /// Operand entirely outside the operation's domain (e.g. sqrt of a
    /// strictly negative interval).
    OutsideDomain,
}

impl std::fmt::Display for IntervalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntervalError::NanEndpoint => write!(f, "interval endpoint is NaN"),
            IntervalError::InvertedEndpoints => write!(f, "interval lower endpoint exceeds upper"),
            IntervalError::OutsideDomain => write!(f, "interval lies outside the operation domain"),
        }
    }
}

impl std::error::Error for IntervalError {}

/// A closed interval `[lo, hi]` over the extended reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// The whole extended real line.
    pub const ENTIRE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    /// Degenerate zero interval.
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    /// Degenerate one interval.
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    /// Builds `[lo, hi]`, panicking on NaN or inverted endpoints.
    #[inline]
    pub fn new(lo: f64, hi: f64) -> Interval {
        Interval::try_new(lo, hi).expect("invalid interval endpoints")
    }

    /// Fallible constructor for untrusted endpoints.
    #[inline]
    pub fn try_new(lo: f64, hi: f64) -> Result<Interval, IntervalError> {
        if lo.is_nan() || hi.is_nan() {
            return Err(IntervalError::NanEndpoint);
        }
        if lo > hi {
            return Err(IntervalError::InvertedEndpoints);
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval `[x, x]` for point evaluation.
    #[inline]
    pub fn point(x: f64) -> Interval {
        Interval::try_point(x).expect("point interval from non-finite value")
    }

    /// Fallible point constructor; rejects NaN and infinite values.
    #[inline]
    pub fn try_point(x: f64) -> Result<Interval, IntervalError> {
        if x.is_nan() {
            return Err(IntervalError::NanEndpoint);
        }
        if x.is_infinite() {
            return Err(IntervalError::OutsideDomain);
        }
        Ok(Interval { lo: x, hi: x })
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Upper bound on `hi - lo`, rounded up. Degenerate intervals (including
    /// infinite points) have width zero.
    #[inline]
    pub fn width(&self) -> f64 {
        if self.lo == self.hi {
            return 0.0;
        }
        round::add_up(self.hi, -self.lo)
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// True when `other` lies inside `self` (not necessarily strictly).
    #[inline]
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Componentwise min/max envelope of two intervals.
    #[inline]
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Exact negation `[-hi, -lo]`.
    #[inline]
    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    #[inline]
    fn check(self) -> Interval {
        debug_assert!(!self.lo.is_nan() && !self.hi.is_nan(), "NaN endpoint");
        debug_assert!(
            self.lo <= self.hi,
            "inverted interval [{};{}]",
            self.lo,
            self.hi
        );
        self
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Arithmetic context carrying the outward-rounding policy.
///
/// All interval operations go through a `Rounding` so a whole solver run
/// shares one policy. The context is `Copy` and stateless; operations are
/// pure and safe to call from any number of threads.
#[derive(Debug, Clone, Copy, Default)]
pub struct Rounding {
    policy: RoundingPolicy,
}

impl Rounding {
    pub fn new(policy: RoundingPolicy) -> Rounding {
        Rounding { policy }
    }

    pub fn policy(&self) -> RoundingPolicy {
        self.policy
    }

    /// Ulps of slack applied around transcendental point evaluations:
    /// at least 2, more if the policy asks for it.
    #[inline]
    pub(crate) fn transcendental_slack(&self) -> u32 {
        match self.policy {
            RoundingPolicy::OptimalOutward => 2,
            RoundingPolicy::SlackUlps(m) => m.max(2),
        }
    }

    #[inline]
    fn down(&self, optimal: f64, nearest: f64) -> f64 {
        match self.policy {
            RoundingPolicy::OptimalOutward => optimal,
            RoundingPolicy::SlackUlps(m) => {
                // indeterminate forms widen all the way
                if nearest.is_nan() {
                    f64::NEG_INFINITY
                } else {
                    round::step_down(nearest, m)
                }
            }
        }
    }

    #[inline]
    fn up(&self, optimal: f64, nearest: f64) -> f64 {
        match self.policy {
            RoundingPolicy::OptimalOutward => optimal,
            RoundingPolicy::SlackUlps(m) => {
                if nearest.is_nan() {
                    f64::INFINITY
                } else {
                    round::step_up(nearest, m)
                }
            }
        }
    }

    /// `x + y` with outward rounding; indeterminate `inf + (-inf)` endpoints
    /// widen to the sign-appropriate infinity.
    #[inline]
    pub fn add(&self, x: Interval, y: Interval) -> Interval {
        let lo_n = x.lo + y.lo;
        let hi_n = x.hi + y.hi;
        Interval {
            lo: self.down(
                round::add_down(x.lo, y.lo),
                if lo_n.is_nan() {
                    f64::NEG_INFINITY
                } else {
                    lo_n
                },
            ),
            hi: self.up(
                round::add_up(x.hi, y.hi),
                if hi_n.is_nan() { f64::INFINITY } else { hi_n },
            ),
        }
        .check()
    }

    /// `x - y` with outward rounding.
    #[inline]
    pub fn sub(&self, x: Interval, y: Interval) -> Interval {
        self.add(x, y.neg())
    }

    #[inline]
    fn corner_down(&self, a: f64, b: f64) -> f64 {
        let p = round::corner(a, b);
        self.down(round::prod_down(a, b, p), p)
    }

    #[inline]
    fn corner_up(&self, a: f64, b: f64) -> f64 {
        let p = round::corner(a, b);
        self.up(round::prod_up(a, b, p), p)
    }

    /// `x * y`: outward-rounded min/max over the corner products, with
    /// `0 * inf` taken as 0. Sign cases reduce the work to one product per
    /// endpoint except when both factors straddle zero.
    pub fn mul(&self, x: Interval, y: Interval) -> Interval {
        let r = if x.lo >= 0.0 {
            if y.lo >= 0.0 {
                Interval {
                    lo: self.corner_down(x.lo, y.lo),
                    hi: self.corner_up(x.hi, y.hi),
                }
            } else if y.hi <= 0.0 {
                Interval {
                    lo: self.corner_down(x.hi, y.lo),
                    hi: self.corner_up(x.lo, y.hi),
                }
            } else {
                Interval {
                    lo: self.corner_down(x.hi, y.lo),
                    hi: self.corner_up(x.hi, y.hi),
                }
            }
        } else if x.hi <= 0.0 {
            if y.lo >= 0.0 {
                Interval {
                    lo: self.corner_down(x.lo, y.hi),
                    hi: self.corner_up(x.hi, y.lo),
                }
            } else if y.hi <= 0.0 {
                Interval {
                    lo: self.corner_down(x.hi, y.hi),
                    hi: self.corner_up(x.lo, y.lo),
                }
            } else {
                Interval {
                    lo: self.corner_down(x.lo, y.hi),
                    hi: self.corner_up(x.lo, y.lo),
                }
            }
        } else if y.lo >= 0.0 {
            Interval {
                lo: self.corner_down(x.lo, y.hi),
                hi: self.corner_up(x.hi, y.hi),
            }
        } else if y.hi <= 0.0 {
            Interval {
                lo: self.corner_down(x.hi, y.lo),
                hi: self.corner_up(x.lo, y.lo),
            }
        } else {
            // both straddle zero: two candidates per endpoint
            let l1 = round::corner(x.lo, y.hi);
            let l2 = round::corner(x.hi, y.lo);
            let lo = if l1 < l2 {
                self.corner_down(x.lo, y.hi)
            } else if l2 < l1 {
                self.corner_down(x.hi, y.lo)
            } else {
                self.corner_down(x.lo, y.hi)
                    .min(self.corner_down(x.hi, y.lo))
            };
            let h1 = round::corner(x.lo, y.lo);
            let h2 = round::corner(x.hi, y.hi);
            let hi = if h1 > h2 {
                self.corner_up(x.lo, y.lo)
            } else if h2 > h1 {
                self.corner_up(x.hi, y.hi)
            } else {
                self.corner_up(x.lo, y.lo).max(self.corner_up(x.hi, y.hi))
            };
            Interval { lo, hi }
        };
        r.check()
    }

    /// `x / y`. A divisor free of zero goes through reciprocal-then-multiply;
    /// a divisor containing zero yields the hull of the extended-real
    /// quotient set, possibly the whole line. Division by the degenerate
    /// zero interval widens to the whole line.
    pub fn div(&self, x: Interval, y: Interval) -> Interval {
        if y.lo > 0.0 || y.hi < 0.0 {
            return self.mul(x, self.recip(y));
        }
        // 0 in y
        if y.lo == 0.0 && y.hi == 0.0 {
            return Interval::ENTIRE;
        }
        if x.lo == 0.0 && x.hi == 0.0 {
            return Interval::ZERO;
        }
        if y.lo < 0.0 && y.hi > 0.0 {
            return Interval::ENTIRE;
        }
        if y.hi == 0.0 {
            // y = [y.lo, 0], y.lo < 0
            if x.lo >= 0.0 {
                Interval {
                    lo: f64::NEG_INFINITY,
                    hi: self.up(round::div_up(x.lo, y.lo), x.lo / y.lo),
                }
            } else if x.hi <= 0.0 {
                Interval {
                    lo: self.down(round::div_down(x.hi, y.lo), x.hi / y.lo),
                    hi: f64::INFINITY,
                }
            } else {
                Interval::ENTIRE
            }
        } else {
            // y = [0, y.hi], y.hi > 0
            if x.lo >= 0.0 {
                Interval {
                    lo: self.down(round::div_down(x.lo, y.hi), x.lo / y.hi),
                    hi: f64::INFINITY,
                }
            } else if x.hi <= 0.0 {
                Interval {
                    lo: f64::NEG_INFINITY,
                    hi: self.up(round::div_up(x.hi, y.hi), x.hi / y.hi),
                }
            } else {
                Interval::ENTIRE
            }
        }
        .check()
    }

    /// `1 / y` for a divisor with `0` outside it.
    #[inline]
    pub fn recip(&self, y: Interval) -> Interval {
        debug_assert!(
            y.lo > 0.0 || y.hi < 0.0,
            "reciprocal of zero-containing interval"
        );
        Interval {
            lo: self.down(round::div_down(1.0, y.hi), 1.0 / y.hi),
            hi: self.up(round::div_up(1.0, y.lo), 1.0 / y.lo),
        }
        .check()
    }

    /// Range-exact square: `{x^2 : x in X}` up to rounding, with a hard zero
    /// lower bound when `0` is inside. Tighter than `mul(x, x)` on
    /// zero-straddling inputs because the two occurrences are the same
    /// variable.
    pub fn sqr(&self, x: Interval) -> Interval {
        let (a, b) = (x.lo, x.hi);
        if a >= 0.0 {
            Interval {
                lo: self
                    .down(
                        round::prod_down(a, a, round::corner(a, a)),
                        round::corner(a, a),
                    )
                    .max(0.0),
                hi: self.up(
                    round::prod_up(b, b, round::corner(b, b)),
                    round::corner(b, b),
                ),
            }
        } else if b <= 0.0 {
            Interval {
                lo: self
                    .down(
                        round::prod_down(b, b, round::corner(b, b)),
                        round::corner(b, b),
                    )
                    .max(0.0),
                hi: self.up(
                    round::prod_up(a, a, round::corner(a, a)),
                    round::corner(a, a),
                ),
            }
        } else {
            let m = (-a).max(b);
            Interval {
                lo: 0.0,
                hi: self.up(
                    round::prod_up(m, m, round::corner(m, m)),
                    round::corner(m, m),
                ),
            }
        }
        .check()
    }

    /// Square root over `X ∩ [0, +inf)`. A slightly negative lower endpoint
    /// (rounding slop from nonnegative sums) is clamped to zero first.
    ///
    /// # Panics
    ///
    /// Panics when the interval lies entirely below zero.
    pub fn sqrt(&self, x: Interval) -> Interval {
        assert!(x.hi >= 0.0, "sqrt of interval entirely below zero: {x}");
        let lo = x.lo.max(0.0);
        Interval {
            lo: self.down(round::sqrt_down(lo), lo.sqrt()).max(0.0),
            hi: self.up(round::sqrt_up(x.hi), x.hi.sqrt()),
        }
        .check()
    }

    /// Tightest machine enclosure of pi: two adjacent floats.
    #[inline]
    pub fn pi(&self) -> Interval {
        // f64 PI is below the true value.
        Interval {
            lo: std::f64::consts::PI,
            hi: round::next_up(std::f64::consts::PI),
        }
    }

    /// Tightest machine enclosure of Euler's number.
    #[inline]
    pub fn e(&self) -> Interval {
        // f64 E is below the true value.
        Interval {
            lo: std::f64::consts::E,
            hi: round::next_up(std::f64::consts::E),
        }
    }

    /// Enclosure of the exact rational `p / q` (for decimal coefficients
    /// that are not binary-representable).
    #[inline]
    pub fn rational(&self, p: i64, q: i64) -> Interval {
        self.div(Interval::point(p as f64), Interval::point(q as f64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opt() -> Rounding {
        Rounding::new(RoundingPolicy::OptimalOutward)
    }

    fn slack(m: u32) -> Rounding {
        Rounding::new(RoundingPolicy::SlackUlps(m))
    }

    #[test]
    fn add_matches_paper_example() {
        let r = opt();
        let z = r.add(Interval::new(1.0, 2.0), Interval::new(3.0, 4.0));
        assert_eq!(z, Interval::new(4.0, 6.0));
    }

    #[test]
    fn add_identity_and_infinite_endpoints() {
        let r = opt();
        let x = Interval::new(-3.5, 7.25);
        assert_eq!(r.add(Interval::ZERO, x), x);
        let z = r.add(
            Interval::new(f64::NEG_INFINITY, 1.0),
            Interval::new(2.0, 3.0),
        );
        assert_eq!(z.lo(), f64::NEG_INFINITY);
        assert_eq!(z.hi(), 4.0);
    }

    #[test]
    fn sub_examples() {
        let r = opt();
        let x = Interval::new(0.0, 1.0);
        assert_eq!(r.sub(x, x), Interval::new(-1.0, 1.0));
        assert_eq!(r.sub(x, Interval::ZERO), x);
        assert_eq!(
            r.sub(Interval::new(5.0, 7.0), Interval::new(2.0, 3.0)),
            Interval::new(2.0, 5.0)
        );
    }

    #[test]
    fn mul_examples() {
        let r = opt();
        assert_eq!(
            r.mul(Interval::new(1.0, 2.0), Interval::new(-3.0, 4.0)),
            Interval::new(-6.0, 8.0)
        );
        let unit = Interval::new(0.0, 1.0);
        assert_eq!(r.mul(unit, unit), unit);
        let sym = Interval::new(-1.0, 1.0);
        assert_eq!(r.mul(sym, sym), sym);
    }

    #[test]
    fn mul_zero_times_unbounded() {
        let r = opt();
        let z = r.mul(Interval::ZERO, Interval::ENTIRE);
        assert_eq!(z, Interval::ZERO);
    }

    #[test]
    fn div_examples() {
        let r = opt();
        assert_eq!(
            r.div(Interval::new(1.0, 2.0), Interval::new(2.0, 4.0)),
            Interval::new(0.25, 1.0)
        );
        let x = Interval::new(-1.5, 2.5);
        assert_eq!(r.div(x, Interval::ONE), x);
        assert_eq!(
            r.div(Interval::new(1.0, 2.0), Interval::new(-1.0, 1.0)),
            Interval::ENTIRE
        );
    }

    #[test]
    fn div_by_half_open_zero_divisors() {
        let r = opt();
        // [1,2] / [-4, 0] -> [-inf, -0.25]
        let z = r.div(Interval::new(1.0, 2.0), Interval::new(-4.0, 0.0));
        assert_eq!(z.lo(), f64::NEG_INFINITY);
        assert_eq!(z.hi(), -0.25);
        // [1,2] / [0, 4] -> [0.25, +inf]
        let z = r.div(Interval::new(1.0, 2.0), Interval::new(0.0, 4.0));
        assert_eq!(z.lo(), 0.25);
        assert_eq!(z.hi(), f64::INFINITY);
        // zero numerator stays zero
        assert_eq!(
            r.div(Interval::ZERO, Interval::new(-1.0, 1.0)),
            Interval::ZERO
        );
        // division by the degenerate zero widens to the whole line
        assert_eq!(
            r.div(Interval::new(1.0, 2.0), Interval::ZERO),
            Interval::ENTIRE
        );
    }

    #[test]
    fn sqr_examples() {
        let r = opt();
        assert_eq!(r.sqr(Interval::new(-1.0, 1.0)), Interval::new(0.0, 1.0));
        assert_eq!(r.sqr(Interval::new(2.0, 3.0)), Interval::new(4.0, 9.0));
        assert_eq!(r.sqr(Interval::new(-3.0, -2.0)), Interval::new(4.0, 9.0));
    }

    #[test]
    fn sqrt_examples() {
        let r = opt();
        assert_eq!(r.sqrt(Interval::new(0.0, 4.0)), Interval::new(0.0, 2.0));
        assert_eq!(r.sqrt(Interval::new(-1e-18, 4.0)), Interval::new(0.0, 2.0));
        let one = r.sqrt(Interval::new(1.0, 1.0));
        assert_eq!(one, Interval::new(1.0, 1.0));
    }

    #[test]
    #[should_panic(expected = "entirely below zero")]
    fn sqrt_rejects_negative_interval() {
        opt().sqrt(Interval::new(-2.0, -1.0));
    }

    #[test]
    fn point_and_errors() {
        assert_eq!(Interval::point(0.9), Interval::new(0.9, 0.9));
        assert_eq!(Interval::point(0.0), Interval::ZERO);
        assert_eq!(
            Interval::try_point(f64::NAN),
            Err(IntervalError::NanEndpoint)
        );
        assert_eq!(
            Interval::try_new(2.0, 1.0),
            Err(IntervalError::InvertedEndpoints)
        );
    }

    #[test]
    fn width_contains_hull() {
        assert_eq!(Interval::new(1.0, 1.5).width(), 0.5);
        assert!(Interval::new(-1.0, 1.0).contains(0.0));
        assert_eq!(
            Interval::new(0.0, 1.0).hull(&Interval::new(2.0, 3.0)),
            Interval::new(0.0, 3.0)
        );
        assert_eq!(
            Interval::new(f64::NEG_INFINITY, f64::NEG_INFINITY).width(),
            0.0
        );
    }

    #[test]
    fn constants_are_adjacent_machine_numbers() {
        let r = opt();
        let pi = r.pi();
        assert_eq!(next_up(pi.lo()), pi.hi());
        assert!(pi.contains(std::f64::consts::PI));
        let e = r.e();
        assert_eq!(next_up(e.lo()), e.hi());
        assert!(e.contains(std::f64::consts::E));
        // the rigorous 50-digit comparison lives in the oracle test suite
    }

    #[test]
    fn slack_mode_always_widens() {
        let r = slack(1);
        let z = r.add(Interval::new(1.0, 2.0), Interval::new(3.0, 4.0));
        assert!(z.lo() < 4.0 && z.hi() > 6.0);
        assert!(z.encloses(&Interval::new(4.0, 6.0)));
        // sqr keeps the exact zero lower bound even with slack
        let s = r.sqr(Interval::new(-1.0, 1.0));
        assert_eq!(s.lo(), 0.0);
    }

    #[test]
    fn rational_encloses_decimal_coefficients() {
        let r = opt();
        let c = r.rational(1, 10);
        assert!(c.lo() <= 0.1 && 0.1 <= c.hi());
        assert!(c.width() < 1e-16);
        let exact = r.rational(1, 4);
        assert_eq!(exact, Interval::new(0.25, 0.25));
    }
}
