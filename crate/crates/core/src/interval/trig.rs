//! Interval enclosures of exp, sin and cos.
//!
//! Point values come from libm in round-to-nearest and are widened by the
//! policy's transcendental slack (at least 2 ulps, covering the documented
//! libm error). Range analysis for sin/cos locates critical points through
//! an interval division by a pi enclosure, so the reduction error is itself
//! enclosed: a critical point that *might* lie inside the argument snaps the
//! corresponding endpoint to exactly +-1, which is always sound.

use super::round::{step_down, step_up};
use super::{Interval, Rounding};

/// Conservative full-period test: true width at least 2*pi.
const FULL_PERIOD: f64 = 6.3;

impl Rounding {
    /// Enclosure of `{e^x : x in X}`. Overflow saturates the upper endpoint
    /// at `+inf`; the lower endpoint is clamped at zero.
    pub fn exp(&self, x: Interval) -> Interval {
        let slack = self.transcendental_slack();
        let lo = if x.lo() == f64::NEG_INFINITY {
            0.0
        } else {
            let v = x.lo().exp();
            if v == f64::INFINITY {
                // libm may overflow up to its error margin early
                step_down(f64::MAX, slack)
            } else {
                step_down(v, slack).max(0.0)
            }
        };
        let hi = if x.hi() == f64::NEG_INFINITY {
            0.0
        } else {
            let v = x.hi().exp();
            if v == f64::INFINITY {
                f64::INFINITY
            } else {
                step_up(v, slack)
            }
        };
        Interval::new(lo, hi)
    }

    /// Enclosure of `{cos x : x in X}`, exactly clipped to `[-1, 1]`.
    /// Extrema live at integer multiples of pi.
    pub fn cos(&self, x: Interval) -> Interval {
        let slack = self.transcendental_slack();
        if x.is_degenerate() {
            let v = x.lo().cos();
            return Interval::new(step_down(v, slack).max(-1.0), step_up(v, slack).min(1.0));
        }
        if x.lo().is_infinite() || x.hi().is_infinite() || x.hi() - x.lo() >= FULL_PERIOD {
            return Interval::new(-1.0, 1.0);
        }
        let (has_even, has_odd) = self.critical_multiples(x, Interval::ZERO);
        let ca = x.lo().cos();
        let cb = x.hi().cos();
        let hi = if has_even {
            1.0
        } else {
            step_up(ca.max(cb), slack).min(1.0)
        };
        let lo = if has_odd {
            -1.0
        } else {
            step_down(ca.min(cb), slack).max(-1.0)
        };
        Interval::new(lo, hi)
    }

    /// Enclosure of `{sin x : x in X}`, exactly clipped to `[-1, 1]`.
    /// Extrema live at `pi/2 + k*pi`.
    pub fn sin(&self, x: Interval) -> Interval {
        let slack = self.transcendental_slack();
        if x.is_degenerate() {
            let v = x.lo().sin();
            return Interval::new(step_down(v, slack).max(-1.0), step_up(v, slack).min(1.0));
        }
        if x.lo().is_infinite() || x.hi().is_infinite() || x.hi() - x.lo() >= FULL_PERIOD {
            return Interval::new(-1.0, 1.0);
        }
        let pi = self.pi();
        let half_pi = Interval::new(pi.lo() / 2.0, pi.hi() / 2.0); // halving is exact
        let (has_even, has_odd) = self.critical_multiples(x, half_pi);
        let sa = x.lo().sin();
        let sb = x.hi().sin();
        let hi = if has_even {
            1.0
        } else {
            step_up(sa.max(sb), slack).min(1.0)
        };
        let lo = if has_odd {
            -1.0
        } else {
            step_down(sa.min(sb), slack).max(-1.0)
        };
        Interval::new(lo, hi)
    }

    /// Whether some `offset + k*pi` may lie in `x`, split by the parity of
    /// `k`. Conservative: rounding ambiguity reports containment. The
    /// quotient enclosure picks the divisor endpoint by numerator sign
    /// instead of running a full interval division.
    fn critical_multiples(&self, x: Interval, offset: Interval) -> (bool, bool) {
        use super::round::{add_down, add_up, div_down, div_up};
        let pi = self.pi();
        let num_lo = add_down(x.lo(), -offset.hi());
        let num_hi = add_up(x.hi(), -offset.lo());
        let t_lo = if num_lo >= 0.0 {
            div_down(num_lo, pi.hi())
        } else {
            div_down(num_lo, pi.lo())
        };
        let t_hi = if num_hi >= 0.0 {
            div_up(num_hi, pi.lo())
        } else {
            div_up(num_hi, pi.hi())
        };
        let k0 = t_lo.ceil();
        let k1 = t_hi.floor();
        if k0 > k1 {
            return (false, false);
        }
        if k1 - k0 >= 1.0 {
            return (true, true);
        }
        // single candidate k0; |k0| is small enough here for exact parity
        let even = (k0 * 0.5).fract() == 0.0;
        (even, !even)
    }
}
