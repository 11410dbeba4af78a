//! Directed-rounding primitives built from error-free transformations.
//!
//! Rust gives no portable access to the FPU rounding mode, so outward
//! rounding is recovered after the fact: each primitive is evaluated in
//! round-to-nearest, the rounding error is reconstructed exactly (TwoSum
//! for sums, FMA residuals for products, quotients and roots), and the
//! endpoint is nudged one ulp outward only when the error sign demands it.
//! The result is bit-identical to hardware directed rounding.

/// Residuals of badly subnormal results may themselves round to zero, which
/// would hide a needed adjustment. Below this magnitude the error term is
/// not trusted and endpoints are widened unconditionally.
const RESIDUAL_TRUST_FLOOR: f64 = 1e-300;

/// Largest representable float below `x` (next toward negative infinity).
#[inline]
pub fn next_down(x: f64) -> f64 {
    debug_assert!(!x.is_nan());
    if x == f64::NEG_INFINITY {
        return x;
    }
    let bits = x.to_bits();
    let abs = bits & 0x7fff_ffff_ffff_ffff;
    let next = if abs == 0 {
        0x8000_0000_0000_0001 // smallest-magnitude negative
    } else if bits == abs {
        bits - 1
    } else {
        bits + 1
    };
    f64::from_bits(next)
}

/// Smallest representable float above `x` (next toward positive infinity).
#[inline]
pub fn next_up(x: f64) -> f64 {
    debug_assert!(!x.is_nan());
    if x == f64::INFINITY {
        return x;
    }
    let bits = x.to_bits();
    let abs = bits & 0x7fff_ffff_ffff_ffff;
    let next = if abs == 0 {
        0x1 // smallest positive
    } else if bits == abs {
        bits + 1
    } else {
        bits - 1
    };
    f64::from_bits(next)
}

/// `x` stepped `n` ulps toward negative infinity.
#[inline]
pub fn step_down(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = next_down(x);
    }
    x
}

/// `x` stepped `n` ulps toward positive infinity.
#[inline]
pub fn step_up(mut x: f64, n: u32) -> f64 {
    for _ in 0..n {
        x = next_up(x);
    }
    x
}

/// Knuth's TwoSum: `s = fl(a + b)` plus the exact rounding error.
/// Exact for all finite inputs; the error of a rounded sum is always
/// representable.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let ap = s - b;
    let bp = s - ap;
    (s, (a - ap) + (b - bp))
}

/// Sum rounded toward negative infinity. `(+inf) + (-inf)` is treated as an
/// indeterminate lower endpoint and widens to `-inf`.
#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if s.is_nan() {
        return f64::NEG_INFINITY;
    }
    if s == f64::INFINITY {
        // Overflowed from finite operands: the exact sum is finite.
        return if a.is_finite() && b.is_finite() {
            f64::MAX
        } else {
            s
        };
    }
    if s.is_infinite() {
        return s;
    }
    if e < 0.0 {
        next_down(s)
    } else {
        s
    }
}

/// Sum rounded toward positive infinity; indeterminate upper endpoints widen
/// to `+inf`.
#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if s.is_nan() {
        return f64::INFINITY;
    }
    if s == f64::NEG_INFINITY {
        return if a.is_finite() && b.is_finite() {
            f64::MIN
        } else {
            s
        };
    }
    if s.is_infinite() {
        return s;
    }
    if e > 0.0 {
        next_up(s)
    } else {
        s
    }
}

/// Corner product for interval multiplication: `0 * inf` is defined as 0 so
/// that unbounded factors of a zero-width side stay enclosed.
#[inline]
pub fn corner(x: f64, y: f64) -> f64 {
    if x == 0.0 || y == 0.0 {
        0.0
    } else {
        x * y
    }
}

/// Downward adjustment of a corner product already computed in
/// round-to-nearest.
#[inline]
pub fn prod_down(x: f64, y: f64, p: f64) -> f64 {
    if p == f64::INFINITY {
        return if x.is_finite() && y.is_finite() {
            f64::MAX
        } else {
            p
        };
    }
    if p.is_infinite() {
        return p;
    }
    if x == 0.0 || y == 0.0 {
        return p; // exact by the corner convention
    }
    let e = x.mul_add(y, -p);
    if e < 0.0 || (e == 0.0 && p.abs() < RESIDUAL_TRUST_FLOOR) {
        next_down(p)
    } else {
        p
    }
}

/// Upward adjustment of a corner product.
#[inline]
pub fn prod_up(x: f64, y: f64, p: f64) -> f64 {
    if p == f64::NEG_INFINITY {
        return if x.is_finite() && y.is_finite() {
            f64::MIN
        } else {
            p
        };
    }
    if p.is_infinite() {
        return p;
    }
    if x == 0.0 || y == 0.0 {
        return p;
    }
    let e = x.mul_add(y, -p);
    if e > 0.0 || (e == 0.0 && p.abs() < RESIDUAL_TRUST_FLOOR) {
        next_up(p)
    } else {
        p
    }
}

/// Quotient `x / y` rounded toward negative infinity. `y` must be nonzero
/// and finite in the zero-free division paths that call this.
#[inline]
pub fn div_down(x: f64, y: f64) -> f64 {
    debug_assert!(y != 0.0);
    if y.is_infinite() {
        // x finite: exact zero of the appropriate sign; round down keeps -0/0.
        if x.is_finite() {
            let q = x / y;
            return if q == 0.0 { 0.0_f64.min(q) } else { q };
        }
    }
    let q = x / y;
    if q.is_nan() {
        return f64::NEG_INFINITY;
    }
    if q == f64::INFINITY {
        return if x.is_finite() { f64::MAX } else { q };
    }
    if q.is_infinite() {
        return q;
    }
    // true = q - r/y with r = fl(q*y - x), exact away from underflow
    let r = q.mul_add(y, -x);
    let negative_correction = if y > 0.0 { r > 0.0 } else { r < 0.0 };
    if negative_correction || (r == 0.0 && q.abs() < RESIDUAL_TRUST_FLOOR && q != 0.0) {
        next_down(q)
    } else {
        q
    }
}

/// Quotient rounded toward positive infinity.
#[inline]
pub fn div_up(x: f64, y: f64) -> f64 {
    debug_assert!(y != 0.0);
    if y.is_infinite() && x.is_finite() {
        let q = x / y;
        return if q == 0.0 { 0.0_f64.max(q) } else { q };
    }
    let q = x / y;
    if q.is_nan() {
        return f64::INFINITY;
    }
    if q == f64::NEG_INFINITY {
        return if x.is_finite() { f64::MIN } else { q };
    }
    if q.is_infinite() {
        return q;
    }
    let r = q.mul_add(y, -x);
    let positive_correction = if y > 0.0 { r < 0.0 } else { r > 0.0 };
    if positive_correction || (r == 0.0 && q.abs() < RESIDUAL_TRUST_FLOOR && q != 0.0) {
        next_up(q)
    } else {
        q
    }
}

/// Square root of nonnegative `x`, rounded toward negative infinity.
#[inline]
pub fn sqrt_down(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    let s = x.sqrt();
    if s.is_infinite() || s == 0.0 {
        return s; // sqrt(inf) and sqrt(0) are exact
    }
    let r = s.mul_add(s, -x);
    if r > 0.0 || (r == 0.0 && x < RESIDUAL_TRUST_FLOOR) {
        next_down(s).max(0.0)
    } else {
        s
    }
}

/// Square root rounded toward positive infinity.
#[inline]
pub fn sqrt_up(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    let s = x.sqrt();
    if s.is_infinite() || s == 0.0 {
        return s;
    }
    let r = s.mul_add(s, -x);
    if r < 0.0 || (r == 0.0 && x < RESIDUAL_TRUST_FLOOR) {
        next_up(s)
    } else {
        s
    }
}
