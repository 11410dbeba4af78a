//! Containment oracles for the interval primitives.
//!
//! Rational arithmetic is exact for +, -, *, / of machine numbers, so those
//! operations are checked against `BigRational` on corner points of random
//! interval pairs. Transcendentals are checked against a 128-bit directed
//! oracle. Both rounding policies must enclose.

use boxmin::{Interval, Rounding, RoundingPolicy};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn rat(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// `lo <= q` treating -inf as always below.
fn le_lo(lo: f64, q: &BigRational) -> bool {
    if lo == f64::NEG_INFINITY {
        return true;
    }
    match rat(lo) {
        Some(l) => l <= *q,
        None => false,
    }
}

fn ge_hi(hi: f64, q: &BigRational) -> bool {
    if hi == f64::INFINITY {
        return true;
    }
    match rat(hi) {
        Some(h) => h >= *q,
        None => false,
    }
}

fn random_scaled(rng: &mut StdRng) -> f64 {
    let m: f64 = rng.gen_range(-1.0..1.0);
    // occasional extreme exponents stress the overflow and subnormal
    // rounding paths
    let e: i32 = if rng.gen_ratio(1, 20) {
        rng.gen_range(-320..320)
    } else {
        rng.gen_range(-30..31)
    };
    let v = m * 2f64.powi(e);
    if rng.gen_ratio(1, 50) {
        0.0
    } else {
        v
    }
}

fn random_interval(rng: &mut StdRng) -> Interval {
    let a = random_scaled(rng);
    let b = random_scaled(rng);
    Interval::new(a.min(b), a.max(b))
}

fn policies() -> [Rounding; 3] {
    [
        Rounding::new(RoundingPolicy::OptimalOutward),
        Rounding::new(RoundingPolicy::SlackUlps(1)),
        Rounding::new(RoundingPolicy::SlackUlps(3)),
    ]
}

/// Exact-rational containment on corner points for the four basic
/// operations, 100k random pairs plus degenerate-pair consistency.
#[test]
fn rational_containment_basic_ops() {
    let mut rng = StdRng::seed_from_u64(0x1788);
    let opt = Rounding::new(RoundingPolicy::OptimalOutward);
    let slack = Rounding::new(RoundingPolicy::SlackUlps(1));
    let trials = 100_000;
    for t in 0..trials {
        let x = random_interval(&mut rng);
        let y = random_interval(&mut rng);
        let r = if t % 2 == 0 { opt } else { slack };

        let sum = r.add(x, y);
        let dif = r.sub(x, y);
        let prod = r.mul(x, y);
        let quot = (y.lo() > 0.0 || y.hi() < 0.0).then(|| r.div(x, y));

        for &cx in &[x.lo(), x.hi()] {
            for &cy in &[y.lo(), y.hi()] {
                let (qx, qy) = (rat(cx).unwrap(), rat(cy).unwrap());
                let s = &qx + &qy;
                assert!(le_lo(sum.lo(), &s) && ge_hi(sum.hi(), &s), "add {x} {y}");
                let d = &qx - &qy;
                assert!(le_lo(dif.lo(), &d) && ge_hi(dif.hi(), &d), "sub {x} {y}");
                let p = &qx * &qy;
                assert!(le_lo(prod.lo(), &p) && ge_hi(prod.hi(), &p), "mul {x} {y}");
                if let Some(q) = &quot {
                    let v = &qx / &qy;
                    assert!(le_lo(q.lo(), &v) && ge_hi(q.hi(), &v), "div {x} {y}");
                }
            }
        }

        // degenerate consistency: point op point encloses the exact result
        let (px, py) = (Interval::point(x.lo()), Interval::point(y.hi()));
        let s = r.add(px, py);
        let exact = rat(x.lo()).unwrap() + rat(y.hi()).unwrap();
        assert!(le_lo(s.lo(), &exact) && ge_hi(s.hi(), &exact));
    }
}

/// sqr is contained in mul(x, x) everywhere and strictly tighter on
/// zero-straddling inputs; its result is exact-rational sound.
#[test]
fn sqr_tightness_and_containment() {
    let mut rng = StdRng::seed_from_u64(0x5042);
    for _ in 0..100_000 {
        let x = random_interval(&mut rng);
        for r in policies() {
            let sq = r.sqr(x);
            let mu = r.mul(x, x);
            assert!(mu.encloses(&sq), "sqr {sq} not within mul {mu} for {x}");
            for &c in &[x.lo(), x.hi()] {
                let q = rat(c).unwrap();
                let qq = &q * &q;
                assert!(le_lo(sq.lo(), &qq) && ge_hi(sq.hi(), &qq));
            }
        }
        if x.lo() < 0.0 && x.hi() > 0.0 {
            let r = Rounding::new(RoundingPolicy::OptimalOutward);
            assert!(r.sqr(x).lo() > r.mul(x, x).lo(), "strict on {x}");
        }
    }
}

/// sqrt round-trips through rationals: lo^2 <= x.lo and hi^2 >= x.hi.
#[test]
fn sqrt_rational_containment() {
    let mut rng = StdRng::seed_from_u64(0xACE5);
    for _ in 0..100_000 {
        let a = random_scaled(&mut rng).abs();
        let b = random_scaled(&mut rng).abs();
        let x = Interval::new(a.min(b), a.max(b));
        for r in policies() {
            let s = r.sqrt(x);
            let lo2 = rat(s.lo()).unwrap().pow(2);
            let hi2 = rat(s.hi()).unwrap().pow(2);
            assert!(lo2 <= rat(x.lo()).unwrap(), "sqrt lo too high for {x}");
            assert!(hi2 >= rat(x.hi()).unwrap(), "sqrt hi too low for {x}");
        }
    }
}

/// Transcendental containment against a directed 128-bit oracle: for random
/// intervals and points inside them, the oracle bracket of the true value
/// must land inside our enclosure.
#[test]
fn transcendental_containment_high_precision() {
    use astro_float::{BigFloat, Consts, RoundingMode};
    let mut cts = Consts::new().unwrap();
    let mut rng = StdRng::seed_from_u64(0x7209);
    let trials = 35_000;
    for i in 0..trials {
        // trig arguments within the benchmark scale (|x| <= ~5000)
        let scale = if i % 3 == 0 { 5000.0 } else { 8.0 };
        let a = rng.gen_range(-scale..scale);
        let w_scale: i32 = rng.gen_range(-8..3);
        let w: f64 = rng.gen_range(0.0..3.0f64.powi(w_scale));
        let x = Interval::new(a, a + w);
        let t: f64 = rng.gen_range(0.0..=1.0);
        let pt = (a + t * w).clamp(x.lo(), x.hi());
        let big = BigFloat::from_f64(pt, 192);

        for r in policies() {
            let si = r.sin(x);
            let lo = big.sin(128, RoundingMode::Down, &mut cts);
            let hi = big.sin(128, RoundingMode::Up, &mut cts);
            assert!(
                BigFloat::from_f64(si.lo(), 192) <= lo && hi <= BigFloat::from_f64(si.hi(), 192),
                "sin({pt}) not enclosed by {si} over {x}"
            );
            let ci = r.cos(x);
            let lo = big.cos(128, RoundingMode::Down, &mut cts);
            let hi = big.cos(128, RoundingMode::Up, &mut cts);
            assert!(
                BigFloat::from_f64(ci.lo(), 192) <= lo && hi <= BigFloat::from_f64(ci.hi(), 192),
                "cos({pt}) not enclosed by {ci} over {x}"
            );
            // exp on a moderate range to stay finite
            if x.lo().abs() < 700.0 && x.hi().abs() < 700.0 {
                let ei = r.exp(x);
                let lo = big.exp(128, RoundingMode::Down, &mut cts);
                let hi = big.exp(128, RoundingMode::Up, &mut cts);
                assert!(
                    BigFloat::from_f64(ei.lo(), 192) <= lo
                        && hi <= BigFloat::from_f64(ei.hi(), 192),
                    "exp({pt}) not enclosed by {ei} over {x}"
                );
            }
        }
    }
}

/// sin/cos enclosures are exactly clipped to [-1, 1].
#[test]
fn trig_exact_clipping() {
    let mut rng = StdRng::seed_from_u64(0xC11F);
    for r in policies() {
        for _ in 0..50_000 {
            let x = random_interval(&mut rng);
            let s = r.sin(x);
            let c = r.cos(x);
            assert!(s.lo() >= -1.0 && s.hi() <= 1.0, "sin {s}");
            assert!(c.lo() >= -1.0 && c.hi() <= 1.0, "cos {c}");
        }
    }
}

/// Constants against 50-digit references, compared in exact rational
/// arithmetic.
#[test]
fn constants_against_reference_digits() {
    fn rational_from_decimal(digits: &str, scale: u32) -> BigRational {
        let num: BigInt = digits.parse().unwrap();
        BigRational::new(num, BigInt::from(10u8).pow(scale))
    }
    // 50 significant digits of pi and e
    let pi_ref = rational_from_decimal("31415926535897932384626433832795028841971693993751", 49);
    let e_ref = rational_from_decimal("27182818284590452353602874713526624977572470936999", 49);
    let r = Rounding::new(RoundingPolicy::OptimalOutward);
    let pi = r.pi();
    assert!(rat(pi.lo()).unwrap() < pi_ref && pi_ref < rat(pi.hi()).unwrap());
    let e = r.e();
    assert!(rat(e.lo()).unwrap() < e_ref && e_ref < rat(e.hi()).unwrap());
}

/// Naive evaluation of x - x*x over m uniform subintervals of [0, 1]:
/// the union tightens toward the exact range [0, 0.25] as m grows and at
/// m = 1000 matches the published refinement bracket.
#[test]
fn refinement_union_converges() {
    let r = Rounding::new(RoundingPolicy::OptimalOutward);
    let union_for = |m: usize| -> Interval {
        let mut acc: Option<Interval> = None;
        for i in 0..m {
            let lo = i as f64 / m as f64;
            let hi = (i + 1) as f64 / m as f64;
            let x = Interval::new(lo, hi);
            let f = r.sub(x, r.mul(x, x));
            acc = Some(match acc {
                None => f,
                Some(u) => u.hull(&f),
            });
        }
        acc.unwrap()
    };

    // single evaluation reproduces the dependence-problem bracket
    let naive = union_for(1);
    assert_eq!(naive, Interval::new(-1.0, 1.0));

    let u10 = union_for(10);
    let u100 = union_for(100);
    let u1000 = union_for(1000);
    assert!(u10.encloses(&u100) && u100.encloses(&u1000));
    for u in [u10, u100, u1000] {
        assert!(
            u.lo() <= 0.0 && u.hi() >= 0.25,
            "must keep the exact range: {u}"
        );
    }
    assert!(u1000.lo() >= -0.0011 && u1000.hi() <= 0.2511, "{u1000}");
}

proptest! {
    /// Inclusion isotonicity: operating on nested operands yields nested
    /// results, for every operation and policy.
    #[test]
    fn inclusion_isotonicity(
        a in -1e3f64..1e3, w1 in 0.0f64..10.0, grow1 in 0.0f64..5.0,
        b in -1e3f64..1e3, w2 in 0.0f64..10.0, grow2 in 0.0f64..5.0,
    ) {
        let x_in = Interval::new(a, a + w1);
        let x_out = Interval::new(a - grow1, a + w1 + grow1);
        let y_in = Interval::new(b, b + w2);
        let y_out = Interval::new(b - grow2, b + w2 + grow2);
        for r in policies() {
            prop_assert!(r.add(x_out, y_out).encloses(&r.add(x_in, y_in)));
            prop_assert!(r.sub(x_out, y_out).encloses(&r.sub(x_in, y_in)));
            prop_assert!(r.mul(x_out, y_out).encloses(&r.mul(x_in, y_in)));
            prop_assert!(r.div(x_out, y_out).encloses(&r.div(x_in, y_in)));
            prop_assert!(r.sqr(x_out).encloses(&r.sqr(x_in)));
            prop_assert!(r.sin(x_out).encloses(&r.sin(x_in)));
            prop_assert!(r.cos(x_out).encloses(&r.cos(x_in)));
            prop_assert!(r.exp(x_out).encloses(&r.exp(x_in)));
        }
    }

    /// Width is monotone under enclosure and zero only for points.
    #[test]
    fn width_behaves(a in -1e6f64..1e6, w in 0.0f64..1e6) {
        let x = Interval::new(a, a + w);
        prop_assert!(x.width() >= w * 0.999999);
        if w == 0.0 {
            prop_assert_eq!(x.width(), 0.0);
        }
    }
}
