mod common;

use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use rdmmse::{
    evaluate, legendre_rate, presets, rate_by_integral, rate_by_tail_integral, trace_curve, Method, Preset,
    QuadratureConfig, SParam,
};

fn sp(s: f64) -> SParam {
    SParam::new(s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn legendre_nonnegative_zero_iff_above_d_zero(p in common::problem(5), t in 0.0f64..1.5) {
        let (lo, hi) = (p.d_infinity(), p.d_zero());
        prop_assume!(hi - lo > 1e-6);
        let d = lo + t * (hi - lo);
        prop_assume!(d > lo);
        let r = legendre_rate(&p, d).unwrap().rate;
        prop_assert!(r >= 0.0);
        if d >= hi {
            prop_assert_eq!(r, 0.0);
        } else if hi - d > 1e-6 {
            prop_assert!(r > 0.0);
        }
    }

    #[test]
    fn integral_matches_legendre(p in common::problem(4), log_s in -1.5f64..1.0) {
        let quad = QuadratureConfig::default();
        let s = 10f64.powf(log_s);
        let by_integral = rate_by_integral(&p, sp(s), &quad).unwrap();
        let d = evaluate(&p, sp(s)).distortion;
        prop_assume!(d > p.d_infinity() && p.d_zero() - p.d_infinity() > 1e-6);
        let legendre = legendre_rate(&p, d).unwrap().rate;
        prop_assert!((by_integral - legendre).abs() <= 1e-6, "{by_integral} vs {legendre}");
        let tail = rate_by_tail_integral(&p, sp(s), &quad).unwrap();
        prop_assert!((by_integral - tail).abs() <= 1e-5, "{by_integral} vs tail {tail}");
    }

    #[test]
    fn traced_curve_is_monotone_and_convex(p in common::problem(4)) {
        prop_assume!(p.d_zero() - p.d_infinity() > 1e-3);
        let s: Vec<f64> = (0..=40).map(|i| 0.1 * i as f64).collect();
        let curve = trace_curve(&p, &s, &QuadratureConfig::default(), Method::Legendre).unwrap();
        prop_assert!(curve.is_monotone(1e-12));
        let pts = &curve.points;
        for w in pts.windows(3) {
            let (a, b, c) = (&w[0], &w[1], &w[2]);
            // `s` increases left to right, so `D` decreases and so must the slope.
            let upper = (b.rate_nats - a.rate_nats) / (b.distortion - a.distortion);
            let lower = (c.rate_nats - b.rate_nats) / (c.distortion - b.distortion);
            if (a.distortion - b.distortion).min(b.distortion - c.distortion) > 1e-7 {
                prop_assert!(upper - lower >= -1e-9 * upper.abs().max(1.0), "{upper} {lower}");
            }
        }
    }

    #[test]
    fn chord_slope_is_minus_s(p in common::problem(4), log_s in -1.0f64..1.0) {
        let s = 10f64.powf(log_s);
        let pair = [s * 0.995, s * 1.005];
        let curve = trace_curve(&p, &pair, &QuadratureConfig::default(), Method::Legendre).unwrap();
        let (a, b) = (&curve.points[0], &curve.points[1]);
        prop_assume!(a.distortion - b.distortion > 1e-9);
        let slope = (b.rate_nats - a.rate_nats) / (b.distortion - a.distortion);
        prop_assert!((slope + s).abs() <= 0.01 * s, "slope {slope} at s {s}");
    }
}

#[test]
fn slope_on_grid_presets() {
    for preset in [Preset::Fig1, Preset::Gauss] {
        let p = preset.problem().unwrap();
        for i in 0..20 {
            let s = 0.05 * 1.25f64.powi(i);
            let pair = [s * 0.995, s * 1.005];
            let c = trace_curve(&p, &pair, &QuadratureConfig::default(), Method::Legendre).unwrap();
            let (a, b) = (&c.points[0], &c.points[1]);
            let slope = (b.rate_nats - a.rate_nats) / (b.distortion - a.distortion);
            assert!((slope + s).abs() <= 0.01 * s, "{preset}: slope {slope} at s {s}");
        }
    }
}

#[test]
fn three_methods_agree_on_bss() {
    let p = presets::bss().unwrap();
    let quad = QuadratureConfig::default();
    let s = [0.0, 0.2, 1.0, 3.0, 9.0];
    let reference = trace_curve(&p, &s, &quad, Method::Legendre).unwrap();
    for method in [Method::IntegralFromZero, Method::IntegralFromInfinity] {
        let other = trace_curve(&p, &s, &quad, method).unwrap();
        for (a, b) in reference.points.iter().zip(&other.points) {
            assert_abs_diff_eq!(a.distortion, b.distortion, epsilon = 1e-9);
            assert_abs_diff_eq!(a.rate_nats, b.rate_nats, epsilon = 1e-9);
        }
    }
}
