//! The curve `R_q(D)` in its Legendre form and as MMSE integrals over `s`.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gibbs::{evaluate_raw, KernelPoint, SParam};
use crate::prob::RdProblem;
use crate::quadrature::{integrate_to_infinity, integrate_with_breakpoints, QuadratureConfig};

/// Absolute tolerance on `d` when collecting the argmin set of a row.
pub const ARGMIN_TOL: f64 = 1e-12;

/// Upper bracket cap for the root search, `2^80`.
const S_CAP: f64 = 1.208_925_819_614_629_2e24;

const MAX_ROOT_ITERATIONS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub s: SParam,
    pub distortion: f64,
    pub rate_nats: f64,
    pub mmse: f64,
}

/// How the points of a [`Curve`] were produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// The Legendre objective at its own minimizer.
    Legendre,
    /// `D_0 - ∫_0^s mmse` and `∫_0^s t·mmse`.
    IntegralFromZero,
    /// `D_∞ + ∫_s^∞ mmse` and `R_q(D_∞) - ∫_s^∞ t·mmse`.
    IntegralFromInfinity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub points: Vec<CurvePoint>,
    pub method: Method,
}

impl Curve {
    /// Distortion nonincreasing and rate nondecreasing, up to `tol`.
    pub fn is_monotone(&self, tol: f64) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].distortion <= w[0].distortion + tol && w[1].rate_nats >= w[0].rate_nats - tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreSolution {
    pub rate: f64,
    pub s: SParam,
    /// Set when `D > D_0` was clamped to the zero-rate point.
    pub clamped: bool,
}

/// `R_q(D) = -min_{s>=0} [sD + Σ_x p(x) ln Z_x(s)]`.
pub fn legendre_rate(problem: &RdProblem, d: f64) -> Result<LegendreSolution> {
    if !d.is_finite() {
        return Err(Error::InvalidParameter(format!("distortion {d} is not finite")));
    }
    let d_inf = problem.d_infinity();
    let d0 = problem.d_zero();
    if d <= d_inf {
        return Err(Error::BelowDInfinity {
            target: d,
            d_infinity: d_inf,
        });
    }
    if d >= d0 {
        return Ok(LegendreSolution {
            rate: 0.0,
            s: SParam::ZERO,
            clamped: d > d0,
        });
    }
    let (s, kp) = solve(problem, d)?;
    // sD + Σ p ln Z = s(D - D_∞) + Σ p ln z, and kp.rate = -s·excess_s - Σ p ln z
    let rate = kp.rate - s * ((d - d_inf) - kp.excess_distortion);
    Ok(LegendreSolution {
        rate: rate.max(0.0),
        s: SParam::new(s)?,
        clamped: false,
    })
}

/// The `s` at which `D_s = D`.
pub fn solve_s_for_distortion(problem: &RdProblem, d: f64) -> Result<SParam> {
    let d_inf = problem.d_infinity();
    let d0 = problem.d_zero();
    if !(d > d_inf && d < d0) {
        return Err(if d <= d_inf {
            Error::BelowDInfinity {
                target: d,
                d_infinity: d_inf,
            }
        } else {
            Error::InvalidParameter(format!("distortion {d} is not below D_0 = {d0}"))
        });
    }
    SParam::new(solve(problem, d)?.0)
}

fn solve(problem: &RdProblem, d: f64) -> Result<(f64, KernelPoint)> {
    let d0 = problem.d_zero();
    let target = d - problem.d_infinity();
    let tol = (1e-10 * d0).min(1e-9 * target);
    let residual = |kp: &KernelPoint| kp.excess_distortion - target;

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut at_hi = evaluate_raw(problem, hi);
    while residual(&at_hi) >= 0.0 {
        if hi >= S_CAP {
            return Err(Error::IndistinguishableFromDInfinity { target: d });
        }
        lo = hi;
        hi *= 2.0;
        at_hi = evaluate_raw(problem, hi);
    }

    // Newton from the lower end of the bracket, falling back to bisection.
    let mut x = if lo == 0.0 {
        let k0 = evaluate_raw(problem, 0.0);
        if k0.mmse > 0.0 {
            ((d0 - d) / k0.mmse).min(0.5 * hi)
        } else {
            0.5 * hi
        }
    } else {
        0.5 * (lo + hi)
    };
    let mut best = (hi, at_hi);
    for _ in 0..MAX_ROOT_ITERATIONS {
        let kp = evaluate_raw(problem, x);
        let r = residual(&kp);
        if r.abs() < residual(&best.1).abs() {
            best = (x, kp);
        }
        if r.abs() <= tol {
            return Ok((x, kp));
        }
        if r > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(best);
        }
        let newton = if kp.mmse > 0.0 { x + r / kp.mmse } else { f64::NAN };
        x = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::NonConvergence {
        iterations: MAX_ROOT_ITERATIONS,
    })
}

/// `lim_{s→∞} R_q(D_s) = -Σ_x p(x) ln q(argmin_y d(x,y))`, ties aggregated.
pub fn rate_at_d_infinity(problem: &RdProblem) -> f64 {
    let d = problem.distortion();
    let q = problem.q().weights();
    let mut total = 0.0;
    for (i, (&px, &m)) in problem.p().weights().iter().zip(problem.row_min()).enumerate() {
        if px == 0.0 {
            continue;
        }
        let mass: f64 = d
            .row(i)
            .iter()
            .zip(q)
            .filter(|(&v, &qy)| qy > 0.0 && v - m <= ARGMIN_TOL)
            .map(|(_, &qy)| qy)
            .sum();
        total -= px * mass.min(1.0).ln();
    }
    total.max(0.0)
}

fn s_reference(problem: &RdProblem) -> f64 {
    let spread = problem.d_zero() - problem.d_infinity();
    if spread > 0.0 {
        1.0 / spread
    } else {
        1.0
    }
}

/// `[a, b]` split at the dyadic multiples `s_ref·2^k` lying strictly inside.
fn breakpoints(a: f64, b: f64, s_ref: f64) -> Vec<f64> {
    let mut pts = vec![a];
    let mut t = s_ref / 8.0;
    while t < b {
        if t > a {
            pts.push(t);
        }
        t *= 2.0;
    }
    pts.push(b);
    pts
}

struct Segment {
    mmse: f64,
    s_mmse: f64,
}

/// `mmse_t` memoized by the bit pattern of `t`; the two integrands share most nodes.
struct MmseCache<'a> {
    problem: &'a RdProblem,
    seen: RefCell<HashMap<u64, f64>>,
}

impl<'a> MmseCache<'a> {
    fn new(problem: &'a RdProblem) -> Self {
        Self {
            problem,
            seen: RefCell::new(HashMap::new()),
        }
    }

    fn at(&self, t: f64) -> f64 {
        if let Some(&v) = self.seen.borrow().get(&t.to_bits()) {
            return v;
        }
        let v = evaluate_raw(self.problem, t).mmse;
        self.seen.borrow_mut().insert(t.to_bits(), v);
        v
    }
}

fn segment(problem: &RdProblem, a: f64, b: f64, quad: &QuadratureConfig) -> Result<Segment> {
    if b <= a {
        return Ok(Segment { mmse: 0.0, s_mmse: 0.0 });
    }
    let pts = breakpoints(a, b, s_reference(problem));
    let cache = MmseCache::new(problem);
    let mmse = integrate_with_breakpoints(|t| cache.at(t), &pts, quad)?.value;
    let s_mmse = integrate_with_breakpoints(|t| t * cache.at(t), &pts, quad)?.value;
    Ok(Segment { mmse, s_mmse })
}

fn tail(problem: &RdProblem, s: f64, quad: &QuadratureConfig) -> Result<Segment> {
    let start = if s > 0.0 { s } else { s_reference(problem) };
    let head = segment(problem, s, start, quad)?;
    let cache = MmseCache::new(problem);
    let mmse = integrate_to_infinity(|t| cache.at(t), start, quad)?.value;
    let s_mmse = integrate_to_infinity(|t| t * cache.at(t), start, quad)?.value;
    Ok(Segment {
        mmse: head.mmse + mmse,
        s_mmse: head.s_mmse + s_mmse,
    })
}

/// `R_q(D_s) = ∫_0^s t·mmse_t dt`.
pub fn rate_by_integral(problem: &RdProblem, s: SParam, quad: &QuadratureConfig) -> Result<f64> {
    Ok(segment(problem, 0.0, s.value(), quad)?.s_mmse)
}

/// `D_s = D_0 - ∫_0^s mmse_t dt`.
pub fn distortion_by_integral(problem: &RdProblem, s: SParam, quad: &QuadratureConfig) -> Result<f64> {
    Ok(problem.d_zero() - segment(problem, 0.0, s.value(), quad)?.mmse)
}

/// `R_q(D_s) = R_q(D_∞) - ∫_s^∞ t·mmse_t dt`.
pub fn rate_by_tail_integral(problem: &RdProblem, s: SParam, quad: &QuadratureConfig) -> Result<f64> {
    Ok((rate_at_d_infinity(problem) - tail(problem, s.value(), quad)?.s_mmse).max(0.0))
}

/// `D_s = D_∞ + ∫_s^∞ mmse_t dt`.
pub fn distortion_by_tail_integral(problem: &RdProblem, s: SParam, quad: &QuadratureConfig) -> Result<f64> {
    Ok(problem.d_infinity() + tail(problem, s.value(), quad)?.mmse)
}

/// Samples the curve at increasing `s`. The integral methods integrate each
/// gap between neighbouring `s` once and accumulate.
pub fn trace_curve(problem: &RdProblem, s_values: &[f64], quad: &QuadratureConfig, method: Method) -> Result<Curve> {
    for &s in s_values {
        SParam::new(s)?;
    }
    if s_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("s values must be strictly increasing".into()));
    }
    let kernel: Vec<KernelPoint> = s_values.iter().map(|&s| evaluate_raw(problem, s)).collect();
    let mut points: Vec<CurvePoint> = kernel
        .iter()
        .map(|kp| CurvePoint {
            s: SParam(kp.s),
            distortion: kp.distortion,
            rate_nats: kp.rate,
            mmse: kp.mmse,
        })
        .collect();

    match method {
        Method::Legendre => {}
        Method::IntegralFromZero => {
            let d0 = problem.d_zero();
            let (mut lost, mut gained, mut prev) = (0.0, 0.0, 0.0);
            for pt in points.iter_mut() {
                let seg = segment(problem, prev, pt.s.value(), quad)?;
                lost += seg.mmse;
                gained += seg.s_mmse;
                prev = pt.s.value();
                pt.distortion = d0 - lost;
                pt.rate_nats = gained;
            }
        }
        Method::IntegralFromInfinity => {
            if let Some(last) = points.last() {
                let r_inf = rate_at_d_infinity(problem);
                let d_inf = problem.d_infinity();
                let t = tail(problem, last.s.value(), quad)?;
                let (mut above, mut s_above) = (t.mmse, t.s_mmse);
                let mut next = last.s.value();
                for pt in points.iter_mut().rev() {
                    let seg = segment(problem, pt.s.value(), next, quad)?;
                    above += seg.mmse;
                    s_above += seg.s_mmse;
                    next = pt.s.value();
                    pt.distortion = d_inf + above;
                    pt.rate_nats = (r_inf - s_above).max(0.0);
                }
            }
        }
    }
    Ok(Curve { points, method })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::{DistortionMatrix, Pmf};

    fn bss() -> RdProblem {
        let d = DistortionMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        RdProblem::from_pmfs(Pmf::uniform(2).unwrap(), Pmf::uniform(2).unwrap(), d).unwrap()
    }

    fn bss_rate(d: f64) -> f64 {
        std::f64::consts::LN_2 + d * d.ln() + (1.0 - d) * (1.0 - d).ln()
    }

    fn q() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn legendre_bss_quarter() {
        let sol = legendre_rate(&bss(), 0.25).unwrap();
        assert!((sol.rate - 0.130_812_035_941_137_2).abs() < 1e-12, "{}", sol.rate);
        assert!((sol.s.value() - 3f64.ln()).abs() < 1e-9);
        assert!(!sol.clamped);
    }

    #[test]
    fn legendre_at_and_above_d_zero() {
        let at = legendre_rate(&bss(), 0.5).unwrap();
        assert_eq!((at.rate, at.s.value(), at.clamped), (0.0, 0.0, false));
        let above = legendre_rate(&bss(), 0.7).unwrap();
        assert_eq!((above.rate, above.s.value(), above.clamped), (0.0, 0.0, true));
    }

    #[test]
    fn legendre_below_d_infinity() {
        assert!(matches!(legendre_rate(&bss(), 0.0), Err(Error::BelowDInfinity { .. })));
        assert!(matches!(legendre_rate(&bss(), -1.0), Err(Error::BelowDInfinity { .. })));
    }

    #[test]
    fn solve_small_s_linearization() {
        let eps = 1e-6;
        let s = solve_s_for_distortion(&bss(), 0.5 - eps).unwrap().value();
        assert!((s - 4.0 * eps).abs() < 1e-9, "{s}");
    }

    #[test]
    fn solve_cap_is_reported() {
        let d = DistortionMatrix::from_rows(vec![vec![0.0, 1e-24], vec![1e-24, 0.0]]).unwrap();
        let tiny = RdProblem::from_pmfs(Pmf::uniform(2).unwrap(), Pmf::uniform(2).unwrap(), d).unwrap();
        assert!(matches!(
            solve_s_for_distortion(&tiny, 1e-40),
            Err(Error::IndistinguishableFromDInfinity { .. })
        ));
    }

    #[test]
    fn integral_forms_on_bss() {
        let s = SParam::new(3f64.ln()).unwrap();
        assert!((rate_by_integral(&bss(), s, &q()).unwrap() - bss_rate(0.25)).abs() < 1e-8);
        assert!((distortion_by_integral(&bss(), s, &q()).unwrap() - 0.25).abs() < 1e-8);
        assert!((rate_by_tail_integral(&bss(), s, &q()).unwrap() - bss_rate(0.25)).abs() < 1e-6);
        assert!((distortion_by_tail_integral(&bss(), s, &q()).unwrap() - 0.25).abs() < 1e-8);
        assert_eq!(rate_by_integral(&bss(), SParam::ZERO, &q()).unwrap(), 0.0);
    }

    #[test]
    fn single_reproduction_symbol() {
        let d = DistortionMatrix::from_rows(vec![vec![0.3], vec![1.1]]).unwrap();
        let p = RdProblem::from_pmfs(Pmf::new(vec![0.4, 0.6]).unwrap(), Pmf::uniform(1).unwrap(), d).unwrap();
        for s in [0.0, 1.0, 50.0] {
            let got = distortion_by_integral(&p, SParam::new(s).unwrap(), &q()).unwrap();
            assert!((got - p.d_zero()).abs() < 1e-15);
        }
        assert_eq!(rate_at_d_infinity(&p), 0.0);
    }

    #[test]
    fn rate_at_d_infinity_bss() {
        assert!((rate_at_d_infinity(&bss()) - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn rate_at_d_infinity_ties() {
        let d = DistortionMatrix::from_rows(vec![vec![1.0, 1.0, 2.0]]).unwrap();
        let p = RdProblem::from_pmfs(Pmf::uniform(1).unwrap(), Pmf::new(vec![0.2, 0.3, 0.5]).unwrap(), d).unwrap();
        assert!((rate_at_d_infinity(&p) + 0.5f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn trace_bss_two_points() {
        let s = [0.0, 3f64.ln()];
        for m in [Method::Legendre, Method::IntegralFromZero, Method::IntegralFromInfinity] {
            let c = trace_curve(&bss(), &s, &q(), m).unwrap();
            let [a, b] = [c.points[0], c.points[1]];
            assert!((a.distortion - 0.5).abs() < 1e-8 && a.rate_nats.abs() < 1e-6, "{m:?}");
            assert!((a.mmse - 0.25).abs() < 1e-15);
            assert!((b.distortion - 0.25).abs() < 1e-8, "{m:?}");
            assert!((b.rate_nats - 0.130_812_1).abs() < 1e-6, "{m:?}");
            assert!((b.mmse - 0.1875).abs() < 1e-14);
            assert!(c.is_monotone(0.0));
        }
    }

    #[test]
    fn trace_empty_and_invalid() {
        let c = trace_curve(&bss(), &[], &q(), Method::IntegralFromZero).unwrap();
        assert!(c.points.is_empty());
        assert!(trace_curve(&bss(), &[1.0, 0.5], &q(), Method::Legendre).is_err());
        assert!(trace_curve(&bss(), &[-1.0], &q(), Method::Legendre).is_err());
    }
}
