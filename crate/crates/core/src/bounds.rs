//! Closed-form bounds and asymptotics for `R(D)`.
//!
//! High distortion, binary reproduction `{-a, +a}`: the sandwich
//!
//! ```text
//! R_L(D) = (D_0-D)²/(8a²σ²) - ρ⁴(D_0-D)⁴/(64a⁴σ⁸)
//! R_U(D) = (2σ⁴/ρ⁴) sin²[(1/3) asin(3ρ²(D_0-D)/(4aσ³))]
//! ```
//!
//! around `D_0 = σ² + a²`. Low distortion, Laplacian source: the series
//! `mmse_s = 8a²θ Σ φ_n/(θ+4ans)³`, the constants `C`, `C_1` and the bounds
//! built from them. High resolution under `|x-y|^r`: `R ≈ K' - (1/r) ln D`.

use std::f64::consts::{FRAC_PI_6, PI};

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::gibbs::SParam;
use crate::info::entropy;
use crate::prob::{Grid, Pmf};

/// Relative slack when deciding whether `D` sits on a validity edge.
const EDGE_SLACK: f64 = 1e-12;

const SERIES_TERM_CAP: usize = 1_000_000;

/// Moments of a symmetric source together with the reproduction level `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    /// `E X²`
    pub sigma2: f64,
    /// `E X⁴`
    pub rho4: f64,
    /// Differential entropy in nats.
    pub diff_entropy: f64,
    pub a: f64,
    /// Laplacian parameter, when the source is Laplacian.
    pub theta: Option<f64>,
}

impl MomentSummary {
    pub fn new(sigma2: f64, rho4: f64, diff_entropy: f64, a: f64, theta: Option<f64>) -> Result<Self> {
        let m = Self {
            sigma2,
            rho4,
            diff_entropy,
            a,
            theta,
        };
        m.validate()?;
        Ok(m)
    }

    /// `N(0, variance)`: `ρ⁴ = 3σ⁴`, `h = ½ ln(2πeσ²)`.
    pub fn gaussian(variance: f64, a: f64) -> Result<Self> {
        Self::new(
            variance,
            3.0 * variance * variance,
            0.5 * (2.0 * PI * std::f64::consts::E * variance).ln(),
            a,
            None,
        )
    }

    /// Density `(θ/2) e^{-θ|x|}`: `σ² = 2/θ²`, `ρ⁴ = 24/θ⁴`, `h = 1 + ln(2/θ)`.
    pub fn laplacian(theta: f64, a: f64) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(Error::InvalidParameter(format!("theta = {theta} must be > 0")));
        }
        let t2 = theta * theta;
        Self::new(2.0 / t2, 24.0 / (t2 * t2), 1.0 + (2.0 / theta).ln(), a, Some(theta))
    }

    /// Moments of a discretized density; `h` is approximated by `H(p) + ln Δ`.
    pub fn from_grid(grid: &Grid, pmf: &Pmf, a: f64) -> Result<Self> {
        let step = grid
            .spacing()
            .ok_or_else(|| Error::InvalidGrid("moment summary needs a uniformly spaced grid".into()))?;
        let mut sigma2 = 0.0;
        let mut rho4 = 0.0;
        for (&x, &w) in grid.points().iter().zip(pmf.weights()) {
            let x2 = x * x;
            sigma2 += w * x2;
            rho4 += w * x2 * x2;
        }
        Self::new(sigma2, rho4, entropy(pmf.weights()) + step.ln(), a, None)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma2 > 0.0 && self.sigma2.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma2 = {} must be > 0", self.sigma2)));
        }
        if !(self.rho4 >= self.sigma2 * self.sigma2 * (1.0 - 1e-12)) {
            return Err(Error::InvalidParameter(format!(
                "rho4 = {} is below sigma2^2 = {}",
                self.rho4,
                self.sigma2 * self.sigma2
            )));
        }
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::InvalidParameter(format!("a = {} must be > 0", self.a)));
        }
        if let Some(t) = self.theta {
            if !(t > 0.0) {
                return Err(Error::InvalidParameter(format!("theta = {t} must be > 0")));
            }
        }
        Ok(())
    }

    /// `D_0 = σ² + a²`.
    pub fn d_zero(&self) -> f64 {
        self.sigma2 + self.a * self.a
    }

    /// Validity interval of [`high_distortion_lower`].
    pub fn lower_validity(&self) -> (f64, f64) {
        let d0 = self.d_zero();
        (d0 - 2.0 * self.a * self.sigma2.powf(1.5) / self.rho4.sqrt(), d0)
    }

    /// Validity interval of [`high_distortion_upper`].
    pub fn upper_validity(&self) -> (f64, f64) {
        let d0 = self.d_zero();
        (d0 - 4.0 * self.a * self.sigma2.powf(1.5) / (3.0 * self.rho4.sqrt()), d0)
    }
}

/// A bound tabulated on a distortion grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub name: String,
    pub validity: (f64, f64),
    pub values: Vec<(f64, f64)>,
}

impl BoundCurve {
    /// Evaluates `f` at every `D`, failing on the first point outside `validity`.
    pub fn tabulate<F>(name: &str, validity: (f64, f64), ds: &[f64], f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if !(validity.0 <= validity.1) {
            return Err(Error::InvalidParameter(format!("empty validity interval {validity:?}")));
        }
        let values = ds.iter().map(|&d| f(d).map(|r| (d, r))).collect::<Result<_>>()?;
        Ok(Self {
            name: name.to_string(),
            validity,
            values,
        })
    }
}

fn check_validity(bound: &'static str, d: f64, lo: f64, hi: f64) -> Result<()> {
    let slack = EDGE_SLACK * lo.abs().max(hi.abs()).max(1.0);
    if d.is_finite() && d >= lo - slack && d <= hi + slack {
        Ok(())
    } else {
        Err(Error::OutOfValidity { bound, d, lo, hi })
    }
}

/// `max(0, h - ½ ln(2πeD))`.
pub fn shannon_lower_bound(diff_entropy: f64, d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidParameter(format!("distortion {d} must be > 0")));
    }
    Ok((diff_entropy - 0.5 * (2.0 * PI * std::f64::consts::E * d).ln()).max(0.0))
}

/// `R_L(D)`, valid on `[D_0 - 2aσ³/ρ², D_0]`.
pub fn high_distortion_lower(m: &MomentSummary, d: f64) -> Result<f64> {
    let (lo, hi) = m.lower_validity();
    check_validity("R_L", d, lo, hi)?;
    let delta = (m.d_zero() - d).max(0.0);
    let a2 = m.a * m.a;
    let s4 = m.sigma2 * m.sigma2;
    let d2 = delta * delta;
    Ok(d2 / (8.0 * a2 * m.sigma2) - m.rho4 * d2 * d2 / (64.0 * a2 * a2 * s4 * s4))
}

/// `R_U(D)`, valid on `[D_0 - 4aσ³/(3ρ²), D_0]`.
pub fn high_distortion_upper(m: &MomentSummary, d: f64) -> Result<f64> {
    let (lo, hi) = m.upper_validity();
    check_validity("R_U", d, lo, hi)?;
    let delta = (m.d_zero() - d).max(0.0);
    let rho2 = m.rho4.sqrt();
    let arg = (3.0 * rho2 * delta / (4.0 * m.a * m.sigma2.powf(1.5))).min(1.0);
    let sine = (arg.asin() / 3.0).sin();
    Ok(2.0 * m.sigma2 * m.sigma2 / m.rho4 * sine * sine)
}

/// `φ_n = 4n(-1)^{n+1}`.
pub fn taylor_phi(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidParameter("phi_n needs n >= 1".into()));
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(4.0 * n as f64 * sign)
}

/// `η(3) = Σ (-1)^{n+1}/n³`, summed until the next term is below `1e-14`.
fn dirichlet_eta3() -> f64 {
    let mut n = 1u64;
    let mut terms = Vec::new();
    loop {
        let t = 1.0 / (n as f64).powi(3);
        if t < 1e-14 {
            break;
        }
        terms.push(if n % 2 == 1 { t } else { -t });
        n += 1;
    }
    terms.iter().rev().sum()
}

/// `C = π²θ/(24a)` and `C_1 = (9θ/(π²a)) η(3)`.
pub fn low_distortion_constants(theta: f64, a: f64) -> Result<(f64, f64)> {
    if !(theta > 0.0 && a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "theta = {theta}, a = {a} must both be > 0"
        )));
    }
    Ok((
        PI * PI * theta / (24.0 * a),
        9.0 * theta / (PI * PI * a) * dirichlet_eta3(),
    ))
}

/// Upper edge of the low-distortion upper bound, `D_∞ + C/(2C_1²)`.
pub fn low_distortion_upper_edge(c: f64, c1: f64, d_inf: f64) -> f64 {
    d_inf + c / (2.0 * c1 * c1)
}

/// Upper edge of the low-distortion lower bound. The `asin` argument
/// `2C_1 √(6(D-D_∞)/C)` reaches 1 at `D_∞ + C/(24C_1²)`, so the bound is
/// only defined up to there.
pub fn low_distortion_lower_edge(c: f64, c1: f64, d_inf: f64) -> f64 {
    d_inf + c / (24.0 * c1 * c1)
}

fn check_low(c: f64, c1: f64) -> Result<()> {
    if c > 0.0 && c1 > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("C = {c}, C1 = {c1} must both be > 0")))
    }
}

/// `R_∞ - √(2C(D-D_∞)) + C_1(D-D_∞)`.
pub fn low_distortion_upper(c: f64, c1: f64, d_inf: f64, r_inf: f64, d: f64) -> Result<f64> {
    check_low(c, c1)?;
    check_validity(
        "low-distortion upper",
        d,
        d_inf,
        low_distortion_upper_edge(c, c1, d_inf),
    )?;
    let delta = (d - d_inf).max(0.0);
    Ok(r_inf - (2.0 * c * delta).sqrt() + c1 * delta)
}

/// `R_∞ - √(6C(D-D_∞)) / (2 cos[(1/3) asin(2C_1 √(6(D-D_∞)/C)) + π/6])`.
pub fn low_distortion_lower(c: f64, c1: f64, d_inf: f64, r_inf: f64, d: f64) -> Result<f64> {
    check_low(c, c1)?;
    check_validity(
        "low-distortion lower",
        d,
        d_inf,
        low_distortion_lower_edge(c, c1, d_inf),
    )?;
    let delta = (d - d_inf).max(0.0);
    let arg = (2.0 * c1 * (6.0 * delta / c).sqrt()).min(1.0);
    let denom = 2.0 * (arg.asin() / 3.0 + FRAC_PI_6).cos();
    Ok(r_inf - (6.0 * c * delta).sqrt() / denom)
}

/// `R_∞ - √(2C(D-D_∞))`.
pub fn highres_asymptote(c: f64, d_inf: f64, r_inf: f64, d: f64) -> Result<f64> {
    if !(d >= d_inf) {
        return Err(Error::BelowDInfinity {
            target: d,
            d_infinity: d_inf,
        });
    }
    Ok(r_inf - (2.0 * c * (d - d_inf)).sqrt())
}

/// `mmse_s = 8a²θ Σ_n φ_n/(θ+4ans)³` for the Laplacian source with reproduction `{-a, +a}`.
///
/// Once the term magnitudes are decreasing and convex the mean of two
/// consecutive partial sums is within half the difference of the next two
/// magnitudes of the limit; summation stops when that bound is below `tol`.
pub fn laplacian_mmse_series(theta: f64, a: f64, s: SParam, tol: f64) -> Result<f64> {
    if !(theta > 0.0 && a > 0.0 && tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "theta = {theta}, a = {a}, tol = {tol} must all be > 0"
        )));
    }
    let s = s.value();
    if s <= 0.0 {
        return Err(Error::InvalidParameter("the series needs s > 0".into()));
    }
    let c = 4.0 * a * s;
    let scale = 8.0 * a * a * theta;
    let magnitude = |n: usize| {
        let n = n as f64;
        scale * 4.0 * n / (theta + c * n).powi(3)
    };
    let regular_from = (theta / c).ceil() as usize + 2;
    let mut partial = 0.0;
    for n in 1..=SERIES_TERM_CAP {
        let m = magnitude(n);
        partial += if n % 2 == 1 { m } else { -m };
        if n >= regular_from {
            let bound = 0.5 * (magnitude(n + 1) - magnitude(n + 2));
            if bound <= tol {
                return Ok(partial + if n % 2 == 1 { -0.5 } else { 0.5 } * magnitude(n + 1));
            }
        }
    }
    Err(Error::SeriesCap { terms: SERIES_TERM_CAP })
}

/// `K' = ln[rA/Γ(1/r)] - (1/r) ln(er)`.
pub fn lr_constant(r: f64, amplitude: f64) -> Result<f64> {
    if !(r > 0.0 && amplitude > 0.0 && r.is_finite() && amplitude.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "r = {r}, A = {amplitude} must both be > 0"
        )));
    }
    Ok((r * amplitude / gamma(1.0 / r)).ln() - (std::f64::consts::E * r).ln() / r)
}

/// `K' - (1/r) ln D`.
pub fn lr_highres_rate(r: f64, amplitude: f64, d: f64) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidParameter(format!("distortion {d} must be > 0")));
    }
    Ok(lr_constant(r, amplitude)? - d.ln() / r)
}
