//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Each panel is integrated with the 15-point Kronrod rule and its error is
//! estimated against the embedded 7-point Gauss rule using the QUADPACK
//! scaling. The panel with the largest error is bisected until the summed
//! error meets `max(abs_tol, rel_tol·|I|)`.
//!
//! Semi-infinite integrals `∫_s^∞ f` are mapped by `u = 1/t` onto `(0, 1/s]`
//! and split into geometric panels `[u/2, u]` walking toward the open end at 0.

use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1]; odd indices are the Gauss-7 nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Handling of `∫_s^∞` integrals after the `u = 1/t` substitution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailRule {
    /// Maximum number of geometric panels `[u/2, u]` before the tail is declared divergent.
    pub max_panels: usize,
    /// Number of consecutive negligible panels after which the remainder is dropped.
    pub negligible_run: usize,
}

impl Default for TailRule {
    fn default() -> Self {
        Self {
            max_panels: 200,
            negligible_run: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of panel bisections per adaptive run.
    pub max_subdivisions: usize,
    pub tail_switch: TailRule,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 60,
            tail_switch: TailRule::default(),
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter("quadrature tolerances must be > 0".into()));
        }
        if self.max_subdivisions < 10 {
            return Err(Error::InvalidParameter("max_subdivisions must be at least 10".into()));
        }
        if self.tail_switch.max_panels == 0 || self.tail_switch.negligible_run == 0 {
            return Err(Error::InvalidParameter("tail rule needs positive panel counts".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let value = res_k * half;
    res_abs *= scale;
    res_asc *= scale;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value, error }
}

/// `∫_a^b f` with adaptive bisection.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Integral> {
    integrate_with_breakpoints(f, &[a, b], cfg)
}

/// `∫ f` over `[points[0], points[last]]` starting from the given partition.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(f: F, points: &[f64], cfg: &QuadratureConfig) -> Result<Integral> {
    cfg.validate()?;
    if points.len() < 2 {
        return Err(Error::InvalidParameter("need at least two integration limits".into()));
    }
    if points.iter().any(|p| !p.is_finite()) || points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter(
            "integration breakpoints must be finite and sorted".into(),
        ));
    }
    let mut panels: Vec<Panel> = points
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| gk15(&f, w[0], w[1]))
        .collect();
    let mut evaluations = 15 * panels.len();
    let mut bisections = 0;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Internal(format!(
                "non-finite integrand on [{}, {}]",
                points[0],
                points[points.len() - 1]
            )));
        }
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(Integral {
                value,
                error,
                evaluations,
            });
        }
        if bisections >= cfg.max_subdivisions {
            return Err(Error::QuadratureLimit { estimate: value, error });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let Panel { a, b, .. } = panels.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if !(mid > a && mid < b) {
            return Err(Error::QuadratureLimit { estimate: value, error });
        }
        panels.push(gk15(&f, a, mid));
        panels.push(gk15(&f, mid, b));
        evaluations += 30;
        bisections += 1;
    }
}

/// `∫_s^∞ f(t) dt` for `s > 0`, evaluated as `∫_0^{1/s} f(1/u)/u² du`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, s: f64, cfg: &QuadratureConfig) -> Result<Integral> {
    cfg.validate()?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tail integral needs a finite s > 0, got {s}"
        )));
    }
    let g = |u: f64| {
        let t = 1.0 / u;
        let v = f(t);
        if v == 0.0 {
            0.0
        } else {
            v * t * t
        }
    };
    let rule = cfg.tail_switch;
    let mut upper = 1.0 / s;
    let mut total = Integral {
        value: 0.0,
        error: 0.0,
        evaluations: 0,
    };
    let mut quiet = 0;
    for _ in 0..rule.max_panels {
        let lower = 0.5 * upper;
        let piece = integrate(&g, lower, upper, cfg)?;
        total.value += piece.value;
        total.error += piece.error;
        total.evaluations += piece.evaluations;
        let negligible = piece.value.abs() <= 0.5 * cfg.abs_tol.max(cfg.rel_tol * total.value.abs());
        quiet = if negligible { quiet + 1 } else { 0 };
        if quiet >= rule.negligible_run {
            return Ok(total);
        }
        upper = lower;
    }
    Err(Error::TailDivergence {
        partial: total.value,
        levels: rule.max_panels,
    })
}
