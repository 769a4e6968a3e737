//! Self-check suite behind `rdmmse verify`.
//!
//! Each case runs a handful of checks against closed forms, the other
//! representation, or an oracle, and reports one [`Check`] per item.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use crate::bounds::{
    high_distortion_lower, high_distortion_upper, laplacian_mmse_series, low_distortion_constants,
    low_distortion_lower, low_distortion_lower_edge, low_distortion_upper, lr_constant,
};
use crate::capacity::{capacity_by_integral, capacity_legendre, ChannelProblem};
use crate::curve::{legendre_rate, rate_at_d_infinity, rate_by_integral, rate_by_tail_integral};
use crate::error::{Error, Result};
use crate::gibbs::{evaluate, SParam};
use crate::info::binary_entropy;
use crate::oracle::{blahut_arimoto, bruteforce_rq, min_coupled_distortion, mot_rate_function, q_search_infimum};
use crate::presets::{self, Preset};
use crate::prob::{DistortionMatrix, Pmf, RdProblem};
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Bss,
    Gauss,
    Fig1,
    Laplace,
    Lr,
    Capacity,
    Oracle,
}

impl Case {
    pub const ALL: [Case; 7] = [
        Case::Bss,
        Case::Gauss,
        Case::Fig1,
        Case::Laplace,
        Case::Lr,
        Case::Capacity,
        Case::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Case::Bss => "bss",
            Case::Gauss => "gauss",
            Case::Fig1 => "fig1",
            Case::Laplace => "laplace",
            Case::Lr => "lr",
            Case::Capacity => "capacity",
            Case::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown verify case {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Multiplies every kernel mmse before it is compared. `1.0` in normal
    /// use; anything else should make the derivative checks fail.
    pub mmse_scale: f64,
    pub quad: QuadratureConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            mmse_scale: 1.0,
            quad: QuadratureConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub case: Case,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}/{}: {}", self.case, self.name, self.detail)
    }
}

pub fn run(cases: &[Case], opts: &VerifyOptions) -> Vec<Check> {
    cases.iter().flat_map(|&c| run_case(c, opts)).collect()
}

pub fn run_case(case: Case, opts: &VerifyOptions) -> Vec<Check> {
    let items: Vec<(&'static str, Result<(bool, String)>)> = match case {
        Case::Bss => {
            let bss = presets::bss();
            vec![
                ("closed-form", bss.clone().and_then(|p| bss_closed_form(&p))),
                ("derivatives", bss.clone().and_then(|p| derivatives(&p, opts))),
                (
                    "cross-method",
                    bss.clone()
                        .and_then(|p| cross_method(&p, &[0.1, 0.5, 1.0, 2.0, 5.0], 1e-6, opts)),
                ),
                ("oracle", bss.and_then(|p| bss_oracles(&p))),
            ]
        }
        Case::Gauss => {
            let g = Preset::Gauss.problem();
            vec![
                ("closed-form", gauss_closed_form()),
                ("derivatives", g.clone().and_then(|p| derivatives(&p, opts))),
                (
                    "cross-method",
                    g.and_then(|p| cross_method(&p, &[0.5, 2.0], 1e-4, opts)),
                ),
            ]
        }
        Case::Fig1 => {
            let f = Preset::Fig1.problem();
            vec![
                ("sandwich", f.clone().and_then(|p| fig1_sandwich(&p))),
                ("derivatives", f.and_then(|p| derivatives(&p, opts))),
            ]
        }
        Case::Laplace => {
            let l = Preset::BinaryRep.problem();
            vec![
                ("slope", l.clone().and_then(|p| laplace_slope(&p))),
                ("series", l.clone().and_then(|p| laplace_series(&p, opts))),
                ("sandwich", l.and_then(|p| laplace_sandwich(&p))),
            ]
        }
        Case::Lr => vec![("high-resolution", lr_law())],
        Case::Capacity => vec![("integral", capacity_checks(opts))],
        Case::Oracle => vec![
            ("mot", oracle_mot()),
            ("ordering", oracle_ordering()),
            ("blahut-arimoto", blahut()),
        ],
    };
    items
        .into_iter()
        .map(|(name, r)| {
            let (pass, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
            Check {
                case,
                name,
                pass,
                detail,
            }
        })
        .collect()
}

fn sp(s: f64) -> SParam {
    SParam(s)
}

fn bss_rate(d: f64) -> f64 {
    LN_2 - binary_entropy(d)
}

fn logspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

fn verdict(worst: f64, tol: f64, what: &str) -> (bool, String) {
    (worst <= tol, format!("{what} {worst:.3e} (tol {tol:.0e})"))
}

fn bss_closed_form(p: &RdProblem) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for i in 1..=9 {
        let d = 0.05 * i as f64;
        worst = worst.max((legendre_rate(p, d)?.rate - bss_rate(d)).abs());
    }
    Ok(verdict(worst, 1e-6, "max |R - (ln 2 - h(D))|"))
}

fn gauss_closed_form() -> Result<(bool, String)> {
    let d = 0.25;
    let sol = legendre_rate(&presets::gaussian_reproduction(d, 1001)?, d)?;
    let rate_err = (sol.rate - 0.5 * (1.0 / d).ln()).abs();
    let s_err = (sol.s.value() * 2.0 * d - 1.0).abs();
    Ok((
        rate_err <= 5e-3 && s_err <= 0.02,
        format!("|R - ½ln(1/D)| {rate_err:.3e} (tol 5e-3), relative s error {s_err:.3e} (tol 2e-2)"),
    ))
}

/// Central differences of `D_s` and `R_s` against `-mmse` and `s·mmse`.
fn derivatives(p: &RdProblem, opts: &VerifyOptions) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for s in logspace(1e-2, 1e1, 20) {
        let h = 1e-4 * s.max(1.0);
        let (lo, mid, hi) = (evaluate(p, sp(s - h)), evaluate(p, sp(s)), evaluate(p, sp(s + h)));
        let m = mid.mmse * opts.mmse_scale;
        let dd = (hi.distortion - lo.distortion) / (2.0 * h);
        let dr = (hi.rate - lo.rate) / (2.0 * h);
        worst = worst.max((dd + m).abs() / m).max((dr - s * m).abs() / (s * m));
    }
    Ok(verdict(worst, 1e-4, "max relative derivative error"))
}

fn cross_method(p: &RdProblem, ss: &[f64], tol: f64, opts: &VerifyOptions) -> Result<(bool, String)> {
    let (mut legendre_gap, mut tail_gap): (f64, f64) = (0.0, 0.0);
    for &s in ss {
        let forward = rate_by_integral(p, sp(s), &opts.quad)?;
        let legendre = legendre_rate(p, evaluate(p, sp(s)).distortion)?.rate;
        legendre_gap = legendre_gap.max((forward - legendre).abs());
        tail_gap = tail_gap.max((forward - rate_by_tail_integral(p, sp(s), &opts.quad)?).abs());
    }
    Ok((
        legendre_gap <= tol && tail_gap <= 1e-5,
        format!("integral vs Legendre {legendre_gap:.3e} (tol {tol:.0e}), forward vs tail {tail_gap:.3e} (tol 1e-5)"),
    ))
}

fn bss_oracles(p: &RdProblem) -> Result<(bool, String)> {
    let exact = bss_rate(0.25);
    let brute = (bruteforce_rq(p, 0.25, 0.002)?.value_nats - exact).abs();
    let mot = (mot_rate_function(p, 0.25, 0.002)?.value_nats - exact).abs();
    Ok((
        brute <= 2e-3 && mot <= 2e-3,
        format!("at D = 1/4: brute {brute:.3e}, mot {mot:.3e} (tol 2e-3)"),
    ))
}

fn fig1_sandwich(p: &RdProblem) -> Result<(bool, String)> {
    let m = Preset::Fig1.moments().expect("fig1 has moments");
    let mut outside = 0;
    for i in 0..25 {
        let d = 1.7 + 0.25 * i as f64 / 24.0;
        let r = legendre_rate(p, d)?.rate;
        if !(high_distortion_lower(&m, d)? <= r && r <= high_distortion_upper(&m, d)?) {
            outside += 1;
        }
    }
    let ratio = legendre_rate(p, 1.99)?.rate / (p.d_zero() - 1.99).powi(2);
    Ok((
        outside == 0 && (0.1225..=0.1275).contains(&ratio),
        format!("{outside} of 25 points outside [R_L, R_U]; R/(D_0-D)^2 at 1.99 = {ratio:.5} (want 1/8 ± 2e-2)"),
    ))
}

fn laplace_slope(p: &RdProblem) -> Result<(bool, String)> {
    let d_inf = p.d_infinity();
    let r_inf = rate_at_d_infinity(p);
    let (c, _) = low_distortion_constants(1.0, 1.0)?;
    let target = (2.0 * c).sqrt();
    let mut pts = Vec::new();
    for delta in logspace(1e-4, 1e-2, 21) {
        pts.push((delta.sqrt(), r_inf - legendre_rate(p, d_inf + delta)?.rate));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|q| q.0).sum::<f64>() / n;
    let my = pts.iter().map(|q| q.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|q| (q.0 - mx) * (q.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|q| (q.0 - mx) * (q.0 - mx)).sum();
    let rel = (sxy / sxx - target).abs() / target;
    Ok((
        rel <= 0.05,
        format!(
            "slope {:.5} vs sqrt(2C) {target:.5}, relative {rel:.3e} (tol 5e-2)",
            sxy / sxx
        ),
    ))
}

fn laplace_series(p: &RdProblem, opts: &VerifyOptions) -> Result<(bool, String)> {
    let s = 10.0;
    let series = laplacian_mmse_series(1.0, 1.0, sp(s), 1e-12)?;
    let kernel = evaluate(p, sp(s)).mmse * opts.mmse_scale;
    Ok(verdict(
        (series - kernel).abs(),
        1e-4,
        "|series - kernel mmse| at s = 10",
    ))
}

fn laplace_sandwich(p: &RdProblem) -> Result<(bool, String)> {
    let (c, c1) = low_distortion_constants(1.0, 1.0)?;
    let d_inf = p.d_infinity();
    let r_inf = rate_at_d_infinity(p);
    let edge = low_distortion_lower_edge(c, c1, d_inf);
    // Closer to D_∞ the grid's mass at x = 0 lowers the computed R_∞ by
    // about ln 2·p(0) and the curve leaves the continuum bounds.
    let start = 1e-2;
    let mut outside = 0;
    let n = 20;
    for i in 0..n {
        let d = d_inf + start + (edge - d_inf - start) * i as f64 / (n - 1) as f64;
        let r = legendre_rate(p, d)?.rate;
        let (lo, hi) = (
            low_distortion_lower(c, c1, d_inf, r_inf, d)?,
            low_distortion_upper(c, c1, d_inf, r_inf, d)?,
        );
        if !(lo - 1e-6 <= r && r <= hi + 1e-6) {
            outside += 1;
        }
    }
    Ok((
        outside == 0,
        format!(
            "{outside} of {n} points in D - D_inf ∈ [{start}, {:.4}] outside the low-distortion bounds",
            edge - d_inf
        ),
    ))
}

fn lr_law() -> Result<(bool, String)> {
    let (mut worst_d, mut worst_r): (f64, f64) = (0.0, 0.0);
    for r in [1.0, 2.0] {
        let p = presets::lr_problem(r, 0.1)?;
        let k = lr_constant(r, 1.0)?;
        for s in [100.0, 200.0] {
            let d = evaluate(&p, sp(s)).distortion;
            worst_d = worst_d.max((d - 1.0 / (r * s)).abs() / d);
            worst_r = worst_r.max((legendre_rate(&p, d)?.rate - (k - d.ln() / r)).abs());
        }
    }
    Ok((
        worst_d <= 0.02 && worst_r <= 1e-2,
        format!("relative |D_s - 1/(rs)| {worst_d:.3e} (tol 2e-2), rate gap {worst_r:.3e} (tol 1e-2)"),
    ))
}

fn capacity_checks(opts: &VerifyOptions) -> Result<(bool, String)> {
    let channels = [
        ChannelProblem::new(Pmf::uniform(2)?, vec![vec![0.9, 0.1], vec![0.1, 0.9]])?,
        ChannelProblem::new(Pmf::uniform(2)?, vec![vec![1.0, 0.0], vec![0.3, 0.7]])?,
        ChannelProblem::new(
            Pmf::new(vec![0.2, 0.5, 0.3])?,
            vec![vec![0.6, 0.3, 0.1], vec![0.2, 0.5, 0.3], vec![0.1, 0.1, 0.8]],
        )?,
    ];
    let (mut worst, mut stationarity): (f64, f64) = (0.0, 0.0);
    for cp in &channels {
        worst = worst.max((capacity_by_integral(cp, &opts.quad)? - cp.mutual_information()).abs());
        let h = 1e-4;
        let slope = (capacity_legendre(cp, sp(1.0 + h))? - capacity_legendre(cp, sp(1.0 - h))?) / (2.0 * h);
        stationarity = stationarity.max(slope.abs());
    }
    Ok((
        worst <= 1e-6 && stationarity <= 1e-6,
        format!("max |C_p - I| {worst:.3e} (tol 1e-6), max |F'(1)| {stationarity:.3e} (tol 1e-6)"),
    ))
}

fn small_problems() -> Result<Vec<RdProblem>> {
    let d = |rows: Vec<Vec<f64>>| DistortionMatrix::from_rows(rows);
    Ok(vec![
        RdProblem::from_pmfs(
            Pmf::new(vec![0.3, 0.7])?,
            Pmf::new(vec![0.6, 0.4])?,
            d(vec![vec![0.1, 0.9], vec![0.7, 0.2]])?,
        )?,
        RdProblem::from_pmfs(
            Pmf::new(vec![0.5, 0.5])?,
            Pmf::new(vec![0.7, 0.3])?,
            d(vec![vec![0.0, 1.0], vec![1.0, 0.0]])?,
        )?,
        RdProblem::from_pmfs(
            Pmf::new(vec![0.4, 0.6])?,
            Pmf::new(vec![0.2, 0.5, 0.3])?,
            d(vec![vec![0.0, 0.5, 1.0], vec![0.8, 0.3, 0.1]])?,
        )?,
    ])
}

fn midpoint(p: &RdProblem) -> Result<f64> {
    Ok(0.5 * (min_coupled_distortion(p)?.max(p.d_infinity()) + p.d_zero()))
}

fn oracle_mot() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for p in small_problems()? {
        let d = midpoint(&p)?;
        worst = worst.max((mot_rate_function(&p, d, 0.002)?.value_nats - legendre_rate(&p, d)?.rate).abs());
    }
    Ok(verdict(worst, 2e-3, "max |mot - Legendre|"))
}

/// The marginal-constrained minimum can only sit above the unconstrained one.
fn oracle_ordering() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for p in small_problems()? {
        let d = midpoint(&p)?;
        let brute = bruteforce_rq(&p, d, 0.005)?.value_nats;
        worst = worst.max(legendre_rate(&p, d)?.rate - brute);
    }
    Ok(verdict(worst.max(0.0), 2e-3, "max shortfall of brute below Legendre"))
}

fn blahut() -> Result<(bool, String)> {
    let bss = presets::bss()?;
    let (mut worst, mut round_trip): (f64, f64) = (0.0, 0.0);
    for s in [0.5, 1.0, 2.0] {
        let ba = blahut_arimoto(bss.p(), bss.distortion(), s, 10_000, 1e-13)?;
        let e = (-s).exp();
        worst = worst
            .max((ba.distortion - e / (1.0 + e)).abs())
            .max((ba.rate - bss_rate(ba.distortion)).abs());
        round_trip =
            round_trip.max((legendre_rate(&bss.with_reproduction(ba.q.clone())?, ba.distortion)?.rate - ba.rate).abs());
    }
    let search = q_search_infimum(bss.p(), bss.distortion(), 0.25, 0.01)?;
    let q_gap = (search.value_nats - bss_rate(0.25)).abs();
    Ok((
        worst <= 1e-6 && round_trip <= 1e-5 && q_gap <= 1e-3,
        format!("closed form {worst:.3e} (tol 1e-6), round trip {round_trip:.3e} (tol 1e-5), q search {q_gap:.3e} (tol 1e-3)"),
    ))
}
