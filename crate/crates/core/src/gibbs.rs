//! The exponential family of test channels `w_s(y|x) ∝ q(y) exp(-s d(x,y))`.
//!
//! All per-row quantities are computed in one pass over the row with the
//! exponent shifted by `m_x = min_y d(x,y)`, so the largest term is `q(y)`
//! and nothing overflows however large `s` gets. Moments are taken of the
//! shifted distortion `d - m_x`; the conditional variance is the two-moment
//! difference clamped at zero.

use crate::error::{Error, Result};
use crate::prob::{Pmf, RdProblem};

/// Below `exp(-EXP_CUTOFF)` a term is exactly zero in f64.
const EXP_CUTOFF: f64 = 746.0;

/// The Lagrange parameter `s >= 0` (negative slope of `R_q(D)`).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct SParam(pub(crate) f64);

impl SParam {
    pub const ZERO: SParam = SParam(0.0);

    pub fn new(s: f64) -> Result<Self> {
        if s >= 0.0 && s.is_finite() {
            Ok(Self(s))
        } else {
            Err(Error::InvalidParameter(format!("s = {s} must be finite and >= 0")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for SParam {
    type Error = Error;

    fn try_from(s: f64) -> Result<Self> {
        Self::new(s)
    }
}

/// Conditional pmfs `w_s(·|x)` and their normalizers `ln Z_x(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GibbsChannel {
    pub s: SParam,
    pub rows: Vec<Vec<f64>>,
    pub log_partition: Vec<f64>,
}

/// Sufficient statistics of one row at a given `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RowStats {
    /// `ln Σ_y q(y) exp(-s (d - m_x))`
    pub shifted_log_z: f64,
    /// `E_s[d(x,Y) - m_x | x]`
    pub excess_mean: f64,
    /// `Var_s[d(x,Y) | x]`, clamped at 0
    pub variance: f64,
}

#[inline]
fn tilt(s: f64, excess: f64) -> f64 {
    if excess == 0.0 {
        1.0
    } else {
        let a = s * excess;
        if a > EXP_CUTOFF {
            0.0
        } else {
            (-a).exp()
        }
    }
}

/// `ln Z_x(s) = -s m_x + ln z_x`; the product is skipped when `m_x = 0`.
fn unshift(s: f64, m: f64, shifted_log_z: f64) -> f64 {
    if m == 0.0 {
        shifted_log_z
    } else {
        -s * m + shifted_log_z
    }
}

pub(crate) fn row_stats(d_row: &[f64], q: &[f64], m: f64, s: f64) -> RowStats {
    let mut z = 0.0;
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for (&d, &qy) in d_row.iter().zip(q) {
        if qy <= 0.0 {
            continue;
        }
        let excess = d - m;
        let e = qy * tilt(s, excess);
        if e == 0.0 {
            continue;
        }
        z += e;
        m1 += e * excess;
        m2 += e * excess * excess;
    }
    let mean = m1 / z;
    let variance = (m2 / z - mean * mean).max(0.0);
    RowStats {
        shifted_log_z: z.ln(),
        excess_mean: mean,
        variance,
    }
}

/// Everything the curve code needs at one value of `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub s: f64,
    /// `D_s`
    pub distortion: f64,
    /// `D_s - D_∞`, accumulated without cancellation.
    pub excess_distortion: f64,
    /// `R_q(D_s) = -s D_s - Σ_x p(x) ln Z_x(s)`
    pub rate: f64,
    pub mmse: f64,
}

/// Evaluates `D_s`, `R_q(D_s)` and `mmse_s(Δ|X)` in one sweep of the matrix.
pub fn evaluate(problem: &RdProblem, s: SParam) -> KernelPoint {
    evaluate_raw(problem, s.value())
}

pub(crate) fn evaluate_raw(problem: &RdProblem, s: f64) -> KernelPoint {
    let d = problem.distortion();
    let q = problem.q().weights();
    let mins = problem.row_min();
    let mut excess = 0.0;
    let mut base = 0.0;
    let mut mmse = 0.0;
    let mut rate = 0.0;
    for (i, &px) in problem.p().weights().iter().enumerate() {
        if px == 0.0 {
            continue;
        }
        let st = row_stats(d.row(i), q, mins[i], s);
        excess += px * st.excess_mean;
        base += px * mins[i];
        mmse += px * st.variance;
        // per-row KL divergence D(w_s(.|x) || q) = -s E[d - m] - ln z
        rate += px * (-s * st.excess_mean - st.shifted_log_z);
    }
    KernelPoint {
        s,
        distortion: base + excess,
        excess_distortion: excess,
        rate: rate.max(0.0),
        mmse,
    }
}

/// `ln Z_x(s)` for every source symbol.
pub fn log_partition(problem: &RdProblem, s: SParam) -> Vec<f64> {
    let s = s.value();
    let d = problem.distortion();
    let q = problem.q().weights();
    problem
        .row_min()
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let st = row_stats(d.row(i), q, m, s);
            unshift(s, m, st.shifted_log_z)
        })
        .collect()
}

/// `w_s(y|x) = exp(ln q(y) - s d(x,y) - ln Z_x(s))`, zero where `q(y) = 0`.
pub fn gibbs_channel(problem: &RdProblem, s: SParam) -> GibbsChannel {
    let sv = s.value();
    let d = problem.distortion();
    let q = problem.q().weights();
    let mut rows = Vec::with_capacity(d.rows());
    let mut log_partition = Vec::with_capacity(d.rows());
    for (i, &m) in problem.row_min().iter().enumerate() {
        let st = row_stats(d.row(i), q, m, sv);
        let row = d
            .row(i)
            .iter()
            .zip(q)
            .map(|(&dxy, &qy)| {
                let excess = dxy - m;
                if qy <= 0.0 {
                    0.0
                } else if excess == 0.0 {
                    (qy.ln() - st.shifted_log_z).exp()
                } else {
                    (qy.ln() - sv * excess - st.shifted_log_z).exp()
                }
            })
            .collect();
        rows.push(row);
        log_partition.push(unshift(sv, m, st.shifted_log_z));
    }
    GibbsChannel { s, rows, log_partition }
}

/// `D_s = Σ_x p(x) E_s[d(x,Y) | X = x]`.
pub fn parametric_distortion(problem: &RdProblem, s: SParam) -> f64 {
    evaluate(problem, s).distortion
}

/// `mmse_s(Δ|X) = Σ_x p(x) Var_s[d(x,Y) | X = x] = -dD_s/ds`.
pub fn mmse(problem: &RdProblem, s: SParam) -> f64 {
    evaluate(problem, s).mmse
}

/// The `Y`-marginal `Σ_x p(x) w_s(y|x)` induced by the Gibbs coupling. It need not equal `q`.
pub fn induced_marginal(problem: &RdProblem, s: SParam) -> Result<Pmf> {
    let ch = gibbs_channel(problem, s);
    let mut out = vec![0.0; problem.q().len()];
    for (row, &px) in ch.rows.iter().zip(problem.p().weights()) {
        for (o, w) in out.iter_mut().zip(row) {
            *o += px * w;
        }
    }
    Pmf::normalized(out)
}
