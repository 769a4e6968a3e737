//! Mutual information of a fixed channel input as an MMSE integral.
//!
//! With distortion `-ln w(y|x)` and the posterior family
//! `v_s(x|y) = p(x) w(y|x)^s / Z_y(s)`, the objective
//! `F(s) = -[s H(Y|X) + Σ_y q(y) ln Z_y(s)]` is concave with `F'(1) = 0`,
//! `F(1) = I(X;Y)` and `F'' = -mmse_s`, so
//!
//! ```text
//! I(X;Y) = F(0+) + ∫_0^1 s·mmse_s ds.
//! ```
//!
//! Entries with `w(y|x) = 0` carry no posterior mass for any `s`. `F(0+)`
//! vanishes unless some output column has zeros, as in the Z-channel.

use crate::error::{Error, Result};
use crate::gibbs::SParam;
use crate::info::{conditional_entropy, mutual_information};
use crate::prob::{Grid, Pmf, PMF_SUM_TOL};
use crate::quadrature::{integrate, QuadratureConfig};

/// An input pmf and a row-stochastic channel `w(y|x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelProblem {
    x_grid: Grid,
    p: Pmf,
    w: Vec<Vec<f64>>,
}

impl ChannelProblem {
    pub fn new(p: Pmf, w: Vec<Vec<f64>>) -> Result<Self> {
        let x_grid = Grid::labels(p.len())?;
        Self::with_grid(x_grid, p, w)
    }

    pub fn with_grid(x_grid: Grid, p: Pmf, w: Vec<Vec<f64>>) -> Result<Self> {
        if x_grid.len() != p.len() || w.len() != p.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} inputs, {} input weights, {} channel rows",
                x_grid.len(),
                p.len(),
                w.len()
            )));
        }
        let cols = w[0].len();
        if cols == 0 {
            return Err(Error::DimensionMismatch("channel has no outputs".into()));
        }
        for (i, row) in w.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "channel row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                return Err(Error::InvalidPmf(format!(
                    "channel row {i} has a negative or non-finite entry"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > PMF_SUM_TOL {
                return Err(Error::InvalidPmf(format!("channel row {i} sums to {sum}")));
            }
        }
        Ok(Self { x_grid, p, w })
    }

    pub fn x_grid(&self) -> &Grid {
        &self.x_grid
    }

    pub fn p(&self) -> &Pmf {
        &self.p
    }

    pub fn channel(&self) -> &[Vec<f64>] {
        &self.w
    }

    pub fn outputs(&self) -> usize {
        self.w[0].len()
    }

    /// `H(Y|X)`, the distortion level pinned by the channel.
    pub fn conditional_entropy(&self) -> f64 {
        conditional_entropy(self.p.weights(), &self.w)
    }

    pub fn mutual_information(&self) -> f64 {
        mutual_information(self.p.weights(), &self.w)
    }
}

/// `q(y) = Σ_x p(x) w(y|x)`.
pub fn output_marginal(cp: &ChannelProblem) -> Result<Pmf> {
    Pmf::normalized(crate::info::output_distribution(cp.p.weights(), &cp.w))
}

/// Log-weights `ln p(x) + s ln w(y|x)` of column `y`, `None` off the support.
fn column_log_weights(cp: &ChannelProblem, y: usize, s: f64) -> Vec<Option<f64>> {
    cp.p.weights()
        .iter()
        .zip(&cp.w)
        .map(|(&px, row)| {
            let wy = row[y];
            if px > 0.0 && wy > 0.0 {
                Some(px.ln() + s * wy.ln())
            } else {
                None
            }
        })
        .collect()
}

/// `ln Z_y(s)` and the normalized posterior `v_s(·|y)`; `None` for columns with no mass.
fn column(cp: &ChannelProblem, y: usize, s: f64) -> Option<(f64, Vec<f64>)> {
    let logs = column_log_weights(cp, y, s);
    let top = logs.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return None;
    }
    let raw: Vec<f64> = logs.iter().map(|l| l.map_or(0.0, |v| (v - top).exp())).collect();
    let z: f64 = raw.iter().sum();
    Some((top + z.ln(), raw.into_iter().map(|v| v / z).collect()))
}

/// `v_s(x|y)` indexed `[y][x]`; columns with `q(y) = 0` are all zero.
pub fn capacity_posterior(cp: &ChannelProblem, s: SParam) -> Result<Vec<Vec<f64>>> {
    let q = output_marginal(cp)?;
    (0..cp.outputs())
        .map(|y| {
            if q.weights()[y] <= 0.0 {
                return Ok(vec![0.0; cp.p.len()]);
            }
            column(cp, y, s.value())
                .map(|(_, v)| v)
                .ok_or_else(|| Error::Internal(format!("Z_y(s) = 0 for output {y} with q(y) > 0")))
        })
        .collect()
}

/// `Σ_y q(y) Var_{v_s(·|y)}[-ln w(y|X)]`.
pub fn capacity_mmse(cp: &ChannelProblem, s: SParam) -> Result<f64> {
    let q = output_marginal(cp)?;
    let post = capacity_posterior(cp, s)?;
    let mut total = 0.0;
    for (y, (&qy, v)) in q.weights().iter().zip(&post).enumerate() {
        if qy <= 0.0 {
            continue;
        }
        let support = || v.iter().zip(&cp.w).filter(|(&vx, row)| vx > 0.0 && row[y] > 0.0);
        let mean: f64 = support().map(|(&vx, row)| vx * -row[y].ln()).sum();
        let var: f64 = support()
            .map(|(&vx, row)| {
                let dev = -row[y].ln() - mean;
                vx * dev * dev
            })
            .sum();
        total += qy * var;
    }
    Ok(total)
}

/// `-[s H(Y|X) + Σ_y q(y) ln Z_y(s)]`, maximized at `s = 1`. At `s = 0` this is
/// the right limit, which is nonzero when some column of `w` has zeros.
pub fn capacity_legendre(cp: &ChannelProblem, s: SParam) -> Result<f64> {
    let q = output_marginal(cp)?;
    let mut sum = 0.0;
    for (y, &qy) in q.weights().iter().enumerate() {
        if qy <= 0.0 {
            continue;
        }
        let (lz, _) = column(cp, y, s.value())
            .ok_or_else(|| Error::Internal(format!("Z_y(s) = 0 for output {y} with q(y) > 0")))?;
        sum += qy * lz;
    }
    Ok(-(s.value() * cp.conditional_entropy() + sum))
}

/// `F(0+) = -Σ_y q(y) ln p(supp w(y|·))`.
pub fn capacity_boundary_term(cp: &ChannelProblem) -> Result<f64> {
    Ok(capacity_legendre(cp, SParam::ZERO)?.max(0.0))
}

/// The pieces of `C_p = F(0+) + ∫_0^1 s·mmse_s ds`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityIntegral {
    pub boundary: f64,
    pub integral: f64,
    pub error: f64,
}

impl CapacityIntegral {
    pub fn value(&self) -> f64 {
        self.boundary + self.integral
    }
}

pub fn capacity_integral_parts(cp: &ChannelProblem, quad: &QuadratureConfig) -> Result<CapacityIntegral> {
    let boundary = capacity_boundary_term(cp)?;
    let f = |s: f64| capacity_mmse(cp, SParam(s)).map_or(f64::NAN, |m| s * m);
    let r = integrate(f, 0.0, 1.0, quad)?;
    Ok(CapacityIntegral {
        boundary,
        integral: r.value,
        error: r.error,
    })
}

/// `C_p` by the MMSE integral; equals `I(X;Y)`.
pub fn capacity_by_integral(cp: &ChannelProblem, quad: &QuadratureConfig) -> Result<f64> {
    Ok(capacity_integral_parts(cp, quad)?.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn bsc(d: f64) -> ChannelProblem {
        ChannelProblem::new(Pmf::uniform(2).unwrap(), vec![vec![1.0 - d, d], vec![d, 1.0 - d]]).unwrap()
    }

    fn z_channel() -> ChannelProblem {
        ChannelProblem::new(Pmf::uniform(2).unwrap(), vec![vec![1.0, 0.0], vec![0.3, 0.7]]).unwrap()
    }

    fn identity() -> ChannelProblem {
        ChannelProblem::new(Pmf::uniform(2).unwrap(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    fn s(v: f64) -> SParam {
        SParam::new(v).unwrap()
    }

    #[test]
    fn marginals() {
        assert_eq!(output_marginal(&bsc(0.1)).unwrap().weights(), &[0.5, 0.5]);
        assert_eq!(output_marginal(&identity()).unwrap().weights(), &[0.5, 0.5]);
        let z = output_marginal(&z_channel()).unwrap();
        assert!((z.weights()[0] - 0.65).abs() < 1e-15 && (z.weights()[1] - 0.35).abs() < 1e-15);
    }

    #[test]
    fn posterior_examples() {
        let cp = bsc(0.1);
        for col in capacity_posterior(&cp, SParam::ZERO).unwrap() {
            assert_eq!(col, vec![0.5, 0.5]);
        }
        let v1 = capacity_posterior(&cp, s(1.0)).unwrap();
        assert!((v1[0][0] - 0.9).abs() < 1e-15);
        let half = capacity_posterior(&cp, s(0.5)).unwrap();
        let expected = 0.9f64.sqrt() / (0.9f64.sqrt() + 0.1f64.sqrt());
        assert!((half[0][0] - expected).abs() < 1e-15);
        assert!((half[0][0] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn posterior_skips_zero_entries() {
        let v = capacity_posterior(&z_channel(), s(0.5)).unwrap();
        assert_eq!(v[1][0], 0.0);
        assert!((v[1][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mmse_examples() {
        let m = capacity_mmse(&bsc(0.1), s(1.0)).unwrap();
        let gap = (0.9f64 / 0.1).ln();
        assert!((m - 0.09 * gap * gap).abs() < 1e-14);
        assert!((m - 0.43450).abs() < 1e-5);
        for v in [0.0, 0.3, 1.0] {
            assert_eq!(capacity_mmse(&identity(), s(v)).unwrap(), 0.0);
        }
        let m0 = capacity_mmse(&bsc(0.1), SParam::ZERO).unwrap();
        assert!((m0 - 0.25 * gap * gap).abs() < 1e-14);
    }

    #[test]
    fn legendre_identities() {
        for cp in [bsc(0.1), bsc(0.25), z_channel(), identity()] {
            let at1 = capacity_legendre(&cp, s(1.0)).unwrap();
            assert!((at1 - cp.mutual_information()).abs() < 1e-14);
        }
        assert!(capacity_legendre(&bsc(0.1), SParam::ZERO).unwrap().abs() < 1e-15);
        let cp = bsc(0.25);
        assert!(capacity_legendre(&cp, s(0.5)).unwrap() < capacity_legendre(&cp, s(1.0)).unwrap());
    }

    #[test]
    fn integral_examples() {
        let q = QuadratureConfig::default();
        let c = capacity_by_integral(&bsc(0.1), &q).unwrap();
        assert!((c - 0.368_064_2).abs() < 1e-7);
        assert!((c - bsc(0.1).mutual_information()).abs() < 1e-9);
        let id = capacity_integral_parts(&identity(), &q).unwrap();
        assert_eq!(id.integral, 0.0);
        assert!((id.value() - LN_2).abs() < 1e-15);
        let z = z_channel();
        assert!((capacity_by_integral(&z, &q).unwrap() - z.mutual_information()).abs() < 1e-9);
        assert!(capacity_boundary_term(&z).unwrap() > 0.0);
    }

    #[test]
    fn malformed_channels() {
        let p = Pmf::uniform(2).unwrap();
        assert!(ChannelProblem::new(p.clone(), vec![vec![0.5, 0.6], vec![0.5, 0.5]]).is_err());
        assert!(ChannelProblem::new(p.clone(), vec![vec![1.0]]).is_err());
        assert!(ChannelProblem::new(p.clone(), vec![vec![1.0, 0.0], vec![1.0]]).is_err());
        assert!(ChannelProblem::new(p, vec![vec![1.5, -0.5], vec![0.5, 0.5]]).is_err());
    }
}
