//! The worked examples as ready-made problems.

use std::fmt;
use std::str::FromStr;

use crate::bounds::MomentSummary;
use crate::error::{Error, Result};
use crate::prob::{discretize_density, Density, DistortionMatrix, DistortionSpec, Grid, Pmf, RdProblem};

/// Binary source, Hamming distortion, `q = (1/2, 1/2)`.
pub fn bss() -> Result<RdProblem> {
    let d = DistortionMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]])?;
    RdProblem::from_pmfs(Pmf::uniform(2)?, Pmf::uniform(2)?, d)
}

/// Standard Gaussian source against a Gaussian reproduction `N(0, 1 - D)`,
/// squared error, both on `n`-point grids spanning 8 standard deviations.
pub fn gaussian_reproduction(d: f64, n: usize) -> Result<RdProblem> {
    if !(d > 0.0 && d < 1.0) {
        return Err(Error::InvalidParameter(format!("target D = {d} must lie in (0, 1)")));
    }
    let (xg, p) = discretize_density(
        &Density::Gaussian {
            mean: 0.0,
            variance: 1.0,
        },
        n,
        8.0,
    )?;
    let (yg, q) = discretize_density(
        &Density::Gaussian {
            mean: 0.0,
            variance: 1.0 - d,
        },
        n,
        8.0,
    )?;
    RdProblem::with_spec(xg, p, yg, q, &DistortionSpec::SquaredError)
}

/// A symmetric source against the reproduction alphabet `{-a, +a}`, `q = (1/2, 1/2)`, squared error.
pub fn binary_reproduction(density: &Density, n: usize, span: f64, a: f64) -> Result<RdProblem> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!("a = {a} must be > 0")));
    }
    let (xg, p) = discretize_density(density, n, span)?;
    RdProblem::with_spec(
        xg,
        p,
        Grid::new(vec![-a, a])?,
        Pmf::uniform(2)?,
        &DistortionSpec::SquaredError,
    )
}

/// Gaussian source of standard deviation `sigma` (1001 points, 8 sigma) against
/// a uniform reproduction on `[-1, 1]` (2001 points) under `|x - y|^r`.
pub fn lr_problem(r: f64, sigma: f64) -> Result<RdProblem> {
    let (xg, p) = discretize_density(
        &Density::Gaussian {
            mean: 0.0,
            variance: sigma * sigma,
        },
        1001,
        8.0,
    )?;
    let (yg, q) = discretize_density(&Density::Uniform { half_width: 1.0 }, 2001, 1.0)?;
    RdProblem::with_spec(xg, p, yg, q, &DistortionSpec::PowerLaw { r })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Bss,
    Gauss,
    BinaryRep,
    Lr,
    Fig1,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::Bss, Preset::Gauss, Preset::BinaryRep, Preset::Lr, Preset::Fig1];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Bss => "bss",
            Preset::Gauss => "gauss",
            Preset::BinaryRep => "binary-rep",
            Preset::Lr => "lr",
            Preset::Fig1 => "fig1",
        }
    }

    /// `gauss` targets `D = 1/4`; `lr` uses `r = 2`, `sigma = 0.1`;
    /// `binary-rep` is the Laplacian `θ = 1` on 4001 points over 12 std.
    pub fn problem(self) -> Result<RdProblem> {
        match self {
            Preset::Bss => bss(),
            Preset::Gauss => gaussian_reproduction(0.25, 1001),
            Preset::BinaryRep => binary_reproduction(&Density::Laplacian { theta: 1.0 }, 4001, 12.0, 1.0),
            Preset::Lr => lr_problem(2.0, 0.1),
            Preset::Fig1 => binary_reproduction(
                &Density::Gaussian {
                    mean: 0.0,
                    variance: 1.0,
                },
                1001,
                8.0,
                1.0,
            ),
        }
    }

    /// Analytic moments for the presets with a binary reproduction.
    pub fn moments(self) -> Option<MomentSummary> {
        match self {
            Preset::Fig1 => MomentSummary::gaussian(1.0, 1.0).ok(),
            Preset::BinaryRep => MomentSummary::laplacian(1.0, 1.0).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown preset {s:?}")))
    }
}
