//! Alphabets, probability mass functions and distortion matrices.
//!
//! Continuous sources and reproduction densities are represented by uniform
//! grids carrying pointwise density values renormalized to unit mass. Every
//! type here is validated at construction and immutable afterwards.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the total mass of a [`Pmf`].
pub const PMF_SUM_TOL: f64 = 1e-12;

/// Ordered, strictly increasing set of alphabet points.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    spacing: Option<f64>,
}

impl Grid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("grid must have at least one point".into()));
        }
        if let Some(bad) = points.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite grid value {bad}")));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("grid points must be strictly increasing".into()));
        }
        Ok(Self { points, spacing: None })
    }

    /// `n` points `0, 1, ..., n-1`, used as numeric codes of a discrete alphabet.
    pub fn labels(n: usize) -> Result<Self> {
        let mut g = Self::new((0..n).map(|i| i as f64).collect())?;
        g.spacing = Some(1.0);
        Ok(g)
    }

    /// `n` points centred on `center` with step `step`; the offsets `(i - mid) * step`
    /// are exact negatives of each other so symmetric densities stay symmetric.
    pub fn centered(center: f64, step: f64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGrid("grid must have at least one point".into()));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidGrid(format!("invalid step {step}")));
        }
        let mid = (n - 1) as f64 / 2.0;
        let points = (0..n).map(|i| center + (i as f64 - mid) * step).collect();
        let mut g = Self::new(points)?;
        g.spacing = Some(step);
        Ok(g)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Uniform step, when the grid discretizes a continuum.
    pub fn spacing(&self) -> Option<f64> {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Probability weights aligned with a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    weights: Vec<f64>,
}

impl Pmf {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidPmf("empty weight vector".into()));
        }
        if let Some(bad) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidPmf(format!(
                "weight {bad} is not a finite nonnegative number"
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > PMF_SUM_TOL {
            return Err(Error::InvalidPmf(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { weights })
    }

    /// Rescales nonnegative weights to unit mass.
    pub fn normalized(raw: Vec<f64>) -> Result<Self> {
        if let Some(bad) = raw.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::InvalidPmf(format!(
                "weight {bad} is not a finite nonnegative number"
            )));
        }
        let total: f64 = raw.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidPmf("weights have zero total mass".into()));
        }
        Self::new(raw.into_iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::normalized(vec![1.0; n])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Row-major nonnegative matrix `d(x_i, y_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DistortionMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::DimensionMismatch("distortion matrix must be nonempty".into()));
        }
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch("ragged distortion matrix".into()));
        }
        let data: Vec<f64> = rows.into_iter().flatten().collect();
        Self::from_vec(n_rows, n_cols, data)
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "distortion entry {bad} is not a finite nonnegative number"
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// How `d(x, y)` is obtained from the two grids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DistortionSpec {
    Hamming,
    SquaredError,
    PowerLaw { r: f64 },
    CustomMatrix { matrix: Vec<Vec<f64>> },
}

pub fn build_distortion_matrix(spec: &DistortionSpec, x_grid: &Grid, y_grid: &Grid) -> Result<DistortionMatrix> {
    let xs = x_grid.points();
    let ys = y_grid.points();
    let pointwise = |f: &dyn Fn(f64, f64) -> f64| {
        let data = xs
            .iter()
            .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        DistortionMatrix::from_vec(xs.len(), ys.len(), data)
    };
    match spec {
        DistortionSpec::Hamming => pointwise(&|x, y| if x == y { 0.0 } else { 1.0 }),
        DistortionSpec::SquaredError => pointwise(&|x, y| (x - y) * (x - y)),
        DistortionSpec::PowerLaw { r } => {
            if !(*r > 0.0 && r.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "power-law exponent r = {r} must be > 0"
                )));
            }
            let r = *r;
            pointwise(&|x, y| (x - y).abs().powf(r))
        }
        DistortionSpec::CustomMatrix { matrix } => {
            let m = DistortionMatrix::from_rows(matrix.clone())?;
            if m.rows() != xs.len() || m.cols() != ys.len() {
                return Err(Error::DimensionMismatch(format!(
                    "custom matrix is {}x{}, grids are {}x{}",
                    m.rows(),
                    m.cols(),
                    xs.len(),
                    ys.len()
                )));
            }
            Ok(m)
        }
    }
}

/// One-dimensional densities that can be discretized onto a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Density {
    Gaussian {
        mean: f64,
        variance: f64,
    },
    /// `(theta / 2) exp(-theta |x|)`.
    Laplacian {
        theta: f64,
    },
    /// Uniform on `[-half_width, half_width]`.
    Uniform {
        half_width: f64,
    },
}

impl Density {
    pub fn std_dev(&self) -> f64 {
        match *self {
            Density::Gaussian { variance, .. } => variance.sqrt(),
            Density::Laplacian { theta } => std::f64::consts::SQRT_2 / theta,
            Density::Uniform { half_width } => half_width / 3f64.sqrt(),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Density::Gaussian { mean, variance } => mean.is_finite() && variance > 0.0 && variance.is_finite(),
            Density::Laplacian { theta } => theta > 0.0 && theta.is_finite(),
            Density::Uniform { half_width } => half_width > 0.0 && half_width.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid density parameters {self:?}")))
        }
    }

    /// Unnormalized density value.
    fn shape(&self, x: f64) -> f64 {
        match *self {
            Density::Gaussian { mean, variance } => (-(x - mean) * (x - mean) / (2.0 * variance)).exp(),
            Density::Laplacian { theta } => (-theta * x.abs()).exp(),
            Density::Uniform { .. } => 1.0,
        }
    }
}

/// Default number of grid points for continuous densities.
pub const DEFAULT_GRID_POINTS: usize = 1001;
/// Default half-width of a density grid, in standard deviations.
pub const DEFAULT_SPAN_SIGMAS: f64 = 8.0;

/// Uniform grid over `mean ± span_sigmas·std` (or `[-A, A]` for the uniform density)
/// with weights proportional to the density at the grid points.
pub fn discretize_density(density: &Density, n_points: usize, span_sigmas: f64) -> Result<(Grid, Pmf)> {
    density.validate()?;
    if n_points < 3 || n_points % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "n_points = {n_points} must be odd and at least 3"
        )));
    }
    if !(span_sigmas > 0.0 && span_sigmas.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "span_sigmas = {span_sigmas} must be > 0"
        )));
    }
    let (center, half) = match *density {
        Density::Gaussian { mean, .. } => (mean, span_sigmas * density.std_dev()),
        Density::Laplacian { .. } => (0.0, span_sigmas * density.std_dev()),
        Density::Uniform { half_width } => (0.0, half_width),
    };
    let step = 2.0 * half / (n_points - 1) as f64;
    let grid = Grid::centered(center, step, n_points)?;
    let pmf = Pmf::normalized(grid.points().iter().map(|&x| density.shape(x)).collect())?;
    Ok((grid, pmf))
}

/// The triple `(p, q, d)` defining the fixed-reproduction rate-distortion function.
#[derive(Debug, Clone, PartialEq)]
pub struct RdProblem {
    x_grid: Grid,
    p: Pmf,
    y_grid: Grid,
    q: Pmf,
    d: DistortionMatrix,
    // min_y d(x, y) over the support of q
    row_min: Vec<f64>,
}

impl RdProblem {
    pub fn new(x_grid: Grid, p: Pmf, y_grid: Grid, q: Pmf, d: DistortionMatrix) -> Result<Self> {
        if p.len() != x_grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "source pmf has {} weights for {} grid points",
                p.len(),
                x_grid.len()
            )));
        }
        if q.len() != y_grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "reproduction pmf has {} weights for {} grid points",
                q.len(),
                y_grid.len()
            )));
        }
        if d.rows() != x_grid.len() || d.cols() != y_grid.len() {
            return Err(Error::DimensionMismatch(format!(
                "distortion matrix is {}x{}, grids are {}x{}",
                d.rows(),
                d.cols(),
                x_grid.len(),
                y_grid.len()
            )));
        }
        let qw = q.weights();
        let row_min = (0..d.rows())
            .map(|i| {
                d.row(i)
                    .iter()
                    .zip(qw)
                    .filter(|(_, &qy)| qy > 0.0)
                    .map(|(&v, _)| v)
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        Ok(Self {
            x_grid,
            p,
            y_grid,
            q,
            d,
            row_min,
        })
    }

    /// Builds the matrix from a [`DistortionSpec`].
    pub fn with_spec(x_grid: Grid, p: Pmf, y_grid: Grid, q: Pmf, spec: &DistortionSpec) -> Result<Self> {
        let d = build_distortion_matrix(spec, &x_grid, &y_grid)?;
        Self::new(x_grid, p, y_grid, q, d)
    }

    /// Discrete alphabets labelled `0..n`.
    pub fn from_pmfs(p: Pmf, q: Pmf, d: DistortionMatrix) -> Result<Self> {
        let xg = Grid::labels(p.len())?;
        let yg = Grid::labels(q.len())?;
        Self::new(xg, p, yg, q, d)
    }

    /// Same source and distortion with a different reproduction pmf.
    pub fn with_reproduction(&self, q: Pmf) -> Result<Self> {
        Self::new(
            self.x_grid.clone(),
            self.p.clone(),
            self.y_grid.clone(),
            q,
            self.d.clone(),
        )
    }

    pub fn x_grid(&self) -> &Grid {
        &self.x_grid
    }

    pub fn y_grid(&self) -> &Grid {
        &self.y_grid
    }

    pub fn p(&self) -> &Pmf {
        &self.p
    }

    pub fn q(&self) -> &Pmf {
        &self.q
    }

    pub fn distortion(&self) -> &DistortionMatrix {
        &self.d
    }

    /// `min_y d(x_i, y)` over reproduction symbols with positive mass.
    pub fn row_min(&self) -> &[f64] {
        &self.row_min
    }

    pub fn d_zero(&self) -> f64 {
        d_zero(self)
    }

    pub fn d_infinity(&self) -> f64 {
        d_infinity(self)
    }
}

/// `Σ_{x,y} p(x) q(y) d(x,y)`: the distortion of the independent coupling.
pub fn d_zero(problem: &RdProblem) -> f64 {
    let q = problem.q.weights();
    problem
        .p
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, &px)| px > 0.0)
        .map(|(i, &px)| px * problem.d.row(i).iter().zip(q).map(|(d, qy)| d * qy).sum::<f64>())
        .sum()
}

/// `Σ_x p(x) min_y d(x,y)`, the minimum over symbols that `q` can actually produce.
pub fn d_infinity(problem: &RdProblem) -> f64 {
    problem
        .p
        .weights()
        .iter()
        .zip(&problem.row_min)
        .filter(|(&px, _)| px > 0.0)
        .map(|(px, m)| px * m)
        .sum()
}
