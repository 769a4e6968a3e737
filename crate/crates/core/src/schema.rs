//! JSON input files.
//!
//! A problem file names a source, a reproduction and a distortion:
//!
//! ```json
//! {
//!   "source": {"pmf": [0.5, 0.5]},
//!   "reproduction": {"density": {"kind": "gaussian", "mean": 0, "variance": 0.75}, "points": 1001},
//!   "distortion": {"kind": "squared-error"}
//! }
//! ```
//!
//! A channel file holds an input law and a row-stochastic matrix,
//! `{"input_pmf": [...], "channel": [[...], ...]}`.

use serde::Deserialize;

use crate::capacity::ChannelProblem;
use crate::error::{Error, Result};
use crate::prob::{
    discretize_density, Density, DistortionSpec, Grid, Pmf, RdProblem, DEFAULT_GRID_POINTS, DEFAULT_SPAN_SIGMAS,
};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum AlphabetSpec {
    /// Explicit weights; without `grid` the symbols are labelled `0..n`.
    Pmf {
        pmf: Vec<f64>,
        #[serde(default)]
        grid: Option<Vec<f64>>,
    },
    Density {
        density: Density,
        #[serde(default)]
        points: Option<usize>,
        /// Half-width in standard deviations.
        #[serde(default)]
        span: Option<f64>,
    },
}

impl AlphabetSpec {
    pub fn build(&self) -> Result<(Grid, Pmf)> {
        match self {
            AlphabetSpec::Pmf { pmf, grid } => {
                let pmf = Pmf::new(pmf.clone())?;
                let grid = match grid {
                    Some(points) => Grid::new(points.clone())?,
                    None => Grid::labels(pmf.len())?,
                };
                if grid.len() != pmf.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "grid has {} points, pmf has {}",
                        grid.len(),
                        pmf.len()
                    )));
                }
                Ok((grid, pmf))
            }
            AlphabetSpec::Density { density, points, span } => discretize_density(
                density,
                points.unwrap_or(DEFAULT_GRID_POINTS),
                span.unwrap_or(DEFAULT_SPAN_SIGMAS),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub source: AlphabetSpec,
    pub reproduction: AlphabetSpec,
    pub distortion: DistortionSpec,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<RdProblem> {
        let (xg, p) = self.source.build()?;
        let (yg, q) = self.reproduction.build()?;
        RdProblem::with_spec(xg, p, yg, q, &self.distortion)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub input_pmf: Vec<f64>,
    pub channel: Vec<Vec<f64>>,
}

impl ChannelFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<ChannelProblem> {
        ChannelProblem::new(Pmf::new(self.input_pmf.clone())?, self.channel.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_problem() {
        let f = ProblemFile::from_json(
            r#"{"source": {"pmf": [0.5, 0.5]}, "reproduction": {"pmf": [0.5, 0.5]}, "distortion": {"kind": "hamming"}}"#,
        )
        .unwrap();
        let p = f.build().unwrap();
        assert_eq!(p.distortion().to_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!((p.d_zero() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn density_problem_with_defaults() {
        let f = ProblemFile::from_json(
            r#"{
                "source": {"density": {"kind": "laplacian", "theta": 1.0}, "points": 401, "span": 12},
                "reproduction": {"pmf": [0.5, 0.5], "grid": [-1, 1]},
                "distortion": {"kind": "power-law", "r": 2}
            }"#,
        )
        .unwrap();
        let p = f.build().unwrap();
        assert_eq!((p.p().len(), p.q().len()), (401, 2));
        let g = ProblemFile::from_json(
            r#"{"source": {"density": {"kind": "gaussian", "mean": 0, "variance": 1}},
                "reproduction": {"pmf": [1.0], "grid": [0]}, "distortion": {"kind": "squared-error"}}"#,
        )
        .unwrap();
        assert_eq!(g.build().unwrap().p().len(), DEFAULT_GRID_POINTS);
    }

    #[test]
    fn custom_matrix_and_errors() {
        let f = ProblemFile::from_json(
            r#"{"source": {"pmf": [1.0]}, "reproduction": {"pmf": [0.25, 0.75]},
                "distortion": {"kind": "custom-matrix", "matrix": [[0.0, 2.0]]}}"#,
        )
        .unwrap();
        assert!((f.build().unwrap().d_zero() - 1.5).abs() < 1e-15);

        assert!(matches!(ProblemFile::from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            ProblemFile::from_json(r#"{"source": {"pmf": [1]}}"#),
            Err(Error::Parse(_))
        ));
        let mismatch = ProblemFile::from_json(
            r#"{"source": {"pmf": [0.5, 0.5], "grid": [0, 1, 2]}, "reproduction": {"pmf": [1]}, "distortion": {"kind": "hamming"}}"#,
        )
        .unwrap();
        assert!(matches!(mismatch.build(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn channel_file() {
        let c = ChannelFile::from_json(r#"{"input_pmf": [0.5, 0.5], "channel": [[0.9, 0.1], [0.1, 0.9]]}"#).unwrap();
        let cp = c.build().unwrap();
        assert!((cp.mutual_information() - 0.368_064_2).abs() < 1e-7);
        let bad = ChannelFile::from_json(r#"{"input_pmf": [0.5, 0.5], "channel": [[0.9, 0.2], [0.1, 0.9]]}"#).unwrap();
        assert!(bad.build().is_err());
    }
}
