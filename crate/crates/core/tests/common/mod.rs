#![allow(dead_code)]

use proptest::prelude::*;
use rdmmse::{DistortionMatrix, Pmf, RdProblem};

pub fn pmf(n: usize) -> impl Strategy<Value = Pmf> {
    prop::collection::vec(0.05f64..1.0, n).prop_map(|w| Pmf::normalized(w).unwrap())
}

pub fn matrix(k: usize, m: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(0.0f64..1.0, m), k)
}

pub fn problem_of(k: usize, m: usize) -> impl Strategy<Value = RdProblem> {
    (pmf(k), pmf(m), matrix(k, m))
        .prop_map(|(p, q, d)| RdProblem::from_pmfs(p, q, DistortionMatrix::from_rows(d).unwrap()).unwrap())
}

/// Random problem with `|X|, |Y|` in `2..=max`.
pub fn problem(max: usize) -> impl Strategy<Value = RdProblem> {
    (2..=max, 2..=max).prop_flat_map(|(k, m)| problem_of(k, m))
}

/// Row-stochastic matrix with strictly positive entries.
pub fn channel(k: usize, m: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(pmf(m).prop_map(|p| p.weights().to_vec()), k)
}
