//! Slow, independent reference values for small alphabets.
//!
//! `bruteforce_rq` minimizes `I(X;Y)` over channels whose output marginal is
//! exactly `q`. `mot_rate_function` minimizes `Σ_x p(x) D(w(·|x) ‖ q)` over
//! all channels, which equals `I(X;Y') + D(q'‖q)`. Both only look at channel
//! rows on a simplex grid and never use the Gibbs form.

use crate::curve::legendre_rate;
use crate::error::{Error, Result};
use crate::gibbs::{gibbs_channel, SParam};
use crate::info::{kl_divergence, mutual_information};
use crate::prob::{DistortionMatrix, Pmf, RdProblem};

pub const MAX_ALPHABET: usize = 3;
pub const MAX_GRID_STEP: f64 = 0.05;
const MAX_CANDIDATES: u64 = 50_000_000;
const FEASIBILITY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Argmin {
    /// Rows `w(·|x)`.
    Channel(Vec<Vec<f64>>),
    Reproduction(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub value_nats: f64,
    pub argmin: Argmin,
    /// Resolution actually used, `1/round(1/step)`.
    pub grid_step: f64,
    pub candidates: u64,
}

fn grid_divisions(step: f64) -> Result<usize> {
    if !(step > 0.0 && step <= MAX_GRID_STEP) {
        return Err(Error::InvalidParameter(format!(
            "grid step {step} must lie in (0, {MAX_GRID_STEP}]"
        )));
    }
    Ok((1.0 / step).round() as usize)
}

fn check_alphabets(problem: &RdProblem) -> Result<()> {
    let (k, m) = (problem.p().len(), problem.q().len());
    if k > MAX_ALPHABET || m > MAX_ALPHABET {
        return Err(Error::AlphabetTooLarge(format!(
            "{k}x{m}, limit {MAX_ALPHABET}x{MAX_ALPHABET}"
        )));
    }
    Ok(())
}

/// All points of `{w ∈ Δ^{dim-1} : n·w ∈ ℕ^dim}`.
fn simplex_grid(dim: usize, n: usize) -> Vec<Vec<f64>> {
    fn fill(prefix: &mut Vec<usize>, left: usize, slots: usize, n: usize, out: &mut Vec<Vec<f64>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.iter().map(|&c| c as f64 / n as f64).collect());
            prefix.pop();
            return;
        }
        for c in 0..=left {
            prefix.push(c);
            fill(prefix, left - c, slots - 1, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim > 0 {
        fill(&mut Vec::with_capacity(dim), n, dim, n, &mut out);
    }
    out
}

fn independent(problem: &RdProblem, grid_step: f64) -> OracleResult {
    OracleResult {
        value_nats: 0.0,
        argmin: Argmin::Channel(vec![problem.q().weights().to_vec(); problem.p().len()]),
        grid_step,
        candidates: 1,
    }
}

fn row_distortion(d: &[f64], w: &[f64]) -> f64 {
    d.iter().zip(w).map(|(a, b)| a * b).sum()
}

/// `min I(X;Y)` over channels with `Σ_x p(x) w(y|x) = q(y)` and `E d <= D`.
///
/// The last source symbol's row is fixed by the marginal. Because the
/// unconstrained minimum (`w = q`, at `D_0`) lies outside the feasible set,
/// the minimum sits on `E d = D`; one coordinate of one row is solved onto
/// that plane and the rest run over the grid.
pub fn bruteforce_rq(problem: &RdProblem, d_target: f64, grid_step: f64) -> Result<OracleResult> {
    check_alphabets(problem)?;
    let n = grid_divisions(grid_step)?;
    let step = 1.0 / n as f64;
    if d_target >= problem.d_zero() {
        return Ok(independent(problem, step));
    }
    let p = problem.p().weights();
    let q = problem.q().weights();
    let dm = problem.distortion();
    let (k, m) = (p.len(), q.len());
    if k < 2 || m < 2 {
        return Err(Error::Infeasible(format!(
            "D = {d_target} is below D_0 and the channel is pinned to q"
        )));
    }

    // The row fixed by the marginal is the most probable source symbol.
    let last = (0..k).max_by(|&a, &b| p[a].total_cmp(&p[b])).expect("k >= 2");
    let free: Vec<usize> = (0..k).filter(|&x| x != last).collect();
    let (gridded, projected) = free.split_at(free.len() - 1);
    let projected = projected[0];

    let full = simplex_grid(m, n);
    let partial = simplex_grid(m - 1, n);
    let count = (full.len() as u64)
        .saturating_pow(gridded.len() as u32)
        .saturating_mul(partial.len() as u64);
    if count > MAX_CANDIDATES {
        return Err(Error::AlphabetTooLarge(format!("{count} candidates at step {step}")));
    }

    // Per-unit distortion change when moving mass from y = m-1 to y = m-2 in the projected row.
    let gain = |x: usize, y: usize| dm.get(x, y) - dm.get(last, y);
    let coef = p[projected] * (gain(projected, m - 2) - gain(projected, m - 1));

    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    let mut index = vec![0usize; gridded.len()];
    let mut candidates = 0u64;
    loop {
        let mut rows = vec![Vec::new(); k];
        for (slot, &x) in gridded.iter().enumerate() {
            rows[x] = full[index[slot]].clone();
        }
        for head in &partial {
            candidates += 1;
            // head[..m-2] are fixed coordinates, head[m-2] is the mass shared by the last two.
            let rest = head[m - 2];
            let mut row = head.clone();
            row.push(0.0);
            row[m - 2] = 0.0;
            row[m - 1] = rest;
            rows[projected] = row;
            let base: f64 = (0..k)
                .filter(|&x| x != last)
                .map(|x| p[x] * rows[x].iter().enumerate().map(|(y, &w)| w * gain(x, y)).sum::<f64>())
                .sum::<f64>()
                + q.iter().enumerate().map(|(y, &qy)| qy * dm.get(last, y)).sum::<f64>();
            let b = if coef == 0.0 {
                if base > d_target {
                    continue;
                }
                0.0
            } else {
                (d_target - base) / coef
            };
            if !(b >= -FEASIBILITY_SLACK && b <= rest + FEASIBILITY_SLACK) {
                continue;
            }
            let b = b.clamp(0.0, rest);
            rows[projected][m - 2] = b;
            rows[projected][m - 1] = rest - b;
            let mut tail = Vec::with_capacity(m);
            let mut ok = true;
            for y in 0..m {
                let others: f64 = free.iter().map(|&x| p[x] * rows[x][y]).sum();
                let v = (q[y] - others) / p[last];
                if v < -FEASIBILITY_SLACK || v > 1.0 + FEASIBILITY_SLACK {
                    ok = false;
                    break;
                }
                tail.push(v.clamp(0.0, 1.0));
            }
            if !ok {
                continue;
            }
            let norm: f64 = tail.iter().sum();
            tail.iter_mut().for_each(|v| *v /= norm);
            rows[last] = tail;
            let value = mutual_information(p, &rows);
            if best.as_ref().map_or(true, |(b, _)| value < *b) {
                best = Some((value, rows.clone()));
            }
        }
        // odometer over the fully gridded rows
        let mut slot = 0;
        while slot < index.len() {
            index[slot] += 1;
            if index[slot] < full.len() {
                break;
            }
            index[slot] = 0;
            slot += 1;
        }
        if slot == index.len() {
            break;
        }
    }
    let (value, rows) = best.ok_or_else(|| {
        Error::Infeasible(format!(
            "no channel with output law q meets D = {d_target} at step {step}"
        ))
    })?;
    Ok(OracleResult {
        value_nats: value.max(0.0),
        argmin: Argmin::Channel(rows),
        grid_step: step,
        candidates,
    })
}

/// Smallest `E d` over couplings of `p` and `q`, i.e. the least distortion
/// any channel with output law `q` can reach.
///
/// Exact: every vertex of the transport polytope is supported on a spanning
/// forest of the `|X| x |Y|` bipartite graph, so all supports with
/// `|X| + |Y| - 1` cells are enumerated and resolved by leaf peeling.
pub fn min_coupled_distortion(problem: &RdProblem) -> Result<f64> {
    check_alphabets(problem)?;
    let p = problem.p().weights();
    let q = problem.q().weights();
    let dm = problem.distortion();
    let (k, m) = (p.len(), q.len());
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|x| (0..m).map(move |y| (x, y))).collect();
    let size = k + m - 1;
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << cells.len()) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let support: Vec<(usize, usize)> = cells
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        let Some(flow) = peel(&support, p, q) else {
            continue;
        };
        if flow.iter().any(|&v| v < -FEASIBILITY_SLACK) {
            continue;
        }
        let cost: f64 = support.iter().zip(&flow).map(|(&(x, y), &v)| v * dm.get(x, y)).sum();
        best = best.min(cost);
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Infeasible("no coupling of p and q found".into()))
    }
}

/// Flows on a spanning-forest support meeting both marginals, or `None` if
/// the support holds a cycle.
fn peel(support: &[(usize, usize)], p: &[f64], q: &[f64]) -> Option<Vec<f64>> {
    let mut row_left = p.to_vec();
    let mut col_left = q.to_vec();
    let mut flow = vec![f64::NAN; support.len()];
    let mut open = support.len();
    while open > 0 {
        let mut progressed = false;
        for x in 0..p.len() {
            let pending: Vec<usize> = (0..support.len())
                .filter(|&i| flow[i].is_nan() && support[i].0 == x)
                .collect();
            if pending.len() == 1 {
                let i = pending[0];
                flow[i] = row_left[x];
                row_left[x] = 0.0;
                col_left[support[i].1] -= flow[i];
                open -= 1;
                progressed = true;
            }
        }
        for y in 0..q.len() {
            let pending: Vec<usize> = (0..support.len())
                .filter(|&i| flow[i].is_nan() && support[i].1 == y)
                .collect();
            if pending.len() == 1 {
                let i = pending[0];
                flow[i] = col_left[y];
                col_left[y] = 0.0;
                row_left[support[i].0] -= flow[i];
                open -= 1;
                progressed = true;
            }
        }
        if !progressed {
            return None;
        }
    }
    let residual = row_left.iter().chain(&col_left).map(|v| v.abs()).fold(0.0, f64::max);
    (residual < 1e-9).then_some(flow)
}

/// Lower convex hull of `(distortion, divergence, row)` points, from the
/// smallest distortion to the smallest divergence.
fn lower_hull(mut pts: Vec<(f64, f64, Vec<f64>)>) -> Vec<(f64, f64, Vec<f64>)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut hull: Vec<(f64, f64, Vec<f64>)> = Vec::new();
    for p in pts {
        if hull.last().is_some_and(|h| h.0 == p.0) {
            continue;
        }
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let lowest = hull
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    hull.truncate(lowest + 1);
    hull
}

/// `min Σ_x p(x) D(w(·|x) ‖ q)` over channels with `E d <= D`.
///
/// The objective separates over rows. Each row's grid points are reduced to
/// the lower convex hull of (distortion, divergence); the distortion budget
/// is then spent greedily on the cheapest hull segments across rows. A
/// point between two hull vertices is realized by mixing their rows, which
/// keeps the distortion and (by convexity) does not raise the divergence,
/// so the reported value is that of an actual feasible channel.
pub fn mot_rate_function(problem: &RdProblem, d_target: f64, grid_step: f64) -> Result<OracleResult> {
    check_alphabets(problem)?;
    let n = grid_divisions(grid_step)?;
    let step = 1.0 / n as f64;
    if d_target >= problem.d_zero() {
        return Ok(independent(problem, step));
    }
    let p = problem.p().weights();
    let q = problem.q().weights();
    let dm = problem.distortion();
    let k = p.len();
    let grid = simplex_grid(q.len(), n);
    let candidates = grid.len() as u64 * k as u64;
    if candidates > MAX_CANDIDATES {
        return Err(Error::AlphabetTooLarge(format!(
            "{candidates} candidates at step {step}"
        )));
    }

    let hulls: Vec<_> = (0..k)
        .map(|x| {
            let pts = grid
                .iter()
                .filter_map(|w| {
                    let kl = kl_divergence(w, q);
                    kl.is_finite().then(|| (row_distortion(dm.row(x), w), kl, w.clone()))
                })
                .collect();
            lower_hull(pts)
        })
        .collect();

    // Start every row at its cheapest vertex and walk left along the hulls.
    let mut pos: Vec<usize> = hulls.iter().map(|h| h.len() - 1).collect();
    let mut frac = vec![0.0; k];
    let mut excess: f64 = (0..k).map(|x| p[x] * hulls[x][pos[x]].0).sum::<f64>() - d_target;
    let mut segments: Vec<(f64, usize, usize)> = Vec::new();
    for (x, h) in hulls.iter().enumerate() {
        for j in 1..h.len() {
            let slope = (h[j - 1].1 - h[j].1) / (h[j].0 - h[j - 1].0);
            segments.push((slope, x, j));
        }
    }
    segments.sort_by(|a, b| a.0.total_cmp(&b.0));
    for &(_, x, j) in &segments {
        if excess <= 0.0 {
            break;
        }
        if p[x] == 0.0 {
            continue;
        }
        let h = &hulls[x];
        let width = p[x] * (h[j].0 - h[j - 1].0);
        if width >= excess {
            pos[x] = j;
            frac[x] = excess / width;
            excess = 0.0;
        } else {
            pos[x] = j - 1;
            excess -= width;
        }
    }
    if excess > FEASIBILITY_SLACK {
        return Err(Error::Infeasible(format!(
            "D = {d_target} is below the grid's reachable distortion"
        )));
    }
    let rows: Vec<Vec<f64>> = (0..k)
        .map(|x| {
            let h = &hulls[x];
            let j = pos[x];
            if frac[x] > 0.0 {
                h[j].2
                    .iter()
                    .zip(&h[j - 1].2)
                    .map(|(a, b)| (1.0 - frac[x]) * a + frac[x] * b)
                    .collect()
            } else {
                h[j].2.clone()
            }
        })
        .collect();
    let value: f64 = rows
        .iter()
        .zip(p)
        .map(|(w, &px)| if px > 0.0 { px * kl_divergence(w, q) } else { 0.0 })
        .sum();
    Ok(OracleResult {
        value_nats: value.max(0.0),
        argmin: Argmin::Channel(rows),
        grid_step: step,
        candidates,
    })
}

/// One fixed point of the classical alternating minimization.
#[derive(Debug, Clone, PartialEq)]
pub struct BlahutArimoto {
    pub distortion: f64,
    pub rate: f64,
    pub q: Pmf,
    pub iterations: usize,
}

/// Blahut–Arimoto at Lagrange slope `s`: `w ∝ q e^{-s d}`, `q ← Σ_x p(x) w`,
/// until `ln max_y c(y) < tol` with `c(y) = q_next(y) / q(y)`, which bounds
/// the excess of the Lagrangian over its minimum. The reported `(D, R)` are those of the Gibbs
/// channel of the final `q`, with `R = Σ_x p(x) D(w(·|x) ‖ q)`.
pub fn blahut_arimoto(p: &Pmf, d: &DistortionMatrix, slope: f64, iters: usize, tol: f64) -> Result<BlahutArimoto> {
    let s = SParam::new(slope)?;
    if iters < 1 || !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "iters = {iters} must be >= 1 and tol = {tol} > 0"
        )));
    }
    if d.rows() != p.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} source weights, {} matrix rows",
            p.len(),
            d.rows()
        )));
    }
    let m = d.cols();
    if slope == 0.0 {
        let cost = |y: usize| {
            p.weights()
                .iter()
                .enumerate()
                .map(|(x, px)| px * d.get(x, y))
                .sum::<f64>()
        };
        let best = (0..m)
            .min_by(|&a, &b| cost(a).total_cmp(&cost(b)))
            .expect("nonempty alphabet");
        let mut q = vec![0.0; m];
        q[best] = 1.0;
        return Ok(BlahutArimoto {
            distortion: cost(best),
            rate: 0.0,
            q: Pmf::new(q)?,
            iterations: 0,
        });
    }
    let mut q = Pmf::uniform(m)?;
    for it in 1..=iters {
        let problem = RdProblem::from_pmfs(p.clone(), q.clone(), d.clone())?;
        let ch = gibbs_channel(&problem, s);
        let mut next = vec![0.0; m];
        for (row, &px) in ch.rows.iter().zip(p.weights()) {
            for (o, w) in next.iter_mut().zip(row) {
                *o += px * w;
            }
        }
        let gap = next
            .iter()
            .zip(q.weights())
            .filter(|(_, &b)| b > 0.0)
            .map(|(a, b)| a / b)
            .fold(0.0, f64::max)
            .ln();
        q = Pmf::normalized(next)?;
        if gap < tol {
            let problem = RdProblem::from_pmfs(p.clone(), q.clone(), d.clone())?;
            let ch = gibbs_channel(&problem, s);
            let distortion = ch
                .rows
                .iter()
                .enumerate()
                .map(|(x, w)| p.weights()[x] * row_distortion(d.row(x), w))
                .sum();
            let rate = ch
                .rows
                .iter()
                .zip(p.weights())
                .map(|(w, &px)| {
                    if px > 0.0 {
                        px * kl_divergence(w, q.weights())
                    } else {
                        0.0
                    }
                })
                .sum::<f64>()
                .max(0.0);
            return Ok(BlahutArimoto {
                distortion,
                rate,
                q,
                iterations: it,
            });
        }
    }
    Err(Error::NonConvergence { iterations: iters })
}

/// `min_q R_q(D)` over a simplex grid of reproduction pmfs.
pub fn q_search_infimum(p: &Pmf, d: &DistortionMatrix, d_target: f64, q_grid_step: f64) -> Result<OracleResult> {
    let m = d.cols();
    if m > MAX_ALPHABET {
        return Err(Error::AlphabetTooLarge(format!("|Y| = {m}, limit {MAX_ALPHABET}")));
    }
    if !(q_grid_step > 0.0 && q_grid_step <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "q grid step {q_grid_step} must lie in (0, 0.5]"
        )));
    }
    let n = (1.0 / q_grid_step).round() as usize;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut candidates = 0;
    for q in simplex_grid(m, n) {
        candidates += 1;
        let problem = RdProblem::from_pmfs(p.clone(), Pmf::normalized(q.clone())?, d.clone())?;
        let rate = match legendre_rate(&problem, d_target) {
            Ok(sol) => sol.rate,
            Err(Error::BelowDInfinity { .. }) | Err(Error::IndistinguishableFromDInfinity { .. }) => continue,
            Err(e) => return Err(e),
        };
        if best.as_ref().map_or(true, |(b, _)| rate < *b) {
            best = Some((rate, q));
        }
    }
    let (value, q) = best.ok_or_else(|| Error::Infeasible(format!("no reproduction pmf reaches D = {d_target}")))?;
    Ok(OracleResult {
        value_nats: value,
        argmin: Argmin::Reproduction(q),
        grid_step: 1.0 / n as f64,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::binary_entropy;
    use std::f64::consts::LN_2;

    fn hamming() -> DistortionMatrix {
        DistortionMatrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    fn bss_with(q: Vec<f64>) -> RdProblem {
        RdProblem::from_pmfs(Pmf::uniform(2).unwrap(), Pmf::new(q).unwrap(), hamming()).unwrap()
    }

    #[test]
    fn simplex_counts() {
        assert_eq!(simplex_grid(3, 4).len(), 15);
        assert_eq!(simplex_grid(1, 7), vec![vec![1.0]]);
        assert!(simplex_grid(3, 10)
            .iter()
            .all(|w| (w.iter().sum::<f64>() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn transport_floor() {
        // Hamming: the floor is the total variation distance.
        assert!(min_coupled_distortion(&bss_with(vec![0.5, 0.5])).unwrap().abs() < 1e-15);
        assert!((min_coupled_distortion(&bss_with(vec![0.8, 0.2])).unwrap() - 0.3).abs() < 1e-12);
        let d =
            DistortionMatrix::from_rows(vec![vec![0.0, 1.0, 4.0], vec![1.0, 0.0, 1.0], vec![4.0, 1.0, 0.0]]).unwrap();
        let p = RdProblem::from_pmfs(Pmf::new(vec![1.0, 0.0, 0.0]).unwrap(), Pmf::uniform(3).unwrap(), d).unwrap();
        assert!((min_coupled_distortion(&p).unwrap() - 5.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bss_brute_and_mot() {
        let exact = LN_2 - binary_entropy(0.25);
        let p = bss_with(vec![0.5, 0.5]);
        let b = bruteforce_rq(&p, 0.25, 0.001).unwrap();
        assert!((b.value_nats - exact).abs() < 2e-3, "{}", b.value_nats);
        let m = mot_rate_function(&p, 0.25, 0.002).unwrap();
        assert!((m.value_nats - exact).abs() < 2e-3, "{}", m.value_nats);
    }

    #[test]
    fn at_d_zero_is_free() {
        let p = bss_with(vec![0.5, 0.5]);
        assert_eq!(bruteforce_rq(&p, 0.5, 0.01).unwrap().value_nats, 0.0);
        assert_eq!(mot_rate_function(&p, 0.7, 0.01).unwrap().value_nats, 0.0);
    }

    #[test]
    fn asymmetric_q_mot_matches_legendre() {
        let p = bss_with(vec![0.7, 0.3]);
        let l = legendre_rate(&p, 0.3).unwrap().rate;
        let m = mot_rate_function(&p, 0.3, 0.002).unwrap().value_nats;
        assert!((m - l).abs() < 2e-3, "{m} vs {l}");
        assert!(m >= l - 1e-12);
    }

    #[test]
    fn limits_are_enforced() {
        let d = DistortionMatrix::from_rows(vec![vec![0.0; 4]; 2]).unwrap();
        let big = RdProblem::from_pmfs(Pmf::uniform(2).unwrap(), Pmf::uniform(4).unwrap(), d).unwrap();
        assert!(matches!(
            bruteforce_rq(&big, 0.1, 0.01),
            Err(Error::AlphabetTooLarge(_))
        ));
        let p = bss_with(vec![0.5, 0.5]);
        assert!(matches!(bruteforce_rq(&p, 0.2, 0.1), Err(Error::InvalidParameter(_))));
        assert!(matches!(
            mot_rate_function(&p, 0.2, 0.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn blahut_arimoto_bss() {
        let s = 3f64.ln();
        let ba = blahut_arimoto(&Pmf::uniform(2).unwrap(), &hamming(), s, 1000, 1e-12).unwrap();
        assert!((ba.distortion - 0.25).abs() < 1e-12);
        assert!((ba.rate - (LN_2 - binary_entropy(0.25))).abs() < 1e-12);
        assert!((ba.q.weights()[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn blahut_arimoto_zero_slope() {
        let p = Pmf::new(vec![0.8, 0.2]).unwrap();
        let ba = blahut_arimoto(&p, &hamming(), 0.0, 1, 1e-9).unwrap();
        assert_eq!(ba.rate, 0.0);
        assert!((ba.distortion - 0.2).abs() < 1e-15);
        assert_eq!(ba.q.weights(), &[1.0, 0.0]);
    }

    #[test]
    fn q_search_bss_symmetric() {
        let r = q_search_infimum(&Pmf::uniform(2).unwrap(), &hamming(), 0.25, 0.01).unwrap();
        match r.argmin {
            Argmin::Reproduction(q) => assert!((q[0] - 0.5).abs() <= 0.01),
            _ => panic!("expected a reproduction pmf"),
        }
        assert!((r.value_nats - (LN_2 - binary_entropy(0.25))).abs() < 1e-9);
    }
}
