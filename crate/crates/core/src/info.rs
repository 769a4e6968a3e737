//! Entropies and divergences in nats, with `0 ln 0 = 0`.

/// `-Σ p ln p`.
pub fn entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&v| v > 0.0).map(|&v| v * v.ln()).sum::<f64>()
}

/// `h₂(x) = -x ln x - (1-x) ln(1-x)`.
pub fn binary_entropy(x: f64) -> f64 {
    entropy(&[x, 1.0 - x])
}

/// `D(p‖q) = Σ p ln(p/q)`; infinite when `p` puts mass where `q` has none.
pub fn kl_divergence(p: &[f64], q: &[f64]) -> f64 {
    let mut total = 0.0;
    for (&a, &b) in p.iter().zip(q) {
        if a <= 0.0 {
            continue;
        }
        if b <= 0.0 {
            return f64::INFINITY;
        }
        total += a * (a / b).ln();
    }
    total.max(0.0)
}

/// `Σ_y p(x) w(y|x)` for a row-stochastic `w`.
pub fn output_distribution(p: &[f64], w: &[Vec<f64>]) -> Vec<f64> {
    let cols = w.first().map_or(0, Vec::len);
    let mut out = vec![0.0; cols];
    for (row, &px) in w.iter().zip(p) {
        for (o, &v) in out.iter_mut().zip(row) {
            *o += px * v;
        }
    }
    out
}

/// `I(X;Y) = Σ_x p(x) D(w(·|x) ‖ q)` with `q` the induced output law.
pub fn mutual_information(p: &[f64], w: &[Vec<f64>]) -> f64 {
    let q = output_distribution(p, w);
    w.iter()
        .zip(p)
        .filter(|(_, &px)| px > 0.0)
        .map(|(row, &px)| px * kl_divergence(row, &q))
        .sum::<f64>()
        .max(0.0)
}

/// `H(Y|X) = Σ_x p(x) H(w(·|x))`.
pub fn conditional_entropy(p: &[f64], w: &[Vec<f64>]) -> f64 {
    w.iter().zip(p).map(|(row, &px)| px * entropy(row)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn entropy_values() {
        assert!((entropy(&[0.5, 0.5]) - LN_2).abs() < 1e-15);
        assert_eq!(entropy(&[1.0, 0.0]), 0.0);
        assert!((binary_entropy(0.25) - 0.562_335_144_618_808_3).abs() < 1e-15);
    }

    #[test]
    fn kl_support() {
        assert_eq!(kl_divergence(&[0.5, 0.5], &[0.5, 0.5]), 0.0);
        assert_eq!(kl_divergence(&[0.5, 0.5], &[1.0, 0.0]), f64::INFINITY);
        assert!(kl_divergence(&[1.0, 0.0], &[0.5, 0.5]) - LN_2 < 1e-15);
    }

    #[test]
    fn bsc_mutual_information() {
        let w = vec![vec![0.9, 0.1], vec![0.1, 0.9]];
        let i = mutual_information(&[0.5, 0.5], &w);
        assert!((i - (LN_2 - binary_entropy(0.1))).abs() < 1e-15);
        assert!((i - 0.368_064_2).abs() < 1e-7);
        assert!((conditional_entropy(&[0.5, 0.5], &w) - binary_entropy(0.1)).abs() < 1e-15);
    }
}
