use anyhow::{bail, Context, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Lin,
    Log,
}

/// Parses `lo:hi:n`, `lo:hi:nlin`, `lo:hi:nlog` or a comma list.
/// The result is nonempty and strictly increasing.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let spec = spec.trim();
    let values = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            bail!("grid {spec:?}: expected lo:hi:n[lin|log]");
        }
        let lo: f64 = parts[0]
            .trim()
            .parse()
            .with_context(|| format!("grid {spec:?}: bad lower end"))?;
        let hi: f64 = parts[1]
            .trim()
            .parse()
            .with_context(|| format!("grid {spec:?}: bad upper end"))?;
        let count = parts[2].trim();
        let (digits, spacing) = if let Some(d) = count.strip_suffix("log") {
            (d, Spacing::Log)
        } else if let Some(d) = count.strip_suffix("lin") {
            (d, Spacing::Lin)
        } else {
            (count, Spacing::Lin)
        };
        let n: usize = digits
            .parse()
            .with_context(|| format!("grid {spec:?}: bad point count"))?;
        range(lo, hi, n, spacing)?
    } else {
        spec.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .with_context(|| format!("grid {spec:?}: bad value {t:?}"))
            })
            .collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() {
        bail!("grid {spec:?} is empty");
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        bail!("grid {spec:?}: non-finite value {bad}");
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        bail!("grid {spec:?} must be strictly increasing");
    }
    Ok(values)
}

fn range(lo: f64, hi: f64, n: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if !(lo <= hi) {
        bail!("grid lower end {lo} exceeds upper end {hi}");
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let t = |i: usize| i as f64 / (n - 1) as f64;
    Ok(match spacing {
        Spacing::Lin => (0..n)
            .map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * t(i) })
            .collect(),
        Spacing::Log => {
            if !(lo > 0.0) {
                bail!("log grid needs a positive lower end, got {lo}");
            }
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| match i {
                    0 => lo,
                    _ if i == n - 1 => hi,
                    _ => (a + (b - a) * t(i)).exp(),
                })
                .collect()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("0:1:3lin").unwrap(), vec![0.0, 0.5, 1.0]);
        let g = parse_grid("0.01:100:5log").unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[2] - 1.0).abs() < 1e-12);
        assert_eq!(parse_grid(" 0, 1.5 ,2 ").unwrap(), vec![0.0, 1.5, 2.0]);
        assert_eq!(parse_grid("2:2:1").unwrap(), vec![2.0]);
    }

    #[test]
    fn rejects() {
        for bad in [
            "", ",", "0:1:0", "1:0:3", "0:1:3log", "1,0", "a,b", "0:1", "1,1", "0:1:xlin",
        ] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }
}
