use crate::error::{Error, Result};

/// Values below this magnitude count as converged and are excluded.
pub const DEFAULT_FLOOR: f64 = 1e-13;
/// Minimum number of usable points for a fit.
pub const MIN_POINTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayModel {
    /// `|v| ≈ c·e^{−γt}`.
    Exponential,
    /// `|v| ≈ c·t^{−p}` (points with `t ≤ 0` are excluded).
    Power,
}

/// Result of [`decay_fit`]. `rate` is `γ` or `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub rate: f64,
    pub amplitude: f64,
    /// Largest absolute residual in log space.
    pub residual: f64,
    /// Root-mean-square residual in log space.
    pub rms: f64,
    /// Standard error of `rate` from the residual scatter (0 for an exact fit).
    pub rate_stderr: f64,
    pub points: usize,
}

/// Least-squares decay fit in log coordinates.
pub fn decay_fit(series: &[(f64, f64)], model: DecayModel, floor: f64) -> Result<DecayFit> {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|(t, v)| v.is_finite() && v.abs() > floor && (model == DecayModel::Exponential || *t > 0.0))
        .map(|&(t, v)| {
            let x = match model {
                DecayModel::Exponential => t,
                DecayModel::Power => t.ln(),
            };
            (x, v.abs().ln())
        })
        .collect();
    if pts.len() < MIN_POINTS {
        return Err(Error::InsufficientData {
            usable: pts.len(),
            required: MIN_POINTS,
        });
    }
    let (slope, intercept) = least_squares(&pts)?;
    let (mut worst, mut sq) = (0.0f64, 0.0);
    for &(x, y) in &pts {
        let r = y - (intercept + slope * x);
        worst = worst.max(r.abs());
        sq += r * r;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(DecayFit {
        rate: -slope,
        amplitude: intercept.exp(),
        residual: worst,
        rms: (sq / n).sqrt(),
        rate_stderr: (sq / (n - 2.0) / sxx).sqrt(),
        points: pts.len(),
    })
}

/// Ordinary least-squares line `y = a + b x`; returns `(b, a)`.
pub fn least_squares(pts: &[(f64, f64)]) -> Result<(f64, f64)> {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return Err(Error::InsufficientData {
            usable: pts.len(),
            required: 2,
        });
    }
    let b = sxy / sxx;
    Ok((b, my - b * mx))
}

/// `env_i = max_{j ≥ i} |v_j|`: the tail maximum, which turns an
/// oscillating decaying series into a monotone one.
pub fn tail_envelope(values: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; values.len()];
    let mut m = 0.0f64;
    for (o, v) in out.iter_mut().zip(values).rev() {
        m = m.max(v.abs());
        *o = m;
    }
    out
}

/// `env_i = max_{j ≤ i} |v_j|`: the running maximum, for growth fits.
pub fn running_envelope(values: &[f64]) -> Vec<f64> {
    let mut m = 0.0f64;
    values
        .iter()
        .map(|v| {
            m = m.max(v.abs());
            m
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exponential_rate() {
        let s: Vec<(f64, f64)> = (1..=20).map(|t| (t as f64, 3.0 * (-0.7 * t as f64).exp())).collect();
        let f = decay_fit(&s, DecayModel::Exponential, DEFAULT_FLOOR).unwrap();
        assert!((f.rate - 0.7).abs() < 1e-9);
        assert!((f.amplitude - 3.0).abs() < 1e-9);
    }

    #[test]
    fn recovers_power_exponent() {
        let s: Vec<(f64, f64)> = (1..=100).map(|t| (t as f64, 5.0 / t as f64)).collect();
        let f = decay_fit(&s, DecayModel::Power, DEFAULT_FLOOR).unwrap();
        assert!((f.rate - 1.0).abs() < 1e-9);
    }

    #[test]
    fn floor_drops_converged_points() {
        let s = [(1.0, 1.0), (2.0, 0.5), (3.0, 1e-14), (4.0, 0.0), (5.0, 0.1)];
        assert!(matches!(
            decay_fit(&s, DecayModel::Exponential, DEFAULT_FLOOR),
            Err(Error::InsufficientData { usable: 3, required: 5 })
        ));
    }

    #[test]
    fn envelopes() {
        let v = [1.0, -3.0, 2.0, 0.5];
        assert_eq!(tail_envelope(&v), vec![3.0, 3.0, 2.0, 0.5]);
        assert_eq!(running_envelope(&v), vec![1.0, 3.0, 3.0, 3.0]);
    }
}
