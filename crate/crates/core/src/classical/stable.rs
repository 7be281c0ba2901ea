use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{composite_gauss_legendre, periodic_trapezoid};
use crate::symbols::Symbol;

/// Normal form near a hyperbolic periodic orbit of period `T`:
/// `Φᵗ(r, y) = (r + t mod T, e^{−λt} y)`, with `r` along the orbit and `y`
/// along its stable manifold.
///
/// Observables are symbols read at `(x, ξ) = (2πr/T, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StableManifoldModel {
    period: f64,
    rate: f64,
}

/// Density `σ(r, y)` on the model chart, supported in `y ∈ [lo, hi]`.
#[derive(Clone)]
pub struct ModelDensity {
    pub value: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    pub y_support: (f64, f64),
}

impl std::fmt::Debug for ModelDensity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModelDensity(y in {:?})", self.y_support)
    }
}

/// Periodic-orbit expansion `Σ_k b_k e^{2πikt/T}` of the transport.
#[derive(Debug, Clone, PartialEq)]
pub struct StableSeries {
    pub period: f64,
    pub coefficients: Vec<(i64, Complex64)>,
}

impl StableSeries {
    pub fn value(&self, t: f64) -> Complex64 {
        self.coefficients
            .iter()
            .map(|&(k, b)| b * Complex64::from_polar(1.0, TAU * k as f64 * t / self.period))
            .sum()
    }

    pub fn get(&self, k: i64) -> Complex64 {
        self.coefficients
            .iter()
            .find(|(j, _)| *j == k)
            .map(|c| c.1)
            .unwrap_or_default()
    }
}

impl StableManifoldModel {
    pub fn new(period: f64, rate: f64) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::Config(format!("orbit period must be positive, got {period}")));
        }
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::Config(format!("contraction rate must be positive, got {rate}")));
        }
        Ok(Self { period, rate })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn flow(&self, r: f64, y: f64, t: f64) -> (f64, f64) {
        ((r + t).rem_euclid(self.period), (-self.rate * t).exp() * y)
    }

    /// Direct transport `(1/T) ∫∫ a(Φᵗ(r, y)) σ(r, y) dr dy`, trapezoid in
    /// `r` and composite Gauss–Legendre in `y`.
    pub fn transport(&self, a: &Symbol, density: &ModelDensity, t: f64, r_nodes: usize, y_nodes: usize) -> Complex64 {
        let rs = periodic_trapezoid(0.0, self.period, r_nodes);
        let ys = composite_gauss_legendre(density.y_support.0, density.y_support.1, y_nodes);
        let shrink = (-self.rate * t).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for (&r, &wr) in rs.nodes.iter().zip(&rs.weights) {
            let x = TAU * (r + t) / self.period;
            for (&y, &wy) in ys.nodes.iter().zip(&ys.weights) {
                let s = (density.value)(r, y);
                if s != 0.0 {
                    acc += a.value(x, shrink * y) * (s * wr * wy);
                }
            }
        }
        acc / self.period
    }

    /// `b_k = a_k σ̃_k` for `|k| ≤ cutoff`, where `a_k` are the orbit Fourier
    /// coefficients of `a(·, 0)` and
    /// `σ̃_k = (1/T) ∫∫ σ(r, y) e^{2πikr/T} dr dy`.
    pub fn series(
        &self,
        a: &Symbol,
        density: &ModelDensity,
        cutoff: usize,
        r_nodes: usize,
        y_nodes: usize,
    ) -> Result<StableSeries> {
        let orbit = a.fourier_coefficients(cutoff, 0.0)?;
        let rs = periodic_trapezoid(0.0, self.period, r_nodes);
        let ys = composite_gauss_legendre(density.y_support.0, density.y_support.1, y_nodes);
        // marginal of σ along the orbit
        let marginal: Vec<f64> = rs
            .nodes
            .iter()
            .map(|&r| ys.integrate(|y| (density.value)(r, y)))
            .collect();
        let c = cutoff as i64;
        let coefficients = (-c..=c)
            .map(|k| {
                let sk: Complex64 = rs
                    .nodes
                    .iter()
                    .zip(&rs.weights)
                    .zip(&marginal)
                    .map(|((&r, &w), &m)| Complex64::from_polar(m * w, TAU * k as f64 * r / self.period))
                    .sum::<Complex64>()
                    / self.period;
                (k, orbit.get(k) * sk)
            })
            .collect();
        Ok(StableSeries {
            period: self.period,
            coefficients,
        })
    }
}
