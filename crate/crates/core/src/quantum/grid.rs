use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Periodic grid on the circle of circumference 2π with momentum lattice
/// `ξ_k = ħk`, `k ∈ {−N/2, …, N/2 − 1}`.
///
/// The discrete Fourier transform is normalized to be unitary. Momentum
/// arrays are stored in FFT order (index `i` holds lattice index
/// [`Grid::lattice_index`]`(i)`).
#[derive(Clone)]
pub struct Grid {
    n: usize,
    hbar: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("n", &self.n)
            .field("hbar", &self.hbar)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.hbar == other.hbar
    }
}

impl Grid {
    pub const MIN_POINTS: usize = 64;
    pub const MAX_POINTS: usize = 8192;

    pub fn new(n: usize, hbar: f64) -> Result<Arc<Self>> {
        if !n.is_power_of_two() || !(Self::MIN_POINTS..=Self::MAX_POINTS).contains(&n) {
            return Err(Error::Config(format!(
                "grid size must be a power of two in [{}, {}], got {n}",
                Self::MIN_POINTS,
                Self::MAX_POINTS
            )));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::Config(format!("hbar must be positive, got {hbar}")));
        }
        let mut planner = FftPlanner::new();
        Ok(Arc::new(Self {
            n,
            hbar,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn dx(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    pub fn position(&self, j: usize) -> f64 {
        self.dx() * j as f64
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|j| self.position(j))
    }

    /// Lattice index `k` stored at FFT slot `i`.
    pub fn lattice_index(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// FFT slot holding lattice index `k` (taken modulo N).
    pub fn slot(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    /// Wraps a lattice index into `[−N/2, N/2)`.
    pub fn wrap(&self, k: i64) -> i64 {
        self.lattice_index(self.slot(k))
    }

    /// `ξ` at FFT slot `i`.
    pub fn momentum(&self, i: usize) -> f64 {
        self.hbar * self.lattice_index(i) as f64
    }

    /// Largest `|ξ|` on the lattice.
    pub fn max_momentum(&self) -> f64 {
        self.hbar * (self.n / 2) as f64
    }

    /// Unitary forward transform: `ψ̂_k = N^{-1/2} Σ_j ψ_j e^{−ikx_j}`.
    pub fn forward(&self, data: &[Complex64]) -> Vec<Complex64> {
        let mut buf = data.to_vec();
        self.forward.process(&mut buf);
        let s = 1.0 / (self.n as f64).sqrt();
        buf.iter_mut().for_each(|z| *z *= s);
        buf
    }

    /// Unitary inverse transform.
    pub fn inverse(&self, data: &[Complex64]) -> Vec<Complex64> {
        let mut buf = data.to_vec();
        self.inverse.process(&mut buf);
        let s = 1.0 / (self.n as f64).sqrt();
        buf.iter_mut().for_each(|z| *z *= s);
        buf
    }

    pub(crate) fn forward_in_place(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
        let s = 1.0 / (self.n as f64).sqrt();
        buf.iter_mut().for_each(|z| *z *= s);
    }

    pub(crate) fn inverse_in_place(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
        let s = 1.0 / (self.n as f64).sqrt();
        buf.iter_mut().for_each(|z| *z *= s);
    }
}
