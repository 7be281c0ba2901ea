use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::Grid;
use crate::amplitude::Amplitude;
use crate::error::{Error, Result};
use crate::symbols::Symbol;

/// Complex amplitudes at the grid nodes `x_j = 2πj/N`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: Arc<Grid>,
    amplitudes: Vec<Complex64>,
}

impl WaveFunction {
    pub fn new(grid: Arc<Grid>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != grid.n() {
            return Err(Error::Config(format!(
                "wavefunction has {} amplitudes for a grid of {} points",
                amplitudes.len(),
                grid.n()
            )));
        }
        Ok(Self { grid, amplitudes })
    }

    pub fn zeros(grid: Arc<Grid>) -> Self {
        let n = grid.n();
        Self {
            grid,
            amplitudes: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// State from its momentum amplitudes (unitary-DFT convention, FFT order).
    pub fn from_momentum(grid: Arc<Grid>, momentum: &[Complex64]) -> Result<Self> {
        let amplitudes = grid.inverse(momentum);
        Self::new(grid, amplitudes)
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Unitary-DFT momentum amplitudes in FFT order.
    pub fn momentum_amplitudes(&self) -> Vec<Complex64> {
        self.grid.forward(&self.amplitudes)
    }

    /// `‖ψ‖² = Δx Σ |ψ_j|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.grid.dx() * self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// `⟨self, other⟩ = Δx Σ conj(ψ_j) φ_j`.
    pub fn inner(&self, other: &WaveFunction) -> Result<Complex64> {
        self.check_grid(other.grid())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.grid.dx())
    }

    pub(crate) fn check_grid(&self, grid: &Grid) -> Result<()> {
        if *self.grid != *grid {
            return Err(Error::Config(format!(
                "grid mismatch: state on (N={}, hbar={}), operator on (N={}, hbar={})",
                self.grid.n(),
                self.grid.hbar(),
                grid.n(),
                grid.hbar()
            )));
        }
        Ok(())
    }
}

/// Tolerance of the single-valuedness check on `e^{iφ/ħ}`.
pub const WINDING_TOLERANCE: f64 = 1e-9;

/// Lagrangian state `ψ_j = ρ₀(x_j) e^{iφ(x_j)/ħ}` on the circle.
///
/// The phase is read from the symbol's value at `(x, 0)`. `e^{iφ/ħ}` must be
/// single-valued: `φ(2π) − φ(0) ∈ 2πħℤ`. No normalization is applied.
pub fn synthesize_state(grid: &Arc<Grid>, phase: &Symbol, amplitude: &Amplitude) -> Result<WaveFunction> {
    let hbar = grid.hbar();
    let jump = phase.value(2.0 * PI, 0.0).re - phase.value(0.0, 0.0).re;
    let quantum = 2.0 * PI * hbar;
    let defect = jump - quantum * (jump / quantum).round();
    if defect.abs() > WINDING_TOLERANCE {
        return Err(Error::Winding { jump, defect });
    }
    let amplitudes = grid
        .positions()
        .map(|x| amplitude.value(x) * Complex64::from_polar(1.0, phase.value(x, 0.0).re / hbar))
        .collect();
    WaveFunction::new(grid.clone(), amplitudes)
}

/// Lagrangian state over the action: momentum amplitudes
/// `c_k = (ħ/2π)^{1/2} ρ̂(ξ_k) e^{−iφ(ξ_k)/ħ}`, i.e. `ψ(x) = Σ_k c_k e^{ikx}`.
///
/// Its Lagrangian manifold is `{(x, I) : x = φ'(I)}` and `‖ψ‖² → ∫|ρ̂|² dI`.
pub fn synthesize_momentum_state(grid: &Arc<Grid>, phase: &Symbol, amplitude: &Amplitude) -> Result<WaveFunction> {
    let hbar = grid.hbar();
    // unitary DFT: ψ_j = N^{-1/2} Σ ĉ_k e^{ikx_j}, so ĉ_k = √N c_k
    let s = (hbar / (2.0 * PI)).sqrt() * (grid.n() as f64).sqrt();
    let momentum: Vec<Complex64> = (0..grid.n())
        .map(|i| {
            let xi = grid.momentum(i);
            amplitude.value(xi) * s * Complex64::from_polar(1.0, -phase.value(xi, 0.0).re / hbar)
        })
        .collect();
    WaveFunction::from_momentum(grid.clone(), &momentum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_phase(slope: f64) -> Symbol {
        Symbol::linear_phase(slope)
    }

    #[test]
    fn zero_phase_real_bump_is_real_nonnegative() {
        let g = Grid::new(128, 0.05).unwrap();
        let psi = synthesize_state(&g, &Symbol::constant(0.0), &Amplitude::bump(PI, 1.0)).unwrap();
        assert!(psi.amplitudes().iter().all(|z| z.im == 0.0 && z.re >= 0.0));
    }

    #[test]
    fn plane_phase_concentrates_on_one_momentum() {
        let hbar = 1.0 / 64.0;
        let g = Grid::new(256, hbar).unwrap();
        let i0 = 10.0 * hbar;
        let psi = synthesize_state(&g, &linear_phase(i0), &Amplitude::uniform()).unwrap();
        let hat = psi.momentum_amplitudes();
        for (i, z) in hat.iter().enumerate() {
            if g.lattice_index(i) == 10 {
                assert!((z.norm() - 16.0).abs() < 1e-10);
            } else {
                assert!(z.norm() < 1e-10, "slot {i}: {z}");
            }
        }
    }

    #[test]
    fn winding_error_reports_defect() {
        let g = Grid::new(64, 0.1).unwrap();
        match synthesize_state(&g, &linear_phase(0.15), &Amplitude::uniform()) {
            Err(Error::Winding { defect, .. }) => assert!(defect.abs() > 0.1),
            other => panic!("expected winding error, got {other:?}"),
        }
    }

    #[test]
    fn momentum_state_norm_matches_action_mass() {
        let hbar = 1.0 / 256.0;
        let g = Grid::new(1024, hbar).unwrap();
        let amp = Amplitude::bump(0.5, 0.4);
        let psi = synthesize_momentum_state(&g, &linear_phase(1.0), &amp).unwrap();
        let rule = crate::quadrature::composite_gauss_legendre(0.1, 0.9, 256);
        let mass: f64 = rule.integrate(|u| amp.density(u));
        assert!((psi.norm_sqr() - mass).abs() < 1e-8, "{} vs {mass}", psi.norm_sqr());
    }
}
