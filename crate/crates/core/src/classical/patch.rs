use std::f64::consts::PI;

use num_complex::Complex64;

use crate::amplitude::Amplitude;
use crate::error::{Error, Result};
use crate::quadrature::{composite_gauss_legendre, periodic_trapezoid, Rule};
use crate::symbols::{FourierTable, Point, Symbol};

/// Largest `|ρ₀|` allowed at the endpoints of an interval chart.
pub const ENDPOINT_TOLERANCE: f64 = 1e-12;

/// How the parameter `u` of a patch is embedded in phase space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `u = x ↦ (x, φ'(x))`.
    OverPosition,
    /// `u = I ↦ (φ'(I), I)`.
    OverAction,
}

/// One-dimensional Lagrangian patch: the graph of `φ'` over a parameter
/// interval, weighted by `|ρ₀|²`.
///
/// Graphs of gradients are Lagrangian, so no runtime check is made.
#[derive(Debug, Clone)]
pub struct LagrangianPatch {
    chart: Chart,
    lo: f64,
    hi: f64,
    periodic: bool,
    phase: Symbol,
    amplitude: Amplitude,
}

impl LagrangianPatch {
    /// Patch over the whole circle `[0, 2π)`; the amplitude need not vanish
    /// anywhere.
    pub fn over_circle(phase: Symbol, amplitude: Amplitude) -> Self {
        Self {
            chart: Chart::OverPosition,
            lo: 0.0,
            hi: 2.0 * PI,
            periodic: true,
            phase,
            amplitude,
        }
    }

    /// Patch over the position interval `[lo, hi]`.
    pub fn over_position(phase: Symbol, amplitude: Amplitude, lo: f64, hi: f64) -> Result<Self> {
        Self::interval(Chart::OverPosition, phase, amplitude, lo, hi)
    }

    /// Patch over the action interval `[lo, hi]`.
    pub fn over_action(phase: Symbol, amplitude: Amplitude, lo: f64, hi: f64) -> Result<Self> {
        Self::interval(Chart::OverAction, phase, amplitude, lo, hi)
    }

    fn interval(chart: Chart, phase: Symbol, amplitude: Amplitude, lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Config(format!("patch interval [{lo}, {hi}] is empty")));
        }
        for end in [lo, hi] {
            let v = amplitude.value(end).norm();
            if v > ENDPOINT_TOLERANCE {
                return Err(Error::Config(format!(
                    "amplitude is {v:e} at patch endpoint {end}; it must vanish there"
                )));
            }
        }
        Ok(Self {
            chart,
            lo,
            hi,
            periodic: false,
            phase,
            amplitude,
        })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn phase(&self) -> &Symbol {
        &self.phase
    }

    pub fn amplitude(&self) -> &Amplitude {
        &self.amplitude
    }

    pub fn dimension(&self) -> usize {
        1
    }

    /// `φ'(u)` from the phase symbol's analytic gradient.
    pub fn phase_slope(&self, u: f64) -> Result<f64> {
        Ok(self.phase.grad((u, 0.0))?.0.re)
    }

    /// Phase-space point over parameter `u`.
    pub fn embed(&self, u: f64) -> Result<Point> {
        let s = self.phase_slope(u)?;
        Ok(match self.chart {
            Chart::OverPosition => Point::new(u, s),
            Chart::OverAction => Point::new(s, u),
        })
    }

    /// Trapezoid rule for periodic charts, composite Gauss–Legendre otherwise.
    pub fn rule(&self, nodes: usize) -> Rule {
        if self.periodic {
            periodic_trapezoid(self.lo, self.width(), nodes)
        } else {
            composite_gauss_legendre(self.lo, self.hi, nodes)
        }
    }

    /// `|ρ₀(u)|²`.
    pub fn density(&self, u: f64) -> f64 {
        self.amplitude.density(u)
    }

    /// Transport weight and total mass `∫|ρ₀|² du` on `nodes` nodes.
    pub fn mass_density(&self, nodes: usize) -> (impl Fn(f64) -> f64 + '_, f64) {
        let mass = self.rule(nodes).integrate(|u| self.density(u));
        (move |u| self.density(u), mass)
    }

    pub fn mass(&self, nodes: usize) -> f64 {
        self.mass_density(nodes).1
    }

    /// `w_m = ∫ e^{−imu} |ρ₀(u)|² du` for `|m| ≤ cutoff`.
    ///
    /// With this normalization a mass-`2π` uniform density has `w_0 = 2π`;
    /// these are the weights paired with the normalized angle coefficients
    /// of the observable in the torus prediction.
    pub fn mass_fourier_coefficients(&self, cutoff: usize, nodes: usize) -> FourierTable {
        let rule = self.rule(nodes);
        let c = cutoff as i64;
        let values = (-c..=c)
            .map(|m| rule.integrate(|u| Complex64::from_polar(self.density(u), -(m as f64) * u)))
            .collect();
        FourierTable::from_values(cutoff, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_amplitude_has_zero_mass() {
        let p = LagrangianPatch::over_circle(Symbol::linear_phase(1.0), Amplitude::zero());
        assert_eq!(p.mass(64), 0.0);
    }

    #[test]
    fn doubling_amplitude_quadruples_mass() {
        let a = Amplitude::bump(PI, 1.0);
        let p1 = LagrangianPatch::over_position(Symbol::linear_phase(0.5), a.clone(), PI - 1.0, PI + 1.0).unwrap();
        let p2 =
            LagrangianPatch::over_position(Symbol::linear_phase(0.5), a.with_scale(2.0), PI - 1.0, PI + 1.0).unwrap();
        assert!((p2.mass(256) - 4.0 * p1.mass(256)).abs() < 1e-14);
    }

    #[test]
    fn endpoints_must_vanish() {
        let err = LagrangianPatch::over_position(Symbol::constant(0.0), Amplitude::bump(0.0, 2.0), -1.0, 1.0);
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn embeddings_follow_chart() {
        let phase = Symbol::curved_phase(0.25, 0.5);
        let px = LagrangianPatch::over_circle(phase.clone(), Amplitude::uniform());
        let z = px.embed(1.0).unwrap();
        assert_eq!(z.x, 1.0);
        assert!((z.xi - (0.25 + 0.5 * 1.0f64.cos())).abs() < 1e-15);
        let pa = LagrangianPatch::over_action(phase, Amplitude::bump(1.0, 0.5), 0.5, 1.5).unwrap();
        let z = pa.embed(1.0).unwrap();
        assert_eq!(z.xi, 1.0);
    }

    #[test]
    fn raised_cosine_mass_coefficients() {
        let p = LagrangianPatch::over_circle(
            Symbol::linear_phase(1.0),
            Amplitude::new(crate::amplitude::Profile::Harmonic { m: 1 }),
        );
        let w = p.mass_fourier_coefficients(2, 64);
        assert!((w.get(0).re - PI).abs() < 1e-13);
        assert!((w.get(1).re - 0.5 * PI).abs() < 1e-13);
        assert!(w.get(2).norm() < 1e-13);
    }
}
