use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symbols::{Point, Symbol};

/// Time integrator behind a [`HamiltonianFlow`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Integrator {
    /// Closed-form free rotor `(x, ξ) ↦ (x + tξ mod 2π, ξ)`.
    ExactRotor,
    /// Kick-drift-kick Störmer–Verlet with step `dt`.
    StormerVerlet { dt: f64 },
}

/// `Φᵗ` for a one-degree-of-freedom Hamiltonian on the cylinder.
#[derive(Debug, Clone)]
pub struct HamiltonianFlow {
    hamiltonian: Symbol,
    integrator: Integrator,
    // (m, c_m) of the potential, for V'(x) = Re Σ i m c_m e^{imx}
    force_modes: Vec<(f64, Complex64)>,
}

impl HamiltonianFlow {
    /// Free rotor `H = ξ²/2`.
    pub fn rotor() -> Self {
        Self {
            hamiltonian: Symbol::rotor_hamiltonian(),
            integrator: Integrator::ExactRotor,
            force_modes: Vec::new(),
        }
    }

    /// Störmer–Verlet flow of `H = ξ²/2 + V(x)`.
    pub fn verlet(hamiltonian: Symbol, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Config(format!("dt must be positive, got {dt}")));
        }
        let potential = hamiltonian
            .kinetic_plus_potential()
            .ok_or_else(|| Error::Capability(format!("'{}' is not of the form xi^2/2 + V(x)", hamiltonian.name())))?;
        let force_modes = potential
            .modes()
            .into_iter()
            .flatten()
            .filter(|(&m, _)| m != 0)
            .map(|(&m, c)| (m as f64, c.eval(0.0)))
            .collect();
        Ok(Self {
            hamiltonian,
            integrator: Integrator::StormerVerlet { dt },
            force_modes,
        })
    }

    pub fn hamiltonian(&self) -> &Symbol {
        &self.hamiltonian
    }

    pub fn integrator(&self) -> Integrator {
        self.integrator
    }

    pub fn dimension(&self) -> usize {
        self.hamiltonian.dimension()
    }

    /// `ω(I) = dH/dI`, available for the rotor only.
    pub fn frequency(&self, action: f64) -> Option<f64> {
        match self.integrator {
            Integrator::ExactRotor => Some(action),
            Integrator::StormerVerlet { .. } => None,
        }
    }

    /// `V'(x)`.
    pub fn force(&self, x: f64) -> f64 {
        self.force_modes
            .iter()
            .map(|&(m, c)| (Complex64::new(0.0, m) * c * Complex64::from_polar(1.0, m * x)).re)
            .sum()
    }

    fn verlet_step(&self, z: &mut Point, h: f64) {
        z.xi -= 0.5 * h * self.force(z.x);
        z.x += h * z.xi;
        z.xi -= 0.5 * h * self.force(z.x);
    }

    /// Approximates `Φᵗ(z)`.
    ///
    /// The rotor wraps `x` into `[0, 2π)`. Störmer–Verlet takes `⌊|t|/dt⌋`
    /// full steps and one reduced step for the remainder, and leaves `x`
    /// unwrapped so that aligned step sequences compose bit-for-bit.
    pub fn evolve(&self, z: Point, t: f64) -> Point {
        match self.integrator {
            Integrator::ExactRotor => Point::new((z.x + t * z.xi).rem_euclid(TAU), z.xi),
            Integrator::StormerVerlet { dt } => {
                let h = dt.copysign(t);
                let full = (t.abs() / dt).floor();
                let mut out = z;
                for _ in 0..full as u64 {
                    self.verlet_step(&mut out, h);
                }
                let rest = t - full * h;
                if rest.abs() > 1e-12 * dt {
                    self.verlet_step(&mut out, rest);
                }
                out
            }
        }
    }

    /// `Φᵗ(z)` at increasing `times`, continuing one trajectory.
    pub fn evolve_series(&self, z: Point, times: &[f64]) -> Result<Vec<Point>> {
        if times.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Config("evolve_series needs nondecreasing times".into()));
        }
        let mut out = Vec::with_capacity(times.len());
        let mut current = z;
        let mut now = 0.0;
        for &t in times {
            match self.integrator {
                Integrator::ExactRotor => out.push(self.evolve(z, t)),
                Integrator::StormerVerlet { .. } => {
                    current = self.evolve(current, t - now);
                    now = t;
                    out.push(current);
                }
            }
        }
        Ok(out)
    }

    /// `H(z)`.
    pub fn energy(&self, z: Point) -> f64 {
        self.hamiltonian.value(z.x, z.xi).re
    }
}
