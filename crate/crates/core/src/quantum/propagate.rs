use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::Grid;
use super::state::WaveFunction;
use crate::error::{Error, Result};
use crate::symbols::Symbol;

/// Largest potential phase per step, `max|V|·dt/ħ`.
pub const POTENTIAL_PHASE_LIMIT: f64 = 0.5;
/// Largest kinetic phase per step, `max|ξ|²·dt/(2ħ)`.
pub const KINETIC_PHASE_LIMIT: f64 = std::f64::consts::FRAC_PI_4;

/// Violation of the phase-resolution rule; the run proceeds regardless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StabilityWarning {
    PotentialPhase { phase: f64 },
    KineticPhase { phase: f64 },
}

impl fmt::Display for StabilityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PotentialPhase { phase } => write!(
                f,
                "potential phase per step {phase:.3e} exceeds {POTENTIAL_PHASE_LIMIT}"
            ),
            Self::KineticPhase { phase } => write!(f, "kinetic phase per step {phase:.3e} exceeds pi/4"),
        }
    }
}

/// Strang splitting `e^{−iVdt/2ħ} e^{−iξ̂²dt/2ħ} e^{−iVdt/2ħ}` for
/// `H = ξ²/2 + V(x)` on a fixed grid.
#[derive(Debug, Clone)]
pub struct SplitStep {
    grid: Arc<Grid>,
    dt: f64,
    half_potential: Vec<Complex64>,
    kinetic: Vec<Complex64>,
    has_potential: bool,
    warnings: Vec<StabilityWarning>,
}

impl SplitStep {
    /// Builds the step factors. `hamiltonian` must split as kinetic plus
    /// potential (see [`Symbol::kinetic_plus_potential`]).
    pub fn new(grid: &Arc<Grid>, hamiltonian: &Symbol, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Config(format!("dt must be positive, got {dt}")));
        }
        let potential = hamiltonian
            .kinetic_plus_potential()
            .ok_or_else(|| Error::Capability(format!("'{}' is not of the form xi^2/2 + V(x)", hamiltonian.name())))?;
        let hbar = grid.hbar();
        let v: Vec<f64> = grid.positions().map(|x| potential.value(x, 0.0).re).collect();
        let v_max = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let has_potential = v_max > 0.0;
        let half_potential = v
            .iter()
            .map(|&v| Complex64::from_polar(1.0, -0.5 * v * dt / hbar))
            .collect();
        let kinetic = (0..grid.n())
            .map(|i| {
                let xi = grid.momentum(i);
                Complex64::from_polar(1.0, -0.5 * xi * xi * dt / hbar)
            })
            .collect();
        let mut warnings = Vec::new();
        let vp = v_max * dt / hbar;
        if vp > POTENTIAL_PHASE_LIMIT {
            warnings.push(StabilityWarning::PotentialPhase { phase: vp });
        }
        // free evolution is exact at any dt, there is no splitting to resolve
        let kp = grid.max_momentum().powi(2) * dt / (2.0 * hbar);
        if has_potential && kp > KINETIC_PHASE_LIMIT {
            warnings.push(StabilityWarning::KineticPhase { phase: kp });
        }
        Ok(Self {
            grid: grid.clone(),
            dt,
            half_potential,
            kinetic,
            has_potential,
            warnings,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn warnings(&self) -> &[StabilityWarning] {
        &self.warnings
    }

    /// Advances `psi` by `steps` Strang steps in place.
    pub fn advance(&self, psi: &mut WaveFunction, steps: usize) -> Result<()> {
        psi.check_grid(&self.grid)?;
        let buf = psi.amplitudes_mut();
        for _ in 0..steps {
            if self.has_potential {
                buf.iter_mut().zip(&self.half_potential).for_each(|(a, b)| *a *= b);
            }
            self.grid.forward_in_place(buf);
            buf.iter_mut().zip(&self.kinetic).for_each(|(a, b)| *a *= b);
            self.grid.inverse_in_place(buf);
            if self.has_potential {
                buf.iter_mut().zip(&self.half_potential).for_each(|(a, b)| *a *= b);
            }
        }
        Ok(())
    }
}

/// Result of [`split_step_propagate`].
#[derive(Debug, Clone)]
pub struct Propagation {
    pub state: WaveFunction,
    pub steps: usize,
    pub warnings: Vec<StabilityWarning>,
}

/// Propagates `psi` to time `t` with step `dt`; `t` is rounded to the
/// nearest whole number of steps.
pub fn split_step_propagate(psi: &WaveFunction, hamiltonian: &Symbol, t: f64, dt: f64) -> Result<Propagation> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::Config(format!("t must be finite and nonnegative, got {t}")));
    }
    let stepper = SplitStep::new(psi.grid(), hamiltonian, dt)?;
    let steps = (t / dt).round() as usize;
    let mut state = psi.clone();
    stepper.advance(&mut state, steps)?;
    Ok(Propagation {
        state,
        steps,
        warnings: stepper.warnings.clone(),
    })
}
