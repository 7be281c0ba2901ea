//! Reduction residual `|⟨ψ_t, Op[a]ψ_t⟩ − ∫ a∘Φᵗ |ρ₀|²|` over a time grid,
//! and the shape of its growth in `t`.

use semiclassical::amplitude::Amplitude;
use semiclassical::classical::{
    decay_fit, nyquist_nodes, running_envelope, transport_integral, DecayModel, HamiltonianFlow, DEFAULT_FLOOR,
};
use semiclassical::quantum::{expectation, synthesize_state, weyl_quantize, SplitStep};
use semiclassical::symbols::Symbol;
use semiclassical::Complex64;

use super::{
    amplitude, check_samples, fmt_warnings, grid, grid_sizes, hbar_list, max_mode, position_patch, symbol, times,
    whole_steps, Common,
};
use crate::config::{Config, Fields};
use crate::error::{LabError, Result};
use crate::report::{CrossCheck, FitRecord, Report, Row};

#[derive(Debug, Clone)]
pub struct ReductionParams {
    pub common: Common,
    pub hamiltonian: Symbol,
    pub hbar: Vec<f64>,
    pub n: Vec<usize>,
    pub observable: Symbol,
    pub phase: Symbol,
    pub phase_curvature: f64,
    pub amplitude: Amplitude,
    pub t_max: f64,
    pub t_step: f64,
    pub dt: f64,
    pub base_nodes: usize,
    pub power_rms_max: f64,
    pub exp_improvement_max: f64,
}

impl ReductionParams {
    pub(super) fn read(f: &Fields<'_>, common: Common) -> Result<Self> {
        let hbar = hbar_list(f, &[], 2)?;
        let n = grid_sizes(&hbar, f.positive("n_factor", Some(2.0))?)?;
        let hamiltonian = symbol(f, "hamiltonian", "rotor-H")?;
        if hamiltonian.kinetic_plus_potential().is_none() {
            return Err(LabError::field("hamiltonian", "must be of the form xi^2/2 + V(x)"));
        }
        let slope = f.f64("phase_slope", Some(0.25))?;
        let eps = f.f64("phase_curvature", Some(0.25))?;
        let t_max = f.positive("t_max", Some(100.0))?;
        let t_step = f.positive("t_step", Some(1.0))?;
        let dt = f.positive("dt", Some(0.01))?;
        whole_steps("t_step", t_step, dt)?;
        check_samples(0.0, t_max, t_step)?;
        Ok(Self {
            common,
            hamiltonian,
            hbar,
            n,
            observable: symbol(f, "observable", "cos(m=1, n=-1)")?,
            phase: Symbol::curved_phase(slope, eps),
            phase_curvature: eps,
            amplitude: amplitude(f, "amplitude", "bump(center=pi, half_width=2.5, twist=1)")?,
            t_max,
            t_step,
            dt,
            base_nodes: f.integer("nodes", Some(400), 16, 1 << 20)? as usize,
            power_rms_max: f.positive("power_rms_max", Some(0.5))?,
            exp_improvement_max: f.positive("exp_improvement_max", Some(10.0))?,
        })
    }

    fn flow(&self) -> Result<HamiltonianFlow> {
        if self.hamiltonian.is_momentum_only() {
            Ok(HamiltonianFlow::rotor())
        } else {
            Ok(HamiltonianFlow::verlet(self.hamiltonian.clone(), self.dt)?)
        }
    }

    pub(super) fn run(&self, config: &Config) -> Result<Report> {
        let mut report = self.common.report(config);
        let patch = position_patch(self.phase.clone(), self.amplitude.clone())?;
        let flow = self.flow()?;
        let ts = times(0.0, self.t_max, self.t_step);
        // one node set that resolves the latest time; shear bound 1 + max|φ''|
        let shear = 1.0 + self.phase_curvature.abs();
        let nodes = nyquist_nodes(&patch, max_mode(&self.observable), self.t_max, shear, self.base_nodes);
        let (classical, xi_max) = transport_along(&patch, &self.observable, &flow, &ts, nodes)?;
        report.metric("classical_max_abs_xi", xi_max);
        let t_last = *ts.last().expect("nonempty time grid");
        let refined = transport_integral(&patch, &self.observable, &flow, t_last, 2 * nodes)?;
        report.summary.cross_checks.push(CrossCheck::new(
            format!("transport at t={t_last}, trajectory series vs direct quadrature with 2x nodes"),
            classical[classical.len() - 1],
            refined,
            1e-8,
        ));
        if flow.integrator() != semiclassical::classical::Integrator::ExactRotor {
            report.note(format!(
                "classical flow is Stormer-Verlet with the quantum step dt = {}; both discretizations share it",
                self.dt
            ));
        }

        let steps = whole_steps("t_step", self.t_step, self.dt)?;
        let mut envelopes = Vec::new();
        for (&h, &n) in self.hbar.iter().zip(&self.n) {
            let g = grid(n, h)?;
            let mut psi = synthesize_state(&g, &self.phase, &self.amplitude)?;
            let op = weyl_quantize(&self.observable, &g)?;
            let stepper = SplitStep::new(&g, &self.hamiltonian, self.dt)?;
            let mut warning = fmt_warnings(stepper.warnings());
            if xi_max >= g.max_momentum() {
                let w = format!(
                    "classical momenta reach {xi_max:.3} beyond the grid window {:.3}; raise n_factor",
                    g.max_momentum()
                );
                warning = if warning.is_empty() {
                    w
                } else {
                    format!("{warning}; {w}")
                };
            }
            if !warning.is_empty() {
                report.warn(format!("hbar={h}: {warning}"));
            }
            let mut scaled = Vec::with_capacity(ts.len());
            for (i, &t) in ts.iter().enumerate() {
                if i > 0 {
                    stepper.advance(&mut psi, steps)?;
                }
                let quantum = expectation(&psi, &op)?;
                let residual = (quantum - classical[i]).norm();
                scaled.push(residual / h);
                report.rows.push(Row {
                    hbar: Some(h),
                    n: Some(n),
                    t,
                    ev_quantum: Some(quantum),
                    ev_classical: Some(classical[i]),
                    predicted: Some(classical[i].re),
                    residual: Some(residual),
                    nodes: Some(nodes),
                    dt: Some(self.dt),
                    warning: warning.clone(),
                });
            }
            let env = running_envelope(&scaled);
            if env.iter().all(|&e| e <= DEFAULT_FLOOR) {
                report.note(format!(
                    "hbar={h}: the residual is at rounding level at every t; nothing to fit"
                ));
                report.check(
                    format!("polynomial_growth[hbar={h}]"),
                    0.0,
                    "residual at rounding level",
                    true,
                );
            } else {
                let power_pts: Vec<(f64, f64)> = ts.iter().zip(&env).map(|(&t, &e)| (1.0 + t, e)).collect();
                let exp_pts: Vec<(f64, f64)> = ts.iter().zip(&env).map(|(&t, &e)| (t, e)).collect();
                let power = decay_fit(&power_pts, DecayModel::Power, DEFAULT_FLOOR)?;
                let expo = decay_fit(&exp_pts, DecayModel::Exponential, DEFAULT_FLOOR)?;
                let beta = -power.rate;
                let improvement = power.rms / expo.rms.max(f64::MIN_POSITIVE);
                report.metric(format!("beta[hbar={h}]"), beta);
                report.metric(format!("exp_improvement[hbar={h}]"), improvement);
                report.summary.fits.push(FitRecord::new(
                    format!("residual/hbar envelope vs 1+t, hbar={h}"),
                    "power",
                    &power,
                ));
                report.summary.fits.push(FitRecord::new(
                    format!("residual/hbar envelope vs t, hbar={h}"),
                    "exponential",
                    &expo,
                ));
                report.check(
                    format!("polynomial_growth[hbar={h}]"),
                    power.rms,
                    format!("power-law log rms < {}", self.power_rms_max),
                    power.rms < self.power_rms_max,
                );
                report.check(
                    format!("not_exponential[hbar={h}]"),
                    improvement,
                    format!("power rms / exponential rms <= {}", self.exp_improvement_max),
                    improvement <= self.exp_improvement_max,
                );
            }
            envelopes.push((h, env));
        }
        // linear-in-ħ reading: envelope ratio between consecutive ħ values
        for w in envelopes.windows(2) {
            let (h0, e0) = &w[0];
            let (h1, e1) = &w[1];
            let ratio = e0.last().copied().unwrap_or(0.0) * h0 / (e1.last().copied().unwrap_or(0.0) * h1);
            report.metric(format!("residual_ratio[{h0}/{h1}]"), ratio);
        }
        Ok(report)
    }
}

/// `∫ a∘Φᵗ |ρ₀|²` at every `t`, one trajectory per node, and the largest
/// `|ξ|` any weighted trajectory reaches.
fn transport_along(
    patch: &semiclassical::classical::LagrangianPatch,
    a: &Symbol,
    flow: &HamiltonianFlow,
    ts: &[f64],
    nodes: usize,
) -> Result<(Vec<Complex64>, f64)> {
    let rule = patch.rule(nodes);
    let mut out = vec![Complex64::new(0.0, 0.0); ts.len()];
    let mut xi_max = 0.0f64;
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        let rho = patch.density(u);
        if rho == 0.0 {
            continue;
        }
        let path = flow.evolve_series(patch.embed(u)?, ts)?;
        for (acc, z) in out.iter_mut().zip(path) {
            xi_max = xi_max.max(z.xi.abs());
            *acc += a.value(z.x, z.xi) * (rho * w);
        }
    }
    Ok((out, xi_max))
}
