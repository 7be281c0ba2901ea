//! Free rotor runs: a state on one invariant torus (quasi-periodic EV) and a
//! state transversal to the tori (EV relaxes to the torus average).

use semiclassical::amplitude::Amplitude;
use semiclassical::classical::{
    decay_fit, running_envelope, tail_envelope, torus_prediction, transport_integral, transport_series,
    transversal_limit, DecayModel, HamiltonianFlow, LagrangianPatch, DEFAULT_FLOOR,
};
use semiclassical::quantum::{
    expectation, synthesize_momentum_state, synthesize_state, weyl_quantize, SplitStep, WaveFunction,
};
use semiclassical::symbols::Symbol;
use semiclassical::{Complex64, Error as CoreError};

use super::{amplitude, check_samples, grid, grid_sizes, hbar_list, spectral_peak, symbol, times, whole_steps, Common};
use crate::config::{Config, Fields};
use crate::error::{LabError, Result};
use crate::report::{CrossCheck, FitRecord, Report, Row};

/// Quadrature nodes for the torus mass coefficients.
const MASS_NODES: usize = 512;

#[derive(Debug, Clone)]
pub struct TorusParams {
    pub common: Common,
    pub hbar: Vec<f64>,
    pub n: Vec<usize>,
    pub action: f64,
    pub amplitude: Amplitude,
    pub observable: Symbol,
    pub t_max: f64,
    pub t_step: f64,
    pub dt: f64,
    pub cutoff: usize,
    pub c_ratio_max: f64,
}

impl TorusParams {
    pub(super) fn read(f: &Fields<'_>, common: Common) -> Result<Self> {
        let hbar = hbar_list(f, &[], 2)?;
        let n = grid_sizes(&hbar, f.positive("n_factor", Some(1.0))?)?;
        let action = f.f64("action", Some(0.25))?;
        for (&h, &n) in hbar.iter().zip(&n) {
            let k = action / h;
            if (k - k.round()).abs() > 1e-9 {
                return Err(LabError::field(
                    "action",
                    format!(
                        "{action} is not a multiple of hbar = {h}; the nearest admissible value is {}",
                        k.round() * h
                    ),
                ));
            }
            if k.abs() + 1.0 >= (n / 2) as f64 {
                return Err(LabError::field(
                    "action",
                    format!("{action} is outside the momentum grid at hbar = {h}"),
                ));
            }
        }
        // the window never reaches ħ^{-1/2} at the coarsest ħ
        let horizon = hbar[0].powf(-0.5).min(50.0);
        let t_max = f.f64_in("t_max", Some(horizon), 0.0, horizon)?;
        let t_step = f.positive("t_step", Some(0.25))?;
        let dt = f.positive("dt", Some(t_step))?;
        whole_steps("t_step", t_step, dt)?;
        check_samples(0.0, t_max, t_step)?;
        Ok(Self {
            common,
            hbar,
            n,
            action,
            amplitude: amplitude(f, "amplitude", "harmonic(m=1)")?,
            observable: symbol(f, "observable", "cos(m=1, n=-1)")?,
            t_max,
            t_step,
            dt,
            cutoff: f.integer("cutoff", Some(16), 1, 256)? as usize,
            c_ratio_max: f.positive("c_ratio_max", Some(3.0))?,
        })
    }

    pub(super) fn run(&self, config: &Config) -> Result<Report> {
        let mut report = self.common.report(config);
        let phase = Symbol::linear_phase(self.action);
        let patch = LagrangianPatch::over_circle(phase.clone(), self.amplitude.clone());
        let mass = patch.mass_fourier_coefficients(self.cutoff, MASS_NODES);
        let ts = times(0.0, self.t_max, self.t_step);
        let predicted: Vec<Complex64> = ts
            .iter()
            .map(|&t| torus_prediction(self.action, &self.observable, &mass, |i| i, t, self.cutoff))
            .collect::<std::result::Result<_, _>>()?;
        let t_last = *ts.last().expect("nonempty time grid");
        let direct = transport_integral(
            &patch,
            &self.observable,
            &HamiltonianFlow::rotor(),
            t_last,
            2 * MASS_NODES,
        )?;
        report.summary.cross_checks.push(CrossCheck::new(
            format!("torus series vs direct transport quadrature at t={t_last}"),
            predicted[predicted.len() - 1],
            direct,
            1e-10,
        ));

        let steps = whole_steps("t_step", self.t_step, self.dt)?;
        let hamiltonian = Symbol::rotor_hamiltonian();
        let mut scaled = Vec::new();
        let mut first_series = Vec::new();
        for (&h, &n) in self.hbar.iter().zip(&self.n) {
            let g = grid(n, h)?;
            let mut psi = synthesize_state(&g, &phase, &self.amplitude).map_err(winding_hint)?;
            let op = weyl_quantize(&self.observable, &g)?;
            let stepper = SplitStep::new(&g, &hamiltonian, self.dt)?;
            let mut gaps = Vec::with_capacity(ts.len());
            let mut evs = Vec::with_capacity(ts.len());
            for (i, &t) in ts.iter().enumerate() {
                if i > 0 {
                    stepper.advance(&mut psi, steps)?;
                }
                let quantum = expectation(&psi, &op)?;
                let gap = (quantum - predicted[i]).norm();
                gaps.push(gap);
                evs.push(quantum.re);
                report.rows.push(Row {
                    hbar: Some(h),
                    n: Some(n),
                    t,
                    ev_quantum: Some(quantum),
                    ev_classical: Some(predicted[i]),
                    predicted: Some(predicted[i].re),
                    residual: Some(gap),
                    nodes: Some(MASS_NODES),
                    dt: Some(self.dt),
                    ..Row::default()
                });
            }
            report.metric(format!("sup_gap[hbar={h}]"), gaps.iter().copied().fold(0.0, f64::max));
            if first_series.is_empty() {
                first_series = evs;
            }
            scaled.push((h, gaps));
        }

        // β from the joint envelope of gap/ħ, then C_ħ = sup gap/(ħ(1+t)^β)
        let joint: Vec<f64> = (0..ts.len())
            .map(|i| scaled.iter().map(|(h, g)| g[i] / h).fold(0.0, f64::max))
            .collect();
        let env = running_envelope(&joint);
        if env.iter().all(|&e| e <= DEFAULT_FLOOR) {
            report.note("the gap is at rounding level at every t; C and beta are not fitted");
            report.check("c_stable", 1.0, format!("max C / min C < {}", self.c_ratio_max), true);
        } else {
            let pts: Vec<(f64, f64)> = ts.iter().zip(&env).map(|(&t, &e)| (1.0 + t, e)).collect();
            let fit = decay_fit(&pts, DecayModel::Power, DEFAULT_FLOOR)?;
            let beta = (-fit.rate).max(0.0);
            report.metric("beta", beta);
            report
                .summary
                .fits
                .push(FitRecord::new("joint gap/hbar envelope vs 1+t", "power", &fit));
            let cs: Vec<f64> = scaled
                .iter()
                .map(|(h, g)| {
                    ts.iter()
                        .zip(g)
                        .map(|(&t, &v)| v / (h * (1.0 + t).powf(beta)))
                        .fold(0.0, f64::max)
                })
                .collect();
            for ((h, _), c) in scaled.iter().zip(&cs) {
                report.metric(format!("C[hbar={h}]"), *c);
            }
            let (lo, hi) = cs
                .iter()
                .fold((f64::INFINITY, 0.0f64), |(lo, hi), &c| (lo.min(c), hi.max(c)));
            let ratio = if lo > 0.0 { hi / lo } else { f64::INFINITY };
            report.check(
                "c_stable",
                ratio,
                format!("max C / min C < {}", self.c_ratio_max),
                ratio < self.c_ratio_max,
            );
        }

        let predicted_re: Vec<f64> = predicted.iter().map(|z| z.re).collect();
        let varies = predicted_re.iter().any(|v| (v - predicted_re[0]).abs() > 1e-12);
        if varies {
            let (peak, bin) = spectral_peak(&first_series, self.t_step);
            let (oracle, _) = spectral_peak(&predicted_re, self.t_step);
            report.metric("spectral_peak", peak);
            report.metric("spectral_bin", bin);
            report.metric("spectral_peak_predicted", oracle);
            let err = (peak - self.action.abs()).abs();
            report.check("spectral_peak", err, format!("|peak - I0| <= {bin}"), err <= bin);
        } else {
            report.note("the prediction is constant in t; no spectral peak is checked");
        }
        Ok(report)
    }
}

fn winding_hint(e: CoreError) -> LabError {
    match e {
        CoreError::Winding { .. } => LabError::field("action", format!("{e}; snap the action to a multiple of hbar")),
        other => other.into(),
    }
}

#[derive(Debug, Clone)]
pub struct TransversalParams {
    pub common: Common,
    pub hbar: Vec<f64>,
    pub n: Vec<usize>,
    pub position: f64,
    pub amplitude: Amplitude,
    pub observable: Symbol,
    pub t_min: f64,
    pub t_max: f64,
    pub t_step: f64,
    pub dt: f64,
    pub base_nodes: usize,
    pub exponent_min: f64,
}

impl TransversalParams {
    pub(super) fn read(f: &Fields<'_>, common: Common) -> Result<Self> {
        let hbar = hbar_list(f, &[], 1)?;
        let n = grid_sizes(&hbar, f.positive("n_factor", Some(4.0))?)?;
        let amplitude = amplitude(f, "amplitude", "sine(lo=0.5, hi=1.5, power=1)")?;
        let Some((lo, hi)) = amplitude.support() else {
            return Err(LabError::field("amplitude", "needs compact support in the action"));
        };
        for (&h, &n) in hbar.iter().zip(&n) {
            let top = h * (n / 2) as f64;
            if lo.abs().max(hi.abs()) >= top {
                return Err(LabError::field(
                    "amplitude",
                    format!("support [{lo}, {hi}] exceeds the momentum grid |xi| < {top} at hbar = {h}"),
                ));
            }
        }
        let t_min = f.f64_in("t_min", Some(10.0), 0.0, 1e6)?;
        let t_max = f.positive("t_max", Some(200.0))?;
        if t_max <= t_min {
            return Err(LabError::field("t_max", "must exceed t_min"));
        }
        let t_step = f.positive("t_step", Some(0.5))?;
        let dt = f.positive("dt", Some(t_step))?;
        whole_steps("t_step", t_step, dt)?;
        if t_min > 0.0 {
            whole_steps("t_min", t_min, dt)?;
        }
        check_samples(t_min, t_max, t_step)?;
        Ok(Self {
            common,
            hbar,
            n,
            position: f.f64("position", Some(1.0))?,
            amplitude,
            observable: symbol(f, "observable", "cos(m=1) + plane")?,
            t_min,
            t_max,
            t_step,
            dt,
            base_nodes: f.integer("nodes", Some(256), 16, 1 << 20)? as usize,
            exponent_min: f.f64("exponent_min", Some(0.9))?,
        })
    }

    fn patch(&self) -> Result<LagrangianPatch> {
        let (lo, hi) = self.amplitude.support().expect("validated support");
        Ok(LagrangianPatch::over_action(
            Symbol::linear_phase(self.position),
            self.amplitude.clone(),
            lo,
            hi,
        )?)
    }

    pub(super) fn run(&self, config: &Config) -> Result<Report> {
        let mut report = self.common.report(config);
        let patch = self.patch()?;
        let flow = HamiltonianFlow::rotor();
        let limit = transversal_limit(&patch, &self.observable, 4 * self.base_nodes)?;
        let limit_check = transversal_limit(&patch, &self.observable, 8 * self.base_nodes)?;
        report.summary.cross_checks.push(CrossCheck::new(
            "transversal limit, nodes vs 2x nodes",
            limit,
            limit_check,
            1e-10,
        ));
        report.metric("limit", limit.re);

        let ts = times(self.t_min, self.t_max, self.t_step);
        // the rotor shears the action graph at unit rate
        let classical = transport_series(&patch, &self.observable, &flow, &ts, 1.0, self.base_nodes)?;
        let last = classical[classical.len() - 1];
        let refined = transport_integral(&patch, &self.observable, &flow, last.t, 2 * last.nodes)?;
        report.summary.cross_checks.push(CrossCheck::new(
            format!("transport at t={}, nodes vs 2x nodes", last.t),
            last.value,
            refined,
            1e-10,
        ));

        let distance: Vec<f64> = classical.iter().map(|c| (c.value - limit).norm()).collect();
        let env = tail_envelope(&distance);
        let pts: Vec<(f64, f64)> = ts.iter().zip(&env).map(|(&t, &e)| (t, e)).collect();
        match decay_fit(&pts, DecayModel::Power, DEFAULT_FLOOR) {
            Ok(fit) => {
                report.metric("exponent", fit.rate);
                report
                    .summary
                    .fits
                    .push(FitRecord::new("|transport - limit| tail envelope vs t", "power", &fit));
                report.check(
                    "decay_exponent",
                    fit.rate,
                    format!(">= {}", self.exponent_min),
                    fit.rate >= self.exponent_min,
                );
            }
            Err(semiclassical::Error::InsufficientData { .. }) => {
                let worst = distance.iter().copied().fold(0.0, f64::max);
                report.note("the transport equals its limit to rounding on the whole window; nothing to fit");
                report.check(
                    "decay_exponent",
                    f64::INFINITY,
                    format!(">= {}", self.exponent_min),
                    worst <= DEFAULT_FLOOR,
                );
            }
            Err(e) => return Err(e.into()),
        }

        let first = whole_steps("t_min", self.t_min, self.dt).unwrap_or(0);
        let steps = whole_steps("t_step", self.t_step, self.dt)?;
        let hamiltonian = Symbol::rotor_hamiltonian();
        for (&h, &n) in self.hbar.iter().zip(&self.n) {
            let g = grid(n, h)?;
            let mut psi: WaveFunction =
                synthesize_momentum_state(&g, &Symbol::linear_phase(self.position), &self.amplitude)?;
            let op = weyl_quantize(&self.observable, &g)?;
            let stepper = SplitStep::new(&g, &hamiltonian, self.dt)?;
            if self.t_min > 0.0 {
                stepper.advance(&mut psi, first)?;
            }
            let mut h_term = 0.0f64;
            let mut to_limit = 0.0f64;
            for (i, c) in classical.iter().enumerate() {
                if i > 0 {
                    stepper.advance(&mut psi, steps)?;
                }
                let quantum = expectation(&psi, &op)?;
                let residual = (quantum - c.value).norm();
                h_term = h_term.max(residual);
                to_limit = (quantum - limit).norm();
                report.rows.push(Row {
                    hbar: Some(h),
                    n: Some(n),
                    t: c.t,
                    ev_quantum: Some(quantum),
                    ev_classical: Some(c.value),
                    predicted: Some(limit.re),
                    residual: Some(residual),
                    nodes: Some(c.nodes),
                    dt: Some(self.dt),
                    ..Row::default()
                });
            }
            report.metric(format!("hbar_term[hbar={h}]"), h_term);
            report.metric(format!("quantum_to_limit_at_t_max[hbar={h}]"), to_limit);
        }
        report.note(
            "quantum distance to the limit splits into the classical decay plus an hbar term, \
             reported as max_t |quantum - transport| per hbar",
        );
        Ok(report)
    }
}
