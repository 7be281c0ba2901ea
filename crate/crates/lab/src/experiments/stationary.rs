//! Pairing residual `R(ħ) = |⟨ψ, Op[a]ψ⟩ − ∫ a|ρ₀|²|` at `t = 0` and its
//! log-log slope in `ħ`.

use semiclassical::amplitude::Amplitude;
use semiclassical::classical::{decay_fit, transport_integral, DecayModel, HamiltonianFlow, DEFAULT_FLOOR};
use semiclassical::quantum::{expectation, synthesize_state, weyl_quantize, weyl_quantize_dense};
use semiclassical::symbols::Symbol;

use super::{amplitude, grid, grid_sizes, hbar_list, position_patch, symbol, Common, FIT_MIN_POINTS};
use crate::config::{Config, Fields};
use crate::error::Result;
use crate::report::{CrossCheck, FitRecord, Report, Row};

#[derive(Debug, Clone)]
pub struct StationaryParams {
    pub common: Common,
    pub hbar: Vec<f64>,
    pub n: Vec<usize>,
    pub observable: Symbol,
    pub phase: Symbol,
    pub amplitude: Amplitude,
    pub nodes: usize,
    pub slope_min: f64,
    pub slope_max: f64,
    /// Residuals at or below this count as an exact pairing.
    pub exact_tolerance: f64,
    pub dense_max_n: usize,
}

impl StationaryParams {
    pub(super) fn read(f: &Fields<'_>, common: Common) -> Result<Self> {
        let hbar = hbar_list(f, &[], FIT_MIN_POINTS)?;
        let n = grid_sizes(&hbar, f.positive("n_factor", Some(2.0))?)?;
        let slope = f.f64("phase_slope", Some(0.25))?;
        let eps = f.f64("phase_curvature", Some(0.25))?;
        Ok(Self {
            common,
            hbar,
            n,
            observable: symbol(f, "observable", "cos(m=1, n=-1)")?,
            phase: Symbol::curved_phase(slope, eps),
            amplitude: amplitude(f, "amplitude", "bump(center=pi, half_width=2.5, twist=1)")?,
            nodes: f.integer("nodes", Some(800), 16, 1 << 20)? as usize,
            slope_min: f.f64("slope_min", Some(0.8))?,
            slope_max: f.f64("slope_max", Some(1.2))?,
            exact_tolerance: f.f64_in("exact_tolerance", Some(1e-10), 0.0, 1.0)?,
            dense_max_n: f.integer("dense_max_n", Some(1024), 0, 1024)? as usize,
        })
    }

    pub(super) fn run(&self, config: &Config) -> Result<Report> {
        let mut report = self.common.report(config);
        let patch = position_patch(self.phase.clone(), self.amplitude.clone())?;
        let flow = HamiltonianFlow::rotor();
        let classical = transport_integral(&patch, &self.observable, &flow, 0.0, self.nodes)?;
        let refined = transport_integral(&patch, &self.observable, &flow, 0.0, 2 * self.nodes)?;
        report.summary.cross_checks.push(CrossCheck::new(
            "classical pairing, nodes vs 2x nodes",
            classical,
            refined,
            1e-10,
        ));

        let mut series = Vec::new();
        let mut dense_done = false;
        // smallest grid first for the dense cross-check
        for (&h, &n) in self.hbar.iter().zip(&self.n) {
            let g = grid(n, h)?;
            let psi = synthesize_state(&g, &self.phase, &self.amplitude)?;
            let op = weyl_quantize(&self.observable, &g)?;
            let quantum = expectation(&psi, &op)?;
            if !dense_done && n <= self.dense_max_n {
                let dense = expectation(&psi, &weyl_quantize_dense(&self.observable, &g)?)?;
                report.summary.cross_checks.push(CrossCheck::new(
                    format!("quantum pairing at N={n}, mode sum vs dense kernel"),
                    quantum,
                    dense,
                    1e-8,
                ));
                dense_done = true;
            }
            let residual = (quantum - classical).norm();
            series.push((h, residual));
            report.rows.push(Row {
                hbar: Some(h),
                n: Some(n),
                t: 0.0,
                ev_quantum: Some(quantum),
                ev_classical: Some(classical),
                predicted: Some(classical.re),
                residual: Some(residual),
                nodes: Some(self.nodes),
                ..Row::default()
            });
        }

        let worst = series.iter().map(|p| p.1).fold(0.0, f64::max);
        report.metric("max_residual", worst);
        if worst <= self.exact_tolerance {
            report.note("all residuals are at rounding level: the pairing is exact and no slope is fitted");
            report.check("exact_pairing", worst, format!("<= {:e}", self.exact_tolerance), true);
            return Ok(report);
        }
        // R ≈ c·ħ^s is a power law with rate −s
        let fit = decay_fit(&series, DecayModel::Power, DEFAULT_FLOOR)?;
        let slope = -fit.rate;
        report.metric("slope", slope);
        report
            .summary
            .fits
            .push(FitRecord::new("residual vs hbar", "power", &fit));
        report.check(
            "slope_window",
            slope,
            format!("in [{}, {}]", self.slope_min, self.slope_max),
            (self.slope_min..=self.slope_max).contains(&slope),
        );
        Ok(report)
    }
}
