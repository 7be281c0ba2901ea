//! Transport near a hyperbolic periodic orbit against its periodic-orbit
//! series: the remainder should decay at the contraction rate.

use std::f64::consts::TAU;
use std::sync::Arc;

use semiclassical::amplitude::smooth_bump;
use semiclassical::classical::{
    decay_fit, tail_envelope, DecayModel, ModelDensity, StableManifoldModel, DEFAULT_FLOOR,
};
use semiclassical::symbols::Symbol;

use super::{check_samples, symbol, times, Common};
use crate::config::{Config, Fields};
use crate::error::Result;
use crate::report::{CrossCheck, FitRecord, Report, Row};

#[derive(Debug, Clone)]
pub struct StableParams {
    pub common: Common,
    pub period: f64,
    pub rate: f64,
    pub observable: Symbol,
    pub y_center: f64,
    pub y_half_width: f64,
    pub r_amp: f64,
    pub r_mode: i64,
    pub t_max: f64,
    pub t_step: f64,
    pub cutoff: usize,
    pub r_nodes: usize,
    pub y_nodes: usize,
    pub exponent_ratio_min: f64,
    pub periodicity_tolerance: f64,
}

impl StableParams {
    pub(super) fn read(f: &Fields<'_>, common: Common) -> Result<Self> {
        let t_max = f.positive("t_max", Some(40.0))?;
        let t_step = f.positive("t_step", Some(0.25))?;
        check_samples(0.0, t_max, t_step)?;
        let r_amp = f.f64_in("r_amp", Some(0.5), -1.0, 1.0)?;
        Ok(Self {
            common,
            period: f.positive("period", Some(2.0))?,
            rate: f.positive("rate", Some(0.5))?,
            observable: symbol(f, "observable", "cos(m=1, n=1)")?,
            y_center: f.f64("y_center", Some(0.5))?,
            y_half_width: f.positive("y_half_width", Some(0.5))?,
            r_amp,
            r_mode: f.integer("r_mode", Some(1), -64, 64)?,
            t_max,
            t_step,
            cutoff: f.integer("cutoff", Some(8), 0, 256)? as usize,
            r_nodes: f.integer("r_nodes", Some(64), 4, 1 << 16)? as usize,
            y_nodes: f.integer("y_nodes", Some(128), 4, 1 << 16)? as usize,
            exponent_ratio_min: f.positive("exponent_ratio_min", Some(0.9))?,
            periodicity_tolerance: f.positive("periodicity_tolerance", Some(1e-12))?,
        })
    }

    fn density(&self) -> ModelDensity {
        let (c, w, amp, k, period) = (self.y_center, self.y_half_width, self.r_amp, self.r_mode, self.period);
        ModelDensity {
            value: Arc::new(move |r, y| smooth_bump((y - c) / w) * (1.0 + amp * (TAU * k as f64 * r / period).cos())),
            y_support: (c - w, c + w),
        }
    }

    pub(super) fn run(&self, config: &Config) -> Result<Report> {
        let mut report = self.common.report(config);
        let model = StableManifoldModel::new(self.period, self.rate)?;
        let density = self.density();
        let series = model.series(&self.observable, &density, self.cutoff, self.r_nodes, self.y_nodes)?;
        let refined = model.series(
            &self.observable,
            &density,
            self.cutoff,
            2 * self.r_nodes,
            2 * self.y_nodes,
        )?;
        report.summary.cross_checks.push(CrossCheck::new(
            "series value at t=0, nodes vs 2x nodes",
            series.value(0.0),
            refined.value(0.0),
            1e-10,
        ));

        let ts = times(0.0, self.t_max, self.t_step);
        let mut remainder = Vec::with_capacity(ts.len());
        let mut worst_period = 0.0f64;
        for &t in &ts {
            let direct = model.transport(&self.observable, &density, t, self.r_nodes, self.y_nodes);
            let predicted = series.value(t);
            worst_period = worst_period.max((predicted - series.value(t + self.period)).norm());
            let rem = (direct - predicted).norm();
            remainder.push(rem);
            report.rows.push(Row {
                t,
                ev_classical: Some(direct),
                predicted: Some(predicted.re),
                residual: Some(rem),
                nodes: Some(self.r_nodes * self.y_nodes),
                ..Row::default()
            });
        }
        let t_mid = ts[ts.len() / 2];
        report.summary.cross_checks.push(CrossCheck::new(
            format!("direct transport at t={t_mid}, nodes vs 2x nodes"),
            model.transport(&self.observable, &density, t_mid, self.r_nodes, self.y_nodes),
            model.transport(&self.observable, &density, t_mid, 2 * self.r_nodes, 2 * self.y_nodes),
            1e-10,
        ));
        report.check(
            "series_periodic",
            worst_period,
            format!("<= {:e}", self.periodicity_tolerance),
            worst_period <= self.periodicity_tolerance,
        );

        let env = tail_envelope(&remainder);
        let pts: Vec<(f64, f64)> = ts.iter().zip(&env).map(|(&t, &e)| (t, e)).collect();
        let need = self.exponent_ratio_min * self.rate;
        match decay_fit(&pts, DecayModel::Exponential, DEFAULT_FLOOR) {
            Ok(fit) => {
                report.metric("remainder_rate", fit.rate);
                report.metric("remainder_constant", fit.amplitude);
                report
                    .summary
                    .fits
                    .push(FitRecord::new("remainder tail envelope vs t", "exponential", &fit));
                report.check("remainder_rate", fit.rate, format!(">= {need}"), fit.rate >= need);
            }
            Err(semiclassical::Error::InsufficientData { .. }) => {
                report.note("the remainder is at rounding level throughout; the series is exact");
                report.check(
                    "remainder_rate",
                    f64::INFINITY,
                    format!(">= {need}"),
                    remainder.iter().all(|&r| r <= DEFAULT_FLOOR),
                );
            }
            Err(e) => return Err(e.into()),
        }
        let b0 = series.get(0);
        report.metric("b0", b0.re);
        Ok(report)
    }
}
