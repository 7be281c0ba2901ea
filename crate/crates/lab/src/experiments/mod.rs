//! Experiment runners. Each kind reads and validates its whole parameter
//! set up front (`*Params::from_config`), then computes.

mod catmap;
mod integrable;
mod reduction;
mod stable;
mod stationary;

use std::sync::Arc;

use semiclassical::amplitude::Amplitude;
use semiclassical::classical::{LagrangianPatch, MIN_POINTS as FIT_MIN_POINTS};
use semiclassical::quantum::Grid;
use semiclassical::symbols::Symbol;

pub use catmap::CatmapParams;
pub use integrable::{TorusParams, TransversalParams};
pub use reduction::ReductionParams;
pub use stable::StableParams;
pub use stationary::StationaryParams;

use crate::config::{relabel, Config, Fields, Kind};
use crate::error::{LabError, Result};
use crate::report::Report;

/// Keys every kind accepts.
#[derive(Debug, Clone, PartialEq)]
pub struct Common {
    pub name: String,
    pub seed: u64,
    pub output: String,
}

impl Common {
    fn read(f: &Fields<'_>, kind: Kind) -> Result<Self> {
        let name = f.string("name", kind.as_str());
        if name.is_empty()
            || name.len() > 128
            || !name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
            || name.starts_with('.')
        {
            return Err(LabError::field("name", format!("'{name}' is not a plain file stem")));
        }
        Ok(Self {
            name,
            seed: f.u64("seed", 0)?,
            output: f.string("output", "out"),
        })
    }

    pub(crate) fn report(&self, config: &Config) -> Report {
        Report::new(config.kind().as_str(), &self.name, config.echo(), self.seed)
    }
}

/// Fully validated parameters of one run.
#[derive(Debug, Clone)]
pub enum Experiment {
    StationaryPhase(StationaryParams),
    ReductionScan(ReductionParams),
    IntegrableTorus(TorusParams),
    IntegrableTransversal(TransversalParams),
    CatmapMixing(CatmapParams),
    StableManifold(StableParams),
}

impl Experiment {
    /// Validates every field; no computation happens here.
    pub fn from_config(config: &Config) -> Result<Self> {
        let f = config.fields();
        let common = Common::read(&f, config.kind())?;
        let exp = match config.kind() {
            Kind::StationaryPhase => Self::StationaryPhase(StationaryParams::read(&f, common)?),
            Kind::ReductionScan => Self::ReductionScan(ReductionParams::read(&f, common)?),
            Kind::IntegrableTorus => Self::IntegrableTorus(TorusParams::read(&f, common)?),
            Kind::IntegrableTransversal => Self::IntegrableTransversal(TransversalParams::read(&f, common)?),
            Kind::CatmapMixing => Self::CatmapMixing(CatmapParams::read(&f, common)?),
            Kind::StableManifold => Self::StableManifold(StableParams::read(&f, common)?),
        };
        f.finish()?;
        Ok(exp)
    }

    pub fn common(&self) -> &Common {
        match self {
            Self::StationaryPhase(p) => &p.common,
            Self::ReductionScan(p) => &p.common,
            Self::IntegrableTorus(p) => &p.common,
            Self::IntegrableTransversal(p) => &p.common,
            Self::CatmapMixing(p) => &p.common,
            Self::StableManifold(p) => &p.common,
        }
    }

    pub fn run(&self, config: &Config) -> Result<Report> {
        let report = match self {
            Self::StationaryPhase(p) => p.run(config),
            Self::ReductionScan(p) => p.run(config),
            Self::IntegrableTorus(p) => p.run(config),
            Self::IntegrableTransversal(p) => p.run(config),
            Self::CatmapMixing(p) => p.run(config),
            Self::StableManifold(p) => p.run(config),
        }?;
        Ok(report.finalize())
    }
}

/// Validates and runs a config.
pub fn run(config: &Config) -> Result<Report> {
    Experiment::from_config(config)?.run(config)
}

/// Reads a symbol-valued field.
pub(crate) fn symbol(f: &Fields<'_>, key: &'static str, default: &str) -> Result<Symbol> {
    f.spec(key, Some(default))?.to_symbol().map_err(|e| relabel(key, e))
}

pub(crate) fn amplitude(f: &Fields<'_>, key: &'static str, default: &str) -> Result<Amplitude> {
    f.spec(key, Some(default))?.to_amplitude().map_err(|e| relabel(key, e))
}

/// A list of `ħ` values, each in `(0, 1]`, at least `min` of them, sorted
/// from large to small.
pub(crate) fn hbar_list(f: &Fields<'_>, default: &[f64], min: usize) -> Result<Vec<f64>> {
    let mut h = f.f64_list("hbar", Some(default))?;
    if h.len() < min {
        return Err(LabError::field(
            "hbar",
            format!("need at least {min} values, got {}", h.len()),
        ));
    }
    if let Some(bad) = h.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
        return Err(LabError::field("hbar", format!("{bad} is outside (0, 1]")));
    }
    h.sort_by(|a, b| b.total_cmp(a));
    if h.windows(2).any(|w| w[0] == w[1]) {
        return Err(LabError::field("hbar", "values must be distinct"));
    }
    Ok(h)
}

/// `N = factor/ħ` for each `ħ`, which must be a power of two in the grid
/// range.
pub(crate) fn grid_sizes(hbar: &[f64], factor: f64) -> Result<Vec<usize>> {
    hbar.iter()
        .map(|&h| {
            let n = factor / h;
            let ok = n.fract() == 0.0
                && n >= Grid::MIN_POINTS as f64
                && n <= Grid::MAX_POINTS as f64
                && (n as usize).is_power_of_two();
            if !ok {
                return Err(LabError::field(
                    "n_factor",
                    format!(
                        "n_factor/hbar = {n} for hbar = {h} is not a power of two in [{}, {}]",
                        Grid::MIN_POINTS,
                        Grid::MAX_POINTS
                    ),
                ));
            }
            Ok(n as usize)
        })
        .collect()
}

pub(crate) fn grid(n: usize, hbar: f64) -> Result<Arc<Grid>> {
    Ok(Grid::new(n, hbar)?)
}

/// Position patch on the amplitude's support, or the whole circle when the
/// amplitude has none (or wraps).
pub(crate) fn position_patch(phase: Symbol, amp: Amplitude) -> Result<LagrangianPatch> {
    match amp.support() {
        Some((lo, hi)) if hi - lo < std::f64::consts::TAU => {
            LagrangianPatch::over_position(phase, amp, lo, hi).map_err(|e| relabel("amplitude", e.into()))
        }
        _ => Ok(LagrangianPatch::over_circle(phase, amp)),
    }
}

/// Sample times `t_min, t_min + step, …` up to `t_max` inclusive.
pub(crate) fn times(t_min: f64, t_max: f64, step: f64) -> Vec<f64> {
    let count = ((t_max - t_min) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| t_min + i as f64 * step).collect()
}

/// The sample grid must be long enough to fit and short enough to run.
pub(crate) fn check_samples(t_min: f64, t_max: f64, step: f64) -> Result<()> {
    let count = (t_max - t_min) / step;
    if count > 1e5 {
        return Err(LabError::field("t_step", "more than 1e5 samples"));
    }
    let samples = times(t_min, t_max, step).len();
    if samples < FIT_MIN_POINTS {
        return Err(LabError::field(
            "t_max",
            format!("{samples} samples, the fits need at least {FIT_MIN_POINTS}"),
        ));
    }
    Ok(())
}

/// Number of `dt` steps in `span`, which must be a whole multiple.
pub(crate) fn whole_steps(key: &str, span: f64, dt: f64) -> Result<usize> {
    let k = (span / dt).round();
    if k < 1.0 || (k * dt - span).abs() > 1e-9 * span.max(1.0) {
        return Err(LabError::field(
            key,
            format!("{span} is not a whole multiple of dt = {dt}"),
        ));
    }
    Ok(k as usize)
}

/// Largest angle mode of a symbol, for quadrature sizing.
pub(crate) fn max_mode(a: &Symbol) -> u64 {
    a.max_mode().map(|m| m.unsigned_abs()).unwrap_or(8).max(1)
}

pub(crate) fn fmt_warnings<T: std::fmt::Display>(w: &[T]) -> String {
    w.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("; ")
}

/// Spectral peak of a uniformly sampled series: `(ω_peak, bin width)`.
pub(crate) fn spectral_peak(values: &[f64], step: f64) -> (f64, f64) {
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let span = n as f64 * step;
    let bin = std::f64::consts::TAU / span;
    let mut best = (0.0, 0usize);
    for k in 1..n / 2 {
        let w = bin * k as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            let (s, c) = (w * j as f64 * step).sin_cos();
            re += (v - mean) * c;
            im += (v - mean) * s;
        }
        let p = re * re + im * im;
        if p > best.0 {
            best = (p, k);
        }
    }
    (bin * best.1 as f64, bin)
}
