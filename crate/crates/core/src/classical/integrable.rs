use std::f64::consts::TAU;

use num_complex::Complex64;

use super::patch::{Chart, LagrangianPatch};
use crate::error::{Error, Result};
use crate::symbols::{FourierTable, Symbol};

/// `Σ_{|m|≤M} σ(a)_m(I) · w_{−m} · e^{imω(I)t}` on an invariant torus.
///
/// `mass` holds `w_m = ∫ e^{−imu}|ρ₀|² du` (see
/// [`LagrangianPatch::mass_fourier_coefficients`]); the observable's
/// coefficients are the normalized angle coefficients at action `I`.
pub fn torus_prediction(
    action: f64,
    a: &Symbol,
    mass: &FourierTable,
    omega: impl Fn(f64) -> f64,
    t: f64,
    cutoff: usize,
) -> Result<Complex64> {
    let coeffs = a.fourier_coefficients(cutoff, action)?;
    let w = omega(action);
    Ok(coeffs
        .iter()
        .map(|(m, c)| c * mass.get(-m) * Complex64::from_polar(1.0, m as f64 * w * t))
        .sum())
}

/// `σ(a)₀(I) = (1/2π)∫ a(x, I) dx`, exact for trig polynomials of degree
/// below `nodes`.
pub fn angle_mean(a: &Symbol, action: f64, nodes: usize) -> Complex64 {
    if let Some(modes) = a.modes() {
        return modes.get(&0).map(|c| c.eval(action)).unwrap_or_default();
    }
    let n = nodes.max(1);
    (0..n)
        .map(|j| a.value(TAU * j as f64 / n as f64, action))
        .sum::<Complex64>()
        / n as f64
}

/// Limit `∫ σ(a)₀(I) |ρ̂(I)|² dI` of the transport integral for a patch
/// transversal to the invariant tori.
pub fn transversal_limit(patch: &LagrangianPatch, a: &Symbol, nodes: usize) -> Result<Complex64> {
    if patch.chart() != Chart::OverAction {
        return Err(Error::Config(
            "transversal limit needs a patch that is a graph over the action".into(),
        ));
    }
    if !a.is_periodic() {
        return Err(Error::Capability(format!(
            "symbol '{}' is not 2π-periodic in the angle",
            a.name()
        )));
    }
    let angle_nodes = 8 * crate::symbols::DEFAULT_CUTOFF + 16;
    Ok(patch
        .rule(nodes)
        .integrate(|i| angle_mean(a, i, angle_nodes) * patch.density(i)))
}
