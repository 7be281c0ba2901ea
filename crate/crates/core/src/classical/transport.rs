use num_complex::Complex64;

use super::flow::HamiltonianFlow;
use super::patch::LagrangianPatch;
use crate::error::{Error, Result};
use crate::symbols::Symbol;

/// Smallest node count accepted by [`transport_integral`].
pub const MIN_NODES: usize = 16;

/// `∫ a(Φᵗ(embed(u))) |ρ₀(u)|² du` over the patch's parameter domain.
pub fn transport_integral(
    patch: &LagrangianPatch,
    a: &Symbol,
    flow: &HamiltonianFlow,
    t: f64,
    nodes: usize,
) -> Result<Complex64> {
    if nodes < MIN_NODES {
        return Err(Error::Config(format!(
            "transport quadrature needs at least {MIN_NODES} nodes, got {nodes}"
        )));
    }
    if a.dimension() != patch.dimension() || flow.dimension() != patch.dimension() {
        return Err(Error::Config(format!(
            "dimension mismatch: patch {}, observable {}, flow {}",
            patch.dimension(),
            a.dimension(),
            flow.dimension()
        )));
    }
    let rule = patch.rule(nodes);
    let mut acc = Complex64::new(0.0, 0.0);
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        let rho = patch.density(u);
        if rho == 0.0 {
            continue;
        }
        let z = flow.evolve(patch.embed(u)?, t);
        acc += a.value(z.x, z.xi) * (rho * w);
    }
    Ok(acc)
}

/// Node count that resolves the oscillation of `a∘Φᵗ` along the patch:
/// `4·M·(1 + |t|·shear)·width`, never below `base`.
///
/// `shear` bounds `|∂x/∂u|` growth per unit time (`|ω'|` for graphs over
/// the action, `|ω'|·max|φ''|` for graphs over the position).
pub fn nyquist_nodes(patch: &LagrangianPatch, max_mode: u64, t: f64, shear: f64, base: usize) -> usize {
    let m = max_mode.max(1) as f64;
    let need = 4.0 * m * (1.0 + t.abs() * shear) * patch.width();
    base.max(MIN_NODES).max(need.ceil() as usize)
}

/// One entry of [`transport_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportValue {
    pub t: f64,
    pub value: Complex64,
    pub nodes: usize,
}

/// Transport integrals at each of `times`, with node counts from
/// [`nyquist_nodes`]. Each time is computed independently.
pub fn transport_series(
    patch: &LagrangianPatch,
    a: &Symbol,
    flow: &HamiltonianFlow,
    times: &[f64],
    shear: f64,
    base_nodes: usize,
) -> Result<Vec<TransportValue>> {
    let max_mode = a
        .max_mode()
        .unwrap_or(crate::symbols::DEFAULT_CUTOFF as i64)
        .unsigned_abs();
    times
        .iter()
        .map(|&t| {
            let nodes = nyquist_nodes(patch, max_mode, t, shear, base_nodes);
            Ok(TransportValue {
                t,
                value: transport_integral(patch, a, flow, t, nodes)?,
                nodes,
            })
        })
        .collect()
}
