use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::symbols::{Point, Symbol};

/// Smallest `|∇H|` on the shell before it counts as critical.
pub const SINGULAR_THRESHOLD: f64 = 1e-6;

const MAX_STEPS: usize = 50_000_000;

struct Shell<'a> {
    potential: Symbol,
    h: &'a Symbol,
}

impl Shell<'_> {
    fn v(&self, x: f64) -> f64 {
        self.potential.value(x, 0.0).re
    }

    fn dv(&self, x: f64) -> f64 {
        // the potential is a trig polynomial, so the analytic gradient exists
        self.potential.grad((x, 0.0)).map(|g| g.0.re).unwrap_or(0.0)
    }

    fn rhs(&self, z: Point) -> Point {
        Point::new(z.xi, -self.dv(z.x))
    }

    fn rk4(&self, z: Point, h: f64) -> Point {
        let add = |a: Point, b: Point, s: f64| Point::new(a.x + s * b.x, a.xi + s * b.xi);
        let k1 = self.rhs(z);
        let k2 = self.rhs(add(z, k1, 0.5 * h));
        let k3 = self.rhs(add(z, k2, 0.5 * h));
        let k4 = self.rhs(add(z, k3, h));
        Point::new(
            z.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
            z.xi + h / 6.0 * (k1.xi + 2.0 * k2.xi + 2.0 * k3.xi + k4.xi),
        )
    }

    /// Time for the orbit through `start` to return to the section
    /// `x = start.x (+ 2π·winding)` with the same sign of `ξ`.
    fn period(&self, start: Point, h: f64, winding: f64) -> Result<f64> {
        let target = start.x + TAU * winding;
        let mut z = start;
        let mut t = 0.0;
        let mut left = false;
        for _ in 0..MAX_STEPS {
            let next = self.rk4(z, h);
            let crossed = if winding != 0.0 {
                (z.x - target) * (next.x - target) <= 0.0 && next.x != z.x
            } else {
                left && z.x < target && next.x >= target && next.xi > 0.0
            };
            if winding == 0.0 && next.xi < 0.0 {
                left = true;
            }
            if crossed {
                // cubic Hermite in time for x(t); dx/dt = ξ at both ends
                let s = hermite_root(z.x - target, next.x - target, z.xi * h, next.xi * h);
                return Ok(t + s * h);
            }
            z = next;
            t += h;
        }
        Err(Error::Capability(format!(
            "no return to the section after {MAX_STEPS} steps; shell of '{}' too close to a separatrix",
            self.h.name()
        )))
    }

    /// Time average of `a` over one period by the periodic trapezoid rule.
    fn time_average(&self, a: &Symbol, start: Point, period: f64, samples: usize) -> f64 {
        let h = period / samples as f64;
        let mut z = start;
        let mut acc = 0.0;
        for _ in 0..samples {
            acc += a.value(z.x, z.xi).re;
            z = self.rk4(z, h);
        }
        acc / samples as f64
    }
}

/// Root in `[0, 1]` of the cubic Hermite interpolant with end values
/// `f0, f1` and end slopes `d0, d1` (per unit parameter).
fn hermite_root(f0: f64, f1: f64, d0: f64, d1: f64) -> f64 {
    let p = |s: f64| {
        let s2 = s * s;
        let s3 = s2 * s;
        (2.0 * s3 - 3.0 * s2 + 1.0) * f0 + (s3 - 2.0 * s2 + s) * d0 + (-2.0 * s3 + 3.0 * s2) * f1 + (s3 - s2) * d1
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    let flo = p(lo);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if (p(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Normalized Liouville average of `a` over `{H = E}` for `H = ξ²/2 + V(x)`.
///
/// Each connected component is parametrized by the flow (RK4) and `a` is
/// time-averaged over one period with `samples` points; components are
/// weighted by their period, which is their Liouville measure.
pub fn liouville_average(h: &Symbol, energy: f64, a: &Symbol, samples: usize) -> Result<f64> {
    if h.dimension() != 1 || a.dimension() != 1 {
        return Err(Error::Config(
            "Liouville averages are implemented for d = 1 only".into(),
        ));
    }
    let potential = h
        .kinetic_plus_potential()
        .ok_or_else(|| Error::Capability(format!("'{}' is not of the form xi^2/2 + V(x)", h.name())))?;
    let samples = samples.max(64);
    let shell = Shell { potential, h };

    // scan the circle for the accessible region and the gradient bound
    let scan = 16 * samples;
    let xs: Vec<f64> = (0..scan).map(|j| TAU * j as f64 / scan as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| shell.v(x)).collect();
    let mut min_grad = f64::INFINITY;
    for j in 0..scan {
        let gap = energy - vs[j];
        if gap >= 0.0 {
            min_grad = min_grad.min((shell.dv(xs[j]).powi(2) + 2.0 * gap).sqrt());
        }
        // turning points between samples, located by bisection
        let k = (j + 1) % scan;
        let next_gap = energy - vs[k];
        if (gap >= 0.0) != (next_gap >= 0.0) {
            let (mut lo, mut hi) = (xs[j], if k == 0 { TAU } else { xs[k] });
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if ((energy - shell.v(mid)) >= 0.0) == (gap >= 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            min_grad = min_grad.min(shell.dv(0.5 * (lo + hi)).abs());
        }
    }
    if !min_grad.is_finite() {
        return Err(Error::Config(format!("energy {energy} is below the potential minimum")));
    }
    if min_grad < SINGULAR_THRESHOLD {
        return Err(Error::SingularShell { energy, min_grad });
    }

    let v_min = vs.iter().cloned().fold(f64::INFINITY, f64::min);
    let speed = (2.0 * (energy - v_min)).sqrt().max(1e-3);
    let step = TAU / (4.0 * samples as f64 * speed);

    let mut components: Vec<(f64, f64)> = Vec::new();
    if vs.iter().all(|&v| v < energy) {
        for sign in [1.0, -1.0] {
            let start = Point::new(0.0, sign * (2.0 * (energy - shell.v(0.0))).sqrt());
            let period = shell.period(start, step, sign)?;
            components.push((period, shell.time_average(a, start, period, samples)));
        }
    } else {
        // one librating orbit per well: start at the well bottom, moving right
        for start_x in well_bottoms(&xs, &vs, energy) {
            let start = Point::new(start_x, (2.0 * (energy - shell.v(start_x))).sqrt());
            let period = shell.period(start, step, 0.0)?;
            components.push((period, shell.time_average(a, start, period, samples)));
        }
    }
    let total: f64 = components.iter().map(|c| c.0).sum();
    Ok(components.iter().map(|(w, avg)| w * avg).sum::<f64>() / total)
}

/// Minimum of `V` in each arc of `{V < E}` on the scanned circle.
fn well_bottoms(xs: &[f64], vs: &[f64], energy: f64) -> Vec<f64> {
    let n = xs.len();
    let Some(first_out) = vs.iter().position(|&v| v >= energy) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut best: Option<usize> = None;
    for k in 1..=n {
        let j = (first_out + k) % n;
        if vs[j] < energy {
            if best.is_none_or(|b| vs[j] < vs[b]) {
                best = Some(j);
            }
        } else if let Some(b) = best.take() {
            out.push(xs[b]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_observable_averages_to_one() {
        let h = Symbol::pendulum_hamiltonian(1.0);
        let v = liouville_average(&h, 2.0, &Symbol::constant(1.0), 256).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let v = liouville_average(&h, 0.0, &Symbol::constant(1.0), 256).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotor_shell_averages_cosine_to_zero() {
        let v = liouville_average(
            &Symbol::rotor_hamiltonian(),
            0.5,
            &Symbol::cosine(1, 0.0, 1.0, 0.0),
            256,
        )
        .unwrap();
        assert!(v.abs() < 1e-10, "{v}");
    }

    #[test]
    fn separatrix_is_singular() {
        let h = Symbol::pendulum_hamiltonian(1.0);
        let r = liouville_average(&h, 1.0, &Symbol::constant(1.0), 256);
        assert!(matches!(r, Err(Error::SingularShell { .. })), "{r:?}");
    }

    #[test]
    fn hermite_root_of_a_line() {
        let s = hermite_root(-1.0, 1.0, 2.0, 2.0);
        assert!((s - 0.5).abs() < 1e-12);
    }
}
