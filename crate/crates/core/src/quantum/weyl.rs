use std::sync::Arc;

use num_complex::Complex64;

use super::grid::Grid;
use super::state::WaveFunction;
use crate::error::{Error, Result};
use crate::symbols::{Representation, Symbol};

/// Largest grid accepted by the dense kernel build.
pub const DENSE_LIMIT: usize = 1024;

/// One angle mode of a mode-sum operator: input slot `i` is sent to
/// `target[i]` with weight `weight[i] = c_m((ξ_k + ξ_{k'})/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeTable {
    pub m: i64,
    pub target: Vec<usize>,
    pub weight: Vec<Complex64>,
}

/// Storage of a Weyl operator.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorForm {
    /// Multiplication by `f(x_j)`.
    Position(Vec<Complex64>),
    /// Multiplication by `g(ξ_k)` in momentum space (FFT order).
    Momentum(Vec<Complex64>),
    /// `Σ_m e^{imx} ∘ c_m(ξ̂ + ħm/2)`, stored in the momentum basis.
    ModeSum(Vec<ModeTable>),
    /// Dense momentum-basis kernel, row-major `[k_out][k_in]` in FFT order.
    Dense(Vec<Complex64>),
}

/// `Op[a]` on a fixed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylOperator {
    grid: Arc<Grid>,
    form: OperatorForm,
    hermitian: bool,
}

impl WeylOperator {
    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn form(&self) -> &OperatorForm {
        &self.form
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// Applies the operator to `psi`.
    pub fn apply(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        psi.check_grid(&self.grid)?;
        let n = self.grid.n();
        let out = match &self.form {
            OperatorForm::Position(f) => psi.amplitudes().iter().zip(f).map(|(a, b)| a * b).collect(),
            OperatorForm::Momentum(g) => {
                let mut hat = self.grid.forward(psi.amplitudes());
                hat.iter_mut().zip(g).for_each(|(a, b)| *a *= b);
                self.grid.inverse_in_place(&mut hat);
                hat
            }
            OperatorForm::ModeSum(tables) => {
                let hat = self.grid.forward(psi.amplitudes());
                let mut acc = vec![Complex64::new(0.0, 0.0); n];
                for t in tables {
                    for ((h, &dst), w) in hat.iter().zip(&t.target).zip(&t.weight) {
                        acc[dst] += w * h;
                    }
                }
                self.grid.inverse_in_place(&mut acc);
                acc
            }
            OperatorForm::Dense(k) => {
                let hat = self.grid.forward(psi.amplitudes());
                let mut acc: Vec<Complex64> = k
                    .chunks_exact(n)
                    .map(|row| row.iter().zip(&hat).map(|(a, b)| a * b).sum())
                    .collect();
                self.grid.inverse_in_place(&mut acc);
                acc
            }
        };
        WaveFunction::new(self.grid.clone(), out)
    }
}

/// `⟨ψ, Op ψ⟩ = Δx Σ conj(ψ_j)(Op ψ)_j`.
pub fn expectation(psi: &WaveFunction, op: &WeylOperator) -> Result<Complex64> {
    let a_psi = op.apply(psi)?;
    psi.inner(&a_psi)
}

/// Angle-mode coefficient as a function of `ξ`.
type ModeCoefficient<'a> = Box<dyn Fn(f64) -> Complex64 + 'a>;

/// Weyl quantization of an angle-Fourier or separable symbol.
///
/// On the momentum lattice the Weyl rule sends `e^{ikx}` to
/// `c_m((ξ_k + ξ_{k'})/2) e^{ik'x}` with `k' = k + m` (wrapped into the
/// lattice); away from the wrap this is the exact ordering
/// `e^{imx} c_m(ξ̂ + ħm/2)`, and the wrapped midpoint keeps real symbols
/// exactly hermitian. Position-only and momentum-only symbols get the
/// diagonal forms. Closed-form symbols need [`weyl_quantize_dense`].
pub fn weyl_quantize(a: &Symbol, grid: &Arc<Grid>) -> Result<WeylOperator> {
    let n = grid.n();
    let hermitian = a.is_real();
    let modes: Vec<(i64, ModeCoefficient<'_>)> = match a.representation() {
        Representation::AngleFourier(modes) => {
            if a.is_position_only() {
                let f = grid.positions().map(|x| a.value(x, 0.0)).collect();
                return Ok(WeylOperator {
                    grid: grid.clone(),
                    form: OperatorForm::Position(f),
                    hermitian,
                });
            }
            if a.is_momentum_only() {
                let g = (0..n).map(|i| a.value(0.0, grid.momentum(i))).collect();
                return Ok(WeylOperator {
                    grid: grid.clone(),
                    form: OperatorForm::Momentum(g),
                    hermitian,
                });
            }
            modes
                .iter()
                .map(|(&m, c)| {
                    let f: Box<dyn Fn(f64) -> Complex64 + '_> = Box::new(move |xi| c.eval(xi));
                    (m, f)
                })
                .collect()
        }
        Representation::Separable(terms) => {
            if !a.is_periodic() {
                return Err(Error::Capability(format!(
                    "separable symbol '{}' is not periodic in x",
                    a.name()
                )));
            }
            // angle modes of each position factor, exact for band-limited factors
            let spectra: Vec<Vec<Complex64>> = terms
                .iter()
                .map(|t| {
                    let samples: Vec<Complex64> = grid.positions().map(|x| (t.position)(x)).collect();
                    let s = 1.0 / (n as f64).sqrt();
                    grid.forward(&samples).into_iter().map(|z| z * s).collect()
                })
                .collect();
            let max = spectra.iter().flatten().fold(0.0f64, |acc, z| acc.max(z.norm()));
            let mut out: Vec<(i64, ModeCoefficient<'_>)> = Vec::new();
            for i in 0..n {
                let m = grid.lattice_index(i);
                let weights: Vec<(Complex64, usize)> = spectra
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s[i].norm() > 1e-15 * max)
                    .map(|(t, s)| (s[i], t))
                    .collect();
                if weights.is_empty() {
                    continue;
                }
                let f: Box<dyn Fn(f64) -> Complex64 + '_> =
                    Box::new(move |xi| weights.iter().map(|&(w, t)| w * (terms[t].momentum)(xi)).sum());
                out.push((m, f));
            }
            out
        }
        Representation::ClosedForm { .. } => {
            return Err(Error::Capability(format!(
                "closed-form symbol '{}' has no mode decomposition; use the dense kernel build",
                a.name()
            )))
        }
    };

    let half = (n / 2) as i64;
    let mut tables = Vec::with_capacity(modes.len());
    for (m, coeff) in modes {
        if m.abs() >= half {
            return Err(Error::Capability(format!(
                "mode {m} of '{}' aliases on a grid of {n} points",
                a.name()
            )));
        }
        let mut target = Vec::with_capacity(n);
        let mut weight = Vec::with_capacity(n);
        for i in 0..n {
            let k = grid.lattice_index(i);
            let kp = grid.wrap(k + m);
            target.push(grid.slot(kp));
            weight.push(coeff(0.5 * grid.hbar() * (k + kp) as f64));
        }
        tables.push(ModeTable { m, target, weight });
    }
    Ok(WeylOperator {
        grid: grid.clone(),
        form: OperatorForm::ModeSum(tables),
        hermitian,
    })
}

/// Dense Weyl kernel built from point evaluations of the symbol.
///
/// Momentum-basis matrix elements are the Weyl integral
/// `⟨k'|Op[a]|k⟩ = (1/2π) ∫ a(x, (ξ_k + ξ_{k'})/2) e^{−i(k'−k)x} dx`, with
/// the angle integral done by the N-node midpoint rule. Works for any symbol
/// (closed forms included) but costs O(N² log N) memory/time, so it is
/// limited to `N ≤ 1024`.
pub fn weyl_quantize_dense(a: &Symbol, grid: &Arc<Grid>) -> Result<WeylOperator> {
    let n = grid.n();
    if n > DENSE_LIMIT {
        return Err(Error::Capability(format!(
            "dense kernel limited to N <= {DENSE_LIMIT}, got {n}"
        )));
    }
    let hbar = grid.hbar();
    // row s holds the N-point DFT of x ↦ a(x, ħ s/2) for lattice sum s = k + k'
    let half = (n / 2) as i64;
    let sums: Vec<Vec<Complex64>> = (-2 * half..=2 * half - 2)
        .map(|s| {
            let xi = 0.5 * hbar * s as f64;
            let samples: Vec<Complex64> = grid.positions().map(|x| a.value(x, xi)).collect();
            let scale = 1.0 / (n as f64).sqrt();
            grid.forward(&samples).into_iter().map(|z| z * scale).collect()
        })
        .collect();
    let mut kernel = vec![Complex64::new(0.0, 0.0); n * n];
    for out in 0..n {
        let kp = grid.lattice_index(out);
        for inp in 0..n {
            let k = grid.lattice_index(inp);
            let row = &sums[(k + kp + 2 * half) as usize];
            kernel[out * n + inp] = row[grid.slot(kp - k)];
        }
    }
    Ok(WeylOperator {
        grid: grid.clone(),
        form: OperatorForm::Dense(kernel),
        hermitian: a.is_real(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::Coefficient;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn plane_wave(grid: &Arc<Grid>, k: i64) -> WaveFunction {
        let amps = grid
            .positions()
            .map(|x| Complex64::from_polar(1.0, k as f64 * x))
            .collect();
        WaveFunction::new(grid.clone(), amps).unwrap()
    }

    #[test]
    fn momentum_symbol_is_fourier_multiplier() {
        let g = Grid::new(64, 0.25).unwrap();
        let op = weyl_quantize(&Symbol::plane(), &g).unwrap();
        assert!(matches!(op.form(), OperatorForm::Momentum(_)));
        let psi = plane_wave(&g, 7);
        let out = op.apply(&psi).unwrap();
        for (a, b) in out.amplitudes().iter().zip(psi.amplitudes()) {
            assert!((a - b * (0.25 * 7.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn position_symbol_is_diagonal() {
        let g = Grid::new(64, 0.1).unwrap();
        let op = weyl_quantize(&Symbol::cosine(2, 0.0, 1.0, 0.5), &g).unwrap();
        match op.form() {
            OperatorForm::Position(f) => {
                for (j, v) in f.iter().enumerate() {
                    let x = g.position(j);
                    assert!((v - c((2.0 * x).cos() + 0.5, 0.0)).norm() < 1e-14);
                }
            }
            other => panic!("expected diagonal, got {other:?}"),
        }
    }

    #[test]
    fn mode_sum_uses_half_shifted_momentum() {
        // Op[e^{ix} ξ] e^{ikx} = ħ(k + 1/2) e^{i(k+1)x}
        let hbar = 1.0 / 64.0;
        let g = Grid::new(256, hbar).unwrap();
        let a = Symbol::angle_fourier(
            "e^{ix} xi",
            [(1, Coefficient::Polynomial(vec![c(0.0, 0.0), c(1.0, 0.0)]))],
            false,
        );
        let op = weyl_quantize(&a, &g).unwrap();
        let out = op.apply(&plane_wave(&g, 3)).unwrap();
        let want = plane_wave(&g, 4);
        for (a, b) in out.amplitudes().iter().zip(want.amplitudes()) {
            assert!((a - b * (hbar * 3.5)).norm() < 1e-12);
        }
    }

    #[test]
    fn identity_and_zero_symbols() {
        let g = Grid::new(64, 0.1).unwrap();
        let psi = plane_wave(&g, 2);
        let id = weyl_quantize(&Symbol::constant(1.0), &g).unwrap();
        assert_eq!(id.apply(&psi).unwrap(), psi);
        let zero = weyl_quantize(&Symbol::constant(0.0), &g).unwrap();
        assert!(zero.apply(&psi).unwrap().amplitudes().iter().all(|z| z.norm() == 0.0));
        let ev = expectation(&psi, &id).unwrap();
        assert!((ev - c(psi.norm_sqr(), 0.0)).norm() < 1e-12);
        assert!((psi.norm_sqr() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn grid_mismatch_is_a_configuration_error() {
        let g1 = Grid::new(64, 0.1).unwrap();
        let g2 = Grid::new(64, 0.2).unwrap();
        let op = weyl_quantize(&Symbol::plane(), &g1).unwrap();
        assert!(matches!(op.apply(&plane_wave(&g2, 1)), Err(Error::Config(_))));
    }

    #[test]
    fn closed_form_needs_dense_build() {
        let g = Grid::new(64, 0.1).unwrap();
        let a = Symbol::closed_form("f", Arc::new(|x, xi| c(x.cos() * xi, 0.0)), None, true, true);
        assert!(matches!(weyl_quantize(&a, &g), Err(Error::Capability(_))));
        assert!(weyl_quantize_dense(&a, &g).is_ok());
        let big = Grid::new(2048, 0.1).unwrap();
        assert!(matches!(weyl_quantize_dense(&a, &big), Err(Error::Capability(_))));
    }

    #[test]
    fn aliasing_mode_is_rejected() {
        let g = Grid::new(64, 0.1).unwrap();
        assert!(weyl_quantize(&Symbol::cosine(32, 1.0, 1.0, 0.0), &g).is_err());
    }
}
