use std::f64::consts::{PI, TAU};

use semiclassical::amplitude::Amplitude;
use semiclassical::quantum::{expectation, synthesize_state, weyl_quantize, Grid, SplitStep, WaveFunction};
use semiclassical::symbols::Symbol;
use semiclassical::Complex64;

#[test]
fn split_step_is_unitary_over_ten_thousand_steps() {
    let grid = Grid::new(256, 1.0 / 64.0).unwrap();
    let psi0 = synthesize_state(&grid, &Symbol::curved_phase(0.25, 0.25), &Amplitude::bump(PI, 2.0)).unwrap();
    let n0 = psi0.norm_sqr();
    let mut psi = psi0.clone();
    let step = SplitStep::new(&grid, &Symbol::pendulum_hamiltonian(0.5), 0.005).unwrap();
    step.advance(&mut psi, 10_000).unwrap();
    assert!((psi.norm_sqr() - n0).abs() / n0 <= 1e-11);
}

#[test]
fn free_evolution_is_exact_phase_per_mode() {
    let grid = Grid::new(128, 1.0 / 32.0).unwrap();
    let k = 5i64;
    let mut c = vec![Complex64::new(0.0, 0.0); 128];
    c[grid.slot(k)] = Complex64::new(1.0, 0.0);
    c[grid.slot(-3)] = Complex64::new(0.0, 0.5);
    let psi0 = WaveFunction::from_momentum(grid.clone(), &c).unwrap();
    let mut psi = psi0.clone();
    // one huge step: no splitting error without a potential
    let t = 37.25;
    let step = SplitStep::new(&grid, &Symbol::rotor_hamiltonian(), t).unwrap();
    assert!(step.warnings().is_empty());
    step.advance(&mut psi, 1).unwrap();
    let out = psi.momentum_amplitudes();
    for kk in [k, -3] {
        let xi = grid.hbar() * kk as f64;
        let want = c[grid.slot(kk)] * Complex64::from_polar(1.0, -xi * xi * t / (2.0 * grid.hbar()));
        assert!((out[grid.slot(kk)] - want).norm() < 1e-12);
    }
}

#[test]
fn step_size_warnings_are_raised() {
    let grid = Grid::new(256, 1.0 / 128.0).unwrap();
    let step = SplitStep::new(&grid, &Symbol::pendulum_hamiltonian(1.0), 0.1).unwrap();
    assert_eq!(step.warnings().len(), 2);
}

#[test]
fn non_separable_hamiltonian_is_rejected() {
    let grid = Grid::new(64, 1.0 / 32.0).unwrap();
    let h = Symbol::cosine(1, 1.0, 1.0, 0.0);
    assert!(SplitStep::new(&grid, &h, 0.01).is_err());
}

#[test]
fn plane_wave_momentum_is_conserved_by_the_rotor() {
    let h = 1.0 / 64.0;
    let grid = Grid::new(128, h).unwrap();
    let i0 = 20.0 * h;
    let psi0 = synthesize_state(&grid, &Symbol::linear_phase(i0), &Amplitude::uniform()).unwrap();
    let mut psi = psi0.clone();
    SplitStep::new(&grid, &Symbol::rotor_hamiltonian(), 0.5)
        .unwrap()
        .advance(&mut psi, 40)
        .unwrap();
    let op = weyl_quantize(&Symbol::plane(), &grid).unwrap();
    let ev = expectation(&psi, &op).unwrap() / psi.norm_sqr();
    assert!((ev.re - i0).abs() < 1e-12);
    assert!((psi.norm_sqr() - TAU).abs() < 1e-12);
}

#[test]
fn non_integer_winding_is_refused() {
    let grid = Grid::new(64, 1.0 / 32.0).unwrap();
    let err = synthesize_state(&grid, &Symbol::linear_phase(0.3), &Amplitude::uniform()).unwrap_err();
    assert!(matches!(err, semiclassical::Error::Winding { .. }));
}
