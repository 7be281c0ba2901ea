use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiclassical::catmap::{
    factorize, line_frequency, line_transport, CatMap, Generator, LineDensity, QuantizedCatMap, Rational, TorusLine,
    TorusState, TrigPolynomial,
};
use semiclassical::classical::{decay_fit, DecayModel, DEFAULT_FLOOR};
use semiclassical::Complex64;

fn matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn adjoint(a: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j].conj();
        }
    }
    out
}

fn random_state(n: usize, rng: &mut ChaCha8Rng) -> TorusState {
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let s = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    TorusState::new(v.into_iter().map(|z| z / s).collect()).unwrap()
}

#[test]
fn egorov_holds_as_a_matrix_identity() {
    let map = CatMap::default();
    let n = 64;
    let prop = QuantizedCatMap::new(map, n).unwrap();
    let u = prop.matrix();
    let ud = adjoint(&u, n);
    let identity = matmul(&ud, &u, n);
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((identity[i * n + j] - want).norm() < 1e-12);
        }
    }
    let [[a, b], [c, d]] = map.matrix();
    for m in [(1i64, 0i64), (0, 1), (2, -3), (5, 7)] {
        let lhs = matmul(
            &ud,
            &matmul(&prop.translation_matrix((m.0 as i128, m.1 as i128)), &u, n),
            n,
        );
        let at = ((a * m.0 + c * m.1) as i128, (b * m.0 + d * m.1) as i128);
        let sign = if (a * b * m.0 + c * d * m.1).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        let rhs = prop.translation_matrix(at);
        let worst = lhs
            .iter()
            .zip(&rhs)
            .map(|(x, y)| (x - y * sign).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "m={m:?}: {worst}");
    }
}

#[test]
fn both_ev_paths_agree_through_t_12() {
    let prop = QuantizedCatMap::new(CatMap::default(), 128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let psi = random_state(128, &mut rng);
    let a = TrigPolynomial::default()
        .with_cosine((1, 0), 1.0)
        .with_cosine((2, -1), 0.5)
        .with_cosine((0, 3), 1.0);
    for t in 0..=12 {
        let ev = prop.trig_ev(&psi, &a, t).unwrap();
        assert!(ev.gap() < 1e-10, "t={t}: {}", ev.gap());
    }
}

#[test]
fn propagator_is_periodic_up_to_a_phase() {
    let map = CatMap::default();
    for n in [5usize, 8, 12] {
        let prop = QuantizedCatMap::new(map, n).unwrap();
        let p = prop.quantum_period().unwrap() as u32;
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let psi = random_state(n, &mut rng);
        let out = prop.propagate(&psi, p).unwrap();
        let overlap = psi.inner(&out);
        assert!((overlap.norm() - 1.0).abs() < 1e-10, "N={n} P={p}");
    }
}

#[test]
fn generators_multiply_back_to_the_matrix() {
    for a in [
        [[2, 1], [1, 1]],
        [[3, 2], [1, 1]],
        [[1, 1], [1, 2]],
        [[-2, 1], [-1, 0]],
        [[5, 8], [3, 5]],
    ] {
        let gens = factorize(a).unwrap();
        let mut m = [[1i64, 0], [0, 1]];
        for g in &gens {
            let x = g.matrix();
            m = [
                [
                    m[0][0] * x[0][0] + m[0][1] * x[1][0],
                    m[0][0] * x[0][1] + m[0][1] * x[1][1],
                ],
                [
                    m[1][0] * x[0][0] + m[1][1] * x[1][0],
                    m[1][0] * x[0][1] + m[1][1] * x[1][1],
                ],
            ];
        }
        assert_eq!(m, a, "{gens:?}");
        assert!(gens
            .iter()
            .all(|g| matches!(g, Generator::Shear(_) | Generator::Fourier | Generator::InverseFourier)));
    }
}

#[test]
fn momentum_state_ev_vanishes_off_the_stabilizer_lattice() {
    let map = CatMap::default();
    let n = 1024;
    let prop = QuantizedCatMap::new(map, n).unwrap();
    let psi = TorusState::momentum_eigenstate(n, 0).unwrap();
    for t in 1..=6 {
        let nvec = map.transpose_power((1, 0), t, 0).unwrap();
        let ev = prop.character_ev(&psi, (1, 0), t).unwrap();
        if nvec.0.rem_euclid(n as i128) != 0 {
            assert!(ev.propagated.norm() < 1e-12, "t={t}");
        }
    }
}

#[test]
fn bump_line_transport_decays_faster_than_the_lyapunov_rate() {
    let map = CatMap::default();
    let line = TorusLine::horizontal(Rational::new(1, 3).unwrap());
    let density = LineDensity::Bump {
        center: 0.5,
        half_width: 0.3,
    };
    let values: Vec<f64> = (1..=8)
        .map(|t| line_transport(&map, &line, &density, (1, 1), t).unwrap().norm())
        .collect();
    for w in values.windows(2).skip(1) {
        assert!(w[1] < w[0] * 0.5 || w[1] < 1e-15, "{values:?}");
    }
    let pts: Vec<(f64, f64)> = values.iter().enumerate().map(|(i, &v)| ((i + 1) as f64, v)).collect();
    match decay_fit(&pts, DecayModel::Exponential, DEFAULT_FLOOR) {
        Ok(fit) => assert!(fit.rate >= map.lyapunov(), "{} < {}", fit.rate, map.lyapunov()),
        Err(_) => assert!(values[4..].iter().all(|&v| v <= DEFAULT_FLOOR)),
    }
}

#[test]
fn line_frequency_is_exact_integer_arithmetic() {
    let map = CatMap::default();
    let line = TorusLine {
        offset: Rational::zero(),
        slope: Rational::new(-1597, 987).unwrap(),
    };
    let f = line_frequency(&map, &line, (1, 0), 3).unwrap();
    let n = map.transpose_power((1, 0), 3, 0).unwrap();
    assert_eq!(f.n, n);
    assert_eq!(f.numerator, n.0 * 987 - n.1 * 1597);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_approximation_is_the_best_within_the_bound(x in -5.0f64..5.0, max_den in 1i64..2000) {
        let r = Rational::approximate(x, max_den).unwrap();
        prop_assert!(r.den >= 1 && r.den <= max_den);
        let brute = (1..=max_den)
            .map(|q| ((x * q as f64).round() / q as f64 - x).abs())
            .fold(f64::INFINITY, f64::min);
        prop_assert!((r.to_f64() - x).abs() <= brute + 1e-15);
    }

    #[test]
    fn transpose_power_is_linear(m1 in -20i64..20, m2 in -20i64..20, t in 0u32..10) {
        let map = CatMap::default();
        let a = map.transpose_power((m1, m2), t, 0).unwrap();
        let b = map.transpose_power((1, 0), t, 0).unwrap();
        let c = map.transpose_power((0, 1), t, 0).unwrap();
        prop_assert_eq!(a, (m1 as i128 * b.0 + m2 as i128 * c.0, m1 as i128 * b.1 + m2 as i128 * c.1));
    }

    #[test]
    fn translations_compose_up_to_a_phase(seed in any::<u64>(), m1 in -4i64..4, m2 in -4i64..4) {
        let prop = QuantizedCatMap::new(CatMap::default(), 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(16, &mut rng);
        let m = (m1 as i128, m2 as i128);
        let back = prop.translate((-m.0, -m.1), &prop.translate(m, &psi).unwrap()).unwrap();
        let overlap = psi.inner(&back);
        prop_assert!((overlap - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }
}
