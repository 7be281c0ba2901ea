use proptest::prelude::*;
use semiclassical::symbols::{catalog, Symbol};
use semiclassical::Complex64;

fn p(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[test]
fn every_catalog_entry_builds_with_defaults() {
    for name in catalog::names() {
        let s = catalog::build(name, &[]).unwrap();
        assert!(s.value(0.3, -0.2).is_finite(), "{name}");
    }
}

#[test]
fn unknown_names_and_parameters_are_rejected() {
    assert!(catalog::build("sine", &[]).is_err());
    assert!(catalog::build("cos", &p(&[("k", 1.0)])).is_err());
    assert!(catalog::build("cos", &p(&[("m", 1.5)])).is_err());
    assert!(catalog::build("plane", &p(&[("c", 1.0)])).is_err());
}

#[test]
fn pendulum_splits_into_kinetic_and_potential() {
    let h = catalog::build("pendulum-H", &p(&[("g", 0.5)])).unwrap();
    let v = h.kinetic_plus_potential().expect("separable");
    assert!((v.value(1.0, 0.0) - Complex64::new(0.5 * 1.0f64.cos(), 0.0)).norm() < 1e-15);
    assert!(catalog::build("rotor-H", &[]).unwrap().is_momentum_only());
    assert!(Symbol::cosine(1, 1.0, 1.0, 0.0).kinetic_plus_potential().is_none());
}

#[test]
fn repeated_modes_are_summed() {
    let a = Symbol::cosine(0, 1.0, 2.0, 0.0).add(&Symbol::cosine(1, 0.0, 2.0, 0.0));
    assert_eq!(a.max_mode(), Some(1));
    let x = 0.4f64;
    let xi = 0.9f64;
    let want = 2.0 * xi.cos() + 2.0 * x.cos();
    assert!((a.value(x, xi).re - want).abs() < 1e-14);
}

proptest! {
    #[test]
    fn cosine_matches_its_formula(m in -5i64..6, n in -3.0f64..3.0, amp in -2.0f64..2.0, off in -1.0f64..1.0,
                                  x in 0.0f64..6.3, xi in -4.0f64..4.0) {
        let v = Symbol::cosine(m, n, amp, off).value(x, xi);
        let want = amp * (m as f64 * x + n * xi).cos() + off;
        prop_assert!((v.re - want).abs() < 1e-12 && v.im.abs() < 1e-12);
    }

    #[test]
    fn character_has_unit_modulus(m in -5i64..6, n in -3.0f64..3.0, x in 0.0f64..6.3, xi in -4.0f64..4.0) {
        prop_assert!((Symbol::character(m, n).value(x, xi).norm() - 1.0).abs() < 1e-14);
    }
}
