//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned here
//! rather than read from the configs. Exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiclassical::amplitude::Amplitude;
use semiclassical::catmap::{CatMap, QuantizedCatMap, TorusState, TrigPolynomial};
use semiclassical::quantum::{synthesize_state, weyl_quantize, weyl_quantize_dense, Grid, SplitStep, WaveFunction};
use semiclassical::symbols::Symbol;
use semiclassical::Complex64;
use semilab::{run, Config, Report};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run_config(name: &str) -> Result<(Report, Duration), String> {
    let text = std::fs::read_to_string(configs().join(name)).map_err(|e| format!("{name}: {e}"))?;
    let config = Config::parse(&text).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let report = run(&config).map_err(|e| e.to_string())?;
    Ok((report, start.elapsed()))
}

fn cross_checks_pass(r: &Report) -> Result<(), String> {
    match r.summary.cross_checks.iter().find(|c| !c.passed) {
        Some(c) => Err(format!("cross-check '{}' off by {:e}", c.description, c.difference)),
        None => Ok(()),
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit_s as f64 {
        Ok(())
    } else {
        Err(format!("runtime {:.1} s exceeds {limit_s} s", elapsed.as_secs_f64()))
    }
}

fn metric(r: &Report, key: &str) -> Result<f64, String> {
    r.summary
        .metrics
        .get(key)
        .copied()
        .ok_or_else(|| format!("metric '{key}' missing"))
}

fn checks_with_prefix<'a>(r: &'a Report, prefix: &str) -> Vec<&'a semilab::report::Check> {
    r.summary.checks.iter().filter(|c| c.name.starts_with(prefix)).collect()
}

fn gate(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn stationary_slope() -> Result<String, String> {
    let (r, dt) = run_config("stationary-phase.conf")?;
    cross_checks_pass(&r)?;
    within(dt, 60)?;
    let slope = metric(&r, "slope")?;
    let n_max = r.rows.iter().filter_map(|row| row.n).max().unwrap_or(0);
    gate((0.8..=1.2).contains(&slope), || {
        format!("slope {slope} outside [0.8, 1.2]")
    })?;
    gate(n_max <= 4096, || format!("grid {n_max} > 4096"))?;
    Ok(format!(
        "slope {slope:.4} over {} hbar values, {:.2} s",
        r.rows.len(),
        dt.as_secs_f64()
    ))
}

fn reduction_bound() -> Result<String, String> {
    let (r, dt) = run_config("reduction-scan.conf")?;
    cross_checks_pass(&r)?;
    within(dt, 300)?;
    let poly = checks_with_prefix(&r, "polynomial_growth");
    let expo = checks_with_prefix(&r, "not_exponential");
    gate(poly.len() >= 2 && poly.len() == expo.len(), || {
        "missing per-hbar checks".into()
    })?;
    let t_max = r.rows.iter().map(|row| row.t).fold(0.0, f64::max);
    gate(t_max >= 100.0, || format!("t only reaches {t_max}"))?;
    for c in &poly {
        gate(c.value < 0.5, || format!("{} = {}", c.name, c.value))?;
    }
    for c in &expo {
        gate(c.value <= 10.0, || format!("{} = {}", c.name, c.value))?;
    }
    let worst = poly.iter().map(|c| c.value).fold(0.0, f64::max);
    Ok(format!("worst power-law log rms {worst:.3}, {:.2} s", dt.as_secs_f64()))
}

fn torus_quasi_periodicity() -> Result<String, String> {
    let (r, dt) = run_config("integrable-torus.conf")?;
    cross_checks_pass(&r)?;
    let cs: Vec<f64> = r
        .summary
        .metrics
        .iter()
        .filter(|(k, _)| k.starts_with("C["))
        .map(|(_, v)| *v)
        .collect();
    gate(cs.len() >= 2, || "fewer than two fitted C values".into())?;
    let ratio = cs.iter().cloned().fold(0.0, f64::max) / cs.iter().cloned().fold(f64::INFINITY, f64::min);
    gate(ratio < 3.0, || format!("C ratio {ratio}"))?;
    let peak = metric(&r, "spectral_peak")?;
    let bin = metric(&r, "spectral_bin")?;
    let action = 0.25;
    gate((peak - action).abs() <= bin, || {
        format!("peak {peak} vs {action}, bin {bin}")
    })?;
    let t_max = r.rows.iter().map(|row| row.t).fold(0.0, f64::max);
    gate(t_max <= 50.0, || format!("t reaches {t_max} > 50"))?;
    Ok(format!(
        "C ratio {ratio:.5}, peak error {:.2e} (bin {bin:.4}), {:.2} s",
        (peak - action).abs(),
        dt.as_secs_f64()
    ))
}

fn transversal_decay() -> Result<String, String> {
    let (r, dt) = run_config("integrable-transversal.conf")?;
    cross_checks_pass(&r)?;
    within(dt, 120)?;
    let p = metric(&r, "exponent")?;
    gate(p >= 0.9, || format!("exponent {p} < 0.9"))?;
    let terms: Vec<f64> = r
        .summary
        .metrics
        .iter()
        .filter(|(k, _)| k.starts_with("hbar_term["))
        .map(|(_, v)| *v)
        .collect();
    gate(!terms.is_empty(), || "hbar term not documented".into())?;
    let dist: Vec<f64> = r
        .summary
        .metrics
        .iter()
        .filter(|(k, _)| k.starts_with("quantum_to_limit_at_t_max["))
        .map(|(_, v)| *v)
        .collect();
    gate(dist.iter().all(|d| *d < 1e-3), || {
        format!("quantum distance to limit {dist:?}")
    })?;
    Ok(format!(
        "exponent {p:.3}, quantum-to-limit {:.2e}, {:.2} s",
        dist.iter().cloned().fold(0.0, f64::max),
        dt.as_secs_f64()
    ))
}

fn catmap_limit(r: &Report, dt: Duration) -> Result<String, String> {
    cross_checks_pass(r)?;
    within(dt, 120)?;
    let entry = r.summary.checks.iter().find(|c| c.name == "entry_time[N=1024]");
    let entry = entry.ok_or("no N=1024 entry check")?;
    gate(entry.passed && entry.value <= 6.0, || {
        format!("entry time {}", entry.value)
    })?;
    let stay = r.summary.checks.iter().find(|c| c.name == "stays_in_tube[N=1024]");
    let stay = stay.ok_or("no tube check")?;
    gate(stay.passed && stay.value < 1e-6, || {
        format!("tube deviation {}", stay.value)
    })?;
    let exact = r
        .summary
        .checks
        .iter()
        .find(|c| c.name == "classical_oracle_exact[N=1024]");
    let exact = exact.ok_or("no classical oracle check")?;
    gate(exact.passed && exact.value == 0.0, || {
        format!("classical oracle {}", exact.value)
    })?;
    Ok(format!(
        "entry t = {}, max deviation {:.1e} through T_E/2, classical exactly 0, {:.2} s",
        entry.value,
        stay.value,
        dt.as_secs_f64()
    ))
}

fn egorov() -> Result<String, String> {
    let map = CatMap::default();
    let n = 64;
    let prop = QuantizedCatMap::new(map, n).map_err(|e| e.to_string())?;
    let u = prop.matrix();
    let mul = |a: &[Complex64], b: &[Complex64]| {
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                for j in 0..n {
                    out[i * n + j] += aik * b[k * n + j];
                }
            }
        }
        out
    };
    let mut ud = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            ud[j * n + i] = u[i * n + j].conj();
        }
    }
    let [[a, b], [c, d]] = map.matrix();
    let mut worst_matrix = 0.0f64;
    for m1 in -3i64..=3 {
        for m2 in -3i64..=3 {
            let lhs = mul(&ud, &mul(&prop.translation_matrix((m1 as i128, m2 as i128)), &u));
            let at = ((a * m1 + c * m2) as i128, (b * m1 + d * m2) as i128);
            let sign = if (a * b * m1 + c * d * m2).rem_euclid(2) == 0 {
                1.0
            } else {
                -1.0
            };
            let rhs = prop.translation_matrix(at);
            for (x, y) in lhs.iter().zip(&rhs) {
                worst_matrix = worst_matrix.max((x - y * sign).norm());
            }
        }
    }
    gate(worst_matrix <= 1e-10, || {
        format!("matrix identity off by {worst_matrix:e}")
    })?;

    let prop = QuantizedCatMap::new(map, 128).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let v: Vec<Complex64> = (0..128)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi = TorusState::new(v.into_iter().map(|z| z / norm).collect()).map_err(|e| e.to_string())?;
    let obs = TrigPolynomial::default()
        .with_cosine((1, 0), 2.0)
        .with_cosine((0, 1), 2.0)
        .with_cosine((3, -2), 0.5);
    let mut worst_path = 0.0f64;
    for t in 0..=12 {
        let ev = prop.trig_ev(&psi, &obs, t).map_err(|e| e.to_string())?;
        worst_path = worst_path.max(ev.gap());
    }
    gate(worst_path <= 1e-10, || format!("EV paths differ by {worst_path:e}"))?;
    Ok(format!(
        "N=64 matrix identity {worst_matrix:.1e}, N=128 paths t<=12 {worst_path:.1e}"
    ))
}

fn counterexample(mixing: &Report) -> Result<String, String> {
    let (r, dt) = run_config("catmap-stable-line.conf")?;
    cross_checks_pass(&r)?;
    let c = r.summary.checks.iter().find(|c| c.name == "counterexample[N=1024]");
    let c = c.ok_or("no counterexample check")?;
    gate(c.passed && c.value >= 0.1, || {
        format!("stable-line deviation {}", c.value)
    })?;
    gate(mixing.summary.passed, || {
        "transversal momentum state did not converge".into()
    })?;
    gate(r.summary.kind == mixing.summary.kind, || {
        "different experiment schema".into()
    })?;
    Ok(format!(
        "stable line min deviation {:.3} >= 0.1, momentum state converges, {:.2} s",
        c.value,
        dt.as_secs_f64()
    ))
}

fn stable_series() -> Result<String, String> {
    let (r, dt) = run_config("stable-manifold.conf")?;
    cross_checks_pass(&r)?;
    let rate = metric(&r, "remainder_rate")?;
    let lambda = 0.5;
    gate(rate >= 0.9 * lambda, || {
        format!("remainder rate {rate} < 0.9 * {lambda}")
    })?;
    let periodic = r.summary.checks.iter().find(|c| c.name == "series_periodic");
    let periodic = periodic.ok_or("no periodicity check")?;
    gate(periodic.value <= 1e-12, || format!("periodicity {}", periodic.value))?;
    Ok(format!(
        "remainder rate {rate:.4} (>= {:.2}), periodic to {:.1e}, {:.2} s",
        0.9 * lambda,
        periodic.value,
        dt.as_secs_f64()
    ))
}

fn infrastructure() -> Result<String, String> {
    let e = |e: semiclassical::Error| e.to_string();
    let grid = Grid::new(256, 1.0 / 64.0).map_err(e)?;
    let mut psi = synthesize_state(&grid, &Symbol::curved_phase(0.25, 0.25), &Amplitude::bump(PI, 2.0)).map_err(e)?;
    let n0 = psi.norm_sqr();
    SplitStep::new(&grid, &Symbol::pendulum_hamiltonian(0.5), 0.005)
        .map_err(e)?
        .advance(&mut psi, 10_000)
        .map_err(e)?;
    let drift = (psi.norm_sqr() - n0).abs() / n0;
    gate(drift <= 1e-11, || format!("unitarity drift {drift:e}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut round_trip = 0.0f64;
    for log_n in 6..=13 {
        let g = Grid::new(1 << log_n, 1.0 / (1 << (log_n - 1)) as f64).map_err(e)?;
        let v: Vec<Complex64> = (0..g.n()).map(|_| Complex64::new(rng.gen(), rng.gen())).collect();
        let back = g.inverse(&g.forward(&v));
        round_trip = v
            .iter()
            .zip(&back)
            .map(|(a, b)| (a - b).norm())
            .fold(round_trip, f64::max);
    }
    gate(round_trip <= 1e-12, || format!("DFT round trip {round_trip:e}"))?;

    let first = run_config("stationary-phase.conf")?
        .0
        .csv_string()
        .map_err(|e| e.to_string())?;
    let second = run_config("stationary-phase.conf")?
        .0
        .csv_string()
        .map_err(|e| e.to_string())?;
    gate(first == second, || "CSV differs between identical runs".into())?;
    gate(first == include_str!("golden/stationary-phase.csv"), || {
        "CSV differs from the golden file".into()
    })?;

    let mut dense_gap = 0.0f64;
    for sym in [
        Symbol::cosine(1, -1.0, 1.0, 0.0),
        Symbol::pendulum_hamiltonian(0.5),
        Symbol::cosine(2, 1.5, 0.7, 0.1).add(&Symbol::plane()),
    ] {
        let v: Vec<Complex64> = (0..256)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let psi = WaveFunction::new(grid.clone(), v).map_err(e)?;
        let fast = weyl_quantize(&sym, &grid).map_err(e)?.apply(&psi).map_err(e)?;
        let slow = weyl_quantize_dense(&sym, &grid).map_err(e)?.apply(&psi).map_err(e)?;
        dense_gap = fast
            .amplitudes()
            .iter()
            .zip(slow.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .fold(dense_gap, f64::max);
    }
    gate(dense_gap <= 1e-8, || format!("mode sum vs dense {dense_gap:e}"))?;
    Ok(format!(
        "drift {drift:.1e}, round trip {round_trip:.1e}, CSV byte-identical, dense gap {dense_gap:.1e}"
    ))
}

type Criterion = Box<dyn FnOnce() -> Result<String, String>>;

fn main() {
    let mixing = run_config("catmap-mixing.conf");
    let criteria: Vec<(&str, Criterion)> = vec![
        ("stationary-phase slope", Box::new(stationary_slope)),
        ("reduction bound, rotor", Box::new(reduction_bound)),
        ("torus quasi-periodicity", Box::new(torus_quasi_periodicity)),
        ("transversal decay", Box::new(transversal_decay)),
        (
            "cat-map universal limit",
            Box::new({
                let mixing = mixing.clone();
                move || mixing.and_then(|(r, dt)| catmap_limit(&r, dt))
            }),
        ),
        ("exact Egorov", Box::new(egorov)),
        (
            "counterexample necessity",
            Box::new(move || mixing.and_then(|(r, _)| counterexample(&r))),
        ),
        ("stable-manifold series", Box::new(stable_series)),
        ("infrastructure", Box::new(infrastructure)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.2} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{secs:.2} s]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
