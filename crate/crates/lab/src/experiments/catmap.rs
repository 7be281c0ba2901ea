//! Quantized cat map: expectation values of a trig polynomial along a
//! momentum state (universal limit) or a stable-line state (no limit).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiclassical::catmap::{
    line_transport_trig, CatMap, LineDensity, QuantizedCatMap, Rational, TorusLine, TorusState, TrigPolynomial,
};
use semiclassical::Complex64;

use super::{symbol, Common};
use crate::config::{Config, Fields};
use crate::error::{LabError, Result};
use crate::report::{CrossCheck, Report, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Momentum,
    StableLine,
}

#[derive(Debug, Clone)]
pub struct CatmapParams {
    pub common: Common,
    pub map: CatMap,
    pub n: Vec<usize>,
    pub observable: TrigPolynomial,
    pub state: StateKind,
    pub momentum_k: i64,
    pub line_half_width: f64,
    pub line_max_den: i64,
    pub tube: f64,
    pub entry_deadline: u32,
    pub deviation: f64,
    pub counterexample_from: u32,
    pub egorov_tolerance: f64,
}

impl CatmapParams {
    pub(super) fn read(f: &Fields<'_>, common: Common) -> Result<Self> {
        let entries = f.integer_list("matrix", Some(&[2, 1, 1, 1]))?;
        let [a, b, c, d] = entries[..] else {
            return Err(LabError::field(
                "matrix",
                format!("needs 4 entries a,b,c,d, got {}", entries.len()),
            ));
        };
        let map = CatMap::new([[a, b], [c, d]]).map_err(|e| LabError::field("matrix", e.to_string()))?;
        let n: Vec<usize> = f
            .integer_list("n", Some(&[1024]))?
            .into_iter()
            .map(|n| {
                if (3..=1 << 16).contains(&n) {
                    Ok(n as usize)
                } else {
                    Err(LabError::field("n", format!("{n} is outside [3, 65536]")))
                }
            })
            .collect::<Result<_>>()?;
        if n.is_empty() {
            return Err(LabError::field("n", "needs at least one value"));
        }
        let sym = symbol(f, "observable", "cos(m=1, amp=2) + cos(m=0, n=1, amp=2)")?;
        let observable = TrigPolynomial::from_symbol(&sym).map_err(|e| LabError::field("observable", e.to_string()))?;
        let smallest = *n.iter().min().expect("nonempty");
        if observable.max_mode() > (smallest / 2) as i64 {
            return Err(LabError::field(
                "observable",
                format!("mode {} aliases on the N = {smallest} lattice", observable.max_mode()),
            ));
        }
        let state = match f.choice("state", "momentum", &["momentum", "stable-line"])?.as_str() {
            "momentum" => StateKind::Momentum,
            _ => StateKind::StableLine,
        };
        let line_max_den = f.integer("line_max_den", Some(1000), 1, 1 << 20)?;
        Ok(Self {
            common,
            map,
            n,
            observable,
            state,
            momentum_k: f.integer("momentum_k", Some(0), -(1 << 20), 1 << 20)?,
            line_half_width: f.f64_in("line_half_width", Some(0.3), 1e-3, 0.5)?,
            line_max_den,
            tube: f.positive("tube", Some(1e-6))?,
            entry_deadline: f.integer("entry_deadline", Some(6), 0, 1000)? as u32,
            deviation: f.positive("deviation", Some(0.1))?,
            counterexample_from: f.integer("counterexample_from", Some(1), 0, 1000)? as u32,
            egorov_tolerance: f.positive("egorov_tolerance", Some(1e-10))?,
        })
    }

    /// Line through the affine fixed point along the contracting direction,
    /// with the slope rounded to a rational.
    fn stable_line(&self) -> Result<(TorusLine, LineDensity, f64)> {
        let exact = self.map.stable_slope();
        let slope = Rational::approximate(exact, self.line_max_den)?;
        let (q, p) = self.map.fixed_point()?;
        // c = p* − α q*, exactly
        let num = p.num as i128 * q.den as i128 * slope.den as i128 - slope.num as i128 * q.num as i128 * p.den as i128;
        let den = p.den as i128 * q.den as i128 * slope.den as i128;
        let (num, den) = (i64::try_from(num), i64::try_from(den));
        let (Ok(num), Ok(den)) = (num, den) else {
            return Err(LabError::field("line_max_den", "line offset overflows"));
        };
        let line = TorusLine {
            offset: Rational::new(num, den)?,
            slope,
        };
        let density = LineDensity::Bump {
            center: q.to_f64(),
            half_width: self.line_half_width,
        };
        Ok((line, density, (slope.to_f64() - exact).abs()))
    }

    pub(super) fn run(&self, config: &Config) -> Result<Report> {
        let mut report = self.common.report(config);
        let mean = self.observable.mean();
        report.metric("lyapunov", self.map.lyapunov());
        report.metric("mean", mean.re);
        report.note("tube width and the T_E/2 window are conventions of this harness, not derived bounds");

        let line = match self.state {
            StateKind::StableLine => {
                let (line, density, err) = self.stable_line()?;
                report.metric("line_slope", line.slope.to_f64());
                report.metric("line_slope_error", err);
                report.note(format!(
                    "stable line p = {} + ({})q through the affine fixed point, slope error {err:e}",
                    line.offset, line.slope
                ));
                Some((line, density))
            }
            StateKind::Momentum => None,
        };

        let mut rng = ChaCha8Rng::seed_from_u64(self.common.seed);
        for &n in &self.n {
            let prop = QuantizedCatMap::new(self.map, n)?;
            let t_e = self.map.ehrenfest_time(n);
            let t_end = (2.0 * t_e).ceil() as u32;
            let half = t_e / 2.0;
            report.metric(format!("ehrenfest_time[N={n}]"), t_e);
            report.metric(format!("quantum_period[N={n}]"), prop.quantum_period()? as f64);
            let psi = match &line {
                None => TorusState::momentum_eigenstate(n, self.momentum_k)?,
                Some((l, d)) => TorusState::line_state(n, l, d)?,
            };
            let target = mean * psi.norm_sqr();

            let mut devs = Vec::with_capacity(t_end as usize + 1);
            let mut classical = Vec::with_capacity(t_end as usize + 1);
            let mut egorov_gap = 0.0f64;
            for t in 0..=t_end {
                let ev = prop.trig_ev(&psi, &self.observable, t)?;
                egorov_gap = egorov_gap.max(ev.gap());
                let class = match &line {
                    None => line_transport_trig(
                        &self.map,
                        &TorusLine::horizontal(Rational::new(self.momentum_k, n as i64)?),
                        &LineDensity::Uniform,
                        &self.observable,
                        t,
                    )?,
                    Some((l, d)) => line_transport_trig(&self.map, l, d, &self.observable, t)? / d.mass(),
                };
                let dev = (ev.propagated - target).norm();
                devs.push(dev);
                classical.push(class);
                report.rows.push(Row {
                    hbar: Some(prop.hbar()),
                    n: Some(n),
                    t: t as f64,
                    ev_quantum: Some(ev.propagated),
                    ev_classical: Some(class),
                    predicted: Some(target.re),
                    residual: Some(dev),
                    ..Row::default()
                });
            }
            report.summary.cross_checks.push(CrossCheck::new(
                format!("N={n}: propagated vs Egorov-conjugated EV, worst over t <= {t_end}"),
                Complex64::new(egorov_gap, 0.0),
                Complex64::new(0.0, 0.0),
                self.egorov_tolerance,
            ));
            self.random_state_check(&mut report, &prop, &mut rng)?;

            let in_window = |t: usize| (t as f64) <= half;
            match self.state {
                StateKind::Momentum => {
                    // first t after which every t ≤ T_E/2 stays in the tube
                    let last_out = (0..devs.len()).filter(|&t| in_window(t) && devs[t] >= self.tube).max();
                    let entry = last_out.map_or(0, |t| t + 1);
                    let stays = (entry as f64) <= half;
                    report.metric(format!("entry_time[N={n}]"), entry as f64);
                    report.check(
                        format!("entry_time[N={n}]"),
                        entry as f64,
                        format!("<= {}", self.entry_deadline),
                        entry as u32 <= self.entry_deadline,
                    );
                    report.check(
                        format!("stays_in_tube[N={n}]"),
                        (entry..devs.len())
                            .filter(|&t| in_window(t))
                            .map(|t| devs[t])
                            .fold(0.0, f64::max),
                        format!("< {:e} on [{entry}, {half:.3}]", self.tube),
                        stays,
                    );
                    if let Some(r) = (0..devs.len()).find(|&t| t as f64 > half && devs[t] >= self.tube) {
                        report.metric(format!("revival_time[N={n}]"), r as f64);
                        report.note(format!("N={n}: EV leaves the tube again at t={r}, beyond T_E/2"));
                    }
                    // classical oracle in exact arithmetic: zero once no mode is horizontal
                    let oracle = self.lattice_entry(n)?;
                    report.metric(format!("lattice_entry[N={n}]"), oracle as f64);
                    report.summary.cross_checks.push(CrossCheck::new(
                        format!("N={n}: tube entry time vs integer lattice re-entry oracle"),
                        Complex64::new(entry as f64, 0.0),
                        Complex64::new(oracle as f64, 0.0),
                        0.0,
                    ));
                    let worst = (entry..classical.len())
                        .filter(|&t| in_window(t))
                        .map(|t| (classical[t] - mean).norm())
                        .fold(0.0, f64::max);
                    report.check(
                        format!("classical_oracle_exact[N={n}]"),
                        worst,
                        "== 0 on the tube window",
                        worst == 0.0,
                    );
                }
                StateKind::StableLine => {
                    let from = self.counterexample_from as usize;
                    let window: Vec<usize> = (from..devs.len()).filter(|&t| in_window(t)).collect();
                    let least = window.iter().map(|&t| devs[t]).fold(f64::INFINITY, f64::min);
                    let ok = !window.is_empty() && least >= self.deviation;
                    report.check(
                        format!("counterexample[N={n}]"),
                        if window.is_empty() { 0.0 } else { least },
                        format!("min |EV - mean| >= {} on [{from}, {half:.3}]", self.deviation),
                        ok,
                    );
                    if ok {
                        report.note(format!(
                            "N={n}: counterexample success, the stable-line EV does not converge"
                        ));
                    }
                }
            }
        }
        Ok(report)
    }

    /// First `t` such that no mode of the observable (other than the mean)
    /// has `((Aᵀ)ᵗm)₁ ≡ 0 (mod N)` for any later `t' ≤ T_E/2`, which is
    /// when the momentum-state EV equals the mean exactly.
    fn lattice_entry(&self, n: usize) -> Result<u32> {
        let half = self.map.ehrenfest_time(n) / 2.0;
        let mut last_hit = None;
        let mut t = 0u32;
        while (t as f64) <= half {
            let hit = self
                .observable
                .terms()
                .filter(|(m, _)| *m != (0, 0))
                .try_fold(false, |acc, (m, _)| {
                    let v = self.map.transpose_power(m, t, 2 * n as i128)?;
                    Ok::<_, semiclassical::Error>(acc || v.0.rem_euclid(n as i128) == 0)
                })?;
            if hit {
                last_hit = Some(t);
            }
            t += 1;
        }
        Ok(last_hit.map_or(0, |t| t + 1))
    }

    /// Propagated vs conjugated paths on one seeded random state.
    fn random_state_check(&self, report: &mut Report, prop: &QuantizedCatMap, rng: &mut ChaCha8Rng) -> Result<()> {
        let n = prop.dimension();
        let amps: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi = TorusState::new(amps.into_iter().map(|z| z / norm).collect())?;
        let t = rng.gen_range(1..=8u32);
        let ev = prop.trig_ev(&psi, &self.observable, t)?;
        report.summary.cross_checks.push(CrossCheck::new(
            format!("N={n}: random state, propagated vs conjugated EV at t={t}"),
            ev.propagated,
            ev.conjugated,
            self.egorov_tolerance,
        ));
        Ok(())
    }
}
