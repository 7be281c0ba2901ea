use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::line::{LineDensity, TorusLine};
use super::map::CatMap;
use super::trig::TrigPolynomial;
use crate::error::{Error, Result};

/// Elementary symplectic matrices with exact quantizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `[[1, 0], [k, 1]]`, quantized as `diag(τ^{k j²})`.
    Shear(i64),
    /// `[[0, −1], [1, 0]]`, quantized as the DFT `e^{2πijk/N}/√N`.
    Fourier,
    /// `[[0, 1], [−1, 0]]`, the inverse DFT.
    InverseFourier,
}

impl Generator {
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Self::Shear(k) => [[1, 0], [k, 1]],
            Self::Fourier => [[0, -1], [1, 0]],
            Self::InverseFourier => [[0, 1], [-1, 0]],
        }
    }

    fn inverse(self) -> Self {
        match self {
            Self::Shear(k) => Self::Shear(-k),
            Self::Fourier => Self::InverseFourier,
            Self::InverseFourier => Self::Fourier,
        }
    }
}

fn mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Writes `A = G₁G₂⋯G_k` in the generators by a Euclid reduction of the
/// first column.
pub fn factorize(a: [[i64; 2]; 2]) -> Result<Vec<Generator>> {
    let mut b = a;
    // left factors peeled off A, in application order
    let mut peeled: Vec<Generator> = Vec::new();
    let mut guard = 0;
    while b[1][0] != 0 {
        guard += 1;
        if guard > 200 {
            return Err(Error::Capability(format!("no generator factorization found for {a:?}")));
        }
        if b[0][0] != 0 {
            let k = -(b[1][0] / b[0][0]);
            if k != 0 {
                b = mul(Generator::Shear(k).matrix(), b);
                peeled.push(Generator::Shear(k));
            }
        }
        if b[1][0] != 0 {
            b = mul(Generator::InverseFourier.matrix(), b);
            peeled.push(Generator::InverseFourier);
        }
    }
    // b = [[s, x], [0, s]] with s = ±1
    let (s, x) = (b[0][0], b[0][1]);
    if s * b[1][1] != 1 || s.abs() != 1 {
        return Err(Error::Capability(format!("matrix {a:?} is not in SL(2, Z)")));
    }
    // [[1, x], [0, 1]] = S·L_{−x}·S⁻¹, and −I = S²
    let mut tail = Vec::new();
    if s == -1 {
        tail.extend([Generator::Fourier, Generator::Fourier]);
    }
    let x = s * x;
    if x != 0 {
        tail.extend([Generator::Fourier, Generator::Shear(-x), Generator::InverseFourier]);
    }
    let mut out: Vec<Generator> = peeled.iter().map(|g| g.inverse()).collect();
    out.extend(tail);
    let mut check = [[1, 0], [0, 1]];
    for g in &out {
        check = mul(check, g.matrix());
    }
    if check != a {
        return Err(Error::Capability(format!("generator factorization of {a:?} failed")));
    }
    Ok(out)
}

/// Vector in the `N`-dimensional torus Hilbert space, position basis
/// `q_j = j/N`, periodicity phases `(0, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusState {
    amplitudes: Vec<Complex64>,
}

impl TorusState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() < 3 {
            return Err(Error::Config(format!(
                "torus dimension must be at least 3, got {}",
                amplitudes.len()
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Momentum eigenstate `ψ_j = e^{2πi k j/N}/√N` on the circle `p = k/N`.
    pub fn momentum_eigenstate(n: usize, k: i64) -> Result<Self> {
        let s = 1.0 / (n as f64).sqrt();
        let kk = k.rem_euclid(n as i64) as usize;
        Self::new(
            (0..n)
                .map(|j| Complex64::from_polar(s, TAU * ((kk * j) % n) as f64 / n as f64))
                .collect(),
        )
    }

    /// Lagrangian state on a line `p = c + αq` carrying the density `σ`:
    /// `ψ_j ∝ √σ(s_j) e^{2πiN(c s_j + α s_j²/2)}`, where `s_j ≡ j/N (mod 1)`
    /// is taken in the unit window around the density's support. Normalized
    /// to unit norm, so expectation values compare with line transport
    /// divided by [`LineDensity::mass`].
    ///
    /// A uniform density needs an integer slope and a phase that closes on
    /// the lattice (`Nc ∈ ℤ`, `Nα` even); the momentum eigenstates are the
    /// horizontal case.
    pub fn line_state(n: usize, line: &TorusLine, density: &LineDensity) -> Result<Self> {
        let nf = n as f64;
        let c = line.offset.to_f64();
        let alpha = line.slope.to_f64();
        let lo = match *density {
            LineDensity::Uniform => {
                let closes = line.slope.den == 1
                    && (n as i128 * line.offset.num as i128) % line.offset.den as i128 == 0
                    && (n as i128 * line.slope.num as i128) % 2 == 0;
                if !closes {
                    return Err(Error::Config(format!(
                        "uniform line state needs N*c integer and N*alpha even (N = {n}, c = {}, alpha = {})",
                        line.offset, line.slope
                    )));
                }
                0.0
            }
            LineDensity::Bump { center, .. } => center - 0.5,
        };
        let amps: Vec<Complex64> = (0..n)
            .map(|j| {
                let s = lo + (j as f64 / nf - lo).rem_euclid(1.0);
                let sigma = density.value(s, line).max(0.0);
                Complex64::from_polar(sigma.sqrt(), TAU * nf * (c * s + 0.5 * alpha * s * s))
            })
            .collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Config("line state has zero amplitude on the lattice".into()));
        }
        Self::new(amps.into_iter().map(|z| z / norm).collect())
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &TorusState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Exact quantization `U_A` of a cat map on the `N`-dimensional torus space.
///
/// `U_A = U_{G₁}⋯U_{G_k}` for `A = G₁⋯G_k`. Conjugation of the Weyl
/// translations obeys `U_A⁻¹ T(m) U_A = (−1)^{ab·m₁ + cd·m₂} T(Aᵀm)`, i.e.
/// `U_A` quantizes the affine map `z ↦ Az + v` of [`CatMap::shift`]
/// exactly.
#[derive(Clone)]
pub struct QuantizedCatMap {
    map: CatMap,
    n: usize,
    generators: Vec<Generator>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    tau: Vec<Complex64>,
    half: Vec<Complex64>,
    omega: Vec<Complex64>,
}

impl std::fmt::Debug for QuantizedCatMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuantizedCatMap")
            .field("map", &self.map)
            .field("n", &self.n)
            .field("generators", &self.generators)
            .finish()
    }
}

impl QuantizedCatMap {
    pub fn new(map: CatMap, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Config(format!("torus dimension must be at least 3, got {n}")));
        }
        let generators = factorize(map.matrix())?;
        let mut planner = FftPlanner::new();
        // τ = e^{iπ(N+1)/N}, tabulated over exponents mod 2N
        let tau = (0..2 * n)
            .map(|e| {
                let r = ((n + 1) * e) % (2 * n);
                Complex64::from_polar(1.0, PI * r as f64 / n as f64)
            })
            .collect();
        let half = (0..2 * n)
            .map(|e| Complex64::from_polar(1.0, PI * e as f64 / n as f64))
            .collect();
        let omega = (0..n)
            .map(|e| Complex64::from_polar(1.0, TAU * e as f64 / n as f64))
            .collect();
        Ok(Self {
            map,
            n,
            generators,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            tau,
            half,
            omega,
        })
    }

    pub fn map(&self) -> &CatMap {
        &self.map
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Effective Planck constant `1/(2πN)`.
    pub fn hbar(&self) -> f64 {
        1.0 / (TAU * self.n as f64)
    }

    fn tau_pow(&self, e: i128) -> Complex64 {
        self.tau[e.rem_euclid(2 * self.n as i128) as usize]
    }

    fn apply_generator(&self, g: Generator, v: &mut [Complex64]) {
        let s = 1.0 / (self.n as f64).sqrt();
        match g {
            Generator::Shear(k) => {
                for (j, z) in v.iter_mut().enumerate() {
                    let j = j as i128;
                    *z *= self.tau_pow(k as i128 * j * j);
                }
            }
            Generator::Fourier => {
                self.inverse.process(v);
                v.iter_mut().for_each(|z| *z *= s);
            }
            Generator::InverseFourier => {
                self.forward.process(v);
                v.iter_mut().for_each(|z| *z *= s);
            }
        }
    }

    fn check(&self, psi: &TorusState) -> Result<()> {
        if psi.dimension() != self.n {
            return Err(Error::Config(format!(
                "state of dimension {} on a propagator of dimension {}",
                psi.dimension(),
                self.n
            )));
        }
        Ok(())
    }

    /// `U_A ψ`.
    pub fn apply(&self, psi: &TorusState) -> Result<TorusState> {
        self.check(psi)?;
        let mut v = psi.amplitudes.clone();
        for &g in self.generators.iter().rev() {
            self.apply_generator(g, &mut v);
        }
        Ok(TorusState { amplitudes: v })
    }

    /// `U_A⁻¹ ψ`.
    pub fn apply_inverse(&self, psi: &TorusState) -> Result<TorusState> {
        self.check(psi)?;
        let mut v = psi.amplitudes.clone();
        for &g in &self.generators {
            self.apply_generator(g.inverse(), &mut v);
        }
        Ok(TorusState { amplitudes: v })
    }

    /// `U_Aᵗ ψ`.
    pub fn propagate(&self, psi: &TorusState, t: u32) -> Result<TorusState> {
        let mut out = psi.clone();
        for _ in 0..t {
            out = self.apply(&out)?;
        }
        Ok(out)
    }

    /// Dense `U_A`, row-major.
    pub fn matrix(&self) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for k in 0..n {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[k] = Complex64::new(1.0, 0.0);
            let col = self.apply(&TorusState { amplitudes: e }).expect("dimension matches");
            for (j, z) in col.amplitudes.iter().enumerate() {
                out[j * n + k] = *z;
            }
        }
        out
    }

    /// Midpoint Weyl translation
    /// `(T(m)ψ)_j = e^{iπm₁m₂/N} ω^{m₁j} ψ_{j+m₂}`, the quantization of
    /// `e^{2πi(m₁q + m₂p)}`. Depends on `m` mod `2N` only.
    pub fn translate(&self, m: (i128, i128), psi: &TorusState) -> Result<TorusState> {
        self.check(psi)?;
        let n = self.n as i128;
        let phase = self.half[(m.0.rem_euclid(2 * n) * m.1.rem_euclid(2 * n)).rem_euclid(2 * n) as usize];
        let m1 = m.0.rem_euclid(n);
        let m2 = m.1.rem_euclid(n);
        let amplitudes = (0..self.n)
            .map(|j| {
                let w = self.omega[((m1 * j as i128) % n) as usize];
                phase * w * psi.amplitudes[((j as i128 + m2) % n) as usize]
            })
            .collect();
        Ok(TorusState { amplitudes })
    }

    /// Dense `T(m)`, row-major.
    pub fn translation_matrix(&self, m: (i128, i128)) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for k in 0..n {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[k] = Complex64::new(1.0, 0.0);
            let col = self
                .translate(m, &TorusState { amplitudes: e })
                .expect("dimension matches");
            for (j, z) in col.amplitudes.iter().enumerate() {
                out[j * n + k] = *z;
            }
        }
        out
    }

    /// Modulus `M` such that `Aᴾ ≡ I (mod M)` forces `U_Aᴾ ∝ I`: `N` for
    /// odd `N`, `2N` for even `N`.
    pub fn period_modulus(&self) -> i128 {
        if self.n % 2 == 1 {
            self.n as i128
        } else {
            2 * self.n as i128
        }
    }

    /// Smallest `P` with `Aᴾ ≡ I` mod [`Self::period_modulus`]; then `U_Aᴾ`
    /// is a multiple of the identity.
    pub fn quantum_period(&self) -> Result<u64> {
        self.map.order_mod(self.period_modulus() as i64)
    }

    fn check_mode(&self, m: (i64, i64)) -> Result<()> {
        let limit = (self.n / 2) as i64;
        if m.0.abs() > limit || m.1.abs() > limit {
            return Err(Error::Aliasing {
                m1: m.0,
                m2: m.1,
                limit,
            });
        }
        Ok(())
    }

    /// `⟨U_Aᵗψ, T(m) U_Aᵗψ⟩` by the two independent paths.
    pub fn character_ev(&self, psi: &TorusState, m: (i64, i64), t: u32) -> Result<CharacterEv> {
        self.check_mode(m)?;
        let evolved = self.propagate(psi, t)?;
        let propagated = evolved.inner(&self.translate((m.0 as i128, m.1 as i128), &evolved)?);
        let conjugated = self.conjugated_ev(psi, m, t)?;
        Ok(CharacterEv { propagated, conjugated })
    }

    /// Egorov path only: `±⟨ψ, T((Aᵀ)ᵗm) ψ⟩` with `(Aᵀ)ᵗm` reduced mod
    /// `2N` and the sign from [`CatMap::affine_sign`].
    pub fn conjugated_ev(&self, psi: &TorusState, m: (i64, i64), t: u32) -> Result<Complex64> {
        self.check_mode(m)?;
        let n = self.map.transpose_power(m, t, 2 * self.n as i128)?;
        Ok(psi.inner(&self.translate(n, psi)?) * self.map.affine_sign(m, t)? as f64)
    }

    /// Expectation of a trig polynomial at time `t` along both paths.
    pub fn trig_ev(&self, psi: &TorusState, a: &TrigPolynomial, t: u32) -> Result<CharacterEv> {
        for (m, _) in a.terms() {
            self.check_mode(m)?;
        }
        let evolved = self.propagate(psi, t)?;
        let mut out = CharacterEv::default();
        for (m, c) in a.terms() {
            out.propagated += c * evolved.inner(&self.translate((m.0 as i128, m.1 as i128), &evolved)?);
            out.conjugated += c * self.conjugated_ev(psi, m, t)?;
        }
        Ok(out)
    }
}

/// The two computations of a quantum expectation value.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CharacterEv {
    /// State propagated by `U_Aᵗ`, observable fixed.
    pub propagated: Complex64,
    /// Observable conjugated exactly (Egorov), state fixed.
    pub conjugated: Complex64,
}

impl CharacterEv {
    pub fn gap(&self) -> f64 {
        (self.propagated - self.conjugated).norm()
    }
}

/// `⟨U_Aᵗψ, T(m)U_Aᵗψ⟩` for a character, both paths.
pub fn quantum_character_ev(
    propagator: &QuantizedCatMap,
    psi: &TorusState,
    m: (i64, i64),
    t: u32,
) -> Result<CharacterEv> {
    propagator.character_ev(psi, m, t)
}
