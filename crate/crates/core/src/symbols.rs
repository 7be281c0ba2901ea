//! Phase-space symbols a(x, ξ).
//!
//! A [`Symbol`] is an immutable principal symbol on the cylinder T*S¹ (angle
//! `x` with period 2π, momentum/action `ξ` unconstrained). Three
//! representations are supported:
//!
//! * closed form: a value callable plus an optional analytic gradient;
//! * angle-Fourier form: `a(x, ξ) = Σ_m c_m(ξ) e^{imx}` with finitely many modes;
//! * separable sums: `Σ_k f_k(x) g_k(ξ)`.
//!
//! Higher-order terms of the symbol expansion are identically zero: every
//! symbol here is its own principal symbol.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex-valued function of one real variable.
pub type ScalarFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;
/// Complex-valued function on phase space.
pub type PointFn = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;
/// Gradient `(∂ₓa, ∂_ξ a)` on phase space.
pub type GradFn = Arc<dyn Fn(f64, f64) -> (Complex64, Complex64) + Send + Sync>;

/// Default Fourier cutoff.
pub const DEFAULT_CUTOFF: usize = 32;

/// A phase-space point `(x, ξ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub xi: f64,
}

impl Point {
    pub const fn new(x: f64, xi: f64) -> Self {
        Self { x, xi }
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, xi): (f64, f64)) -> Self {
        Self { x, xi }
    }
}

/// Momentum-dependent coefficient `c_m(ξ)` of an angle-Fourier mode.
#[derive(Clone)]
pub enum Coefficient {
    /// `Σ_j c_j ξ^j`.
    Polynomial(Vec<Complex64>),
    /// `amplitude · e^{i frequency ξ}`.
    Wave {
        amplitude: Complex64,
        frequency: f64,
    },
    /// Arbitrary callable with optional derivative.
    Function {
        value: ScalarFn,
        derivative: Option<ScalarFn>,
    },
    Sum(Vec<Coefficient>),
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            Self::Wave { amplitude, frequency } => f
                .debug_struct("Wave")
                .field("amplitude", amplitude)
                .field("frequency", frequency)
                .finish(),
            Self::Function { derivative, .. } => f
                .debug_struct("Function")
                .field("has_derivative", &derivative.is_some())
                .finish(),
            Self::Sum(terms) => f.debug_tuple("Sum").field(terms).finish(),
        }
    }
}

impl Coefficient {
    pub fn constant(c: impl Into<Complex64>) -> Self {
        Self::Polynomial(vec![c.into()])
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        match self {
            Self::Polynomial(c) => c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &cj| acc * xi + cj),
            Self::Wave { amplitude, frequency } => amplitude * Complex64::from_polar(1.0, frequency * xi),
            Self::Function { value, .. } => value(xi),
            Self::Sum(terms) => terms.iter().map(|t| t.eval(xi)).sum(),
        }
    }

    /// `dc/dξ`, or `None` for a callable without derivative.
    pub fn derivative(&self, xi: f64) -> Option<Complex64> {
        match self {
            Self::Polynomial(c) => Some(
                c.iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(Complex64::new(0.0, 0.0), |acc, (j, &cj)| acc * xi + cj * j as f64),
            ),
            Self::Wave { amplitude, frequency } => {
                Some(amplitude * Complex64::new(0.0, *frequency) * Complex64::from_polar(1.0, frequency * xi))
            }
            Self::Function { derivative, .. } => derivative.as_ref().map(|d| d(xi)),
            Self::Sum(terms) => terms.iter().map(|t| t.derivative(xi)).sum(),
        }
    }

    /// Complex-conjugated coefficient, `conj(c(ξ))`.
    pub fn conj(&self) -> Self {
        match self {
            Self::Polynomial(c) => Self::Polynomial(c.iter().map(|z| z.conj()).collect()),
            Self::Wave { amplitude, frequency } => Self::Wave {
                amplitude: amplitude.conj(),
                frequency: -frequency,
            },
            Self::Function { value, derivative } => {
                let v = value.clone();
                Self::Function {
                    value: Arc::new(move |xi| v(xi).conj()),
                    derivative: derivative.clone().map(|d| {
                        let d: ScalarFn = Arc::new(move |xi| d(xi).conj());
                        d
                    }),
                }
            }
            Self::Sum(terms) => Self::Sum(terms.iter().map(Self::conj).collect()),
        }
    }

    fn scaled(&self, s: Complex64) -> Self {
        match self {
            Self::Polynomial(c) => Self::Polynomial(c.iter().map(|z| z * s).collect()),
            Self::Wave { amplitude, frequency } => Self::Wave {
                amplitude: amplitude * s,
                frequency: *frequency,
            },
            Self::Function { value, derivative } => {
                let v = value.clone();
                Self::Function {
                    value: Arc::new(move |xi| v(xi) * s),
                    derivative: derivative.clone().map(|d| {
                        let d: ScalarFn = Arc::new(move |xi| d(xi) * s);
                        d
                    }),
                }
            }
            Self::Sum(terms) => Self::Sum(terms.iter().map(|t| t.scaled(s)).collect()),
        }
    }

    /// Polynomial coefficients if this coefficient is a polynomial in ξ
    /// (sums are merged, zero-frequency waves count as constants).
    pub fn as_polynomial(&self) -> Option<Vec<Complex64>> {
        match self {
            Self::Polynomial(c) => Some(c.clone()),
            Self::Sum(terms) => {
                let mut out: Vec<Complex64> = Vec::new();
                for t in terms {
                    let p = t.as_polynomial()?;
                    if p.len() > out.len() {
                        out.resize(p.len(), Complex64::new(0.0, 0.0));
                    }
                    for (o, c) in out.iter_mut().zip(p) {
                        *o += c;
                    }
                }
                Some(out)
            }
            Self::Wave { amplitude, frequency } if *frequency == 0.0 => Some(vec![*amplitude]),
            _ => None,
        }
    }
}

/// One term `f(x)·g(ξ)` of a separable symbol.
#[derive(Clone)]
pub struct SeparableTerm {
    pub position: ScalarFn,
    pub position_derivative: Option<ScalarFn>,
    pub momentum: ScalarFn,
    pub momentum_derivative: Option<ScalarFn>,
}

/// Storage of a symbol.
#[derive(Clone)]
pub enum Representation {
    ClosedForm { value: PointFn, gradient: Option<GradFn> },
    AngleFourier(BTreeMap<i64, Coefficient>),
    Separable(Vec<SeparableTerm>),
}

/// Box restriction of the symbol's domain; `None` means unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Domain {
    pub x: Option<(f64, f64)>,
    pub xi: Option<(f64, f64)>,
}

/// Immutable phase-space function.
#[derive(Clone)]
pub struct Symbol {
    name: String,
    dimension: usize,
    real: bool,
    periodic: bool,
    domain: Domain,
    repr: Representation,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Representation::ClosedForm { .. } => "closed-form".to_string(),
            Representation::AngleFourier(modes) => {
                format!("angle-fourier{:?}", modes.keys().collect::<Vec<_>>())
            }
            Representation::Separable(t) => format!("separable[{}]", t.len()),
        };
        f.debug_struct("Symbol")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .field("real", &self.real)
            .field("periodic", &self.periodic)
            .field("repr", &kind)
            .finish()
    }
}

/// Angle-Fourier coefficients `σ(a)_m(I)` for `|m| ≤ M`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierTable {
    cutoff: usize,
    values: Vec<Complex64>,
    nodes: usize,
}

impl FourierTable {
    pub fn from_values(cutoff: usize, values: Vec<Complex64>) -> Self {
        assert_eq!(values.len(), 2 * cutoff + 1);
        Self {
            cutoff,
            values,
            nodes: 0,
        }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Quadrature nodes used to compute the table (0 if given directly).
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Coefficient of `e^{imx}`; zero outside the table.
    pub fn get(&self, m: i64) -> Complex64 {
        let c = self.cutoff as i64;
        if m.abs() > c {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[(m + c) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let c = self.cutoff as i64;
        self.values.iter().enumerate().map(move |(i, &v)| (i as i64 - c, v))
    }

    /// Truncation estimate `Σ_{M−2<|m|≤M} |c_m|`.
    pub fn tail_mass(&self) -> f64 {
        let c = self.cutoff as i64;
        self.iter()
            .filter(|(m, _)| m.abs() > c - 2)
            .map(|(_, v)| v.norm())
            .sum()
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl Symbol {
    fn new(name: impl Into<String>, real: bool, periodic: bool, repr: Representation) -> Self {
        Self {
            name: name.into(),
            dimension: 1,
            real,
            periodic,
            domain: Domain::default(),
            repr,
        }
    }

    /// Closed-form symbol; `periodic` declares 2π-periodicity in `x`.
    pub fn closed_form(
        name: impl Into<String>,
        value: PointFn,
        gradient: Option<GradFn>,
        real: bool,
        periodic: bool,
    ) -> Self {
        Self::new(name, real, periodic, Representation::ClosedForm { value, gradient })
    }

    /// Angle-Fourier symbol from `(m, c_m)` pairs; repeated modes are summed.
    pub fn angle_fourier(
        name: impl Into<String>,
        modes: impl IntoIterator<Item = (i64, Coefficient)>,
        real: bool,
    ) -> Self {
        let mut map: BTreeMap<i64, Coefficient> = BTreeMap::new();
        for (m, c) in modes {
            match map.remove(&m) {
                Some(prev) => {
                    map.insert(m, Coefficient::Sum(vec![prev, c]));
                }
                None => {
                    map.insert(m, c);
                }
            }
        }
        Self::new(name, real, true, Representation::AngleFourier(map))
    }

    /// Separable symbol `Σ f_k(x) g_k(ξ)`; `periodic` declares every `f_k`
    /// 2π-periodic.
    pub fn separable(name: impl Into<String>, terms: Vec<SeparableTerm>, real: bool, periodic: bool) -> Self {
        Self::new(name, real, periodic, Representation::Separable(terms))
    }

    pub fn constant(c: f64) -> Self {
        Self::angle_fourier(format!("constant({c})"), [(0, Coefficient::constant(c))], true)
    }

    /// `amplitude · cos(m x + n ξ) + offset`.
    pub fn cosine(m: i64, n: f64, amplitude: f64, offset: f64) -> Self {
        let half = Complex64::new(0.5 * amplitude, 0.0);
        let mut modes = vec![
            (
                m,
                Coefficient::Wave {
                    amplitude: half,
                    frequency: n,
                },
            ),
            (
                -m,
                Coefficient::Wave {
                    amplitude: half,
                    frequency: -n,
                },
            ),
        ];
        if offset != 0.0 {
            modes.push((0, Coefficient::constant(offset)));
        }
        Self::angle_fourier(
            format!("cos(m={m}, n={n}, amp={amplitude}, offset={offset})"),
            modes,
            true,
        )
    }

    /// The character `e^{i(m x + n ξ)}`.
    pub fn character(m: i64, n: f64) -> Self {
        Self::angle_fourier(
            format!("character(m={m}, n={n})"),
            [(
                m,
                Coefficient::Wave {
                    amplitude: Complex64::new(1.0, 0.0),
                    frequency: n,
                },
            )],
            false,
        )
    }

    /// The momentum coordinate `a(x, ξ) = ξ`.
    pub fn plane() -> Self {
        Self::angle_fourier(
            "plane",
            [(0, Coefficient::Polynomial(vec![zero(), Complex64::new(1.0, 0.0)]))],
            true,
        )
    }

    /// Free rotor `H = ξ²/2`.
    pub fn rotor_hamiltonian() -> Self {
        Self::angle_fourier(
            "rotor-H",
            [(
                0,
                Coefficient::Polynomial(vec![zero(), zero(), Complex64::new(0.5, 0.0)]),
            )],
            true,
        )
    }

    /// Pendulum `H = ξ²/2 + g cos x`.
    pub fn pendulum_hamiltonian(g: f64) -> Self {
        let half_g = Complex64::new(0.5 * g, 0.0);
        Self::angle_fourier(
            format!("pendulum-H(g={g})"),
            [
                (
                    0,
                    Coefficient::Polynomial(vec![zero(), zero(), Complex64::new(0.5, 0.0)]),
                ),
                (1, Coefficient::constant(half_g)),
                (-1, Coefficient::constant(half_g)),
            ],
            true,
        )
    }

    /// Generating phase `φ(u) = slope·u` (read at `(u, 0)`); not periodic.
    pub fn linear_phase(slope: f64) -> Self {
        Self::closed_form(
            format!("linear-phase(slope={slope})"),
            Arc::new(move |u, _| Complex64::new(slope * u, 0.0)),
            Some(Arc::new(move |_, _| (Complex64::new(slope, 0.0), zero()))),
            true,
            false,
        )
    }

    /// Generating phase `φ(u) = slope·u + ε sin u`; its graph `φ'` has
    /// curvature, so stationary-phase corrections are nontrivial.
    pub fn curved_phase(slope: f64, eps: f64) -> Self {
        Self::closed_form(
            format!("curved-phase(slope={slope}, eps={eps})"),
            Arc::new(move |u, _| Complex64::new(slope * u + eps * u.sin(), 0.0)),
            Some(Arc::new(move |u, _| {
                (Complex64::new(slope + eps * u.cos(), 0.0), zero())
            })),
            true,
            false,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Declares the phase-space dimension `d` (1 or 2).
    pub fn with_dimension(mut self, d: usize) -> Result<Self> {
        if !(1..=2).contains(&d) {
            return Err(Error::Config(format!("phase-space dimension must be 1 or 2, got {d}")));
        }
        self.dimension = d;
        Ok(self)
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    /// Angle-Fourier modes, when stored in that form.
    pub fn modes(&self) -> Option<&BTreeMap<i64, Coefficient>> {
        match &self.repr {
            Representation::AngleFourier(m) => Some(m),
            _ => None,
        }
    }

    /// Largest `|m|` among stored angle-Fourier modes.
    pub fn max_mode(&self) -> Option<i64> {
        self.modes().map(|m| m.keys().map(|k| k.abs()).max().unwrap_or(0))
    }

    fn check_domain(&self, p: Point) -> Result<()> {
        let check = |coordinate: &'static str, value: f64, range: Option<(f64, f64)>| {
            let (lo, hi) = range.unwrap_or((f64::NEG_INFINITY, f64::INFINITY));
            if !value.is_finite() || value < lo || value > hi {
                Err(Error::Domain {
                    coordinate,
                    value,
                    lo,
                    hi,
                })
            } else {
                Ok(())
            }
        };
        check("x", p.x, self.domain.x)?;
        check("xi", p.xi, self.domain.xi)
    }

    /// `a(x, ξ)` without domain checks.
    pub fn value(&self, x: f64, xi: f64) -> Complex64 {
        let v = match &self.repr {
            Representation::ClosedForm { value, .. } => value(x, xi),
            Representation::AngleFourier(modes) => modes
                .iter()
                .map(|(&m, c)| c.eval(xi) * Complex64::from_polar(1.0, m as f64 * x))
                .sum(),
            Representation::Separable(terms) => terms.iter().map(|t| (t.position)(x) * (t.momentum)(xi)).sum(),
        };
        if self.real {
            Complex64::new(v.re, 0.0)
        } else {
            v
        }
    }

    /// Evaluates the symbol at a point of its domain.
    pub fn eval(&self, point: impl Into<Point>) -> Result<Complex64> {
        let p = point.into();
        self.check_domain(p)?;
        Ok(self.value(p.x, p.xi))
    }

    /// Analytic gradient `(∂ₓa, ∂_ξ a)`.
    pub fn grad(&self, point: impl Into<Point>) -> Result<(Complex64, Complex64)> {
        let p = point.into();
        self.check_domain(p)?;
        let (gx, gxi) = self.gradient_unchecked(p.x, p.xi)?;
        if self.real {
            Ok((Complex64::new(gx.re, 0.0), Complex64::new(gxi.re, 0.0)))
        } else {
            Ok((gx, gxi))
        }
    }

    fn gradient_unchecked(&self, x: f64, xi: f64) -> Result<(Complex64, Complex64)> {
        match &self.repr {
            Representation::ClosedForm { gradient, .. } => match gradient {
                Some(g) => Ok(g(x, xi)),
                None => Err(Error::Capability(format!(
                    "symbol '{}' has no analytic gradient",
                    self.name
                ))),
            },
            Representation::AngleFourier(modes) => {
                let mut gx = zero();
                let mut gxi = zero();
                for (&m, c) in modes {
                    let e = Complex64::from_polar(1.0, m as f64 * x);
                    gx += c.eval(xi) * Complex64::new(0.0, m as f64) * e;
                    let d = c.derivative(xi).ok_or_else(|| {
                        Error::Capability(format!("mode {m} of symbol '{}' has no derivative", self.name))
                    })?;
                    gxi += d * e;
                }
                Ok((gx, gxi))
            }
            Representation::Separable(terms) => {
                let mut gx = zero();
                let mut gxi = zero();
                for t in terms {
                    let (Some(df), Some(dg)) = (&t.position_derivative, &t.momentum_derivative) else {
                        return Err(Error::Capability(format!(
                            "separable symbol '{}' lacks factor derivatives",
                            self.name
                        )));
                    };
                    gx += df(x) * (t.momentum)(xi);
                    gxi += (t.position)(x) * dg(xi);
                }
                Ok((gx, gxi))
            }
        }
    }

    /// Angle-Fourier coefficients of `x ↦ a(x, I)` for `|m| ≤ cutoff`,
    /// computed by the trapezoidal rule on `8·cutoff + 16` nodes.
    pub fn fourier_coefficients(&self, cutoff: usize, action: f64) -> Result<FourierTable> {
        if !self.periodic {
            return Err(Error::Capability(format!(
                "symbol '{}' is not 2π-periodic in the angle",
                self.name
            )));
        }
        self.check_domain(Point::new(0.0, action))?;
        let nodes = 8 * cutoff + 16;
        let samples: Vec<Complex64> = (0..nodes)
            .map(|j| self.value(2.0 * PI * j as f64 / nodes as f64, action))
            .collect();
        let c = cutoff as i64;
        let mut values: Vec<Complex64> = (-c..=c)
            .map(|m| {
                samples
                    .iter()
                    .enumerate()
                    .map(|(j, &s)| s * Complex64::from_polar(1.0, -2.0 * PI * (m * j as i64) as f64 / nodes as f64))
                    .sum::<Complex64>()
                    / nodes as f64
            })
            .collect();
        if self.real {
            for m in 0..=cutoff {
                let (lo, hi) = (cutoff - m, cutoff + m);
                let avg = 0.5 * (values[hi] + values[lo].conj());
                values[hi] = avg;
                values[lo] = avg.conj();
            }
        }
        Ok(FourierTable { cutoff, values, nodes })
    }

    /// Pointwise sum of two symbols.
    pub fn add(&self, other: &Symbol) -> Symbol {
        let name = format!("{} + {}", self.name, other.name);
        let real = self.real && other.real;
        let periodic = self.periodic && other.periodic;
        let mut out = match (&self.repr, &other.repr) {
            (Representation::AngleFourier(a), Representation::AngleFourier(b)) => {
                Symbol::angle_fourier(name, a.iter().chain(b.iter()).map(|(&m, c)| (m, c.clone())), real)
            }
            (Representation::Separable(a), Representation::Separable(b)) => {
                Symbol::separable(name, a.iter().chain(b.iter()).cloned().collect(), real, periodic)
            }
            _ => {
                let (l, r) = (self.clone(), other.clone());
                let (gl, gr) = (self.clone(), other.clone());
                let gradient: GradFn = Arc::new(move |x, xi| {
                    let a = gl.gradient_unchecked(x, xi).unwrap_or((zero(), zero()));
                    let b = gr.gradient_unchecked(x, xi).unwrap_or((zero(), zero()));
                    (a.0 + b.0, a.1 + b.1)
                });
                let has_grad = self.gradient_unchecked(0.0, 0.0).is_ok() && other.gradient_unchecked(0.0, 0.0).is_ok();
                Symbol::closed_form(
                    name,
                    Arc::new(move |x, xi| l.value(x, xi) + r.value(x, xi)),
                    has_grad.then_some(gradient),
                    real,
                    periodic,
                )
            }
        };
        out.dimension = self.dimension.max(other.dimension);
        out
    }

    /// `s · a`; stays real only for real `s`.
    pub fn scale(&self, s: Complex64) -> Symbol {
        let real = self.real && s.im == 0.0;
        let name = format!("({}) * {}", s, self.name);
        let mut out = match &self.repr {
            Representation::AngleFourier(m) => {
                Symbol::angle_fourier(name, m.iter().map(|(&k, c)| (k, c.scaled(s))), real)
            }
            _ => {
                let (a, g) = (self.clone(), self.clone());
                let has_grad = self.gradient_unchecked(0.0, 0.0).is_ok();
                let gradient: GradFn = Arc::new(move |x, xi| {
                    let (gx, gxi) = g.gradient_unchecked(x, xi).unwrap_or((zero(), zero()));
                    (gx * s, gxi * s)
                });
                Symbol::closed_form(
                    name,
                    Arc::new(move |x, xi| a.value(x, xi) * s),
                    has_grad.then_some(gradient),
                    real,
                    self.periodic,
                )
            }
        };
        out.dimension = self.dimension;
        out.domain = self.domain;
        out
    }

    /// Splits `H = ξ²/2 + V(x)` and returns the potential `V` as an x-only
    /// symbol. Only angle-Fourier symbols whose `m = 0` coefficient is
    /// `ξ²/2 + const` and whose other coefficients are constant qualify.
    pub fn kinetic_plus_potential(&self) -> Option<Symbol> {
        let modes = self.modes()?;
        let mut potential = Vec::new();
        for (&m, c) in modes {
            let p = c.as_polynomial()?;
            let get = |j: usize| p.get(j).copied().unwrap_or_else(zero);
            if m == 0 {
                if (get(2) - Complex64::new(0.5, 0.0)).norm() > 1e-15 || get(1).norm() > 1e-15 {
                    return None;
                }
                if p.iter().skip(3).any(|c| c.norm() > 1e-15) {
                    return None;
                }
                potential.push((0, Coefficient::constant(get(0))));
            } else {
                if p.iter().skip(1).any(|c| c.norm() > 1e-15) {
                    return None;
                }
                potential.push((m, Coefficient::constant(get(0))));
            }
        }
        Some(Symbol::angle_fourier(
            format!("potential of {}", self.name),
            potential,
            self.real,
        ))
    }

    /// True if the symbol depends on `x` only (no ξ-dependence in any mode).
    pub fn is_position_only(&self) -> bool {
        match self.modes() {
            Some(m) => m.values().all(|c| {
                c.as_polynomial()
                    .map(|p| p.iter().skip(1).all(|z| z.norm() == 0.0))
                    .unwrap_or(false)
            }),
            None => false,
        }
    }

    /// True if the symbol depends on ξ only (a single `m = 0` mode).
    pub fn is_momentum_only(&self) -> bool {
        self.modes().map(|m| m.keys().all(|&k| k == 0)).unwrap_or(false)
    }

    /// Checks `c_{-m}(ξ) = conj(c_m(ξ))` at the given momenta (angle-Fourier
    /// form only; other forms are trusted).
    pub fn satisfies_reality(&self, momenta: &[f64], tol: f64) -> bool {
        let Some(modes) = self.modes() else {
            return true;
        };
        modes.iter().all(|(&m, c)| {
            momenta.iter().all(|&xi| {
                let partner = modes.get(&-m).map(|p| p.eval(xi)).unwrap_or_else(zero);
                (partner - c.eval(xi).conj()).norm() <= tol
            })
        })
    }
}

/// The built-in symbol catalog.
pub mod catalog {
    use super::*;

    /// Catalog entries as `(name, parameters, description)`.
    pub const ENTRIES: &[(&str, &str, &str)] = &[
        ("constant", "c=1", "a(x, xi) = c"),
        (
            "cos",
            "m=1, n=0, amp=1, offset=0",
            "a(x, xi) = amp * cos(m x + n xi) + offset",
        ),
        ("plane", "", "a(x, xi) = xi"),
        ("rotor-H", "", "H = xi^2 / 2"),
        ("pendulum-H", "g=1", "H = xi^2 / 2 + g cos x"),
        ("character", "m=1, n=0", "a(x, xi) = exp(i (m x + n xi))"),
    ];

    pub fn names() -> impl Iterator<Item = &'static str> {
        ENTRIES.iter().map(|e| e.0)
    }

    fn param(params: &[(String, f64)], allowed: &[&str], key: &str, default: f64) -> Result<f64> {
        for (k, _) in params {
            if !allowed.contains(&k.as_str()) {
                return Err(Error::Config(format!(
                    "unknown parameter '{k}' (allowed: {})",
                    allowed.join(", ")
                )));
            }
        }
        Ok(params
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .unwrap_or(default))
    }

    fn integer(name: &str, v: f64) -> Result<i64> {
        if v.fract() != 0.0 || !v.is_finite() || v.abs() > 1e6 {
            return Err(Error::Config(format!("parameter '{name}' must be an integer, got {v}")));
        }
        Ok(v as i64)
    }

    /// Builds a catalog symbol by name.
    pub fn build(name: &str, params: &[(String, f64)]) -> Result<Symbol> {
        match name {
            "constant" => Ok(Symbol::constant(param(params, &["c"], "c", 1.0)?)),
            "cos" => {
                let allowed = ["m", "n", "amp", "offset"];
                let m = integer("m", param(params, &allowed, "m", 1.0)?)?;
                Ok(Symbol::cosine(
                    m,
                    param(params, &allowed, "n", 0.0)?,
                    param(params, &allowed, "amp", 1.0)?,
                    param(params, &allowed, "offset", 0.0)?,
                ))
            }
            "plane" => {
                param(params, &[], "", 0.0)?;
                Ok(Symbol::plane())
            }
            "rotor-H" => {
                param(params, &[], "", 0.0)?;
                Ok(Symbol::rotor_hamiltonian())
            }
            "pendulum-H" => Ok(Symbol::pendulum_hamiltonian(param(params, &["g"], "g", 1.0)?)),
            "character" => {
                let allowed = ["m", "n"];
                let m = integer("m", param(params, &allowed, "m", 1.0)?)?;
                Ok(Symbol::character(m, param(params, &allowed, "n", 0.0)?))
            }
            other => Err(Error::Config(format!(
                "unknown catalog symbol '{other}' (known: {})",
                names().collect::<Vec<_>>().join(", ")
            ))),
        }
    }
}
