use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symbols::{Coefficient, Representation, Symbol};

/// Trig polynomial `a(q, p) = Σ c_m e^{2πi(m₁q + m₂p)}` on the unit torus.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPolynomial {
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl TrigPolynomial {
    pub fn new(terms: impl IntoIterator<Item = ((i64, i64), Complex64)>) -> Self {
        let mut out = Self::default();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: (i64, i64), c: Complex64) {
        let e = self.terms.entry(m).or_default();
        *e += c;
        if *e == Complex64::new(0.0, 0.0) {
            self.terms.remove(&m);
        }
    }

    /// Adds the real mode `2·amp·cos(2π⟨m, z⟩)`.
    pub fn with_cosine(mut self, m: (i64, i64), amp: f64) -> Self {
        self.add_term(m, Complex64::new(amp, 0.0));
        self.add_term((-m.0, -m.1), Complex64::new(amp, 0.0));
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Torus average `c_{(0,0)}`.
    pub fn mean(&self) -> Complex64 {
        self.terms.get(&(0, 0)).copied().unwrap_or_default()
    }

    pub fn max_mode(&self) -> i64 {
        self.terms.keys().map(|m| m.0.abs().max(m.1.abs())).max().unwrap_or(0)
    }

    pub fn eval(&self, q: f64, p: f64) -> Complex64 {
        self.terms()
            .map(|(m, c)| c * Complex64::from_polar(1.0, TAU * (m.0 as f64 * q + m.1 as f64 * p)))
            .sum()
    }

    pub fn is_real(&self) -> bool {
        self.terms().all(|(m, c)| {
            let partner = self.terms.get(&(-m.0, -m.1)).copied().unwrap_or_default();
            (partner - c.conj()).norm() <= 1e-14 * (1.0 + c.norm())
        })
    }

    /// Reads a symbol `a(x, ξ)` as a torus function through
    /// `(x, ξ) = (2πq, 2πp)`. Each angle mode must carry constants or
    /// waves `e^{inξ}` with integer `n`.
    pub fn from_symbol(a: &Symbol) -> Result<Self> {
        let Representation::AngleFourier(modes) = a.representation() else {
            return Err(Error::Capability(format!(
                "symbol '{}' is not an angle-Fourier trig polynomial",
                a.name()
            )));
        };
        let mut out = Self::default();
        for (&m, c) in modes {
            collect(m, c, a, &mut out)?;
        }
        if a.is_real() && !out.is_real() {
            return Err(Error::Capability(format!(
                "symbol '{}' is flagged real but its modes are not conjugate-symmetric",
                a.name()
            )));
        }
        Ok(out)
    }
}

fn collect(m: i64, c: &Coefficient, a: &Symbol, out: &mut TrigPolynomial) -> Result<()> {
    let bad = || {
        Error::Capability(format!(
            "symbol '{}' has a mode that is not a torus character",
            a.name()
        ))
    };
    match c {
        Coefficient::Wave { amplitude, frequency } => {
            if frequency.fract() != 0.0 {
                return Err(bad());
            }
            out.add_term((m, *frequency as i64), *amplitude);
        }
        Coefficient::Polynomial(p) => {
            if p.iter().skip(1).any(|z| z.norm() != 0.0) {
                return Err(bad());
            }
            if let Some(&c0) = p.first() {
                out.add_term((m, 0), c0);
            }
        }
        Coefficient::Sum(terms) => {
            for t in terms {
                collect(m, t, a, out)?;
            }
        }
        Coefficient::Function { .. } => return Err(bad()),
    }
    Ok(())
}
