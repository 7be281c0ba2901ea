use std::f64::consts::TAU;

use num_complex::Complex64;

use super::map::{CatMap, Rational};
use super::trig::TrigPolynomial;
use crate::amplitude::smooth_bump;
use crate::error::{Error, Result};
use crate::quadrature::composite_gauss_legendre;

/// Upper bound on quadrature nodes for one Fourier coefficient.
const MAX_NODES: usize = 1 << 18;

/// Line `{(s, c + αs) mod 1}` on the torus with rational slope `α = p/q`;
/// it closes after `s` runs over `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusLine {
    pub offset: Rational,
    pub slope: Rational,
}

impl TorusLine {
    pub fn horizontal(offset: Rational) -> Self {
        Self {
            offset,
            slope: Rational::zero(),
        }
    }

    /// Length of the parameter interval over which the line closes.
    pub fn period(&self) -> i64 {
        self.slope.den
    }
}

/// Density `σ(s)` on a line parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineDensity {
    /// `1/q` on the closed line `s ∈ [0, q)` (unit mass).
    Uniform,
    /// Smooth compact bump centered at `center`, supported in
    /// `center ± half_width`, peak 1.
    Bump { center: f64, half_width: f64 },
}

impl LineDensity {
    pub fn value(&self, s: f64, line: &TorusLine) -> f64 {
        match *self {
            Self::Uniform => {
                let q = line.period() as f64;
                if (0.0..q).contains(&s) {
                    1.0 / q
                } else {
                    0.0
                }
            }
            Self::Bump { center, half_width } => smooth_bump((s - center) / half_width),
        }
    }

    pub fn mass(&self) -> f64 {
        match *self {
            Self::Uniform => 1.0,
            Self::Bump { center, half_width } => {
                composite_gauss_legendre(center - half_width, center + half_width, 256)
                    .integrate(|s| smooth_bump((s - center) / half_width))
            }
        }
    }
}

/// Exact frequency data of a character pulled back along a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineFrequency {
    /// `n = (Aᵀ)ᵗ m`.
    pub n: (i128, i128),
    /// `K = n₁q + n₂p`, so that the frequency along `s` is `K/q`.
    pub numerator: i128,
}

/// `(Aᵀ)ᵗ m` and the line frequency `⟨n, (1, α)⟩ = K/q`, exactly.
pub fn line_frequency(map: &CatMap, line: &TorusLine, m: (i64, i64), t: u32) -> Result<LineFrequency> {
    let n = map.transpose_power(m, t, 0)?;
    let (p, q) = (line.slope.num as i128, line.slope.den as i128);
    let numerator =
        n.0.checked_mul(q)
            .and_then(|a| n.1.checked_mul(p).and_then(|b| a.checked_add(b)))
            .ok_or_else(|| Error::Overflow(format!("line frequency of ({}, {})", n.0, n.1)))?;
    Ok(LineFrequency { n, numerator })
}

/// `e^{2πi n₂ c}` with `c = a/b` reduced exactly before leaving integers.
fn offset_phase(n2: i128, c: Rational) -> Complex64 {
    let b = c.den as i128;
    let r = (n2.rem_euclid(b) * (c.num as i128).rem_euclid(b)).rem_euclid(b);
    Complex64::from_polar(1.0, TAU * r as f64 / b as f64)
}

/// `∫ σ(s) e^{2πi⟨m, Fᵗ(s, c + αs)⟩} ds` for a single character, where
/// `F(z) = Az + v` is the affine map realized by the quantization; the
/// shift contributes the exact sign [`CatMap::affine_sign`].
///
/// Uniform densities are evaluated exactly: the result is the offset phase
/// when `K = 0` and exactly zero otherwise. Bump densities use
/// Gauss–Legendre quadrature of the Fourier integral.
pub fn line_transport(
    map: &CatMap,
    line: &TorusLine,
    density: &LineDensity,
    m: (i64, i64),
    t: u32,
) -> Result<Complex64> {
    let f = line_frequency(map, line, m, t)?;
    let phase = offset_phase(f.n.1, line.offset) * map.affine_sign(m, t)? as f64;
    match *density {
        LineDensity::Uniform => Ok(if f.numerator == 0 {
            phase
        } else {
            Complex64::new(0.0, 0.0)
        }),
        LineDensity::Bump { center, half_width } => {
            let nu = f.numerator as f64 / line.slope.den as f64;
            let width = 2.0 * half_width;
            let nodes = (256.0 + 8.0 * nu.abs() * width).min(MAX_NODES as f64) as usize;
            let rule = composite_gauss_legendre(center - half_width, center + half_width, nodes);
            let integral: Complex64 = rule
                .integrate(|s| Complex64::from_polar(smooth_bump((s - center) / half_width), TAU * nu * (s - center)));
            // shift the phase reference back from the center to s = 0
            Ok(phase * integral * Complex64::from_polar(1.0, TAU * (nu * center).rem_euclid(1.0)))
        }
    }
}

/// Line transport of a trig polynomial, term by term.
pub fn line_transport_trig(
    map: &CatMap,
    line: &TorusLine,
    density: &LineDensity,
    a: &TrigPolynomial,
    t: u32,
) -> Result<Complex64> {
    a.terms()
        .map(|(m, c)| Ok(c * line_transport(map, line, density, m, t)?))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_mode_carries_the_mass() {
        let map = CatMap::default();
        let line = TorusLine::horizontal(Rational::zero());
        for t in 0..6 {
            let v = line_transport(&map, &line, &LineDensity::Uniform, (0, 0), t).unwrap();
            assert_eq!(v, Complex64::new(1.0, 0.0));
        }
        let bump = LineDensity::Bump {
            center: 0.5,
            half_width: 0.25,
        };
        let v = line_transport(&map, &line, &bump, (0, 0), 3).unwrap();
        assert!((v.re - bump.mass()).abs() < 1e-14);
    }

    #[test]
    fn horizontal_uniform_line_is_exactly_zero() {
        let map = CatMap::default();
        let line = TorusLine::horizontal(Rational::zero());
        let mut firsts = Vec::new();
        for t in 0..8 {
            let f = line_frequency(&map, &line, (1, 0), t).unwrap();
            firsts.push(f.n.0);
            let v = line_transport(&map, &line, &LineDensity::Uniform, (1, 0), t).unwrap();
            assert_eq!(v, Complex64::new(0.0, 0.0));
        }
        assert_eq!(&firsts[..4], &[1, 2, 5, 13]);
    }

    #[test]
    fn bump_transform_matches_closed_phase_shift() {
        // shifting the bump center multiplies the transform by a phase only
        let map = CatMap::default();
        let line = TorusLine::horizontal(Rational::zero());
        let a = line_transport(
            &map,
            &line,
            &LineDensity::Bump {
                center: 0.5,
                half_width: 0.3,
            },
            (1, 0),
            1,
        )
        .unwrap();
        let b = line_transport(
            &map,
            &line,
            &LineDensity::Bump {
                center: 0.25,
                half_width: 0.3,
            },
            (1, 0),
            1,
        )
        .unwrap();
        assert!((a.norm() - b.norm()).abs() < 1e-14);
    }
}
