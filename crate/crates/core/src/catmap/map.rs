use std::fmt;

use crate::error::{Error, Result};

/// Exact rational `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Config("rational with zero denominator".into()));
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        let s = den.signum();
        Ok(Self {
            num: s * num / g,
            den: s * den / g,
        })
    }

    pub fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Best rational approximation of `x` with denominator at most
    /// `max_den`, from the continued-fraction convergents and their
    /// semiconvergents.
    pub fn approximate(x: f64, max_den: i64) -> Result<Self> {
        if !x.is_finite() || max_den < 1 {
            return Err(Error::Config(format!(
                "cannot approximate {x} with denominator <= {max_den}"
            )));
        }
        let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
        let mut r = x;
        loop {
            let a = r.floor();
            if a.abs() > 1e15 {
                break;
            }
            let a = a as i64;
            let (p2, q2) = (a * p1 + p0, a * q1 + q0);
            if q2 > max_den {
                // largest admissible semiconvergent
                let k = (max_den - q0) / q1;
                let (ps, qs) = (k * p1 + p0, k * q1 + q0);
                if (ps as f64 / qs as f64 - x).abs() < (p1 as f64 / q1 as f64 - x).abs() {
                    return Self::new(ps, qs);
                }
                break;
            }
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
            let frac = r - a as f64;
            if frac.abs() < 1e-15 {
                break;
            }
            r = 1.0 / frac;
        }
        Self::new(p1, q1)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Hyperbolic toral automorphism `z ↦ Az mod 1`, `A ∈ SL(2, ℤ)`,
/// `|tr A| > 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatMap {
    a: [[i64; 2]; 2],
}

impl Default for CatMap {
    fn default() -> Self {
        Self { a: [[2, 1], [1, 1]] }
    }
}

impl CatMap {
    pub fn new(a: [[i64; 2]; 2]) -> Result<Self> {
        let det = a[0][0] as i128 * a[1][1] as i128 - a[0][1] as i128 * a[1][0] as i128;
        if det != 1 {
            return Err(Error::Config(format!("cat map needs det A = 1, got {det}")));
        }
        let tr = a[0][0] as i128 + a[1][1] as i128;
        if tr.abs() <= 2 {
            return Err(Error::Config(format!("cat map needs |tr A| > 2, got {tr}")));
        }
        Ok(Self { a })
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.a
    }

    pub fn trace(&self) -> i64 {
        self.a[0][0] + self.a[1][1]
    }

    /// `(λ₊, λ₋)` with `|λ₊| > 1 > |λ₋|`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let tr = self.trace() as f64;
        let root = (tr * tr - 4.0).sqrt();
        let big = 0.5 * (tr.abs() + root) * tr.signum();
        (big, 1.0 / big)
    }

    /// Lyapunov rate `Γ_A = ln|λ₊|`.
    pub fn lyapunov(&self) -> f64 {
        self.eigenvalues().0.abs().ln()
    }

    /// Ehrenfest time `ln N / Γ_A`.
    pub fn ehrenfest_time(&self, n: usize) -> f64 {
        (n as f64).ln() / self.lyapunov()
    }

    fn eigen_slope(&self, lambda: f64) -> f64 {
        let [[a, b], [c, d]] = self.a;
        if b != 0 {
            (lambda - a as f64) / b as f64
        } else {
            c as f64 / (lambda - d as f64)
        }
    }

    /// Slope `dp/dq` of the expanding eigendirection.
    pub fn unstable_slope(&self) -> f64 {
        self.eigen_slope(self.eigenvalues().0)
    }

    /// Slope `dp/dq` of the contracting eigendirection.
    pub fn stable_slope(&self) -> f64 {
        self.eigen_slope(self.eigenvalues().1)
    }

    /// Both eigendirection slopes are quadratic irrationals: they lie in
    /// `ℚ(√(tr²−4))`, and `tr² − 4` is never a perfect square for
    /// `|tr| > 2`. Checked exactly, which excludes every `p/q`.
    pub fn has_irrational_slopes(&self) -> bool {
        let tr = self.trace() as i128;
        let disc = tr * tr - 4;
        let r = (disc as f64).sqrt() as i128;
        !(r.saturating_sub(1)..=r + 1).any(|s| s >= 0 && s * s == disc)
    }

    /// `Az mod 1` in floating point.
    pub fn classical_step(&self, z: (f64, f64)) -> (f64, f64) {
        let [[a, b], [c, d]] = self.a;
        (
            (a as f64 * z.0 + b as f64 * z.1).rem_euclid(1.0),
            (c as f64 * z.0 + d as f64 * z.1).rem_euclid(1.0),
        )
    }

    /// `Az mod 1` for `z = (n₁, n₂)/den`, exactly.
    pub fn classical_step_rational(&self, num: (i64, i64), den: i64) -> Result<(i64, i64)> {
        if den <= 0 {
            return Err(Error::Config(format!("denominator must be positive, got {den}")));
        }
        let [[a, b], [c, d]] = self.a;
        let m = den as i128;
        let p = (a as i128 * num.0 as i128 + b as i128 * num.1 as i128).rem_euclid(m);
        let q = (c as i128 * num.0 as i128 + d as i128 * num.1 as i128).rem_euclid(m);
        Ok((p as i64, q as i64))
    }

    /// `Aᵀ n mod modulus` (`modulus = 0` means no reduction), exactly.
    pub fn transpose_step(&self, n: (i128, i128), modulus: i128) -> Result<(i128, i128)> {
        let [[a, b], [c, d]] = self.a;
        let ovf = || Error::Overflow(format!("A^T applied to ({}, {})", n.0, n.1));
        let x = (a as i128)
            .checked_mul(n.0)
            .and_then(|u| (c as i128).checked_mul(n.1).and_then(|v| u.checked_add(v)))
            .ok_or_else(ovf)?;
        let y = (b as i128)
            .checked_mul(n.0)
            .and_then(|u| (d as i128).checked_mul(n.1).and_then(|v| u.checked_add(v)))
            .ok_or_else(ovf)?;
        Ok(if modulus > 0 {
            (x.rem_euclid(modulus), y.rem_euclid(modulus))
        } else {
            (x, y)
        })
    }

    /// `(Aᵀ)ᵗ m`, exactly; reduced mod `modulus` after each step if nonzero.
    pub fn transpose_power(&self, m: (i64, i64), t: u32, modulus: i128) -> Result<(i128, i128)> {
        let mut n = (m.0 as i128, m.1 as i128);
        if modulus > 0 {
            n = (n.0.rem_euclid(modulus), n.1.rem_euclid(modulus));
        }
        for _ in 0..t {
            n = self.transpose_step(n, modulus)?;
        }
        Ok(n)
    }

    /// Half-integer shift `v = (ab/2, cd/2) mod 1`. The exact quantization
    /// of `A` by shears and Fourier transforms realizes the affine map
    /// `z ↦ Az + v`; `v = 0` exactly when `ab` and `cd` are even.
    pub fn shift(&self) -> (Rational, Rational) {
        let [[a, b], [c, d]] = self.a;
        let half = |e: i64| {
            if e.rem_euclid(2) == 0 {
                Rational::zero()
            } else {
                Rational { num: 1, den: 2 }
            }
        };
        (half(a * b), half(c * d))
    }

    /// `e^{2πi⟨m, w_t⟩} = ±1`, where `Fᵗ(z) = Aᵗz + w_t` for the affine map
    /// `F(z) = Az + v`; equal to `(−1)^{m₁m₂ + n₁n₂}` with `n = (Aᵀ)ᵗm`.
    pub fn affine_sign(&self, m: (i64, i64), t: u32) -> Result<i8> {
        let n = self.transpose_power(m, t, 2)?;
        let parity = (m.0 * m.1).rem_euclid(2) as i128 + n.0 * n.1;
        Ok(if parity % 2 == 0 { 1 } else { -1 })
    }

    /// Fixed point `z* = (I − A)⁻¹ v mod 1` of the affine map, exactly.
    pub fn fixed_point(&self) -> Result<(Rational, Rational)> {
        let [[a, b], [c, d]] = self.a;
        let (v1, v2) = self.shift();
        // (I − A) z = v with det(I − A) = 2 − tr A
        let det = 2 - self.trace();
        // adjugate of I − A is [[1 − d, b], [c, 1 − a]]
        let num1 = (1 - d) * v1.num * v2.den + b * v2.num * v1.den;
        let num2 = c * v1.num * v2.den + (1 - a) * v2.num * v1.den;
        let den = det * v1.den * v2.den;
        let wrap = |r: Rational| Rational::new(r.num.rem_euclid(r.den), r.den);
        Ok((wrap(Rational::new(num1, den)?)?, wrap(Rational::new(num2, den)?)?))
    }

    /// Smallest `k ≥ 1` with `Aᵏ ≡ I (mod n)`.
    pub fn order_mod(&self, n: i64) -> Result<u64> {
        if n < 1 {
            return Err(Error::Config(format!("modulus must be positive, got {n}")));
        }
        let m = n as i128;
        let a: [[i128; 2]; 2] = [
            [self.a[0][0] as i128, self.a[0][1] as i128],
            [self.a[1][0] as i128, self.a[1][1] as i128],
        ];
        let mut p = [[1i128, 0], [0, 1]];
        // the order of an element of SL(2, Z/n) is at most 3n
        let limit = 3 * n as u64 + 3;
        for k in 1..=limit {
            p = [
                [
                    (p[0][0] * a[0][0] + p[0][1] * a[1][0]).rem_euclid(m),
                    (p[0][0] * a[0][1] + p[0][1] * a[1][1]).rem_euclid(m),
                ],
                [
                    (p[1][0] * a[0][0] + p[1][1] * a[1][0]).rem_euclid(m),
                    (p[1][0] * a[0][1] + p[1][1] * a[1][1]).rem_euclid(m),
                ],
            ];
            if p == [[1 % m, 0], [0, 1 % m]] {
                return Ok(k);
            }
        }
        Err(Error::Capability(format!("order of A mod {n} exceeds {limit}")))
    }
}
