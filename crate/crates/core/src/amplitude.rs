//! Amplitude profiles ρ₀ for Lagrangian states and patches.

use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::symbols::ScalarFn;

/// Shape of an amplitude before scaling and twisting.
#[derive(Clone)]
pub enum Profile {
    /// `e·exp(−1/(1−s²))`, `s = (u − center)/half_width`; smooth, compact, peak 1.
    Bump {
        center: f64,
        half_width: f64,
    },
    /// `exp(−(u − center)²/(2σ²))`, truncated to `center ± 8σ`.
    Gaussian {
        center: f64,
        sigma: f64,
    },
    /// `sin^p(π(u − lo)/(hi − lo))` on `[lo, hi]`.
    SinePower {
        lo: f64,
        hi: f64,
        power: u32,
    },
    /// Constant 1 (periodic charts only).
    Uniform,
    /// `(1 + e^{imu})/2`, so that `|ρ|² = (1 + cos mu)/2`.
    Harmonic {
        m: i64,
    },
    Zero,
    Custom {
        value: ScalarFn,
        support: Option<(f64, f64)>,
    },
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Bump { center, half_width } => write!(f, "Bump({center}, {half_width})"),
            Self::Gaussian { center, sigma } => write!(f, "Gaussian({center}, {sigma})"),
            Self::SinePower { lo, hi, power } => write!(f, "SinePower({lo}, {hi}, {power})"),
            Self::Uniform => write!(f, "Uniform"),
            Self::Harmonic { m } => write!(f, "Harmonic({m})"),
            Self::Zero => write!(f, "Zero"),
            Self::Custom { support, .. } => write!(f, "Custom(support={support:?})"),
        }
    }
}

/// Smooth compactly supported bump with peak value 1 at `s = 0`.
pub fn smooth_bump(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        E * (-1.0 / (1.0 - s * s)).exp()
    }
}

/// Amplitude `ρ₀(u) = scale · profile(u) · e^{iκ(u − u_c)}`.
///
/// The twist `κ` is a slowly varying phase of the principal amplitude; it
/// leaves `|ρ₀|²` unchanged.
#[derive(Debug, Clone)]
pub struct Amplitude {
    pub profile: Profile,
    pub scale: f64,
    pub twist: f64,
}

impl Amplitude {
    pub fn new(profile: Profile) -> Self {
        Self {
            profile,
            scale: 1.0,
            twist: 0.0,
        }
    }

    pub fn bump(center: f64, half_width: f64) -> Self {
        Self::new(Profile::Bump { center, half_width })
    }

    pub fn gaussian(center: f64, sigma: f64) -> Self {
        Self::new(Profile::Gaussian { center, sigma })
    }

    pub fn uniform() -> Self {
        Self::new(Profile::Uniform)
    }

    pub fn zero() -> Self {
        Self::new(Profile::Zero)
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_twist(mut self, twist: f64) -> Self {
        self.twist = twist;
        self
    }

    /// Reference point of the twist phase.
    pub fn center(&self) -> f64 {
        match &self.profile {
            Profile::Bump { center, .. } | Profile::Gaussian { center, .. } => *center,
            Profile::SinePower { lo, hi, .. } => 0.5 * (lo + hi),
            _ => 0.0,
        }
    }

    /// Interval outside of which the amplitude vanishes, if any.
    pub fn support(&self) -> Option<(f64, f64)> {
        match &self.profile {
            Profile::Bump { center, half_width } => Some((center - half_width, center + half_width)),
            Profile::Gaussian { center, sigma } => Some((center - 8.0 * sigma, center + 8.0 * sigma)),
            Profile::SinePower { lo, hi, .. } => Some((*lo, *hi)),
            Profile::Custom { support, .. } => *support,
            Profile::Uniform | Profile::Harmonic { .. } | Profile::Zero => None,
        }
    }

    fn shape(&self, u: f64) -> Complex64 {
        let real = |v: f64| Complex64::new(v, 0.0);
        match &self.profile {
            Profile::Bump { center, half_width } => real(smooth_bump((u - center) / half_width)),
            Profile::Gaussian { center, sigma } => {
                if (u - center).abs() > 8.0 * sigma {
                    real(0.0)
                } else {
                    real((-(u - center).powi(2) / (2.0 * sigma * sigma)).exp())
                }
            }
            Profile::SinePower { lo, hi, power } => {
                if u <= *lo || u >= *hi {
                    real(0.0)
                } else {
                    real((PI * (u - lo) / (hi - lo)).sin().powi(*power as i32))
                }
            }
            Profile::Uniform => real(1.0),
            Profile::Harmonic { m } => 0.5 * (1.0 + Complex64::from_polar(1.0, *m as f64 * u)),
            Profile::Zero => real(0.0),
            Profile::Custom { value, .. } => value(u),
        }
    }

    /// `ρ₀(u)`.
    pub fn value(&self, u: f64) -> Complex64 {
        let v = self.shape(u) * self.scale;
        if self.twist == 0.0 {
            v
        } else {
            v * Complex64::from_polar(1.0, self.twist * (u - self.center()))
        }
    }

    /// `|ρ₀(u)|²`.
    pub fn density(&self, u: f64) -> f64 {
        (self.shape(u) * self.scale).norm_sqr()
    }

    /// Arc-shared evaluator, for building states from closures.
    pub fn to_fn(&self) -> ScalarFn {
        let a = self.clone();
        Arc::new(move |u| a.value(u))
    }
}
