//! Quaternion and complex arithmetic underlying every solver module.
//!
//! A quaternion `a + bi + cj + dk` is stored as the symplectic pair
//! `(z0, z1)` of complex numbers with value `z0 + z1 j`. The symplectic
//! view is primary because the coupled wave equations are written in the
//! `psi0`/`psi1` components; the four real components are derived views.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute zero-test tolerance before magnitude scaling.
pub const ZERO_TOL: f64 = 1e-12;

/// Scaled tolerance for zero tests: `ZERO_TOL` times the largest input
/// magnitude, with a floor of one so tests near the origin stay absolute.
pub fn zero_tol(scale: f64) -> f64 {
    ZERO_TOL * scale.max(1.0)
}

/// True when `value` vanishes up to the scaled tolerance.
pub fn is_zero(value: f64, scale: f64) -> bool {
    value.abs() <= zero_tol(scale)
}

/// Planck constant and particle mass, both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
}

impl PhysicalConstants {
    /// Natural units hbar = m = 1.
    pub fn natural() -> Self {
        Self { hbar: 1.0, mass: 1.0 }
    }

    pub fn new(hbar: f64, mass: f64) -> Result<Self> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::InvalidConstant(format!("hbar = {hbar}")));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidConstant(format!("mass = {mass}")));
        }
        Ok(Self { hbar, mass })
    }

    /// 2m / hbar^2, the factor in front of every dispersion relation.
    pub fn two_m_over_hbar2(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }

    /// hbar^2 / 2m, the kinetic prefactor.
    pub fn hbar2_over_two_m(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}

/// Quaternion `z0 + z1 j` in the symplectic representation.
///
/// The product table is fixed by `i*j = -j*i` and `i^2 = j^2 = k^2 = -1`,
/// which in symplectic components reads
/// `(z0 + z1 j)(w0 + w1 j) = (z0 w0 - z1 conj(w1)) + (z0 w1 + z1 conj(w0)) j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    /// Complex part spanning 1 and i.
    pub z0: Complex64,
    /// Complex part spanning j and k (coefficient of j).
    pub z1: Complex64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion {
        z0: Complex64::new(0.0, 0.0),
        z1: Complex64::new(0.0, 0.0),
    };
    pub const ONE: Quaternion = Quaternion {
        z0: Complex64::new(1.0, 0.0),
        z1: Complex64::new(0.0, 0.0),
    };
    pub const I: Quaternion = Quaternion {
        z0: Complex64::new(0.0, 1.0),
        z1: Complex64::new(0.0, 0.0),
    };
    pub const J: Quaternion = Quaternion {
        z0: Complex64::new(0.0, 0.0),
        z1: Complex64::new(1.0, 0.0),
    };
    pub const K: Quaternion = Quaternion {
        z0: Complex64::new(0.0, 0.0),
        z1: Complex64::new(0.0, 1.0),
    };

    /// Build from the symplectic pair `(z0, z1)`.
    pub fn from_symplectic(z0: Complex64, z1: Complex64) -> Self {
        Self { z0, z1 }
    }

    /// Build from the four real components of `a + bi + cj + dk`.
    pub fn from_components(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self {
            z0: Complex64::new(a, b),
            z1: Complex64::new(c, d),
        }
    }

    /// Embed a complex number as `z + 0 j`.
    pub fn from_complex(z: Complex64) -> Self {
        Self {
            z0: z,
            z1: Complex64::new(0.0, 0.0),
        }
    }

    /// Embed a real number.
    pub fn from_real(a: f64) -> Self {
        Self::from_components(a, 0.0, 0.0, 0.0)
    }

    /// The four real components `(a, b, c, d)`.
    pub fn components(&self) -> [f64; 4] {
        [self.z0.re, self.z0.im, self.z1.re, self.z1.im]
    }

    /// The symplectic pair `(z0, z1)`; the round trip with
    /// `from_symplectic` is lossless.
    pub fn symplectic(&self) -> (Complex64, Complex64) {
        (self.z0, self.z1)
    }

    /// Real (scalar) part `a`.
    pub fn re(&self) -> f64 {
        self.z0.re
    }

    /// Euclidean norm of the imaginary part `bi + cj + dk`.
    pub fn im_norm(&self) -> f64 {
        let [_, b, c, d] = self.components();
        (b * b + c * c + d * d).sqrt()
    }

    /// Quaternion conjugate `a - bi - cj - dk`, i.e. `(conj(z0), -z1)`.
    pub fn conj(&self) -> Self {
        Self {
            z0: self.z0.conj(),
            z1: -self.z1,
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z0.norm_sqr() + self.z1.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.z0 == Complex64::new(0.0, 0.0) && self.z1 == Complex64::new(0.0, 0.0)
    }

    /// True when the j and k components vanish identically.
    pub fn is_complex(&self) -> bool {
        self.z1 == Complex64::new(0.0, 0.0)
    }

    /// The complex part `z0`; meaningful on its own only when
    /// `is_complex()` holds.
    pub fn complex_part(&self) -> Complex64 {
        self.z0
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            z0: self.z0 * s,
            z1: self.z1 * s,
        }
    }
}

impl std::ops::Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion {
            z0: self.z0 + rhs.z0,
            z1: self.z1 + rhs.z1,
        }
    }
}

impl std::ops::Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion {
            z0: self.z0 - rhs.z0,
            z1: self.z1 - rhs.z1,
        }
    }
}

impl std::ops::Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion {
            z0: -self.z0,
            z1: -self.z1,
        }
    }
}

impl std::ops::Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product in symplectic components.
    fn mul(self, rhs: Quaternion) -> Quaternion {
        quat_mul(self, rhs)
    }
}

/// Hamilton product `p * q`.
///
/// Associative and distributive; anti-commutation `i*j = -j*i` forces
/// `k = i*j` and norm multiplicativity `|p*q| = |p| |q|`.
pub fn quat_mul(p: Quaternion, q: Quaternion) -> Quaternion {
    Quaternion {
        z0: p.z0 * q.z0 - p.z1 * q.z1.conj(),
        z1: p.z0 * q.z1 + p.z1 * q.z0.conj(),
    }
}

/// Similarity transform `conj(A) * Q * A / |A|^2`.
///
/// Preserves the norm of `Q`; for the delta-matching eigen-amplitudes it
/// maps the quaternionic strength onto a complex number.
pub fn quat_sandwich(a: Quaternion, q: Quaternion) -> Result<Quaternion> {
    let n2 = a.norm_sqr();
    if n2 == 0.0 {
        return Err(Error::ZeroAmplitude);
    }
    Ok((a.conj() * q * a).scale(1.0 / n2))
}

/// Left multiplication of a complex scalar by a quaternion amplitude:
/// `(A0 + A1 j) * psi = A0 psi + A1 conj(psi) j`.
pub fn amp_times_scalar(amp: Quaternion, psi: Complex64) -> Quaternion {
    Quaternion {
        z0: amp.z0 * psi,
        z1: amp.z1 * psi.conj(),
    }
}
