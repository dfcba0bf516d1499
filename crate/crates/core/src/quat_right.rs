//! The right quaternionic wave equation `hbar (dPsi/dt) i = H Psi`.
//!
//! The sign flip in the second component equation shifts the eigenproblem
//! matrix to `[[U0 + iE, -U1], [conj(U1), conj(U0) + iE]]`, whose
//! eigenvalues are
//!
//! ```text
//! lambda_+/- = (V0 - E1) + i (E0 +/- sqrt(V1^2 + |U1|^2))
//! ```
//!
//! so a quaternionic (self-interacting) potential obstructs pure
//! stationary and pure non-oscillatory modes away from the measure-zero
//! set `|E0| = sqrt(V1^2 + |U1|^2)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_zero, PhysicalConstants, Quaternion};
use crate::complex_delta::{split_k_squared, Sign};
use crate::quat_left::eig_pair_residual;

/// A solved plane-wave branch of the right equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RightBranch {
    pub k: Complex64,
    pub e: Complex64,
    pub a0: Complex64,
    pub a1: Complex64,
    pub eig_sign: Sign,
    pub u: Quaternion,
}

impl RightBranch {
    pub fn amplitude(&self) -> Quaternion {
        Quaternion::from_symplectic(self.a0, self.a1)
    }

    pub fn eigenvalue(&self, consts: &PhysicalConstants) -> Complex64 {
        consts.hbar2_over_two_m() * self.k * self.k
    }

    pub fn eig_residual(&self, consts: &PhysicalConstants) -> f64 {
        let m = coupling_matrix_right(self.e, self.u);
        eig_pair_residual(&m, self.eigenvalue(consts), [self.a0, self.a1.conj()])
    }
}

/// The 2x2 coupling matrix of the right autonomous eigenproblem.
pub fn coupling_matrix_right(e: Complex64, u: Quaternion) -> [[Complex64; 2]; 2] {
    let (u0, u1) = u.symplectic();
    let ie = Complex64::new(0.0, 1.0) * e;
    [[u0 + ie, -u1], [u1.conj(), u0.conj() + ie]]
}

/// Eigenvalue `lambda_+/- = (V0 - E1) + i (E0 +/- sqrt(V1^2 + |U1|^2))`.
pub fn eigenvalue_right(e: Complex64, u: Quaternion, eig_sign: Sign) -> Complex64 {
    let s = (u.z0.im * u.z0.im + u.z1.norm_sqr()).sqrt();
    Complex64::new(u.z0.re - e.im, e.re + eig_sign.factor() * s)
}

/// Solve the right autonomous eigenproblem by the explicit quadratic
/// formula; `K` is the principal square root of `(2m/hbar^2) lambda`
/// (so `K0 >= 0`), the mirrored branch being implied by the `+/-K`
/// structure of the general solution.
pub fn solve_autonomous_right(
    e: Complex64,
    u: Quaternion,
    consts: &PhysicalConstants,
    eig_sign: Sign,
) -> RightBranch {
    let lambda = eigenvalue_right(e, u, eig_sign);
    let k_sq = consts.two_m_over_hbar2() * lambda;
    let (k0, k1) = split_k_squared(k_sq.re, k_sq.im);
    let k = Complex64::new(k0, k1);
    let (u0, u1) = u.symplectic();
    let ie = Complex64::new(0.0, 1.0) * e;
    let (a0, a1) = if u1.norm() > 0.0 {
        // First row: (U0 + iE - lambda) A0 = U1 conj(A1).
        let ratio_bar = (u0 + ie - lambda) / u1;
        let norm = (1.0 + ratio_bar.norm_sqr()).sqrt();
        (Complex64::new(1.0 / norm, 0.0), (ratio_bar / norm).conj())
    } else {
        // Diagonal matrix: the eigenvector sits on one component.
        let d0 = (u0 + ie - lambda).norm();
        let d1 = (u0.conj() + ie - lambda).norm();
        if d0 <= d1 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
        }
    };
    RightBranch {
        k,
        e,
        a0,
        a1,
        eig_sign,
        u,
    }
}

/// True when the self-interaction obstructs pure modes: both sign choices
/// of `E0 +/- sqrt(V1^2 + |U1|^2)` are nonzero, i.e.
/// `|E0| != sqrt(V1^2 + |U1|^2)`. When obstructed, every branch has both
/// `K0` and `K1` nonzero.
pub fn pure_mode_obstruction(e: Complex64, u: Quaternion) -> bool {
    let s = (u.z0.im * u.z0.im + u.z1.norm_sqr()).sqrt();
    let scale = e.re.abs().max(s).max(e.im.abs()).max(u.z0.re.abs());
    !is_zero(e.re.abs() - s, scale)
}

/// Operators of the right equation act with the imaginary unit on the
/// right of the wave function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RightOperator {
    Energy,
    Momentum,
}

/// Multiplicative coefficient `c` such that `O Psi = A c psi` for the
/// plane-wave branch `Psi = A psi`, with `E Psi = hbar (dPsi/dt) i` and
/// `p Psi = -hbar (dPsi/dx) i`.
///
/// The coefficient is complex and multiplies between the quaternionic
/// amplitude and the complex exponential.
pub fn right_operator_apply(
    kind: RightOperator,
    branch: &RightBranch,
    consts: &PhysicalConstants,
) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    match kind {
        RightOperator::Energy => -(branch.e * i),
        RightOperator::Momentum => -(consts.hbar * branch.k * i),
    }
}

/// Printed closed-form `K0^2`/`K1^2` of the right equation, evaluated for
/// a sign combination. The expression places `E0 +/- sqrt(V1^2+|U1|^2)`
/// unsquared under the outer radical; `None` when that radicand is
/// negative. Reported as a diagnostic only — `K` is computed from the
/// eigenvalues.
pub fn printed_k_squares_right(
    e: Complex64,
    u: Quaternion,
    consts: &PhysicalConstants,
    outer: Sign,
    inner: Sign,
) -> Option<(f64, f64)> {
    let x = u.z0.re - e.im;
    let s = (u.z0.im * u.z0.im + u.z1.norm_sqr()).sqrt();
    let radicand = x * x + e.re + inner.factor() * s;
    if radicand < 0.0 {
        return None;
    }
    let root = radicand.sqrt();
    let m_over_h2 = consts.mass / (consts.hbar * consts.hbar);
    Some((
        m_over_h2 * (x + outer.factor() * root),
        m_over_h2 * (-x + outer.factor() * root),
    ))
}
