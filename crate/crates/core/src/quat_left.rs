//! The left quaternionic wave equation `i hbar dPsi/dt = H Psi`:
//! autonomous eigenproblem, closed-form `K`, stationarity, and the
//! quaternionic Dirac delta (confined and scattering states).
//!
//! With `Psi = (A0 + A1 j) exp[Kx - (E/hbar) t]` the coupled component
//! equations reduce to the 2x2 eigenproblem
//!
//! ```text
//! [ U0 + iE      -U1      ] [ A0        ]          hbar^2 K^2 [ A0        ]
//! [ conj(U1)  conj(U0)-iE ] [ conj(A1)  ]  =  ---------------- [ conj(A1)  ]
//!                                                   2m
//! ```
//!
//! whose eigenvalues are `V0 +/- sqrt(-alpha - beta i)` with
//! `alpha = (E0+V1)^2 - E1^2 + |U1|^2` and `beta = 2 E1 (E0+V1)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_zero, zero_tol, PhysicalConstants, Quaternion};
use crate::complex_delta::{solve_matching, ScatteringSolution, Sign, StationarityClass};
use crate::error::{Error, Result};

/// Quaternionic delta strength `Q` plus constant background `U`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuaternionPotential {
    pub q: Quaternion,
    pub u: Quaternion,
}

impl QuaternionPotential {
    pub fn new(q: Quaternion, u: Quaternion) -> Self {
        Self { q, u }
    }
}

/// A solved plane-wave branch of the left equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuatBranch {
    pub k: Complex64,
    pub e: Complex64,
    pub a0: Complex64,
    pub a1: Complex64,
    pub eig_sign: Sign,
    pub alpha: f64,
    pub beta: f64,
    /// Background potential the branch was solved in.
    pub u: Quaternion,
}

impl QuatBranch {
    pub fn amplitude(&self) -> Quaternion {
        Quaternion::from_symplectic(self.a0, self.a1)
    }

    /// Eigenvalue `hbar^2 K^2 / 2m` of the coupled-system matrix.
    pub fn eigenvalue(&self, consts: &PhysicalConstants) -> Complex64 {
        consts.hbar2_over_two_m() * self.k * self.k
    }

    /// Residual of the eigen equation for `(A0, conj(A1))`, scaled by the
    /// largest matrix entry.
    pub fn eig_residual(&self, consts: &PhysicalConstants) -> f64 {
        let m = coupling_matrix(self.e, self.u);
        let lambda = self.eigenvalue(consts);
        eig_pair_residual(&m, lambda, [self.a0, self.a1.conj()])
    }
}

/// The 2x2 coupling matrix of the left autonomous eigenproblem.
pub fn coupling_matrix(e: Complex64, u: Quaternion) -> [[Complex64; 2]; 2] {
    let (u0, u1) = u.symplectic();
    let ie = Complex64::new(0.0, 1.0) * e;
    [[u0 + ie, -u1], [u1.conj(), u0.conj() - ie]]
}

pub(crate) fn eig_pair_residual(
    m: &[[Complex64; 2]; 2],
    lambda: Complex64,
    v: [Complex64; 2],
) -> f64 {
    let r0 = m[0][0] * v[0] + m[0][1] * v[1] - lambda * v[0];
    let r1 = m[1][0] * v[0] + m[1][1] * v[1] - lambda * v[1];
    let vnorm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let scale = m
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(lambda.norm(), f64::max)
        .max(1.0);
    ((r0.norm_sqr() + r1.norm_sqr()).sqrt() / vnorm.max(f64::MIN_POSITIVE)) / scale
}

/// `alpha = (E0+V1)^2 - E1^2 + |U1|^2`, `beta = 2 E1 (E0+V1)`.
pub fn alpha_beta(e: Complex64, u: Quaternion) -> (f64, f64) {
    let v1 = u.z0.im;
    let u1_sq = u.z1.norm_sqr();
    let s = e.re + v1;
    (s * s - e.im * e.im + u1_sq, 2.0 * e.im * s)
}

/// Closed-form `K` of the left equation for the chosen eigenvalue branch,
/// together with `(alpha, beta)`. Total in `(E, U)`.
///
/// `K0^2` and `K1^2` follow the printed closed forms built from
/// `sqrt((sqrt(alpha^2+beta^2) -/+ alpha)/2)`; the sign of `K1` is fixed so
/// `2 K0 K1` reproduces the imaginary part of `K^2`.
pub fn closed_form_k_left(
    e: Complex64,
    u: Quaternion,
    consts: &PhysicalConstants,
    eig_sign: Sign,
) -> (Complex64, f64, f64) {
    let (alpha, beta) = alpha_beta(e, u);
    let v0 = u.z0.re;
    let r = alpha.hypot(beta);
    // su^2 = (r - alpha)/2, sv^2 = (r + alpha)/2, computed without
    // cancellation; su*sv = |beta|/2.
    let (su, sv) = if r == 0.0 {
        (0.0, 0.0)
    } else if alpha >= 0.0 {
        let sv = ((r + alpha) / 2.0).sqrt();
        let su = if sv > 0.0 { beta.abs() / (2.0 * sv) } else { 0.0 };
        (su, sv)
    } else {
        let su = ((r - alpha) / 2.0).sqrt();
        let sv = if su > 0.0 { beta.abs() / (2.0 * su) } else { 0.0 };
        (su, sv)
    };
    let inner = v0 + eig_sign.factor() * su;
    let hyp = inner.hypot(sv);
    let m_over_h2 = consts.two_m_over_hbar2() / 2.0;
    let (k0_sq, k1_sq) = if inner >= 0.0 {
        let k0_sq = m_over_h2 * (inner + hyp);
        let k1_sq = if inner + hyp > 0.0 {
            m_over_h2 * sv * sv / (inner + hyp)
        } else {
            0.0
        };
        (k0_sq, k1_sq)
    } else {
        let k1_sq = m_over_h2 * (hyp - inner);
        let k0_sq = if hyp - inner > 0.0 {
            m_over_h2 * sv * sv / (hyp - inner)
        } else {
            0.0
        };
        (k0_sq, k1_sq)
    };
    let k0 = k0_sq.sqrt();
    let k1_mag = k1_sq.sqrt();
    // Imaginary part of the eigenvalue fixes the sign of K1: the principal
    // square root of (-alpha - beta i) has imaginary sign -sign(beta).
    let im_lambda = eig_sign.factor() * if beta > 0.0 { -sv } else { sv };
    let k1 = if im_lambda < 0.0 { -k1_mag } else { k1_mag };
    (Complex64::new(k0, k1), alpha, beta)
}

/// Ratio `conj(A1)/A0` from the first row of the eigen equation.
fn amplitude_ratio_bar(
    e: Complex64,
    u: Quaternion,
    lambda: Complex64,
) -> Result<Complex64> {
    let (u0, u1) = u.symplectic();
    if u1.norm() == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    Ok((u0 + Complex64::new(0.0, 1.0) * e - lambda) / u1)
}

/// Solve the left autonomous eigenproblem for `K` and the coupled
/// amplitude `A1`, seeding the free amplitude `A0`.
///
/// Fails with `DegenerateCoupling` when `|U1| = 0`; that regime belongs to
/// the complex solver.
pub fn solve_autonomous_left(
    e: Complex64,
    u: Quaternion,
    a0: Complex64,
    consts: &PhysicalConstants,
    eig_sign: Sign,
) -> Result<QuatBranch> {
    if u.z1.norm() == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    let (k, alpha, beta) = closed_form_k_left(e, u, consts, eig_sign);
    let lambda = consts.hbar2_over_two_m() * k * k;
    let ratio_bar = amplitude_ratio_bar(e, u, lambda)?;
    let a1 = (ratio_bar * a0).conj();
    Ok(QuatBranch {
        k,
        e,
        a0,
        a1,
        eig_sign,
        alpha,
        beta,
        u,
    })
}

/// As `solve_autonomous_left`, with the canonical amplitude convention:
/// `A0` real positive and `|A0|^2 + |A1|^2 = 1`.
pub fn solve_autonomous_left_normalized(
    e: Complex64,
    u: Quaternion,
    consts: &PhysicalConstants,
    eig_sign: Sign,
) -> Result<QuatBranch> {
    let mut branch = solve_autonomous_left(e, u, Complex64::new(1.0, 0.0), consts, eig_sign)?;
    let scale = 1.0 / (branch.a0.norm_sqr() + branch.a1.norm_sqr()).sqrt();
    branch.a0 *= scale;
    branch.a1 *= scale;
    Ok(branch)
}

/// Stationarity classification of the left equation.
///
/// `PureStationary` requires `E0 = V1 = 0` and `E1^2 > V0^2 + |U1|^2`;
/// `PureNonOscillatory` requires `E0 = V1 = 0` with
/// `K0^2 = (2m/hbar^2)(V0 - sqrt(E1^2 - |U1|^2)) > 0`; otherwise the
/// branch mixes both behaviors. Equality `E1^2 = V0^2 + |U1|^2` under the
/// zero conditions is flagged `Degenerate`.
pub fn classify_stationarity_left(e: Complex64, u: Quaternion) -> StationarityClass {
    let u1_sq = u.z1.norm_sqr();
    let v0 = u.z0.re;
    let v1 = u.z0.im;
    let scale = e
        .re
        .abs()
        .max(e.im.abs())
        .max(v0.abs())
        .max(v1.abs())
        .max(u1_sq.sqrt());
    if !is_zero(e.re, scale) || !is_zero(v1, scale) {
        return StationarityClass::Mixed;
    }
    let e1_sq = e.im * e.im;
    let diff = e1_sq - v0 * v0 - u1_sq;
    if is_zero(diff, scale * scale) {
        return StationarityClass::Degenerate;
    }
    if diff > 0.0 {
        return StationarityClass::PureStationary;
    }
    // dd42-type branch: real sqrt(E1^2 - |U1|^2) with V0 above it.
    let w_sq = e1_sq - u1_sq;
    if w_sq >= 0.0 && v0 > w_sq.sqrt() + zero_tol(scale) {
        StationarityClass::PureNonOscillatory
    } else {
        StationarityClass::Mixed
    }
}

/// The delta-matching eigen solution of the left (and right) equation:
/// `K = -(m/hbar^2)(Re[Q] +/- |Im[Q]| i)` with `(A0, conj(A1))` the
/// corresponding eigenvector of the strength matrix
/// `[[Q0, -Q1], [conj(Q1), conj(Q0)]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaSolutionLeft {
    pub k: Complex64,
    pub a0: Complex64,
    pub a1: Complex64,
    pub eig_sign: Sign,
}

impl DeltaSolutionLeft {
    pub fn amplitude(&self) -> Quaternion {
        Quaternion::from_symplectic(self.a0, self.a1)
    }

    /// `conj(A) Q A / |A|^2`; complex (vanishing j,k parts) by
    /// construction of the eigen-amplitudes.
    pub fn sandwich(&self, q: Quaternion) -> Quaternion {
        crate::algebra::quat_sandwich(self.amplitude(), q).expect("eigen amplitude is nonzero")
    }

    /// Eigenvalue `-(hbar^2/m) K` of the strength matrix.
    pub fn strength_eigenvalue(&self, consts: &PhysicalConstants) -> Complex64 {
        -(consts.hbar * consts.hbar / consts.mass) * self.k
    }

    /// Residual of the strength-matrix eigen equation.
    pub fn eig_residual(&self, q: Quaternion, consts: &PhysicalConstants) -> f64 {
        let m = strength_matrix(q);
        eig_pair_residual(&m, self.strength_eigenvalue(consts), [self.a0, self.a1.conj()])
    }
}

/// The 2x2 matrix of the quaternionic delta matching condition.
pub fn strength_matrix(q: Quaternion) -> [[Complex64; 2]; 2] {
    let (q0, q1) = q.symplectic();
    [[q0, -q1], [q1.conj(), q0.conj()]]
}

/// Solve the quaternionic delta matching `K = -(m/hbar^2) conj(A) Q A / |A|^2`
/// as the eigenproblem of the strength matrix.
pub fn solve_delta_left(
    q: Quaternion,
    consts: &PhysicalConstants,
    eig_sign: Sign,
) -> Result<DeltaSolutionLeft> {
    if q.is_zero() {
        return Err(Error::ZeroStrength);
    }
    let (q0, q1) = q.symplectic();
    if q1.norm() == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    // Characteristic polynomial roots: Re[Q] +/- |Im[Q]| i.
    let mu = Complex64::new(q.re(), eig_sign.factor() * q.im_norm());
    let k = -(consts.mass / (consts.hbar * consts.hbar)) * mu;
    // First row: (Q0 - mu) A0 - Q1 conj(A1) = 0.
    let ratio_bar = (q0 - mu) / q1;
    let norm = (1.0 + ratio_bar.norm_sqr()).sqrt();
    let a0 = Complex64::new(1.0 / norm, 0.0);
    let a1 = (ratio_bar / norm).conj();
    Ok(DeltaSolutionLeft {
        k,
        a0,
        a1,
        eig_sign,
    })
}

/// Confined-state energy of the quaternionic delta well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfinedEnergyLeft {
    /// Decay rate `K0 = -(m/hbar^2) Re[Q]`.
    pub k0: f64,
    /// `E1^2 = (V0 - (m/2 hbar^2) Re[Q]^2)^2 + |U1|^2`, derived by
    /// composing the delta matching with the non-oscillatory dispersion.
    pub e1_squared: f64,
    /// Signed root matching the complex limit `E1 = V0 - (m/2 hbar^2) q0^2`.
    pub e1: f64,
    /// Value of the printed composite formula, which carries `Re[Q]`
    /// unsquared; reported for comparison, not used.
    pub printed_e1_squared: f64,
}

/// Energy of the confined (non-propagating) state; requires a real
/// strength `Im[Q] = 0` so that `K1 = 0`.
pub fn confined_energy_left(
    q: Quaternion,
    u: Quaternion,
    consts: &PhysicalConstants,
) -> Result<ConfinedEnergyLeft> {
    let im_norm = q.im_norm();
    if !is_zero(im_norm, q.norm()) {
        return Err(Error::NotConfining { im_norm });
    }
    let re_q = q.re();
    let v0 = u.z0.re;
    let u1_sq = u.z1.norm_sqr();
    let m_over_2h2 = consts.mass / (2.0 * consts.hbar * consts.hbar);
    let k0 = -(consts.mass / (consts.hbar * consts.hbar)) * re_q;
    let chi = v0 - m_over_2h2 * re_q * re_q;
    let e1_squared = chi * chi + u1_sq;
    let printed = {
        let chi_printed = v0 - m_over_2h2 * re_q;
        chi_printed * chi_printed + u1_sq
    };
    Ok(ConfinedEnergyLeft {
        k0,
        e1_squared,
        e1: chi.signum() * e1_squared.sqrt(),
        printed_e1_squared: printed,
    })
}

/// Quaternionic delta scattering in the pure stationary regime: the
/// strength reduces to the effective complex `q = Re[Q] +/- |Im[Q]| i`
/// and the matching system is the complex one.
pub fn solve_scattering_left(
    k: Complex64,
    q: Quaternion,
    u: Quaternion,
    consts: &PhysicalConstants,
    eig_sign: Sign,
) -> Result<ScatteringSolution> {
    if k.norm() == 0.0 {
        return Err(Error::SingularMatching);
    }
    if !is_zero(k.re, k.norm()) {
        return Err(Error::NotStationary {
            reason: format!("K0 = {} must vanish for a propagating branch", k.re),
        });
    }
    let v0 = u.z0.re;
    let v1 = u.z0.im;
    if !is_zero(v1, u.norm()) {
        return Err(Error::NotStationary {
            reason: format!("V1 = {v1} must vanish"),
        });
    }
    // K1 fixes sqrt(E1^2 - |U1|^2) = hbar^2 K1^2 / 2m + V0, which must be
    // nonnegative, and the stationarity inequality E1^2 > V0^2 + |U1|^2.
    let w = consts.hbar2_over_two_m() * k.im * k.im + v0;
    if w < -zero_tol(v0.abs().max(k.norm_sqr())) {
        return Err(Error::NotStationary {
            reason: format!("hbar^2 K1^2/2m + V0 = {w} is negative"),
        });
    }
    if w * w - v0 * v0 <= zero_tol(v0 * v0) {
        return Err(Error::NotStationary {
            reason: "E1^2 does not exceed V0^2 + |U1|^2".to_string(),
        });
    }
    let q_eff = Complex64::new(q.re(), eig_sign.factor() * q.im_norm());
    let (r, t) = solve_matching(k, q_eff, consts)?;
    Ok(ScatteringSolution {
        r,
        t,
        flux_balance: r.norm_sqr() + t.norm_sqr(),
        cal_e0: -2.0 * v1,
    })
}

/// Incident-branch energy implied by a stationary `K` and background `U`:
/// `E = E1 i` with `E1 = sqrt((hbar^2 K1^2/2m + V0)^2 + |U1|^2)` (positive
/// root).
pub fn stationary_energy_left(
    k: Complex64,
    u: Quaternion,
    consts: &PhysicalConstants,
) -> Complex64 {
    let w = consts.hbar2_over_two_m() * k.im * k.im + u.z0.re;
    Complex64::new(0.0, (w * w + u.z1.norm_sqr()).sqrt())
}

/// Verify `K` against the imaginary relation `K1^2` of the stationary
/// dispersion; used by tests and the scan command.
pub fn stationary_k1_squared(e1: f64, u: Quaternion, consts: &PhysicalConstants) -> f64 {
    let w_sq = e1 * e1 - u.z1.norm_sqr();
    consts.two_m_over_hbar2() * (w_sq.max(0.0).sqrt() - u.z0.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::complex_delta::{solve_autonomous, solve_scattering, ComplexPotential};

    fn u_from(v0: f64, v1: f64, w0: f64, w1: f64) -> Quaternion {
        Quaternion::from_symplectic(Complex64::new(v0, v1), Complex64::new(w0, w1))
    }

    #[test]
    fn stationary_eigen_example() {
        // E1 = 2, |U1| = sqrt(3): the minus branch is the oscillatory one,
        // K1^2 = 2 (sqrt(4 - 3) - 0) = 2.
        let consts = PhysicalConstants::natural();
        let e = Complex64::new(0.0, 2.0);
        let u = u_from(0.0, 0.0, 3.0_f64.sqrt(), 0.0);
        let b = solve_autonomous_left_normalized(e, u, &consts, Sign::Minus).unwrap();
        assert_relative_eq!(b.k.re, 0.0, epsilon = 1e-14);
        assert_relative_eq!(b.k.im, 2.0_f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(b.alpha, -1.0, max_relative = 1e-14);
        assert_eq!(b.beta, 0.0);
        assert!(b.eig_residual(&consts) < 1e-12);
        assert_relative_eq!(
            b.k.im * b.k.im,
            stationary_k1_squared(2.0, u, &consts),
            max_relative = 1e-14
        );
    }

    #[test]
    fn eig_residual_small_on_random_draws() {
        let consts = PhysicalConstants::natural();
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..2000 {
            let e = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let u = Quaternion::from_components(
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            );
            if u.z1.norm() < 1e-3 {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let b = solve_autonomous_left_normalized(e, u, &consts, sign).unwrap();
                assert!(
                    b.eig_residual(&consts) < 1e-10,
                    "residual {} at e={e}, u={u:?}, sign={sign:?}",
                    b.eig_residual(&consts)
                );
                assert!(b.a0.im == 0.0 && b.a0.re > 0.0);
                assert_relative_eq!(
                    b.a0.norm_sqr() + b.a1.norm_sqr(),
                    1.0,
                    max_relative = 1e-14
                );
            }
        }
    }

    #[test]
    fn complex_limit_small_u1() {
        let consts = PhysicalConstants::natural();
        let e = Complex64::new(0.3, 1.7);
        let v = Complex64::new(0.4, 0.0);
        let u = u_from(0.4, 0.0, 1e-6, 0.0);
        let complex_branch = solve_autonomous(e, v, &consts, Sign::Plus);
        let mut best = f64::INFINITY;
        let mut best_ratio = f64::INFINITY;
        for sign in [Sign::Plus, Sign::Minus] {
            let b = solve_autonomous_left_normalized(e, u, &consts, sign).unwrap();
            let diff = (b.k - complex_branch.k).norm();
            if diff < best {
                best = diff;
                best_ratio = (b.a1 / b.a0).norm();
            }
        }
        assert!(best < 1e-9, "K mismatch {best}");
        assert!(best_ratio < 1e-6, "amplitude ratio {best_ratio}");
    }

    #[test]
    fn sqrt_identity_at_vanishing_u1() {
        // sqrt(alpha^2 + beta^2) collapses to (E0+V1)^2 + E1^2 when U1 = 0.
        let e = Complex64::new(0.7, -1.1);
        let u = u_from(0.2, 0.5, 0.0, 0.0);
        let (alpha, beta) = alpha_beta(e, u);
        let s = e.re + 0.5;
        let expected = s * s + e.im * e.im;
        assert_relative_eq!(alpha.hypot(beta), expected, max_relative = 1e-14);
    }

    #[test]
    fn free_particle_closed_form_is_zero() {
        let consts = PhysicalConstants::natural();
        let (k, alpha, beta) =
            closed_form_k_left(Complex64::new(0.0, 0.0), Quaternion::ZERO, &consts, Sign::Plus);
        assert_eq!(k, Complex64::new(0.0, 0.0));
        assert_eq!((alpha, beta), (0.0, 0.0));
        // The amplitude relation itself degenerates without coupling.
        assert_eq!(
            solve_autonomous_left(
                Complex64::new(0.0, 0.0),
                Quaternion::ZERO,
                Complex64::new(1.0, 0.0),
                &consts,
                Sign::Plus
            ),
            Err(Error::DegenerateCoupling)
        );
    }

    #[test]
    fn stationarity_classification_left() {
        let e = |e1: f64| Complex64::new(0.0, e1);
        assert_eq!(
            classify_stationarity_left(e(2.0), u_from(0.0, 0.0, 3.0_f64.sqrt(), 0.0)),
            StationarityClass::PureStationary
        );
        assert_eq!(
            classify_stationarity_left(e(1.0), u_from(3.0, 0.0, 0.5, 0.0)),
            StationarityClass::PureNonOscillatory
        );
        assert_eq!(
            classify_stationarity_left(Complex64::new(0.1, 1.0), u_from(0.0, 0.0, 1.0, 0.0)),
            StationarityClass::Mixed
        );
        assert_eq!(
            classify_stationarity_left(e(5.0_f64.sqrt()), u_from(1.0, 0.0, 2.0, 0.0)),
            StationarityClass::Degenerate
        );
        // Complex eigenvalues (E1^2 < |U1|^2) mix both behaviors even with
        // E0 = V1 = 0.
        assert_eq!(
            classify_stationarity_left(e(1.0), u_from(3.0, 0.0, 2.0, 0.0)),
            StationarityClass::Mixed
        );
    }

    #[test]
    fn pure_non_oscillatory_example_has_positive_k0_squared() {
        let consts = PhysicalConstants::natural();
        let e = Complex64::new(0.0, 1.0);
        let u = u_from(3.0, 0.0, 0.5, 0.0);
        // dd42-type value: K0^2 = 2 (V0 - sqrt(E1^2 - |U1|^2)) > 0.
        let expected_k0_sq = 2.0 * (3.0 - (1.0 - 0.25_f64).sqrt());
        assert!(expected_k0_sq > 0.0);
        let (k, _, _) = closed_form_k_left(e, u, &consts, Sign::Minus);
        assert_relative_eq!(k.re * k.re, expected_k0_sq, max_relative = 1e-13);
        assert_relative_eq!(k.im, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn delta_pure_j_strength() {
        let consts = PhysicalConstants::natural();
        let q = Quaternion::J;
        let plus = solve_delta_left(q, &consts, Sign::Plus).unwrap();
        let minus = solve_delta_left(q, &consts, Sign::Minus).unwrap();
        // The strength matrix [[0,-1],[1,0]] has eigenvalues +/- i.
        assert_relative_eq!((plus.k - Complex64::new(0.0, -1.0)).norm(), 0.0, epsilon = 1e-15);
        assert_relative_eq!((minus.k - Complex64::new(0.0, 1.0)).norm(), 0.0, epsilon = 1e-15);
        for sol in [plus, minus] {
            assert!(sol.eig_residual(q, &consts) < 1e-13);
            let s = sol.sandwich(q);
            assert!(s.z1.norm() < 1e-13, "j,k parts {:?}", s.z1);
        }
    }

    #[test]
    fn delta_random_strengths_match_magnitude_and_sandwich() {
        let consts = PhysicalConstants::natural();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..2000 {
            let q = Quaternion::from_components(
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            );
            if q.z1.norm() < 1e-3 {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let sol = solve_delta_left(q, &consts, sign).unwrap();
                assert_relative_eq!(
                    sol.k.norm(),
                    consts.mass / (consts.hbar * consts.hbar) * q.norm(),
                    max_relative = 1e-13
                );
                let s = sol.sandwich(q);
                assert!(s.z1.norm() <= 1e-12 * q.norm().max(1.0));
                // The sandwich equals Re[Q] +/- |Im[Q]| i.
                let expected = Complex64::new(q.re(), sign.factor() * q.im_norm());
                assert!((s.z0 - expected).norm() <= 1e-12 * q.norm().max(1.0));
            }
        }
    }

    #[test]
    fn delta_rejects_degenerate_strengths() {
        let consts = PhysicalConstants::natural();
        assert_eq!(
            solve_delta_left(Quaternion::ZERO, &consts, Sign::Plus),
            Err(Error::ZeroStrength)
        );
        assert_eq!(
            solve_delta_left(Quaternion::from_complex(Complex64::new(-2.0, 0.0)), &consts, Sign::Plus),
            Err(Error::DegenerateCoupling)
        );
    }

    #[test]
    fn confined_energy_complex_limit() {
        let consts = PhysicalConstants::natural();
        let q = Quaternion::from_real(-2.0);
        let u = Quaternion::ZERO;
        let c = confined_energy_left(q, u, &consts).unwrap();
        assert_relative_eq!(c.k0, 2.0, max_relative = 1e-15);
        assert_relative_eq!(c.e1, -2.0, max_relative = 1e-15);
    }

    #[test]
    fn confined_energy_quaternionic_example() {
        let consts = PhysicalConstants::natural();
        let q = Quaternion::from_real(-2.0);
        let u = u_from(0.0, 0.0, 3.0, 0.0);
        let c = confined_energy_left(q, u, &consts).unwrap();
        assert_relative_eq!(c.k0, 2.0, max_relative = 1e-15);
        assert_relative_eq!(c.e1_squared, 13.0, max_relative = 1e-15);
        // Printed composite with unsquared Re[Q] disagrees here.
        assert_relative_eq!(c.printed_e1_squared, 10.0, max_relative = 1e-15);
    }

    #[test]
    fn confined_energy_rejects_propagating_strength() {
        let consts = PhysicalConstants::natural();
        let q = Quaternion::from_components(-2.0, 0.5, 0.0, 0.0);
        assert!(matches!(
            confined_energy_left(q, Quaternion::ZERO, &consts),
            Err(Error::NotConfining { .. })
        ));
    }

    #[test]
    fn scattering_reduces_to_complex_for_complex_strength() {
        let consts = PhysicalConstants::natural();
        let k = Complex64::new(0.0, 1.3);
        let q = Quaternion::from_complex(Complex64::new(0.8, 0.0));
        let u = Quaternion::ZERO;
        let quat = solve_scattering_left(k, q, u, &consts, Sign::Plus).unwrap();
        let pot = ComplexPotential::new(Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.0));
        let complex = solve_scattering(k, &pot, &consts).unwrap();
        assert_eq!(quat.r, complex.r);
        assert_eq!(quat.t, complex.t);
    }

    #[test]
    fn scattering_pipeline_example() {
        // Q = 2j, |U1| = sqrt(5), E1 = 3, V0 = 0: K1^2 = 2 sqrt(9-5) = 4.
        let consts = PhysicalConstants::natural();
        let u = u_from(0.0, 0.0, 5.0_f64.sqrt(), 0.0);
        let k1_sq = stationary_k1_squared(3.0, u, &consts);
        assert_relative_eq!(k1_sq, 4.0, max_relative = 1e-14);
        let k = Complex64::new(0.0, k1_sq.sqrt());
        let q = Quaternion::from_symplectic(Complex64::new(0.0, 0.0), Complex64::new(2.0, 0.0));
        // The plus branch reduces to strength +2i, which sits exactly on
        // the matching resonance for K = 2i (1 + g = 0).
        assert_eq!(
            solve_scattering_left(k, q, u, &consts, Sign::Plus),
            Err(Error::SingularMatching)
        );
        let sol = solve_scattering_left(k, q, u, &consts, Sign::Minus).unwrap();
        let q_eff = Complex64::new(0.0, -2.0);
        let (r, t) = solve_matching(k, q_eff, &consts).unwrap();
        assert_eq!(sol.r, r);
        assert_eq!(sol.t, t);
        assert_eq!(Complex64::new(1.0, 0.0) + sol.r, sol.t);
        let e = stationary_energy_left(k, u, &consts);
        assert_relative_eq!(e.im, 3.0, max_relative = 1e-14);
    }

    #[test]
    fn scattering_zero_strength_is_transparent() {
        let consts = PhysicalConstants::natural();
        let sol = solve_scattering_left(
            Complex64::new(0.0, 1.0),
            Quaternion::ZERO,
            Quaternion::ZERO,
            &consts,
            Sign::Plus,
        )
        .unwrap();
        assert_eq!(sol.r, Complex64::new(0.0, 0.0));
        assert_eq!(sol.t, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn scattering_rejects_non_stationary_branches() {
        let consts = PhysicalConstants::natural();
        let q = Quaternion::J;
        assert!(matches!(
            solve_scattering_left(Complex64::new(0.5, 1.0), q, Quaternion::ZERO, &consts, Sign::Plus),
            Err(Error::NotStationary { .. })
        ));
        let lossy_u = u_from(0.0, 0.7, 1.0, 0.0);
        assert!(matches!(
            solve_scattering_left(Complex64::new(0.0, 1.0), q, lossy_u, &consts, Sign::Plus),
            Err(Error::NotStationary { .. })
        ));
    }
}
