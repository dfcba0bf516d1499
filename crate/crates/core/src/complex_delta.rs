//! Dirac delta potential for a complex wave function: autonomous branches,
//! stationarity classification, the bound state, and scattering.
//!
//! Plane-wave branches `A exp[Kx - (E/hbar) t]` with complex `K` and `E`
//! satisfy the dispersion pair
//!
//! ```text
//! K0^2 - K1^2 = (2m/hbar^2) (V0 - E1)        (real part)
//! 2 K0 K1     = (2m/hbar^2) (V1 + E0)        (imaginary part)
//! ```
//!
//! and every solver below is checked against those residuals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_zero, zero_tol, PhysicalConstants};
use crate::error::{Error, Result};

/// Delta strength `q` (energy·length) plus constant background `V` (energy).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPotential {
    pub q: Complex64,
    pub v: Complex64,
}

impl ComplexPotential {
    pub fn new(q: Complex64, v: Complex64) -> Self {
        Self { q, v }
    }

    pub fn free() -> Self {
        Self {
            q: Complex64::new(0.0, 0.0),
            v: Complex64::new(0.0, 0.0),
        }
    }
}

/// Overall sign branch of a solved `K`; the general solution carries both
/// `+K` and `-K` terms, so one canonical representative suffices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Spatial behavior of a branch: oscillatory (`K0 = 0`), evanescent
/// (`K1 = 0`), or both components active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StationarityClass {
    PureStationary,
    PureNonOscillatory,
    Mixed,
    /// Both components of `K` vanish; the matching equations are singular.
    Degenerate,
}

impl std::fmt::Display for StationarityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StationarityClass::PureStationary => "pure_stationary",
            StationarityClass::PureNonOscillatory => "pure_non_oscillatory",
            StationarityClass::Mixed => "mixed",
            StationarityClass::Degenerate => "degenerate",
        };
        f.write_str(s)
    }
}

/// A solved plane-wave branch of the complex equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexBranch {
    pub k: Complex64,
    pub e: Complex64,
    pub v: Complex64,
    pub branch_sign: Sign,
}

impl ComplexBranch {
    /// Residuals of the two dispersion relations, relative to the largest
    /// participating term.
    pub fn dispersion_residuals(&self, consts: &PhysicalConstants) -> (f64, f64) {
        dispersion_residuals(self.k, self.e, self.v, consts)
    }
}

/// Relative residuals of the dispersion pair for arbitrary `(K, E, V)`.
pub fn dispersion_residuals(
    k: Complex64,
    e: Complex64,
    v: Complex64,
    consts: &PhysicalConstants,
) -> (f64, f64) {
    let (k0, k1) = (k.re, k.im);
    let c = consts.two_m_over_hbar2();
    let lhs1 = k0 * k0 - k1 * k1;
    let rhs1 = c * (v.re - e.im);
    let lhs2 = 2.0 * k0 * k1;
    let rhs2 = c * (v.im + e.re);
    let scale1 = lhs1.abs().max(rhs1.abs()).max(k0 * k0 + k1 * k1).max(1.0);
    let scale2 = lhs2.abs().max(rhs2.abs()).max(k0 * k0 + k1 * k1).max(1.0);
    ((lhs1 - rhs1).abs() / scale1, (lhs2 - rhs2).abs() / scale2)
}

/// Split `K^2 = re + im*i` into `(K0, K1)` with `K0 >= 0` and the sign of
/// `K1` matching the sign of `im`, avoiding cancellation in either root.
pub(crate) fn split_k_squared(re: f64, im: f64) -> (f64, f64) {
    let hyp = re.hypot(im);
    if hyp == 0.0 {
        return (0.0, 0.0);
    }
    let (k0, k1_mag) = if re >= 0.0 {
        let k0 = ((re + hyp) / 2.0).sqrt();
        let k1 = if k0 > 0.0 { im.abs() / (2.0 * k0) } else { 0.0 };
        (k0, k1)
    } else {
        let k1 = ((hyp - re) / 2.0).sqrt();
        let k0 = if k1 > 0.0 { im.abs() / (2.0 * k1) } else { 0.0 };
        (k0, k1)
    };
    let k1 = if im < 0.0 { -k1_mag } else { k1_mag };
    (k0, k1)
}

/// Solve the autonomous dispersion for `K` given `E` and `V`.
///
/// Closed forms:
/// `K0^2 = (m/hbar^2) (V0 - E1 + sqrt((E1-V0)^2 + (V1+E0)^2))` and
/// `K1^2 = (m/hbar^2) (E1 - V0 + sqrt((E1-V0)^2 + (V1+E0)^2))`,
/// with signs fixed so `2 K0 K1` reproduces the imaginary relation.
/// Total: every finite `(E, V)` yields a branch.
pub fn solve_autonomous(
    e: Complex64,
    v: Complex64,
    consts: &PhysicalConstants,
    branch: Sign,
) -> ComplexBranch {
    let c = consts.two_m_over_hbar2();
    // Components of K^2 = (2m/hbar^2)(V + iE).
    let re = c * (v.re - e.im);
    let im = c * (v.im + e.re);
    let (k0, k1) = split_k_squared(re, im);
    let f = branch.factor();
    ComplexBranch {
        k: Complex64::new(f * k0, f * k1),
        e,
        v,
        branch_sign: branch,
    }
}

/// Classify the spatial behavior implied by `(E, V)`.
///
/// `PureStationary` requires `V1 + E0 = 0` and `V0 < E1`;
/// `PureNonOscillatory` requires `V1 + E0 = 0` and `E1 < V0`;
/// any nonzero `V1 + E0` mixes both behaviors. `V0 = E1` under the zero
/// condition collapses both components of `K` and is flagged `Degenerate`.
pub fn classify_stationarity(e: Complex64, v: Complex64) -> StationarityClass {
    let scale = e.re.abs().max(e.im.abs()).max(v.re.abs()).max(v.im.abs());
    let source = v.im + e.re;
    if !is_zero(source, scale) {
        return StationarityClass::Mixed;
    }
    let gap = e.im - v.re;
    if is_zero(gap, scale) {
        StationarityClass::Degenerate
    } else if gap > 0.0 {
        StationarityClass::PureStationary
    } else {
        StationarityClass::PureNonOscillatory
    }
}

/// The normalizable confined state of the attractive real delta.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub k: Complex64,
    pub e: Complex64,
    /// Real amplitude `sqrt(K0)`, chosen so the density integrates to one
    /// over the full line at `t = 0`.
    pub amplitude: f64,
}

/// Solve the pure confined state `psi = A exp MINUS K0 |x|` of the delta well.
///
/// Requires an attractive real strength: `K = -m q / hbar^2` must have
/// `K0 > 0` and `K1 = 0` for normalizability. The energy follows from the
/// dispersion pair: `E1 = -(m/2 hbar^2) q0^2 + V0` and `E0 = -V1`.
pub fn solve_bound_state(pot: &ComplexPotential, consts: &PhysicalConstants) -> Result<BoundState> {
    let q = pot.q;
    if !is_zero(q.im, q.norm()) {
        return Err(Error::NonConfining { q1: q.im });
    }
    if q.re >= 0.0 {
        return Err(Error::NoBoundState { q0: q.re });
    }
    let k0 = -consts.mass * q.re / (consts.hbar * consts.hbar);
    let e1 = -consts.mass / (2.0 * consts.hbar * consts.hbar) * q.re * q.re + pot.v.re;
    let e0 = -pot.v.im;
    Ok(BoundState {
        k: Complex64::new(k0, 0.0),
        e: Complex64::new(e0, e1),
        amplitude: k0.sqrt(),
    })
}

/// Reflection/transmission amplitudes and the flux balance of a delta
/// scattering configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringSolution {
    pub r: Complex64,
    pub t: Complex64,
    /// `|R|^2 + |T|^2`; equals one only for conservative processes.
    pub flux_balance: f64,
    /// Temporal decay parameter of the scattered branches,
    /// `calE0 = -2 V1 - E0`.
    pub cal_e0: f64,
}

/// Energy parameter of the branch `exp[Kx - (E/hbar) t]` in background `V`,
/// inverted from the dispersion pair.
pub fn energy_from_dispersion(k: Complex64, v: Complex64, consts: &PhysicalConstants) -> Complex64 {
    let h22m = consts.hbar2_over_two_m();
    let e1 = v.re - h22m * (k.re * k.re - k.im * k.im);
    let e0 = 2.0 * h22m * k.re * k.im - v.im;
    Complex64::new(e0, e1)
}

/// Solve the delta matching system for the scattering configuration
/// incident `exp[Kx]`, reflected `R exp[conj(K) x]`, transmitted
/// `T exp[-conj(K) x]`.
///
/// Continuity gives `1 + R = T` exactly; the derivative jump
/// `(hbar^2/2m)[psi'_+(0) - psi'_-(0)] = q psi(0)` closes the system.
pub fn solve_scattering(
    k: Complex64,
    pot: &ComplexPotential,
    consts: &PhysicalConstants,
) -> Result<ScatteringSolution> {
    if k.norm() == 0.0 {
        return Err(Error::SingularMatching);
    }
    let (r, t) = solve_matching(k, pot.q, consts)?;
    let e = energy_from_dispersion(k, pot.v, consts);
    let cal_e0 = -2.0 * pot.v.im - e.re;
    Ok(ScatteringSolution {
        r,
        t,
        flux_balance: r.norm_sqr() + t.norm_sqr(),
        cal_e0,
    })
}

/// The matching core shared by the complex and quaternionic scattering
/// paths: returns `(R, T)` with `1 + R = T` exact.
pub fn solve_matching(
    k: Complex64,
    strength: Complex64,
    consts: &PhysicalConstants,
) -> Result<(Complex64, Complex64)> {
    let kc = k.conj();
    // Jump condition: -conj(K) T - K - conj(K) R = (2mq/hbar^2) T, with
    // R = T - 1 this collapses to T (s + 2 conj(K)) = conj(K) - K.
    let s = consts.two_m_over_hbar2() * strength;
    let denom = s + 2.0 * kc;
    if is_zero(denom.norm(), s.norm().max(k.norm())) {
        return Err(Error::SingularMatching);
    }
    let t = (kc - k) / denom;
    let r = t - Complex64::new(1.0, 0.0);
    // Re-derive T from R so the continuity identity 1 + R = T is exact at
    // the floating-point level.
    Ok((r, Complex64::new(1.0, 0.0) + r))
}

/// Closed-form flux balance
/// `|R|^2 + |T|^2 = 1 + K1/|K|^2 * (2 K1 + i[(1+conj(g)) K - (1+g) conj(K)]) / |1+g|^2`
/// with `g = m q / (hbar^2 conj(K))`. Must agree with the flux of
/// `solve_scattering` on the whole admissible domain.
pub fn flux_formula(k: Complex64, q: Complex64, consts: &PhysicalConstants) -> Result<f64> {
    if k.norm() == 0.0 {
        return Err(Error::SingularMatching);
    }
    let g = consts.mass * q / (consts.hbar * consts.hbar * k.conj());
    let one_plus_g = Complex64::new(1.0, 0.0) + g;
    if one_plus_g.norm() <= zero_tol(g.norm()) {
        return Err(Error::PoleAtG {
            magnitude: one_plus_g.norm(),
        });
    }
    let k1 = k.im;
    let bracket = Complex64::new(2.0 * k1, 0.0)
        + Complex64::new(0.0, 1.0) * (one_plus_g.conj() * k - one_plus_g * k.conj());
    let correction = k1 / k.norm_sqr() * bracket / one_plus_g.norm_sqr();
    // The bracket is i(w - conj(w)) + real, hence real up to rounding.
    debug_assert!(correction.im.abs() <= 1e-12 * correction.re.abs().max(1.0));
    Ok(1.0 + correction.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: Newton iteration on the dispersion residuals
    /// r1 = K0^2 - K1^2 - a, r2 = 2 K0 K1 - b, folded to the K0 >= 0 root.
    fn newton_dispersion_root(a: f64, b: f64) -> (f64, f64) {
        if a == 0.0 && b == 0.0 {
            return (0.0, 0.0);
        }
        let scale = a.hypot(b).sqrt();
        let mut k0 = scale.max(1e-3);
        let mut k1 = if b >= 0.0 { scale.max(1e-3) } else { -scale.max(1e-3) };
        for _ in 0..200 {
            let r1 = k0 * k0 - k1 * k1 - a;
            let r2 = 2.0 * k0 * k1 - b;
            let det = 4.0 * (k0 * k0 + k1 * k1);
            if det == 0.0 {
                break;
            }
            // Jacobian [[2k0, -2k1], [2k1, 2k0]] inverted explicitly.
            let dk0 = (2.0 * k0 * r1 + 2.0 * k1 * r2) / det;
            let dk1 = (-2.0 * k1 * r1 + 2.0 * k0 * r2) / det;
            k0 -= dk0;
            k1 -= dk1;
            if dk0.abs() + dk1.abs() < 1e-15 * (1.0 + k0.abs() + k1.abs()) {
                break;
            }
        }
        if k0 < 0.0 {
            (-k0, -k1)
        } else {
            (k0, k1)
        }
    }

    #[test]
    fn autonomous_pure_stationary_example() {
        let consts = PhysicalConstants::natural();
        let b = solve_autonomous(
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
            &consts,
            Sign::Plus,
        );
        assert_relative_eq!(b.k.re, 0.0, epsilon = 1e-14);
        assert_relative_eq!(b.k.im, 2.0_f64.sqrt(), max_relative = 1e-14);
        let (r1, r2) = b.dispersion_residuals(&consts);
        assert!(r1 < 1e-14 && r2 < 1e-14);
    }

    #[test]
    fn autonomous_pure_decaying_example() {
        let consts = PhysicalConstants::natural();
        let b = solve_autonomous(
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 0.0),
            &consts,
            Sign::Plus,
        );
        assert_relative_eq!(b.k.re, 2.0_f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(b.k.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn autonomous_free_particle_at_zero_energy() {
        let consts = PhysicalConstants::natural();
        let b = solve_autonomous(
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            &consts,
            Sign::Plus,
        );
        assert_eq!(b.k, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn autonomous_matches_newton_oracle_on_random_draws() {
        let consts = PhysicalConstants::natural();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..2000 {
            let e = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let v = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let b = solve_autonomous(e, v, &consts, Sign::Plus);
            let c = consts.two_m_over_hbar2();
            let (k0, k1) = newton_dispersion_root(c * (v.re - e.im), c * (v.im + e.re));
            let scale = b.k.norm().max(1.0);
            assert!(
                (b.k.re - k0).abs() <= 1e-9 * scale && (b.k.im - k1).abs() <= 1e-9 * scale,
                "closed form {:?} vs newton ({k0}, {k1})",
                b.k
            );
        }
    }

    #[test]
    fn minus_branch_mirrors_k() {
        let consts = PhysicalConstants::natural();
        let e = Complex64::new(0.7, -1.3);
        let v = Complex64::new(0.2, 0.4);
        let plus = solve_autonomous(e, v, &consts, Sign::Plus);
        let minus = solve_autonomous(e, v, &consts, Sign::Minus);
        assert_eq!(minus.k, -plus.k);
        let (r1, r2) = minus.dispersion_residuals(&consts);
        assert!(r1 < 1e-14 && r2 < 1e-14);
    }

    #[test]
    fn stationarity_examples() {
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(
            classify_stationarity(Complex64::new(0.0, 1.0), zero),
            StationarityClass::PureStationary
        );
        assert_eq!(
            classify_stationarity(Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)),
            StationarityClass::PureNonOscillatory
        );
        assert_eq!(
            classify_stationarity(Complex64::new(1.0, 1.0), zero),
            StationarityClass::Mixed
        );
        assert_eq!(
            classify_stationarity(Complex64::new(0.0, 2.0), Complex64::new(2.0, 0.0)),
            StationarityClass::Degenerate
        );
    }

    #[test]
    fn bound_state_example() {
        let consts = PhysicalConstants::natural();
        let pot = ComplexPotential::new(Complex64::new(-2.0, 0.0), Complex64::new(0.0, 0.0));
        let bs = solve_bound_state(&pot, &consts).unwrap();
        assert_relative_eq!(bs.k.re, 2.0, max_relative = 1e-15);
        assert_eq!(bs.k.im, 0.0);
        assert_relative_eq!(bs.e.im, -2.0, max_relative = 1e-15);
        assert_eq!(bs.e.re, 0.0);
        assert_relative_eq!(bs.amplitude, 2.0_f64.sqrt(), max_relative = 1e-15);
        let (r1, r2) = dispersion_residuals(bs.k, bs.e, pot.v, &consts);
        assert!(r1 < 1e-14 && r2 < 1e-14);
    }

    #[test]
    fn bound_state_rejects_repulsive_and_complex_strength() {
        let consts = PhysicalConstants::natural();
        let repulsive = ComplexPotential::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        assert!(matches!(
            solve_bound_state(&repulsive, &consts),
            Err(Error::NoBoundState { .. })
        ));
        let lossy = ComplexPotential::new(Complex64::new(-2.0, 0.5), Complex64::new(0.0, 0.0));
        assert!(matches!(
            solve_bound_state(&lossy, &consts),
            Err(Error::NonConfining { .. })
        ));
    }

    #[test]
    fn bound_state_with_imaginary_background_decays_in_time() {
        let consts = PhysicalConstants::natural();
        let pot = ComplexPotential::new(Complex64::new(-2.0, 0.0), Complex64::new(0.0, 0.3));
        let bs = solve_bound_state(&pot, &consts).unwrap();
        assert_relative_eq!(bs.e.re, -0.3, max_relative = 1e-15);
        assert_relative_eq!(bs.e.im, -2.0, max_relative = 1e-15);
        let (r1, r2) = dispersion_residuals(bs.k, bs.e, pot.v, &consts);
        assert!(r1 < 1e-14 && r2 < 1e-14, "r1={r1} r2={r2}");
    }

    #[test]
    fn scattering_half_transmission_example() {
        let consts = PhysicalConstants::natural();
        let pot = ComplexPotential::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        let sol = solve_scattering(Complex64::new(0.0, 1.0), &pot, &consts).unwrap();
        assert_relative_eq!(sol.t.norm_sqr(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(sol.r.norm_sqr(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(sol.flux_balance, 1.0, max_relative = 1e-14);
        // continuity is exact by construction
        assert_eq!(Complex64::new(1.0, 0.0) + sol.r, sol.t);
    }

    #[test]
    fn scattering_textbook_transmission_probability() {
        let consts = PhysicalConstants::natural();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let k1: f64 = rng.gen_range(0.1..5.0);
            let q0: f64 = rng.gen_range(-5.0..5.0);
            if q0.abs() < 1e-3 {
                continue;
            }
            let pot = ComplexPotential::new(Complex64::new(q0, 0.0), Complex64::new(0.0, 0.0));
            let sol = solve_scattering(Complex64::new(0.0, k1), &pot, &consts).unwrap();
            let expected = 1.0 / (1.0 + (consts.mass * q0 / (consts.hbar * consts.hbar * k1)).powi(2));
            assert_relative_eq!(sol.t.norm_sqr(), expected, max_relative = 1e-12);
            assert_relative_eq!(sol.flux_balance, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn scattering_free_potential_is_transparent() {
        let consts = PhysicalConstants::natural();
        let sol = solve_scattering(
            Complex64::new(0.0, 1.0),
            &ComplexPotential::free(),
            &consts,
        )
        .unwrap();
        assert_eq!(sol.r, Complex64::new(0.0, 0.0));
        assert_eq!(sol.t, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn scattering_complex_strength_breaks_unitarity_but_matches_formula() {
        let consts = PhysicalConstants::natural();
        let k = Complex64::new(0.0, 1.0);
        let q = Complex64::new(1.0, 1.0);
        let pot = ComplexPotential::new(q, Complex64::new(0.0, 0.0));
        let sol = solve_scattering(k, &pot, &consts).unwrap();
        assert!((sol.flux_balance - 1.0).abs() > 1e-3);
        let formula = flux_formula(k, q, &consts).unwrap();
        assert_relative_eq!(sol.flux_balance, formula, max_relative = 1e-12);
    }

    #[test]
    fn flux_formula_is_unity_for_evanescent_k() {
        let consts = PhysicalConstants::natural();
        // K1 = 0 annihilates the correction term.
        let f = flux_formula(Complex64::new(1.7, 0.0), Complex64::new(0.8, -0.4), &consts).unwrap();
        assert_relative_eq!(f, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn flux_formula_matches_direct_solve_on_random_draws() {
        let consts = PhysicalConstants::natural();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut checked = 0;
        while checked < 10_000 {
            let k = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let q = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if k.norm() < 1e-3 {
                continue;
            }
            let g = consts.mass * q / (consts.hbar * consts.hbar * k.conj());
            if (Complex64::new(1.0, 0.0) + g).norm() < 1e-8 {
                continue;
            }
            let pot = ComplexPotential::new(q, Complex64::new(0.0, 0.0));
            let direct = solve_scattering(k, &pot, &consts).unwrap().flux_balance;
            let formula = flux_formula(k, q, &consts).unwrap();
            let scale = direct.abs().max(1.0);
            assert!(
                (direct - formula).abs() <= 1e-10 * scale,
                "direct {direct} vs formula {formula} at k={k}, q={q}"
            );
            checked += 1;
        }
    }

    #[test]
    fn scattering_scaled_branch_energy() {
        let consts = PhysicalConstants::natural();
        // E from the dispersion, then calE0 = -2 V1 - E0.
        let k = Complex64::new(0.3, 1.2);
        let v = Complex64::new(0.5, -0.7);
        let e = energy_from_dispersion(k, v, &consts);
        let (r1, r2) = dispersion_residuals(k, e, v, &consts);
        assert!(r1 < 1e-14 && r2 < 1e-14);
        let pot = ComplexPotential::new(Complex64::new(1.0, 0.0), v);
        let sol = solve_scattering(k, &pot, &consts).unwrap();
        assert_relative_eq!(sol.cal_e0, -2.0 * v.im - e.re, max_relative = 1e-14);
    }
}
