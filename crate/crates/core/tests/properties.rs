//! Property tests for the algebraic and spectral invariants.

use num_complex::Complex64;
use proptest::prelude::*;

use rhqm::algebra::{quat_sandwich, PhysicalConstants, Quaternion};
use rhqm::complex_delta::{
    flux_formula, solve_autonomous, solve_matching, solve_scattering, ComplexPotential, Sign,
};
use rhqm::quat_left::{alpha_beta, closed_form_k_left, solve_autonomous_left_normalized};
use rhqm::quat_right::solve_autonomous_right;

fn component() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

prop_compose! {
    fn quat()(a in component(), b in component(), c in component(), d in component()) -> Quaternion {
        Quaternion::from_components(a, b, c, d)
    }
}

prop_compose! {
    fn complex()(re in component(), im in component()) -> Complex64 {
        Complex64::new(re, im)
    }
}

proptest! {
    #[test]
    fn quaternion_norm_is_multiplicative(p in quat(), q in quat()) {
        let lhs = (p * q).norm();
        let rhs = p.norm() * q.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-14 * rhs.max(1.0));
    }

    #[test]
    fn conjugation_is_an_involution_and_antihomomorphism(p in quat(), q in quat()) {
        prop_assert_eq!(p.conj().conj(), p);
        let lhs = (p * q).conj();
        let rhs = q.conj() * p.conj();
        prop_assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm().max(1.0));
    }

    #[test]
    fn unit_sandwich_preserves_norm(a in quat(), q in quat()) {
        prop_assume!(a.norm() > 1e-3);
        let u = a.scale(1.0 / a.norm());
        let s = quat_sandwich(u, q).unwrap();
        prop_assert!((s.norm() - q.norm()).abs() <= 1e-13 * q.norm().max(1.0));
    }

    #[test]
    fn dispersion_residuals_stay_small(e in complex(), v in complex()) {
        let consts = PhysicalConstants::natural();
        for sign in [Sign::Plus, Sign::Minus] {
            let branch = solve_autonomous(e, v, &consts, sign);
            let (r1, r2) = branch.dispersion_residuals(&consts);
            prop_assert!(r1 < 1e-10 && r2 < 1e-10, "r1={} r2={}", r1, r2);
        }
    }

    #[test]
    fn energy_and_source_identities(e in complex(), v in complex()) {
        let consts = PhysicalConstants::natural();
        let b = solve_autonomous(e, v, &consts, Sign::Plus);
        let h22m = consts.hbar2_over_two_m();
        let (k0, k1) = (b.k.re, b.k.im);
        prop_assert!((e.im - h22m * (k1 * k1 - k0 * k0) - v.re).abs() < 1e-10);
        prop_assert!((e.re - 2.0 * h22m * k0 * k1 + v.im).abs() < 1e-10);
    }

    #[test]
    fn continuity_identity_is_exact(k in complex(), q in complex()) {
        prop_assume!(k.norm() > 1e-3);
        let consts = PhysicalConstants::natural();
        if let Ok((r, t)) = solve_matching(k, q, &consts) {
            prop_assert_eq!(Complex64::new(1.0, 0.0) + r, t);
        }
    }

    #[test]
    fn flux_formula_tracks_the_direct_solve(k in complex(), q in complex()) {
        prop_assume!(k.norm() > 1e-3);
        let consts = PhysicalConstants::natural();
        let g = consts.mass * q / (consts.hbar * consts.hbar * k.conj());
        prop_assume!((Complex64::new(1.0, 0.0) + g).norm() > 1e-8);
        let pot = ComplexPotential::new(q, Complex64::new(0.0, 0.0));
        let direct = solve_scattering(k, &pot, &consts).unwrap().flux_balance;
        let formula = flux_formula(k, q, &consts).unwrap();
        prop_assert!((direct - formula).abs() <= 1e-10 * direct.abs().max(1.0));
    }

    #[test]
    fn left_k_components_decompose_the_eigenvalue(e in complex(), u in quat()) {
        let consts = PhysicalConstants::natural();
        let (alpha, beta) = alpha_beta(e, u);
        prop_assume!(alpha.hypot(beta) > 1e-9);
        for sign in [Sign::Plus, Sign::Minus] {
            let (k, _, _) = closed_form_k_left(e, u, &consts, sign);
            // K0^2 + K1^2 = |K^2| by construction of the decomposition.
            let k_sq = k * k;
            let sum = k.re * k.re + k.im * k.im;
            prop_assert!((sum - k_sq.norm()).abs() <= 1e-10 * sum.max(1.0));
        }
    }

    #[test]
    fn left_amplitudes_solve_the_eigen_equation(e in complex(), u in quat()) {
        prop_assume!(u.z1.norm() > 0.1);
        let consts = PhysicalConstants::natural();
        for sign in [Sign::Plus, Sign::Minus] {
            let b = solve_autonomous_left_normalized(e, u, &consts, sign).unwrap();
            prop_assert!(b.eig_residual(&consts) < 1e-10);
        }
    }

    #[test]
    fn right_self_interaction_blocks_pure_modes(e1 in component(), u in quat()) {
        prop_assume!(u.z1.norm() > 0.1);
        let consts = PhysicalConstants::natural();
        let e = Complex64::new(0.0, e1);
        for sign in [Sign::Plus, Sign::Minus] {
            let b = solve_autonomous_right(e, u, &consts, sign);
            prop_assert!(b.k.re.abs().min(b.k.im.abs()) > 1e-8);
        }
    }
}
