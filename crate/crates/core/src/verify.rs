//! The full verification suite: every closed form checked against its
//! brute-force oracle on seeded random draws, the finite-difference and
//! jump residuals of every analytically solved state, and the
//! printed-formula diagnostics (informational, never failing).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{PhysicalConstants, Quaternion};
use crate::complex_delta::{
    flux_formula, solve_autonomous, solve_bound_state, solve_scattering, ComplexPotential, Sign,
};
use crate::error::Result;
use crate::observables::{expectation_closed_form, expectation_quadrature, ObservableKind};
use crate::oracle::{
    convergence_slope, eig2, pde_residual, solve_matching_direct, PdeGrid,
};
use crate::quat_left::{
    alpha_beta, closed_form_k_left, confined_energy_left, coupling_matrix,
    solve_autonomous_left_normalized, solve_delta_left, stationary_energy_left, strength_matrix,
};
use crate::quat_right::{
    eigenvalue_right, printed_k_squares_right, solve_autonomous_right,
};
use crate::state::{PotentialSpec, WaveState};

/// Deliberate fault injections, used to prove the suite catches failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fault {
    /// Perturb one solved `K` before the dispersion-residual check.
    Dispersion,
    /// Offset the closed-form flux on one draw.
    Flux,
    /// Perturb the closed-form eigenvalue on one draw.
    Eigen,
}

impl std::str::FromStr for Fault {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "dispersion" => Ok(Fault::Dispersion),
            "flux" => Ok(Fault::Flux),
            "eigen" => Ok(Fault::Eigen),
            other => Err(format!("unknown fault '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub draws: usize,
    pub consts: PhysicalConstants,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            draws: 10_000,
            consts: PhysicalConstants::natural(),
            fault: None,
        }
    }
}

/// Derivable identities must pass; informational items report
/// printed-vs-derived discrepancies without failing the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ItemKind {
    Check,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyItem {
    pub name: String,
    pub kind: ItemKind,
    pub passed: bool,
    /// The measured extremum (usually a max residual).
    pub value: f64,
    /// Pass threshold; informational items carry none.
    pub threshold: Option<f64>,
    pub detail: String,
}

impl VerifyItem {
    fn check(name: &str, value: f64, threshold: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            kind: ItemKind::Check,
            passed: value <= threshold,
            value,
            threshold: Some(threshold),
            detail,
        }
    }

    fn check_at_least(name: &str, value: f64, floor: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            kind: ItemKind::Check,
            passed: value > floor,
            value,
            threshold: Some(floor),
            detail,
        }
    }

    fn info(name: &str, value: f64, detail: String) -> Self {
        Self {
            name: name.to_string(),
            kind: ItemKind::Info,
            passed: true,
            value,
            threshold: None,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub seed: u64,
    pub draws: usize,
    pub items: Vec<VerifyItem>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|item| item.passed)
    }
}

fn random_complex(rng: &mut impl Rng, span: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-span..span), rng.gen_range(-span..span))
}

fn random_quat(rng: &mut impl Rng, span: f64) -> Quaternion {
    Quaternion::from_components(
        rng.gen_range(-span..span),
        rng.gen_range(-span..span),
        rng.gen_range(-span..span),
        rng.gen_range(-span..span),
    )
}

/// Run the whole suite. Deterministic for a fixed config.
pub fn run(config: &VerifyConfig) -> VerificationReport {
    let consts = config.consts;
    let mut items = Vec::new();
    items.push(complex_dispersion_item(config, &consts));
    items.push(complex_conservation_item(config, &consts));
    items.push(scattering_unitarity_item(&consts));
    items.push(matching_direct_item(config, &consts));
    items.push(flux_formula_item(config, &consts));
    items.push(left_eigen_item(config, &consts));
    items.push(left_complex_limit_item(config, &consts));
    items.extend(left_delta_items(config, &consts));
    items.push(right_eigen_item(config, &consts));
    items.push(right_obstruction_item(config, &consts));
    match residual_battery_items(&consts) {
        Ok(mut battery) => items.append(&mut battery),
        Err(e) => items.push(VerifyItem::check(
            "oracle.residual_battery",
            f64::INFINITY,
            0.0,
            format!("battery construction failed: {e}"),
        )),
    }
    match observables_items(&consts) {
        Ok(mut obs) => items.append(&mut obs),
        Err(e) => items.push(VerifyItem::check(
            "observables.closed_vs_quadrature",
            f64::INFINITY,
            0.0,
            format!("observable evaluation failed: {e}"),
        )),
    }
    items.push(info_matching_printed_sign(config, &consts));
    items.push(info_confined_energy_printed(&consts));
    items.push(info_right_printed_k(&consts));
    VerificationReport {
        schema_version: 1,
        seed: config.seed,
        draws: config.draws,
        items,
    }
}

fn complex_dispersion_item(config: &VerifyConfig, consts: &PhysicalConstants) -> VerifyItem {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut max = 0.0_f64;
    for i in 0..config.draws {
        let e = random_complex(&mut rng, 5.0);
        let v = random_complex(&mut rng, 5.0);
        let mut branch = solve_autonomous(e, v, consts, Sign::Plus);
        if config.fault == Some(Fault::Dispersion) && i == config.draws / 2 {
            branch.k += Complex64::new(1e-3, 0.0);
        }
        let (r1, r2) = branch.dispersion_residuals(consts);
        max = max.max(r1).max(r2);
    }
    VerifyItem::check(
        "complex.dispersion_residuals",
        max,
        1e-10,
        format!("both dispersion relations on {} random (E, V) draws", config.draws),
    )
}

fn complex_conservation_item(config: &VerifyConfig, consts: &PhysicalConstants) -> VerifyItem {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x11);
    let mut max = 0.0_f64;
    let h22m = consts.hbar2_over_two_m();
    for _ in 0..config.draws {
        let e = random_complex(&mut rng, 5.0);
        let v = random_complex(&mut rng, 5.0);
        let b = solve_autonomous(e, v, consts, Sign::Plus);
        let (k0, k1) = (b.k.re, b.k.im);
        let energy = e.im - h22m * (k1 * k1 - k0 * k0) - v.re;
        let source = e.re - 2.0 * h22m * k0 * k1 + v.im;
        max = max.max(energy.abs()).max(source.abs());
    }
    VerifyItem::check(
        "complex.conservation_identities",
        max,
        1e-10,
        "energy and probability-source identities across random branches".to_string(),
    )
}

fn scattering_unitarity_item(consts: &PhysicalConstants) -> VerifyItem {
    let mut max = 0.0_f64;
    let n = 40;
    for i in 0..n {
        let k1 = 0.1 + (5.0 - 0.1) * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let q0 = -5.0 + 10.0 * j as f64 / (n - 1) as f64;
            if q0.abs() < 1e-6 {
                continue;
            }
            let pot = ComplexPotential::new(Complex64::new(q0, 0.0), Complex64::new(0.0, 0.0));
            let sol = solve_scattering(Complex64::new(0.0, k1), &pot, consts).unwrap();
            let textbook =
                1.0 / (1.0 + (consts.mass * q0 / (consts.hbar * consts.hbar * k1)).powi(2));
            max = max
                .max((sol.flux_balance - 1.0).abs())
                .max((sol.t.norm_sqr() - textbook).abs());
        }
    }
    VerifyItem::check(
        "complex.scattering_unitarity",
        max,
        1e-12,
        "flux balance and transmission probability on a (k, q0) grid".to_string(),
    )
}

fn matching_direct_item(config: &VerifyConfig, consts: &PhysicalConstants) -> VerifyItem {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x22);
    let mut max = 0.0_f64;
    let mut checked = 0;
    while checked < config.draws {
        let k = random_complex(&mut rng, 3.0);
        let q = random_complex(&mut rng, 3.0);
        if k.norm() < 1e-3 {
            continue;
        }
        let pot = ComplexPotential::new(q, Complex64::new(0.0, 0.0));
        let (Ok(sol), Ok((r, t))) = (
            solve_scattering(k, &pot, consts),
            solve_matching_direct(k, q, consts),
        ) else {
            continue;
        };
        let scale = t.norm().max(1.0);
        max = max
            .max((sol.r - r).norm() / scale)
            .max((sol.t - t).norm() / scale);
        checked += 1;
    }
    VerifyItem::check(
        "complex.matching_vs_direct_solve",
        max,
        1e-12,
        format!("scattering solver against independent elimination, {} draws", config.draws),
    )
}

fn flux_formula_item(config: &VerifyConfig, consts: &PhysicalConstants) -> VerifyItem {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x33);
    let mut max = 0.0_f64;
    let mut checked = 0;
    while checked < config.draws {
        let k = random_complex(&mut rng, 3.0);
        let q = random_complex(&mut rng, 3.0);
        if k.norm() < 1e-3 {
            continue;
        }
        let g = consts.mass * q / (consts.hbar * consts.hbar * k.conj());
        if (Complex64::new(1.0, 0.0) + g).norm() < 1e-8 {
            continue;
        }
        let pot = ComplexPotential::new(q, Complex64::new(0.0, 0.0));
        let direct = solve_scattering(k, &pot, consts).unwrap().flux_balance;
        let mut formula = flux_formula(k, q, consts).unwrap();
        if config.fault == Some(Fault::Flux) && checked == config.draws / 2 {
            formula += 1e-3;
        }
        max = max.max((direct - formula).abs() / direct.abs().max(1.0));
        checked += 1;
    }
    VerifyItem::check(
        "complex.flux_formula_vs_direct",
        max,
        1e-10,
        format!(
            "closed-form flux balance against the matching solve, {} draws (poles excluded)",
            config.draws
        ),
    )
}

fn left_eigen_item(config: &VerifyConfig, consts: &PhysicalConstants) -> VerifyItem {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x44);
    let mut max = 0.0_f64;
    let mut checked = 0;
    while checked < config.draws {
        let e = random_complex(&mut rng, 5.0);
        let u = random_quat(&mut rng, 5.0);
        let (alpha, beta) = alpha_beta(e, u);
        if alpha.hypot(beta) < 1e-12 {
            continue;
        }
        let eig = eig2(&coupling_matrix(e, u));
        for sign in [Sign::Plus, Sign::Minus] {
            let (k, _, _) = closed_form_k_left(e, u, consts, sign);
            let mut k_sq = k * k;
            if config.fault == Some(Fault::Eigen) && checked == config.draws / 2 {
                k_sq += Complex64::new(1e-3, 0.0);
            }
            // Decompose each brute-force eigenvalue the same way and
            // compare squared components against the closed forms.
            let lambda_cf = consts.hbar2_over_two_m() * k_sq;
            let nearest = eig
                .pairs
                .iter()
                .map(|p| (p.value - lambda_cf).norm())
                .fold(f64::INFINITY, f64::min);
            max = max.max(nearest / lambda_cf.norm().max(1.0));
        }
        checked += 1;
    }
    VerifyItem::check(
        "left.closed_form_vs_eigenvalues",
        max,
        1e-8,
        format!(
            "closed-form K components against brute-force 2x2 eigenvalues, {} draws",
            config.draws
        ),
    )
}

fn left_complex_limit_item(config: &VerifyConfig, consts: &PhysicalConstants) -> VerifyItem {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x55);
    let mut max_k = 0.0_f64;
    let mut max_ratio = 0.0_f64;
    let draws = (config.draws / 10).max(100);
    let mut checked = 0;
    while checked < draws {
        let e = random_complex(&mut rng, 5.0);
        let v = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        // The perturbation expansion needs the unperturbed eigenvalues
        // well separated and away from zero.
        let z = Complex64::new(e.re + v.im, e.im);
        let lambda_c = v + Complex64::new(0.0, 1.0) * e;
        if z.norm() < 0.6 || lambda_c.norm() < 0.25 {
            continue;
        }
        let u = Quaternion::from_symplectic(v, Complex64::new(1e-6, 0.0));
        let complex_branch = solve_autonomous(e, v, consts, Sign::Plus);
        let mut best_k = f64::INFINITY;
        let mut best_ratio = f64::INFINITY;
        for sign in [Sign::Plus, Sign::Minus] {
            let b = solve_autonomous_left_normalized(e, u, consts, sign).unwrap();
            let diff = (b.k - complex_branch.k).norm();
            if diff < best_k {
                best_k = diff;
                best_ratio = (b.a1 / b.a0).norm();
            }
        }
        max_k = max_k.max(best_k);
        max_ratio = max_ratio.max(best_ratio);
        checked += 1;
    }
    let value = max_k.max(max_ratio * 1e-3);
    VerifyItem::check(
        "left.complex_limit_continuity",
        value,
        1e-9,
        format!(
            "with |U1| = 1e-6: max |K_left - K_complex| = {max_k:.3e}, max |A1/A0| = {max_ratio:.3e} over {draws} draws"
        ),
    )
}

fn left_delta_items(config: &VerifyConfig, consts: &PhysicalConstants) -> Vec<VerifyItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x66);
    let mut max_eig = 0.0_f64;
    let mut max_sandwich = 0.0_f64;
    let mut max_mag = 0.0_f64;
    let mut checked = 0;
    while checked < config.draws {
        let q = random_quat(&mut rng, 3.0);
        if q.z1.norm() < 1e-3 {
            continue;
        }
        let eig = eig2(&strength_matrix(q));
        for sign in [Sign::Plus, Sign::Minus] {
            let sol = solve_delta_left(q, consts, sign).unwrap();
            let mu = sol.strength_eigenvalue(consts);
            let nearest = eig
                .pairs
                .iter()
                .map(|p| (p.value - mu).norm())
                .fold(f64::INFINITY, f64::min);
            max_eig = max_eig.max(nearest / mu.norm().max(1.0));
            let s = sol.sandwich(q);
            max_sandwich = max_sandwich.max(s.z1.norm() / q.norm().max(1.0));
            let mag = (sol.k.norm()
                - consts.mass / (consts.hbar * consts.hbar) * q.norm())
            .abs();
            max_mag = max_mag.max(mag / q.norm().max(1.0));
        }
        checked += 1;
    }
    vec![
        VerifyItem::check(
            "left.delta_k_vs_eigenvalues",
            max_eig,
            1e-12,
            format!("delta-matching K against brute-force eigenvalues, {} draws", config.draws),
        ),
        VerifyItem::check(
            "left.delta_sandwich_complexity",
            max_sandwich,
            1e-12,
            "j,k parts of conj(A) Q A / |A|^2 for eigen-amplitudes".to_string(),
        ),
        VerifyItem::check(
            "left.delta_magnitude_correspondence",
            max_mag,
            1e-12,
            "|K| = (m/hbar^2) |Q| for the delta matching".to_string(),
        ),
    ]
}

fn right_eigen_item(config: &VerifyConfig, _consts: &PhysicalConstants) -> VerifyItem {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x77);
    let mut max = 0.0_f64;
    for _ in 0..config.draws {
        let e = random_complex(&mut rng, 5.0);
        let u = random_quat(&mut rng, 5.0);
        let eig = eig2(&crate::quat_right::coupling_matrix_right(e, u));
        for sign in [Sign::Plus, Sign::Minus] {
            let lambda = eigenvalue_right(e, u, sign);
            let nearest = eig
                .pairs
                .iter()
                .map(|p| (p.value - lambda).norm())
                .fold(f64::INFINITY, f64::min);
            max = max.max(nearest / lambda.norm().max(1.0));
        }
    }
    VerifyItem::check(
        "right.eigenvalues_vs_brute_force",
        max,
        1e-12,
        format!(
            "quadratic-formula eigenvalues against characteristic-polynomial roots, {} draws",
            config.draws
        ),
    )
}

fn right_obstruction_item(config: &VerifyConfig, consts: &PhysicalConstants) -> VerifyItem {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x88);
    let mut min_component = f64::INFINITY;
    let mut checked = 0;
    while checked < config.draws {
        let e = Complex64::new(0.0, rng.gen_range(-5.0..5.0));
        let u = random_quat(&mut rng, 5.0);
        if u.z1.norm() < 0.1 {
            continue;
        }
        for sign in [Sign::Plus, Sign::Minus] {
            let b = solve_autonomous_right(e, u, consts, sign);
            min_component = min_component.min(b.k.re.abs().min(b.k.im.abs()));
        }
        checked += 1;
    }
    VerifyItem::check_at_least(
        "right.pure_mode_obstruction",
        min_component,
        1e-8,
        format!(
            "min(|K0|, |K1|) across both branches with E0 = 0 and U1 != 0, {} draws",
            config.draws
        ),
    )
}

/// Every analytically solved state paired with its potential, a grid
/// window and an evaluation time.
pub fn residual_battery(
    consts: &PhysicalConstants,
) -> Result<Vec<(String, WaveState, PotentialSpec, (f64, f64), f64)>> {
    let c0 = Complex64::new(0.0, 0.0);
    let mut battery = Vec::new();

    let pot = ComplexPotential::new(Complex64::new(-2.0, 0.0), c0);
    let bs = solve_bound_state(&pot, consts)?;
    battery.push((
        "complex_bound".to_string(),
        WaveState::bound_complex(&bs, &pot),
        PotentialSpec::from_complex(&pot),
        (-10.0, 10.0),
        0.0,
    ));

    let pot = ComplexPotential::new(Complex64::new(-2.0, 0.0), Complex64::new(0.0, 0.3));
    let bs = solve_bound_state(&pot, consts)?;
    battery.push((
        "complex_bound_lossy_background".to_string(),
        WaveState::bound_complex(&bs, &pot),
        PotentialSpec::from_complex(&pot),
        (-10.0, 10.0),
        0.25,
    ));

    let pot = ComplexPotential::new(Complex64::new(1.0, 0.0), c0);
    let k = Complex64::new(0.0, 1.0);
    let sol = solve_scattering(k, &pot, consts)?;
    battery.push((
        "complex_scatter_unitary".to_string(),
        WaveState::scattering_complex(k, &pot, &sol, consts),
        PotentialSpec::from_complex(&pot),
        (-10.0, 10.0),
        0.0,
    ));

    // With a lossy background the scattered branches decay at a different
    // temporal rate than the incident one, so the matching holds at the
    // instant the amplitudes are defined; evaluate there.
    let pot = ComplexPotential::new(Complex64::new(1.0, 0.5), Complex64::new(0.5, -0.7));
    let k = Complex64::new(0.3, 1.2);
    let sol = solve_scattering(k, &pot, consts)?;
    battery.push((
        "complex_scatter_lossy".to_string(),
        WaveState::scattering_complex(k, &pot, &sol, consts),
        PotentialSpec::from_complex(&pot),
        (-2.0, 2.0),
        0.0,
    ));

    let v = Complex64::new(0.5, 0.2);
    let branch = solve_autonomous(Complex64::new(1.0, 1.0), v, consts, Sign::Plus);
    battery.push((
        "complex_autonomous_mixed".to_string(),
        WaveState::autonomous_complex(&branch, Complex64::new(0.8, 0.0)),
        PotentialSpec::quaternionic(Quaternion::ZERO, Quaternion::from_complex(v)),
        (-2.0, 2.0),
        0.1,
    ));

    let u = Quaternion::from_components(0.5, -0.2, 0.9, 0.4);
    let branch =
        solve_autonomous_left_normalized(Complex64::new(0.3, 1.4), u, consts, Sign::Minus)?;
    battery.push((
        "left_autonomous".to_string(),
        WaveState::autonomous_left(&branch),
        PotentialSpec::quaternionic(Quaternion::ZERO, u),
        (-2.0, 2.0),
        0.15,
    ));

    let q = Quaternion::from_real(-2.0);
    let u = Quaternion::from_symplectic(Complex64::new(0.5, 0.0), Complex64::new(3.0, 0.0));
    battery.push((
        "left_confined".to_string(),
        WaveState::confined_left(q, u, consts)?,
        PotentialSpec::quaternionic(q, u),
        (-10.0, 10.0),
        0.0,
    ));

    // Quaternionic scattering reduces to the complex matching with the
    // effective strength Re[Q] + |Im[Q]| i; the reduced functions solve
    // the complex equation in a free background.
    let u = Quaternion::from_symplectic(c0, Complex64::new(5.0_f64.sqrt(), 0.0));
    let k = Complex64::new(0.0, 2.0);
    // The plus-branch strength +2i sits exactly on the matching resonance
    // (1 + g = 0); the minus branch scatters regularly.
    let q_eff = Complex64::new(0.0, -2.0);
    let pot_eff = ComplexPotential::new(q_eff, c0);
    let sol = solve_scattering(k, &pot_eff, consts)?;
    let _incident_e = stationary_energy_left(k, u, consts);
    battery.push((
        "left_scatter_reduced".to_string(),
        WaveState::scattering_complex(k, &pot_eff, &sol, consts),
        PotentialSpec::from_complex(&pot_eff),
        (-10.0, 10.0),
        0.0,
    ));

    let u = Quaternion::from_symplectic(c0, Complex64::new(1.0, 0.0));
    let branch = solve_autonomous_right(Complex64::new(0.0, 2.0), u, consts, Sign::Plus);
    battery.push((
        "right_autonomous".to_string(),
        WaveState::autonomous_right(&branch),
        PotentialSpec::quaternionic(Quaternion::ZERO, u),
        (-2.0, 2.0),
        0.1,
    ));

    let u = Quaternion::from_components(0.2, 0.6, 0.5, -0.3);
    let branch = solve_autonomous_right(Complex64::new(0.4, 1.1), u, consts, Sign::Minus);
    battery.push((
        "right_autonomous_lossy".to_string(),
        WaveState::autonomous_right(&branch),
        PotentialSpec::quaternionic(Quaternion::ZERO, u),
        (-2.0, 2.0),
        0.2,
    ));

    Ok(battery)
}

fn residual_battery_items(consts: &PhysicalConstants) -> Result<Vec<VerifyItem>> {
    let battery = residual_battery(consts)?;
    let mut max_pde = 0.0_f64;
    let mut max_jump = 0.0_f64;
    let mut worst_pde = String::new();
    for (name, state, potential, window, t) in &battery {
        let grid = PdeGrid::new(window.0, window.1, 1e-3);
        let report = pde_residual(state, potential, &grid, *t, consts)?;
        if report.pde_residual_max > max_pde {
            max_pde = report.pde_residual_max;
            worst_pde = name.clone();
        }
        max_jump = max_jump.max(report.jump_residual);
    }
    // Convergence slopes on a representative subset; the collar is fixed
    // across halvings so the sampled domain never moves.
    let mut max_slope_err = 0.0_f64;
    let mut slopes = Vec::new();
    for (name, state, potential, base, t) in [
        (
            "complex_bound",
            &battery[0].1,
            &battery[0].2,
            PdeGrid::new(-6.0, 6.0, 0.2).with_collar(2.0),
            battery[0].4,
        ),
        (
            "left_autonomous",
            &battery[5].1,
            &battery[5].2,
            PdeGrid::new(-2.0, 2.0, 0.1).with_collar(0.25),
            battery[5].4,
        ),
        (
            "right_autonomous",
            &battery[8].1,
            &battery[8].2,
            PdeGrid::new(-2.0, 2.0, 0.1).with_collar(0.25),
            battery[8].4,
        ),
    ] {
        let (slope, _) = convergence_slope(state, potential, &base, t, consts, 3)?;
        max_slope_err = max_slope_err.max((slope - 4.0).abs());
        slopes.push(format!("{name}: {slope:.3}"));
    }
    Ok(vec![
        VerifyItem::check(
            "oracle.pde_residual_max",
            max_pde,
            1e-6,
            format!(
                "fourth-order residual at h = 1e-3 across {} states (worst: {worst_pde})",
                battery.len()
            ),
        ),
        VerifyItem::check(
            "oracle.jump_residual_max",
            max_jump,
            1e-12,
            "analytic one-sided jump condition across all interface states".to_string(),
        ),
        VerifyItem::check(
            "oracle.convergence_order",
            max_slope_err,
            0.3,
            format!("|slope - 4| over three halvings; {}", slopes.join(", ")),
        ),
    ])
}

fn observables_items(consts: &PhysicalConstants) -> Result<Vec<VerifyItem>> {
    let battery = residual_battery(consts)?;
    let window = (-3.0, 3.0);
    let mut max_diff = 0.0_f64;
    let mut max_conservation = 0.0_f64;
    for (_, state, _, _, t) in &battery {
        // Closed forms apply to single-branch regions only.
        let Ok(report) = expectation_closed_form(state, window, *t, consts) else {
            continue;
        };
        for (kind, expected) in [
            (ObservableKind::Energy, report.energy),
            (ObservableKind::Momentum, report.momentum),
            (ObservableKind::MomentumSq, report.momentum_sq),
            (ObservableKind::Potential, report.potential),
        ] {
            let q = expectation_quadrature(state, kind, window, *t, consts)?;
            let scale = expected.abs().max(1.0);
            max_diff = max_diff.max((q - expected).abs() / scale);
        }
        max_conservation = max_conservation.max(
            report.conservation_residual(consts).abs() / report.energy.abs().max(1.0),
        );
    }
    Ok(vec![
        VerifyItem::check(
            "observables.closed_form_vs_quadrature",
            max_diff,
            1e-8,
            "expectation tables against the symmetrized-integral quadrature".to_string(),
        ),
        VerifyItem::check(
            "observables.energy_conservation",
            max_conservation,
            1e-10,
            "<E> = <p^2>/2m + <V> for unit-normalized single branches".to_string(),
        ),
    ])
}

fn info_matching_printed_sign(config: &VerifyConfig, consts: &PhysicalConstants) -> VerifyItem {
    // The printed matching system carries the derivative term with the
    // opposite overall sign to the jump-derived system. Solving both:
    // T_derived = (conj(K) - K)/(s + 2 conj(K)) versus
    // T_printed = (conj(K) - K)/(2 conj(K) - s).
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x99);
    let mut max_diff = 0.0_f64;
    let mut max_mag_gap_physical = 0.0_f64;
    for _ in 0..200 {
        let k = random_complex(&mut rng, 3.0);
        if k.norm() < 0.1 {
            continue;
        }
        let q = random_complex(&mut rng, 3.0);
        let s = consts.two_m_over_hbar2() * q;
        let denom_d = s + 2.0 * k.conj();
        let denom_p = 2.0 * k.conj() - s;
        if denom_d.norm() < 1e-6 || denom_p.norm() < 1e-6 {
            continue;
        }
        let t_derived = (k.conj() - k) / denom_d;
        let t_printed = (k.conj() - k) / denom_p;
        max_diff = max_diff.max((t_derived - t_printed).norm());
        // In the physical regime (real strength, propagating K) the two
        // conventions give conjugate amplitudes, so |T| coincides.
        let kappa = Complex64::new(0.0, k.norm());
        let s_real = Complex64::new(consts.two_m_over_hbar2() * q.re, 0.0);
        let td = (kappa.conj() - kappa) / (s_real + 2.0 * kappa.conj());
        let tp = (kappa.conj() - kappa) / (2.0 * kappa.conj() - s_real);
        max_mag_gap_physical = max_mag_gap_physical.max((td.norm() - tp.norm()).abs());
    }
    VerifyItem::info(
        "info.matching_printed_sign",
        max_diff,
        format!(
            "printed matching system flips the sign of the derivative term \
             (max |T_printed - T_derived| = {max_diff:.3e}); for real strengths and propagating K \
             the two conventions give conjugate amplitudes with |T| identical \
             (max magnitude gap {max_mag_gap_physical:.3e}); the solver derives from the jump \
             condition, whose flux agrees with the printed flux identity"
        ),
    )
}

fn info_confined_energy_printed(consts: &PhysicalConstants) -> VerifyItem {
    let mut max_diff = 0.0_f64;
    let mut example = String::new();
    for (re_q, v0, w0) in [(-2.0, 0.0, 3.0), (-1.0, 0.5, 1.0), (-0.5, -0.3, 0.7)] {
        let q = Quaternion::from_real(re_q);
        let u = Quaternion::from_symplectic(Complex64::new(v0, 0.0), Complex64::new(w0, 0.0));
        let c = confined_energy_left(q, u, consts).unwrap();
        let diff = (c.printed_e1_squared - c.e1_squared).abs();
        if diff > max_diff {
            max_diff = diff;
            example = format!(
                "ReQ={re_q}, V0={v0}, |U1|={w0}: derived E1^2 = {}, printed = {}",
                c.e1_squared, c.printed_e1_squared
            );
        }
    }
    VerifyItem::info(
        "info.confined_energy_printed_form",
        max_diff,
        format!(
            "printed confined-energy composite uses Re[Q] unsquared and disagrees with the \
             value derived from the matching plus dispersion ({example})"
        ),
    )
}

fn info_right_printed_k(consts: &PhysicalConstants) -> VerifyItem {
    let mut max_best = 0.0_f64;
    let mut unevaluable = 0;
    let samples = [
        (Complex64::new(1.3, 0.7), Quaternion::from_components(0.5, 0.4, 0.9, 0.0)),
        (Complex64::new(0.2, -1.1), Quaternion::from_components(-0.3, 0.8, 0.2, 0.6)),
        (Complex64::new(-0.6, 2.0), Quaternion::from_components(0.0, 1.2, 0.4, -0.5)),
    ];
    for (e, u) in samples {
        let b = solve_autonomous_right(e, u, consts, Sign::Plus);
        let derived = (b.k.re * b.k.re, b.k.im * b.k.im);
        let mut best = f64::INFINITY;
        for outer in [Sign::Plus, Sign::Minus] {
            for inner in [Sign::Plus, Sign::Minus] {
                if let Some((k0_sq, k1_sq)) = printed_k_squares_right(e, u, consts, outer, inner) {
                    best = best.min((k0_sq - derived.0).abs() + (k1_sq - derived.1).abs());
                }
            }
        }
        if best.is_infinite() {
            unevaluable += 1;
        } else {
            max_best = max_best.max(best);
        }
    }
    VerifyItem::info(
        "info.right_printed_k_forms",
        max_best,
        format!(
            "printed K component forms for the right equation carry the temporal parameter \
             unsquared under the radical; best-sign discrepancy against eigenvalue-derived \
             components reaches {max_best:.3e} ({unevaluable} samples not evaluable with a real radical)"
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let config = VerifyConfig {
            draws: 500,
            ..VerifyConfig::default()
        };
        let report = run(&config);
        for item in &report.items {
            assert!(
                item.passed,
                "{} failed: value {} threshold {:?} ({})",
                item.name, item.value, item.threshold, item.detail
            );
        }
        assert!(report.all_passed());
    }

    #[test]
    fn informational_items_are_present_and_nonzero() {
        let config = VerifyConfig {
            draws: 200,
            ..VerifyConfig::default()
        };
        let report = run(&config);
        for name in [
            "info.matching_printed_sign",
            "info.confined_energy_printed_form",
            "info.right_printed_k_forms",
        ] {
            let item = report
                .items
                .iter()
                .find(|i| i.name == name)
                .unwrap_or_else(|| panic!("missing {name}"));
            assert_eq!(item.kind, ItemKind::Info);
            assert!(item.passed, "informational items never fail");
            assert!(item.value > 1e-6, "{name} should report a real discrepancy");
        }
    }

    #[test]
    fn fault_injection_fails_the_matching_identity() {
        for (fault, name) in [
            (Fault::Dispersion, "complex.dispersion_residuals"),
            (Fault::Flux, "complex.flux_formula_vs_direct"),
            (Fault::Eigen, "left.closed_form_vs_eigenvalues"),
        ] {
            let config = VerifyConfig {
                draws: 200,
                fault: Some(fault),
                ..VerifyConfig::default()
            };
            let report = run(&config);
            let item = report.items.iter().find(|i| i.name == name).unwrap();
            assert!(!item.passed, "{name} should fail under {fault:?}");
            assert!(!report.all_passed());
        }
    }

    #[test]
    fn report_is_deterministic() {
        let config = VerifyConfig {
            draws: 300,
            ..VerifyConfig::default()
        };
        let a = run(&config);
        let b = run(&config);
        assert_eq!(a, b);
    }
}
