//! `solve`: one configuration in, one record out, with residual
//! diagnostics attached to every result.

use std::process::ExitCode;

use num_complex::Complex64;
use serde_json::{json, Value};

use rhqm::algebra::Quaternion;
use rhqm::complex_delta::{
    classify_stationarity, dispersion_residuals, energy_from_dispersion, flux_formula,
    solve_autonomous, solve_bound_state, solve_scattering, ComplexPotential,
};
use rhqm::observables::expectation_closed_form;
use rhqm::oracle::{jump_residual, solve_matching_direct};
use rhqm::quat_left::{
    classify_stationarity_left, confined_energy_left, solve_autonomous_left_normalized,
    solve_delta_left, solve_scattering_left, stationary_energy_left,
};
use rhqm::quat_right::{
    pure_mode_obstruction, right_operator_apply, solve_autonomous_right, RightOperator,
};
use rhqm::state::{EquationForm, WaveState};

use crate::config::{CliError, CliResult, RunConfig};
use crate::output::{emit_record, SCHEMA_VERSION};

pub fn run(config: &RunConfig, bound: bool, scatter: bool) -> CliResult<ExitCode> {
    if bound && scatter {
        return Err(CliError::usage("--bound and --scatter are exclusive"));
    }
    let record = match config.form {
        EquationForm::Complex => solve_complex(config, bound, scatter)?,
        EquationForm::Left => solve_left(config, bound, scatter)?,
        EquationForm::Right => solve_right(config, bound, scatter)?,
    };
    emit_record(config, record)
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn quat_json(q: Quaternion) -> Value {
    let [a, b, c, d] = q.components();
    json!({ "a": a, "b": b, "c": c, "d": d })
}

fn base_record(config: &RunConfig, kind: &str) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": "solve",
        "kind": kind,
        "form": config.form.to_string(),
        "hbar": config.consts.hbar,
        "mass": config.consts.mass,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        for (k, v) in e {
            b.insert(k, v);
        }
    }
    base
}

fn solve_complex(config: &RunConfig, bound: bool, scatter: bool) -> CliResult<Value> {
    let consts = &config.consts;
    let v = config.v.unwrap_or(Complex64::new(0.0, 0.0));
    if bound {
        let q = config
            .q
            .ok_or_else(|| CliError::usage("--bound needs --q0 (delta strength)"))?;
        let pot = ComplexPotential::new(q, v);
        let bs = solve_bound_state(&pot, consts)?;
        let state = WaveState::bound_complex(&bs, &pot);
        let report = expectation_closed_form(&state, config.window, config.t, consts)?;
        let (r1, r2) = dispersion_residuals(bs.k, bs.e, v, consts);
        let jump = jump_residual(&state, Quaternion::from_complex(q), consts, config.t)?;
        return Ok(merge(
            base_record(config, "bound_state"),
            json!({
                "inputs": { "q": complex_json(q), "V": complex_json(v) },
                "result": {
                    "K": complex_json(bs.k),
                    "E": complex_json(bs.e),
                    "amplitude": bs.amplitude,
                    "norm_over_window": report.norm_rho,
                    "energy_expectation": report.energy,
                    "momentum_sq_expectation": report.momentum_sq,
                    "window": [config.window.0, config.window.1],
                },
                "diagnostics": {
                    "dispersion_r1": r1,
                    "dispersion_r2": r2,
                    "jump_residual": jump,
                    "conservation_residual": report.conservation_residual(consts),
                },
            }),
        ));
    }
    if scatter {
        let k = config
            .k
            .ok_or_else(|| CliError::usage("--scatter needs --K k0,k1"))?;
        let q = config
            .q
            .ok_or_else(|| CliError::usage("--scatter needs --q0/--q1"))?;
        let pot = ComplexPotential::new(q, v);
        let sol = solve_scattering(k, &pot, consts)?;
        let state = WaveState::scattering_complex(k, &pot, &sol, consts);
        let jump = jump_residual(&state, Quaternion::from_complex(q), consts, 0.0)?;
        let formula = flux_formula(k, q, consts).map(|f| json!(f)).unwrap_or(Value::Null);
        let (r_direct, t_direct) = solve_matching_direct(k, q, consts)?;
        let cross = (sol.r - r_direct).norm().max((sol.t - t_direct).norm());
        return Ok(merge(
            base_record(config, "scattering"),
            json!({
                "inputs": { "K": complex_json(k), "q": complex_json(q), "V": complex_json(v) },
                "result": {
                    "R": complex_json(sol.r),
                    "T": complex_json(sol.t),
                    "flux_balance": sol.flux_balance,
                    "cal_e0": sol.cal_e0,
                    "E": complex_json(energy_from_dispersion(k, v, consts)),
                },
                "diagnostics": {
                    "flux_formula": formula,
                    "matching_direct_gap": cross,
                    "jump_residual": jump,
                },
            }),
        ));
    }
    let e = config
        .e
        .ok_or_else(|| CliError::usage("autonomous solve needs --E e0,e1"))?;
    let branch = solve_autonomous(e, v, consts, config.eig);
    let (r1, r2) = branch.dispersion_residuals(consts);
    Ok(merge(
        base_record(config, "autonomous_branch"),
        json!({
            "inputs": { "E": complex_json(e), "V": complex_json(v) },
            "result": {
                "K": complex_json(branch.k),
                "class": classify_stationarity(e, v).to_string(),
            },
            "diagnostics": { "dispersion_r1": r1, "dispersion_r2": r2 },
        }),
    ))
}

fn solve_left(config: &RunConfig, bound: bool, scatter: bool) -> CliResult<Value> {
    let consts = &config.consts;
    let u = config.u.unwrap_or(Quaternion::ZERO);
    if bound {
        let q = config
            .big_q
            .or(config.q.map(Quaternion::from_complex))
            .ok_or_else(|| CliError::usage("--bound needs --Q a,b,c,d"))?;
        let confined = confined_energy_left(q, u, consts)?;
        let state = WaveState::confined_left(q, u, consts)?;
        let jump = jump_residual(&state, q, consts, config.t)?;
        return Ok(merge(
            base_record(config, "confined_state"),
            json!({
                "inputs": { "Q": quat_json(q), "U": quat_json(u) },
                "result": {
                    "K0": confined.k0,
                    "E1": confined.e1,
                    "E1_squared": confined.e1_squared,
                },
                "diagnostics": {
                    "printed_e1_squared": confined.printed_e1_squared,
                    "jump_residual": jump,
                },
            }),
        ));
    }
    if scatter {
        let k = config
            .k
            .ok_or_else(|| CliError::usage("--scatter needs --K k0,k1"))?;
        let q = config
            .big_q
            .or(config.q.map(Quaternion::from_complex))
            .ok_or_else(|| CliError::usage("--scatter needs --Q a,b,c,d"))?;
        let sol = solve_scattering_left(k, q, u, consts, config.eig)?;
        let q_eff = Complex64::new(q.re(), config.eig.factor() * q.im_norm());
        return Ok(merge(
            base_record(config, "scattering"),
            json!({
                "inputs": { "K": complex_json(k), "Q": quat_json(q), "U": quat_json(u) },
                "result": {
                    "R": complex_json(sol.r),
                    "T": complex_json(sol.t),
                    "flux_balance": sol.flux_balance,
                    "cal_e0": sol.cal_e0,
                    "effective_q": complex_json(q_eff),
                    "E": complex_json(stationary_energy_left(k, u, consts)),
                },
                "diagnostics": {
                    "flux_formula": flux_formula(k, q_eff, consts).map(|f| json!(f)).unwrap_or(Value::Null),
                },
            }),
        ));
    }
    if let Some(e) = config.e {
        let branch = solve_autonomous_left_normalized(e, u, consts, config.eig)?;
        return Ok(merge(
            base_record(config, "autonomous_branch"),
            json!({
                "inputs": { "E": complex_json(e), "U": quat_json(u) },
                "result": {
                    "K": complex_json(branch.k),
                    "A0": complex_json(branch.a0),
                    "A1": complex_json(branch.a1),
                    "alpha": branch.alpha,
                    "beta": branch.beta,
                    "class": classify_stationarity_left(e, u).to_string(),
                },
                "diagnostics": { "eig_residual": branch.eig_residual(consts) },
            }),
        ));
    }
    let q = config
        .big_q
        .or(config.q.map(Quaternion::from_complex))
        .ok_or_else(|| CliError::usage("left solve needs --E (autonomous) or --Q (delta matching)"))?;
    let sol = solve_delta_left(q, consts, config.eig)?;
    let sandwich = sol.sandwich(q);
    Ok(merge(
        base_record(config, "delta_matching"),
        json!({
            "inputs": { "Q": quat_json(q) },
            "result": {
                "K": complex_json(sol.k),
                "A0": complex_json(sol.a0),
                "A1": complex_json(sol.a1),
                "sandwich": quat_json(sandwich),
            },
            "diagnostics": {
                "eig_residual": sol.eig_residual(q, consts),
                "sandwich_jk_norm": sandwich.z1.norm(),
            },
        }),
    ))
}

fn solve_right(config: &RunConfig, bound: bool, scatter: bool) -> CliResult<Value> {
    if bound || scatter {
        return Err(CliError::usage(
            "the right equation admits no confined or stationary scattering states; \
             only the autonomous solver is exposed",
        ));
    }
    let consts = &config.consts;
    let u = config.u.unwrap_or(Quaternion::ZERO);
    let e = config
        .e
        .ok_or_else(|| CliError::usage("right solve needs --E e0,e1"))?;
    let branch = solve_autonomous_right(e, u, consts, config.eig);
    let energy_coeff = right_operator_apply(RightOperator::Energy, &branch, consts);
    let momentum_coeff = right_operator_apply(RightOperator::Momentum, &branch, consts);
    Ok(merge(
        base_record(config, "autonomous_branch"),
        json!({
            "inputs": { "E": complex_json(e), "U": quat_json(u) },
            "result": {
                "K": complex_json(branch.k),
                "A0": complex_json(branch.a0),
                "A1": complex_json(branch.a1),
                "pure_modes_obstructed": pure_mode_obstruction(e, u),
                "energy_coefficient": complex_json(energy_coeff),
                "momentum_coefficient": complex_json(momentum_coeff),
            },
            "diagnostics": { "eig_residual": branch.eig_residual(consts) },
        }),
    ))
}
