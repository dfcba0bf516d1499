//! `scan`: Cartesian-product sweeps over named parameters, one row per
//! grid point with the dispersion output, stationarity class, flux where
//! applicable, and the oracle residual. Row order is lexicographic over
//! the scan indices.

use std::process::ExitCode;

use num_complex::Complex64;

use rhqm::algebra::Quaternion;
use rhqm::complex_delta::{classify_stationarity, solve_autonomous, StationarityClass};
use rhqm::oracle::eig2;
use rhqm::quat_left::{alpha_beta, classify_stationarity_left, closed_form_k_left, coupling_matrix};
use rhqm::quat_right::{coupling_matrix_right, solve_autonomous_right};
use rhqm::state::EquationForm;

use crate::config::{CliError, CliResult, RunConfig};
use crate::output::{emit_table, fmt_f64, fmt_opt, Table};

const SCAN_PARAMS: &[&str] = &["e0", "e1", "v0", "v1", "w0", "w1", "q0", "q1", "k1"];

#[derive(Debug, Clone)]
struct ScanRange {
    name: String,
    start: f64,
    stop: f64,
    count: usize,
}

impl ScanRange {
    fn value(&self, index: usize) -> f64 {
        if self.count == 1 {
            self.start
        } else {
            self.start + (self.stop - self.start) * index as f64 / (self.count - 1) as f64
        }
    }
}

fn parse_range(spec: &str) -> CliResult<ScanRange> {
    let (name, rest) = spec
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("invalid scan '{spec}': expected name=start:stop:count")))?;
    let name = name.trim().to_string();
    if !SCAN_PARAMS.contains(&name.as_str()) {
        return Err(CliError::usage(format!(
            "unknown scan parameter '{name}' (expected one of {})",
            SCAN_PARAMS.join(", ")
        )));
    }
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!(
            "invalid scan '{spec}': expected name=start:stop:count"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::usage(format!("invalid start in '{spec}'")))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::usage(format!("invalid stop in '{spec}'")))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| CliError::usage(format!("invalid count in '{spec}'")))?;
    if count < 1 {
        return Err(CliError::usage(format!("scan '{spec}': count must be >= 1")));
    }
    if start > stop {
        return Err(CliError::usage(format!("scan '{spec}': start > stop")));
    }
    Ok(ScanRange {
        name,
        start,
        stop,
        count,
    })
}

/// Point in parameter space assembled from the base config plus the
/// scanned overrides.
struct Point {
    e: Complex64,
    background: Quaternion,
    strength: Quaternion,
    k1_override: Option<f64>,
}

fn assemble(config: &RunConfig, names: &[&str], values: &[f64]) -> Point {
    let mut e = config.e.unwrap_or(Complex64::new(0.0, 0.0));
    let mut background = config.background();
    let mut strength = config.strength();
    let mut k1_override = None;
    for (name, value) in names.iter().zip(values) {
        match *name {
            "e0" => e.re = *value,
            "e1" => e.im = *value,
            "v0" => background.z0.re = *value,
            "v1" => background.z0.im = *value,
            "w0" => background.z1.re = *value,
            "w1" => background.z1.im = *value,
            "q0" => strength.z0.re = *value,
            "q1" => strength.z0.im = *value,
            "k1" => k1_override = Some(*value),
            _ => unreachable!("validated above"),
        }
    }
    Point {
        e,
        background,
        strength,
        k1_override,
    }
}

pub fn run(config: &RunConfig, range_specs: &[String]) -> CliResult<ExitCode> {
    if range_specs.is_empty() {
        return Err(CliError::usage("scan needs at least one --scan name=start:stop:count"));
    }
    let ranges: Vec<ScanRange> = range_specs
        .iter()
        .map(|s| parse_range(s))
        .collect::<CliResult<_>>()?;
    let names: Vec<&str> = ranges.iter().map(|r| r.name.as_str()).collect();

    let mut columns: Vec<String> = names.iter().map(|n| n.to_string()).collect();
    columns.extend(
        ["K0", "K1", "class", "flux", "residual"]
            .iter()
            .map(|s| s.to_string()),
    );
    let mut table = Table {
        columns,
        rows: Vec::new(),
    };

    // Lexicographic Cartesian product over the scan indices.
    let counts: Vec<usize> = ranges.iter().map(|r| r.count).collect();
    let total: usize = counts.iter().product();
    let mut values = vec![0.0; ranges.len()];
    for flat in 0..total {
        let mut rem = flat;
        for (axis, range) in ranges.iter().enumerate().rev() {
            values[axis] = range.value(rem % range.count);
            rem /= range.count;
        }
        let point = assemble(config, &names, &values);
        let row = evaluate_point(config, &point)?;
        let mut cells: Vec<String> = values.iter().map(|v| fmt_f64(*v)).collect();
        cells.extend(row);
        table.rows.push(cells);
    }
    emit_table(config, "scan", &table)
}

/// K, class, optional flux, and the per-point residual for one grid point.
fn evaluate_point(config: &RunConfig, point: &Point) -> CliResult<Vec<String>> {
    let consts = &config.consts;
    // A scanned k1 fixes the propagating branch directly; the energy then
    // follows from the dispersion, so its residual is trivially zero.
    if let Some(k1) = point.k1_override {
        let k = Complex64::new(0.0, k1);
        return Ok(finish_row(config, point, k, class_of_k(k), 0.0));
    }
    let (k, class, residual) = match config.form {
        EquationForm::Complex => {
            let v = point.background.complex_part();
            let branch = solve_autonomous(point.e, v, consts, config.eig);
            let (r1, r2) = branch.dispersion_residuals(consts);
            (
                branch.k,
                classify_stationarity(point.e, v),
                r1.max(r2),
            )
        }
        EquationForm::Left => {
            let (k, _, _) = closed_form_k_left(point.e, point.background, consts, config.eig);
            let (alpha, beta) = alpha_beta(point.e, point.background);
            let residual = if alpha.hypot(beta) < 1e-12 {
                0.0
            } else {
                let eig = eig2(&coupling_matrix(point.e, point.background));
                let lambda = consts.hbar2_over_two_m() * k * k;
                eig.pairs
                    .iter()
                    .map(|p| (p.value - lambda).norm())
                    .fold(f64::INFINITY, f64::min)
                    / lambda.norm().max(1.0)
            };
            (
                k,
                classify_stationarity_left(point.e, point.background),
                residual,
            )
        }
        EquationForm::Right => {
            let branch = solve_autonomous_right(point.e, point.background, consts, config.eig);
            let eig = eig2(&coupling_matrix_right(point.e, point.background));
            let lambda = branch.eigenvalue(consts);
            let residual = eig
                .pairs
                .iter()
                .map(|p| (p.value - lambda).norm())
                .fold(f64::INFINITY, f64::min)
                / lambda.norm().max(1.0);
            (branch.k, class_of_k(branch.k), residual)
        }
    };
    Ok(finish_row(config, point, k, class, residual))
}

fn finish_row(
    config: &RunConfig,
    point: &Point,
    k: Complex64,
    class: StationarityClass,
    residual: f64,
) -> Vec<String> {
    // Flux balance applies to propagating branches with a delta strength.
    let flux = if !point.strength.is_zero() && k.re.abs() < 1e-12 && k.im.abs() > 1e-12 {
        let q_eff = match config.form {
            EquationForm::Complex => point.strength.complex_part(),
            _ => Complex64::new(
                point.strength.re(),
                config.eig.factor() * point.strength.im_norm(),
            ),
        };
        rhqm::complex_delta::flux_formula(k, q_eff, &config.consts).ok()
    } else {
        None
    };
    vec![
        fmt_f64(k.re),
        fmt_f64(k.im),
        class.to_string(),
        fmt_opt(flux),
        fmt_f64(residual),
    ]
}

/// Post-hoc classification from the solved components.
fn class_of_k(k: Complex64) -> StationarityClass {
    let scale = k.norm();
    let zero0 = rhqm::algebra::is_zero(k.re, scale);
    let zero1 = rhqm::algebra::is_zero(k.im, scale);
    match (zero0, zero1) {
        (true, true) => StationarityClass::Degenerate,
        (true, false) => StationarityClass::PureStationary,
        (false, true) => StationarityClass::PureNonOscillatory,
        (false, false) => StationarityClass::Mixed,
    }
}
