//! Brute-force verification layer: 2x2 eigen-solving from the
//! characteristic polynomial, direct matching-system elimination,
//! fourth-order finite-difference wave-equation residuals, and one-sided
//! jump-condition checks. Everything here stays independent of the
//! closed forms it arbitrates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{zero_tol, PhysicalConstants, Quaternion};
use crate::error::{Error, Result};
use crate::state::{EquationForm, PotentialSpec, RegionWave, WaveState};

/// One eigenvalue with a unit-norm eigenvector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub value: Complex64,
    pub vector: [Complex64; 2],
}

/// Both eigenpairs of a 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eig2 {
    pub pairs: [EigenPair; 2],
    /// Set when the eigenvalues coincide within tolerance; a defective
    /// matrix then reports a single independent direction twice.
    pub degenerate: bool,
}

impl Eig2 {
    /// Max residual `|M v - lambda v|` over both pairs, scaled by the
    /// matrix magnitude.
    pub fn residual(&self, m: &[[Complex64; 2]; 2]) -> f64 {
        let scale = m
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max)
            .max(1.0);
        self.pairs
            .iter()
            .map(|p| {
                let r0 = m[0][0] * p.vector[0] + m[0][1] * p.vector[1] - p.value * p.vector[0];
                let r1 = m[1][0] * p.vector[0] + m[1][1] * p.vector[1] - p.value * p.vector[1];
                (r0.norm_sqr() + r1.norm_sqr()).sqrt() / scale
            })
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues and eigenvectors of a 2x2 complex matrix via the
/// numerically stable quadratic formula: the root pairing avoids
/// cancellation by taking the larger root first and recovering the other
/// from the determinant.
pub fn eig2(m: &[[Complex64; 2]; 2]) -> Eig2 {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = tr * tr - 4.0 * det;
    let mut s = disc.sqrt();
    // Align s with tr so tr + s never cancels.
    if (tr.conj() * s).re < 0.0 {
        s = -s;
    }
    let l1 = 0.5 * (tr + s);
    let l2 = if l1.norm() > 0.0 { det / l1 } else { 0.5 * (tr - s) };
    let scale = m
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max);
    let degenerate = (l1 - l2).norm() <= zero_tol(scale);
    let vec_for = |lambda: Complex64| -> [Complex64; 2] {
        // Rows of (M - lambda I) are orthogonal to the eigenvector; pick
        // the better-conditioned candidate.
        let c1 = [m[0][1], lambda - m[0][0]];
        let c2 = [lambda - m[1][1], m[1][0]];
        let n1 = (c1[0].norm_sqr() + c1[1].norm_sqr()).sqrt();
        let n2 = (c2[0].norm_sqr() + c2[1].norm_sqr()).sqrt();
        let (v, n) = if n1 >= n2 { (c1, n1) } else { (c2, n2) };
        if n <= zero_tol(scale) {
            // M is (numerically) lambda I: every direction works.
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
        } else {
            [v[0] / n, v[1] / n]
        }
    };
    Eig2 {
        pairs: [
            EigenPair {
                value: l1,
                vector: vec_for(l1),
            },
            EigenPair {
                value: l2,
                vector: vec_for(l2),
            },
        ],
        degenerate,
    }
}

/// Independent elimination of the delta matching system
/// (continuity plus the derivative jump), assembled as a literal 2x2
/// linear solve rather than the closed-form quotient.
pub fn solve_matching_direct(
    k: Complex64,
    strength: Complex64,
    consts: &PhysicalConstants,
) -> Result<(Complex64, Complex64)> {
    let h22m = consts.hbar2_over_two_m();
    let kc = k.conj();
    // Unknowns (R, T):
    //   R - T = -1
    //   a R + b T = c  from  (hbar^2/2m)(-kc T - k - kc R) = q T
    let a = -h22m * kc;
    let b = -h22m * kc - strength;
    let c = h22m * k;
    let det = b + a;
    if det.norm() <= zero_tol(a.norm().max(b.norm()).max(1.0)) {
        return Err(Error::SingularMatching);
    }
    let r = (c - b) / det;
    let t = (c + a) / det;
    Ok((r, t))
}

/// Spatial grid for the finite-difference residual: points of
/// `[x_min, x_max]` at spacing `h`, excluding a collar of half-width
/// `collar` around the origin where the delta acts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PdeGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub spacing: f64,
    pub collar: f64,
}

impl PdeGrid {
    /// Collar defaults to ten spacings.
    pub fn new(x_min: f64, x_max: f64, spacing: f64) -> Self {
        Self {
            x_min,
            x_max,
            spacing,
            collar: 10.0 * spacing,
        }
    }

    pub fn with_collar(mut self, collar: f64) -> Self {
        self.collar = collar;
        self
    }
}

/// Residual norms of a finite-difference check of the wave equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub pde_residual_max: f64,
    pub pde_residual_l2: f64,
    pub jump_residual: f64,
    pub grid_spacing: f64,
    pub stencil_order: u32,
}

/// Hamiltonian action `-(hbar^2/2m) Psi'' + U Psi` with the second
/// derivative from the fourth-order central stencil.
fn residual_at(
    region: &RegionWave,
    form: EquationForm,
    background: Quaternion,
    x: f64,
    t: f64,
    h: f64,
    consts: &PhysicalConstants,
) -> Quaternion {
    let value = |x: f64| region.value(x, t, consts);
    let psi = value(x);
    let psi_pp = (-value(x - 2.0 * h) + value(x - h).scale(16.0) - psi.scale(30.0)
        + value(x + h).scale(16.0)
        - value(x + 2.0 * h))
    .scale(1.0 / (12.0 * h * h));
    let dpsi_dt = region
        .terms
        .iter()
        .fold(Quaternion::ZERO, |acc, term| acc + term.dt(consts).value(x, t, consts));
    let lhs = match form {
        EquationForm::Complex | EquationForm::Left => {
            Quaternion::I * dpsi_dt.scale(consts.hbar)
        }
        EquationForm::Right => dpsi_dt.scale(consts.hbar) * Quaternion::I,
    };
    let rhs = psi_pp.scale(-consts.hbar2_over_two_m()) + background * psi;
    lhs - rhs
}

/// Finite-difference residual of the wave equation over the grid, away
/// from the origin collar, with time derivatives taken analytically from
/// the exponential ansatz. The jump residual is evaluated alongside when
/// the state carries an interface at the origin.
pub fn pde_residual(
    state: &WaveState,
    potential: &PotentialSpec,
    grid: &PdeGrid,
    t: f64,
    consts: &PhysicalConstants,
) -> Result<ResidualReport> {
    let h = grid.spacing;
    if !(h > 0.0) {
        return Err(Error::GridTooCoarse {
            collar: grid.collar,
            spacing: h,
        });
    }
    if grid.collar <= 2.0 * h {
        return Err(Error::GridTooCoarse {
            collar: grid.collar,
            spacing: h,
        });
    }
    let mut max = 0.0_f64;
    let mut sum_sq = 0.0_f64;
    for region in &state.regions {
        let Some((lo, hi)) = region.clip(grid.x_min, grid.x_max) else {
            continue;
        };
        // Exclude the collar around the origin; the analytic branch
        // extends smoothly past the window edges, so only the origin is a
        // hard boundary for the stencil.
        let segments = [
            (lo, hi.min(-grid.collar)),
            (lo.max(grid.collar), hi),
        ];
        for (a, b) in segments {
            if !(a < b) || !a.is_finite() || !b.is_finite() {
                continue;
            }
            let steps = ((b - a) / h).floor() as usize;
            for i in 0..=steps {
                let x = a + i as f64 * h;
                if x > b {
                    break;
                }
                let r = residual_at(region, state.form, state.background, x, t, h, consts).norm();
                max = max.max(r);
                sum_sq += r * r;
            }
        }
    }
    let jump = match jump_residual(state, potential.strength, consts, t) {
        Ok(j) => j,
        Err(Error::DiscontinuousAtZero { gap }) => gap,
        Err(e) => return Err(e),
    };
    Ok(ResidualReport {
        pde_residual_max: max,
        pde_residual_l2: (h * sum_sq).sqrt(),
        jump_residual: jump,
        grid_spacing: h,
        stencil_order: 4,
    })
}

/// Jump-condition residual
/// `|(hbar^2/2m)[Psi'_+(0) - Psi'_-(0)] - Q Psi(0)|` from analytic
/// one-sided derivatives. Requires the state to be continuous at the
/// origin.
pub fn jump_residual(
    state: &WaveState,
    strength: Quaternion,
    consts: &PhysicalConstants,
    t: f64,
) -> Result<f64> {
    let Some((left, right)) = state.interface_regions() else {
        return Err(Error::DiscontinuousAtZero { gap: f64::NAN });
    };
    let psi_l = left.value(0.0, t, consts);
    let psi_r = right.value(0.0, t, consts);
    let scale = psi_l.norm().max(psi_r.norm());
    let gap = (psi_l - psi_r).norm();
    if gap > zero_tol(scale) {
        return Err(Error::DiscontinuousAtZero { gap });
    }
    let deriv = |region: &RegionWave| {
        region
            .terms
            .iter()
            .fold(Quaternion::ZERO, |acc, term| acc + term.dx().value(0.0, t, consts))
    };
    let jump = (deriv(right) - deriv(left)).scale(consts.hbar2_over_two_m());
    Ok((jump - strength * psi_l).norm())
}

/// Least-squares slope of `log2(residual)` against `log2(h)` over
/// `halvings + 1` grids sharing one collar; fourth-order stencils on
/// exact solutions give slopes near four.
pub fn convergence_slope(
    state: &WaveState,
    potential: &PotentialSpec,
    base_grid: &PdeGrid,
    t: f64,
    consts: &PhysicalConstants,
    halvings: u32,
) -> Result<(f64, Vec<(f64, f64)>)> {
    let mut samples = Vec::new();
    for j in 0..=halvings {
        let h = base_grid.spacing / f64::powi(2.0, j as i32);
        let grid = PdeGrid {
            spacing: h,
            ..*base_grid
        };
        let report = pde_residual(state, potential, &grid, t, consts)?;
        samples.push((h, report.pde_residual_max));
    }
    let n = samples.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (h, r) in &samples {
        let x = h.log2();
        let y = r.log2();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Ok((slope, samples))
}
