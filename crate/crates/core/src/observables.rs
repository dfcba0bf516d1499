//! Real-Hilbert-space expectation values:
//! `<O> = (1/2) Int [Psi^dag O Psi + (O Psi)^dag Psi] dx`,
//! the closed-form tables for single plane-wave branches, and the
//! quadrature route that checks them.
//!
//! The symmetrized integrand is the scalar part of `conj(Psi) (O Psi)`,
//! real by construction for complex and quaternionic states alike.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{PhysicalConstants, Quaternion};
use crate::error::{Error, Result};
use crate::state::{EquationForm, PlaneTerm, RegionWave, WaveState};

pub mod quad;

/// Operator selected for a quadrature expectation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObservableKind {
    Energy,
    Momentum,
    MomentumSq,
    Potential,
}

/// Amplitude-dependent prefactors of the two densities: `rho` modulates
/// the energy and momentum rows, `varrho` the kinetic and potential rows.
///
/// Complex branch: both `|A|^2`. Left branch: `|A0|^2 - |A1|^2` and
/// `(|A0|^2 + |A1|^2)^2`. Right branch: both `|A|^2`. The `rho`
/// coefficient may be negative in the left case; `varrho` never is.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityPair {
    pub rho_coeff: f64,
    pub varrho_coeff: f64,
}

impl DensityPair {
    pub fn for_branch(form: EquationForm, amp: Quaternion) -> Self {
        let (a0, a1) = amp.symplectic();
        let n0 = a0.norm_sqr();
        let n1 = a1.norm_sqr();
        match form {
            EquationForm::Complex | EquationForm::Right => DensityPair {
                rho_coeff: n0 + n1,
                varrho_coeff: n0 + n1,
            },
            EquationForm::Left => DensityPair {
                rho_coeff: n0 - n1,
                varrho_coeff: (n0 + n1) * (n0 + n1),
            },
        }
    }
}

/// Expectation values over a finite (or decaying-infinite) window, with
/// the window echoed so non-normalizable states stay testable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectationReport {
    pub energy: f64,
    pub momentum: f64,
    pub momentum_sq: f64,
    pub potential: f64,
    pub norm_rho: f64,
    pub norm_varrho: f64,
    pub window: (f64, f64),
    pub t: f64,
}

impl ExpectationReport {
    /// `<E> - <p^2>/2m - <V>`; vanishes for every single-branch solution
    /// with the canonical unit amplitude normalization.
    pub fn conservation_residual(&self, consts: &PhysicalConstants) -> f64 {
        self.energy - self.momentum_sq / (2.0 * consts.mass) - self.potential
    }
}

/// `Int exp(2 K0 x) dx` over `[lo, hi]`, allowing an infinite endpoint
/// only where the exponential decays toward it.
fn envelope_integral(k0: f64, lo: f64, hi: f64) -> Result<f64> {
    if lo > hi || lo.is_nan() || hi.is_nan() {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let a = 2.0 * k0;
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            if a == 0.0 {
                Ok(hi - lo)
            } else {
                // exp(a lo) (exp(a (hi-lo)) - 1) / a, stable for small spans.
                Ok((a * lo).exp() * (a * (hi - lo)).exp_m1() / a)
            }
        }
        (true, false) => {
            if a < 0.0 {
                Ok(-(a * lo).exp() / a)
            } else {
                Err(Error::DivergentNorm)
            }
        }
        (false, true) => {
            if a > 0.0 {
                Ok((a * hi).exp() / a)
            } else {
                Err(Error::DivergentNorm)
            }
        }
        (false, false) => Err(Error::DivergentNorm),
    }
}

/// Evaluate the closed-form expectation table for a state whose regions
/// each carry a single exponential branch.
///
/// Each region contributes `E1 * n_rho`, `hbar K1 * n_rho`,
/// `hbar^2 (K1^2 - K0^2) * n_varrho` and `V0 * n_varrho`, with
/// `n = coeff * Int |psi|^2` over the window overlap.
pub fn expectation_closed_form(
    state: &WaveState,
    window: (f64, f64),
    t: f64,
    consts: &PhysicalConstants,
) -> Result<ExpectationReport> {
    let (lo, hi) = window;
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let v0 = state.background.z0.re;
    let mut report = ExpectationReport {
        energy: 0.0,
        momentum: 0.0,
        momentum_sq: 0.0,
        potential: 0.0,
        norm_rho: 0.0,
        norm_varrho: 0.0,
        window,
        t,
    };
    for region in &state.regions {
        let Some((a, b)) = region.clip(lo, hi) else {
            continue;
        };
        if region.terms.len() != 1 {
            return Err(Error::NotSingleBranch);
        }
        let term = &region.terms[0];
        let pair = DensityPair::for_branch(state.form, term.amp);
        let time_factor = (-2.0 * term.e.re * t / consts.hbar).exp();
        let envelope = envelope_integral(term.k.re, a, b)? * time_factor;
        let n_rho = pair.rho_coeff * envelope;
        let n_varrho = pair.varrho_coeff * envelope;
        report.energy += term.e.im * n_rho;
        report.momentum += consts.hbar * term.k.im * n_rho;
        report.momentum_sq +=
            consts.hbar * consts.hbar * (term.k.im * term.k.im - term.k.re * term.k.re) * n_varrho;
        report.potential += v0 * n_varrho;
        report.norm_rho += n_rho;
        report.norm_varrho += n_varrho;
    }
    Ok(report)
}

/// Apply an operator analytically to one term, returning the term of the
/// result (same exponential, transformed amplitude).
///
/// Left-form operators multiply by `i` from the left of the amplitude;
/// right-form operators multiply by `i` from the right of the whole
/// value, which commutes past the complex exponential onto the amplitude.
/// The squared momentum is two successive first-derivative applications.
fn apply_operator(
    term: &PlaneTerm,
    kind: ObservableKind,
    form: EquationForm,
    background: Quaternion,
    consts: &PhysicalConstants,
) -> PlaneTerm {
    let i = Quaternion::I;
    let apply_once = |term: &PlaneTerm, kind: ObservableKind| -> PlaneTerm {
        let mut out = *term;
        match (kind, form) {
            (ObservableKind::Energy, EquationForm::Complex | EquationForm::Left) => {
                // i hbar d/dt -> i * A * (-E)
                out.amp = i * term.amp * Quaternion::from_complex(-term.e);
            }
            (ObservableKind::Energy, EquationForm::Right) => {
                // hbar (d/dt) i -> A * (-E) * i
                out.amp = term.amp * Quaternion::from_complex(-term.e) * i;
            }
            (ObservableKind::Momentum, EquationForm::Complex | EquationForm::Left) => {
                // -i hbar d/dx -> (-i hbar) * A * K
                out.amp = Quaternion::from_complex(Complex64::new(0.0, -consts.hbar))
                    * term.amp
                    * Quaternion::from_complex(term.k);
            }
            (ObservableKind::Momentum, EquationForm::Right) => {
                // -hbar (d/dx) i -> A * (-hbar K) * i
                out.amp = term.amp
                    * Quaternion::from_complex(-consts.hbar * term.k)
                    * i;
            }
            (ObservableKind::Potential, _) => {
                out.amp = background * term.amp;
            }
            (ObservableKind::MomentumSq, _) => unreachable!("handled below"),
        }
        out
    };
    match kind {
        ObservableKind::MomentumSq => {
            let once = apply_once(term, ObservableKind::Momentum);
            apply_once(&once, ObservableKind::Momentum)
        }
        _ => apply_once(term, kind),
    }
}

fn region_operator_terms(
    region: &RegionWave,
    kind: ObservableKind,
    form: EquationForm,
    background: Quaternion,
    consts: &PhysicalConstants,
) -> Vec<PlaneTerm> {
    region
        .terms
        .iter()
        .map(|t| apply_operator(t, kind, form, background, consts))
        .collect()
}

/// Numerically integrate the symmetrized expectation integrand over the
/// window. Supports arbitrary superpositions within each region; the
/// operator derivatives are analytic per branch, so the piecewise kink at
/// the origin never enters.
pub fn expectation_quadrature(
    state: &WaveState,
    kind: ObservableKind,
    window: (f64, f64),
    t: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    let (lo, hi) = window;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let mut total = 0.0;
    for region in &state.regions {
        let Some((a, b)) = region.clip(lo, hi) else {
            continue;
        };
        let applied = region_operator_terms(region, kind, state.form, state.background, consts);
        let integrand = |x: f64| {
            let psi = region.value(x, t, consts);
            let phi = applied
                .iter()
                .fold(Quaternion::ZERO, |acc, term| acc + term.value(x, t, consts));
            // Scalar part of conj(Psi) * Phi == symmetrized real pairing.
            (psi.conj() * phi).re()
        };
        total += quad::integrate(&integrand, a, b)?;
    }
    Ok(total)
}

/// `Int scalar(Psi^dag Psi) dx` by quadrature: the probability norm of the
/// state over the window.
pub fn norm_quadrature(
    state: &WaveState,
    window: (f64, f64),
    t: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    let (lo, hi) = window;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(Error::InvalidWindow { lo, hi });
    }
    let mut total = 0.0;
    for region in &state.regions {
        let Some((a, b)) = region.clip(lo, hi) else {
            continue;
        };
        let integrand = |x: f64| region.value(x, t, consts).norm_sqr();
        total += quad::integrate(&integrand, a, b)?;
    }
    Ok(total)
}
