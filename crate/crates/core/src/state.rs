//! Piecewise plane-wave state descriptors shared by the expectation and
//! residual-verification machinery.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{amp_times_scalar, PhysicalConstants, Quaternion};
use crate::complex_delta::{
    energy_from_dispersion, BoundState, ComplexBranch, ComplexPotential, ScatteringSolution,
};
use crate::error::{Error, Result};
use crate::quat_left::{confined_energy_left, coupling_matrix, QuatBranch};
use crate::quat_right::RightBranch;

/// Which wave equation the state solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EquationForm {
    Complex,
    Left,
    Right,
}

impl std::fmt::Display for EquationForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            EquationForm::Complex => "complex",
            EquationForm::Left => "left",
            EquationForm::Right => "right",
        };
        f.write_str(s)
    }
}

/// One exponential term `A exp[Kx - (E/hbar) t]` with quaternionic
/// amplitude `A = a0 + a1 j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneTerm {
    pub amp: Quaternion,
    pub k: Complex64,
    pub e: Complex64,
}

impl PlaneTerm {
    pub fn complex(a: Complex64, k: Complex64, e: Complex64) -> Self {
        Self {
            amp: Quaternion::from_complex(a),
            k,
            e,
        }
    }

    /// The complex exponential `exp(Kx - (E/hbar) t)`.
    pub fn exponential(&self, x: f64, t: f64, consts: &PhysicalConstants) -> Complex64 {
        (self.k * x - self.e * t / consts.hbar).exp()
    }

    /// Value of the term as a quaternion.
    pub fn value(&self, x: f64, t: f64, consts: &PhysicalConstants) -> Quaternion {
        amp_times_scalar(self.amp, self.exponential(x, t, consts))
    }

    /// Analytic spatial derivative: the amplitude picks up a factor `K`.
    pub fn dx(&self) -> PlaneTerm {
        PlaneTerm {
            amp: self.amp * Quaternion::from_complex(self.k),
            ..*self
        }
    }

    /// Analytic time derivative: the amplitude picks up `-E/hbar`.
    pub fn dt(&self, consts: &PhysicalConstants) -> PlaneTerm {
        PlaneTerm {
            amp: self.amp * Quaternion::from_complex(-self.e / consts.hbar),
            ..*self
        }
    }
}

/// A maximal interval on which the wave function is a fixed superposition
/// of exponential terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionWave {
    pub x_lo: f64,
    pub x_hi: f64,
    pub terms: Vec<PlaneTerm>,
}

impl RegionWave {
    pub fn full_line(terms: Vec<PlaneTerm>) -> Self {
        Self {
            x_lo: f64::NEG_INFINITY,
            x_hi: f64::INFINITY,
            terms,
        }
    }

    pub fn left_half(terms: Vec<PlaneTerm>) -> Self {
        Self {
            x_lo: f64::NEG_INFINITY,
            x_hi: 0.0,
            terms,
        }
    }

    pub fn right_half(terms: Vec<PlaneTerm>) -> Self {
        Self {
            x_lo: 0.0,
            x_hi: f64::INFINITY,
            terms,
        }
    }

    pub fn value(&self, x: f64, t: f64, consts: &PhysicalConstants) -> Quaternion {
        self.terms
            .iter()
            .fold(Quaternion::ZERO, |acc, term| acc + term.value(x, t, consts))
    }

    /// Overlap of this region with a window, when nonempty.
    pub fn clip(&self, lo: f64, hi: f64) -> Option<(f64, f64)> {
        let a = self.x_lo.max(lo);
        let b = self.x_hi.min(hi);
        (a < b).then_some((a, b))
    }
}

/// Delta strength plus constant background, complex cases embedded as
/// quaternions with vanishing j,k parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub strength: Quaternion,
    pub background: Quaternion,
}

impl PotentialSpec {
    pub fn quaternionic(strength: Quaternion, background: Quaternion) -> Self {
        Self {
            strength,
            background,
        }
    }

    pub fn from_complex(pot: &ComplexPotential) -> Self {
        Self {
            strength: Quaternion::from_complex(pot.q),
            background: Quaternion::from_complex(pot.v),
        }
    }

    pub fn free() -> Self {
        Self {
            strength: Quaternion::ZERO,
            background: Quaternion::ZERO,
        }
    }
}

/// A piecewise plane-wave solution of one of the three wave equations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveState {
    pub form: EquationForm,
    pub regions: Vec<RegionWave>,
    /// Constant background the regions were solved in.
    pub background: Quaternion,
}

impl WaveState {
    /// Pointwise value; regions are disjoint so the first match wins.
    pub fn value(&self, x: f64, t: f64, consts: &PhysicalConstants) -> Quaternion {
        self.region_at(x)
            .map(|r| r.value(x, t, consts))
            .unwrap_or(Quaternion::ZERO)
    }

    pub fn region_at(&self, x: f64) -> Option<&RegionWave> {
        self.regions
            .iter()
            .find(|r| x >= r.x_lo && x <= r.x_hi)
    }

    /// The regions meeting at `x = 0` from the left and right, when the
    /// state is split there. A full-line region plays both roles.
    pub fn interface_regions(&self) -> Option<(&RegionWave, &RegionWave)> {
        let left = self
            .regions
            .iter()
            .find(|r| r.x_lo < 0.0 && r.x_hi >= 0.0)?;
        let right = self
            .regions
            .iter()
            .find(|r| r.x_lo <= 0.0 && r.x_hi > 0.0)?;
        Some((left, right))
    }

    /// Autonomous complex branch on the full line.
    pub fn autonomous_complex(branch: &ComplexBranch, amplitude: Complex64) -> Self {
        WaveState {
            form: EquationForm::Complex,
            regions: vec![RegionWave::full_line(vec![PlaneTerm::complex(
                amplitude, branch.k, branch.e,
            )])],
            background: Quaternion::from_complex(branch.v),
        }
    }

    /// The confined state of the attractive real delta: decaying on both
    /// sides, continuous at the origin.
    pub fn bound_complex(bs: &BoundState, pot: &ComplexPotential) -> Self {
        let a = Complex64::new(bs.amplitude, 0.0);
        WaveState {
            form: EquationForm::Complex,
            regions: vec![
                RegionWave::left_half(vec![PlaneTerm::complex(a, bs.k, bs.e)]),
                RegionWave::right_half(vec![PlaneTerm::complex(a, -bs.k, bs.e)]),
            ],
            background: Quaternion::from_complex(pot.v),
        }
    }

    /// Scattering configuration: incident plus reflected on the left,
    /// transmitted on the right, the scattered branches carrying the
    /// conjugated `K` and the scaled energy `calE = calE0 + E1 i`.
    pub fn scattering_complex(
        k: Complex64,
        pot: &ComplexPotential,
        sol: &ScatteringSolution,
        consts: &PhysicalConstants,
    ) -> Self {
        let e = energy_from_dispersion(k, pot.v, consts);
        let cal_e = Complex64::new(sol.cal_e0, e.im);
        let one = Complex64::new(1.0, 0.0);
        WaveState {
            form: EquationForm::Complex,
            regions: vec![
                RegionWave::left_half(vec![
                    PlaneTerm::complex(one, k, e),
                    PlaneTerm::complex(sol.r, k.conj(), cal_e),
                ]),
                RegionWave::right_half(vec![PlaneTerm::complex(sol.t, -k.conj(), cal_e)]),
            ],
            background: Quaternion::from_complex(pot.v),
        }
    }

    /// Autonomous left-equation branch on the full line.
    pub fn autonomous_left(branch: &QuatBranch) -> Self {
        WaveState {
            form: EquationForm::Left,
            regions: vec![RegionWave::full_line(vec![PlaneTerm {
                amp: branch.amplitude(),
                k: branch.k,
                e: branch.e,
            }])],
            background: branch.u,
        }
    }

    /// Confined state of the quaternionic delta: real strength, real `K`,
    /// amplitudes from the coupled-system eigenvector at the confined
    /// energy.
    pub fn confined_left(
        q: Quaternion,
        u: Quaternion,
        consts: &PhysicalConstants,
    ) -> Result<Self> {
        let confined = confined_energy_left(q, u, consts)?;
        if confined.k0 <= 0.0 {
            return Err(Error::NoBoundState { q0: q.re() });
        }
        let e = Complex64::new(0.0, confined.e1);
        let lambda = Complex64::new(consts.hbar2_over_two_m() * confined.k0 * confined.k0, 0.0);
        let (u0, u1) = u.symplectic();
        let a1 = if u1.norm() > 0.0 {
            let ratio_bar = (u0 + Complex64::new(0.0, 1.0) * e - lambda) / u1;
            ratio_bar.conj()
        } else {
            Complex64::new(0.0, 0.0)
        };
        let norm = (1.0 + a1.norm_sqr()).sqrt();
        let amp = Quaternion::from_symplectic(
            Complex64::new(1.0 / norm, 0.0),
            a1 / norm,
        );
        let k = Complex64::new(confined.k0, 0.0);
        Ok(WaveState {
            form: EquationForm::Left,
            regions: vec![
                RegionWave::left_half(vec![PlaneTerm { amp, k, e }]),
                RegionWave::right_half(vec![PlaneTerm { amp, k: -k, e }]),
            ],
            background: u,
        })
    }

    /// Autonomous right-equation branch on the full line.
    pub fn autonomous_right(branch: &RightBranch) -> Self {
        WaveState {
            form: EquationForm::Right,
            regions: vec![RegionWave::full_line(vec![PlaneTerm {
                amp: branch.amplitude(),
                k: branch.k,
                e: branch.e,
            }])],
            background: branch.u,
        }
    }
}

/// Residual of the coupled-system eigen equation for a confined left
/// state; used by tests to confirm the builder produced an exact solution.
pub fn confined_left_eig_residual(
    state: &WaveState,
    consts: &PhysicalConstants,
) -> Option<f64> {
    let term = state.regions.first()?.terms.first()?;
    let m = coupling_matrix(term.e, state.background);
    let lambda = consts.hbar2_over_two_m() * term.k * term.k;
    let (a0, a1) = term.amp.symplectic();
    Some(crate::quat_left::eig_pair_residual(&m, lambda, [a0, a1.conj()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_delta::{solve_bound_state, solve_scattering};

    #[test]
    fn bound_state_is_continuous_at_origin() {
        let consts = PhysicalConstants::natural();
        let pot = ComplexPotential::new(Complex64::new(-2.0, 0.0), Complex64::new(0.0, 0.0));
        let bs = solve_bound_state(&pot, &consts).unwrap();
        let state = WaveState::bound_complex(&bs, &pot);
        let (l, r) = state.interface_regions().unwrap();
        let gap = (l.value(0.0, 0.3, &consts) - r.value(0.0, 0.3, &consts)).norm();
        assert!(gap < 1e-15);
    }

    #[test]
    fn scattering_state_is_continuous_at_origin() {
        let consts = PhysicalConstants::natural();
        let k = Complex64::new(0.0, 1.0);
        let pot = ComplexPotential::new(Complex64::new(1.0, 0.5), Complex64::new(0.2, -0.1));
        let sol = solve_scattering(k, &pot, &consts).unwrap();
        let state = WaveState::scattering_complex(k, &pot, &sol, &consts);
        let (l, r) = state.interface_regions().unwrap();
        let gap = (l.value(0.0, 0.0, &consts) - r.value(0.0, 0.0, &consts)).norm();
        assert!(gap < 1e-15, "gap {gap}");
    }

    #[test]
    fn confined_left_solves_the_eigen_equation() {
        let consts = PhysicalConstants::natural();
        let q = Quaternion::from_real(-2.0);
        let u = Quaternion::from_symplectic(Complex64::new(0.5, 0.0), Complex64::new(3.0, 0.0));
        let state = WaveState::confined_left(q, u, &consts).unwrap();
        let residual = confined_left_eig_residual(&state, &consts).unwrap();
        assert!(residual < 1e-12, "residual {residual}");
    }

    #[test]
    fn confined_left_requires_attractive_strength() {
        let consts = PhysicalConstants::natural();
        let q = Quaternion::from_real(2.0);
        assert!(matches!(
            WaveState::confined_left(q, Quaternion::ZERO, &consts),
            Err(Error::NoBoundState { .. })
        ));
    }

    #[test]
    fn term_derivatives_are_analytic() {
        let consts = PhysicalConstants::natural();
        let term = PlaneTerm::complex(
            Complex64::new(0.7, -0.2),
            Complex64::new(0.4, 1.1),
            Complex64::new(0.3, -0.9),
        );
        let h = 1e-6;
        let (x, t) = (0.37, 0.21);
        let fd_x = (term.value(x + h, t, &consts) - term.value(x - h, t, &consts)).scale(0.5 / h);
        assert!((fd_x - term.dx().value(x, t, &consts)).norm() < 1e-8);
        let fd_t = (term.value(x, t + h, &consts) - term.value(x, t - h, &consts)).scale(0.5 / h);
        assert!((fd_t - term.dt(&consts).value(x, t, &consts)).norm() < 1e-8);
    }
}
