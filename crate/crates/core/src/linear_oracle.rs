//! First-order response to weak probes around the static branch.
//!
//! With α = α₀ + a₊e^{−iδt} + a₋e^{+iδt} and β = β₀ + b₊e^{−iδt} + b₋e^{+iδt},
//! keeping terms linear in the probe and matching e^{∓iδt} gives a 4×4 system
//! in (a₊, a₋*, b₊, b₋*):
//!
//! ```text
//! (κ + i(Δ' − δ))·a₊ + igα₀·(b₊ + b₋*)            = ε
//! (κ − i(Δ' + δ))·a₋* − igα₀*·(b₊ + b₋*)          = 0
//! (γ + i(ω_b − δ))·b₊ + ig·(α₀*a₊ + α₀a₋*)         = 0
//! (γ − i(ω_b + δ))·b₋* − ig·(α₀a₋* + α₀*a₊)        = 0
//! ```
//!
//! where Δ' = Δ_a + 2g·Re β₀.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::SystemParams;
use crate::scalar::Real;
use crate::steady_state::{vacuum_branch, SteadyBranch};

/// Probe-to-control ratio above which the two-probe result is flagged.
pub const WEAK_PROBE_LIMIT: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearResponse<T> {
    /// Probe detuning, rad/s.
    pub delta: T,
    /// Cavity coefficient of e^{−iδt}.
    pub a_plus: Complex<T>,
    /// Cavity coefficient of e^{+iδt}.
    pub a_minus: Complex<T>,
    pub b_plus: Complex<T>,
    pub b_minus: Complex<T>,
    /// Relative residual of the solved system.
    pub residual: T,
}

fn system<T: Real>(
    p: &SystemParams<T>,
    branch: &SteadyBranch<T>,
    delta: T,
) -> [[Complex<T>; 4]; 4] {
    let c = |re: T, im: T| Complex::new(re, im);
    let zero = c(T::zero(), T::zero());
    let ig = c(T::zero(), p.g);
    let a0 = branch.alpha0;
    let a0c = a0.conj();
    let dp = p.delta_a + T::lit(2.0) * p.g * branch.beta0.re;
    [
        [c(p.kappa, dp - delta), zero, ig * a0, ig * a0],
        [zero, c(p.kappa, -(dp + delta)), -ig * a0c, -ig * a0c],
        [ig * a0c, ig * a0, c(p.gamma, p.omega_b - delta), zero],
        [-ig * a0c, -ig * a0, zero, c(p.gamma, -(p.omega_b + delta))],
    ]
}

/// Solves the linearized response to a probe `eps_probe·e^{−iδt}` around the
/// given branch.
pub fn linear_response_at<T: Real>(
    p: &SystemParams<T>,
    branch: &SteadyBranch<T>,
    delta: T,
    eps_probe: Complex<T>,
) -> Result<LinearResponse<T>> {
    let m = system(p, branch, delta);
    let zero = Complex::new(T::zero(), T::zero());
    let rhs = [eps_probe, zero, zero, zero];
    if eps_probe == zero {
        return Ok(LinearResponse {
            delta,
            a_plus: zero,
            a_minus: zero,
            b_plus: zero,
            b_minus: zero,
            residual: T::zero(),
        });
    }
    let x = linalg::solve(m, rhs).ok_or(Error::SingularSystem)?;
    let mut worst = T::zero();
    for (row, b) in m.iter().zip(&rhs) {
        let mut s = zero;
        for (a, xi) in row.iter().zip(&x) {
            s = s + *a * *xi;
        }
        worst = worst.max((s - *b).norm());
    }
    Ok(LinearResponse {
        delta,
        a_plus: x[0],
        a_minus: x[1].conj(),
        b_plus: x[2],
        b_minus: x[3].conj(),
        residual: worst / eps_probe.norm(),
    })
}

/// Linear response around the vacuum-reached static branch.
pub fn linear_response<T: Real>(
    p: &SystemParams<T>,
    delta: T,
    eps_probe: Complex<T>,
) -> Result<LinearResponse<T>> {
    let branch = vacuum_branch(p)?;
    linear_response_at(p, &branch, delta, eps_probe)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoProbeResponse<T> {
    /// Response at δ_p.
    pub probe_p: LinearResponse<T>,
    /// Response at δ_f = ω_b/n.
    pub probe_f: LinearResponse<T>,
    /// Set when either probe exceeds [`WEAK_PROBE_LIMIT`] of the control.
    pub outside_weak_regime: bool,
}

/// Independent first-order responses to both probes; mixing between the
/// probes is second order and not included.
pub fn two_probe_linear_response<T: Real>(p: &SystemParams<T>) -> Result<TwoProbeResponse<T>> {
    let branch = vacuum_branch(p)?;
    let limit = T::lit(WEAK_PROBE_LIMIT) * p.eps_c;
    Ok(TwoProbeResponse {
        probe_p: linear_response_at(p, &branch, p.delta_p, p.probe_p())?,
        probe_f: linear_response_at(p, &branch, p.delta_f(), p.probe_f())?,
        outside_weak_regime: p.eps_p > limit || p.eps_f > limit,
    })
}
