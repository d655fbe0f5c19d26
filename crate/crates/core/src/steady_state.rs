//! Static response to the control field alone (both probes off).
//!
//! Setting the time derivatives to zero and eliminating β₀ gives a cubic in
//! the intracavity intensity x = |α₀|²:
//!
//! ```text
//! x·[(Δ_a − η x)² + κ²] = ε_c²,   η = 2g²ω_b / (γ² + ω_b²)
//! ```

use num_complex::Complex;

use crate::dynamics::{rhs, FieldState};
use crate::error::Result;
use crate::linalg;
use crate::model::SystemParams;
use crate::scalar::Real;

/// One static solution of the control-only problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyBranch<T> {
    pub alpha0: Complex<T>,
    pub beta0: Complex<T>,
    /// |α₀|².
    pub intensity: T,
    /// Largest real part among the linearization eigenvalues.
    pub growth_rate: T,
    pub stable: bool,
}

impl<T: Real> SteadyBranch<T> {
    pub fn state(&self) -> FieldState<T> {
        FieldState {
            alpha: self.alpha0,
            beta: self.beta0,
            t: T::zero(),
        }
    }
}

/// Optomechanical frequency pull per photon, η.
pub fn frequency_pull<T: Real>(p: &SystemParams<T>) -> T {
    T::lit(2.0) * p.g * p.g * p.omega_b / (p.gamma * p.gamma + p.omega_b * p.omega_b)
}

/// Effective detuning Δ_a − η·x at intracavity intensity `x`.
pub fn effective_detuning<T: Real>(p: &SystemParams<T>, x: T) -> T {
    p.delta_a - frequency_pull(p) * x
}

/// Left minus right side of the intensity equation, in its unexpanded form.
pub fn intensity_balance<T: Real>(p: &SystemParams<T>, x: T) -> T {
    let d = effective_detuning(p, x);
    x * (d * d + p.kappa * p.kappa) - p.eps_c * p.eps_c
}

/// Mechanical amplitude slaved to a given cavity amplitude: −ig|α|²/(γ + iω_b).
pub fn slaved_beta<T: Real>(p: &SystemParams<T>, alpha: Complex<T>) -> Complex<T> {
    Complex::new(T::zero(), -p.g * alpha.norm_sqr()) / Complex::new(p.gamma, p.omega_b)
}

/// Jacobian of the real system in (Re α, Im α, Re β, Im β) at a given state.
/// The drive terms are state independent and drop out.
pub fn jacobian<T: Real>(p: &SystemParams<T>, alpha: Complex<T>, beta: Complex<T>) -> [[T; 4]; 4] {
    let two_g = T::lit(2.0) * p.g;
    let d = p.delta_a + two_g * beta.re;
    let (u, v) = (alpha.re, alpha.im);
    let z = T::zero();
    [
        [-p.kappa, d, two_g * v, z],
        [-d, -p.kappa, -two_g * u, z],
        [z, z, -p.gamma, p.omega_b],
        [-two_g * u, -two_g * v, -p.omega_b, -p.gamma],
    ]
}

/// Largest real part of the Jacobian eigenvalues.
pub fn growth_rate<T: Real>(p: &SystemParams<T>, alpha: Complex<T>, beta: Complex<T>) -> T {
    linalg::eigenvalues(&jacobian(p, alpha, beta))
        .into_iter()
        .map(|z| z.re)
        .fold(T::neg_infinity(), T::max)
}

/// Norm of both right-hand sides at a branch, probes off.
pub fn residual<T: Real>(p: &SystemParams<T>, alpha0: Complex<T>, beta0: Complex<T>) -> T {
    let q = p.probes_off();
    let (da, db) = rhs(
        &FieldState {
            alpha: alpha0,
            beta: beta0,
            t: T::zero(),
        },
        T::zero(),
        &q,
    );
    (da.norm_sqr() + db.norm_sqr()).sqrt()
}

fn branch_at<T: Real>(p: &SystemParams<T>, x: T) -> SteadyBranch<T> {
    let alpha0 = p.control() / Complex::new(p.kappa, effective_detuning(p, x));
    let beta0 = slaved_beta(p, alpha0);
    let rate = growth_rate(p, alpha0, beta0);
    let threshold = -T::lit(1e-12) * p.kappa.max(p.gamma);
    SteadyBranch {
        alpha0,
        beta0,
        intensity: alpha0.norm_sqr(),
        growth_rate: rate,
        stable: rate < threshold,
    }
}

/// All static branches, ordered by increasing intensity. The probe amplitudes
/// in `p` are ignored.
pub fn solve_steady<T: Real>(p: &SystemParams<T>) -> Result<Vec<SteadyBranch<T>>> {
    let p = p.validate()?;
    if p.eps_c == T::zero() {
        return Ok(vec![branch_at(&p, T::zero())]);
    }
    // x = s·y with s the linear-cavity intensity, normalised to a·y³ + b·y² + y − 1 = 0
    let eta = frequency_pull(&p);
    let eps2 = p.eps_c * p.eps_c;
    let lin = p.delta_a * p.delta_a + p.kappa * p.kappa;
    let s = eps2 / lin;
    let a = eta * eta * s * s * s / eps2;
    let b = -T::lit(2.0) * p.delta_a * eta * s * s / eps2;
    let mut ys: Vec<T> = linalg::cubic_real_roots(a, b, T::one(), -T::one())
        .into_iter()
        .filter(|y| *y > T::zero())
        .collect();
    ys.dedup_by(|y1, y0| (*y1 - *y0).abs() <= T::lit(1e-10) * y0.abs());
    Ok(ys.into_iter().map(|y| branch_at(&p, s * y)).collect())
}

/// The branch a sudden turn-on from vacuum settles to for the parameter sets
/// of interest: the lowest-intensity one.
pub fn vacuum_branch<T: Real>(p: &SystemParams<T>) -> Result<SteadyBranch<T>> {
    Ok(solve_steady(p)?.remove(0))
}
