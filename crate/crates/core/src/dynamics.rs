//! Mean-field equations of motion in the frame rotating at the control
//! frequency, and their fixed-step fourth-order Runge–Kutta integration.
//!
//! ```text
//! dα/dt = −(iΔ_a + κ)α − igα(β + β*) + ε_c + ε_p e^{−iδ_p t} + ε_f e^{−iδ_f t}
//! dβ/dt = −(iω_b + γ)β − ig|α|²
//! ```

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::scalar::Real;

/// Default number of RK4 steps per mechanical period 2π/ω_b.
pub const DEFAULT_STEPS_PER_PERIOD: usize = 200;
/// Default transient length in units of 1/γ.
pub const DEFAULT_SETTLE_PERIODS: f64 = 20.0;
/// Upper bound on dt·ω_b.
pub const RESOLUTION_LIMIT: f64 = 0.1;

/// Cavity and mechanical amplitudes at time `t`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FieldState<T> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
    pub t: T,
}

impl<T: Real> FieldState<T> {
    pub fn vacuum() -> Self {
        FieldState {
            alpha: Complex::new(T::zero(), T::zero()),
            beta: Complex::new(T::zero(), T::zero()),
            t: T::zero(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.re.is_finite()
            && self.alpha.im.is_finite()
            && self.beta.re.is_finite()
            && self.beta.im.is_finite()
    }

    /// Euclidean norm of (α, β).
    pub fn norm(&self) -> T {
        (self.alpha.norm_sqr() + self.beta.norm_sqr()).sqrt()
    }
}

/// Uniformly sampled series of states at `t0 + i·dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T> {
    pub t0: T,
    pub dt: T,
    pub samples: Vec<FieldState<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Time covered by the samples when each is taken to represent one step,
    /// i.e. `len·dt`.
    pub fn span(&self) -> T {
        T::from_count(self.samples.len()) * self.dt
    }

    pub fn alphas(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        self.samples.iter().map(|s| s.alpha)
    }

    /// Largest relative difference between states one period (`period_samples`
    /// steps) apart.
    pub fn periodicity_deviation(&self, period_samples: usize) -> T {
        if period_samples == 0 || period_samples >= self.samples.len() {
            return T::infinity();
        }
        let scale = self
            .samples
            .iter()
            .map(FieldState::norm)
            .fold(T::zero(), T::max);
        if scale == T::zero() {
            return T::zero();
        }
        self.samples
            .iter()
            .zip(&self.samples[period_samples..])
            .map(|(a, b)| {
                ((a.alpha - b.alpha).norm_sqr() + (a.beta - b.beta).norm_sqr()).sqrt()
            })
            .fold(T::zero(), T::max)
            / scale
    }
}

/// Right-hand side of the equations of motion.
pub fn rhs<T: Real>(
    state: &FieldState<T>,
    t: T,
    p: &SystemParams<T>,
) -> (Complex<T>, Complex<T>) {
    Field::new(p).eval(state.alpha, state.beta, t)
}

/// Pre-combined coefficients of the right-hand side.
#[derive(Clone, Copy, Debug)]
struct Field<T> {
    cavity: Complex<T>,
    mech: Complex<T>,
    g: T,
    eps_c: Complex<T>,
    eps_p: Complex<T>,
    eps_f: Complex<T>,
    delta_p: T,
    delta_f: T,
}

impl<T: Real> Field<T> {
    fn new(p: &SystemParams<T>) -> Self {
        Field {
            cavity: Complex::new(p.kappa, p.delta_a),
            mech: Complex::new(p.gamma, p.omega_b),
            g: p.g,
            eps_c: p.control(),
            eps_p: p.probe_p(),
            eps_f: p.probe_f(),
            delta_p: p.delta_p,
            delta_f: p.delta_f(),
        }
    }

    #[inline]
    fn eval(&self, alpha: Complex<T>, beta: Complex<T>, t: T) -> (Complex<T>, Complex<T>) {
        let two = T::lit(2.0);
        // −igα(β+β*) = −i·(2g·Re β)·α
        let shift = two * self.g * beta.re;
        let drive = self.eps_c
            + self.eps_p * Complex::from_polar(T::one(), -self.delta_p * t)
            + self.eps_f * Complex::from_polar(T::one(), -self.delta_f * t);
        let d_alpha = -self.cavity * alpha - Complex::new(-shift * alpha.im, shift * alpha.re) + drive;
        let d_beta = -self.mech * beta - Complex::new(T::zero(), self.g * alpha.norm_sqr());
        (d_alpha, d_beta)
    }
}

/// Result of [`integrate`]: the recorded samples plus the state at `t_end`.
#[derive(Clone, Debug, PartialEq)]
pub struct Integration<T> {
    pub trajectory: Trajectory<T>,
    pub end: FieldState<T>,
}

/// Fixed-step RK4 integrator. Times are always computed as `t0 + i·dt` so that
/// long runs do not accumulate rounding in the clock.
#[derive(Clone, Debug)]
pub struct Rk4<T> {
    field: Field<T>,
    t0: T,
    dt: T,
    steps: u64,
    alpha: Complex<T>,
    beta: Complex<T>,
}

impl<T: Real> Rk4<T> {
    pub fn new(p: &SystemParams<T>, init: FieldState<T>, dt: T) -> Result<Self> {
        check_step(p, dt)?;
        if !init.is_finite() {
            return Err(Error::Divergence { t: init.t.to_f64_lossy() });
        }
        Ok(Rk4 {
            field: Field::new(p),
            t0: init.t,
            dt,
            steps: 0,
            alpha: init.alpha,
            beta: init.beta,
        })
    }

    pub fn time(&self) -> T {
        self.t0 + T::from_u64(self.steps).unwrap() * self.dt
    }

    pub fn state(&self) -> FieldState<T> {
        FieldState {
            alpha: self.alpha,
            beta: self.beta,
            t: self.time(),
        }
    }

    /// Advances by one step of length `h` (normally `dt`).
    fn advance(&mut self, h: T) {
        let t = self.time();
        let half = h / T::lit(2.0);
        let (a, b) = (self.alpha, self.beta);
        let f = &self.field;
        let (k1a, k1b) = f.eval(a, b, t);
        let (k2a, k2b) = f.eval(a + k1a * half, b + k1b * half, t + half);
        let (k3a, k3b) = f.eval(a + k2a * half, b + k2b * half, t + half);
        let (k4a, k4b) = f.eval(a + k3a * h, b + k3b * h, t + h);
        let sixth = h / T::lit(6.0);
        let two = T::lit(2.0);
        self.alpha = a + (k1a + k2a * two + k3a * two + k4a) * sixth;
        self.beta = b + (k1b + k2b * two + k3b * two + k4b) * sixth;
    }

    fn ensure_finite(&self) -> Result<()> {
        let s = self.state();
        if s.is_finite() {
            Ok(())
        } else {
            Err(Error::Divergence { t: s.t.to_f64_lossy() })
        }
    }

    /// Takes `count` full steps.
    pub fn run(&mut self, count: u64) -> Result<()> {
        for _ in 0..count {
            self.advance(self.dt);
            self.steps += 1;
            self.ensure_finite()?;
        }
        Ok(())
    }

    /// Records `count` samples, the current state first, stepping between them.
    /// The integrator ends one step past the last recorded sample.
    pub fn record(&mut self, count: usize) -> Result<Trajectory<T>> {
        let t0 = self.time();
        let mut samples = Vec::with_capacity(count);
        for _ in 0..count {
            samples.push(self.state());
            self.run(1)?;
        }
        Ok(Trajectory {
            t0,
            dt: self.dt,
            samples,
        })
    }
}

fn check_step<T: Real>(p: &SystemParams<T>, dt: T) -> Result<()> {
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(Error::InvalidGrid(format!("dt must be positive, got {dt}")));
    }
    let dt_omega_b = (dt * p.omega_b).to_f64_lossy();
    if dt_omega_b >= RESOLUTION_LIMIT {
        return Err(Error::Resolution { dt_omega_b });
    }
    Ok(())
}

/// Integrates from `init` to `t_end` with step `dt`, recording every grid
/// point `init.t + i·dt` with time ≥ `record_from`. If `t_end` is not on the
/// grid the last step is shortened to land on it; that endpoint is reported
/// in [`Integration::end`] only.
pub fn integrate<T: Real>(
    p: &SystemParams<T>,
    init: FieldState<T>,
    t_end: T,
    dt: T,
    record_from: T,
) -> Result<Integration<T>> {
    if record_from > t_end {
        return Err(Error::InvalidGrid(format!(
            "record_from {record_from} is after t_end {t_end}"
        )));
    }
    if t_end < init.t {
        return Err(Error::InvalidGrid(format!(
            "t_end {t_end} precedes the initial time {}",
            init.t
        )));
    }
    let mut rk = Rk4::new(p, init, dt)?;
    let ratio = ((t_end - init.t) / dt).to_f64_lossy();
    let full = (ratio + 1e-9).floor().max(0.0) as u64;
    let slack = T::lit(1e-9) * dt;

    let mut samples = Vec::new();
    let mut first_recorded = None;
    for i in 0..=full {
        if i > 0 {
            rk.run(1)?;
        }
        let s = rk.state();
        if s.t + slack >= record_from {
            first_recorded.get_or_insert(s.t);
            samples.push(s);
        }
    }
    let rest = t_end - rk.time();
    if rest > slack {
        rk.advance(rest);
        rk.ensure_finite()?;
    }
    let mut end = rk.state();
    end.t = t_end;
    if samples.len() < 2 {
        return Err(Error::InvalidGrid(format!(
            "only {} sample(s) recorded; need at least 2",
            samples.len()
        )));
    }
    Ok(Integration {
        trajectory: Trajectory {
            t0: first_recorded.unwrap_or(init.t),
            dt,
            samples,
        },
        end,
    })
}

/// Step size for `steps_per_period` steps per mechanical period.
pub fn step_size<T: Real>(p: &SystemParams<T>, steps_per_period: usize) -> T {
    p.mechanical_period() / T::from_count(steps_per_period)
}

/// Number of whole steps spent removing the transient: `settle_periods/γ`
/// rounded up to a whole number of drive periods, so that recording starts on
/// a multiple of the fundamental period.
pub fn settle_steps<T: Real>(p: &SystemParams<T>, settle_periods: f64, steps_per_period: usize) -> u64 {
    let per_fund = steps_per_period as u64 * p.n as u64;
    let settle_time = settle_periods / p.gamma.to_f64_lossy();
    let fund = p.fundamental_period().to_f64_lossy();
    let periods = (settle_time / fund).ceil().max(0.0) as u64;
    periods * per_fund
}

/// Integrates from vacuum for `settle_periods/γ` (rounded up to whole drive
/// periods) and returns the final state.
pub fn settle<T: Real>(
    p: &SystemParams<T>,
    settle_periods: f64,
    steps_per_period: usize,
) -> Result<FieldState<T>> {
    let dt = step_size(p, steps_per_period);
    let mut rk = Rk4::new(p, FieldState::vacuum(), dt)?;
    rk.run(settle_steps(p, settle_periods, steps_per_period))?;
    Ok(rk.state())
}

/// Records `periods` fundamental periods starting from `start`, one sample per
/// step and without the closing endpoint.
pub fn record_periods<T: Real>(
    p: &SystemParams<T>,
    start: FieldState<T>,
    periods: usize,
    steps_per_period: usize,
) -> Result<Trajectory<T>> {
    let dt = step_size(p, steps_per_period);
    let mut rk = Rk4::new(p, start, dt)?;
    rk.record(periods * p.n as usize * steps_per_period)
}
