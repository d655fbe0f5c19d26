//! Settle, record, project, and summarise: one full simulation.

use serde::{Deserialize, Serialize};

use crate::dynamics::{self, FieldState, Trajectory};
use crate::error::{Error, Result};
use crate::model::SystemParams;
use crate::scalar::Real;
use crate::spectrum::{
    comb_metrics, output_spectrum, project_harmonics, CombMetrics, CombSpectrum, IoConvention,
    DEFAULT_K_MAX_ORDERS, DEFAULT_THRESHOLD_REL,
};

/// Numerical knobs of a run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverSettings {
    pub steps_per_period: usize,
    /// Transient length in units of 1/γ.
    pub settle_periods: f64,
    /// Number of fundamental periods 2πn/ω_b in the analysis window.
    pub record_periods: usize,
    /// Harmonics kept on each side; `None` means 12·n.
    pub k_max: Option<usize>,
    pub threshold_rel: f64,
    pub io_convention: IoConvention,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            steps_per_period: dynamics::DEFAULT_STEPS_PER_PERIOD,
            settle_periods: dynamics::DEFAULT_SETTLE_PERIODS,
            record_periods: 4,
            k_max: None,
            threshold_rel: DEFAULT_THRESHOLD_REL,
            io_convention: IoConvention::default(),
        }
    }
}

impl SolverSettings {
    pub fn validate(self) -> Result<Self> {
        if self.steps_per_period == 0 {
            return Err(Error::param("steps_per_period", "must be positive"));
        }
        if !(self.settle_periods >= 0.0 && self.settle_periods.is_finite()) {
            return Err(Error::param("settle_periods", "must be finite and >= 0"));
        }
        if self.record_periods == 0 {
            return Err(Error::param("record_periods", "must be positive"));
        }
        if self.k_max == Some(0) {
            return Err(Error::param("k_max", "must be positive"));
        }
        if !(self.threshold_rel > 0.0 && self.threshold_rel < 1.0) {
            return Err(Error::InvalidThreshold(self.threshold_rel));
        }
        Ok(self)
    }

    pub fn k_max_for(&self, n: u32) -> usize {
        self.k_max.unwrap_or(DEFAULT_K_MAX_ORDERS * n as usize)
    }
}

/// Everything one simulation produces.
#[derive(Clone, Debug)]
pub struct RunOutput<T> {
    pub spectrum: CombSpectrum<T>,
    /// `None` when no line carries any amplitude (all drives off).
    pub metrics: Option<CombMetrics<T>>,
    /// State at the start of the analysis window.
    pub settled: FieldState<T>,
    /// Relative change of the state over one fundamental period in the window.
    pub periodicity: T,
}

/// Settled trajectory over `record_periods` fundamental periods.
pub fn steady_trajectory<T: Real>(
    p: &SystemParams<T>,
    settings: &SolverSettings,
) -> Result<Trajectory<T>> {
    let p = p.validate()?;
    let settings = settings.validate()?;
    let start = dynamics::settle(&p, settings.settle_periods, settings.steps_per_period)?;
    dynamics::record_periods(&p, start, settings.record_periods, settings.steps_per_period)
}

/// Runs the whole chain for one parameter set.
pub fn simulate<T: Real>(p: &SystemParams<T>, settings: &SolverSettings) -> Result<RunOutput<T>> {
    let traj = steady_trajectory(p, settings)?;
    analyze(&traj, p, settings)
}

/// Spectrum and metrics of an already recorded steady trajectory.
pub fn analyze<T: Real>(
    traj: &Trajectory<T>,
    p: &SystemParams<T>,
    settings: &SolverSettings,
) -> Result<RunOutput<T>> {
    let comb = project_harmonics(traj, p, settings.k_max_for(p.n))?;
    let spectrum = output_spectrum(comb, p, settings.io_convention);
    let metrics = match comb_metrics(&spectrum, settings.threshold_rel) {
        Ok(m) => Some(m),
        Err(Error::EmptySpectrum) => None,
        Err(e) => return Err(e),
    };
    let period = p.n as usize * settings.steps_per_period;
    Ok(RunOutput {
        spectrum,
        metrics,
        settled: traj.samples[0],
        periodicity: traj.periodicity_deviation(period),
    })
}
