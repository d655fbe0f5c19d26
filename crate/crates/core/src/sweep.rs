//! One-axis parameter sweeps, rows computed in parallel.

use std::f64::consts::TAU;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::model::AMPLITUDE_UNIT;
use crate::pipeline::simulate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepAxis {
    /// First probe amplitude, GHz.
    EpsP,
    /// Second probe amplitude, GHz.
    EpsF,
    /// Fraction integer.
    N,
    /// Control detuning, Hz.
    DeltaA,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::EpsP => "eps_p",
            SweepAxis::EpsF => "eps_f",
            SweepAxis::N => "n",
            SweepAxis::DeltaA => "delta_a",
        }
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eps_p" => Ok(SweepAxis::EpsP),
            "eps_f" => Ok(SweepAxis::EpsF),
            "n" => Ok(SweepAxis::N),
            "delta_a" => Ok(SweepAxis::DeltaA),
            _ => Err(Error::Config(format!("unknown sweep axis `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub base: RunConfig,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::Config("sweep needs at least one value".into()));
        }
        if self.axis == SweepAxis::N {
            if let Some(v) = self.values.iter().find(|v| v.fract() != 0.0 || **v < 1.0) {
                return Err(Error::Config(format!("n values must be positive integers, got {v}")));
            }
        }
        Ok(())
    }

    /// Base configuration with the axis set to `value`.
    pub fn config_at(&self, value: f64) -> Result<RunConfig> {
        let mut c = self.base.clone();
        let p = &mut c.params;
        match self.axis {
            SweepAxis::EpsP => p.eps_p = value * AMPLITUDE_UNIT,
            SweepAxis::EpsF => p.eps_f = value * AMPLITUDE_UNIT,
            SweepAxis::N => p.n = value as u32,
            SweepAxis::DeltaA => p.delta_a = TAU * value,
        }
        c.params = p.validate()?;
        Ok(c)
    }
}

/// Metrics of one sweep row, frequencies in units of ω_b.
#[derive(Clone, Debug, PartialEq)]
pub struct RowMetrics {
    pub cutoff_neg: Ratio<i64>,
    pub cutoff_pos: Ratio<i64>,
    pub f_rep_over_omega_b: Option<f64>,
    pub range_over_omega_b: (f64, f64),
    pub largest: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    /// `Ok(None)` marks a degenerate row with no line above zero.
    pub outcome: Result<Option<RowMetrics>, String>,
}

fn run_row(spec: &SweepSpec, value: f64) -> Result<Option<RowMetrics>> {
    let c = spec.config_at(value)?;
    let out = simulate(&c.params, &c.solver)?;
    let wb = c.params.omega_b;
    Ok(out.metrics.map(|m| RowMetrics {
        cutoff_neg: m.cutoff_neg,
        cutoff_pos: m.cutoff_pos,
        f_rep_over_omega_b: m.f_rep.map(|f| f / wb),
        range_over_omega_b: (m.f_range.0 / wb, m.f_range.1 / wb),
        largest: m.largest,
    }))
}

/// Runs every value; a failing row records its error and leaves the others alone.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    Ok(spec
        .values
        .par_iter()
        .map(|&value| SweepRow {
            value,
            outcome: run_row(spec, value).map_err(|e| format!("{}: {e}", e.code())),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::SolverSettings;

    fn quick() -> RunConfig {
        RunConfig {
            solver: SolverSettings {
                settle_periods: 2.0,
                record_periods: 1,
                steps_per_period: 80,
                ..SolverSettings::default()
            },
            ..RunConfig::default()
        }
    }

    #[test]
    fn axis_names_round_trip() {
        for a in [SweepAxis::EpsP, SweepAxis::EpsF, SweepAxis::N, SweepAxis::DeltaA] {
            assert_eq!(a.name().parse::<SweepAxis>().unwrap(), a);
        }
        assert!("kappa".parse::<SweepAxis>().is_err());
    }

    #[test]
    fn invalid_specs_rejected() {
        let s = SweepSpec { axis: SweepAxis::N, values: vec![], base: quick() };
        assert!(sweep(&s).is_err());
        let s = SweepSpec { axis: SweepAxis::N, values: vec![2.0, 2.5], base: quick() };
        assert!(sweep(&s).is_err());
    }

    #[test]
    fn failing_and_degenerate_rows_are_isolated() {
        let mut base = quick();
        base.params.eps_c = 0.0;
        let s = SweepSpec { axis: SweepAxis::EpsP, values: vec![0.0, -1.0, 9.0], base };
        let rows = sweep(&s).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].outcome, Ok(None));
        assert!(rows[1].outcome.as_ref().unwrap_err().starts_with("invalid_param"));
        let m = rows[2].outcome.as_ref().unwrap().as_ref().unwrap();
        assert!(m.largest > 0.0);
    }
}
