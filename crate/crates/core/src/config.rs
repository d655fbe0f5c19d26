//! Flat JSON run configuration and the shipped figure presets.
//!
//! Frequencies are ordinary Hz and are multiplied by 2π on load; drive
//! amplitudes are in units of 10⁹ s⁻¹.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{SystemParams, AMPLITUDE_UNIT};
use crate::pipeline::SolverSettings;
use crate::spectrum::IoConvention;

/// On-disk form. Unknown keys are rejected so typos surface as errors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub omega_b_hz: f64,
    pub kappa_hz: f64,
    pub gamma_hz: f64,
    pub g_hz: f64,
    pub delta_a_hz: f64,
    pub eps_c: f64,
    pub eps_p: f64,
    pub eps_f: f64,
    pub n: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_p_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps_per_period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub settle_periods: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record_periods: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_rel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub io_convention: Option<IoConvention>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics_path: Option<PathBuf>,
}

/// Output file locations; relative paths are resolved against `--out`.
#[derive(Clone, Debug, PartialEq)]
pub struct OutputPaths {
    pub spectrum: PathBuf,
    pub metrics: PathBuf,
}

impl Default for OutputPaths {
    fn default() -> Self {
        OutputPaths {
            spectrum: PathBuf::from("spectrum.csv"),
            metrics: PathBuf::from("metrics.txt"),
        }
    }
}

/// Validated configuration of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams<f64>,
    pub solver: SolverSettings,
    pub output: OutputPaths,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            params: SystemParams::baseline(),
            solver: SolverSettings::default(),
            output: OutputPaths::default(),
        }
    }
}

fn integer_n(n: f64) -> Result<u32> {
    if n.fract() != 0.0 || !(1.0..=u32::MAX as f64).contains(&n) {
        return Err(Error::Config(format!("n must be a positive integer, got {n}")));
    }
    Ok(n as u32)
}

impl TryFrom<ConfigFile> for RunConfig {
    type Error = Error;

    fn try_from(f: ConfigFile) -> Result<Self> {
        let defaults = SolverSettings::default();
        let params = SystemParams {
            omega_b: TAU * f.omega_b_hz,
            kappa: TAU * f.kappa_hz,
            gamma: TAU * f.gamma_hz,
            g: TAU * f.g_hz,
            delta_a: TAU * f.delta_a_hz,
            eps_c: f.eps_c * AMPLITUDE_UNIT,
            eps_p: f.eps_p * AMPLITUDE_UNIT,
            eps_f: f.eps_f * AMPLITUDE_UNIT,
            delta_p: TAU * f.delta_p_hz.unwrap_or(f.omega_b_hz),
            n: integer_n(f.n)?,
            phase_c: f.phase_c.unwrap_or(0.0),
            phase_p: f.phase_p.unwrap_or(0.0),
            phase_f: f.phase_f.unwrap_or(0.0),
        }
        .validate()?;
        let solver = SolverSettings {
            steps_per_period: f.steps_per_period.unwrap_or(defaults.steps_per_period),
            settle_periods: f.settle_periods.unwrap_or(defaults.settle_periods),
            record_periods: f.record_periods.unwrap_or(defaults.record_periods),
            k_max: f.k_max.or(defaults.k_max),
            threshold_rel: f.threshold_rel.unwrap_or(defaults.threshold_rel),
            io_convention: f.io_convention.unwrap_or(defaults.io_convention),
        }
        .validate()?;
        let mut output = OutputPaths::default();
        if let Some(s) = f.spectrum_path {
            output.spectrum = s;
        }
        if let Some(m) = f.metrics_path {
            output.metrics = m;
        }
        Ok(RunConfig { params, solver, output })
    }
}

impl From<&RunConfig> for ConfigFile {
    fn from(c: &RunConfig) -> Self {
        let p = &c.params;
        let hz = |w: f64| w / TAU;
        ConfigFile {
            omega_b_hz: hz(p.omega_b),
            kappa_hz: hz(p.kappa),
            gamma_hz: hz(p.gamma),
            g_hz: hz(p.g),
            delta_a_hz: hz(p.delta_a),
            eps_c: p.eps_c / AMPLITUDE_UNIT,
            eps_p: p.eps_p / AMPLITUDE_UNIT,
            eps_f: p.eps_f / AMPLITUDE_UNIT,
            n: p.n as f64,
            delta_p_hz: Some(hz(p.delta_p)),
            phase_c: Some(p.phase_c),
            phase_p: Some(p.phase_p),
            phase_f: Some(p.phase_f),
            steps_per_period: Some(c.solver.steps_per_period),
            settle_periods: Some(c.solver.settle_periods),
            record_periods: Some(c.solver.record_periods),
            k_max: c.solver.k_max,
            threshold_rel: Some(c.solver.threshold_rel),
            io_convention: Some(c.solver.io_convention),
            spectrum_path: Some(c.output.spectrum.clone()),
            metrics_path: Some(c.output.metrics.clone()),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        file.try_into()
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ConfigFile::from(self)).expect("config serializes")
    }

    pub fn preset(name: &str) -> Result<Self> {
        let text = Preset::from_name(name)
            .ok_or_else(|| Error::Config(format!("unknown preset `{name}`")))?
            .json();
        Self::from_json(text)
    }
}

/// Named figure-reproduction configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig4a,
    Fig4b,
    Fig4c,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Fig2a,
        Preset::Fig2b,
        Preset::Fig3a,
        Preset::Fig3b,
        Preset::Fig3c,
        Preset::Fig4a,
        Preset::Fig4b,
        Preset::Fig4c,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2a => "fig2a",
            Preset::Fig2b => "fig2b",
            Preset::Fig3a => "fig3a",
            Preset::Fig3b => "fig3b",
            Preset::Fig3c => "fig3c",
            Preset::Fig4a => "fig4a",
            Preset::Fig4b => "fig4b",
            Preset::Fig4c => "fig4c",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn json(self) -> &'static str {
        match self {
            Preset::Fig2a => include_str!("../presets/fig2a.json"),
            Preset::Fig2b => include_str!("../presets/fig2b.json"),
            Preset::Fig3a => include_str!("../presets/fig3a.json"),
            Preset::Fig3b => include_str!("../presets/fig3b.json"),
            Preset::Fig3c => include_str!("../presets/fig3c.json"),
            Preset::Fig4a => include_str!("../presets/fig4a.json"),
            Preset::Fig4b => include_str!("../presets/fig4b.json"),
            Preset::Fig4c => include_str!("../presets/fig4c.json"),
        }
    }

    pub fn config(self) -> RunConfig {
        RunConfig::from_json(self.json()).expect("shipped presets are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "omega_b_hz": 51.8e6, "kappa_hz": 15e6, "gamma_hz": 41e3, "g_hz": 1e3,
        "delta_a_hz": 51.8e6, "eps_c": 3000, "eps_p": 0, "eps_f": 0, "n": 1
    }"#;

    #[test]
    fn minimal_config_is_the_baseline() {
        let c = RunConfig::from_json(MINIMAL).unwrap();
        let b = SystemParams::<f64>::baseline();
        for (got, want) in [
            (c.params.omega_b, b.omega_b),
            (c.params.kappa, b.kappa),
            (c.params.gamma, b.gamma),
            (c.params.g, b.g),
            (c.params.delta_a, b.delta_a),
            (c.params.eps_c, b.eps_c),
            (c.params.delta_p, b.delta_p),
        ] {
            assert!((got - want).abs() <= 1e-15 * want.abs());
        }
        assert_eq!(c.solver, SolverSettings::default());
        assert_eq!(c.output, OutputPaths::default());
    }

    #[test]
    fn round_trips_through_json() {
        let mut c = Preset::Fig4b.config();
        c.solver.k_max = Some(80);
        c.solver.io_convention = IoConvention::Literal;
        let back = RunConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(back.solver, c.solver);
        assert_eq!(back.output, c.output);
        assert_eq!(back.params.n, 10);
        assert!((back.params.eps_f - c.params.eps_f).abs() <= 1e-12 * c.params.eps_f);
        assert!((back.params.omega_b - c.params.omega_b).abs() <= 1e-12 * c.params.omega_b);
    }

    #[test]
    fn rejects_bad_input() {
        let extra = |kv: &str| MINIMAL.replace("\"n\": 1", &format!("\"n\": 1, {kv}"));
        for bad in [
            MINIMAL.replace("\"n\": 1", "\"n\": 2.5"),
            MINIMAL.replace("\"n\": 1", "\"n\": 0"),
            MINIMAL.replace("\"n\": 1", "\"n\": -3"),
            MINIMAL.replace("\"kappa_hz\": 15e6", "\"kappa_hz\": -1"),
            extra("\"bogus\": 2"),
            extra("\"threshold_rel\": 2"),
            extra("\"steps_per_period\": 0"),
            "{".to_string(),
        ] {
            assert!(RunConfig::from_json(&bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn solver_keys_override_defaults() {
        let text = MINIMAL.replace(
            "\"n\": 1",
            "\"n\": 1, \"steps_per_period\": 400, \"record_periods\": 8, \"io_convention\": \"literal\", \"spectrum_path\": \"s.csv\"",
        );
        let c = RunConfig::from_json(&text).unwrap();
        assert_eq!(c.solver.steps_per_period, 400);
        assert_eq!(c.solver.record_periods, 8);
        assert_eq!(c.solver.io_convention, IoConvention::Literal);
        assert_eq!(c.output.spectrum, PathBuf::from("s.csv"));
    }

    #[test]
    fn presets_load_with_expected_drives() {
        let expect = [
            (Preset::Fig2a, 9.0, 0.0, 1),
            (Preset::Fig2b, 3e3, 0.0, 1),
            (Preset::Fig3a, 9.0, 0.9, 10),
            (Preset::Fig3b, 9.0, 0.9, 5),
            (Preset::Fig3c, 9.0, 0.9, 2),
            (Preset::Fig4a, 3e3, 90.0, 10),
            (Preset::Fig4b, 3e3, 600.0, 10),
            (Preset::Fig4c, 3e3, 1200.0, 10),
        ];
        for (preset, eps_p, eps_f, n) in expect {
            let c = preset.config();
            assert_eq!(Preset::from_name(preset.name()), Some(preset));
            assert!((c.params.eps_p - eps_p * AMPLITUDE_UNIT).abs() < 1e-3);
            assert!((c.params.eps_f - eps_f * AMPLITUDE_UNIT).abs() < 1e-3);
            assert_eq!(c.params.n, n);
        }
        assert!(RunConfig::preset("fig9z").is_err());
    }
}
