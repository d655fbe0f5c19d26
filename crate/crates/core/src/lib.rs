//! Mean-field simulation of a cavity optomechanical system driven by a strong
//! control and two weak probes, with extraction and classification of the
//! resulting sideband comb.
//!
//! The numerical core is generic over [`scalar::Real`] (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod config;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod linalg;
pub mod linear_oracle;
pub mod model;
pub mod pipeline;
pub mod scalar;
pub mod spectrum;
pub mod steady_state;
pub mod sweep;

pub use config::{Preset, RunConfig};
pub use error::{Error, Result};
pub use pipeline::{simulate, SolverSettings};
pub use spectrum::{IoConvention, LineKind};
pub use sweep::{sweep, SweepAxis, SweepSpec};

pub type Params = model::SystemParams<f64>;
pub type State = dynamics::FieldState<f64>;
pub type Trajectory = dynamics::Trajectory<f64>;
pub type Branch = steady_state::SteadyBranch<f64>;
pub type Spectrum = spectrum::CombSpectrum<f64>;
pub type Metrics = spectrum::CombMetrics<f64>;
pub type Run = pipeline::RunOutput<f64>;
pub type Linear = linear_oracle::LinearResponse<f64>;
