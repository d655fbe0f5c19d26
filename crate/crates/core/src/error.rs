use thiserror::Error;

/// Errors produced by the simulator, the spectral analysis and the CLI plumbing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("integration diverged at t = {t:e} s (non-finite state)")]
    Divergence { t: f64 },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("resolution guard violated: dt*omega_b = {dt_omega_b} (must be < 0.1)")]
    Resolution { dt_omega_b: f64 },

    #[error("recording window is not an integer number of fundamental periods: {0}")]
    NonCommensurateWindow(String),

    #[error("spectrum has no line with non-zero amplitude")]
    EmptySpectrum,

    #[error("presence threshold must lie in (0, 1), got {0}")]
    InvalidThreshold(f64),

    #[error("singular linear response system")]
    SingularSystem,

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }

    /// Short machine-readable tag for the CLI's error line.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParam { .. } => "invalid_param",
            Error::Divergence { .. } => "divergence",
            Error::InvalidGrid(_) => "invalid_grid",
            Error::Resolution { .. } => "resolution_guard",
            Error::NonCommensurateWindow(_) => "non_commensurate_window",
            Error::EmptySpectrum => "empty_spectrum",
            Error::InvalidThreshold(_) => "invalid_threshold",
            Error::SingularSystem => "singular_system",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
