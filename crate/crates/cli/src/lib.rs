//! Front end for the `qdot-erasure` command: device files in laboratory
//! units, analysis reports, CSV sweeps and trajectories, and the MAD lemma
//! property suite.

pub mod analyze;
pub mod config;
pub mod csv;
pub mod lemmas;
pub mod protocol;
pub mod sweep;
pub mod units;

use qdot_erasure::NumericsConfig;
use thiserror::Error;

pub use config::{ConfigError, DeviceSpec, KernelKind, ParseError, ValidationError};

/// Environment variable overriding the quadrature relative tolerance.
pub const RTOL_ENV: &str = "ERASURE_NUMERICS_RTOL";

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Model(#[from] qdot_erasure::Error),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for anything the user can fix in the input, 1 for failed computations.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Model(qdot_erasure::Error::Domain { .. }) => 2,
            CliError::Model(_) => 1,
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

/// Default numerics, with `rel_tol` taken from the environment when set.
pub fn numerics_config() -> Result<NumericsConfig, CliError> {
    numerics_config_from(std::env::var(RTOL_ENV).ok().as_deref())
}

pub fn numerics_config_from(rtol: Option<&str>) -> Result<NumericsConfig, CliError> {
    let cfg = NumericsConfig::default();
    let Some(text) = rtol else {
        return Ok(cfg);
    };
    let value: f64 = text
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{RTOL_ENV}=`{text}` is not a number")))?;
    let cfg = cfg.with_rel_tol(value);
    cfg.validate()?;
    Ok(cfg)
}
