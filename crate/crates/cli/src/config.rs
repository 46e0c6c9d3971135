//! Device description files: one `key = value` per line, `#` starts a comment.
//!
//! ```text
//! temperature = 40m        # K, sets both electrodes
//! bias = 200               # μeV
//! rate_source = 6.3G       # Hz
//! rate_drain = 250G
//! kernel = gaussian
//! ```
//!
//! Numbers accept an SI prefix suffix (`f p n u µ μ m k M G T`).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use qdot_erasure::{BroadeningKernel, DotSystem, LeadParams, TunnelRates};
use thiserror::Error;

use crate::units;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Delta,
    Gaussian,
    Lorentzian,
}

impl KernelKind {
    /// Kernel of this family with width `w`; zero width is always the delta kernel.
    pub fn with_width(self, w: f64) -> qdot_erasure::Result<BroadeningKernel> {
        match self {
            _ if w == 0.0 => Ok(BroadeningKernel::Delta),
            KernelKind::Delta => Ok(BroadeningKernel::Delta),
            KernelKind::Gaussian => BroadeningKernel::gaussian(w),
            KernelKind::Lorentzian => BroadeningKernel::lorentzian(w),
        }
    }
}

impl FromStr for KernelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "delta" => Ok(KernelKind::Delta),
            "gaussian" => Ok(KernelKind::Gaussian),
            "lorentzian" => Ok(KernelKind::Lorentzian),
            other => Err(format!(
                "unknown kernel `{other}` (expected delta, gaussian or lorentzian)"
            )),
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelKind::Delta => "delta",
            KernelKind::Gaussian => "gaussian",
            KernelKind::Lorentzian => "lorentzian",
        })
    }
}

/// A device in laboratory units. `μ_D = 0`; `bias` is `μ_S` in μeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceSpec {
    /// Kelvin.
    pub temperature_source: f64,
    pub temperature_drain: f64,
    /// μeV.
    pub bias: f64,
    /// Hz.
    pub rate_source: f64,
    pub rate_drain: f64,
    pub kernel: KernelKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the file as a whole.
    pub line: usize,
    pub field: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid {field}: {reason}")]
pub struct ValidationError {
    pub field: &'static str,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

const KEYS: [&str; 7] = [
    "temperature",
    "temperature_source",
    "temperature_drain",
    "bias",
    "rate_source",
    "rate_drain",
    "kernel",
];

/// Parses a number with an optional trailing SI prefix.
pub fn parse_number(text: &str) -> Option<f64> {
    let text = text.trim();
    if let Ok(v) = text.parse::<f64>() {
        return Some(v);
    }
    let last = text.chars().last()?;
    let factor = match last {
        'f' => 1e-15,
        'p' => 1e-12,
        'n' => 1e-9,
        'u' | 'µ' | 'μ' => 1e-6,
        'm' => 1e-3,
        'k' => 1e3,
        'M' => 1e6,
        'G' => 1e9,
        'T' => 1e12,
        _ => return None,
    };
    let mantissa = text[..text.len() - last.len_utf8()].trim_end();
    mantissa.parse::<f64>().ok().map(|v| v * factor)
}

impl FromStr for DeviceSpec {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, ConfigError> {
        let mut values: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ParseError {
                    line,
                    field: None,
                    message: format!("expected `key = value`, found `{content}`"),
                }
                .into());
            };
            let (key, value) = (key.trim(), value.trim());
            let Some(known) = KEYS.iter().find(|k| **k == key) else {
                return Err(ParseError {
                    line,
                    field: Some(key.to_string()),
                    message: format!("unknown key `{key}`"),
                }
                .into());
            };
            if values.insert(known, (line, value)).is_some() {
                return Err(ParseError {
                    line,
                    field: Some(key.to_string()),
                    message: format!("duplicate key `{key}`"),
                }
                .into());
            }
        }

        let number = |key: &str| -> Result<Option<f64>, ParseError> {
            let Some(&(line, value)) = values.get(key) else {
                return Ok(None);
            };
            parse_number(value).map(Some).ok_or_else(|| ParseError {
                line,
                field: Some(key.to_string()),
                message: format!("`{value}` is not a number"),
            })
        };
        let required = |key: &'static str, value: Option<f64>| -> Result<f64, ParseError> {
            value.ok_or_else(|| ParseError {
                line: 0,
                field: Some(key.to_string()),
                message: format!("missing key `{key}`"),
            })
        };

        let shared = number("temperature")?;
        for key in ["temperature_source", "temperature_drain"] {
            if shared.is_some() && values.contains_key(key) {
                let line = values[key].0;
                return Err(ParseError {
                    line,
                    field: Some(key.to_string()),
                    message: format!("`{key}` conflicts with `temperature`"),
                }
                .into());
            }
        }
        let temperature_source = required("temperature_source", number("temperature_source")?.or(shared))?;
        let temperature_drain = required("temperature_drain", number("temperature_drain")?.or(shared))?;
        let bias = required("bias", number("bias")?)?;
        let rate_source = required("rate_source", number("rate_source")?)?;
        let rate_drain = required("rate_drain", number("rate_drain")?)?;
        let kernel = match values.get("kernel") {
            None => {
                return Err(ParseError {
                    line: 0,
                    field: Some("kernel".into()),
                    message: "missing key `kernel`".into(),
                }
                .into())
            }
            Some(&(line, value)) => value.parse().map_err(|message| ParseError {
                line,
                field: Some("kernel".into()),
                message,
            })?,
        };

        let spec = DeviceSpec {
            temperature_source,
            temperature_drain,
            bias,
            rate_source,
            rate_drain,
            kernel,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl DeviceSpec {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        text.parse()
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        let checks = [
            ("temperature_source", self.temperature_source),
            ("temperature_drain", self.temperature_drain),
            ("bias", self.bias),
            ("rate_source", self.rate_source),
            ("rate_drain", self.rate_drain),
        ];
        for (field, v) in checks {
            if !(v.is_finite() && v >= 0.0) {
                return Err(ValidationError {
                    field,
                    reason: format!("must be finite and non-negative, got {v}"),
                });
            }
        }
        if self.rate_source + self.rate_drain <= 0.0 {
            return Err(ValidationError {
                field: "rate_drain",
                reason: "total tunnelling rate must be positive".into(),
            });
        }
        Ok(())
    }

    pub fn rate_total(&self) -> f64 {
        self.rate_source + self.rate_drain
    }

    /// `ħΓ_tot` in μeV.
    pub fn hbar_gamma_tot(&self) -> f64 {
        units::rate_energy(self.rate_total())
    }

    /// Core model in μeV with `μ_D = 0` and kernel width `ħΓ_tot`.
    pub fn to_system(&self) -> qdot_erasure::Result<DotSystem> {
        self.system_with(self.bias, self.hbar_gamma_tot())
    }

    /// Same temperatures and tunnelling ratio with another bias and kernel width (μeV).
    pub fn system_with(&self, bias: f64, width: f64) -> qdot_erasure::Result<DotSystem> {
        DotSystem::new(
            LeadParams::new(units::thermal_energy(self.temperature_source), bias)?,
            LeadParams::new(units::thermal_energy(self.temperature_drain), 0.0)?,
            TunnelRates::new(self.rate_source, self.rate_drain)?,
            self.kernel.with_width(width)?,
        )
    }
}
