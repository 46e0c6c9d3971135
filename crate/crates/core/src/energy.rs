use std::fmt;

/// An energy that may be infinite, as happens for exact erasure under
/// Lorentzian broadening.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Energy {
    Finite(f64),
    Divergent,
}

impl Energy {
    pub fn finite(self) -> Option<f64> {
        match self {
            Energy::Finite(v) => Some(v),
            Energy::Divergent => None,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, Energy::Divergent)
    }
}

impl From<f64> for Energy {
    fn from(v: f64) -> Self {
        Energy::Finite(v)
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Energy::Finite(v) => write!(f, "{v}"),
            Energy::Divergent => f.write_str("divergent"),
        }
    }
}
