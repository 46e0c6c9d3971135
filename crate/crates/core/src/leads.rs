//! Electrode Fermi-Dirac distributions and lifetime-broadening kernels.
//!
//! Temperatures are carried as thermal energies `k_B T`; zero is a valid
//! value and selects the exact step-function branch.

use std::f64::consts::{FRAC_1_PI, LN_2, PI};

use libm::erfc;

use crate::energy::Energy;
use crate::error::{Error, Result};
use crate::numerics::NumericsConfig;

/// One electrode: thermal energy `k_B T` and chemical potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadParams {
    thermal_energy: f64,
    chemical_potential: f64,
}

impl LeadParams {
    pub fn new(thermal_energy: f64, chemical_potential: f64) -> Result<Self> {
        if !(thermal_energy >= 0.0 && thermal_energy.is_finite()) {
            return Err(Error::domain(
                "thermal_energy",
                format!("must be finite and non-negative, got {thermal_energy}"),
            ));
        }
        if !chemical_potential.is_finite() {
            return Err(Error::domain("chemical_potential", "must be finite"));
        }
        Ok(LeadParams {
            thermal_energy,
            chemical_potential,
        })
    }

    pub fn thermal_energy(&self) -> f64 {
        self.thermal_energy
    }

    pub fn chemical_potential(&self) -> f64 {
        self.chemical_potential
    }

    pub fn is_zero_temperature(&self) -> bool {
        self.thermal_energy == 0.0
    }

    /// Mean absolute deviation of the lead's derivative density, `2 ln2 k_B T`.
    pub fn derivative_mad(&self) -> f64 {
        2.0 * LN_2 * self.thermal_energy
    }
}

/// Fermi-Dirac occupation `1 / (1 + exp((ε - μ) / k_B T))`.
///
/// At zero temperature this is the step `1` below `μ`, `0` above, `1/2` at `μ`.
pub fn fermi_occupation(energy: f64, lead: &LeadParams) -> f64 {
    let offset = energy - lead.chemical_potential;
    if lead.thermal_energy == 0.0 {
        return match offset.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Less) => 1.0,
            Some(std::cmp::Ordering::Greater) => 0.0,
            _ => 0.5,
        };
    }
    let x = offset / lead.thermal_energy;
    if x >= 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// `-d f / d μ_dot`, the logistic density centred on the lead's chemical potential.
pub fn fermi_derivative_density(energy: f64, lead: &LeadParams) -> Result<f64> {
    if lead.thermal_energy == 0.0 {
        return Err(Error::ZeroTemperature);
    }
    let beta = 1.0 / lead.thermal_energy;
    let e = (-((energy - lead.chemical_potential) * beta).abs()).exp();
    Ok(beta * e / ((1.0 + e) * (1.0 + e)))
}

/// Lifetime-broadening distribution of the dot level, symmetric with median 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BroadeningKernel {
    Delta,
    /// Standard deviation `sigma`.
    Gaussian {
        sigma: f64,
    },
    /// Half width at half maximum `scale`.
    Lorentzian {
        scale: f64,
    },
}

impl BroadeningKernel {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        check_width("sigma", sigma)?;
        Ok(BroadeningKernel::Gaussian { sigma })
    }

    pub fn lorentzian(scale: f64) -> Result<Self> {
        check_width("scale", scale)?;
        Ok(BroadeningKernel::Lorentzian { scale })
    }

    /// Width parameter (`ħΓ_tot` for the physical kernels); zero for `Delta`.
    pub fn width(&self) -> f64 {
        match *self {
            BroadeningKernel::Delta => 0.0,
            BroadeningKernel::Gaussian { sigma } => sigma,
            BroadeningKernel::Lorentzian { scale } => scale,
        }
    }

    /// Half-width of the region outside of which the kernel is negligible,
    /// or `None` when its tails are algebraic.
    pub fn support_radius(&self, cfg: &NumericsConfig) -> Option<f64> {
        match *self {
            BroadeningKernel::Delta => Some(0.0),
            BroadeningKernel::Gaussian { sigma } => Some(cfg.tail_cutoff_gaussian * sigma),
            BroadeningKernel::Lorentzian { .. } => None,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match *self {
            BroadeningKernel::Delta => Ok(()),
            BroadeningKernel::Gaussian { sigma } => check_width("sigma", sigma),
            BroadeningKernel::Lorentzian { scale } => check_width("scale", scale),
        }
    }
}

fn check_width(name: &'static str, w: f64) -> Result<()> {
    if w > 0.0 && w.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(name, format!("must be positive and finite, got {w}")))
    }
}

pub fn kernel_density(x: f64, kernel: &BroadeningKernel) -> Result<f64> {
    match *kernel {
        BroadeningKernel::Delta => Err(Error::DeltaKernel),
        BroadeningKernel::Gaussian { sigma } => {
            let z = x / sigma;
            Ok((-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt()))
        }
        BroadeningKernel::Lorentzian { scale } => Ok(scale / (PI * (scale * scale + x * x))),
    }
}

/// Kernel cumulative distribution `P(X ≤ x)`. The delta kernel gives the
/// step with value `1/2` at the origin.
pub fn kernel_cdf(x: f64, kernel: &BroadeningKernel) -> f64 {
    kernel_survival(-x, kernel)
}

/// Upper tail `P(X > x)`, evaluated without cancellation.
pub fn kernel_survival(x: f64, kernel: &BroadeningKernel) -> f64 {
    match *kernel {
        BroadeningKernel::Delta => {
            if x < 0.0 {
                1.0
            } else if x > 0.0 {
                0.0
            } else {
                0.5
            }
        }
        BroadeningKernel::Gaussian { sigma } => 0.5 * erfc(x / (sigma * std::f64::consts::SQRT_2)),
        BroadeningKernel::Lorentzian { scale } => {
            if x > 0.0 {
                FRAC_1_PI * (scale / x).atan()
            } else {
                0.5 - FRAC_1_PI * (x / scale).atan()
            }
        }
    }
}

/// Mean absolute deviation of the kernel about its median.
pub fn kernel_mad(kernel: &BroadeningKernel) -> Energy {
    match *kernel {
        BroadeningKernel::Delta => Energy::Finite(0.0),
        BroadeningKernel::Gaussian { sigma } => Energy::Finite(sigma * (2.0 / PI).sqrt()),
        BroadeningKernel::Lorentzian { .. } => Energy::Divergent,
    }
}

/// Upper-tail quantile: the `x` with `P(X > x) = p`.
pub fn kernel_quantile(p: f64, kernel: &BroadeningKernel) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("p", format!("must lie in (0, 1), got {p}")));
    }
    match *kernel {
        BroadeningKernel::Delta => Err(Error::DeltaKernel),
        BroadeningKernel::Lorentzian { scale } => Ok(scale * (PI * (0.5 - p)).tan()),
        BroadeningKernel::Gaussian { sigma } => Ok(sigma * standard_normal_upper_quantile(p)),
    }
}

/// Bisection on the normal survival function.
fn standard_normal_upper_quantile(p: f64) -> f64 {
    if p == 0.5 {
        return 0.0;
    }
    let survival = |z: f64| 0.5 * erfc(z / std::f64::consts::SQRT_2);
    let (mut lo, mut hi) = (-1.0, 1.0);
    while survival(lo) < p {
        lo *= 2.0;
    }
    while survival(hi) > p {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if survival(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
