//! Work cost of the optimal (reversible) erasure protocols and the energy
//! scales that bound their average.
//!
//! Erasure to zero raises the level quasistatically from `μ_½` to `+∞` and
//! quenches it back, costing `W⁰ = ∫_{μ_½}^∞ p dμ`. Erasure to one mirrors
//! it downwards, costing `W¹ = ∫_{-∞}^{μ_½} (1 - p) dμ`. The average
//! `W̄ = (W⁰ + W¹)/2` also equals half the mean absolute deviation of
//! `-dp/dμ` about `μ_½`; both routes are evaluated and compared.

use std::f64::consts::{LN_2, PI};

use crate::dot::{half_occupation_level, occupation, DotSystem};
use crate::energy::Energy;
use crate::error::{Error, Result};
use crate::leads::{kernel_mad, BroadeningKernel};
use crate::numerics::{find_root, integrate_with_breakpoints, NumericsConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErasureCosts {
    pub w_zero: Energy,
    pub w_one: Energy,
    pub w_bar: Energy,
    pub mu_half: f64,
    /// `μ_½` sits on a plateau at exactly `p = 1/2` and was taken as its midpoint.
    pub ambiguous_median: bool,
    pub divergent: bool,
    /// `½ ∫ |μ - μ_½| p'(μ) dμ`, evaluated independently of `W⁰` and `W¹`.
    pub w_bar_mad: Energy,
    /// Relative difference between `w_bar` and `w_bar_mad`; zero when divergent.
    pub mad_discrepancy: f64,
}

/// Thermal, bias and broadening energy scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyScales {
    pub e_therm: f64,
    pub e_bias: f64,
    pub e_broad: Energy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub w_bar: f64,
    /// `max(E_therm, E_bias, E_broad)`
    pub lower: f64,
    /// `E_therm + E_bias + E_broad`
    pub upper: f64,
    pub satisfied: bool,
    /// `(W̄ - lower, upper - W̄)`
    pub margins: (f64, f64),
}

/// Relative slack allowed when comparing the quadrature-derived `W̄` with the
/// closed-form scales.
pub const BOUND_SLACK: f64 = 1e-9;

pub fn energy_scales(sys: &DotSystem) -> EnergyScales {
    let gamma_s = sys.rates().gamma_source();
    let gamma_d = sys.rates().gamma_drain();
    let e_therm = LN_2 * (gamma_s * sys.source().thermal_energy() + gamma_d * sys.drain().thermal_energy());
    let e_bias = 0.5 * gamma_s.min(gamma_d) * sys.bias();
    let e_broad = match kernel_mad(sys.kernel()) {
        Energy::Finite(d) => Energy::Finite(0.5 * d),
        Energy::Divergent => Energy::Divergent,
    };
    EnergyScales {
        e_therm,
        e_bias,
        e_broad,
    }
}

pub fn erasure_costs(sys: &DotSystem, cfg: &NumericsConfig) -> Result<ErasureCosts> {
    let half = half_occupation_level(sys, cfg)?;
    let mu_half = half.mu;

    if matches!(sys.kernel(), BroadeningKernel::Lorentzian { .. }) {
        return Ok(ErasureCosts {
            w_zero: Energy::Divergent,
            w_one: Energy::Divergent,
            w_bar: Energy::Divergent,
            mu_half,
            ambiguous_median: half.ambiguous,
            divergent: true,
            w_bar_mad: Energy::Divergent,
            mad_discrepancy: 0.0,
        });
    }

    let (w_zero, w_one, w_bar_mad) = if sys.is_fully_atomic() {
        staircase_costs(sys, mu_half)
    } else {
        quadrature_costs(sys, mu_half, cfg)?
    };
    let w_bar = 0.5 * (w_zero + w_one);
    let mad_discrepancy = if w_bar > 0.0 {
        (w_bar - w_bar_mad).abs() / w_bar
    } else {
        (w_bar - w_bar_mad).abs()
    };

    Ok(ErasureCosts {
        w_zero: w_zero.into(),
        w_one: w_one.into(),
        w_bar: w_bar.into(),
        mu_half,
        ambiguous_median: half.ambiguous,
        divergent: false,
        w_bar_mad: w_bar_mad.into(),
        mad_discrepancy,
    })
}

/// Exact costs when `p(μ) = Σ γ_ν H(μ_ν - μ)`.
fn staircase_costs(sys: &DotSystem, mu_half: f64) -> (f64, f64, f64) {
    let mut w_zero = 0.0;
    let mut w_one = 0.0;
    let mut mad = 0.0;
    for (w, lead) in sys.weighted_leads() {
        let d = lead.chemical_potential() - mu_half;
        w_zero += w * d.max(0.0);
        w_one += w * (-d).max(0.0);
        mad += w * d.abs();
    }
    (w_zero, w_one, 0.5 * mad)
}

fn quadrature_costs(sys: &DotSystem, mu_half: f64, cfg: &NumericsConfig) -> Result<(f64, f64, f64)> {
    let extent = sys.tail_extent(cfg).ok_or(Error::DivergentTail)?;
    let upper = sys.source().chemical_potential() + extent;
    let lower = sys.drain().chemical_potential() - extent;
    let local = cfg.at_scale(sys.dominant_scale());
    let breaks = sys.breakpoints();

    let p = |m: f64| occupation(m, sys, cfg).unwrap_or(f64::NAN);
    let w_zero = if mu_half < upper {
        integrate_with_breakpoints(p, mu_half, upper, &breaks, &local)?.value
    } else {
        0.0
    };
    let w_one = if mu_half > lower {
        integrate_with_breakpoints(|m| 1.0 - p(m), lower, mu_half, &breaks, &local)?.value
    } else {
        0.0
    };

    // Zero-temperature leads without broadening contribute point masses to p'.
    let atomic =
        |lead: &crate::leads::LeadParams| matches!(sys.kernel(), BroadeningKernel::Delta) && lead.is_zero_temperature();
    let mut atoms = 0.0;
    for (w, lead) in sys.weighted_leads() {
        if atomic(lead) {
            atoms += w * (lead.chemical_potential() - mu_half).abs();
        }
    }
    let density = |m: f64| -> f64 {
        let mut d = 0.0;
        for (w, lead) in sys.weighted_leads() {
            if w > 0.0 && !atomic(lead) {
                d += w * crate::dot::broadened_lead_density(m, lead, sys.kernel(), cfg).unwrap_or(f64::NAN);
            }
        }
        d
    };
    let mad_breaks = [breaks[0], breaks[1], mu_half];
    let continuous =
        integrate_with_breakpoints(|m| (m - mu_half).abs() * density(m), lower, upper, &mad_breaks, &local)?.value;

    Ok((w_zero, w_one, 0.5 * (continuous + atoms)))
}

/// Checks `max(E_therm, E_bias, E_broad) ≤ W̄ ≤ E_therm + E_bias + E_broad`.
pub fn check_bound(costs: &ErasureCosts, scales: &EnergyScales) -> Result<BoundReport> {
    let w_bar = costs.w_bar.finite().ok_or(Error::DivergentInput)?;
    let e_broad = scales.e_broad.finite().ok_or(Error::DivergentInput)?;
    let lower = scales.e_therm.max(scales.e_bias).max(e_broad);
    let upper = scales.e_therm + scales.e_bias + e_broad;
    let slack = BOUND_SLACK * upper;
    Ok(BoundReport {
        w_bar,
        lower,
        upper,
        satisfied: lower - slack <= w_bar && w_bar <= upper + slack,
        margins: (w_bar - lower, upper - w_bar),
    })
}

/// Work of approximate erasure to occupation `η` (and `1 - η`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaErasure {
    pub eta: f64,
    pub mu_half: f64,
    /// Level where `p = η`.
    pub mu_zero: f64,
    pub w_zero: f64,
    /// Level where `p = 1 - η`.
    pub mu_one: f64,
    pub w_one: f64,
    pub w_bar: f64,
    /// `(ħΓ/2π) ln sec²(π(½ - η))`, available for a cold, unbiased Lorentzian device.
    pub closed_form: Option<f64>,
}

/// Relative agreement demanded between the closed form and the numeric path.
pub const ETA_CROSS_CHECK_TOL: f64 = 1e-8;

/// `(w/2π) ln sec²(π(½ - η))`, written as `-(w/π) ln sin(πη)`.
pub fn lorentzian_eta_closed_form(scale: f64, eta: f64) -> f64 {
    -(scale / PI) * (PI * eta).sin().ln()
}

pub fn eta_erasure_work(sys: &DotSystem, eta: f64, cfg: &NumericsConfig) -> Result<f64> {
    Ok(eta_erasure(sys, eta, cfg)?.w_zero)
}

/// Raise quasistatically from `μ_½` until `p = η`, then quench back; and the
/// mirrored protocol down to `p = 1 - η`.
pub fn eta_erasure(sys: &DotSystem, eta: f64, cfg: &NumericsConfig) -> Result<EtaErasure> {
    if !(eta > 0.0 && eta < 0.5) {
        return Err(Error::domain("eta", format!("must lie in (0, 1/2), got {eta}")));
    }
    let mu_half = half_occupation_level(sys, cfg)?.mu;
    let scale = sys.dominant_scale();
    let local = cfg.at_scale(scale);
    let breaks = sys.breakpoints();
    let p = |m: f64| occupation(m, sys, cfg).unwrap_or(f64::NAN);

    let mut hi = sys.source().chemical_potential().max(mu_half) + scale;
    let mut step = scale;
    while p(hi) >= eta {
        step *= 2.0;
        hi += step;
        if !hi.is_finite() {
            return Err(Error::domain("eta", "occupation never falls to eta"));
        }
    }
    let mu_zero = find_root(|m| p(m) - eta, mu_half, hi, &local)?;
    let raise = integrate_with_breakpoints(p, mu_half, mu_zero, &breaks, &local)?.value;
    let w_zero = raise - (mu_zero - mu_half) * p(mu_zero);

    let mut lo = sys.drain().chemical_potential().min(mu_half) - scale;
    let mut step = scale;
    while 1.0 - p(lo) >= eta {
        step *= 2.0;
        lo -= step;
        if !lo.is_finite() {
            return Err(Error::domain("eta", "occupation never rises to 1 - eta"));
        }
    }
    let mu_one = find_root(|m| p(m) - (1.0 - eta), lo, mu_half, &local)?;
    let lower = integrate_with_breakpoints(|m| 1.0 - p(m), mu_one, mu_half, &breaks, &local)?.value;
    let w_one = lower - (mu_half - mu_one) * (1.0 - p(mu_one));

    let closed_form = match *sys.kernel() {
        BroadeningKernel::Lorentzian { scale }
            if sys.bias() == 0.0 && sys.source().is_zero_temperature() && sys.drain().is_zero_temperature() =>
        {
            let closed = lorentzian_eta_closed_form(scale, eta);
            if (closed - w_zero).abs() > ETA_CROSS_CHECK_TOL * closed.abs() {
                return Err(Error::CrossCheck {
                    closed_form: closed,
                    numeric: w_zero,
                });
            }
            Some(closed)
        }
        _ => None,
    };

    Ok(EtaErasure {
        eta,
        mu_half,
        mu_zero,
        w_zero,
        mu_one,
        w_one,
        w_bar: 0.5 * (w_zero + w_one),
        closed_form,
    })
}
