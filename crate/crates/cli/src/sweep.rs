//! Bias × broadening-width sweeps and occupation curves, as CSV.

use std::io::{self, Write};

use qdot_erasure::{
    check_bound, energy_scales, erasure_costs, occupation, unbroadened_occupation, Energy, NumericsConfig,
};
use rayon::prelude::*;

use crate::config::{DeviceSpec, KernelKind};
use crate::csv;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    /// μeV.
    pub bias: f64,
    pub hbar_gamma_tot: f64,
    pub w_bar: Energy,
    pub e_therm: f64,
    pub e_bias: f64,
    pub e_broad: Energy,
    pub bound_lower: Energy,
    pub bound_upper: Energy,
}

pub const SWEEP_HEADER: &str = "bias,hbar_gamma_tot,w_bar,e_therm,e_bias,e_broad,bound_lower,bound_upper";

/// `points` evenly spaced values on `[0, max]`; a single point is `0`.
pub fn axis(max: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![0.0];
    }
    (0..points).map(|i| max * i as f64 / (points - 1) as f64).collect()
}

/// Kernel family used along the width axis: Lorentzian if the device file
/// says so, Gaussian otherwise.
fn sweep_family(spec: &DeviceSpec) -> KernelKind {
    match spec.kernel {
        KernelKind::Lorentzian => KernelKind::Lorentzian,
        _ => KernelKind::Gaussian,
    }
}

pub fn sweep_point(spec: &DeviceSpec, bias: f64, width: f64, cfg: &NumericsConfig) -> qdot_erasure::Result<SweepRow> {
    let spec = DeviceSpec {
        kernel: sweep_family(spec),
        ..*spec
    };
    let sys = spec.system_with(bias, width)?;
    let costs = erasure_costs(&sys, cfg)?;
    let scales = energy_scales(&sys);
    let (bound_lower, bound_upper) = if costs.divergent {
        (Energy::Divergent, Energy::Divergent)
    } else {
        let b = check_bound(&costs, &scales)?;
        (b.lower.into(), b.upper.into())
    };
    Ok(SweepRow {
        bias,
        hbar_gamma_tot: width,
        w_bar: costs.w_bar,
        e_therm: scales.e_therm,
        e_bias: scales.e_bias,
        e_broad: scales.e_broad,
        bound_lower,
        bound_upper,
    })
}

/// Rows in bias-major order regardless of evaluation order.
pub fn sweep(
    spec: &DeviceSpec,
    bias_max: f64,
    width_max: f64,
    points: usize,
    cfg: &NumericsConfig,
) -> qdot_erasure::Result<Vec<SweepRow>> {
    for (name, v) in [("bias_max", bias_max), ("width_max", width_max)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(qdot_erasure::Error::Domain {
                name,
                reason: format!("must be finite and non-negative, got {v}"),
            });
        }
    }
    if points == 0 {
        return Err(qdot_erasure::Error::Domain {
            name: "points",
            reason: "must be at least 1".into(),
        });
    }
    let biases = axis(bias_max, points);
    let widths = axis(width_max, points);
    let grid: Vec<(f64, f64)> = biases
        .iter()
        .flat_map(|&b| widths.iter().map(move |&w| (b, w)))
        .collect();
    grid.par_iter().map(|&(b, w)| sweep_point(spec, b, w, cfg)).collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        out.write_all(
            csv::row(&[
                csv::real(r.bias),
                csv::real(r.hbar_gamma_tot),
                csv::energy(r.w_bar),
                csv::real(r.e_therm),
                csv::real(r.e_bias),
                csv::energy(r.e_broad),
                csv::energy(r.bound_lower),
                csv::energy(r.bound_upper),
            ])
            .as_bytes(),
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationRow {
    pub mu: f64,
    pub p_unbroadened: f64,
    pub p_broadened: f64,
}

pub fn occupation_curve(
    spec: &DeviceSpec,
    mu_min: f64,
    mu_max: f64,
    points: usize,
    cfg: &NumericsConfig,
) -> qdot_erasure::Result<Vec<OccupationRow>> {
    if points < 2 {
        return Err(qdot_erasure::Error::Domain {
            name: "points",
            reason: "must be at least 2".into(),
        });
    }
    if !(mu_min.is_finite() && mu_max.is_finite() && mu_min < mu_max) {
        return Err(qdot_erasure::Error::Domain {
            name: "mu_range",
            reason: format!("need finite mu_min < mu_max, got [{mu_min}, {mu_max}]"),
        });
    }
    let sys = spec.to_system()?;
    (0..points)
        .map(|i| {
            let mu = mu_min + (mu_max - mu_min) * i as f64 / (points - 1) as f64;
            Ok(OccupationRow {
                mu,
                p_unbroadened: unbroadened_occupation(mu, &sys),
                p_broadened: occupation(mu, &sys, cfg)?,
            })
        })
        .collect()
}

pub fn write_occupation_csv<W: Write>(rows: &[OccupationRow], mut out: W) -> io::Result<()> {
    writeln!(out, "mu,p_unbroadened,p_broadened")?;
    for r in rows {
        out.write_all(csv::row(&[csv::real(r.mu), csv::real(r.p_unbroadened), csv::real(r.p_broadened)]).as_bytes())?;
    }
    Ok(())
}
