//! Device analysis: erasure costs, energy scales and the bound check, as an
//! aligned table followed by a `key: value` section.

use std::fmt::Write;

use qdot_erasure::{
    check_bound, energy_scales, erasure_costs, eta_erasure, BoundReport, BroadeningKernel, Energy, EnergyScales,
    ErasureCosts, EtaErasure, NumericsConfig,
};

use crate::config::DeviceSpec;
use crate::units;

/// Approximate-erasure thresholds reported when exact erasure diverges.
pub const DEFAULT_ETAS: [f64; 3] = [0.1, 0.01, 0.001];

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub spec: DeviceSpec,
    /// μeV.
    pub thermal_energy_source: f64,
    pub thermal_energy_drain: f64,
    pub gamma_source: f64,
    pub gamma_drain: f64,
    pub hbar_gamma_tot: f64,
    pub costs: ErasureCosts,
    pub scales: EnergyScales,
    /// `None` when the costs diverge.
    pub bound: Option<BoundReport>,
    pub eta: Vec<EtaErasure>,
}

impl AnalysisReport {
    /// Whether the computed `W̄` respects the scale sandwich (vacuous when divergent).
    pub fn bound_holds(&self) -> bool {
        self.bound.is_none_or(|b| b.satisfied)
    }

    /// Machine-readable section, one `key: value` per line.
    pub fn entries(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut push = |k: &str, v: String| out.push((k.to_string(), v));
        let rate_tot = units::rate(self.hbar_gamma_tot);
        push(
            "temperature_source",
            units::temperature(self.thermal_energy_source).to_string(),
        );
        push(
            "temperature_drain",
            units::temperature(self.thermal_energy_drain).to_string(),
        );
        push("bias", self.spec.bias.to_string());
        push("rate_source", (self.gamma_source * rate_tot).to_string());
        push("rate_drain", (self.gamma_drain * rate_tot).to_string());
        push("kernel", self.spec.kernel.to_string());
        push("thermal_energy_source", self.thermal_energy_source.to_string());
        push("thermal_energy_drain", self.thermal_energy_drain.to_string());
        push("gamma_source", self.gamma_source.to_string());
        push("gamma_drain", self.gamma_drain.to_string());
        push("hbar_gamma_tot", self.hbar_gamma_tot.to_string());
        push("mu_half", self.costs.mu_half.to_string());
        push("mu_half_ambiguous", self.costs.ambiguous_median.to_string());
        push("divergent", self.costs.divergent.to_string());
        push("w_zero", self.costs.w_zero.to_string());
        push("w_one", self.costs.w_one.to_string());
        push("w_bar", self.costs.w_bar.to_string());
        push("w_bar_mad", self.costs.w_bar_mad.to_string());
        push("e_therm", self.scales.e_therm.to_string());
        push("e_bias", self.scales.e_bias.to_string());
        push("e_broad", self.scales.e_broad.to_string());
        match &self.bound {
            Some(b) => {
                push("bound_lower", b.lower.to_string());
                push("bound_upper", b.upper.to_string());
                push("bound_satisfied", b.satisfied.to_string());
            }
            None => {
                push("bound_lower", "divergent".into());
                push("bound_upper", "divergent".into());
                push("bound_satisfied", "true".into());
            }
        }
        for e in &self.eta {
            push(&format!("eta_{}_w_zero", e.eta), e.w_zero.to_string());
            push(&format!("eta_{}_w_one", e.eta), e.w_one.to_string());
            push(&format!("eta_{}_w_bar", e.eta), e.w_bar.to_string());
            if let Some(c) = e.closed_form {
                push(&format!("eta_{}_closed_form", e.eta), c.to_string());
            }
        }
        out
    }

    pub fn render_machine(&self) -> String {
        self.entries().into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }

    pub fn render_table(&self) -> String {
        let mut s = String::new();
        let energy = |e: Energy| match e {
            Energy::Finite(v) => format!("{v:>14.6} μeV"),
            Energy::Divergent => format!("{:>14}", "divergent (Lorentzian exact erasure)"),
        };
        let line = |s: &mut String, label: &str, value: String| {
            let _ = writeln!(s, "  {label:<28}{value}");
        };
        let _ = writeln!(s, "device");
        line(
            &mut s,
            "temperature source / drain",
            format!("{} K / {} K", self.spec.temperature_source, self.spec.temperature_drain),
        );
        line(&mut s, "bias", format!("{} μeV", self.spec.bias));
        line(
            &mut s,
            "rates source / drain",
            format!("{:e} Hz / {:e} Hz", self.spec.rate_source, self.spec.rate_drain),
        );
        line(&mut s, "kernel", self.spec.kernel.to_string());
        line(
            &mut s,
            "k_B T source / drain",
            format!(
                "{:.6} μeV / {:.6} μeV",
                self.thermal_energy_source, self.thermal_energy_drain
            ),
        );
        line(
            &mut s,
            "gamma source / drain",
            format!("{:.6} / {:.6}", self.gamma_source, self.gamma_drain),
        );
        line(&mut s, "hbar Gamma_tot", format!("{:.6e} μeV", self.hbar_gamma_tot));
        let _ = writeln!(s, "erasure");
        let ambiguous = if self.costs.ambiguous_median {
            " (plateau midpoint)"
        } else {
            ""
        };
        line(&mut s, "mu_1/2", format!("{:>14.6} μeV{ambiguous}", self.costs.mu_half));
        line(&mut s, "W0 (erase to 0)", energy(self.costs.w_zero));
        line(&mut s, "W1 (erase to 1)", energy(self.costs.w_one));
        line(&mut s, "W average", energy(self.costs.w_bar));
        line(&mut s, "W average from MAD", energy(self.costs.w_bar_mad));
        let _ = writeln!(s, "scales");
        line(&mut s, "E_therm", energy(self.scales.e_therm.into()));
        line(&mut s, "E_bias", energy(self.scales.e_bias.into()));
        line(&mut s, "E_broad", energy(self.scales.e_broad));
        if let Some(b) = &self.bound {
            line(
                &mut s,
                "max(E) <= W <= sum(E)",
                format!(
                    "{:.6} <= {:.6} <= {:.6}  {}",
                    b.lower,
                    b.w_bar,
                    b.upper,
                    if b.satisfied { "satisfied" } else { "VIOLATED" }
                ),
            );
        }
        if !self.eta.is_empty() {
            let _ = writeln!(s, "approximate erasure");
            let _ = writeln!(
                s,
                "  {:<10}{:>18}{:>18}{:>18}",
                "eta", "W0 [μeV]", "W1 [μeV]", "W avg [μeV]"
            );
            for e in &self.eta {
                let _ = writeln!(s, "  {:<10}{:>18.6}{:>18.6}{:>18.6}", e.eta, e.w_zero, e.w_one, e.w_bar);
            }
        }
        s
    }
}

/// Runs the erasure analysis. Approximate-erasure rows are produced for
/// `etas`, or for [`DEFAULT_ETAS`] when none are given and the kernel is
/// Lorentzian.
pub fn analyze(spec: &DeviceSpec, etas: &[f64], cfg: &NumericsConfig) -> qdot_erasure::Result<AnalysisReport> {
    let sys = spec.to_system()?;
    let costs = erasure_costs(&sys, cfg)?;
    let scales = energy_scales(&sys);
    let bound = if costs.divergent {
        None
    } else {
        Some(check_bound(&costs, &scales)?)
    };
    let etas: Vec<f64> = if etas.is_empty() && matches!(sys.kernel(), BroadeningKernel::Lorentzian { .. }) {
        DEFAULT_ETAS.to_vec()
    } else {
        etas.to_vec()
    };
    let eta = etas
        .iter()
        .map(|&e| eta_erasure(&sys, e, cfg))
        .collect::<qdot_erasure::Result<Vec<_>>>()?;
    Ok(AnalysisReport {
        spec: *spec,
        thermal_energy_source: sys.source().thermal_energy(),
        thermal_energy_drain: sys.drain().thermal_energy(),
        gamma_source: sys.rates().gamma_source(),
        gamma_drain: sys.rates().gamma_drain(),
        hbar_gamma_tot: spec.hbar_gamma_tot(),
        costs,
        scales,
        bound,
        eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::KernelKind;

    fn landauer() -> DeviceSpec {
        DeviceSpec {
            temperature_source: 1.0,
            temperature_drain: 1.0,
            bias: 0.0,
            rate_source: 1.0,
            rate_drain: 1.0,
            kernel: KernelKind::Delta,
        }
    }

    #[test]
    fn landauer_report() {
        let r = analyze(&landauer(), &[], &NumericsConfig::default()).unwrap();
        let expected = units::thermal_energy(1.0) * std::f64::consts::LN_2;
        let w = r.costs.w_bar.finite().unwrap();
        assert!((w - expected).abs() < 1e-9 * expected);
        assert!(r.bound_holds());
        assert!(r.eta.is_empty());
        let machine = r.render_machine();
        assert!(machine.contains("divergent: false\n"));
        assert!(r.render_table().contains("satisfied"));
    }

    #[test]
    fn inputs_round_trip() {
        let spec = DeviceSpec {
            temperature_source: 0.35,
            temperature_drain: 0.04,
            bias: 500.0,
            rate_source: 1750.0,
            rate_drain: 1450.0,
            kernel: KernelKind::Gaussian,
        };
        let r = analyze(&spec, &[], &NumericsConfig::default()).unwrap();
        let entries: std::collections::HashMap<_, _> = r.entries().into_iter().collect();
        let get = |k: &str| entries[k].parse::<f64>().unwrap();
        for (key, input) in [
            ("temperature_source", spec.temperature_source),
            ("temperature_drain", spec.temperature_drain),
            ("bias", spec.bias),
            ("rate_source", spec.rate_source),
            ("rate_drain", spec.rate_drain),
        ] {
            assert!((get(key) - input).abs() <= 1e-12 * input, "{key}");
        }
    }

    #[test]
    fn lorentzian_reports_divergence_and_eta_rows() {
        let spec = DeviceSpec {
            kernel: KernelKind::Lorentzian,
            rate_source: 1e9,
            rate_drain: 1e9,
            temperature_source: 0.0,
            temperature_drain: 0.0,
            ..landauer()
        };
        let r = analyze(&spec, &[], &NumericsConfig::default()).unwrap();
        assert!(r.costs.divergent && r.bound.is_none() && r.bound_holds());
        assert_eq!(r.eta.len(), 3);
        assert!(r.eta.iter().all(|e| e.closed_form.is_some()));
        assert!(r.eta[0].w_bar < r.eta[1].w_bar && r.eta[1].w_bar < r.eta[2].w_bar);
        assert!(r.render_machine().contains("w_bar: divergent\n"));
        assert!(r.render_table().contains("divergent (Lorentzian exact erasure)"));
    }
}
