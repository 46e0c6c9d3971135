//! Finite-speed erasure runs from the command line.

use qdot_erasure::dynamics::default_cutoff_multiplier;
use qdot_erasure::{erasure_costs, make_erasure_schedule, simulate, Energy, ErasureTarget, NumericsConfig, Trajectory};

use crate::config::DeviceSpec;

/// Stepper cap, in units of `1 / Γ_tot`.
const DT_MAX_OVER_TAU: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolRun {
    pub target: ErasureTarget,
    /// Ramp duration in units of `1 / Γ_tot`.
    pub duration: f64,
    /// Times in seconds, energies in μeV.
    pub trajectory: Trajectory,
    /// Quasistatic cost of the same erasure.
    pub reference: Energy,
}

impl ProtocolRun {
    pub fn total_work(&self) -> f64 {
        self.trajectory.total_work()
    }

    /// `W / W_quasistatic`, absent when the reference diverges or vanishes.
    pub fn ratio(&self) -> Option<f64> {
        self.reference
            .finite()
            .filter(|w| *w != 0.0)
            .map(|w| self.total_work() / w)
    }

    pub fn summary(&self) -> String {
        let name = match self.target {
            ErasureTarget::Zero => "w_zero",
            ErasureTarget::One => "w_one",
        };
        let ratio = self.ratio().map_or_else(|| "undefined".to_string(), |r| r.to_string());
        let last = self.trajectory.last();
        format!(
            "total_work: {} μeV; final_p: {}; {name}: {}; ratio: {ratio}",
            self.total_work(),
            last.p,
            self.reference
        )
    }
}

pub fn run_protocol(
    spec: &DeviceSpec,
    target: ErasureTarget,
    duration: f64,
    cfg: &NumericsConfig,
) -> qdot_erasure::Result<ProtocolRun> {
    if !(duration.is_finite() && duration >= 0.0) {
        return Err(qdot_erasure::Error::Domain {
            name: "duration",
            reason: format!("must be finite and non-negative, got {duration}"),
        });
    }
    let sys = spec.to_system()?;
    let tau = 1.0 / sys.rates().total();
    let schedule = make_erasure_schedule(&sys, target, duration * tau, default_cutoff_multiplier(&sys), cfg)?;
    let trajectory = simulate(&sys, &schedule, DT_MAX_OVER_TAU * tau, cfg)?;
    let costs = erasure_costs(&sys, cfg)?;
    let reference = match target {
        ErasureTarget::Zero => costs.w_zero,
        ErasureTarget::One => costs.w_one,
    };
    Ok(ProtocolRun {
        target,
        duration,
        trajectory,
        reference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::KernelKind;
    use crate::units;

    fn bias_device() -> DeviceSpec {
        // k_B T = 1 μeV, bias 36 k_B T, γ_S = 0.35.
        let t = units::temperature(1.0);
        DeviceSpec {
            temperature_source: t,
            temperature_drain: t,
            bias: 36.0,
            rate_source: 0.35e6,
            rate_drain: 0.65e6,
            kernel: KernelKind::Delta,
        }
    }

    #[test]
    fn slow_run_matches_quasistatic() {
        let run = run_protocol(&bias_device(), ErasureTarget::Zero, 200.0, &NumericsConfig::default()).unwrap();
        let r = run.ratio().unwrap();
        assert!((0.98..=1.02).contains(&r), "{r}");
        assert!(run.summary().contains("ratio: "));
    }

    #[test]
    fn instant_run_does_nothing() {
        let run = run_protocol(&bias_device(), ErasureTarget::One, 0.0, &NumericsConfig::default()).unwrap();
        assert!(run.total_work().abs() < 1e-12);
        assert!((run.trajectory.last().p - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fast_run_dissipates() {
        let symmetric = DeviceSpec {
            bias: 0.0,
            rate_source: 0.5e6,
            rate_drain: 0.5e6,
            ..bias_device()
        };
        let run = run_protocol(&symmetric, ErasureTarget::Zero, 1.0, &NumericsConfig::default()).unwrap();
        assert!(run.ratio().unwrap() > 1.0);
    }

    #[test]
    fn fast_run_through_bias_window_leaves_bit_unerased() {
        // Cheaper than W0 only because the occupation never gets near zero.
        let run = run_protocol(&bias_device(), ErasureTarget::Zero, 1.0, &NumericsConfig::default()).unwrap();
        assert!(run.ratio().unwrap() < 1.0);
        assert!(run.trajectory.last().p > 0.1);
    }
}
