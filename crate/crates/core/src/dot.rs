//! The quantum-dot device model: steady-state occupation with and without
//! lifetime broadening, its density `-dp/dμ`, and the half-occupation level.
//!
//! Domain-level functions take a [`NumericsConfig`] whose absolute
//! tolerances are expressed in units of the device's dominant energy scale.

use crate::error::{Error, Result};
use crate::leads::{
    fermi_derivative_density, fermi_occupation, kernel_cdf, kernel_density, BroadeningKernel, LeadParams,
};
use crate::numerics::{find_root, integrate_with_breakpoints, NumericsConfig};

/// Source and drain tunnelling rates `Γ_S`, `Γ_D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TunnelRates {
    rate_source: f64,
    rate_drain: f64,
}

impl TunnelRates {
    pub fn new(rate_source: f64, rate_drain: f64) -> Result<Self> {
        for (name, r) in [("rate_source", rate_source), ("rate_drain", rate_drain)] {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(Error::domain(name, format!("must be finite and non-negative, got {r}")));
            }
        }
        if rate_source + rate_drain <= 0.0 {
            return Err(Error::domain("rates", "total tunnelling rate must be positive"));
        }
        Ok(TunnelRates {
            rate_source,
            rate_drain,
        })
    }

    /// Rates with the given source ratio `γ_S` and total rate.
    pub fn from_ratio(gamma_source: f64, total: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma_source) {
            return Err(Error::domain(
                "gamma_source",
                format!("must lie in [0, 1], got {gamma_source}"),
            ));
        }
        TunnelRates::new(gamma_source * total, (1.0 - gamma_source) * total)
    }

    pub fn rate_source(&self) -> f64 {
        self.rate_source
    }

    pub fn rate_drain(&self) -> f64 {
        self.rate_drain
    }

    pub fn total(&self) -> f64 {
        self.rate_source + self.rate_drain
    }

    pub fn gamma_source(&self) -> f64 {
        self.rate_source / self.total()
    }

    pub fn gamma_drain(&self) -> f64 {
        1.0 - self.gamma_source()
    }
}

/// A complete device: two electrodes, their tunnelling rates and the
/// broadening kernel of the dot level. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DotSystem {
    source: LeadParams,
    drain: LeadParams,
    rates: TunnelRates,
    kernel: BroadeningKernel,
}

impl DotSystem {
    pub fn new(source: LeadParams, drain: LeadParams, rates: TunnelRates, kernel: BroadeningKernel) -> Result<Self> {
        if source.chemical_potential() < drain.chemical_potential() {
            return Err(Error::domain(
                "chemical_potential",
                format!(
                    "source ({}) must not lie below drain ({})",
                    source.chemical_potential(),
                    drain.chemical_potential()
                ),
            ));
        }
        kernel.validate()?;
        Ok(DotSystem {
            source,
            drain,
            rates,
            kernel,
        })
    }

    /// Source and drain relabelled, bypassing the `μ_S ≥ μ_D` convention.
    #[cfg(test)]
    pub(crate) fn relabeled(&self) -> Self {
        DotSystem {
            source: self.drain,
            drain: self.source,
            rates: TunnelRates::new(self.rates.rate_drain, self.rates.rate_source).unwrap(),
            kernel: self.kernel,
        }
    }

    pub fn with_kernel(&self, kernel: BroadeningKernel) -> Result<Self> {
        DotSystem::new(self.source, self.drain, self.rates, kernel)
    }

    pub fn source(&self) -> &LeadParams {
        &self.source
    }

    pub fn drain(&self) -> &LeadParams {
        &self.drain
    }

    pub fn rates(&self) -> &TunnelRates {
        &self.rates
    }

    pub fn kernel(&self) -> &BroadeningKernel {
        &self.kernel
    }

    pub fn bias(&self) -> f64 {
        self.source.chemical_potential() - self.drain.chemical_potential()
    }

    pub fn max_thermal_energy(&self) -> f64 {
        self.source.thermal_energy().max(self.drain.thermal_energy())
    }

    /// Largest of the thermal energies and the kernel width, or one unit of
    /// energy when all of them vanish.
    pub fn dominant_scale(&self) -> f64 {
        let s = self.max_thermal_energy().max(self.kernel.width());
        if s > 0.0 {
            s
        } else {
            1.0
        }
    }

    /// Both leads at zero temperature and no broadening: `p(μ)` is a staircase.
    pub fn is_fully_atomic(&self) -> bool {
        matches!(self.kernel, BroadeningKernel::Delta)
            && self.source.is_zero_temperature()
            && self.drain.is_zero_temperature()
    }

    /// `-dp/dμ` carries a point mass from some zero-temperature lead.
    pub fn has_atom(&self) -> bool {
        matches!(self.kernel, BroadeningKernel::Delta)
            && self
                .weighted_leads()
                .any(|(w, lead)| w > 0.0 && lead.is_zero_temperature())
    }

    /// Distance beyond the outer chemical potentials after which `p` (or `1 - p`)
    /// is negligible, or `None` for algebraic (Lorentzian) tails.
    pub fn tail_extent(&self, cfg: &NumericsConfig) -> Option<f64> {
        let kernel = self.kernel.support_radius(cfg)?;
        Some(cfg.tail_cutoff_exponential * self.max_thermal_energy() + kernel)
    }

    pub(crate) fn weighted_leads(&self) -> impl Iterator<Item = (f64, &LeadParams)> {
        [
            (self.rates.gamma_source(), &self.source),
            (self.rates.gamma_drain(), &self.drain),
        ]
        .into_iter()
    }

    pub(crate) fn breakpoints(&self) -> [f64; 2] {
        [self.source.chemical_potential(), self.drain.chemical_potential()]
    }
}

/// Sharp-level steady state `γ_S f_S(μ) + γ_D f_D(μ)`.
pub fn unbroadened_occupation(mu: f64, sys: &DotSystem) -> f64 {
    sys.weighted_leads()
        .map(|(w, lead)| w * fermi_occupation(mu, lead))
        .sum()
}

/// Broadened steady state `∫ g(ε - μ) p₀(ε) dε`.
pub fn occupation(mu: f64, sys: &DotSystem, cfg: &NumericsConfig) -> Result<f64> {
    if let BroadeningKernel::Delta = sys.kernel {
        return Ok(unbroadened_occupation(mu, sys));
    }
    let mut p = 0.0;
    for (w, lead) in sys.weighted_leads() {
        if w > 0.0 {
            p += w * broadened_lead_occupation(mu, lead, &sys.kernel, cfg)?;
        }
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Integration window for `∫ g(x) h(x) dx` where `h` lives within
/// `half_width` of `center` and `g` within its support radius of 0.
fn window(center: f64, half_width: f64, kernel: &BroadeningKernel, cfg: &NumericsConfig) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (center - half_width, center + half_width);
    if let Some(r) = kernel.support_radius(cfg) {
        lo = lo.max(-r);
        hi = hi.min(r);
    }
    (lo < hi).then_some((lo, hi))
}

/// `(g ⋆ f_ν)(μ) = ∫ g(x) f_ν(μ + x) dx` for a single lead.
///
/// Split as the kernel CDF at the lead's step plus a correction that only
/// lives within the thermal window, so algebraic kernel tails never need
/// truncating.
pub fn broadened_lead_occupation(
    mu: f64,
    lead: &LeadParams,
    kernel: &BroadeningKernel,
    cfg: &NumericsConfig,
) -> Result<f64> {
    if let BroadeningKernel::Delta = kernel {
        return Ok(fermi_occupation(mu, lead));
    }
    let mu_lead = lead.chemical_potential();
    let step_at = mu_lead - mu;
    let base = kernel_cdf(step_at, kernel);
    if lead.is_zero_temperature() {
        return Ok(base);
    }

    let half_width = cfg.tail_cutoff_exponential * lead.thermal_energy();
    let Some((lo, hi)) = window(step_at, half_width, kernel, cfg) else {
        return Ok(base);
    };
    let correction = |x: f64| {
        let g = kernel_density(x, kernel).unwrap_or(0.0);
        if x < step_at {
            // f - 1 written as the mirrored Fermi function to avoid cancellation.
            -g * fermi_occupation(2.0 * mu_lead - mu - x, lead)
        } else {
            g * fermi_occupation(mu + x, lead)
        }
    };
    let c = integrate_with_breakpoints(correction, lo, hi, &[step_at, 0.0], cfg)?;
    Ok(base + c.value)
}

/// `(g ⋆ f'_ν)(μ)` for a single lead, as a density in `μ`.
pub fn broadened_lead_density(
    mu: f64,
    lead: &LeadParams,
    kernel: &BroadeningKernel,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let mu_lead = lead.chemical_potential();
    match (kernel, lead.is_zero_temperature()) {
        (BroadeningKernel::Delta, true) => Err(Error::PureStep),
        (BroadeningKernel::Delta, false) => fermi_derivative_density(mu, lead),
        (_, true) => kernel_density(mu_lead - mu, kernel),
        (_, false) => {
            let center = mu_lead - mu;
            let half_width = cfg.tail_cutoff_exponential * lead.thermal_energy();
            let Some((lo, hi)) = window(center, half_width, kernel, cfg) else {
                return Ok(0.0);
            };
            let scale = lead.thermal_energy().max(kernel.width());
            let tol = NumericsConfig {
                abs_tol: cfg.abs_tol / scale,
                ..*cfg
            };
            let integrand = |x: f64| {
                kernel_density(x, kernel).unwrap_or(0.0) * fermi_derivative_density(mu + x, lead).unwrap_or(0.0)
            };
            Ok(integrate_with_breakpoints(integrand, lo, hi, &[center, 0.0], &tol)?.value)
        }
    }
}

/// `p'(μ) = -dp/dμ`, assembled from the per-lead cross-correlated densities.
pub fn occupation_derivative_density(mu: f64, sys: &DotSystem, cfg: &NumericsConfig) -> Result<f64> {
    if sys.has_atom() {
        return Err(Error::PureStep);
    }
    let mut density = 0.0;
    for (w, lead) in sys.weighted_leads() {
        if w > 0.0 {
            density += w * broadened_lead_density(mu, lead, &sys.kernel, cfg)?;
        }
    }
    Ok(density.max(0.0))
}

/// The level `μ_½` with `p(μ_½) = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfOccupation {
    pub mu: f64,
    /// Set when `p = 1/2` on a whole plateau and `mu` is its midpoint.
    pub ambiguous: bool,
}

pub fn half_occupation_level(sys: &DotSystem, cfg: &NumericsConfig) -> Result<HalfOccupation> {
    let (mu_s, mu_d) = (sys.source.chemical_potential(), sys.drain.chemical_potential());
    if sys.is_fully_atomic() {
        let gamma_s = sys.rates.gamma_source();
        let (mu, ambiguous) = if sys.bias() == 0.0 {
            (mu_s, false)
        } else if gamma_s < 0.5 {
            (mu_d, false)
        } else if gamma_s > 0.5 {
            (mu_s, false)
        } else {
            (0.5 * (mu_s + mu_d), true)
        };
        return Ok(HalfOccupation { mu, ambiguous });
    }

    let scale = sys.dominant_scale();
    let lo = mu_d - 60.0 * scale;
    let hi = mu_s + 60.0 * scale;
    let local = cfg.at_scale(scale);
    let mu = find_root(
        |m| occupation(m, sys, cfg).map(|p| p - 0.5).unwrap_or(f64::NAN),
        lo,
        hi,
        &local,
    )?;
    Ok(HalfOccupation { mu, ambiguous: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg() -> NumericsConfig {
        NumericsConfig::default()
    }

    fn system(t_s: f64, t_d: f64, bias: f64, gamma_s: f64, kernel: BroadeningKernel) -> DotSystem {
        DotSystem::new(
            LeadParams::new(t_s, bias).unwrap(),
            LeadParams::new(t_d, 0.0).unwrap(),
            TunnelRates::from_ratio(gamma_s, 1.0).unwrap(),
            kernel,
        )
        .unwrap()
    }

    fn random_system(rng: &mut ChaCha8Rng) -> DotSystem {
        let kernel = match rng.random_range(0..3) {
            0 => BroadeningKernel::Delta,
            1 => BroadeningKernel::gaussian(rng.random_range(0.05..5.0)).unwrap(),
            _ => BroadeningKernel::lorentzian(rng.random_range(0.05..5.0)).unwrap(),
        };
        system(
            rng.random_range(0.05..3.0),
            rng.random_range(0.05..3.0),
            rng.random_range(0.0..20.0),
            rng.random_range(0.02..0.98),
            kernel,
        )
    }

    #[test]
    fn rates_and_ratios() {
        let r = TunnelRates::new(6.3, 250.0).unwrap();
        assert_relative_eq!(r.total(), 256.3);
        assert_eq!(r.gamma_source() + r.gamma_drain(), 1.0);
        assert!(TunnelRates::new(-1.0, 2.0).is_err());
        assert!(TunnelRates::new(0.0, 0.0).is_err());
        assert!(TunnelRates::new(0.0, 1.0).is_ok());
    }

    #[test]
    fn source_below_drain_rejected() {
        let r = DotSystem::new(
            LeadParams::new(1.0, -1.0).unwrap(),
            LeadParams::new(1.0, 0.0).unwrap(),
            TunnelRates::new(1.0, 1.0).unwrap(),
            BroadeningKernel::Delta,
        );
        assert!(r.is_err());
    }

    #[test]
    fn unbroadened_examples() {
        let sym = system(1.0, 1.0, 10.0, 0.5, BroadeningKernel::Delta);
        assert_relative_eq!(unbroadened_occupation(5.0, &sym), 0.5, epsilon = 1e-15);
        assert!(unbroadened_occupation(10.0 + 41.0, &sym) < 1e-15);
        let cold = system(0.0, 0.0, 10.0, 0.3, BroadeningKernel::Delta);
        assert_relative_eq!(unbroadened_occupation(4.0, &cold), 0.3, epsilon = 1e-15);
    }

    #[test]
    fn delta_kernel_is_identity() {
        let sys = system(0.7, 1.3, 4.0, 0.35, BroadeningKernel::Delta);
        for mu in [-5.0, 0.0, 1.7, 4.0, 9.0] {
            assert_eq!(occupation(mu, &sys, &cfg()).unwrap(), unbroadened_occupation(mu, &sys));
        }
    }

    #[test]
    fn cold_gaussian_step() {
        let sigma = 0.8;
        let sys = system(0.0, 0.0, 0.0, 0.4, BroadeningKernel::gaussian(sigma).unwrap());
        let phi_minus_one = 0.158_655_253_931_457_05;
        assert_relative_eq!(occupation(sigma, &sys, &cfg()).unwrap(), phi_minus_one, epsilon = 1e-14);
        // The quadrature branch at a vanishing temperature reaches the same value.
        let nearly_cold = system(1e-9, 1e-9, 0.0, 0.4, BroadeningKernel::gaussian(sigma).unwrap());
        assert!((occupation(sigma, &nearly_cold, &cfg()).unwrap() - phi_minus_one).abs() < 1e-9);
    }

    #[test]
    fn cold_lorentzian_quarter() {
        let sys = system(0.0, 0.0, 0.0, 0.5, BroadeningKernel::lorentzian(2.0).unwrap());
        assert_relative_eq!(occupation(2.0, &sys, &cfg()).unwrap(), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn broadened_occupation_matches_direct_convolution() {
        // Independent route: integrate g(ε - μ) p₀(ε) over ε directly.
        let sigma = 1.5;
        let sys = system(0.6, 1.1, 7.0, 0.35, BroadeningKernel::gaussian(sigma).unwrap());
        let c = cfg().with_rel_tol(1e-12);
        for mu in [-6.0, -1.0, 0.0, 2.5, 7.0, 11.0] {
            let lead_terms: Vec<f64> = sys
                .weighted_leads()
                .map(|(_, lead)| {
                    integrate_with_breakpoints(
                        |e| kernel_density(e - mu, &sys.kernel).unwrap() * fermi_occupation(e, lead),
                        mu - 12.0 * sigma,
                        mu + 12.0 * sigma,
                        &[lead.chemical_potential(), mu],
                        &c,
                    )
                    .unwrap()
                    .value
                })
                .collect();
            let direct = sys.rates.gamma_source() * lead_terms[0] + sys.rates.gamma_drain() * lead_terms[1];
            assert!(
                (occupation(mu, &sys, &cfg()).unwrap() - direct).abs() < 2e-10,
                "mu={mu}"
            );
        }
    }

    #[test]
    fn derivative_density_examples() {
        let t = 0.5;
        let sys = system(t, t, 0.0, 0.3, BroadeningKernel::Delta);
        assert_relative_eq!(
            occupation_derivative_density(0.0, &sys, &cfg()).unwrap(),
            1.0 / (4.0 * t)
        );

        let cold = system(0.0, 0.0, 1.0, 0.3, BroadeningKernel::Delta);
        assert_eq!(occupation_derivative_density(0.5, &cold, &cfg()), Err(Error::PureStep));
        let half_cold = system(0.0, 1.0, 1.0, 0.3, BroadeningKernel::Delta);
        assert_eq!(
            occupation_derivative_density(0.5, &half_cold, &cfg()),
            Err(Error::PureStep)
        );
    }

    #[test]
    fn derivative_density_normalization() {
        let sys = system(0.4, 0.9, 6.0, 0.35, BroadeningKernel::gaussian(1.2).unwrap());
        let ext = sys.tail_extent(&cfg()).unwrap();
        let total = integrate_with_breakpoints(
            |m| occupation_derivative_density(m, &sys, &cfg()).unwrap(),
            -ext,
            6.0 + ext,
            &[0.0, 6.0],
            &cfg(),
        )
        .unwrap()
        .value;
        assert!((total - 1.0).abs() < 1e-9, "{total}");
    }

    #[test]
    fn derivative_density_matches_finite_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let systems = [
            system(0.5, 1.0, 5.0, 0.35, BroadeningKernel::gaussian(0.7).unwrap()),
            system(0.0, 0.0, 3.0, 0.6, BroadeningKernel::gaussian(1.1).unwrap()),
            system(0.8, 0.3, 2.0, 0.45, BroadeningKernel::lorentzian(0.5).unwrap()),
            system(1.0, 0.5, 4.0, 0.25, BroadeningKernel::Delta),
        ];
        let c = cfg().with_rel_tol(1e-13);
        for sys in &systems {
            for _ in 0..50 {
                let mu = rng.random_range(-4.0..9.0);
                let h = 1e-3;
                let fd = (occupation(mu - h, sys, &c).unwrap() - occupation(mu + h, sys, &c).unwrap()) / (2.0 * h);
                let analytic = occupation_derivative_density(mu, sys, &cfg()).unwrap();
                assert!((fd - analytic).abs() < 1e-6, "{sys:?} mu={mu}: {fd} vs {analytic}");
            }
        }
    }

    #[test]
    fn half_occupation_examples() {
        let sym = system(0.7, 0.7, 8.0, 0.5, BroadeningKernel::gaussian(0.4).unwrap());
        let h = half_occupation_level(&sym, &cfg()).unwrap();
        assert!((h.mu - 4.0).abs() < 1e-10);
        assert!(!h.ambiguous);

        let zero_bias = DotSystem::new(
            LeadParams::new(0.3, 2.5).unwrap(),
            LeadParams::new(1.1, 2.5).unwrap(),
            TunnelRates::new(1.0, 3.0).unwrap(),
            BroadeningKernel::Delta,
        )
        .unwrap();
        assert!((half_occupation_level(&zero_bias, &cfg()).unwrap().mu - 2.5).abs() < 1e-10);
    }

    #[test]
    fn half_occupation_bias_dominated() {
        let bias = 36.0;
        let t = bias / 36.0;
        let sys = system(t, t, bias, 0.35, BroadeningKernel::Delta);
        let mu = half_occupation_level(&sys, &cfg()).unwrap().mu;
        assert!(mu.abs() < 3.0 * t, "{mu}");
        // Grid-scan oracle: first grid point where p drops below 1/2.
        let step = 1e-4;
        let crossing = (0..200_000)
            .map(|i| -10.0 + i as f64 * step)
            .find(|&m| unbroadened_occupation(m, &sys) < 0.5)
            .unwrap();
        assert!((mu - crossing).abs() <= step);
    }

    #[test]
    fn fully_atomic_medians() {
        let below = system(0.0, 0.0, 5.0, 0.3, BroadeningKernel::Delta);
        assert_eq!(half_occupation_level(&below, &cfg()).unwrap().mu, 0.0);
        let above = system(0.0, 0.0, 5.0, 0.7, BroadeningKernel::Delta);
        assert_eq!(half_occupation_level(&above, &cfg()).unwrap().mu, 5.0);
        let plateau = system(0.0, 0.0, 5.0, 0.5, BroadeningKernel::Delta);
        let h = half_occupation_level(&plateau, &cfg()).unwrap();
        assert_eq!(h.mu, 2.5);
        assert!(h.ambiguous);
    }

    #[test]
    fn occupation_is_a_complementary_cdf() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let sys = random_system(&mut rng);
            let mut grid: Vec<f64> = (0..40).map(|_| rng.random_range(-30.0..50.0)).collect();
            grid.sort_by(f64::total_cmp);
            let values: Vec<f64> = grid.iter().map(|&m| occupation(m, &sys, &cfg()).unwrap()).collect();
            for w in values.windows(2) {
                assert!(w[1] <= w[0] + 1e-10, "{sys:?}");
            }
            assert!(values.iter().all(|p| (0.0..=1.0).contains(p)));

            let scale = sys.dominant_scale();
            let lo = sys.drain.chemical_potential() - 60.0 * scale;
            let hi = sys.source.chemical_potential() + 60.0 * scale;
            if !matches!(sys.kernel, BroadeningKernel::Lorentzian { .. }) {
                assert!(1.0 - occupation(lo, &sys, &cfg()).unwrap() < 1e-9);
                assert!(occupation(hi, &sys, &cfg()).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn relabeling_leaves_occupation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let sys = random_system(&mut rng);
            let swapped = sys.relabeled();
            for _ in 0..5 {
                let mu = rng.random_range(-10.0..30.0);
                let a = occupation(mu, &sys, &cfg()).unwrap();
                let b = occupation(mu, &swapped, &cfg()).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn weighted_sum_consistency() {
        let sys = system(0.9, 0.4, 3.0, 0.3, BroadeningKernel::gaussian(2.0).unwrap());
        for mu in [-3.0, 0.5, 1.5, 3.2, 8.0] {
            let parts: f64 = sys
                .weighted_leads()
                .map(|(w, lead)| w * broadened_lead_occupation(mu, lead, &sys.kernel, &cfg()).unwrap())
                .sum();
            assert!((occupation(mu, &sys, &cfg()).unwrap() - parts).abs() < 2e-10);
        }
    }

    #[test]
    fn lorentzian_lead_occupation_against_atan_oracle() {
        // Integration by parts gives ∫ f'(ε) G(ε - μ) dε with G the Lorentzian CDF,
        // which only needs the Fermi window.
        let lead = LeadParams::new(0.5, 1.0).unwrap();
        let kernel = BroadeningKernel::lorentzian(0.3).unwrap();
        for mu in [-2.0, 0.5, 1.0, 1.7, 5.0] {
            let oracle = integrate(
                |e| fermi_derivative_density(e, &lead).unwrap() * (0.5 + (e - mu).atan2(0.3) / std::f64::consts::PI),
                1.0 - 25.0,
                1.0 + 25.0,
                &cfg().with_rel_tol(1e-12),
            )
            .unwrap()
            .value;
            let value = broadened_lead_occupation(mu, &lead, &kernel, &cfg()).unwrap();
            assert!((value - oracle).abs() < 1e-9, "mu={mu}: {value} vs {oracle}");
        }
    }
}
