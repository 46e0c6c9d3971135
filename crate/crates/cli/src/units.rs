//! Laboratory units to the core's energy unit (μeV).

/// Boltzmann constant in eV/K.
pub const K_B_EV_PER_K: f64 = 8.617333262e-5;
/// Reduced Planck constant in eV·s.
pub const HBAR_EV_S: f64 = 6.582119569e-16;

const MICRO_EV_PER_EV: f64 = 1e6;

/// `k_B T` in μeV.
pub fn thermal_energy(kelvin: f64) -> f64 {
    K_B_EV_PER_K * MICRO_EV_PER_EV * kelvin
}

pub fn temperature(thermal_energy_uev: f64) -> f64 {
    thermal_energy_uev / (K_B_EV_PER_K * MICRO_EV_PER_EV)
}

/// `ħΓ` in μeV for a rate in s⁻¹.
pub fn rate_energy(rate_hz: f64) -> f64 {
    HBAR_EV_S * MICRO_EV_PER_EV * rate_hz
}

pub fn rate(energy_uev: f64) -> f64 {
    energy_uev / (HBAR_EV_S * MICRO_EV_PER_EV)
}
