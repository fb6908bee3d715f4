//! Physical constants (SI, CODATA 2018 exact or recommended values).

use crate::Real;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Reduced Planck constant, eV·s.
pub const HBAR_EV: f64 = 6.582_119_569e-16;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Stefan–Boltzmann constant as quoted for the black-body flux check, W m⁻² K⁻⁴.
pub const STEFAN_BOLTZMANN: f64 = 5.6704e-8;

/// Photon energy in eV to angular frequency in rad/s.
pub fn ev_to_rad_per_s<T: Real>(energy_ev: T) -> T {
    energy_ev / T::lit(HBAR_EV)
}

/// Angular frequency in rad/s to photon energy in eV.
pub fn rad_per_s_to_ev<T: Real>(omega: T) -> T {
    omega * T::lit(HBAR_EV)
}

/// First Matsubara frequency 2πk_BT/ħ, rad/s.
pub fn first_matsubara<T: Real>(temperature: T) -> T {
    T::lit(2.0) * T::PI() * T::lit(BOLTZMANN) * temperature / T::lit(HBAR)
}

/// Black-body flux Θ T⁴ with Θ computed from ħ, c and k_B, W/m².
pub fn black_body_flux<T: Real>(temperature: T) -> T {
    let kt = T::lit(BOLTZMANN) * temperature;
    let hbar = T::lit(HBAR);
    let c = T::lit(SPEED_OF_LIGHT);
    T::PI() * T::PI() / T::lit(60.0) * kt * (kt / hbar) * (kt / hbar) * (kt / hbar) / (c * c)
}

/// Reference pressures measured at 200 nm and 300 nm, mPa (magnitudes).
pub const MEASURED_PRESSURE_MPA: [(f64, f64); 2] = [(0.2, 508.1), (0.3, 114.7)];

/// Measured emittivity of gold at 295 K.
pub const MEASURED_EMITTIVITY_295K: f64 = 0.02;
