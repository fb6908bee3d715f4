use super::PlateParams;
use crate::constants::SPEED_OF_LIGHT;
use crate::Real;

/// Factor by which one length must exceed another to count as "much larger".
pub const DEFAULT_REGIME_MARGIN: f64 = 1.5;

/// Frequency region in which a local response description applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// v_F/ω ≪ δ_i ≪ l and ω ≪ ω_p.
    InfraredOptics,
    /// l ≪ δ_N(ω) and l ≪ v_F/ω.
    NormalSkin,
    Neither,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::InfraredOptics => "infrared-optics",
            Regime::NormalSkin => "normal-skin",
            Regime::Neither => "neither",
        }
    }
}

/// Classifies ω with the default margin.
pub fn classify_regime<T: Real>(omega: T, params: &PlateParams<T>, fermi_velocity: T, mean_free_path: T) -> Regime {
    classify_regime_with_margin(
        omega,
        params,
        fermi_velocity,
        mean_free_path,
        T::lit(DEFAULT_REGIME_MARGIN),
    )
}

/// Classifies ω, reading "x ≪ y" as margin·x ≤ y. The static conductivity
/// entering δ_N = c/√(2πσ₀ω) follows from the mean free path through
/// γ = v_F/l.
pub fn classify_regime_with_margin<T: Real>(
    omega: T,
    params: &PlateParams<T>,
    fermi_velocity: T,
    mean_free_path: T,
    margin: T,
) -> Regime {
    let c = T::lit(SPEED_OF_LIGHT);
    let much_less = |small: T, large: T| margin * small <= large;
    let wp = params.plasma_frequency();
    let delta_i = params.penetration_depth();
    let excursion = fermi_velocity / omega;
    if much_less(excursion, delta_i) && much_less(delta_i, mean_free_path) && much_less(omega, wp) {
        return Regime::InfraredOptics;
    }
    let gamma = fermi_velocity / mean_free_path;
    let sigma0 = wp * wp / (T::lit(4.0) * T::PI() * gamma);
    let delta_n = c / (T::lit(2.0) * T::PI() * sigma0 * omega).sqrt();
    if much_less(mean_free_path, delta_n) && much_less(mean_free_path, excursion) {
        return Regime::NormalSkin;
    }
    Regime::Neither
}
