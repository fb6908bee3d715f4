//! Material response of the plates: permittivity ε and Leontovich surface
//! impedance Z on the real (ω) and imaginary (ξ) frequency axes.

mod optical_table;
mod regime;
mod relaxation;

use std::sync::Arc;

use num_complex::Complex;

pub use optical_table::{OpticalTable, TABLE_COVERAGE_START_EV};
pub use regime::{classify_regime, classify_regime_with_margin, Regime, DEFAULT_REGIME_MARGIN};
pub use relaxation::RelaxationLaw;

use crate::constants::{ev_to_rad_per_s, rad_per_s_to_ev, HBAR_EV};
use crate::error::{Error, Result};
use crate::Real;

/// Relative tolerance on ω_p² = 4πγσ₀ when all three are supplied.
pub const PARAMETER_RELATION_TOL: f64 = 1e-6;
/// Lower and upper bounds for the Z_t smoothing width β, eV.
pub const ZT_BETA_RANGE_EV: (f64, f64) = (0.08, 0.125);
/// Coefficient C of the Z_p impedance, eV⁻².
pub const ZP_COEFFICIENT_EV: f64 = 0.004;

/// Drude parameters of a plate metal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateParams<T> {
    plasma_frequency: T,
    gamma_300: T,
    static_conductivity: T,
    debye_temperature: T,
    fermi_velocity: T,
}

impl<T: Real> PlateParams<T> {
    /// Gold: ω_p = 9.0 eV, γ₃₀₀ = 5.32×10¹³ rad/s, T_D = 165 K,
    /// v_F = 1.78×10⁶ m/s.
    pub fn gold() -> Self {
        Self::from_ev(T::lit(9.0), T::lit(5.32e13), T::lit(165.0)).expect("gold parameters are valid")
    }

    /// Parameters from ω_p in eV, γ₃₀₀ in rad/s and T_D in K; σ₀ and τ are
    /// derived from ω_p² = 4πγσ₀ = 4πσ₀/τ.
    pub fn from_ev(plasma_ev: T, gamma_300: T, debye_temperature: T) -> Result<Self> {
        Self::new(ev_to_rad_per_s(plasma_ev), gamma_300, debye_temperature)
    }

    /// As [`PlateParams::from_ev`] with ω_p in rad/s.
    pub fn new(plasma_frequency: T, gamma_300: T, debye_temperature: T) -> Result<Self> {
        if !(plasma_frequency > T::zero() && plasma_frequency.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "plasma frequency {plasma_frequency} must be > 0"
            )));
        }
        if !(gamma_300 >= T::zero() && gamma_300.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "relaxation rate {gamma_300} must be >= 0"
            )));
        }
        if !(debye_temperature > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "Debye temperature {debye_temperature} must be > 0"
            )));
        }
        let static_conductivity = plasma_frequency * plasma_frequency / (T::lit(4.0) * T::PI() * gamma_300);
        Ok(Self {
            plasma_frequency,
            gamma_300,
            static_conductivity,
            debye_temperature,
            fermi_velocity: T::lit(1.78e6),
        })
    }

    /// Full parameter set; ω_p² = 4πγσ₀ = 4πσ₀/τ must hold to relative 10⁻⁶.
    pub fn from_all(
        plasma_frequency: T,
        gamma_300: T,
        static_conductivity: T,
        relaxation_time: T,
        debye_temperature: T,
    ) -> Result<Self> {
        if !(static_conductivity > T::zero() && relaxation_time > T::zero()) {
            return Err(Error::InvalidParameter("sigma0 and tau must be > 0".into()));
        }
        let params = Self::new(plasma_frequency, gamma_300, debye_temperature)?;
        let w2 = plasma_frequency * plasma_frequency;
        let four_pi = T::lit(4.0) * T::PI();
        let tol = T::lit(PARAMETER_RELATION_TOL);
        let via_gamma = four_pi * gamma_300 * static_conductivity;
        let via_tau = four_pi * static_conductivity / relaxation_time;
        if ((via_gamma - w2) / w2).abs() > tol || ((via_tau - w2) / w2).abs() > tol {
            return Err(Error::InvalidParameter(format!(
                "omega_p^2 = 4 pi gamma sigma0 = 4 pi sigma0 / tau violated: {w2} vs {via_gamma} vs {via_tau}"
            )));
        }
        Ok(params)
    }

    /// Replaces σ₀ and re-derives γ₃₀₀ = ω_p²/(4πσ₀).
    pub fn with_static_conductivity(self, sigma0: T) -> Result<Self> {
        if !(sigma0 > T::zero() && sigma0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "static conductivity {sigma0} must be > 0"
            )));
        }
        let gamma = self.plasma_frequency * self.plasma_frequency / (T::lit(4.0) * T::PI() * sigma0);
        Ok(Self {
            gamma_300: gamma,
            static_conductivity: sigma0,
            ..self
        })
    }

    pub fn with_fermi_velocity(self, fermi_velocity: T) -> Result<Self> {
        if !(fermi_velocity > T::zero()) {
            return Err(Error::InvalidParameter(format!(
                "Fermi velocity {fermi_velocity} must be > 0"
            )));
        }
        Ok(Self { fermi_velocity, ..self })
    }

    /// ω_p in rad/s.
    pub fn plasma_frequency(&self) -> T {
        self.plasma_frequency
    }

    pub fn plasma_frequency_ev(&self) -> T {
        rad_per_s_to_ev(self.plasma_frequency)
    }

    /// Plasma wavelength λ_p = 2πc/ω_p, m.
    pub fn plasma_wavelength(&self) -> T {
        T::lit(2.0) * T::PI() * T::lit(crate::constants::SPEED_OF_LIGHT) / self.plasma_frequency
    }

    /// Penetration depth δ_i = λ_p/2π = c/ω_p, m.
    pub fn penetration_depth(&self) -> T {
        T::lit(crate::constants::SPEED_OF_LIGHT) / self.plasma_frequency
    }

    pub fn gamma_300(&self) -> T {
        self.gamma_300
    }

    /// σ₀ at 300 K, s⁻¹ (Gaussian units).
    pub fn static_conductivity(&self) -> T {
        self.static_conductivity
    }

    /// τ = 1/γ₃₀₀, s.
    pub fn relaxation_time(&self) -> T {
        T::one() / self.gamma_300
    }

    pub fn debye_temperature(&self) -> T {
        self.debye_temperature
    }

    pub fn fermi_velocity(&self) -> T {
        self.fermi_velocity
    }

    /// Perfect-lattice relaxation law anchored at γ₃₀₀ with knee at T_D/4.
    pub fn relaxation_law(&self) -> RelaxationLaw<T> {
        RelaxationLaw::new(self.gamma_300, self.debye_temperature).expect("validated parameters")
    }

    /// σ₀(T) = ω_p²/(4πγ(T)).
    pub fn static_conductivity_at(&self, law: &RelaxationLaw<T>, temperature: T) -> T {
        self.plasma_frequency * self.plasma_frequency / (T::lit(4.0) * T::PI() * law.rate(temperature))
    }

    /// Mean free path l(T) = v_F/γ(T), m.
    pub fn mean_free_path(&self, law: &RelaxationLaw<T>, temperature: T) -> T {
        self.fermi_velocity / law.rate(temperature)
    }
}

/// Which reflection-coefficient form a model is naturally expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseForm {
    Permittivity,
    Impedance,
}

/// Behaviour of Z(iξ)/ξ as ξ → 0, which fixes the static TE reflection in
/// impedance form: r_TE(0) = (1 − c q L)/(1 + c q L) with L the slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticSlope<T> {
    Zero,
    Finite(T),
    Infinite,
}

/// Material-response model of one plate.
#[derive(Debug, Clone, PartialEq)]
pub enum ResponseModel<T> {
    IdealMetal,
    /// ε(ω) = 1 − ω_p²/ω².
    PlasmaEps(PlateParams<T>),
    /// Z(ω) = −iω/√(ω_p² − ω²).
    InfraredZ(PlateParams<T>),
    /// ε(ω) = 1 − ω_p²/[ω(ω + iγ(T))].
    DrudeEps(PlateParams<T>, RelaxationLaw<T>),
    /// Z(ω) = 1/√ε_D(ω).
    DrudeZ(PlateParams<T>, RelaxationLaw<T>),
    /// Z(ω) = (1 − i)√(ω/(8πσ₀(T))).
    NormalSkinZ(PlateParams<T>, RelaxationLaw<T>),
    /// Z(ω) = Cω² − iω/√(ω_p² − ω²) with C in eV⁻².
    Zp {
        params: PlateParams<T>,
        c_ev: T,
    },
    /// Re Z from a sine ramp below β, the constant B up to 0.125 eV and the
    /// optical table above; Im Z as for [`ResponseModel::InfraredZ`].
    Zt {
        params: PlateParams<T>,
        b: T,
        beta_ev: T,
        table: Arc<OpticalTable<T>>,
    },
}

fn below_plasma_impedance<T: Real>(omega: T, plasma: T) -> Complex<T> {
    if omega < plasma {
        Complex::new(T::zero(), -omega / (plasma * plasma - omega * omega).sqrt())
    } else {
        Complex::new(omega / (omega * omega - plasma * plasma).sqrt(), T::zero())
    }
}

fn check_real_frequency<T: Real>(omega: T) -> Result<()> {
    if omega > T::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("real frequency {omega} must be > 0")))
    }
}

fn check_imag_frequency<T: Real>(xi: T) -> Result<()> {
    if xi >= T::zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!("imaginary frequency {xi} must be >= 0")))
    }
}

impl<T: Real> ResponseModel<T> {
    pub fn plasma(params: PlateParams<T>) -> Self {
        Self::PlasmaEps(params)
    }

    pub fn infrared(params: PlateParams<T>) -> Self {
        Self::InfraredZ(params)
    }

    pub fn drude_eps(params: PlateParams<T>) -> Self {
        Self::DrudeEps(params, params.relaxation_law())
    }

    pub fn drude_z(params: PlateParams<T>) -> Self {
        Self::DrudeZ(params, params.relaxation_law())
    }

    pub fn normal_skin(params: PlateParams<T>) -> Self {
        Self::NormalSkinZ(params, params.relaxation_law())
    }

    pub fn zp(params: PlateParams<T>, c_ev: T) -> Result<Self> {
        let model = Self::Zp { params, c_ev };
        model.validate()?;
        Ok(model)
    }

    /// Z_t with B taken as the table value at 0.125 eV, so Re Z is continuous
    /// at the table junction.
    pub fn zt(params: PlateParams<T>, beta_ev: T, table: Arc<OpticalTable<T>>) -> Result<Self> {
        let b = table.interpolate(T::lit(TABLE_COVERAGE_START_EV))?;
        let model = Self::Zt {
            params,
            b,
            beta_ev,
            table,
        };
        model.validate()?;
        Ok(model)
    }

    /// Checks variant-specific parameter constraints.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Zp { c_ev, .. } if !(*c_ev >= T::zero()) => Err(Error::InvalidParameter(format!(
                "Z_p coefficient C = {c_ev} must be >= 0"
            ))),
            Self::Zt { b, beta_ev, table, .. } => {
                let (lo, hi) = ZT_BETA_RANGE_EV;
                if !(*beta_ev >= T::lit(lo) && *beta_ev <= T::lit(hi)) {
                    return Err(Error::InvalidParameter(format!(
                        "Z_t beta = {beta_ev} eV outside [{lo}, {hi}] eV"
                    )));
                }
                if !(*b >= T::zero()) {
                    return Err(Error::InvalidParameter(format!("Z_t constant B = {b} must be >= 0")));
                }
                if table.min_energy() > T::lit(TABLE_COVERAGE_START_EV) {
                    return Err(Error::Table("table must cover 0.125 eV".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Short identifier used in reports and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Self::IdealMetal => "ideal",
            Self::PlasmaEps(_) => "plasma",
            Self::InfraredZ(_) => "infrared",
            Self::DrudeEps(..) => "drude-eps",
            Self::DrudeZ(..) => "drude-z",
            Self::NormalSkinZ(..) => "normal-skin",
            Self::Zp { .. } => "zp",
            Self::Zt { .. } => "zt",
        }
    }

    pub fn params(&self) -> Option<&PlateParams<T>> {
        match self {
            Self::IdealMetal => None,
            Self::PlasmaEps(p) | Self::InfraredZ(p) => Some(p),
            Self::DrudeEps(p, _) | Self::DrudeZ(p, _) | Self::NormalSkinZ(p, _) => Some(p),
            Self::Zp { params, .. } | Self::Zt { params, .. } => Some(params),
        }
    }

    pub fn form(&self) -> ResponseForm {
        match self {
            Self::PlasmaEps(_) | Self::DrudeEps(..) => ResponseForm::Permittivity,
            _ => ResponseForm::Impedance,
        }
    }

    /// Relaxation rate γ(T) entering the model, 0 for dissipationless models.
    pub fn relaxation_rate(&self, temperature: T) -> T {
        match self {
            Self::DrudeEps(_, law) | Self::DrudeZ(_, law) | Self::NormalSkinZ(_, law) => law.rate(temperature),
            _ => T::zero(),
        }
    }

    /// True when the model has no dissipation below ω_p at this temperature.
    pub fn is_lossless_at(&self, temperature: T) -> bool {
        match self {
            Self::IdealMetal | Self::PlasmaEps(_) | Self::InfraredZ(_) => true,
            Self::DrudeEps(..) | Self::DrudeZ(..) => self.relaxation_rate(temperature).is_zero(),
            Self::Zp { c_ev, .. } => c_ev.is_zero(),
            Self::NormalSkinZ(..) | Self::Zt { .. } => false,
        }
    }

    /// Dissipationless model sharing this model's reactive part, used to
    /// locate narrow cavity resonances; `None` for strongly damped models.
    pub fn lossless_counterpart(&self) -> Option<Self> {
        match self {
            Self::IdealMetal | Self::PlasmaEps(_) | Self::InfraredZ(_) => Some(self.clone()),
            Self::Zp { params, .. } | Self::Zt { params, .. } => Some(Self::InfraredZ(*params)),
            _ => None,
        }
    }

    /// Largest ξ at which Z(iξ) stays non-negative, for models whose
    /// imaginary-axis impedance turns negative (Z_p with C > 0).
    pub fn imaginary_axis_limit(&self) -> Option<T> {
        match self {
            Self::Zp { params, c_ev } if *c_ev > T::zero() => {
                let c = *c_ev * T::lit(HBAR_EV) * T::lit(HBAR_EV);
                let wp2 = params.plasma_frequency * params.plasma_frequency;
                // ξ²(ω_p² + ξ²) = 1/C²
                let xi2 = T::lit(2.0) / (c * c) / (wp2 + (wp2 * wp2 + T::lit(4.0) / (c * c)).sqrt());
                Some(xi2.sqrt())
            }
            _ => None,
        }
    }

    /// ε(iξ); +∞ at ξ = 0 for metals and for the ideal metal everywhere.
    pub fn eps_imag(&self, xi: T, temperature: T) -> Result<T> {
        check_imag_frequency(xi)?;
        match self {
            Self::IdealMetal => Ok(T::infinity()),
            Self::PlasmaEps(p) => {
                let wp = p.plasma_frequency;
                Ok(T::one() + wp * wp / (xi * xi))
            }
            Self::DrudeEps(p, law) => {
                let wp = p.plasma_frequency;
                Ok(T::one() + wp * wp / (xi * (xi + law.rate(temperature))))
            }
            other => Err(Error::ModelMismatch(format!(
                "{} is an impedance model without a permittivity on the imaginary axis",
                other.name()
            ))),
        }
    }

    /// Z(iξ), real and non-negative for every model except Z_p at ξ beyond
    /// the infrared range.
    pub fn impedance_imag(&self, xi: T, temperature: T) -> Result<T> {
        check_imag_frequency(xi)?;
        let infrared = |p: &PlateParams<T>| {
            let wp = p.plasma_frequency;
            xi / (wp * wp + xi * xi).sqrt()
        };
        Ok(match self {
            Self::IdealMetal => T::zero(),
            Self::PlasmaEps(p) | Self::InfraredZ(p) => infrared(p),
            Self::Zt { params, .. } => infrared(params),
            Self::DrudeEps(p, law) | Self::DrudeZ(p, law) => {
                if xi.is_zero() {
                    return Ok(T::zero());
                }
                let wp = p.plasma_frequency;
                let gamma = law.rate(temperature);
                // 1/√(1 + ω_p²/(ξ(ξ+γ))) rewritten to stay accurate for ξ → 0
                let s = xi * (xi + gamma);
                (s / (s + wp * wp)).sqrt()
            }
            Self::NormalSkinZ(p, law) => {
                let sigma = p.static_conductivity_at(law, temperature);
                (xi / (T::lit(4.0) * T::PI() * sigma)).sqrt()
            }
            Self::Zp { params, c_ev } => {
                let c = *c_ev * T::lit(HBAR_EV) * T::lit(HBAR_EV);
                -c * xi * xi + infrared(params)
            }
        })
    }

    /// Z(ω) on the real axis, Re Z ≥ 0.
    pub fn impedance_real(&self, omega: T, temperature: T) -> Result<Complex<T>> {
        check_real_frequency(omega)?;
        Ok(match self {
            Self::IdealMetal => Complex::new(T::zero(), T::zero()),
            Self::InfraredZ(p) => below_plasma_impedance(omega, p.plasma_frequency),
            Self::PlasmaEps(_) | Self::DrudeEps(..) | Self::DrudeZ(..) => {
                let eps = self.drude_like_eps(omega, temperature);
                let mut root = eps.sqrt();
                if root.re < T::zero() {
                    root = -root;
                }
                root.inv()
            }
            Self::NormalSkinZ(p, law) => {
                let sigma = p.static_conductivity_at(law, temperature);
                let m = (omega / (T::lit(8.0) * T::PI() * sigma)).sqrt();
                Complex::new(m, -m)
            }
            Self::Zp { params, c_ev } => {
                let e = rad_per_s_to_ev(omega);
                below_plasma_impedance(omega, params.plasma_frequency) + Complex::new(*c_ev * e * e, T::zero())
            }
            Self::Zt {
                params,
                b,
                beta_ev,
                table,
            } => {
                let e = rad_per_s_to_ev(omega);
                let re = if e <= *beta_ev {
                    *b * (T::PI() * e * e / (T::lit(2.0) * *beta_ev * *beta_ev)).sin()
                } else if e <= T::lit(TABLE_COVERAGE_START_EV) {
                    *b
                } else {
                    table.interpolate(e)?
                };
                below_plasma_impedance(omega, params.plasma_frequency) + Complex::new(re, T::zero())
            }
        })
    }

    /// ε(ω) on the real axis; 1/Z² for impedance models, +∞ for the ideal
    /// metal.
    pub fn eps_real(&self, omega: T, temperature: T) -> Result<Complex<T>> {
        check_real_frequency(omega)?;
        match self {
            Self::IdealMetal => Ok(Complex::new(T::infinity(), T::zero())),
            Self::PlasmaEps(_) | Self::DrudeEps(..) => Ok(self.drude_like_eps(omega, temperature)),
            Self::NormalSkinZ(p, law) => {
                let sigma = p.static_conductivity_at(law, temperature);
                Ok(Complex::new(T::zero(), T::lit(4.0) * T::PI() * sigma / omega))
            }
            _ => {
                let z = self.impedance_real(omega, temperature)?;
                Ok((z * z).inv())
            }
        }
    }

    fn drude_like_eps(&self, omega: T, temperature: T) -> Complex<T> {
        let (wp, gamma) = match self {
            Self::PlasmaEps(p) => (p.plasma_frequency, T::zero()),
            Self::DrudeEps(p, law) | Self::DrudeZ(p, law) => (p.plasma_frequency, law.rate(temperature)),
            _ => unreachable!("only plasma and Drude models have a Drude permittivity"),
        };
        let one = Complex::new(T::one(), T::zero());
        one - Complex::new(wp * wp, T::zero()) / Complex::new(omega * omega, omega * gamma)
    }

    /// lim_{ξ→0} Z(iξ)/ξ for the impedance form of the reflection
    /// coefficients.
    pub fn static_slope(&self) -> StaticSlope<T> {
        match self {
            Self::IdealMetal => StaticSlope::Zero,
            Self::PlasmaEps(p) | Self::InfraredZ(p) => StaticSlope::Finite(T::one() / p.plasma_frequency),
            Self::Zp { params, .. } | Self::Zt { params, .. } => {
                StaticSlope::Finite(T::one() / params.plasma_frequency)
            }
            Self::DrudeEps(p, law) | Self::DrudeZ(p, law) => {
                if law.residual().is_zero() && law.gamma_300().is_zero() {
                    StaticSlope::Finite(T::one() / p.plasma_frequency)
                } else {
                    StaticSlope::Infinite
                }
            }
            Self::NormalSkinZ(..) => StaticSlope::Infinite,
        }
    }

    /// Static slope at a given temperature; Drude models with γ(T) = 0
    /// behave as the infrared-optics impedance.
    pub fn static_slope_at(&self, temperature: T) -> StaticSlope<T> {
        match self {
            Self::DrudeEps(p, _) | Self::DrudeZ(p, _) if self.relaxation_rate(temperature).is_zero() => {
                StaticSlope::Finite(T::one() / p.plasma_frequency)
            }
            _ => self.static_slope(),
        }
    }
}

/// σ(ω) = σ₀/(1 − iτω).
pub fn ac_conductivity<T: Real>(sigma0: T, tau: T, omega: T) -> Complex<T> {
    Complex::new(sigma0, T::zero()) / Complex::new(T::one(), -tau * omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::first_matsubara;

    fn gold() -> PlateParams<f64> {
        PlateParams::gold()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gold_parameter_relation() {
        let p = gold();
        let w2 = p.plasma_frequency().powi(2);
        assert!(rel(4.0 * std::f64::consts::PI * p.gamma_300() * p.static_conductivity(), w2) < 1e-12);
        assert!(rel(p.static_conductivity(), 2.797e17) < 1e-3);
        assert!(PlateParams::from_all(
            p.plasma_frequency(),
            p.gamma_300(),
            p.static_conductivity(),
            p.relaxation_time(),
            165.0
        )
        .is_ok());
        assert!(PlateParams::from_all(p.plasma_frequency(), p.gamma_300(), 3e17, p.relaxation_time(), 165.0).is_err());
    }

    #[test]
    fn plasma_eps_at_plasma_frequency() {
        let m = ResponseModel::plasma(gold());
        let wp = gold().plasma_frequency();
        assert!(rel(m.eps_imag(wp, 300.0).unwrap(), 2.0) < 1e-15);
    }

    #[test]
    fn drude_without_relaxation_is_plasma() {
        let p = gold();
        let drude = ResponseModel::DrudeEps(p, RelaxationLaw::constant(0.0));
        let plasma = ResponseModel::plasma(p);
        for xi in [1e12, 1e14, 1e16] {
            assert_eq!(drude.eps_imag(xi, 300.0).unwrap(), plasma.eps_imag(xi, 300.0).unwrap());
        }
        let dz = ResponseModel::DrudeZ(p, RelaxationLaw::constant(0.0));
        let ir = ResponseModel::infrared(p);
        for xi in [1e12, 1e14, 1e16] {
            assert!(
                rel(
                    dz.impedance_imag(xi, 300.0).unwrap(),
                    ir.impedance_imag(xi, 300.0).unwrap()
                ) < 1e-14
            );
        }
    }

    #[test]
    fn impedance_models_reject_eps_imag() {
        let m = ResponseModel::infrared(gold());
        assert!(matches!(m.eps_imag(1e14, 300.0), Err(Error::ModelMismatch(_))));
        assert!(matches!(m.impedance_imag(-1.0, 300.0), Err(Error::Domain(_))));
        assert!(matches!(m.impedance_real(0.0, 300.0), Err(Error::Domain(_))));
    }

    #[test]
    fn infrared_impedance_at_plasma_frequency() {
        let m = ResponseModel::infrared(gold());
        let wp = gold().plasma_frequency();
        assert!(rel(m.impedance_imag(wp, 300.0).unwrap(), 0.5f64.sqrt()) < 1e-15);
        assert_eq!(ResponseModel::<f64>::IdealMetal.impedance_imag(wp, 300.0).unwrap(), 0.0);
    }

    #[test]
    fn impedance_times_root_eps_is_one() {
        let p = gold();
        let pairs = [
            (ResponseModel::plasma(p), ResponseModel::infrared(p)),
            (ResponseModel::drude_eps(p), ResponseModel::drude_z(p)),
        ];
        for (eps_model, z_model) in &pairs {
            for xi in [1e11, 1e13, 2.5e14, 1e16] {
                let prod = z_model.impedance_imag(xi, 300.0).unwrap() * eps_model.eps_imag(xi, 300.0).unwrap().sqrt();
                assert!((prod - 1.0).abs() < 1e-12, "{} at xi = {xi}", z_model.name());
            }
            for w in [1e11, 1e13, 2.5e14, 5e15] {
                let z = z_model.impedance_real(w, 300.0).unwrap();
                let prod = z * eps_model.eps_real(w, 300.0).unwrap().sqrt();
                assert!(
                    (prod - Complex::new(1.0, 0.0)).norm() < 1e-12,
                    "{} at omega = {w}",
                    z_model.name()
                );
            }
        }
    }

    #[test]
    fn dissipative_models_have_positive_losses() {
        let p = gold();
        let table = Arc::new(OpticalTable::gold_standin());
        let models = [
            ResponseModel::drude_eps(p),
            ResponseModel::drude_z(p),
            ResponseModel::normal_skin(p),
            ResponseModel::zp(p, 0.004).unwrap(),
            ResponseModel::zt(p, 0.08, table).unwrap(),
        ];
        for m in &models {
            for w in [1e10, 1e12, 1e13, 1e14, 1e15, 5e15] {
                let z = m.impedance_real(w, 300.0).unwrap();
                let e = m.eps_real(w, 300.0).unwrap();
                assert!(z.re >= 0.0, "{}", m.name());
                assert!(e.im >= 0.0, "{}", m.name());
            }
        }
    }

    #[test]
    fn normal_skin_eps_is_imaginary() {
        let m = ResponseModel::normal_skin(gold());
        let w = 5.32e13;
        let e = m.eps_real(w, 300.0).unwrap();
        assert_eq!(e.re, 0.0);
        assert!(rel(e.im, 4.0 * std::f64::consts::PI * gold().static_conductivity() / w) < 1e-12);
        let z = m.impedance_real(w, 300.0).unwrap();
        assert!((z * e.sqrt() - Complex::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn normal_skin_at_characteristic_frequency() {
        let m = ResponseModel::normal_skin(gold());
        let omega_c = crate::constants::SPEED_OF_LIGHT / (2.0 * 200e-9);
        let z = m.impedance_real(omega_c, 300.0).unwrap().norm();
        assert!((z - 1.4e-2).abs() < 0.07e-2, "|Z_N| = {z}");
    }

    #[test]
    fn zp_real_part() {
        let m = ResponseModel::zp(gold(), 0.004).unwrap();
        let z = m.impedance_real(ev_to_rad_per_s(1.0), 300.0).unwrap();
        assert!(rel(z.re, 0.004) < 1e-12);
        assert!(ResponseModel::zp(gold(), -1.0).is_err());
    }

    #[test]
    fn zp_imaginary_axis_limit_is_the_sign_change() {
        let m = ResponseModel::zp(gold(), 0.004).unwrap();
        let xi = m.imaginary_axis_limit().unwrap();
        assert!(m.impedance_imag(xi * 0.999, 300.0).unwrap() > 0.0);
        assert!(m.impedance_imag(xi * 1.001, 300.0).unwrap() < 0.0);
        assert!(ResponseModel::infrared(gold()).imaginary_axis_limit().is_none());
    }

    #[test]
    fn zt_junctions_are_continuous() {
        let table = Arc::new(OpticalTable::gold_standin());
        for beta in [0.08, 0.1, 0.125] {
            let m = ResponseModel::zt(gold(), beta, table.clone()).unwrap();
            let at = |e: f64| m.impedance_real(ev_to_rad_per_s(e), 300.0).unwrap().re;
            assert!(rel(at(beta), 0.00389) < 1e-12);
            let d = 1e-9;
            assert!((at(beta * (1.0 - d)) - at(beta * (1.0 + d))).abs() < 1e-12);
            assert!((at(0.125 - d) - at(0.125 + d)).abs() < 1e-12);
        }
        assert!(ResponseModel::zt(gold(), 0.05, table.clone()).is_err());
        assert!(ResponseModel::zt(gold(), 0.2, table).is_err());
    }

    #[test]
    fn zt_outside_table_is_range_error() {
        let table = Arc::new(OpticalTable::gold_standin());
        let m = ResponseModel::zt(gold(), 0.1, table).unwrap();
        assert!(matches!(
            m.impedance_real(ev_to_rad_per_s(6.0), 300.0),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn above_plasma_frequency_impedance_is_real() {
        let m = ResponseModel::infrared(gold());
        let z = m.impedance_real(2.0 * gold().plasma_frequency(), 300.0).unwrap();
        assert_eq!(z.im, 0.0);
        assert!(rel(z.re, 2.0 / 3f64.sqrt()) < 1e-14);
    }

    #[test]
    fn drude_approaches_plasma_at_high_frequency() {
        let p = gold();
        let d = ResponseModel::drude_eps(p);
        let pl = ResponseModel::plasma(p);
        let w = 1e15;
        let diff = (d.eps_real(w, 300.0).unwrap() - pl.eps_real(w, 300.0).unwrap()).norm();
        assert!(diff / pl.eps_real(w, 300.0).unwrap().norm() < 2.0 * p.gamma_300() / w);
    }

    #[test]
    fn drude_impedance_approaches_infrared_as_gamma_vanishes() {
        let p = gold();
        let ir = ResponseModel::infrared(p);
        let xi = first_matsubara(300.0);
        for gamma in [1e10, 1e11, 1e12] {
            let d = ResponseModel::DrudeZ(p, RelaxationLaw::constant(gamma));
            let x = gamma / xi;
            let rz = p.plasma_frequency() / xi;
            let bound = x * rz * rz / 2.0 * (1.0 + rz * rz).powf(-1.5);
            let diff = (d.impedance_imag(xi, 300.0).unwrap() - ir.impedance_imag(xi, 300.0).unwrap()).abs();
            assert!(diff <= bound * 1.01, "gamma {gamma}: {diff} > {bound}");
        }
    }

    #[test]
    fn ac_conductivity_limits() {
        let s: Complex<f64> = ac_conductivity(3e17, 1.88e-14, 0.0);
        assert_eq!(s, Complex::new(3e17, 0.0));
        let at_knee = ac_conductivity(3e17, 1.88e-14, 1.0 / 1.88e-14);
        assert!(rel(at_knee.norm(), 3e17 / 2f64.sqrt()) < 1e-14);
        let mut prev = f64::INFINITY;
        for k in 0..40 {
            let m = ac_conductivity(3e17, 1.88e-14, 1e10 * 1.5f64.powi(k)).norm();
            assert!(m < prev);
            prev = m;
        }
    }

    #[test]
    fn static_slopes() {
        let p = gold();
        assert_eq!(ResponseModel::<f64>::IdealMetal.static_slope(), StaticSlope::Zero);
        assert_eq!(ResponseModel::drude_z(p).static_slope(), StaticSlope::Infinite);
        assert_eq!(ResponseModel::normal_skin(p).static_slope(), StaticSlope::Infinite);
        assert_eq!(
            ResponseModel::infrared(p).static_slope(),
            StaticSlope::Finite(1.0 / p.plasma_frequency())
        );
        let xi = 1e9;
        let z = ResponseModel::zp(p, 0.004).unwrap().impedance_imag(xi, 300.0).unwrap();
        assert!(rel(z / xi, 1.0 / p.plasma_frequency()) < 1e-6);
    }
}
