//! Casimir free energy and pressure between two plates: Matsubara sums on
//! the imaginary axis, zero-point parts, and the thermal correction with its
//! propagating/evanescent and TE/TM decomposition on the real axis.

mod imaginary;
pub(crate) mod real_axis;

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::materials::{ResponseForm, ResponseModel};
use crate::numerics::{QuadratureSpec, SumSpec};
use crate::Real;

pub use imaginary::{free_energy_matsubara, pressure_matsubara, zero_point_parts, MatsubaraTerms};
pub use real_axis::{channel_decomposition, real_axis_thermal_correction, ChannelSet, Channels};

/// Separation below which impedance models are outside their validity range.
pub const IMPEDANCE_MIN_SEPARATION: f64 = 200e-9;

/// Two plates at separation a and temperature T.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry<T> {
    separation: T,
    temperature: T,
    plates: [ResponseModel<T>; 2],
}

impl<T: Real> Geometry<T> {
    pub fn new(separation: T, temperature: T, first: ResponseModel<T>, second: ResponseModel<T>) -> Result<Self> {
        if !(separation > T::zero() && separation.is_finite()) {
            return Err(Error::InvalidParameter(format!("separation {separation} must be > 0")));
        }
        if !(temperature >= T::zero() && temperature.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "temperature {temperature} must be >= 0"
            )));
        }
        first.validate()?;
        second.validate()?;
        Ok(Self {
            separation,
            temperature,
            plates: [first, second],
        })
    }

    /// Two identical plates.
    pub fn symmetric(separation: T, temperature: T, model: ResponseModel<T>) -> Result<Self> {
        Self::new(separation, temperature, model.clone(), model)
    }

    pub fn separation(&self) -> T {
        self.separation
    }

    pub fn temperature(&self) -> T {
        self.temperature
    }

    pub fn plates(&self) -> &[ResponseModel<T>; 2] {
        &self.plates
    }

    pub fn with_temperature(&self, temperature: T) -> Result<Self> {
        Self::new(
            self.separation,
            temperature,
            self.plates[0].clone(),
            self.plates[1].clone(),
        )
    }

    pub fn with_separation(&self, separation: T) -> Result<Self> {
        Self::new(
            separation,
            self.temperature,
            self.plates[0].clone(),
            self.plates[1].clone(),
        )
    }

    /// Characteristic frequency Ω_c = c/(2a).
    pub fn characteristic_frequency(&self) -> T {
        T::lit(SPEED_OF_LIGHT) / (T::lit(2.0) * self.separation)
    }

    /// Effective temperature T_eff = ħc/(2a k_B).
    pub fn effective_temperature(&self) -> T {
        T::lit(HBAR) * self.characteristic_frequency() / T::lit(BOLTZMANN)
    }

    /// κ = 4πk_B aT/(ħc) = 2πT/T_eff, the spacing of ζ_l = 2aξ_l/c.
    pub fn kappa(&self) -> T {
        T::lit(2.0) * T::PI() * self.temperature / self.effective_temperature()
    }

    /// ρ = λ_p/(4πa) of the given plate, if it has a plasma frequency.
    pub fn rho(&self, plate: usize) -> Option<T> {
        self.plates[plate]
            .params()
            .map(|p| p.plasma_wavelength() / (T::lit(4.0) * T::PI() * self.separation))
    }

    /// Advisory messages, e.g. impedance models at separations below 200 nm.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, m) in self.plates.iter().enumerate() {
            let impedance = m.form() == ResponseForm::Impedance && !matches!(m, ResponseModel::IdealMetal);
            if impedance && self.separation < T::lit(IMPEDANCE_MIN_SEPARATION) {
                out.push(format!(
                    "plate {}: impedance model {} used at a = {} m below {} m",
                    i + 1,
                    m.name(),
                    self.separation,
                    IMPEDANCE_MIN_SEPARATION
                ));
            }
        }
        out
    }
}

/// Numerical tolerances for the Lifshitz computations.
#[derive(Debug, Clone, PartialEq)]
pub struct LifshitzSpec<T> {
    /// Wavenumber integrals on the imaginary axis.
    pub inner: QuadratureSpec<T>,
    /// Frequency integral of the zero-point parts.
    pub outer: QuadratureSpec<T>,
    pub sum: SumSpec<T>,
    /// Wavenumber integrals on the real axis.
    pub real_inner: QuadratureSpec<T>,
    /// Frequency integral on the real axis.
    pub real_outer: QuadratureSpec<T>,
}

impl<T: Real> Default for LifshitzSpec<T> {
    fn default() -> Self {
        let q = |tol: f64| QuadratureSpec::default().with_rel_tol(T::lit(tol).max(T::tolerance_floor()));
        Self {
            inner: q(1e-13),
            outer: q(1e-12),
            sum: SumSpec::default().with_rel_tol(T::lit(1e-15).max(T::epsilon())),
            real_inner: q(1e-10),
            real_outer: q(1e-8),
        }
    }
}

/// A computed quantity with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome<T> {
    pub value: T,
    pub error: T,
    pub converged: bool,
}

/// Frequency axis used for the thermal correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formulation {
    /// Matsubara sum minus the zero-point frequency integral.
    Imaginary,
    /// Bose-weighted real-frequency integral.
    Real,
}

impl Formulation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Formulation::Imaginary => "imaginary",
            Formulation::Real => "real",
        }
    }
}

impl std::str::FromStr for Formulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "imaginary" => Ok(Formulation::Imaginary),
            "real" => Ok(Formulation::Real),
            other => Err(Error::InvalidParameter(format!(
                "unknown formulation {other:?} (imaginary|real)"
            ))),
        }
    }
}

/// Thermal corrections to pressure and free energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalCorrection<T> {
    /// ΔP, Pa.
    pub pressure: Outcome<T>,
    /// ΔF, J/m².
    pub free_energy: Outcome<T>,
    pub formulation: Formulation,
}

/// Total pressure, its zero-point part, the thermal correction and its four
/// channels, all in Pa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureBreakdown<T> {
    pub total: T,
    pub zero_point: T,
    pub thermal: T,
    pub te_ew: T,
    pub te_pw: T,
    pub tm_ew: T,
    pub tm_pw: T,
    /// ΔP/ΔP of two ideal metals at the same a and T.
    pub ratio_to_ideal: T,
    pub converged: bool,
}

impl<T: Real> PressureBreakdown<T> {
    /// Channel fractions (TE EW, TE PW, TM EW, TM PW) of ΔP.
    pub fn fractions(&self) -> [T; 4] {
        [self.te_ew, self.te_pw, self.tm_ew, self.tm_pw].map(|c| c / self.thermal)
    }

    pub fn channel_sum(&self) -> T {
        self.te_ew + self.te_pw + self.tm_ew + self.tm_pw
    }
}

/// F = E + ΔF, J/m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEnergyBreakdown<T> {
    pub total: T,
    pub zero_point: T,
    pub thermal: T,
    pub converged: bool,
}

/// Zero-point energy E and pressure P₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroPoint<T> {
    pub energy: Outcome<T>,
    pub pressure: Outcome<T>,
}

fn combine<T: Real>(a: Outcome<T>, b: Outcome<T>, sign: T) -> Outcome<T> {
    Outcome {
        value: a.value + sign * b.value,
        error: a.error + b.error,
        converged: a.converged && b.converged,
    }
}

/// Thermal corrections ΔP and ΔF in the chosen formulation.
pub fn thermal_correction<T: Real>(
    geometry: &Geometry<T>,
    formulation: Formulation,
    spec: &LifshitzSpec<T>,
) -> Result<ThermalCorrection<T>> {
    if !(geometry.temperature() > T::zero()) {
        return Err(Error::Domain("thermal correction needs T > 0".into()));
    }
    match formulation {
        Formulation::Imaginary => {
            let terms = MatsubaraTerms::compute(geometry, spec)?;
            let zero = zero_point_parts(geometry, spec)?;
            Ok(ThermalCorrection {
                pressure: combine(terms.pressure, zero.pressure, -T::one()),
                free_energy: combine(terms.free_energy, zero.energy, -T::one()),
                formulation,
            })
        }
        Formulation::Real => {
            let c = real_axis_thermal_correction(geometry, spec)?;
            Ok(ThermalCorrection {
                pressure: c.pressure_total(),
                free_energy: c.free_energy_total(),
                formulation,
            })
        }
    }
}

/// F = E + ΔF with E from the zero-point integral and F from the Matsubara
/// sum.
pub fn free_energy_breakdown<T: Real>(
    geometry: &Geometry<T>,
    spec: &LifshitzSpec<T>,
) -> Result<FreeEnergyBreakdown<T>> {
    let terms = MatsubaraTerms::compute(geometry, spec)?;
    let zero = zero_point_parts(geometry, spec)?;
    Ok(FreeEnergyBreakdown {
        total: terms.free_energy.value,
        zero_point: zero.energy.value,
        thermal: terms.free_energy.value - zero.energy.value,
        converged: terms.free_energy.converged && zero.energy.converged,
    })
}

/// Pressure breakdown: P₀ on the imaginary axis, ΔP in the chosen
/// formulation, channels always from the real axis.
pub fn pressure_breakdown<T: Real>(
    geometry: &Geometry<T>,
    formulation: Formulation,
    spec: &LifshitzSpec<T>,
) -> Result<PressureBreakdown<T>> {
    let zero = zero_point_parts(geometry, spec)?;
    let channels = real_axis_thermal_correction(geometry, spec)?;
    let thermal = match formulation {
        Formulation::Real => channels.pressure_total(),
        Formulation::Imaginary => {
            let terms = MatsubaraTerms::compute(geometry, spec)?;
            combine(terms.pressure, zero.pressure, -T::one())
        }
    };
    let ideal = ideal_metal_reference(geometry.separation(), geometry.temperature(), spec)?;
    let p = &channels.pressure;
    Ok(PressureBreakdown {
        total: zero.pressure.value + thermal.value,
        zero_point: zero.pressure.value,
        thermal: thermal.value,
        te_ew: p.te_ew,
        te_pw: p.te_pw,
        tm_ew: p.tm_ew,
        tm_pw: p.tm_pw,
        ratio_to_ideal: thermal.value / ideal.total,
        converged: zero.pressure.converged && thermal.converged && channels.converged,
    })
}

/// Thermal correction to the pressure between two ideal metals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealReference<T> {
    /// ΔP^{IM}, Pa.
    pub total: T,
    /// TE part of ΔP^{IM}, Pa.
    pub te: T,
    /// Evanescent part, identically zero.
    pub evanescent: T,
}

/// ΔP of two ideal metals (Z = 0) from the real-axis formulation.
pub fn ideal_metal_reference<T: Real>(
    separation: T,
    temperature: T,
    spec: &LifshitzSpec<T>,
) -> Result<IdealReference<T>> {
    let g = Geometry::symmetric(separation, temperature, ResponseModel::IdealMetal)?;
    let c = real_axis_thermal_correction(&g, spec)?;
    let p = &c.pressure;
    Ok(IdealReference {
        total: p.total(),
        te: p.te_pw + p.te_ew,
        evanescent: p.te_ew + p.tm_ew,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::PlateParams;

    #[test]
    fn geometry_derived_quantities() {
        let g = Geometry::symmetric(1e-6, 300.0, ResponseModel::infrared(PlateParams::<f64>::gold())).unwrap();
        assert!((g.effective_temperature() - 1144.94).abs() < 0.01);
        assert!((g.rho(0).unwrap() - 0.010962610024668948).abs() < 1e-12);
        assert!((g.kappa() - 2.0 * std::f64::consts::PI * 300.0 / g.effective_temperature()).abs() < 1e-15);
        assert!(g.warnings().is_empty());
        let close = g.with_separation(150e-9).unwrap();
        assert_eq!(close.warnings().len(), 2);
        assert!(Geometry::symmetric(-1.0, 300.0, ResponseModel::<f64>::IdealMetal).is_err());
    }

    #[test]
    fn formulation_parses() {
        assert_eq!("real".parse::<Formulation>().unwrap(), Formulation::Real);
        assert!("both".parse::<Formulation>().is_err());
    }
}
