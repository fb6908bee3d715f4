//! Numerical entropy on a temperature ladder and the T → 0 verdict.

use super::{
    drude_entropy_scale, drude_log_entropy, drude_log_free_energy, drude_zero_mode_terms, entropy_lowt_ir,
    entropy_t0_unchecked, rho, thermal_free_energy_lowt_ir,
};
use crate::error::{Error, Result};
use crate::lifshitz::{zero_point_parts, Geometry, LifshitzSpec, MatsubaraTerms};
use crate::materials::{PlateParams, ResponseModel};
use crate::numerics::ddt;
use crate::Real;

/// Lowest temperature accepted on a ladder, K.
const MIN_LADDER_TEMPERATURE: f64 = 1.0;
/// |s₀| below this fraction of k_Bζ(3)ρ/(2πa²) counts as vanishing entropy.
const SATISFIED_FRACTION: f64 = 1e-2;
/// s₀ above this fraction of S_D(a, 0) counts as a violation.
const VIOLATED_FRACTION: f64 = 0.5;

/// Outcome of the T → 0 entropy test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Satisfied => "nernst-satisfied",
            Verdict::Violated => "nernst-violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Free energy and entropy at one ladder temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderPoint<T> {
    pub temperature: T,
    /// F, J/m².
    pub free_energy: T,
    /// Low-temperature expansion of F where it applies, J/m².
    pub free_energy_asymptotic: Option<T>,
    /// S = −∂F/∂T, J/(m²K).
    pub entropy: T,
    pub entropy_error: T,
    /// Low-temperature expansion of S where it applies, J/(m²K).
    pub entropy_asymptotic: Option<T>,
    pub converged: bool,
}

/// Entropy ladder, fitted T → 0 intercept and verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport<T> {
    pub model: &'static str,
    pub separation: T,
    /// Temperatures strictly decreasing.
    pub points: Vec<LadderPoint<T>>,
    /// s₀ of the fit S − S_log = s₀ + s₂T² on the three lowest temperatures.
    pub intercept: Option<T>,
    /// k_Bζ(3)ρ/(2πa²).
    pub scale: T,
    /// S_D(a, 0) from the exact zero-frequency integral.
    pub drude_prediction: T,
    pub verdict: Verdict,
    pub diagnostics: Vec<String>,
}

/// 300, 150, 77, 30, 10, 4, 2 K.
pub fn default_ladder<T: Real>() -> Vec<T> {
    [300.0, 150.0, 77.0, 30.0, 10.0, 4.0, 2.0]
        .into_iter()
        .map(T::lit)
        .collect()
}

/// Least-squares s₀ of s = s₀ + s₂T².
fn fit_intercept<T: Real>(samples: &[(T, T)]) -> T {
    let n = T::from_count(samples.len());
    let (sx, sy, sxx, sxy) = samples
        .iter()
        .fold((T::zero(), T::zero(), T::zero(), T::zero()), |acc, &(t, s)| {
            let x = t * t;
            (acc.0 + x, acc.1 + s, acc.2 + x * x, acc.3 + x * s)
        });
    (sxx * sy - sx * sxy) / (n * sxx - sx * sx)
}

/// Computes S = −∂F/∂T on `ladder` for two plates of `model` at separation
/// `separation` and judges whether S → 0 as T → 0. For the Drude impedance
/// the logarithmic term of its low-temperature entropy is subtracted before
/// the fit.
pub fn nernst_test<T: Real>(
    model: &ResponseModel<T>,
    separation: T,
    ladder: &[T],
    spec: &LifshitzSpec<T>,
) -> Result<AsymptoticReport<T>> {
    if ladder.is_empty() {
        return Err(Error::InvalidParameter("empty temperature ladder".into()));
    }
    if ladder.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidParameter(
            "temperature ladder must be strictly decreasing".into(),
        ));
    }
    if let Some(&low) = ladder.last() {
        if !(low >= T::lit(MIN_LADDER_TEMPERATURE)) {
            return Err(Error::InvalidParameter(format!(
                "ladder temperature {low} K below {MIN_LADDER_TEMPERATURE} K"
            )));
        }
    }
    let base = Geometry::symmetric(separation, ladder[0], model.clone())?;
    let reference = model.params().copied().unwrap_or_else(PlateParams::gold);
    let wp = reference.plasma_frequency();
    let scale = drude_entropy_scale(separation, wp);
    let drude_prediction = entropy_t0_unchecked(separation, rho(separation, wp)).quadrature;
    // the expansions are about γ = 0, so E(a) is that of the infrared-optics impedance
    let expansion_base = match model {
        ResponseModel::DrudeZ(params, _) => {
            Geometry::symmetric(separation, ladder[0], ResponseModel::infrared(*params))?
        }
        _ => base.clone(),
    };
    let energy = zero_point_parts(&expansion_base, spec)?.energy.value;

    let mut diagnostics = Vec::new();
    let mut points = Vec::with_capacity(ladder.len());
    for &t in ladder {
        let g = base.with_temperature(t)?;
        let terms = MatsubaraTerms::compute(&g, spec)?;
        let mut converged = terms.free_energy.converged;
        let mut failure = None;
        let derivative = ddt(
            |x| match base
                .with_temperature(x)
                .and_then(|gx| MatsubaraTerms::compute(&gx, spec))
            {
                Ok(m) => {
                    converged &= m.free_energy.converged;
                    m.free_energy.value
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    T::nan()
                }
            },
            t,
            None,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        if !converged {
            diagnostics.push(format!("free energy not converged at T = {t} K"));
        }
        let (free_energy_asymptotic, entropy_asymptotic) = asymptotic_forms(model, separation, t, energy);
        points.push(LadderPoint {
            temperature: t,
            free_energy: terms.free_energy.value,
            free_energy_asymptotic,
            entropy: -derivative.value,
            entropy_error: derivative.error,
            entropy_asymptotic,
            converged,
        });
    }

    let mut intercept = None;
    let verdict = if points.len() < 3 {
        diagnostics.push(format!("{} ladder point(s); the fit needs three", points.len()));
        Verdict::Inconclusive
    } else if points.iter().any(|p| !p.converged) {
        Verdict::Inconclusive
    } else {
        let lowest: Vec<(T, T)> = points[points.len() - 3..]
            .iter()
            .map(|p| (p.temperature, p.entropy - log_entropy(model, separation, p.temperature)))
            .collect();
        let s0 = fit_intercept(&lowest);
        intercept = Some(s0);
        if s0.abs() < T::lit(SATISFIED_FRACTION) * scale {
            Verdict::Satisfied
        } else if s0 > T::lit(VIOLATED_FRACTION) * drude_prediction {
            Verdict::Violated
        } else {
            diagnostics.push(format!(
                "intercept {s0} is neither below {SATISFIED_FRACTION} x {scale} nor above {VIOLATED_FRACTION} x {drude_prediction}"
            ));
            Verdict::Inconclusive
        }
    };

    Ok(AsymptoticReport {
        model: model.name(),
        separation,
        points,
        intercept,
        scale,
        drude_prediction,
        verdict,
        diagnostics,
    })
}

/// Logarithmic entropy term subtracted before the fit (Drude impedance only).
fn log_entropy<T: Real>(model: &ResponseModel<T>, separation: T, temperature: T) -> T {
    match model {
        ResponseModel::DrudeZ(params, law) => drude_log_entropy(
            separation,
            temperature,
            law.rate(temperature),
            params.plasma_frequency(),
        ),
        _ => T::zero(),
    }
}

/// Low-temperature expansions of F and S for the models that have one.
fn asymptotic_forms<T: Real>(
    model: &ResponseModel<T>,
    separation: T,
    temperature: T,
    energy: T,
) -> (Option<T>, Option<T>) {
    match model {
        ResponseModel::InfraredZ(p) | ResponseModel::PlasmaEps(p) => {
            let wp = p.plasma_frequency();
            (
                thermal_free_energy_lowt_ir(separation, temperature, wp)
                    .ok()
                    .map(|f| energy + f),
                entropy_lowt_ir(separation, temperature, wp).ok(),
            )
        }
        ResponseModel::DrudeZ(p, law) => {
            let wp = p.plasma_frequency();
            let gamma = law.rate(temperature);
            let Ok(zero) = drude_zero_mode_terms(separation, temperature, wp) else {
                return (None, None);
            };
            let r = rho(separation, wp);
            let bracket_entropy = entropy_t0_unchecked(separation, r).quadrature;
            (
                Some(energy + zero.difference + drude_log_free_energy(separation, temperature, gamma, wp)),
                Some(bracket_entropy + drude_log_entropy(separation, temperature, gamma, wp)),
            )
        }
        _ => (None, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intercept_of_exact_quadratic() {
        let samples: [(f64, f64); 3] = [
            (10.0, 3.0 + 0.5 * 100.0),
            (4.0, 3.0 + 0.5 * 16.0),
            (2.0, 3.0 + 0.5 * 4.0),
        ];
        assert!((fit_intercept(&samples) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn ladder_validation() {
        let spec = LifshitzSpec::default();
        let m = ResponseModel::<f64>::IdealMetal;
        assert!(nernst_test(&m, 1e-6, &[10.0, 20.0], &spec).is_err());
        assert!(nernst_test(&m, 1e-6, &[10.0, 0.5], &spec).is_err());
        assert!(nernst_test(&m, 1e-6, &[], &spec).is_err());
    }

    #[test]
    fn single_point_is_inconclusive() {
        let r = nernst_test(
            &ResponseModel::<f64>::IdealMetal,
            1e-6,
            &[30.0],
            &LifshitzSpec::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.intercept.is_none());
    }

    #[test]
    fn ideal_metal_satisfies() {
        let r = nernst_test(
            &ResponseModel::<f64>::IdealMetal,
            0.5e-6,
            &[30.0, 10.0, 4.0, 2.0],
            &LifshitzSpec::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied, "{r:?}");
    }
}
