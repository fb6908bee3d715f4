//! Radiative heat transfer between two plates held at different
//! temperatures, and the thermal emission of a single plate.
//!
//! Scaled variables as on the real axis of the Lifshitz code: ℓ = 2a,
//! W = ℓω/c, U = ℓk_z on propagating waves, V = ℓq on evanescent waves and
//! K = ℓk⊥. With Δn the difference of the Bose factors of the two plates,
//!
//! S_PW = ħc²/(4π²ℓ⁴) ∫ W Δn ∫₀^W U Σ_α (1 − |r₁|²)(1 − |r₂|²)/|1 − r₁r₂e^{iU}|² dU dW,
//! S_EW = ħc²/(π²ℓ⁴) ∫ W Δn ∫₀^∞ V Σ_α Im r₁ Im r₂ e^{−V}/|1 − r₁r₂e^{−V}|² dV dW.
//!
//! The closed forms integrate over K with the metal wavenumbers (permittivity
//! plates) or the impedances (impedance plates) in place of the reflection
//! coefficients.

mod kirchhoff;

pub use kirchhoff::{emittivity, kirchhoff_flux};

use num_complex::Complex;

use crate::constants::{ev_to_rad_per_s, BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::lifshitz::real_axis::{guided_breakpoints, normal_incidence_poles, PlatePair, TE, TM};
use crate::lifshitz::Outcome;
use crate::materials::{ResponseForm, ResponseModel, TABLE_COVERAGE_START_EV};
use crate::numerics::{geometric_breakpoints, integrate_n, Domain, QuadratureSpec};
use crate::reflection::{one_minus_product, upper_sqrt, RealKernel, Resolved};
use crate::Real;

/// Upper frequency limit: ħω = 40 k_BT of the hotter plate.
const FREQUENCY_CUTOFF: f64 = 40.0;
/// Upper evanescent wavenumber: V = 2aq = 40.
const EW_CUTOFF: f64 = 40.0;

/// One side of the gap.
#[derive(Debug, Clone, PartialEq)]
pub enum Surface<T> {
    /// r ≡ 0.
    BlackBody,
    Plate(ResponseModel<T>),
}

impl<T: Real> Surface<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Self::BlackBody => "black-body",
            Self::Plate(m) => m.name(),
        }
    }

    pub fn model(&self) -> Option<&ResponseModel<T>> {
        match self {
            Self::BlackBody => None,
            Self::Plate(m) => Some(m),
        }
    }

    /// True when the surface absorbs nothing below `omega_max`.
    fn is_dark_below(&self, omega_max: T, temperature: T) -> bool {
        match self {
            Self::BlackBody => false,
            Self::Plate(ResponseModel::IdealMetal) => true,
            Self::Plate(m) => {
                m.is_lossless_at(temperature) && m.params().is_some_and(|p| p.plasma_frequency() > omega_max)
            }
        }
    }

    fn kernel(&self, form: ResponseForm, omega: T, temperature: T, scale: T) -> Result<PlateKernel<T>> {
        match self {
            Self::BlackBody => Ok(PlateKernel::Black),
            Self::Plate(m) => Ok(PlateKernel::Reflecting(RealKernel::new(
                m,
                form,
                omega,
                temperature,
                scale,
            )?)),
        }
    }
}

impl<T> From<ResponseModel<T>> for Surface<T> {
    fn from(model: ResponseModel<T>) -> Self {
        Self::Plate(model)
    }
}

/// Reflection of one surface at a fixed real frequency.
#[derive(Debug, Clone, Copy)]
enum PlateKernel<T> {
    Black,
    Reflecting(RealKernel<T>),
}

impl<T: Real> PlateKernel<T> {
    fn resolved(&self, u: Complex<T>) -> [Resolved<T>; 2] {
        match self {
            Self::Black => [Resolved::black(); 2],
            Self::Reflecting(k) => k.resolved(u),
        }
    }

    /// Scaled wavenumbers where the reflection coefficients change
    /// behaviour.
    fn scales(&self) -> Vec<T> {
        let mut out = match *self {
            Self::Reflecting(RealKernel::Impedance { z, w }) => vec![z.norm() * w, w / z.norm()],
            Self::Reflecting(RealKernel::Permittivity { eps, w }) => {
                vec![
                    (eps - Complex::new(T::one(), T::zero())).norm().sqrt() * w,
                    w / eps.norm().sqrt(),
                ]
            }
            _ => Vec::new(),
        };
        out.retain(|v| v.is_finite() && *v > T::zero());
        out
    }
}

/// Two plates across a vacuum gap, each at its own temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatConfig<T> {
    separation: T,
    temperatures: [T; 2],
    plates: [Surface<T>; 2],
}

impl<T: Real> HeatConfig<T> {
    /// `separation` in m, temperatures in K.
    pub fn new(separation: T, t1: T, t2: T, first: Surface<T>, second: Surface<T>) -> Result<Self> {
        if !(separation > T::zero() && separation.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "separation {separation} m must be > 0"
            )));
        }
        for t in [t1, t2] {
            if !(t >= T::zero() && t.is_finite()) {
                return Err(Error::InvalidParameter(format!("temperature {t} K must be >= 0")));
            }
        }
        for m in [&first, &second].into_iter().filter_map(|s| s.model()) {
            m.validate()?;
        }
        Ok(Self {
            separation,
            temperatures: [t1, t2],
            plates: [first, second],
        })
    }

    /// Identical plates of `model`.
    pub fn symmetric(separation: T, t1: T, t2: T, model: ResponseModel<T>) -> Result<Self> {
        Self::new(separation, t1, t2, Surface::Plate(model.clone()), Surface::Plate(model))
    }

    pub fn separation(&self) -> T {
        self.separation
    }

    pub fn temperatures(&self) -> [T; 2] {
        self.temperatures
    }

    pub fn plates(&self) -> &[Surface<T>; 2] {
        &self.plates
    }

    pub fn with_separation(&self, separation: T) -> Result<Self> {
        let [t1, t2] = self.temperatures;
        let [p1, p2] = self.plates.clone();
        Self::new(separation, t1, t2, p1, p2)
    }

    /// Plates and their temperatures exchanged.
    pub fn swapped(&self) -> Self {
        let [t1, t2] = self.temperatures;
        let [p1, p2] = self.plates.clone();
        Self {
            separation: self.separation,
            temperatures: [t2, t1],
            plates: [p2, p1],
        }
    }

    /// Permittivity form when every plate is defined by a permittivity (or
    /// is a black body), impedance form otherwise.
    pub fn natural_form(&self) -> ResponseForm {
        let permittivity = self.plates.iter().all(|p| match p {
            Surface::BlackBody => true,
            Surface::Plate(m) => m.form() == ResponseForm::Permittivity,
        });
        if permittivity {
            ResponseForm::Permittivity
        } else {
            ResponseForm::Impedance
        }
    }

    /// Scale ℓ = 2a, m.
    fn scale(&self) -> T {
        T::lit(2.0) * self.separation
    }

    /// ħc/(2ak_B), K.
    fn effective_temperature(&self) -> T {
        T::lit(HBAR) * T::lit(SPEED_OF_LIGHT) / (self.scale() * T::lit(BOLTZMANN))
    }
}

/// How the flux integral is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatFormulation {
    /// Propagating and evanescent parts with the reflection coefficients.
    Split,
    /// Single K-integral with the metal wavenumbers or the impedances.
    ClosedForm,
}

impl HeatFormulation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Split => "split",
            Self::ClosedForm => "closed-form",
        }
    }
}

/// Flux per polarization and wave type, W/m².
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HeatChannels<T> {
    pub te_pw: T,
    pub te_ew: T,
    pub tm_pw: T,
    pub tm_ew: T,
}

impl<T: Real> HeatChannels<T> {
    pub fn total(&self) -> T {
        self.propagating() + self.evanescent()
    }

    pub fn propagating(&self) -> T {
        self.te_pw + self.tm_pw
    }

    pub fn evanescent(&self) -> T {
        self.te_ew + self.tm_ew
    }
}

/// Heat flux from plate one to plate two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatFluxResult<T> {
    pub channels: HeatChannels<T>,
    /// Absolute error estimate, W/m².
    pub error: T,
    pub converged: bool,
    pub form: ResponseForm,
    pub formulation: HeatFormulation,
    /// One of the plates absorbs nothing in the thermal range, so S = 0.
    pub dissipationless: bool,
}

impl<T: Real> HeatFluxResult<T> {
    /// S, W/m².
    pub fn total(&self) -> T {
        self.channels.total()
    }

    /// S_PW, W/m².
    pub fn propagating(&self) -> T {
        self.channels.propagating()
    }

    /// S_EW, W/m².
    pub fn evanescent(&self) -> T {
        self.channels.evanescent()
    }

    /// S_{TE,EW}/S, `None` when no heat is exchanged.
    pub fn te_ew_fraction(&self) -> Option<T> {
        let total = self.total();
        (!total.is_zero()).then(|| self.channels.te_ew / total)
    }

    pub fn outcome(&self) -> Outcome<T> {
        Outcome {
            value: self.total(),
            error: self.error,
            converged: self.converged,
        }
    }
}

/// Tolerances of the heat-flux and emission integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatSpec<T> {
    /// Wavenumber integrals.
    pub inner: QuadratureSpec<T>,
    /// Frequency integral.
    pub outer: QuadratureSpec<T>,
}

impl<T: Real> Default for HeatSpec<T> {
    fn default() -> Self {
        let q = |tol: f64| QuadratureSpec::default().with_rel_tol(T::lit(tol).max(T::tolerance_floor()));
        Self {
            inner: q(1e-9),
            outer: q(1e-7),
        }
    }
}

/// Heat flux with permittivity-form reflection coefficients, split into
/// propagating and evanescent parts.
pub fn heat_flux_dielectric<T: Real>(cfg: &HeatConfig<T>, spec: &HeatSpec<T>) -> Result<HeatFluxResult<T>> {
    heat_flux(cfg, ResponseForm::Permittivity, HeatFormulation::Split, spec)
}

/// Heat flux with impedance-form reflection coefficients, split into
/// propagating and evanescent parts.
pub fn heat_flux_impedance<T: Real>(cfg: &HeatConfig<T>, spec: &HeatSpec<T>) -> Result<HeatFluxResult<T>> {
    heat_flux(cfg, ResponseForm::Impedance, HeatFormulation::Split, spec)
}

/// S_{TE,EW}/S in the natural form of the plates; `None` when no heat is
/// exchanged.
pub fn te_ew_fraction<T: Real>(cfg: &HeatConfig<T>, spec: &HeatSpec<T>) -> Result<Option<T>> {
    Ok(heat_flux(cfg, cfg.natural_form(), HeatFormulation::Split, spec)?.te_ew_fraction())
}

/// Heat flux from plate one to plate two in the given response form and
/// formulation. The closed impedance form needs reflecting plates on both
/// sides.
pub fn heat_flux<T: Real>(
    cfg: &HeatConfig<T>,
    form: ResponseForm,
    formulation: HeatFormulation,
    spec: &HeatSpec<T>,
) -> Result<HeatFluxResult<T>> {
    if formulation == HeatFormulation::ClosedForm
        && form == ResponseForm::Impedance
        && cfg.plates.iter().any(|p| matches!(p, Surface::BlackBody))
    {
        return Err(Error::ModelMismatch("a black body has no surface impedance".into()));
    }
    let [t1, t2] = cfg.temperatures;
    let t_max = t1.max(t2);
    let zero = HeatFluxResult {
        channels: HeatChannels::default(),
        error: T::zero(),
        converged: true,
        form,
        formulation,
        dissipationless: false,
    };
    if t1 == t2 {
        return Ok(zero);
    }
    let omega_max = T::lit(FREQUENCY_CUTOFF) * T::lit(BOLTZMANN) * t_max / T::lit(HBAR);
    if cfg.plates[0].is_dark_below(omega_max, t1) || cfg.plates[1].is_dark_below(omega_max, t2) {
        return Ok(HeatFluxResult {
            dissipationless: true,
            ..zero
        });
    }

    let scale = cfg.scale();
    let t_eff = cfg.effective_temperature();
    let w_max = omega_max * scale / T::lit(SPEED_OF_LIGHT);
    let guide = guide_models(cfg);
    let points = frequency_breakpoints(cfg, guide.as_ref(), w_max)?;
    let outer = spec
        .outer
        .clone()
        .with_breakpoints(points.into_iter().map(|p| p.sqrt()).collect());
    let bose = |w: T, t: T| {
        if t > T::zero() {
            T::one() / (w * t_eff / t).exp_m1()
        } else {
            T::zero()
        }
    };

    let mut spectrum = Spectrum {
        cfg,
        form,
        guide: guide.as_ref(),
        inner: &spec.inner,
        converged: true,
    };
    let mut failure = None;
    let r = integrate_n(
        |root| {
            if failure.is_some() {
                return [T::zero(); 4];
            }
            let w = root * root;
            let weight = (root + root) * w * (bose(w, t1) - bose(w, t2));
            if weight.is_zero() {
                return [T::zero(); 4];
            }
            let value = match formulation {
                HeatFormulation::Split => spectrum.split(w),
                HeatFormulation::ClosedForm => spectrum.closed(w),
            };
            match value {
                Ok(v) => v.map(|x| weight * x),
                Err(e) => {
                    failure = Some(e);
                    [T::zero(); 4]
                }
            }
        },
        Domain::Finite(T::zero(), w_max.sqrt()),
        &outer,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let hc2 = T::lit(HBAR) * T::lit(SPEED_OF_LIGHT) * T::lit(SPEED_OF_LIGHT);
    let base = hc2 / (T::PI() * T::PI() * scale.powi(4));
    let (pw, ew) = match formulation {
        HeatFormulation::Split => (base / T::lit(4.0), base),
        HeatFormulation::ClosedForm => (base * T::lit(4.0), base * T::lit(4.0)),
    };
    let [te_pw, te_ew, tm_pw, tm_ew] = r.value;
    Ok(HeatFluxResult {
        channels: HeatChannels {
            te_pw: pw * te_pw,
            te_ew: ew * te_ew,
            tm_pw: pw * tm_pw,
            tm_ew: ew * tm_ew,
        },
        error: pw.max(ew) * r.error,
        converged: r.converged && spectrum.converged,
        ..zero
    })
}

/// Dissipationless counterparts of weakly damped plates, whose cavity and
/// surface resonances guide the quadrature.
fn guide_models<T: Real>(cfg: &HeatConfig<T>) -> Option<[ResponseModel<T>; 2]> {
    match (
        cfg.plates[0].model()?.lossless_counterpart(),
        cfg.plates[1].model()?.lossless_counterpart(),
    ) {
        (Some(a), Some(b)) => Some([a, b]),
        _ => None,
    }
}

fn frequency_breakpoints<T: Real>(
    cfg: &HeatConfig<T>,
    guide: Option<&[ResponseModel<T>; 2]>,
    w_max: T,
) -> Result<Vec<T>> {
    let scale = cfg.scale();
    let to_w = |omega: T| omega * scale / T::lit(SPEED_OF_LIGHT);
    let mut points = geometric_breakpoints(w_max, T::lit(0.1), 14);
    let mut m = 1;
    while T::from_count(m) * T::TAU() < w_max {
        points.push(T::from_count(m) * T::TAU());
        m += 1;
    }
    if let Some(models) = guide {
        points.extend(normal_incidence_poles(models, cfg.temperatures[0], scale, w_max)?);
    }
    for (surface, &t) in cfg.plates.iter().zip(&cfg.temperatures) {
        match surface {
            Surface::Plate(ResponseModel::Zt { beta_ev, .. }) => {
                points.push(to_w(ev_to_rad_per_s(*beta_ev)));
                points.push(to_w(ev_to_rad_per_s(T::lit(TABLE_COVERAGE_START_EV))));
            }
            Surface::Plate(m) if m.relaxation_rate(t) > T::zero() => points.push(to_w(m.relaxation_rate(t))),
            _ => {}
        }
    }
    points.retain(|&p| p > T::zero() && p < w_max);
    Ok(points)
}

/// Inner wavenumber integrals at one scaled frequency W, ordered
/// [TE PW, TE EW, TM PW, TM EW].
struct Spectrum<'a, T> {
    cfg: &'a HeatConfig<T>,
    form: ResponseForm,
    guide: Option<&'a [ResponseModel<T>; 2]>,
    inner: &'a QuadratureSpec<T>,
    converged: bool,
}

impl<T: Real> Spectrum<'_, T> {
    fn kernels(&self, w: T) -> Result<[PlateKernel<T>; 2]> {
        let scale = self.cfg.scale();
        let omega = w * T::lit(SPEED_OF_LIGHT) / scale;
        let [t1, t2] = self.cfg.temperatures;
        Ok([
            self.cfg.plates[0].kernel(self.form, omega, t1, scale)?,
            self.cfg.plates[1].kernel(self.form, omega, t2, scale)?,
        ])
    }

    /// Breakpoints in U and V for polarization `pol`.
    fn breakpoints(&self, kernels: &[PlateKernel<T>; 2], w: T, pol: usize) -> Result<(Vec<T>, Vec<T>)> {
        let mut pw = geometric_breakpoints(w, T::lit(0.1), 6);
        let mut m = 1;
        while T::from_count(m) * T::TAU() < w {
            pw.push(T::from_count(m) * T::TAU());
            m += 1;
        }
        let mut ew = vec![T::one()];
        ew.extend(geometric_breakpoints(T::one(), T::lit(0.1), 12));
        for v in kernels.iter().flat_map(|k| k.scales()) {
            pw.push(v);
            ew.extend([v * T::lit(0.1), v, v * T::lit(10.0)]);
        }
        if let (Some(models), [PlateKernel::Reflecting(k1), PlateKernel::Reflecting(k2)]) = (self.guide, kernels) {
            let scale = self.cfg.scale();
            let omega = w * T::lit(SPEED_OF_LIGHT) / scale;
            let [t1, t2] = self.cfg.temperatures;
            let guide = PlatePair::from_kernels(
                [
                    RealKernel::new(&models[0], self.form, omega, t1, scale)?,
                    RealKernel::new(&models[1], self.form, omega, t2, scale)?,
                ],
                w,
            );
            let (gp, ge) = guided_breakpoints(&PlatePair::from_kernels([*k1, *k2], w), &guide, pol);
            pw.extend(gp);
            ew.extend(ge);
        }
        pw.retain(|&u| u > T::zero() && u < w);
        ew.retain(|&v| v > T::zero() && v < T::lit(EW_CUTOFF));
        Ok((pw, ew))
    }

    /// Absolute accuracy of the inner integrals at W, negligible against the
    /// flux once weighted by the Bose difference.
    fn abs_floor(&self, w: T) -> T {
        self.inner.rel_tol * T::lit(1e-3) * w * (T::one() + w)
    }

    fn integrate<const N: usize>(&mut self, f: impl FnMut(T) -> [T; N], range: (T, T), w: T, points: Vec<T>) -> [T; N] {
        let (lo, hi) = range;
        let spec = self
            .inner
            .clone()
            .with_breakpoints(points)
            .with_abs_tol(self.abs_floor(w));
        let r = integrate_n(f, Domain::Finite(lo, hi), &spec);
        self.converged &= r.converged;
        r.value
    }

    fn split(&mut self, w: T) -> Result<[T; 4]> {
        let kernels = self.kernels(w)?;
        let mut out = [T::zero(); 4];
        for (slot, pol) in [(0, TE), (2, TM)] {
            let (pw_points, ew_points) = self.breakpoints(&kernels, w, pol)?;
            let pw = self.integrate(|u| [pw_split(&kernels, pol, u)], (T::zero(), w), w, pw_points);
            let ew = self.integrate(
                |v| [ew_split(&kernels, pol, v)],
                (T::zero(), T::lit(EW_CUTOFF)),
                w,
                ew_points,
            );
            out[slot] = pw[0];
            out[slot + 1] = ew[0];
        }
        Ok(out)
    }

    fn closed(&mut self, w: T) -> Result<[T; 4]> {
        let kernels = self.kernels(w)?;
        let plates = ClosedPlates::new(self.cfg, self.form, w)?;
        let mut out = [T::zero(); 4];
        for (slot, pol) in [(0, TE), (2, TM)] {
            let (pw_points, ew_points) = self.breakpoints(&kernels, w, pol)?;
            let to_k_pw = |u: T| ((w - u) * (w + u)).sqrt();
            let to_k_ew = |v: T| w.hypot(v);
            let k_pw: Vec<T> = pw_points.into_iter().map(to_k_pw).collect();
            let k_ew: Vec<T> = ew_points.into_iter().map(to_k_ew).collect();
            let pw = self.integrate(|k| [plates.integrand(k, pol)], (T::zero(), w), w, k_pw);
            let ew = self.integrate(|k| [plates.integrand(k, pol)], (w, to_k_ew(T::lit(EW_CUTOFF))), w, k_ew);
            out[slot] = pw[0];
            out[slot + 1] = ew[0];
        }
        Ok(out)
    }
}

/// U (1 − |r₁|²)(1 − |r₂|²)/|1 − r₁r₂e^{iU}|².
fn pw_split<T: Real>(kernels: &[PlateKernel<T>; 2], pol: usize, u: T) -> T {
    let uc = Complex::new(u, T::zero());
    let (a, b) = (kernels[0].resolved(uc)[pol], kernels[1].resolved(uc)[pol]);
    let half = u * T::lit(0.5);
    let phase_m1 = Complex::new(-T::lit(2.0) * half.sin() * half.sin(), u.sin());
    let denominator = one_minus_product(&a, &b) - a.r * b.r * phase_m1;
    u * a.absorptance() * b.absorptance() / denominator.norm_sqr()
}

/// V Im r₁ Im r₂ e^{−V}/|1 − r₁r₂e^{−V}|².
fn ew_split<T: Real>(kernels: &[PlateKernel<T>; 2], pol: usize, v: T) -> T {
    let uc = Complex::new(T::zero(), v);
    let (a, b) = (kernels[0].resolved(uc)[pol], kernels[1].resolved(uc)[pol]);
    let numerator = a.imag() * b.imag();
    if numerator.is_zero() {
        return T::zero();
    }
    let denominator = one_minus_product(&a, &b) - a.r * b.r * (-v).exp_m1();
    v * numerator * (-v).exp() / denominator.norm_sqr()
}

/// Plate responses entering the closed forms at one frequency.
enum ClosedPlates<T> {
    /// ε of each plate (1 for a black body).
    Permittivity { eps: [Complex<T>; 2], w: T },
    /// Z of each plate.
    Impedance { z: [Complex<T>; 2], w: T },
}

impl<T: Real> ClosedPlates<T> {
    fn new(cfg: &HeatConfig<T>, form: ResponseForm, w: T) -> Result<Self> {
        let omega = w * T::lit(SPEED_OF_LIGHT) / cfg.scale();
        let mut responses = [Complex::new(T::one(), T::zero()); 2];
        for (slot, (surface, &t)) in responses.iter_mut().zip(cfg.plates.iter().zip(&cfg.temperatures)) {
            if let Surface::Plate(m) = surface {
                *slot = match form {
                    ResponseForm::Permittivity => m.eps_real(omega, t)?,
                    ResponseForm::Impedance => m.impedance_real(omega, t)?,
                };
            }
        }
        Ok(match form {
            ResponseForm::Permittivity => Self::Permittivity { eps: responses, w },
            ResponseForm::Impedance => Self::Impedance { z: responses, w },
        })
    }

    /// K|U|²|e^{iU}| times the polarization term of the closed form at
    /// scaled transverse wavenumber K.
    fn integrand(&self, k: T, pol: usize) -> T {
        let w = match self {
            Self::Permittivity { w, .. } | Self::Impedance { w, .. } => *w,
        };
        let d = (w - k) * (w + k);
        let (u, phase, one_minus_phase) = if d >= T::zero() {
            let u = d.sqrt();
            let half = u * T::lit(0.5);
            (
                Complex::new(u, T::zero()),
                Complex::new(u.cos(), u.sin()),
                Complex::new(T::lit(2.0) * half.sin() * half.sin(), -u.sin()),
            )
        } else {
            let v = (-d).sqrt();
            (
                Complex::new(T::zero(), v),
                Complex::new((-v).exp(), T::zero()),
                Complex::new(-(-v).exp_m1(), T::zero()),
            )
        };
        let weight = k * u.norm_sqr() * phase.norm();
        if weight.is_zero() {
            return T::zero();
        }
        // |(a + g₁)(a + g₂) − (a − g₁)(a − g₂)e|² written without cancellation
        // as |(a + g₁)(a + g₂)(1 − e) + 2a(g₁ + g₂)e|²
        let cavity = |a: Complex<T>, g1: Complex<T>, g2: Complex<T>| {
            ((a + g1) * (a + g2) * one_minus_phase + a * (g1 + g2) * phase * T::lit(2.0)).norm_sqr()
        };
        match self {
            Self::Permittivity { eps, w } => {
                let one = Complex::new(T::one(), T::zero());
                let s = eps.map(|e| upper_sqrt((e - one) * *w * *w + u * u));
                let g = if pol == TE {
                    s
                } else {
                    // Re(ε̄s)/|ε|² = Re(s/ε); numerator and X_TM divided by |ε₁ε₂|²
                    [s[0] / eps[0], s[1] / eps[1]]
                };
                weight * g[0].re * g[1].re / cavity(u, g[0], g[1])
            }
            Self::Impedance { z, w } => {
                let zeta = u / *w;
                let b = if pol == TE {
                    // (1 ± ζZ₁)(1 ± ζZ₂) = ζ²(1/ζ ± Z₁)(1/ζ ± Z₂) with a = 1/ζ
                    cavity(zeta.inv(), z[0], z[1]) * zeta.norm_sqr() * zeta.norm_sqr()
                } else {
                    cavity(zeta, z[0], z[1])
                };
                weight * z[0].re * z[1].re / (*w * *w * b)
            }
        }
    }
}

#[cfg(test)]
mod tests;
