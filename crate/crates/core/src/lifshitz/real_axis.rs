//! Real-frequency form of the thermal correction in the scaled variables
//! W = 2aω/c, U = 2ak_z (propagating waves) and V = 2aq (evanescent waves,
//! k_z = iq).
//!
//! With n(W) = 1/(e^{W T_eff/T} − 1), R = r₁r₂ per polarization and
//! p = ħc/(16π²a⁴):
//!
//! ΔP_PW = −p ∫ n ∫₀^W U² Re[R/(R − e^{−iU})] dU dW,
//! ΔP_EW = +p ∫ n ∫₀^∞ V² Im[R/(R − e^V)] dV dW,
//! ΔF = (ħc/16π²a³) ∫ n [∫₀^W U arg(1 − Re^{iU}) dU + ∫₀^∞ V arg(1 − Re^{−V}) dV] dW.
//!
//! Dissipationless plates have poles on the integration path. They are
//! resolved exactly as δ-functions whose side is fixed by an infinitesimal
//! passive loss. Weakly dissipative plates with a dissipationless
//! counterpart use the counterpart's poles as quadrature breakpoints.

use num_complex::Complex;

use super::{Geometry, LifshitzSpec, Outcome};
use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::materials::ResponseModel;
use crate::numerics::{geometric_breakpoints, integrate_n, sign_change_roots, Domain, QuadratureSpec};
use crate::reflection::RealKernel;
use crate::Real;

/// Upper frequency limit in units of T/T_eff (ħω = 45 k_BT).
const BOSE_CUTOFF: f64 = 45.0;
/// Evanescent wavenumbers scanned for poles.
const EW_SCAN_MAX: f64 = 50.0;
/// Passive loss used to decide on which side poles are passed.
const LOSS_PROBE: f64 = 1e-6;

/// ΔP or ΔF split into polarization and wave-type channels.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Channels<T> {
    pub te_ew: T,
    pub te_pw: T,
    pub tm_ew: T,
    pub tm_pw: T,
}

impl<T: Real> Channels<T> {
    pub fn total(&self) -> T {
        self.te_ew + self.te_pw + self.tm_ew + self.tm_pw
    }
}

/// Real-axis thermal corrections with their channel decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSet<T> {
    /// ΔP channels, Pa.
    pub pressure: Channels<T>,
    /// ΔF channels, J/m².
    pub free_energy: Channels<T>,
    pub pressure_error: T,
    pub free_energy_error: T,
    pub converged: bool,
}

impl<T: Real> ChannelSet<T> {
    pub fn pressure_total(&self) -> Outcome<T> {
        Outcome {
            value: self.pressure.total(),
            error: self.pressure_error,
            converged: self.converged,
        }
    }

    pub fn free_energy_total(&self) -> Outcome<T> {
        Outcome {
            value: self.free_energy.total(),
            error: self.free_energy_error,
            converged: self.converged,
        }
    }
}

/// How poles near the real axis are treated.
enum Resonances<T> {
    /// Both plates dissipationless: poles become δ-functions.
    Exact,
    /// Poles of the dissipationless counterparts guide the quadrature.
    Guided([ResponseModel<T>; 2]),
    /// Strong damping: plain adaptive quadrature.
    Plain,
}

impl<T: Real> Resonances<T> {
    fn for_geometry(geometry: &Geometry<T>) -> Self {
        let [p1, p2] = geometry.plates();
        let t = geometry.temperature();
        if p1.is_lossless_at(t) && p2.is_lossless_at(t) {
            return Self::Exact;
        }
        match (p1.lossless_counterpart(), p2.lossless_counterpart()) {
            (Some(c1), Some(c2)) => Self::Guided([c1, c2]),
            _ => Self::Plain,
        }
    }
}

/// Polarization index into [`RealKernel::fractions`].
pub(crate) const TM: usize = 0;
pub(crate) const TE: usize = 1;

/// Reflection kernels of both plates at one real frequency.
#[derive(Clone, Copy)]
pub(crate) struct PlatePair<T> {
    kernels: [RealKernel<T>; 2],
    w: T,
}

impl<T: Real> PlatePair<T> {
    fn new(models: &[ResponseModel<T>; 2], w: T, temperature: T, scale: T) -> Result<Self> {
        let omega = w * T::lit(SPEED_OF_LIGHT) / scale;
        Ok(Self {
            kernels: [
                RealKernel::natural(&models[0], omega, temperature, scale)?,
                RealKernel::natural(&models[1], omega, temperature, scale)?,
            ],
            w,
        })
    }

    pub(crate) fn from_kernels(kernels: [RealKernel<T>; 2], w: T) -> Self {
        Self { kernels, w }
    }

    fn lossy(&self) -> Self {
        let delta = T::lit(LOSS_PROBE);
        Self {
            kernels: [self.kernels[0].with_loss(delta), self.kernels[1].with_loss(delta)],
            w: self.w,
        }
    }

    /// Numerator and denominator of R = r₁r₂ for one polarization.
    #[inline]
    fn fraction(&self, pol: usize, u: Complex<T>) -> (Complex<T>, Complex<T>) {
        let (n1, d1) = self.kernels[0].fractions(u)[pol];
        let (n2, d2) = self.kernels[1].fractions(u)[pol];
        (n1 * n2, d1 * d2)
    }

    fn product(&self, pol: usize, u: Complex<T>) -> Complex<T> {
        let (n, d) = self.fraction(pol, u);
        n / d
    }

    /// R = r₁r₂ and 1 − R. Each r = n/d is formed as
    /// (Re(n d̄) − i Im(g d̄))/|d|² with g = d − n, which keeps Im r accurate
    /// when r is nearly real.
    #[inline]
    fn reflection(&self, pol: usize, u: Complex<T>) -> (Complex<T>, Complex<T>) {
        let plate = |k: &RealKernel<T>| {
            let d = k.fractions(u)[pol].1;
            let (c, p) = (k.complements(u)[pol] / d, k.supplements(u)[pol] / d);
            let one = Complex::new(T::one(), T::zero());
            let r = if c.norm_sqr() <= p.norm_sqr() { one - c } else { p - one };
            (r, c, p)
        };
        let (r1, c1, p1) = plate(&self.kernels[0]);
        let (r2, c2, p2) = plate(&self.kernels[1]);
        let rest = if r1.re >= T::zero() && r2.re >= T::zero() {
            // 1 − r₁r₂ = c₁ + r₁c₂ with c = 1 − r
            c1 + r1 * c2
        } else if r1.re < T::zero() && r2.re < T::zero() {
            // 1 − r₁r₂ = p₁ − r₁p₂ with p = 1 + r
            p1 - r1 * p2
        } else {
            Complex::new(T::one(), T::zero()) - r1 * r2
        };
        (r1 * r2, rest)
    }

    /// w = R e^{iU} on the propagating branch.
    fn pw_phase(&self, pol: usize, u: T) -> Complex<T> {
        self.product(pol, Complex::new(u, T::zero())) * Complex::new(T::zero(), u).exp()
    }

    /// x = R e^{−V} on the evanescent branch.
    fn ew_ratio(&self, pol: usize, v: T) -> Complex<T> {
        let (n, d) = self.fraction(pol, Complex::new(T::zero(), v));
        n * (-v).exp() / d
    }

    /// [U² Re(w/(w − 1)), U arg(1 − w)] with 1 − w = (1 − R) − R(e^{iU} − 1).
    fn pw_integrands(&self, pol: usize, u: T) -> [T; 2] {
        let (r, c) = self.reflection(pol, Complex::new(u, T::zero()));
        let half = u * T::lit(0.5);
        let phase_m1 = Complex::new(-T::lit(2.0) * half.sin() * half.sin(), u.sin());
        let one_minus = c - r * phase_m1;
        let w = r * Complex::new(T::zero(), u).exp();
        [-u * u * (w / one_minus).re, u * one_minus.arg()]
    }

    /// [V² Im(x/(x − 1)), V arg(1 − x)] with Im(x/(x − 1)) = −Im x/|1 − x|²
    /// and 1 − x = (1 − R) − R(e^{−V} − 1).
    fn ew_integrands(&self, pol: usize, v: T) -> [T; 2] {
        let (r, c) = self.reflection(pol, Complex::new(T::zero(), v));
        if r.norm_sqr().is_zero() {
            return [T::zero(); 2];
        }
        let one_minus = c - r * (-v).exp_m1();
        let x_im = r.im * (-v).exp();
        [-v * v * x_im / one_minus.norm_sqr(), v * (-x_im).atan2(one_minus.re)]
    }

    /// dψ/dU with ψ = U + arg R.
    fn pw_phase_slope(&self, pol: usize, u: T) -> T {
        let h = T::lit(1e-7) * u.max(T::one());
        let r = |x: T| self.product(pol, Complex::new(x, T::zero()));
        T::one() + ((r(u + h) - r(u - h)) / (r(u) * (h + h))).im
    }

    /// Poles of the propagating integrand, R e^{iU} = 1, on (0, W).
    fn pw_poles(&self, pol: usize) -> Vec<T> {
        let w = self.w;
        if !(w > T::zero()) {
            return Vec::new();
        }
        let step = T::lit(0.05).min(w / T::lit(64.0));
        let mut grid = geometric_breakpoints(w, T::lit(0.1), 8);
        grid.reverse();
        let steps = (w / step).ceil().to_usize().unwrap_or(0);
        grid.extend((1..steps).map(|k| step * T::from_count(k)));
        grid.push(w);
        grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
        grid.dedup();
        let tol = T::epsilon() * T::lit(16.0) * w.max(T::one());
        sign_change_roots(|u| self.pw_phase(pol, u).im, &grid, tol)
            .into_iter()
            .filter(|&u| u > tol && self.pw_phase(pol, u).re > T::zero())
            .collect()
    }

    /// Component (real or imaginary) carrying the constant phase of the
    /// evanescent numerator and denominator of a dissipationless pair.
    fn ew_projection(&self, pol: usize) -> impl Fn(Complex<T>) -> T {
        let (n, d) = self.fraction(pol, Complex::new(T::zero(), T::one()));
        let use_re = n.re.abs() + d.re.abs() >= n.im.abs() + d.im.abs();
        move |z: Complex<T>| if use_re { z.re } else { z.im }
    }

    /// Evanescent wavenumbers at which a reflection coefficient changes
    /// behaviour: |Z|W and W/|Z| for impedances, √|ε − 1|W and that over |ε|
    /// for permittivities.
    fn ew_scales(&self) -> Vec<T> {
        let mut out = Vec::new();
        for kernel in &self.kernels {
            match *kernel {
                RealKernel::Impedance { z, w } if !z.norm().is_zero() => {
                    out.push(z.norm() * w);
                    out.push(w / z.norm());
                }
                RealKernel::Permittivity { eps, w } => {
                    let s0 = (eps - Complex::new(T::one(), T::zero())).norm().sqrt() * w;
                    out.push(s0);
                    out.push(s0 / eps.norm());
                }
                _ => {}
            }
        }
        out.retain(|v| v.is_finite() && *v > T::zero());
        out
    }

    /// Scan grid for evanescent poles: ten points per decade from below the
    /// smallest scale up to 1, then steps of 0.05.
    fn ew_grid(&self) -> Vec<T> {
        let smallest = self.ew_scales().into_iter().fold(T::lit(1e-9), T::min) * T::lit(1e-3);
        let decades = (-smallest.log10()).ceil().to_usize().unwrap_or(12);
        let mut grid = geometric_breakpoints(T::one(), T::lit(10f64.powf(-0.1)), 10 * decades);
        grid.reverse();
        let step = T::lit(0.05);
        let steps = (T::lit(EW_SCAN_MAX) / step).to_usize().unwrap_or(0);
        grid.extend((0..=steps).map(|k| T::one() + step * T::from_count(k)));
        grid
    }

    /// Poles of the evanescent integrand, R = e^V, of a dissipationless
    /// pair, and the points where either reflection coefficient diverges.
    fn ew_poles(&self, pol: usize) -> (Vec<T>, Vec<T>) {
        let project = self.ew_projection(pol);
        let grid = self.ew_grid();
        let tol = T::zero();
        let poles = sign_change_roots(
            |v| {
                let (n, d) = self.fraction(pol, Complex::new(T::zero(), v));
                project(n) * (-v).exp() - project(d)
            },
            &grid,
            tol,
        );
        let mut infinities = Vec::new();
        for kernel in &self.kernels {
            let denominator = |v: T| kernel.fractions(Complex::new(T::zero(), v))[pol].1;
            let reference = denominator(T::one());
            let use_re = reference.re.abs() >= reference.im.abs();
            let component = |v: T| {
                let d = denominator(v);
                if use_re {
                    d.re
                } else {
                    d.im
                }
            };
            infinities.extend(sign_change_roots(component, &grid, tol));
        }
        (poles, infinities)
    }

    /// d/dV of g = 1 − e^V/R along the real projection.
    fn ew_slope(&self, pol: usize, v: T) -> T {
        let project = self.ew_projection(pol);
        let g = |x: T| {
            let (n, d) = self.fraction(pol, Complex::new(T::zero(), x));
            T::one() - x.exp() * project(d) / project(n)
        };
        let h = T::lit(1e-6) * v.max(T::lit(1e-3));
        (g(v + h) - g(v - h)) / (h + h)
    }
}

/// Inner wavenumber integrals at one frequency W, per polarization:
/// [pw_P, pw_F, ew_P, ew_F].
struct Spectrum<'a, T> {
    geometry: &'a Geometry<T>,
    resonances: &'a Resonances<T>,
    inner: &'a QuadratureSpec<T>,
    /// T_eff/T.
    t_ratio: T,
    converged: bool,
}

impl<T: Real> Spectrum<'_, T> {
    fn scale(&self) -> T {
        T::lit(2.0) * self.geometry.separation()
    }

    /// Absolute accuracy of the inner integrals at W such that, after the
    /// Bose weight, the error stays below the inner tolerance times the
    /// ideal-metal spectral density at its thermal peak W_p = 3T/T_eff.
    fn abs_floor(&self, w: T) -> T {
        let peak = T::lit(3.0) / self.t_ratio;
        let bose_peak = T::one() / (peak * self.t_ratio).exp_m1();
        let scale = bose_peak * peak * peak * (T::one() + peak);
        self.inner.rel_tol * T::lit(1e-2) * scale * (w * self.t_ratio).exp_m1()
    }

    fn pair(&self, models: &[ResponseModel<T>; 2], w: T) -> Result<PlatePair<T>> {
        PlatePair::new(models, w, self.geometry.temperature(), self.scale())
    }

    fn at(&mut self, w: T) -> Result<[[T; 4]; 2]> {
        let pair = self.pair(self.geometry.plates(), w)?;
        let guide = match self.resonances {
            Resonances::Guided(models) => Some(self.pair(models, w)?),
            _ => None,
        };
        let mut out = [[T::zero(); 4]; 2];
        for pol in [TM, TE] {
            let (pw, ew) = match self.resonances {
                Resonances::Exact => (self.pw_exact(&pair, pol), self.ew_exact(&pair, pol)),
                Resonances::Guided(_) => {
                    let guide = guide.as_ref().expect("guide pair");
                    let (pw_points, ew_points) = guided_breakpoints(&pair, guide, pol);
                    (
                        self.pw_numeric(&pair, pol, pw_points),
                        self.ew_numeric(&pair, pol, ew_points),
                    )
                }
                Resonances::Plain => {
                    let mut points = Vec::new();
                    let mut m = 1;
                    while T::from_count(m) * T::TAU() < w {
                        points.push(T::from_count(m) * T::TAU());
                        m += 1;
                    }
                    (
                        self.pw_numeric(&pair, pol, points),
                        self.ew_numeric(&pair, pol, Vec::new()),
                    )
                }
            };
            out[pol] = [pw[0], pw[1], ew[0], ew[1]];
        }
        Ok(out)
    }

    fn pw_numeric(&mut self, pair: &PlatePair<T>, pol: usize, points: Vec<T>) -> [T; 2] {
        let w = pair.w;
        let mut points = points;
        points.extend(geometric_breakpoints(w, T::lit(0.1), 6));
        let spec = self
            .inner
            .clone()
            .with_breakpoints(points)
            .with_abs_tol(self.abs_floor(w));
        let r = integrate_n(|u| pair.pw_integrands(pol, u), Domain::Finite(T::zero(), w), &spec);
        self.converged &= r.converged;
        r.value
    }

    fn ew_numeric(&mut self, pair: &PlatePair<T>, pol: usize, points: Vec<T>) -> [T; 2] {
        let mut points = points;
        points.push(T::one());
        points.extend(geometric_breakpoints(T::one(), T::lit(0.1), 12));
        for v in pair.ew_scales() {
            points.extend([v * T::lit(0.1), v, v * T::lit(10.0)]);
        }
        points.retain(|&v| v < T::lit(EW_SCAN_MAX));
        let spec = self
            .inner
            .clone()
            .with_breakpoints(points)
            .with_abs_tol(self.abs_floor(pair.w));
        let r = integrate_n(
            |v| pair.ew_integrands(pol, v),
            Domain::SemiInfinite {
                lower: T::zero(),
                decay_scale: T::one(),
            },
            &spec,
        );
        self.converged &= r.converged;
        r.value
    }

    /// Re(w/(w − 1)) = 1/2 on |w| = 1, so the pressure integral is W³/6 plus
    /// one δ-term −πU*²/|ψ'(U*)| per pole; the free-energy integrand is
    /// integrated numerically with the poles as breakpoints.
    fn pw_exact(&mut self, pair: &PlatePair<T>, pol: usize) -> [T; 2] {
        let w = pair.w;
        let poles = pair.pw_poles(pol);
        let mut pressure = w * w * w / T::lit(6.0);
        for &u in &poles {
            pressure = pressure - T::PI() * u * u / pair.pw_phase_slope(pol, u).abs();
        }
        let mut points = poles;
        points.extend(geometric_breakpoints(w, T::lit(0.1), 6));
        let spec = self
            .inner
            .clone()
            .with_breakpoints(points)
            .with_abs_tol(self.abs_floor(w));
        let r = integrate_n(|u| [pair.pw_integrands(pol, u)[1]], Domain::Finite(T::zero(), w), &spec);
        self.converged &= r.converged;
        [pressure, r.value[0]]
    }

    /// R is real on the evanescent branch; Im(x/(x − 1)) reduces to
    /// δ-terms at R = e^V and arg(1 − x) to ±π where x > 1.
    fn ew_exact(&mut self, pair: &PlatePair<T>, pol: usize) -> [T; 2] {
        let lossy = pair.lossy();
        let (poles, infinities) = pair.ew_poles(pol);
        let project = pair.ew_projection(pol);
        let mut pressure = T::zero();
        for &v in &poles {
            let x = lossy.ew_ratio(pol, v);
            let g = Complex::new(T::one(), T::zero()) - x.inv();
            let slope = pair.ew_slope(pol, v).abs();
            if slope.is_zero() || g.im.is_zero() {
                continue;
            }
            pressure = pressure - T::PI() * g.im.signum() * v * v / slope;
        }
        let mut edges = vec![T::zero()];
        edges.extend(poles.iter().copied());
        edges.extend(infinities.iter().copied());
        edges.push(T::lit(EW_SCAN_MAX));
        edges.sort_by(|a, b| a.partial_cmp(b).expect("finite edges"));
        let mut free = T::zero();
        for e in edges.windows(2) {
            let (a, b) = (e[0], e[1]);
            let mid = (a + b) * T::lit(0.5);
            let (n, d) = pair.fraction(pol, Complex::new(T::zero(), mid));
            let x = project(n) * (-mid).exp() / project(d);
            if x > T::one() {
                let side = lossy.product(pol, Complex::new(T::zero(), mid)).im.signum();
                free = free - T::PI() * side * (b * b - a * a) * T::lit(0.5);
            }
        }
        [pressure, free]
    }
}

/// Breakpoints at the counterpart's poles, spread over the resonance width
/// of the actual pair.
pub(crate) fn guided_breakpoints<T: Real>(pair: &PlatePair<T>, guide: &PlatePair<T>, pol: usize) -> (Vec<T>, Vec<T>) {
    let spread = |root: T, width: T, out: &mut Vec<T>| {
        let width = width.max(T::lit(1e-14) * (T::one() + root));
        out.push(root);
        for k in [1.0, 10.0, 100.0] {
            out.push(root - width * T::lit(k));
            out.push(root + width * T::lit(k));
        }
    };
    let one = Complex::new(T::one(), T::zero());
    let mut pw = Vec::new();
    for u in guide.pw_poles(pol) {
        let g = one - pair.pw_phase(pol, u).inv();
        spread(u, g.norm() / guide.pw_phase_slope(pol, u).abs(), &mut pw);
    }
    let mut ew = Vec::new();
    let (poles, _) = guide.ew_poles(pol);
    for v in poles {
        let g = one - pair.ew_ratio(pol, v).inv();
        spread(v, g.norm() / guide.ew_slope(pol, v).abs(), &mut ew);
    }
    pw.retain(|&u| u > T::zero() && u < pair.w);
    ew.retain(|&v| v > T::zero());
    (pw, ew)
}

/// Frequencies W at which a propagating pole enters at normal incidence,
/// where the inner integrals jump.
pub(crate) fn normal_incidence_poles<T: Real>(
    models: &[ResponseModel<T>; 2],
    temperature: T,
    scale: T,
    w_max: T,
) -> Result<Vec<T>> {
    let step = T::lit(0.05);
    let steps = (w_max / step).ceil().to_usize().unwrap_or(0);
    let grid: Vec<T> = (1..=steps).map(|k| step * T::from_count(k)).collect();
    let mut failure = None;
    let phase = |w: T| match PlatePair::new(models, w, temperature, scale) {
        Ok(pair) => pair.pw_phase(TM, w),
        Err(e) => {
            failure.get_or_insert(e);
            Complex::new(T::nan(), T::nan())
        }
    };
    let mut phase = phase;
    let tol = T::epsilon() * T::lit(64.0) * w_max.max(T::one());
    let roots = sign_change_roots(|w| phase(w).im, &grid, tol);
    let roots: Vec<T> = roots.into_iter().filter(|&w| phase(w).re > T::zero()).collect();
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(roots)
}

/// Model-specific frequencies (W units) with kinks in the response.
fn response_kinks<T: Real>(geometry: &Geometry<T>, scale: T) -> Vec<T> {
    let to_w = |omega: T| omega * scale / T::lit(SPEED_OF_LIGHT);
    let mut out = Vec::new();
    for m in geometry.plates() {
        if let ResponseModel::Zt { beta_ev, .. } = m {
            out.push(to_w(crate::constants::ev_to_rad_per_s(*beta_ev)));
            out.push(to_w(crate::constants::ev_to_rad_per_s(T::lit(
                crate::materials::TABLE_COVERAGE_START_EV,
            ))));
        }
        let gamma = m.relaxation_rate(geometry.temperature());
        if gamma > T::zero() {
            out.push(to_w(gamma));
        }
    }
    out
}

/// ΔP and ΔF on the real frequency axis with their TE/TM and PW/EW parts.
pub fn real_axis_thermal_correction<T: Real>(geometry: &Geometry<T>, spec: &LifshitzSpec<T>) -> Result<ChannelSet<T>> {
    let t = geometry.temperature();
    if !(t > T::zero()) {
        return Err(Error::Domain("real-axis thermal correction needs T > 0".into()));
    }
    let a = geometry.separation();
    let scale = T::lit(2.0) * a;
    let t_ratio = geometry.effective_temperature() / t;
    let w_max = T::lit(BOSE_CUTOFF) / t_ratio;
    let resonances = Resonances::for_geometry(geometry);

    let mut points = geometric_breakpoints(w_max, T::lit(0.1), 14);
    let mut m = 1;
    while T::from_count(m) * T::TAU() < w_max {
        points.push(T::from_count(m) * T::TAU());
        m += 1;
    }
    match &resonances {
        Resonances::Exact => points.extend(normal_incidence_poles(geometry.plates(), t, scale, w_max)?),
        Resonances::Guided(models) => points.extend(normal_incidence_poles(models, t, scale, w_max)?),
        Resonances::Plain => {}
    }
    points.extend(response_kinks(geometry, scale));
    points.retain(|&p| p > T::zero() && p < w_max);
    // W = s² removes the W^{-1/2} endpoint behaviour of normal-skin-like
    // impedances
    let outer = spec
        .real_outer
        .clone()
        .with_breakpoints(points.into_iter().map(|p| p.sqrt()).collect());

    let mut spectrum = Spectrum {
        geometry,
        resonances: &resonances,
        inner: &spec.real_inner,
        t_ratio,
        converged: true,
    };
    let mut failure = None;
    let r = integrate_n(
        |root| {
            if failure.is_some() {
                return [T::zero(); 8];
            }
            let w = root * root;
            let bose = (root + root) / (w * t_ratio).exp_m1();
            if bose.is_zero() {
                return [T::zero(); 8];
            }
            match spectrum.at(w) {
                Ok(v) => {
                    let [tm, te] = v;
                    [tm[0], tm[1], tm[2], tm[3], te[0], te[1], te[2], te[3]].map(|x| bose * x)
                }
                Err(e) => {
                    failure = Some(e);
                    [T::zero(); 8]
                }
            }
        },
        Domain::Finite(T::zero(), w_max.sqrt()),
        &outer,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let [tm_pw_p, tm_pw_f, tm_ew_p, tm_ew_f, te_pw_p, te_pw_f, te_ew_p, te_ew_f] = r.value;
    let hc = T::lit(HBAR) * T::lit(SPEED_OF_LIGHT);
    let f_pref = hc / (T::lit(16.0) * T::PI() * T::PI() * a * a * a);
    let p_pref = f_pref / a;
    let pressure = Channels {
        te_ew: p_pref * te_ew_p,
        te_pw: -p_pref * te_pw_p,
        tm_ew: p_pref * tm_ew_p,
        tm_pw: -p_pref * tm_pw_p,
    };
    let free_energy = Channels {
        te_ew: f_pref * te_ew_f,
        te_pw: f_pref * te_pw_f,
        tm_ew: f_pref * tm_ew_f,
        tm_pw: f_pref * tm_pw_f,
    };
    Ok(ChannelSet {
        pressure,
        free_energy,
        pressure_error: p_pref * r.error,
        free_energy_error: f_pref * r.error,
        converged: r.converged && spectrum.converged,
    })
}

/// The four channels of ΔP, Pa.
pub fn channel_decomposition<T: Real>(geometry: &Geometry<T>, spec: &LifshitzSpec<T>) -> Result<Channels<T>> {
    Ok(real_axis_thermal_correction(geometry, spec)?.pressure)
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::materials::{PlateParams, ResponseModel};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ideal_thermal_pressure() {
        let g = Geometry::symmetric(1e-6, 300.0, ResponseModel::IdealMetal).unwrap();
        let c = real_axis_thermal_correction(&g, &LifshitzSpec::default()).unwrap();
        assert!(c.converged);
        assert!(
            rel(c.pressure.total(), -2.042_747_479_981_547e-6) < 1e-8,
            "{:?}",
            c.pressure
        );
        assert_eq!(c.pressure.te_ew, 0.0);
        assert_eq!(c.pressure.tm_ew, 0.0);
    }

    #[test]
    fn plasma_te_evanescent_vanishes() {
        let g = Geometry::symmetric(0.5e-6, 300.0, ResponseModel::plasma(PlateParams::<f64>::gold())).unwrap();
        let c = real_axis_thermal_correction(&g, &LifshitzSpec::default()).unwrap();
        assert!(
            c.pressure.te_ew.abs() < 1e-12 * c.pressure.total().abs(),
            "{:?}",
            c.pressure
        );
    }

    #[test]
    fn matches_imaginary_axis_for_drude_impedance() {
        let spec = LifshitzSpec::default();
        let g = Geometry::symmetric(1e-6, 300.0, ResponseModel::drude_z(PlateParams::<f64>::gold())).unwrap();
        let real = thermal_correction(&g, Formulation::Real, &spec).unwrap();
        let imag = thermal_correction(&g, Formulation::Imaginary, &spec).unwrap();
        assert!(real.pressure.converged && imag.pressure.converged);
        assert!(rel(real.pressure.value, imag.pressure.value) < 1e-6);
        assert!(rel(real.free_energy.value, imag.free_energy.value) < 1e-6);
    }
}
