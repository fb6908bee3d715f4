//! Adaptive Gauss–Kronrod quadrature (21-point rule) on finite and
//! semi-infinite intervals, vector-valued so that several channels sharing
//! one expensive integrand can be integrated together.

#![allow(clippy::excessive_precision)]

use crate::Real;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Tolerances and resonance guards for adaptive quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_subdivisions: usize,
    pub breakpoints: Vec<T>,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-8).max(T::tolerance_floor()),
            abs_tol: T::zero(),
            max_subdivisions: 2000,
            breakpoints: Vec::new(),
        }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, n: usize) -> Self {
        self.max_subdivisions = n;
        self
    }

    /// Sets interior breakpoints; they are sorted and deduplicated.
    pub fn with_breakpoints(mut self, mut points: Vec<T>) -> Self {
        points.retain(|p| p.is_finite());
        points.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
        points.dedup();
        self.breakpoints = points;
        self
    }
}

/// Integral value with an absolute error estimate and a convergence flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
    pub converged: bool,
    pub evaluations: usize,
}

/// Vector-valued integral; `error` bounds the sum of component errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateN<T, const N: usize> {
    pub value: [T; N],
    pub error: T,
    pub converged: bool,
    pub evaluations: usize,
}

impl<T: Real> EstimateN<T, 1> {
    fn scalar(self) -> Estimate<T> {
        Estimate {
            value: self.value[0],
            error: self.error,
            converged: self.converged,
            evaluations: self.evaluations,
        }
    }
}

/// Integration domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain<T> {
    Finite(T, T),
    /// `[lower, ∞)` for an integrand decaying on the given length scale.
    SemiInfinite {
        lower: T,
        decay_scale: T,
    },
}

#[derive(Clone, Copy)]
enum Map<T> {
    Linear,
    /// x = origin − scale·ln(1 − u), u ∈ [0, 1)
    ExpTail {
        origin: T,
        scale: T,
    },
}

struct Panel<T, const N: usize> {
    lo: T,
    hi: T,
    map: Map<T>,
    value: [T; N],
    error: T,
    state: PanelState,
}

/// Whether a panel can still be refined.
#[derive(Clone, Copy, PartialEq, Eq)]
enum PanelState {
    Open,
    /// Error estimate at the floating-point floor of the panel.
    Roundoff,
    /// Too narrow to bisect.
    Narrow,
}

fn rule<T: Real, F: FnMut(T) -> [T; N], const N: usize>(
    f: &mut F,
    lo: T,
    hi: T,
    map: Map<T>,
) -> ([T; N], T, PanelState) {
    let center = (lo + hi) * T::lit(0.5);
    let half = (hi - lo) * T::lit(0.5);
    let mut eval = |u: T| -> [T; N] {
        match map {
            Map::Linear => f(u),
            Map::ExpTail { origin, scale } => {
                let one_minus = T::one() - u;
                let x = origin - scale * one_minus.ln();
                let jac = scale / one_minus;
                let mut v = f(x);
                for c in v.iter_mut() {
                    *c = if c.is_zero() { T::zero() } else { *c * jac };
                }
                v
            }
        }
    };

    let fc = eval(center);
    let mut kron = [T::zero(); N];
    let mut gauss = [T::zero(); N];
    let mut abs_k = [T::zero(); N];
    for c in 0..N {
        kron[c] = fc[c] * T::lit(WGK[10]);
        abs_k[c] = fc[c].abs() * T::lit(WGK[10]);
    }
    let mut samples: [([T; N], [T; N]); 10] = [([T::zero(); N], [T::zero(); N]); 10];
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * T::lit(XGK[j]);
        let f1 = eval(center - dx);
        let f2 = eval(center + dx);
        for c in 0..N {
            kron[c] = kron[c] + T::lit(WGK[j]) * (f1[c] + f2[c]);
            abs_k[c] = abs_k[c] + T::lit(WGK[j]) * (f1[c].abs() + f2[c].abs());
            if j % 2 == 1 {
                gauss[c] = gauss[c] + T::lit(WG[j / 2]) * (f1[c] + f2[c]);
            }
        }
        *sample = (f1, f2);
    }

    let mut value = [T::zero(); N];
    let mut error = T::zero();
    let mut at_roundoff = true;
    for c in 0..N {
        let mean = kron[c] * T::lit(0.5);
        let mut asc = T::lit(WGK[10]) * (fc[c] - mean).abs();
        for (j, (f1, f2)) in samples.iter().enumerate() {
            asc = asc + T::lit(WGK[j]) * ((f1[c] - mean).abs() + (f2[c] - mean).abs());
        }
        let resasc = asc * half.abs();
        let resabs = abs_k[c] * half.abs();
        let mut err = ((kron[c] - gauss[c]) * half).abs();
        if !resasc.is_zero() && !err.is_zero() {
            let scaled = (T::lit(200.0) * err / resasc).powf(T::lit(1.5));
            err = resasc * scaled.min(T::one());
        }
        let roundoff = T::lit(50.0) * T::epsilon() * resabs;
        if roundoff >= err {
            err = roundoff;
        } else {
            at_roundoff = false;
        }
        value[c] = kron[c] * half;
        error = error + err;
    }
    let width_ok = (hi - lo).abs() > T::lit(100.0) * T::epsilon() * (lo.abs() + hi.abs() + T::min_positive_value());
    (
        value,
        error,
        if at_roundoff {
            PanelState::Roundoff
        } else if width_ok {
            PanelState::Open
        } else {
            PanelState::Narrow
        },
    )
}

fn adaptive<T: Real, F: FnMut(T) -> [T; N], const N: usize>(
    mut f: F,
    initial: Vec<(T, T, Map<T>)>,
    spec: &QuadratureSpec<T>,
) -> EstimateN<T, N> {
    let mut panels: Vec<Panel<T, N>> = Vec::with_capacity(initial.len() + 64);
    let mut evaluations = 0usize;
    for (lo, hi, map) in initial {
        if hi <= lo {
            continue;
        }
        let (value, error, state) = rule(&mut f, lo, hi, map);
        evaluations += 21;
        panels.push(Panel {
            lo,
            hi,
            map,
            value,
            error,
            state,
        });
    }

    let totals = |panels: &[Panel<T, N>]| -> ([T; N], T) {
        let mut v = [T::zero(); N];
        let mut e = T::zero();
        for p in panels {
            for (acc, &x) in v.iter_mut().zip(&p.value) {
                *acc = *acc + x;
            }
            e = e + p.error;
        }
        (v, e)
    };

    let mut splits = 0usize;
    loop {
        let (value, error) = totals(&panels);
        let magnitude = value.iter().fold(T::zero(), |acc, v| acc + v.abs());
        let target = spec.abs_tol.max(spec.rel_tol * magnitude);
        if !error.is_finite() || !magnitude.is_finite() {
            return EstimateN {
                value,
                error,
                converged: false,
                evaluations,
            };
        }
        if error <= target {
            return EstimateN {
                value,
                error,
                converged: true,
                evaluations,
            };
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.state == PanelState::Open)
            .max_by(|a, b| a.1.error.partial_cmp(&b.1.error).expect("finite panel error"))
            .map(|(i, _)| i);
        let Some(worst) = worst else {
            let converged = panels.iter().all(|p| p.state == PanelState::Roundoff);
            return EstimateN {
                value,
                error,
                converged,
                evaluations,
            };
        };
        if splits >= spec.max_subdivisions {
            return EstimateN {
                value,
                error,
                converged: false,
                evaluations,
            };
        }
        let p = panels.swap_remove(worst);
        let mid = (p.lo + p.hi) * T::lit(0.5);
        for (lo, hi) in [(p.lo, mid), (mid, p.hi)] {
            let (value, error, state) = rule(&mut f, lo, hi, p.map);
            evaluations += 21;
            panels.push(Panel {
                lo,
                hi,
                map: p.map,
                value,
                error,
                state,
            });
        }
        splits += 1;
    }
}

fn finite_panels<T: Real>(a: T, b: T, breakpoints: &[T]) -> Vec<(T, T, Map<T>)> {
    let mut edges = vec![a];
    edges.extend(breakpoints.iter().copied().filter(|&p| p > a && p < b));
    edges.push(b);
    edges.windows(2).map(|w| (w[0], w[1], Map::Linear)).collect()
}

/// Integrates a vector-valued function over a domain.
pub fn integrate_n<T, F, const N: usize>(f: F, domain: Domain<T>, spec: &QuadratureSpec<T>) -> EstimateN<T, N>
where
    T: Real,
    F: FnMut(T) -> [T; N],
{
    match domain {
        Domain::Finite(a, b) => {
            if b < a {
                let mut r = adaptive(f, finite_panels(b, a, &spec.breakpoints), spec);
                for v in r.value.iter_mut() {
                    *v = -*v;
                }
                r
            } else {
                adaptive(f, finite_panels(a, b, &spec.breakpoints), spec)
            }
        }
        Domain::SemiInfinite { lower, decay_scale } => {
            let last_bp = spec
                .breakpoints
                .iter()
                .copied()
                .filter(|&p| p > lower)
                .fold(lower, T::max);
            let span = decay_scale * T::lit(25.0);
            let cut = (lower + span).max(last_bp + decay_scale * T::lit(5.0));
            let mut panels = finite_panels(lower, cut, &spec.breakpoints);
            panels.push((
                T::zero(),
                T::one(),
                Map::ExpTail {
                    origin: cut,
                    scale: decay_scale,
                },
            ));
            adaptive(f, panels, spec)
        }
    }
}

/// Integrates a scalar function over `[a, b]`.
pub fn integrate<T, F>(mut f: F, a: T, b: T, spec: &QuadratureSpec<T>) -> Estimate<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    integrate_n(move |x| [f(x)], Domain::Finite(a, b), spec).scalar()
}

/// Integrates a scalar function over `[lower, ∞)`.
///
/// The interval is split into adaptive panels on `[lower, lower + 25·scale]`
/// (extended past the last breakpoint) and an exponentially mapped tail.
pub fn integrate_semi_infinite<T, F>(mut f: F, lower: T, decay_scale: T, spec: &QuadratureSpec<T>) -> Estimate<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    integrate_n(move |x| [f(x)], Domain::SemiInfinite { lower, decay_scale }, spec).scalar()
}

/// Geometric breakpoints `top·ratio^k`, k = 1..=count, for integrands with
/// structure accumulating toward the origin.
pub fn geometric_breakpoints<T: Real>(top: T, ratio: T, count: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(count);
    let mut p = top;
    for _ in 0..count {
        p = p * ratio;
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(tol: f64) -> QuadratureSpec<f64> {
        QuadratureSpec::default().with_rel_tol(tol)
    }

    #[test]
    fn gamma_three() {
        let r = integrate_semi_infinite(|y: f64| y * y * (-y).exp(), 0.0, 1.0, &spec(1e-12));
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn stefan_integral() {
        let r = integrate_semi_infinite(|y: f64| y.powi(3) / y.exp_m1(), 0.0, 1.0, &spec(1e-12));
        let exact = std::f64::consts::PI.powi(4) / 15.0;
        assert!((r.value - exact).abs() < 1e-11 * exact);
    }

    #[test]
    fn log_endpoint_singularity() {
        let r = integrate(|x: f64| x.ln(), 0.0, 1.0, &spec(1e-10));
        assert!(r.converged);
        assert!((r.value + 1.0).abs() < 1e-9);
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let a = integrate(|x: f64| x.sin(), 0.0, 2.0, &spec(1e-12)).value;
        let b = integrate(|x: f64| x.sin(), 2.0, 0.0, &spec(1e-12)).value;
        assert!((a + b).abs() < 1e-14);
    }

    #[test]
    fn narrow_lorentzian_needs_breakpoint() {
        let w = 1e-7;
        let f = |x: f64| w / ((x - 0.3).powi(2) + w * w);
        let guarded = integrate(f, 0.0, 1.0, &spec(1e-10).with_breakpoints(vec![0.3]));
        let exact = (0.7 / w).atan() + (0.3 / w).atan();
        assert!(guarded.converged);
        assert!((guarded.value - exact).abs() < 1e-8);
    }

    #[test]
    fn non_convergence_is_flagged() {
        let s = QuadratureSpec::default().with_rel_tol(1e-14).with_max_subdivisions(3);
        let r = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &s);
        assert!(!r.converged);
    }

    #[test]
    fn vector_channels_share_evaluations() {
        let r = integrate_n(|x: f64| [x, x * x], Domain::Finite(0.0, 1.0), &spec(1e-12));
        assert!((r.value[0] - 0.5).abs() < 1e-14);
        assert!((r.value[1] - 1.0 / 3.0).abs() < 1e-14);
        assert_eq!(r.evaluations, 21);
    }

    #[test]
    fn single_precision_instantiation() {
        let s = QuadratureSpec::<f32>::default();
        let r = integrate_semi_infinite(|y: f32| (-y).exp(), 0.0, 1.0, &s);
        assert!((r.value - 1.0).abs() < 1e-5);
    }
}
