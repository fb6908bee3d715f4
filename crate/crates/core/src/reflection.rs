//! TM and TE reflection coefficients of a plate in permittivity or
//! impedance form, on the imaginary and real frequency axes.
//!
//! The kernels work in scaled variables: for a length scale ℓ, the frequency
//! enters as ℓξ/c (or ℓω/c) and the wavenumbers as ℓq (or ℓk_z). The public
//! functions use ℓ = 1 m; the Lifshitz and heat-transfer code uses ℓ = 2a.

use num_complex::Complex;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::materials::{ResponseForm, ResponseModel, StaticSlope};
use crate::Real;

/// Frequency on the real axis (ω) or the imaginary axis (ξ), rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frequency<T> {
    Real(T),
    Imaginary(T),
}

/// A frequency together with the wavenumber parallel to the plates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint<T> {
    frequency: Frequency<T>,
    k_perp: T,
}

impl<T: Real> SpectralPoint<T> {
    pub fn new(frequency: Frequency<T>, k_perp: T) -> Result<Self> {
        let f = match frequency {
            Frequency::Real(w) | Frequency::Imaginary(w) => w,
        };
        if !(f >= T::zero() && f.is_finite()) {
            return Err(Error::Domain(format!("frequency {f} must be finite and >= 0")));
        }
        if !(k_perp >= T::zero() && k_perp.is_finite()) {
            return Err(Error::Domain(format!(
                "transverse wavenumber {k_perp} must be finite and >= 0"
            )));
        }
        Ok(Self { frequency, k_perp })
    }

    pub fn imaginary(xi: T, k_perp: T) -> Result<Self> {
        Self::new(Frequency::Imaginary(xi), k_perp)
    }

    pub fn real(omega: T, k_perp: T) -> Result<Self> {
        Self::new(Frequency::Real(omega), k_perp)
    }

    pub fn frequency(&self) -> Frequency<T> {
        self.frequency
    }

    pub fn k_perp(&self) -> T {
        self.k_perp
    }

    /// Vacuum wavenumber across the gap: q = √(k⊥² + ξ²/c²) on the imaginary
    /// axis; k_z = √(ω²/c² − k⊥²) on the real axis, equal to i·q for
    /// evanescent waves.
    pub fn vacuum_wavenumber(&self) -> Complex<T> {
        let c = T::lit(SPEED_OF_LIGHT);
        match self.frequency {
            Frequency::Imaginary(xi) => Complex::new(self.k_perp.hypot(xi / c), T::zero()),
            Frequency::Real(w) => {
                let k0 = w / c;
                let d = (k0 - self.k_perp) * (k0 + self.k_perp);
                if d >= T::zero() {
                    Complex::new(d.sqrt(), T::zero())
                } else {
                    Complex::new(T::zero(), (-d).sqrt())
                }
            }
        }
    }
}

/// Reflection amplitudes for both polarizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair<S> {
    pub tm: S,
    pub te: S,
}

impl<S: Copy> ReflectionPair<S> {
    pub fn as_array(&self) -> [S; 2] {
        [self.tm, self.te]
    }
}

/// Longitudinal wavenumbers in vacuum and inside the plate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Wavenumbers<T> {
    /// q in vacuum and k = √(k⊥² + ε(iξ)ξ²/c²) in the metal.
    Imaginary { q: T, k: T },
    /// k_z in vacuum and s = √(ε(ω)ω²/c² − k⊥²) in the metal, Im s ≥ 0.
    Real { kz: Complex<T>, s: Complex<T> },
}

/// Longitudinal wavenumbers at `point`. For impedance models the plate
/// permittivity is taken as 1/Z².
pub fn longitudinal_wavenumbers<T: Real>(
    point: &SpectralPoint<T>,
    model: &ResponseModel<T>,
    temperature: T,
) -> Result<Wavenumbers<T>> {
    let c = T::lit(SPEED_OF_LIGHT);
    let kp = point.k_perp;
    match point.frequency {
        Frequency::Imaginary(xi) => {
            let q = kp.hypot(xi / c);
            let gap = imag_gap(model, xi, temperature, T::one())?;
            Ok(Wavenumbers::Imaginary {
                q,
                k: (q * q + gap).sqrt(),
            })
        }
        Frequency::Real(w) => {
            let kz = point.vacuum_wavenumber();
            if matches!(model, ResponseModel::IdealMetal) {
                return Ok(Wavenumbers::Real {
                    kz,
                    s: Complex::new(T::zero(), T::infinity()),
                });
            }
            let eps = model.eps_real(w, temperature)?;
            let k0 = w / c;
            let s = upper_sqrt(eps * k0 * k0 - Complex::new(kp * kp, T::zero()));
            Ok(Wavenumbers::Real { kz, s })
        }
    }
}

/// (ε(iξ) − 1)(ℓξ/c)², finite at ξ = 0.
fn imag_gap<T: Real>(model: &ResponseModel<T>, xi: T, temperature: T, scale: T) -> Result<T> {
    let c = T::lit(SPEED_OF_LIGHT);
    let k = scale / c;
    Ok(match model {
        ResponseModel::IdealMetal => T::infinity(),
        ResponseModel::PlasmaEps(p) => (p.plasma_frequency() * k).powi(2),
        ResponseModel::DrudeEps(p, law) => {
            let g = law.rate(temperature);
            let wp = p.plasma_frequency() * k;
            if xi.is_zero() {
                if g.is_zero() {
                    wp * wp
                } else {
                    T::zero()
                }
            } else {
                wp * wp * xi / (xi + g)
            }
        }
        _ => {
            let z = model.impedance_imag(xi, temperature)?;
            if xi.is_zero() {
                match model.static_slope_at(temperature) {
                    StaticSlope::Zero => T::infinity(),
                    StaticSlope::Finite(l) => (k / l).powi(2),
                    StaticSlope::Infinite => T::zero(),
                }
            } else {
                (T::one() / (z * z) - T::one()) * (xi * k).powi(2)
            }
        }
    })
}

/// Square root with non-negative imaginary part.
pub(crate) fn upper_sqrt<T: Real>(z: Complex<T>) -> Complex<T> {
    let r = z.sqrt();
    if r.im < T::zero() || (r.im.is_zero() && r.re < T::zero()) {
        -r
    } else {
        r
    }
}

/// Reflection coefficients of one plate at a fixed imaginary frequency, as
/// a function of the scaled wavenumber y = ℓq.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ImagKernel<T> {
    /// `eps` = ε(iξ) (may be +∞ at ξ = 0), `gap` = (ε − 1)(ℓξ/c)².
    Permittivity { eps: T, gap: T },
    /// Ideal metal in permittivity form: (1, +1).
    IdealPermittivity,
    /// `z` = Z(iξ), `zeta` = ℓξ/c > 0.
    Impedance { z: T, zeta: T },
    /// ξ = 0 in impedance form; `slope` = cL/ℓ with L = lim Z(iξ)/ξ.
    StaticImpedance { slope: StaticSlope<T> },
}

impl<T: Real> ImagKernel<T> {
    /// Kernel in the given form; ξ = 0 uses the exact static limits.
    pub fn new(model: &ResponseModel<T>, form: ResponseForm, xi: T, temperature: T, scale: T) -> Result<Self> {
        if !(xi >= T::zero()) {
            return Err(Error::Domain(format!("imaginary frequency {xi} must be >= 0")));
        }
        let c = T::lit(SPEED_OF_LIGHT);
        match form {
            ResponseForm::Permittivity => {
                if matches!(model, ResponseModel::IdealMetal) {
                    return Ok(Self::IdealPermittivity);
                }
                let eps = if xi.is_zero() {
                    T::infinity()
                } else {
                    model.eps_imag(xi, temperature)?
                };
                Ok(Self::Permittivity {
                    eps,
                    gap: imag_gap(model, xi, temperature, scale)?,
                })
            }
            ResponseForm::Impedance => {
                if xi.is_zero() {
                    let slope = match model.static_slope_at(temperature) {
                        StaticSlope::Finite(l) => StaticSlope::Finite(c * l / scale),
                        other => other,
                    };
                    return Ok(Self::StaticImpedance { slope });
                }
                let z = model.impedance_imag(xi, temperature)?;
                Ok(Self::Impedance {
                    z,
                    zeta: scale * xi / c,
                })
            }
        }
    }

    /// Kernel in the model's natural form.
    pub fn natural(model: &ResponseModel<T>, xi: T, temperature: T, scale: T) -> Result<Self> {
        Self::new(model, model.form(), xi, temperature, scale)
    }

    /// (r_TM, r_TE) at scaled wavenumber y = ℓq.
    #[inline]
    pub fn at(&self, y: T) -> ReflectionPair<T> {
        match *self {
            Self::Permittivity { eps, gap } => {
                let k = (y * y + gap).sqrt();
                let tm = if eps.is_infinite() {
                    T::one()
                } else {
                    (eps * y - k) / (eps * y + k)
                };
                // (k − y)/(k + y) with k² − y² = gap
                let te = if gap.is_infinite() {
                    T::one()
                } else {
                    gap / ((k + y) * (k + y))
                };
                ReflectionPair { tm, te }
            }
            Self::IdealPermittivity => ReflectionPair {
                tm: T::one(),
                te: T::one(),
            },
            Self::Impedance { z, zeta } => {
                let zz = z * zeta;
                let yz = y * z;
                ReflectionPair {
                    tm: (y - zz) / (y + zz),
                    te: (zeta - yz) / (zeta + yz),
                }
            }
            Self::StaticImpedance { slope } => {
                let te = match slope {
                    StaticSlope::Zero => T::one(),
                    StaticSlope::Infinite => -T::one(),
                    StaticSlope::Finite(s) => (T::one() - s * y) / (T::one() + s * y),
                };
                ReflectionPair { tm: T::one(), te }
            }
        }
    }
}

/// Reflection coefficients of one plate at a fixed real frequency, as a
/// function of the scaled complex wavenumber u = ℓk_z (u = iv for
/// evanescent waves).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealKernel<T> {
    /// `eps` = ε(ω), `w` = ℓω/c.
    Permittivity {
        eps: Complex<T>,
        w: T,
    },
    IdealPermittivity,
    /// `z` = Z(ω), `w` = ℓω/c.
    Impedance {
        z: Complex<T>,
        w: T,
    },
}

impl<T: Real> RealKernel<T> {
    pub fn new(model: &ResponseModel<T>, form: ResponseForm, omega: T, temperature: T, scale: T) -> Result<Self> {
        let w = scale * omega / T::lit(SPEED_OF_LIGHT);
        match form {
            ResponseForm::Permittivity => {
                if matches!(model, ResponseModel::IdealMetal) {
                    return Ok(Self::IdealPermittivity);
                }
                Ok(Self::Permittivity {
                    eps: model.eps_real(omega, temperature)?,
                    w,
                })
            }
            ResponseForm::Impedance => Ok(Self::Impedance {
                z: model.impedance_real(omega, temperature)?,
                w,
            }),
        }
    }

    pub fn natural(model: &ResponseModel<T>, omega: T, temperature: T, scale: T) -> Result<Self> {
        Self::new(model, model.form(), omega, temperature, scale)
    }

    /// Same kernel with an infinitesimal passive loss added: Z → Z + δ|Z|,
    /// ε → ε + iδ|ε|. Used to fix the side on which lossless poles are
    /// approached.
    pub fn with_loss(&self, delta: T) -> Self {
        let tiny = T::min_positive_value().sqrt();
        match *self {
            Self::Permittivity { eps, w } => Self::Permittivity {
                eps: eps + Complex::new(T::zero(), delta * eps.norm() + tiny),
                w,
            },
            Self::IdealPermittivity => Self::IdealPermittivity,
            Self::Impedance { z, w } => Self::Impedance {
                z: z + Complex::new(delta * z.norm() + tiny, T::zero()),
                w,
            },
        }
    }

    /// Numerators and denominators of (r_TM, r_TE) at scaled wavenumber u.
    #[inline]
    pub fn fractions(&self, u: Complex<T>) -> [(Complex<T>, Complex<T>); 2] {
        let one = Complex::new(T::one(), T::zero());
        match *self {
            Self::Permittivity { eps, w } => {
                let s = upper_sqrt((eps - one) * w * w + u * u);
                [(eps * u - s, eps * u + s), (s - u, s + u)]
            }
            Self::IdealPermittivity => [(one, one), (one, one)],
            Self::Impedance { z, w } => {
                let zw = z * w;
                let uz = u * z;
                let wc = Complex::new(w, T::zero());
                [(u - zw, u + zw), (wc - uz, wc + uz)]
            }
        }
    }

    /// Denominator minus numerator of (r_TM, r_TE), free of cancellation,
    /// so that 1 − r = (D − N)/D stays accurate when r → 1.
    #[inline]
    pub fn complements(&self, u: Complex<T>) -> [Complex<T>; 2] {
        let two = T::lit(2.0);
        match *self {
            Self::Permittivity { eps, w } => {
                let one = Complex::new(T::one(), T::zero());
                let s = upper_sqrt((eps - one) * w * w + u * u);
                [s * two, u * two]
            }
            Self::IdealPermittivity => [Complex::new(T::zero(), T::zero()); 2],
            Self::Impedance { z, w } => [z * w * two, u * z * two],
        }
    }

    /// Denominator plus numerator of (r_TM, r_TE), free of cancellation,
    /// so that 1 + r = (D + N)/D stays accurate when r → −1.
    #[inline]
    pub fn supplements(&self, u: Complex<T>) -> [Complex<T>; 2] {
        let two = T::lit(2.0);
        match *self {
            Self::Permittivity { eps, w } => {
                let one = Complex::new(T::one(), T::zero());
                let s = upper_sqrt((eps - one) * w * w + u * u);
                [eps * u * two, s * two]
            }
            Self::IdealPermittivity => [Complex::new(T::lit(2.0), T::zero()); 2],
            Self::Impedance { w, .. } => [u * two, Complex::new(w * two, T::zero())],
        }
    }

    /// (r_TM, r_TE) at scaled wavenumber u.
    #[inline]
    pub fn at(&self, u: Complex<T>) -> ReflectionPair<Complex<T>> {
        let [(ntm, dtm), (nte, dte)] = self.fractions(u);
        ReflectionPair {
            tm: ntm / dtm,
            te: nte / dte,
        }
    }
}

/// A reflection coefficient together with 1 − r and 1 + r, all three formed
/// from cancellation-free numerators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolved<T> {
    pub r: Complex<T>,
    pub complement: Complex<T>,
    pub supplement: Complex<T>,
}

impl<T: Real> Resolved<T> {
    /// r ≡ 0.
    pub fn black() -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self {
            r: Complex::new(T::zero(), T::zero()),
            complement: one,
            supplement: one,
        }
    }

    fn from_parts(
        numerator: Complex<T>,
        denominator: Complex<T>,
        complement: Complex<T>,
        supplement: Complex<T>,
    ) -> Self {
        Self {
            r: numerator / denominator,
            complement: complement / denominator,
            supplement: supplement / denominator,
        }
    }

    /// 1 − |r|² = Re[(1 − r)(1 + r̄)].
    pub fn absorptance(&self) -> T {
        (self.complement * self.supplement.conj()).re
    }

    /// Im r taken from whichever of r, 1 − r, 1 + r is smallest.
    pub fn imag(&self) -> T {
        let (r, c, p) = (
            self.r.norm_sqr(),
            self.complement.norm_sqr(),
            self.supplement.norm_sqr(),
        );
        if r <= c && r <= p {
            self.r.im
        } else if c <= p {
            -self.complement.im
        } else {
            self.supplement.im
        }
    }
}

/// 1 − r₁r₂, using 1 − r or 1 + r of both plates when they are small.
pub fn one_minus_product<T: Real>(a: &Resolved<T>, b: &Resolved<T>) -> Complex<T> {
    let near_one = |x: &Resolved<T>| x.complement.norm_sqr() <= x.supplement.norm_sqr();
    match (near_one(a), near_one(b)) {
        // 1 − r₁r₂ = (1 − r₁) + r₁(1 − r₂)
        (true, true) => a.complement + a.r * b.complement,
        // 1 − r₁r₂ = (1 + r₁) − r₁(1 + r₂)
        (false, false) => a.supplement - a.r * b.supplement,
        _ => Complex::new(T::one(), T::zero()) - a.r * b.r,
    }
}

impl<T: Real> RealKernel<T> {
    /// (r_TM, r_TE) at scaled wavenumber u with their complements, the
    /// numerators written as (ε − 1)(…)/(…) for permittivities so that
    /// small reflection coefficients keep their relative accuracy.
    pub fn resolved(&self, u: Complex<T>) -> [Resolved<T>; 2] {
        let one = Complex::new(T::one(), T::zero());
        let two = T::lit(2.0);
        match *self {
            Self::Permittivity { eps, w } => {
                let em1 = eps - one;
                let s = upper_sqrt(em1 * w * w + u * u);
                let dtm = eps * u + s;
                let ntm = em1 * ((eps + one) * u * u - Complex::new(w * w, T::zero())) / dtm;
                let dte = s + u;
                let nte = em1 * w * w / dte;
                [
                    Resolved::from_parts(ntm, dtm, s * two, eps * u * two),
                    Resolved::from_parts(nte, dte, u * two, s * two),
                ]
            }
            Self::IdealPermittivity => {
                let ideal = Resolved {
                    r: one,
                    complement: Complex::new(T::zero(), T::zero()),
                    supplement: one * two,
                };
                [ideal; 2]
            }
            Self::Impedance { z, w } => {
                let zw = z * w;
                let uz = u * z;
                let wc = Complex::new(w, T::zero());
                [
                    Resolved::from_parts(u - zw, u + zw, zw * two, u * two),
                    Resolved::from_parts(wc - uz, wc + uz, uz * two, wc * two),
                ]
            }
        }
    }
}

fn expect_imaginary<T: Real>(point: &SpectralPoint<T>) -> Result<T> {
    match point.frequency {
        Frequency::Imaginary(xi) => Ok(xi),
        Frequency::Real(_) => Err(Error::Domain("expected an imaginary-axis spectral point".into())),
    }
}

fn expect_real<T: Real>(point: &SpectralPoint<T>) -> Result<T> {
    match point.frequency {
        Frequency::Real(w) if w > T::zero() => Ok(w),
        Frequency::Real(w) => Err(Error::Domain(format!("real frequency {w} must be > 0"))),
        Frequency::Imaginary(_) => Err(Error::Domain("expected a real-axis spectral point".into())),
    }
}

/// Permittivity-form coefficients at an imaginary frequency:
/// r_TM = (εq − k)/(εq + k), r_TE = (k − q)/(k + q).
pub fn reflect_imag_eps<T: Real>(
    point: &SpectralPoint<T>,
    model: &ResponseModel<T>,
    temperature: T,
) -> Result<ReflectionPair<T>> {
    let xi = expect_imaginary(point)?;
    if model.form() != ResponseForm::Permittivity && !matches!(model, ResponseModel::IdealMetal) {
        return Err(Error::ModelMismatch(format!(
            "{} has no permittivity on the imaginary axis",
            model.name()
        )));
    }
    let kernel = ImagKernel::new(model, ResponseForm::Permittivity, xi, temperature, T::one())?;
    Ok(kernel.at(point.vacuum_wavenumber().re))
}

/// Impedance-form coefficients at an imaginary frequency:
/// r_TM = (cq − Zξ)/(cq + Zξ), r_TE = (ξ − cqZ)/(ξ + cqZ).
pub fn reflect_imag_impedance<T: Real>(
    point: &SpectralPoint<T>,
    model: &ResponseModel<T>,
    temperature: T,
) -> Result<ReflectionPair<T>> {
    let xi = expect_imaginary(point)?;
    let kernel = ImagKernel::new(model, ResponseForm::Impedance, xi, temperature, T::one())?;
    Ok(kernel.at(point.vacuum_wavenumber().re))
}

/// Permittivity-form coefficients at a real frequency:
/// r_TM = (εk_z − s)/(εk_z + s), r_TE = (s − k_z)/(s + k_z).
pub fn reflect_real_eps<T: Real>(
    point: &SpectralPoint<T>,
    model: &ResponseModel<T>,
    temperature: T,
) -> Result<ReflectionPair<Complex<T>>> {
    let w = expect_real(point)?;
    let kernel = RealKernel::new(model, ResponseForm::Permittivity, w, temperature, T::one())?;
    Ok(kernel.at(point.vacuum_wavenumber()))
}

/// Impedance-form coefficients at a real frequency:
/// r_TM = (ck_z − Zω)/(ck_z + Zω), r_TE = (ω − ck_zZ)/(ω + ck_zZ).
pub fn reflect_real_impedance<T: Real>(
    point: &SpectralPoint<T>,
    model: &ResponseModel<T>,
    temperature: T,
) -> Result<ReflectionPair<Complex<T>>> {
    let w = expect_real(point)?;
    let kernel = RealKernel::new(model, ResponseForm::Impedance, w, temperature, T::one())?;
    Ok(kernel.at(point.vacuum_wavenumber()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::first_matsubara;
    use crate::materials::{PlateParams, RelaxationLaw};

    fn gold() -> PlateParams<f64> {
        PlateParams::gold()
    }

    #[test]
    fn vacuum_wavenumbers() {
        let p = SpectralPoint::imaginary(0.0, 3.0).unwrap();
        assert_eq!(p.vacuum_wavenumber(), Complex::new(3.0, 0.0));
        let k = 1e6;
        let p = SpectralPoint::real(k * SPEED_OF_LIGHT, k).unwrap();
        assert_eq!(p.vacuum_wavenumber(), Complex::new(0.0, 0.0));
        let p = SpectralPoint::real(1e14, 1e7).unwrap();
        assert!(p.vacuum_wavenumber().re == 0.0 && p.vacuum_wavenumber().im > 0.0);
        assert!(SpectralPoint::real(1e14, -1.0).is_err());
    }

    #[test]
    fn plasma_inner_wavenumber_at_plasma_frequency() {
        let m = ResponseModel::plasma(gold());
        let wp = gold().plasma_frequency();
        let p = SpectralPoint::imaginary(wp, 0.0).unwrap();
        match longitudinal_wavenumbers(&p, &m, 300.0).unwrap() {
            Wavenumbers::Imaginary { k, .. } => {
                let expected = 2f64.sqrt() * wp / SPEED_OF_LIGHT;
                assert!(((k - expected) / expected).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ideal_metal_limits() {
        let p = SpectralPoint::imaginary(1e14, 1e6).unwrap();
        let ideal = ResponseModel::<f64>::IdealMetal;
        assert_eq!(
            reflect_imag_impedance(&p, &ideal, 300.0).unwrap(),
            ReflectionPair { tm: 1.0, te: 1.0 }
        );
        let eps = reflect_imag_eps(&p, &ideal, 300.0).unwrap();
        assert_eq!(eps.tm, 1.0);
        assert_eq!(eps.te * eps.te, 1.0);
        let pr = SpectralPoint::real(1e14, 1e5).unwrap();
        let r = reflect_real_impedance(&pr, &ideal, 300.0).unwrap();
        assert_eq!((r.tm, r.te), (Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)));
    }

    #[test]
    fn drude_static_limits() {
        let kp = 1.0 / 400e-9;
        let eps = ResponseModel::drude_eps(gold());
        let r = reflect_imag_eps(&SpectralPoint::imaginary(0.0, kp).unwrap(), &eps, 300.0).unwrap();
        assert_eq!((r.tm, r.te), (1.0, 0.0));
        let z = ResponseModel::drude_z(gold());
        let r = reflect_imag_impedance(&SpectralPoint::imaginary(0.0, kp).unwrap(), &z, 300.0).unwrap();
        assert_eq!((r.tm * r.tm, r.te * r.te), (1.0, 1.0));
    }

    #[test]
    fn plasma_static_limit() {
        let kp = 1.0 / 400e-9;
        let m = ResponseModel::plasma(gold());
        let r = reflect_imag_eps(&SpectralPoint::imaginary(0.0, kp).unwrap(), &m, 300.0).unwrap();
        let root = (kp * kp + (gold().plasma_frequency() / SPEED_OF_LIGHT).powi(2)).sqrt();
        assert_eq!(r.tm, 1.0);
        assert!((r.te - (root - kp) / (root + kp)).abs() < 1e-15);
        let r_small = reflect_imag_eps(&SpectralPoint::imaginary(1e-3, kp).unwrap(), &m, 300.0).unwrap();
        assert!((r_small.te - r.te).abs() < 1e-12);
    }

    #[test]
    fn zero_frequency_real_point_is_rejected() {
        let p = SpectralPoint::real(0.0, 1.0).unwrap();
        assert!(reflect_real_eps(&p, &ResponseModel::plasma(gold()), 300.0).is_err());
    }

    #[test]
    fn impedance_models_have_no_imaginary_permittivity_form() {
        let p = SpectralPoint::imaginary(1e14, 1e6).unwrap();
        assert!(matches!(
            reflect_imag_eps(&p, &ResponseModel::infrared(gold()), 300.0),
            Err(Error::ModelMismatch(_))
        ));
    }

    #[test]
    fn high_frequency_transparency() {
        let m = ResponseModel::drude_eps(gold());
        let kp = 1e6;
        let r = reflect_real_eps(&SpectralPoint::real(1e19, kp).unwrap(), &m, 300.0).unwrap();
        assert!(r.tm.norm() < 1e-5 && r.te.norm() < 1e-5);
    }

    #[test]
    fn plasma_evanescent_te_is_real() {
        let m = ResponseModel::plasma(gold());
        let w = 1e14;
        for kp in [1.01 * w / SPEED_OF_LIGHT, 3.0 * w / SPEED_OF_LIGHT, 1e8] {
            let r = reflect_real_eps(&SpectralPoint::real(w, kp).unwrap(), &m, 300.0).unwrap();
            assert!(r.te.im.abs() < 1e-15 * r.te.norm());
            assert!(r.te.norm() <= 1.0);
        }
    }

    #[test]
    fn finite_at_degenerate_points() {
        let p = gold();
        let models = [
            ResponseModel::plasma(p),
            ResponseModel::drude_eps(p),
            ResponseModel::drude_z(p),
            ResponseModel::normal_skin(p),
        ];
        let w = 2e14;
        for m in &models {
            for kp in [0.0, w / SPEED_OF_LIGHT] {
                let pt = SpectralPoint::real(w, kp).unwrap();
                for r in [
                    reflect_real_eps(&pt, m, 300.0).unwrap(),
                    reflect_real_impedance(&pt, m, 300.0).unwrap(),
                ] {
                    assert!(r.tm.is_finite() && r.te.is_finite(), "{}", m.name());
                }
                let pi = SpectralPoint::imaginary(w, kp).unwrap();
                let r = reflect_imag_impedance(&pi, m, 300.0).unwrap();
                assert!(r.tm.is_finite() && r.te.is_finite());
            }
        }
    }

    #[test]
    fn drude_coefficients_converge_to_static_limit() {
        let m = ResponseModel::DrudeEps(gold(), RelaxationLaw::constant(5.32e13));
        let xi = 1e-6 * first_matsubara(300.0);
        let r = reflect_imag_eps(&SpectralPoint::imaginary(xi, 1.0 / 800e-9).unwrap(), &m, 300.0).unwrap();
        assert!((r.tm - 1.0).abs() < 1e-6);
        assert!(r.te.abs() < 1e-2);
    }
}
