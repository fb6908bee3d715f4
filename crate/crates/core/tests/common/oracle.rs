//! Library values paired with their oracle fixtures.

use casimir_core::asymptotics::{
    drude_zero_mode_terms, entropy_drude_t0, i0, i0_quadrature, i1, i1_quadrature, i2_quadrature, phi_difference, rho,
    zero_mode_bracket,
};
use casimir_core::constants::{black_body_flux, first_matsubara, SPEED_OF_LIGHT};
use casimir_core::lifshitz::{thermal_correction, zero_point_parts, Formulation, Geometry, LifshitzSpec};
use casimir_core::materials::{ac_conductivity, PlateParams, ResponseModel};
use casimir_core::numerics::{
    abel_plana_correction, integrate_semi_infinite, matsubara_sum, polylog, QuadratureSpec, SumSpec,
};
use casimir_core::reflection::{reflect_imag_eps, reflect_imag_impedance, reflect_real_impedance, SpectralPoint};
use num_complex::Complex;

use super::{rel, Fixtures};

/// One computed value, its fixture key and the relative tolerance.
pub struct Check {
    pub key: String,
    pub value: f64,
    pub tol: f64,
}

impl Check {
    fn new(key: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            key: key.into(),
            value,
            tol,
        }
    }

    pub fn error(&self, fixtures: &Fixtures) -> f64 {
        rel(self.value, fixtures.get(&self.key))
    }

    pub fn passes(&self, fixtures: &Fixtures) -> bool {
        self.error(fixtures) <= self.tol
    }
}

const FORMULA: f64 = 1e-12;
const QUADRATURE: f64 = 1e-9;
const SUM: f64 = 1e-8;

fn gold() -> PlateParams<f64> {
    PlateParams::gold()
}

fn complex(out: &mut Vec<Check>, key: &str, z: Complex<f64>, tol: f64) {
    out.push(Check::new(format!("{key}.re"), z.re, tol));
    out.push(Check::new(format!("{key}.im"), z.im, tol));
}

fn materials(out: &mut Vec<Check>) {
    let x1 = first_matsubara(300.0);
    out.push(Check::new("xi1_300k", x1, FORMULA));
    let drude = ResponseModel::drude_eps(gold());
    out.push(Check::new(
        "eps_imag_drude_gold_xi1",
        drude.eps_imag(x1, 300.0).unwrap(),
        FORMULA,
    ));
    complex(
        out,
        "eps_real_drude_gold_xi1",
        drude.eps_real(x1, 300.0).unwrap(),
        FORMULA,
    );
    complex(out, "ac_conductivity_xi1", ac_conductivity(3e17, 1.88e-14, x1), FORMULA);
}

fn reflection(out: &mut Vec<Check>) {
    let x1 = first_matsubara(300.0);
    let a = 400e-9;
    let k_perp = 1.0 / (2.0 * a);
    let drude = ResponseModel::drude_eps(gold());
    let small = SpectralPoint::imaginary(1e-6 * x1, k_perp).unwrap();
    let r = reflect_imag_eps(&small, &drude, 300.0).unwrap();
    out.push(Check::new("refl_imag_eps_drude_small_xi.tm", r.tm, FORMULA));
    out.push(Check::new("refl_imag_eps_drude_small_xi.te", r.te, FORMULA));

    let plasma = ResponseModel::plasma(gold());
    let r = reflect_imag_eps(&SpectralPoint::imaginary(x1, k_perp).unwrap(), &plasma, 300.0).unwrap();
    out.push(Check::new("refl_imag_eps_plasma_xi1.tm", r.tm, FORMULA));
    out.push(Check::new("refl_imag_eps_plasma_xi1.te", r.te, FORMULA));

    // dimensionless ζ = 1, y = 2 on the scale 2a
    let (zeta, y) = (1.0, 2.0);
    let xi = zeta * SPEED_OF_LIGHT / (2.0 * a);
    let k_perp = (y * y - zeta * zeta).sqrt() / (2.0 * a);
    let point = SpectralPoint::imaginary(xi, k_perp).unwrap();
    let r = reflect_imag_impedance(&point, &ResponseModel::infrared(gold()), 300.0).unwrap();
    out.push(Check::new("refl_imag_imp_infrared.tm", r.tm, FORMULA));
    out.push(Check::new("refl_imag_imp_infrared.te", r.te, FORMULA));

    let w = 1e13;
    let kz = w / (2.0 * SPEED_OF_LIGHT);
    let k_perp = ((w / SPEED_OF_LIGHT).powi(2) - kz * kz).sqrt();
    let point = SpectralPoint::real(w, k_perp).unwrap();
    let r = reflect_real_impedance(&point, &ResponseModel::normal_skin(gold()), 300.0).unwrap();
    complex(out, "refl_real_imp_normal_skin.tm", r.tm, 1e-10);
    complex(out, "refl_real_imp_normal_skin.te", r.te, 1e-10);
}

fn numerics(out: &mut Vec<Check>) {
    let spec = QuadratureSpec::default().with_rel_tol(1e-13);
    let integral = integrate_semi_infinite(|t: f64| t * (-(-t).exp()).ln_1p(), 0.0, 1.0, &spec);
    out.push(Check::new("integral_y_log_one_minus_exp", integral.value, QUADRATURE));
    let linear = abel_plana_correction(|z| z, 1.0, &spec);
    out.push(Check::new("abel_plana_linear", linear.value, QUADRATURE));
    let sum = matsubara_sum(|l| (-(l as f64)).exp(), &SumSpec::default().with_rel_tol(1e-15));
    out.push(Check::new("abel_plana_exp_sum", sum.value, 1e-13));
    out.push(Check::new(
        "integral_y_log_one_minus_exp",
        -polylog(3, 1.0).unwrap(),
        FORMULA,
    ));
    out.push(Check::new("stefan_boltzmann", black_body_flux(1.0), FORMULA));
}

fn lifshitz(out: &mut Vec<Check>) {
    let spec = LifshitzSpec::default();
    let ideal = |a: f64, t: f64| Geometry::symmetric(a, t, ResponseModel::IdealMetal).unwrap();

    let zero = zero_point_parts(&ideal(200e-9, 300.0), &spec).unwrap();
    out.push(Check::new("ideal_p0_200nm", zero.pressure.value, QUADRATURE));
    out.push(Check::new("ideal_energy_200nm", zero.energy.value, QUADRATURE));

    for (key, a, t) in [
        ("ideal_dp_200nm_300k", 200e-9, 300.0),
        ("ideal_dp_1um_300k", 1e-6, 300.0),
        ("ideal_dp_500nm_77k", 500e-9, 77.0),
    ] {
        for formulation in [Formulation::Imaginary, Formulation::Real] {
            let dp = thermal_correction(&ideal(a, t), formulation, &spec)
                .unwrap()
                .pressure
                .value;
            out.push(Check::new(key, dp, SUM));
        }
    }

    let plasma = Geometry::symmetric(200e-9, 300.0, ResponseModel::plasma(gold())).unwrap();
    let p0 = zero_point_parts(&plasma, &spec).unwrap().pressure.value;
    out.push(Check::new("plasma_p0_200nm", p0, QUADRATURE));
}

fn asymptotics(out: &mut Vec<Check>) {
    let spec = QuadratureSpec::default().with_rel_tol(1e-13);
    let wp = gold().plasma_frequency();
    let zero = drude_zero_mode_terms(1e-6, 300.0, wp).unwrap();
    out.push(Check::new("free_energy_l0_ideal_1um_300k", zero.drude, FORMULA));
    out.push(Check::new("rho_gold_1um", rho(1e-6, wp), FORMULA));
    out.push(Check::new(
        "zero_mode_bracket_rho_1e-4",
        zero_mode_bracket(1e-4, &spec).value,
        QUADRATURE,
    ));
    out.push(Check::new(
        "entropy_t0_bracket_rho_0.01",
        zero_mode_bracket(0.01, &spec).value,
        QUADRATURE,
    ));

    // separation at which ρ = 0.01 for gold
    let a = SPEED_OF_LIGHT / (2.0 * 0.01 * wp);
    let s = entropy_drude_t0(a, wp).unwrap();
    let pref = casimir_core::constants::BOLTZMANN / (16.0 * std::f64::consts::PI * a * a);
    out.push(Check::new(
        "entropy_t0_bracket_rho_0.01",
        s.quadrature / pref,
        QUADRATURE,
    ));
    out.push(Check::new("entropy_t0_series_rho_0.01", s.series / pref, FORMULA));

    for x in ["0.01", "0.1", "1"] {
        let xv: f64 = x.parse().unwrap();
        out.push(Check::new(format!("i0_{x}"), i0(xv).unwrap(), FORMULA));
        out.push(Check::new(format!("i1_{x}"), i1(xv).unwrap(), FORMULA));
        out.push(Check::new(
            format!("i0_{x}"),
            i0_quadrature(xv, &spec).value,
            QUADRATURE,
        ));
        out.push(Check::new(
            format!("i1_{x}"),
            i1_quadrature(xv, &spec).value,
            QUADRATURE,
        ));
    }
    for x in ["0.5", "0.25", "0.125", "0.0625", "0.03125"] {
        let xv: f64 = x.parse().unwrap();
        out.push(Check::new(
            format!("i2_{x}"),
            i2_quadrature(xv, &spec).value,
            QUADRATURE,
        ));
    }
    let r = rho(1e-6, wp);
    for kt in ["0.05", "0.1"] {
        let d = phi_difference(kt.parse().unwrap(), r, &QuadratureSpec::default().with_rel_tol(1e-12));
        out.push(Check::new(format!("phi_difference_{kt}.re"), d.re, 1e-12));
        out.push(Check::new(format!("phi_difference_{kt}.im"), d.im, 1e-8));
    }
}

/// Every library-vs-oracle comparison.
pub fn checks() -> Vec<Check> {
    let mut out = Vec::new();
    materials(&mut out);
    reflection(&mut out);
    numerics(&mut out);
    lifshitz(&mut out);
    asymptotics(&mut out);
    out
}
