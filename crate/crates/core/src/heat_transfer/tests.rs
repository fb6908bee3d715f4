use super::*;
use crate::constants::STEFAN_BOLTZMANN;
use crate::materials::PlateParams;

fn gold() -> PlateParams<f64> {
    PlateParams::gold()
}

#[test]
fn equal_temperatures_exchange_nothing() {
    let cfg = HeatConfig::symmetric(0.5e-6, 300.0, 300.0, ResponseModel::drude_eps(gold())).unwrap();
    let r = heat_flux_dielectric(&cfg, &HeatSpec::default()).unwrap();
    assert_eq!(r.total(), 0.0);
}

#[test]
fn dissipationless_plate_exchanges_nothing() {
    let cfg = HeatConfig::symmetric(0.5e-6, 320.0, 300.0, ResponseModel::infrared(gold())).unwrap();
    let r = heat_flux_impedance(&cfg, &HeatSpec::default()).unwrap();
    assert_eq!(r.total(), 0.0);
    assert!(r.dissipationless);
    assert_eq!(r.te_ew_fraction(), None);
}

#[test]
fn black_body_emission() {
    let t = 295.0;
    let phi = kirchhoff_flux(t, &Surface::<f64>::BlackBody, &HeatSpec::default()).unwrap();
    assert!((phi.value / (STEFAN_BOLTZMANN * t.powi(4)) - 1.0).abs() < 1e-4);
    let e = emittivity(
        t,
        &Surface::Plate(ResponseModel::<f64>::IdealMetal),
        &HeatSpec::default(),
    )
    .unwrap();
    assert_eq!(e.value, 0.0);
}

#[test]
fn black_body_partner_has_no_evanescent_flux() {
    let cfg = HeatConfig::new(
        0.5e-6,
        300.0,
        0.0,
        Surface::Plate(ResponseModel::drude_eps(gold())),
        Surface::BlackBody,
    )
    .unwrap();
    let spec = HeatSpec::default();
    let r = heat_flux_dielectric(&cfg, &spec).unwrap();
    assert_eq!(r.evanescent(), 0.0);
    let phi = kirchhoff_flux(300.0, &cfg.plates()[0], &spec).unwrap();
    assert!(
        (r.propagating() / phi.value - 1.0).abs() < 1e-6,
        "{} {}",
        r.propagating(),
        phi.value
    );
}

#[test]
fn closed_impedance_form_rejects_black_body() {
    let cfg = HeatConfig::new(
        1e-6,
        300.0,
        0.0,
        Surface::BlackBody,
        Surface::Plate(ResponseModel::drude_z(gold())),
    )
    .unwrap();
    assert!(heat_flux(
        &cfg,
        ResponseForm::Impedance,
        HeatFormulation::ClosedForm,
        &HeatSpec::default()
    )
    .is_err());
}

#[test]
fn config_validation() {
    let m = ResponseModel::drude_eps(gold());
    assert!(HeatConfig::symmetric(0.0, 300.0, 300.0, m.clone()).is_err());
    assert!(HeatConfig::symmetric(1e-6, -1.0, 300.0, m).is_err());
}

#[test]
fn closed_form_matches_split_for_drude_permittivity() {
    let cfg = HeatConfig::symmetric(0.5e-6, 320.0, 300.0, ResponseModel::drude_eps(gold())).unwrap();
    let spec = HeatSpec::default();
    let split = heat_flux(&cfg, ResponseForm::Permittivity, HeatFormulation::Split, &spec).unwrap();
    let closed = heat_flux(&cfg, ResponseForm::Permittivity, HeatFormulation::ClosedForm, &spec).unwrap();
    assert!(split.converged && closed.converged);
    assert!((split.total() / closed.total() - 1.0).abs() < 1e-6);
    assert!((split.channels.te_ew / closed.channels.te_ew - 1.0).abs() < 1e-6);
}

#[test]
fn reciprocity_under_plate_and_temperature_swap() {
    let cfg = HeatConfig::new(
        0.4e-6,
        320.0,
        300.0,
        Surface::Plate(ResponseModel::drude_z(gold())),
        Surface::Plate(ResponseModel::normal_skin(gold())),
    )
    .unwrap();
    let spec = HeatSpec::default();
    let s = heat_flux_impedance(&cfg, &spec).unwrap().total();
    let back = heat_flux_impedance(&cfg.swapped(), &spec).unwrap().total();
    assert!(((s + back) / s).abs() < 1e-6, "{s} {back}");
}

#[test]
fn hotter_first_plate_gives_positive_parts() {
    let cfg = HeatConfig::symmetric(0.3e-6, 320.0, 300.0, ResponseModel::normal_skin(gold())).unwrap();
    let r = heat_flux_impedance(&cfg, &HeatSpec::default()).unwrap();
    assert!(r.propagating() > 0.0 && r.evanescent() > 0.0);
    let f = r.te_ew_fraction().unwrap();
    assert!(f > 0.5 && f <= 1.0, "{f}");
}

#[test]
fn evanescent_flux_decreases_with_separation() {
    let spec = HeatSpec::default();
    let ew: Vec<f64> = [1e-6, 2e-6, 4e-6]
        .iter()
        .map(|&a| {
            let cfg = HeatConfig::symmetric(a, 320.0, 300.0, ResponseModel::normal_skin(gold())).unwrap();
            heat_flux_impedance(&cfg, &spec).unwrap().evanescent()
        })
        .collect();
    assert!(ew.windows(2).all(|w| w[1] < w[0]), "{ew:?}");
}
