use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use qhyper::barnes::{
    barnes_integrand, build_barnes_contour, capital_phi, capital_phi_on, capital_phi_orbit, check_conditions_b,
    classical_barnes, contiguous_relation_check, watson_integral, DEFAULT_CLEARANCE,
};
use qhyper::numerics::{barnes_kernel, residue_probe, QuadratureConfig, SectorSpec};
use qhyper::qdiff::lq_from_samples;
use qhyper::qgamma::QModulus;
use qhyper::qseries::{basic_phi, hypergeometric_f, HGParams, SeriesConfig};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn kernel_residues_are_powers() {
    let sec = SectorSpec::unit_disk();
    for &z in &[c(-0.3, 0.0), c(0.2, 0.4), c(-0.5, -0.3)] {
        for k in 0..4 {
            let r = residue_probe(|s| barnes_kernel(s, z, &sec).unwrap(), c(k as f64, 0.0), 0.25, 64).unwrap();
            assert!((r - z.powi(k)).norm() < 1e-10, "z = {z}, k = {k}");
        }
    }
}

#[test]
fn classical_barnes_reproduces_gauss() {
    let sec = SectorSpec::symmetric(0.3).unwrap();
    let p = HGParams::real(0.9, 1.3, 2.1);
    let t = Instant::now();
    let v = classical_barnes(&p, c(-0.35, 0.0), &sec, &cfg()).unwrap();
    let f = hypergeometric_f(&p, c(-0.35, 0.0), &SeriesConfig::default()).unwrap().value;
    eprintln!("classical barnes {:?}", t.elapsed());
    assert!((v.value - f).norm() < 1e-8, "{} vs {}", v.value, f);
    let small = classical_barnes(&p, c(-0.01, 0.0), &sec, &cfg()).unwrap();
    assert!((small.value - (1.0 - 0.01 * 0.9 * 1.3 / 2.1)).norm() < 1e-3);
    let edge = -Complex64::from_polar(0.3, PI - 0.15);
    assert!(classical_barnes(&p, edge, &sec, &cfg()).is_err());
}

#[test]
fn watson_reproduces_basic_series() {
    let sec = SectorSpec::symmetric(0.3).unwrap();
    let p = HGParams::real(1.4, 0.8, 2.2);
    let q = QModulus::from_real_q(0.4).unwrap();
    let t = Instant::now();
    let v = watson_integral(&p, &q, c(-0.3, 0.0), &sec, &cfg()).unwrap();
    eprintln!("watson {:?}", t.elapsed());
    let f = basic_phi(&p, &q, c(-0.3, 0.0), &SeriesConfig::default()).unwrap().value;
    assert!((v.value - f).norm() < 1e-6, "{} vs {}", v.value, f);
    // the linear term is about 7e-4 here, so compare with the two-term series
    let z = c(-0.001, 0.0);
    let small = watson_integral(&p, &q, z, &sec, &cfg()).unwrap();
    let qp = |x: f64| 1.0 - 0.4f64.powf(x);
    let two_terms = 1.0 + qp(1.4) * qp(0.8) / (qp(2.2) * qp(1.0)) * z;
    assert!((small.value - two_terms).norm() < 1e-5);
    assert!((small.value - 1.0).norm() < 1e-3);
}

#[test]
fn watson_continuum_limit() {
    let sec = SectorSpec::symmetric(0.3).unwrap();
    let p = HGParams::real(1.4, 0.8, 2.2);
    let q = QModulus::from_real_q(0.9999).unwrap();
    let t = Instant::now();
    let w = watson_integral(&p, &q, c(-0.3, 0.0), &sec, &cfg()).unwrap();
    eprintln!("watson q->1 {:?}", t.elapsed());
    let b = classical_barnes(&p, c(-0.3, 0.0), &sec, &cfg()).unwrap();
    assert!((w.value - b.value).norm() < 5e-3);
}

fn theorem_problem(omega: f64) -> qhyper::barnes::BarnesProblem {
    check_conditions_b(&HGParams::real(1.9, 2.1, 1.5), &QModulus::unit(omega).unwrap(), None).unwrap()
}

#[test]
fn phi_satisfies_q_difference_equation() {
    let omega = (5f64.sqrt() - 1.0) / 20.0;
    let prob = theorem_problem(omega);
    let z = -Complex64::from_polar(0.4, -0.3);
    let contour = build_barnes_contour(&prob, 2.0, DEFAULT_CLEARANCE, None).unwrap();
    let t = Instant::now();
    let (s, err) = capital_phi_orbit(&prob, z, &contour, &cfg()).unwrap();
    eprintln!("phi orbit {:?} err {err:e} values {s:?}", t.elapsed());
    let r = lq_from_samples(&s, &prob.params, z, &prob.q).unwrap();
    eprintln!("normalized residual {:e}", r.normalized);
    assert!(r.normalized < 1e-6);
}

#[test]
fn phi_is_contour_independent() {
    let prob = theorem_problem(2f64.sqrt() / 20.0);
    let z = -Complex64::from_polar(0.4, 0.4);
    let base = capital_phi(&prob, z, &cfg()).unwrap();
    for x in [-0.3, -0.7] {
        let k = build_barnes_contour(&prob, 2.0, DEFAULT_CLEARANCE, Some(x)).unwrap();
        let v = capital_phi_on(&prob, z, &k, &cfg()).unwrap();
        assert!((v.value - base.value).norm() < 10.0 * (v.error_estimate + base.error_estimate) + 1e-9);
    }
}

#[test]
fn phi_near_origin_is_close_to_one() {
    let prob = theorem_problem(3f64.sqrt() / 20.0);
    // the residue at s = 0 is 1/Gamma~(1) = omega^{-1/2}, not 1
    let omega = prob.q.omega().unwrap();
    let g1 = qhyper::qgamma::gamma_tilde(c(1.0, 0.0), &prob.q).unwrap().value;
    assert!((g1 - omega.sqrt()).norm() < 1e-12);
    let v = capital_phi(&prob, c(-0.01, 0.0), &cfg()).unwrap();
    assert!((v.value * g1 - 1.0).norm() < 0.1, "{}", v.value);
}

#[test]
fn contiguous_relation_holds_pointwise() {
    let p = HGParams::real(2.3, 2.7, 1.1);
    let q = QModulus::unit_unchecked(0.12).unwrap();
    let r = contiguous_relation_check(&p, &q, c(0.0, 0.37), c(-0.4, 0.0)).unwrap();
    assert!(r.normalized < 1e-8, "{r:?}");
}

#[test]
fn integrand_decays_along_the_contour() {
    let prob = check_conditions_b(&HGParams::real(2.3, 2.7, 1.1), &QModulus::unit_unchecked(0.12).unwrap(), None)
        .unwrap();
    let z = -Complex64::from_polar(0.4, -1.5);
    let near = barnes_integrand(&prob, c(-0.5, 1.0), z).unwrap().norm();
    for y in [15.0, -15.0] {
        let far = barnes_integrand(&prob, c(-0.5, y), z).unwrap().norm();
        assert!(far < near * (-prob.delta * 15.0).exp() * 1e3, "{y}: {far} vs {near}");
    }
}

#[test]
fn imaginary_separation_contour_is_admissible() {
    let p = HGParams::new(c(1.0, 2.0), c(1.0, -1.0), c(2.0, 0.5));
    let prob = check_conditions_b(&p, &QModulus::unit(0.1513).unwrap(), None).unwrap();
    let k = build_barnes_contour(&prob, 4.0, DEFAULT_CLEARANCE, None).unwrap();
    let (right, left, _) = qhyper::barnes::barnes_pole_families(&p, &prob.q).unwrap();
    for f in &right {
        for pt in f.points_in(-20.0, 20.0, -5.0, 5.0) {
            assert!(k.is_left_of(pt) && k.distance_to(pt) >= DEFAULT_CLEARANCE * 0.999);
        }
    }
    for f in &left {
        for pt in f.points_in(-20.0, 20.0, -5.0, 5.0) {
            assert!(!k.is_left_of(pt) && k.distance_to(pt) >= DEFAULT_CLEARANCE * 0.999);
        }
    }
    let z = -Complex64::from_polar(0.3, -0.5);
    let v = capital_phi(&prob, z, &cfg()).unwrap();
    assert!(v.value.is_finite());
}
