use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use qhyper::doublesine::{
    log_gamma2, log_gamma2_with_step, log_s2, log_s2_with, zeta2_direct, OmegaPair, S2Route, S2Status,
};
use qhyper::numerics::{log_distance, winding_number_from_log};
use statrs::function::gamma::ln_gamma;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn riemann_zeta(s: f64) -> f64 {
    // partial sum plus the Euler-Maclaurin tail of order 3
    let n = 1000.0_f64;
    let mut acc = 0.0;
    for k in 1..1000 {
        acc += (k as f64).powf(-s);
    }
    acc + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s / 12.0 * n.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * n.powf(-s - 3.0)
}

#[test]
fn zeta2_diagonal_collapse() {
    let w = OmegaPair::new(1.0, 1.0).unwrap();
    // (1,1) lattice: the shell m1 + m2 = k - 1 has k points at distance k
    let z3 = zeta2_direct(c(3.0, 0.0), c(1.0, 0.0), &w, 30).unwrap();
    assert!((z3.value.re - PI * PI / 6.0).abs() < 1e-12);
    let z4 = zeta2_direct(c(4.0, 0.0), c(1.0, 0.0), &w, 30).unwrap();
    assert!((z4.value.re - riemann_zeta(3.0)).abs() < 1e-12);
    let shifted = zeta2_direct(c(3.0, 0.0), c(2.0, 0.0), &w, 30).unwrap();
    // at z = 2 the shell at distance k has k - 1 points: zeta(2) - zeta(3)
    assert!((shifted.value.re - (PI * PI / 6.0 - riemann_zeta(3.0))).abs() < 1e-12);
    assert!(zeta2_direct(c(2.0, 0.0), c(1.0, 0.0), &w, 30).is_err());
}

#[test]
fn gamma2_ratio_is_scaled_gamma() {
    // Gamma2(z) / Gamma2(z + w1) only sees the one-dimensional lattice m2 w2
    let w = OmegaPair::new(1.0, 2.5).unwrap();
    for &z in &[0.4, 1.3, 2.2] {
        let lhs = log_gamma2(c(z, 0.0), &w).unwrap() - log_gamma2(c(z + 1.0, 0.0), &w).unwrap();
        let x = z / 2.5;
        let rhs = -(2.5f64.ln()) * (0.5 - x) + ln_gamma(x) - 0.5 * (2.0 * PI).ln();
        assert!((lhs.re - rhs).abs() < 1e-6, "z = {z}: {lhs} vs {rhs}");
    }
}

#[test]
fn gamma2_step_size_consistency() {
    let w = OmegaPair::new(1.0, 1.618).unwrap();
    let z = c(0.7, 0.3);
    let a = log_gamma2_with_step(z, &w, 0.01).unwrap();
    let b = log_gamma2_with_step(z, &w, 0.02).unwrap();
    assert!((a - b).norm() < 1e-6);
}

#[test]
fn center_value_is_unit() {
    let w = OmegaPair::new(1.0, 2.0).unwrap();
    let v = log_s2(c(1.5, 0.0), &w).unwrap();
    assert!((v.value.norm() - 1.0).abs() < 1e-12);
    assert!(v.value.im.abs() < 1e-12);
}

#[test]
fn shift_relation_at_quarter() {
    let w = OmegaPair::new(1.0, 2.5).unwrap();
    let z = c(0.25, 0.0);
    let ratio = (log_s2(z + 1.0, &w).unwrap().log_value - log_s2(z, &w).unwrap().log_value).exp();
    let expected = 1.0 / (2.0 * (PI * z / 2.5).sin());
    assert!((ratio - expected).norm() < 1e-10);
}

#[test]
fn period_swap_symmetry() {
    let w = OmegaPair::new(1.0, 2.414).unwrap();
    for &z in &[c(0.3, 0.4), c(2.0, -1.1), c(-0.7, 0.2)] {
        let a = log_s2(z, &w).unwrap().log_value;
        let b = log_s2(z, &w.swapped()).unwrap().log_value;
        assert!(log_distance(a, b) < 1e-10, "{z}");
    }
}

#[test]
fn lattice_orders_from_winding() {
    let w = OmegaPair::new(1.0, 1.618).unwrap();
    let log_s = |s: Complex64| log_s2(s, &w).map(|v| v.log_value);
    // zero at the origin, pole at w1 + w2
    assert_eq!(winding_number_from_log(log_s, c(0.0, 0.0), 0.3, 128).unwrap(), 1);
    assert_eq!(winding_number_from_log(log_s, c(2.618, 0.0), 0.3, 128).unwrap(), -1);
    assert_eq!(winding_number_from_log(log_s, c(-1.0, 0.0), 0.3, 128).unwrap(), 1);
    assert_eq!(winding_number_from_log(log_s, c(1.309, 0.5), 0.3, 128).unwrap(), 0);
    assert!(matches!(log_s2(c(-1.618, 0.0), &w).unwrap().status, S2Status::Zero { .. }));
    assert!(matches!(log_s2(c(3.618, 0.0), &w).unwrap().status, S2Status::Pole { .. }));
}

#[test]
fn expansion_agrees_with_integral_far_from_axis() {
    let w = OmegaPair::new(1.0, 1.618).unwrap();
    for &z in &[c(0.4, 3.0), c(-2.0, -4.0), c(1.3, 6.5)] {
        let a = log_s2_with(z, &w, S2Route::Integral).unwrap().log_value;
        let b = log_s2_with(z, &w, S2Route::Expansion).unwrap().log_value;
        assert!((a - b).norm() < 1e-10 * a.norm().max(1.0), "{z}: {a} vs {b}");
    }
}

fn pair() -> impl Strategy<Value = OmegaPair> {
    prop_oneof![Just((1.0, 2.0)), Just((1.0, 1.618)), Just((1.0, 2.414))]
        .prop_map(|(a, b)| OmegaPair::new(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflection_holds(w in pair(), re in -3.0..3.0f64, im in -2.0..2.0f64) {
        let z = c(re, im);
        let a = log_s2(z, &w).unwrap();
        let b = log_s2(w.sum() - z, &w).unwrap();
        prop_assume!(a.is_regular() && b.is_regular());
        prop_assert!(log_distance(a.log_value + b.log_value, c(0.0, 0.0)) < 1e-9);
    }

    #[test]
    fn shift_holds_in_both_periods(w in pair(), re in -3.0..3.0f64, im in -2.0..2.0f64, swap in any::<bool>()) {
        let w = if swap { w.swapped() } else { w };
        let z = c(re, im);
        let a = log_s2(z, &w).unwrap();
        let b = log_s2(z + w.omega1(), &w).unwrap();
        let sin = (PI * z / w.omega2()).sin();
        prop_assume!(a.is_regular() && b.is_regular() && sin.norm() > 1e-3);
        let expected = -(2.0 * sin).ln();
        prop_assert!(log_distance(b.log_value - a.log_value, expected) < 1e-9);
    }
}
