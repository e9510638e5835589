use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

// Lanczos approximation with g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `log Gamma(z)` for complex `z`, continuous in each half plane.
///
/// Uses the Lanczos series for `Re z >= 1/2` and the reflection formula
/// otherwise. Relative accuracy is about `1e-14` away from the poles.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { location: z, family: "Gamma poles at non-positive integers".into() });
    }
    if z.re < 0.5 {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        let refl = super::log_inv_sin_pi(z) + PI.ln();
        return Ok(refl - ln_gamma(Complex64::new(1.0, 0.0) - z)?);
    }
    let z1 = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z1 + k as f64);
    }
    let t = z1 + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z1 + 0.5) * t.ln() - t + x.ln())
}

/// `Gamma(z)` for complex `z`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// `e^x - 1` without cancellation for small `|x|`.
pub fn expm1(x: Complex64) -> Complex64 {
    if x.norm() > 0.5 {
        return x.exp() - 1.0;
    }
    let s = (0.5 * x.im).sin();
    Complex64::new(x.re.exp_m1() * x.im.cos() - 2.0 * s * s, x.re.exp() * x.im.sin())
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn rising(a: Complex64, k: usize) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |p, j| p * (a + j as f64))
}
