//! Circle-quadrature probes for residues and zero/pole orders.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `(1 / 2 pi i)` times the integral of `f` over the circle `|s - s0| = radius`,
/// by the trapezoidal rule (spectrally accurate for functions analytic on an
/// annulus around the circle).
pub fn residue_probe<F>(f: F, s0: Complex64, radius: f64, n_points: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(radius > 0.0) || n_points < 4 {
        return Err(Error::Parameter("residue probe needs radius > 0 and at least 4 points".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n_points {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n_points as f64);
        let v = f(s0 + e * radius);
        if !v.is_finite() {
            return Err(Error::Probe(format!("non-finite sample at {}", s0 + e * radius)));
        }
        // ds = i r e dtheta, so (1/2 pi i) ds = r e dtheta / (2 pi)
        acc += v * e;
    }
    Ok(acc * radius / n_points as f64)
}

/// Net count of zeros minus poles of `f` inside the circle, from the
/// argument principle with a finite-difference logarithmic derivative.
pub fn winding_number<F>(f: F, s0: Complex64, radius: f64, n_points: usize) -> Result<i64>
where
    F: Fn(Complex64) -> Complex64,
{
    let h = radius * 1e-3;
    let value = residue_probe(
        |s| {
            let fs = f(s);
            let d = (f(s + h) - f(s - h)) / (2.0 * h);
            d / fs
        },
        s0,
        radius,
        n_points,
    )?;
    let rounded = value.re.round();
    if (value - Complex64::new(rounded, 0.0)).norm() > 0.1 {
        return Err(Error::Inconclusive { value: value.re });
    }
    Ok(rounded as i64)
}

/// Winding number computed from a logarithm that is continuous along the
/// circle up to `2 pi i` jumps; tolerant of functions whose values span
/// many orders of magnitude.
pub fn winding_number_from_log<F>(log_f: F, s0: Complex64, radius: f64, n_points: usize) -> Result<i64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if n_points < 8 {
        return Err(Error::Parameter("winding probe needs at least 8 points".into()));
    }
    let mut total = 0.0;
    let start = log_f(s0 + radius)?;
    let mut prev = start;
    for k in 1..=n_points {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n_points as f64);
        let cur = if k == n_points { start } else { log_f(s0 + e * radius)? };
        let mut d = (cur.im - prev.im) % (2.0 * PI);
        if d > PI {
            d -= 2.0 * PI;
        } else if d < -PI {
            d += 2.0 * PI;
        }
        if d.abs() > 0.5 * PI {
            return Err(Error::Probe("argument step too large; increase the sample count".into()));
        }
        total += d;
        prev = cur;
    }
    let value = total / (2.0 * PI);
    let rounded = value.round();
    if (value - rounded).abs() > 0.1 {
        return Err(Error::Inconclusive { value });
    }
    Ok(rounded as i64)
}
