use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Admissible wedge for `arg(-z)` together with a radius cap on `|z|`.
///
/// The bounds are open: a point with `arg(-z)` equal to either end is
/// rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorSpec {
    pub arg_min: f64,
    pub arg_max: f64,
    pub radius_max: f64,
}

impl SectorSpec {
    pub fn new(arg_min: f64, arg_max: f64, radius_max: f64) -> Result<Self> {
        let ok = (-PI..=PI).contains(&arg_min)
            && (-PI..=PI).contains(&arg_max)
            && arg_min < arg_max
            && radius_max > 0.0
            && radius_max <= 1.0;
        if !ok {
            return Err(Error::Parameter(format!(
                "invalid sector: arg in ({arg_min}, {arg_max}), radius {radius_max}"
            )));
        }
        Ok(Self { arg_min, arg_max, radius_max })
    }

    /// The symmetric wedge `-pi + delta < arg(-z) < pi - delta` inside the unit disk.
    pub fn symmetric(delta: f64) -> Result<Self> {
        Self::new(-PI + delta, PI - delta, 1.0)
    }

    /// Every `z` with `0 < |z| <= 1` off the positive real axis.
    pub fn unit_disk() -> Self {
        Self { arg_min: -PI, arg_max: PI, radius_max: 1.0 }
    }

    pub fn contains_arg(&self, arg: f64) -> bool {
        arg > self.arg_min && arg < self.arg_max
    }

    /// Distance of `arg` from the nearer wedge boundary (negative when outside).
    pub fn margin(&self, arg: f64) -> f64 {
        (arg - self.arg_min).min(self.arg_max - arg)
    }

    /// Checks only the wedge condition on `arg(-z)`.
    pub fn check_arg(&self, z: Complex64) -> Result<()> {
        let arg = (-z).arg();
        if !self.contains_arg(arg) {
            return Err(Error::Sector { arg, min: self.arg_min, max: self.arg_max });
        }
        Ok(())
    }

    /// Checks the wedge and the radius cap.
    pub fn check(&self, z: Complex64) -> Result<()> {
        self.check_arg(z)?;
        if z.norm() > self.radius_max {
            return Err(Error::Domain(format!(
                "|z| = {} exceeds the sector radius {}",
                z.norm(),
                self.radius_max
            )));
        }
        Ok(())
    }
}

/// Logarithm of `-z` on the branch that is real on the negative real axis.
pub fn log_neg(z: Complex64, sector: &SectorSpec) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("log(-z) at z = 0".into()));
    }
    sector.check_arg(z)?;
    Ok((-z).ln())
}

/// `(-z)^s := exp(s log(-z))`.
pub fn neg_pow(s: Complex64, z: Complex64, sector: &SectorSpec) -> Result<Complex64> {
    Ok((s * log_neg(z, sector)?).exp())
}

/// Logarithm of `1 / sin(pi s)`, computed without overflow for large `|Im s|`.
///
/// The branch is arbitrary; only the exponential is meaningful.
pub fn log_inv_sin_pi(s: Complex64) -> Complex64 {
    let i = Complex64::i();
    if s.im >= 0.0 {
        // 1/sin(pi s) = -2i e^{i pi s} / (1 - e^{2 i pi s})
        let e2 = (2.0 * PI * i * s).exp();
        Complex64::new(2f64.ln(), -PI / 2.0) + i * PI * s - (Complex64::new(1.0, 0.0) - e2).ln()
    } else {
        // 1/sin(pi s) = 2i e^{-i pi s} / (1 - e^{-2 i pi s})
        let e2 = (-2.0 * PI * i * s).exp();
        Complex64::new(2f64.ln(), PI / 2.0) - i * PI * s - (Complex64::new(1.0, 0.0) - e2).ln()
    }
}

/// Log of the kernel `pi (-z)^s / sin(pi s)` given `ell = log(-z)` directly.
///
/// Taking the log-variable rather than `z` lets callers shift `z -> q z`
/// by `ell -> ell + log q` without crossing the branch cut.
pub fn log_kernel_from_log(s: Complex64, ell: Complex64) -> Complex64 {
    PI.ln() + s * ell + log_inv_sin_pi(s)
}

/// `pi (-z)^s / sin(pi s)`.
pub fn barnes_kernel(s: Complex64, z: Complex64, sector: &SectorSpec) -> Result<Complex64> {
    let nearest = s.re.round();
    if (s - Complex64::new(nearest, 0.0)).norm() < 1e-12 {
        return Err(Error::Pole {
            location: Complex64::new(nearest, 0.0),
            family: "kernel pole s = k".into(),
        });
    }
    let ell = log_neg(z, sector)?;
    Ok(log_kernel_from_log(s, ell).exp())
}

/// Principal-value `log(2 sin w)` continued analytically into each half plane.
///
/// For `Im w >= 0` this is `i pi/2 - i w + log(1 - e^{2iw})`, analytic in the
/// closed upper half plane away from the real zeros; the lower half plane uses
/// the mirrored form. On the real segment `(0, pi)` both agree with the real
/// logarithm.
pub fn log_two_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    if w.im >= 0.0 {
        i * (PI / 2.0) - i * w + (one - (2.0 * i * w).exp()).ln()
    } else {
        -i * (PI / 2.0) + i * w + (one - (-2.0 * i * w).exp()).ln()
    }
}

/// Reduce the imaginary part of a logarithm into `(-pi, pi]`.
pub fn reduce_log(l: Complex64) -> Complex64 {
    let two_pi = 2.0 * PI;
    let mut im = l.im % two_pi;
    if im > PI {
        im -= two_pi;
    } else if im <= -PI {
        im += two_pi;
    }
    Complex64::new(l.re, im)
}

/// Distance between two logarithms modulo `2 pi i`.
pub fn log_distance(a: Complex64, b: Complex64) -> f64 {
    reduce_log(a - b).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_neg_examples() {
        let sec = SectorSpec::unit_disk();
        assert!(log_neg(c(-1.0, 0.0), &sec).unwrap().norm() < 1e-15);
        let e = std::f64::consts::E;
        assert!((log_neg(c(-e, 0.0), &sec).unwrap() - 1.0).norm() < 1e-15);
        // the radius cap is enforced only by the full check
        assert!(sec.check(c(-e, 0.0)).is_err());
        let l = log_neg(c(0.0, 1.0), &sec).unwrap();
        assert!((l - c(0.0, -PI / 2.0)).norm() < 1e-15);
        assert!(log_neg(c(0.0, 0.0), &sec).is_err());
    }

    #[test]
    fn sector_rejects_outside() {
        let sec = SectorSpec::symmetric(0.5).unwrap();
        assert!(matches!(log_neg(c(0.5, 0.01), &sec), Err(Error::Sector { .. })));
        assert!(SectorSpec::new(1.0, 0.5, 1.0).is_err());
        assert!(SectorSpec::new(-1.0, 0.5, 1.5).is_err());
    }

    #[test]
    fn neg_pow_examples() {
        let sec = SectorSpec::unit_disk();
        assert!((neg_pow(c(0.0, 0.0), c(0.3, 0.2), &sec).unwrap() - 1.0).norm() < 1e-15);
        let s1 = c(0.3, 1.0);
        let s2 = c(1.1, -2.0);
        let z = c(-0.5, 0.0);
        let lhs = neg_pow(s1 + s2, z, &sec).unwrap();
        let rhs = neg_pow(s1, z, &sec).unwrap() * neg_pow(s2, z, &sec).unwrap();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn kernel_at_half() {
        let sec = SectorSpec::unit_disk();
        let k = barnes_kernel(c(0.5, 0.0), c(-1.0, 0.0), &sec).unwrap();
        assert!((k - c(PI, 0.0)).norm() < 1e-13);
        assert!(barnes_kernel(c(2.0, 0.0), c(-0.5, 0.0), &sec).is_err());
    }

    #[test]
    fn inv_sin_matches_direct() {
        for &s in &[c(0.3, 0.7), c(-1.4, -2.2), c(2.6, 0.0), c(0.1, -0.05)] {
            let direct = 1.0 / (PI * s).sin();
            let via = log_inv_sin_pi(s).exp();
            assert!((direct - via).norm() < 1e-13 * direct.norm().max(1.0), "{s}");
        }
    }

    #[test]
    fn two_sin_matches_direct() {
        for &w in &[c(0.4, 0.3), c(2.0, -0.7), c(1.0, 0.0), c(-3.3, 2.1)] {
            let direct = 2.0 * w.sin();
            let via = log_two_sin(w).exp();
            assert!((direct - via).norm() < 1e-13 * direct.norm(), "{w}");
        }
        assert!((log_two_sin(c(1.0, 0.0)).im).abs() < 1e-15);
    }
}
