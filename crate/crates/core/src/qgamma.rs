//! The modular q-gamma function `Gamma~(z; q)` for `|q| = 1`, the classical
//! q-gamma for `0 < q < 1`, q-brackets and q-shifted factorials.
//!
//! Powers of `q` are always formed as `q^z = exp(z * log_q)` with the fixed
//! logarithm stored in [`QModulus`], so they are single valued.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::doublesine::{log_s2, OmegaPair, S2Value};
use crate::error::{Error, Result};
use crate::numerics::expm1;

/// Which side of the unit circle `q` lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `q = exp(2 pi i omega)` with irrational `0 < omega < 1`.
    Unit,
    /// `q = exp(-2 pi tau)` with `tau > 0`.
    Classical,
}

/// Default distance `guard / r^2` kept from rationals `p / r` with `r <= 40`.
pub const DEFAULT_IRRATIONALITY_GUARD: f64 = 1e-2;
const GUARD_MAX_DENOMINATOR: u32 = 40;

/// The base `q` together with its fixed logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QModulus {
    regime: Regime,
    param: f64,
    log_q: Complex64,
}

impl QModulus {
    /// `q = exp(2 pi i omega)`, rejecting `omega` too close to a rational with small denominator.
    pub fn unit(omega: f64) -> Result<Self> {
        Self::unit_with_guard(omega, DEFAULT_IRRATIONALITY_GUARD)
    }

    /// Like [`QModulus::unit`] with an explicit guard: `|omega - p/r| >= guard / r^2` for `r <= 40`.
    pub fn unit_with_guard(omega: f64, guard: f64) -> Result<Self> {
        let m = Self::unit_unchecked(omega)?;
        if let Some((p, r)) = nearby_rational(omega, guard) {
            return Err(Error::Parameter(format!(
                "omega = {omega} is within {guard}/{r}^2 of {p}/{r}; q is numerically a root of unity"
            )));
        }
        Ok(m)
    }

    /// `q = exp(2 pi i omega)` without the irrationality guard.
    pub fn unit_unchecked(omega: f64) -> Result<Self> {
        if !(omega > 0.0 && omega < 1.0) {
            return Err(Error::Parameter(format!("omega must lie in (0, 1), got {omega}")));
        }
        Ok(Self { regime: Regime::Unit, param: omega, log_q: Complex64::new(0.0, 2.0 * PI * omega) })
    }

    /// `q = exp(-2 pi tau)`.
    pub fn classical(tau: f64) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::Parameter(format!("tau must be positive, got {tau}")));
        }
        Ok(Self { regime: Regime::Classical, param: tau, log_q: Complex64::new(-2.0 * PI * tau, 0.0) })
    }

    /// Classical modulus from `0 < q < 1`.
    pub fn from_real_q(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Parameter(format!("q must lie in (0, 1), got {q}")));
        }
        Self::classical(-q.ln() / (2.0 * PI))
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `omega` in the unit regime.
    pub fn omega(&self) -> Option<f64> {
        (self.regime == Regime::Unit).then_some(self.param)
    }

    /// `tau` in the classical regime.
    pub fn tau(&self) -> Option<f64> {
        (self.regime == Regime::Classical).then_some(self.param)
    }

    pub fn log_q(&self) -> Complex64 {
        self.log_q
    }

    pub fn q(&self) -> Complex64 {
        self.log_q.exp()
    }

    /// `q^z := exp(z log_q)`.
    pub fn pow(&self, z: Complex64) -> Complex64 {
        (z * self.log_q).exp()
    }

    /// Real `q` in the classical regime.
    pub fn real_q(&self) -> Result<f64> {
        match self.regime {
            Regime::Classical => Ok(self.log_q.re.exp()),
            Regime::Unit => Err(Error::Parameter("operation needs 0 < q < 1".into())),
        }
    }

    /// Principal `Log(q - 1)`.
    pub fn log_q_minus_one(&self) -> Complex64 {
        match self.regime {
            // q - 1 = -(1 - q) is negative real
            Regime::Classical => Complex64::new((-self.log_q.re.exp_m1()).ln(), PI),
            Regime::Unit => expm1(self.log_q).ln(),
        }
    }

    /// Quasi-periods `(1, 1/omega)` of the double sine behind `Gamma~`.
    ///
    /// In the classical regime `omega` becomes `i tau`, so the second period
    /// is `-i / tau`.
    pub fn gamma_periods(&self) -> Result<OmegaPair> {
        match self.regime {
            Regime::Unit => OmegaPair::new(1.0, 1.0 / self.param),
            Regime::Classical => {
                OmegaPair::complex(Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0 / self.param))
            }
        }
    }

    fn require_unit(&self) -> Result<f64> {
        self.omega().ok_or_else(|| Error::Parameter("operation needs |q| = 1".into()))
    }
}

fn nearby_rational(omega: f64, guard: f64) -> Option<(u32, u32)> {
    for r in 1..=GUARD_MAX_DENOMINATOR {
        let p = (omega * r as f64).round();
        let rf = r as f64;
        if (omega - p / rf).abs() < guard / (rf * rf) {
            return Some((p as u32, r));
        }
    }
    None
}

/// `[z] = (1 - q^z) / (1 - q)`.
pub fn q_bracket(z: Complex64, q: &QModulus) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    Ok(expm1(z * q.log_q) / expm1(q.log_q))
}

/// `log Gamma~(z; q) = (1 - z) Log(q - 1) + (z - 1) i pi/2 + z (z - 1)/4 log q - log S2(z | 1, 1/omega)`.
///
/// The returned status describes `Gamma~` itself: zeros at `n1 + n2/omega`
/// with `n1, n2 >= 1` and poles at `n1 + n2/omega` with `n1, n2 <= 0`.
/// In the classical regime `omega` is replaced by `i tau`.
pub fn gamma_tilde(z: Complex64, q: &QModulus) -> Result<S2Value> {
    let w = q.gamma_periods()?;
    let inv = log_s2(z, &w)?.recip();
    if !inv.is_regular() {
        return Ok(inv);
    }
    Ok(S2Value::regular(prefactor_log(z, q) + inv.log_value))
}

fn prefactor_log(z: Complex64, q: &QModulus) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let i_half_pi = Complex64::new(0.0, PI / 2.0);
    (one - z) * q.log_q_minus_one() + (z - one) * i_half_pi + z * (z - one) / 4.0 * q.log_q
}

/// Half plane selector for [`asymptotic_main_term`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HalfPlane {
    Upper,
    Lower,
}

impl HalfPlane {
    pub fn of(z: Complex64) -> Option<Self> {
        if z.im > 0.0 {
            Some(Self::Upper)
        } else if z.im < 0.0 {
            Some(Self::Lower)
        } else {
            None
        }
    }
}

/// Main term of `log Gamma~(z)` as `Im z -> +-inf`:
/// `(1 - z) log(q - 1) + (z - 1) log i + z (z - 1)/4 log q -+ pi i (omega z^2/2 - (omega + 1) z/2)`.
///
/// The remainder is `O(1)`; its limit is a constant modulo `2 pi i`.
pub fn asymptotic_main_term(z: Complex64, q: &QModulus, side: HalfPlane) -> Result<Complex64> {
    let omega = q.require_unit()?;
    if HalfPlane::of(z) != Some(side) {
        return Err(Error::Domain(format!("z = {z} is not in the {side:?} half plane")));
    }
    let sign = match side {
        HalfPlane::Upper => -1.0,
        HalfPlane::Lower => 1.0,
    };
    let quad = omega * z * z / 2.0 - (omega + 1.0) * z / 2.0;
    Ok(prefactor_log(z, q) + sign * Complex64::new(0.0, PI) * quad)
}

/// Length of a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PochhammerLength {
    Finite(usize),
    Infinite,
}

/// `(a; q)_k = prod_{l < k} (1 - a q^l)`, with `(a; q)_0 = 1`.
///
/// The infinite product needs `0 < q < 1`.
pub fn q_pochhammer(a: Complex64, q: &QModulus, k: PochhammerLength) -> Result<Complex64> {
    if !a.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {a}")));
    }
    match k {
        PochhammerLength::Finite(k) => {
            let mut p = Complex64::new(1.0, 0.0);
            for l in 0..k {
                p *= 1.0 - a * q.pow(Complex64::new(l as f64, 0.0));
            }
            Ok(p)
        }
        PochhammerLength::Infinite => {
            let qr = q.real_q()?;
            match log_q_pochhammer_inf(a, qr) {
                Ok(l) => Ok(l.exp()),
                Err(Error::Pole { .. }) => Ok(Complex64::new(0.0, 0.0)),
                Err(e) => Err(e),
            }
        }
    }
}

/// `log (x; q)_inf` for `0 < q < 1`.
///
/// The leading factors are summed directly until `|x q^N| <= 1/2`; the rest
/// uses `sum_{n >= N} log(1 - y q^{n-N}) = -sum_m y^m / (m (1 - q^m))` with
/// `y = x q^N`, so the cost is `O(log|x| / log q)` even for `q` near 1.
/// Errors with a pole-type error when a factor vanishes.
pub fn log_q_pochhammer_inf(x: Complex64, q: f64) -> Result<Complex64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Parameter(format!("q must lie in (0, 1), got {q}")));
    }
    let ln_q = q.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut y = x;
    let mut n = 0u64;
    while y.norm() > 0.5 {
        let f = 1.0 - y;
        if f.norm() < 1e-14 {
            return Err(Error::Pole { location: y, family: format!("factor 1 - x q^{n} vanishes") });
        }
        acc += f.ln();
        n += 1;
        y = x * (n as f64 * ln_q).exp();
    }
    let mut ym = Complex64::new(1.0, 0.0);
    for m in 1..10_000u32 {
        ym *= y;
        let denom = m as f64 * -(m as f64 * ln_q).exp_m1();
        let term = ym / denom;
        acc -= term;
        if term.norm() < 1e-18 * acc.norm().max(1.0) {
            break;
        }
    }
    Ok(acc)
}

/// `log Gamma_q(z) = log (q; q)_inf - log (q^z; q)_inf + (1 - z) log(1 - q)` for `0 < q < 1`.
pub fn log_gamma_q_classical(z: Complex64, q: &QModulus) -> Result<Complex64> {
    let qr = q.real_q()?;
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    let num = log_q_pochhammer_inf(Complex64::new(qr, 0.0), qr)?;
    let den = log_q_pochhammer_inf(q.pow(z), qr).map_err(|e| match e {
        Error::Pole { .. } => Error::Pole { location: z, family: "q^z = q^{-n}".into() },
        other => other,
    })?;
    Ok(num - den + (1.0 - z) * (-q.log_q.re.exp_m1()).ln())
}

/// Classical q-gamma `Gamma_q(z) = (q; q)_inf / (q^z; q)_inf (1 - q)^{1-z}`.
pub fn gamma_q_classical(z: Complex64, q: &QModulus) -> Result<Complex64> {
    Ok(log_gamma_q_classical(z, q)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn guard_rejects_near_rationals() {
        assert!(QModulus::unit(0.5).is_err());
        assert!(QModulus::unit(1.0 / 3.0 + 1e-6).is_err());
        assert!(QModulus::unit(0.6180339887).is_ok());
        assert!(QModulus::unit_unchecked(0.5).is_ok());
        assert!(QModulus::unit(1.2).is_err());
        assert!(QModulus::classical(-1.0).is_err());
    }

    #[test]
    fn bracket_trivial_values() {
        let q = QModulus::unit(0.6180339887).unwrap();
        assert!(q_bracket(c(0.0, 0.0), &q).unwrap().norm() < 1e-16);
        assert!((q_bracket(c(1.0, 0.0), &q).unwrap() - 1.0).norm() < 1e-15);
        assert!((q_bracket(c(2.0, 0.0), &q).unwrap() - (1.0 + q.q())).norm() < 1e-14);
    }

    #[test]
    fn log_q_minus_one_matches_direct() {
        for q in [QModulus::unit(0.3010299957).unwrap(), QModulus::classical(0.25).unwrap()] {
            let direct = (q.q() - 1.0).ln();
            assert!((q.log_q_minus_one() - direct).norm() < 1e-14);
        }
    }

    #[test]
    fn pochhammer_conventions() {
        let q = QModulus::classical(0.3).unwrap();
        let a = c(0.4, 0.2);
        assert_eq!(q_pochhammer(a, &q, PochhammerLength::Finite(0)).unwrap(), c(1.0, 0.0));
        for len in [PochhammerLength::Finite(5), PochhammerLength::Infinite] {
            assert!((q_pochhammer(c(0.0, 0.0), &q, len).unwrap() - 1.0).norm() < 1e-15);
        }
        let u = QModulus::unit(0.3010299957).unwrap();
        assert!(q_pochhammer(a, &u, PochhammerLength::Infinite).is_err());
    }

    #[test]
    fn tail_series_matches_direct_product() {
        for &(x, q) in &[(c(0.9, 0.3), 0.7), (c(-3.0, 1.0), 0.95), (c(0.2, 0.0), 0.5)] {
            let mut direct = Complex64::new(1.0, 0.0);
            let mut qn = 1.0;
            for _ in 0..20_000 {
                direct *= 1.0 - x * qn;
                qn *= q;
            }
            let fast = log_q_pochhammer_inf(x, q).unwrap().exp();
            assert!((fast - direct).norm() < 1e-12 * direct.norm(), "{x} {q}");
        }
    }

    #[test]
    fn classical_gamma_trivial_values() {
        let q = QModulus::classical(0.25).unwrap();
        assert!((gamma_q_classical(c(1.0, 0.0), &q).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma_q_classical(c(2.0, 0.0), &q).unwrap() - 1.0).norm() < 1e-14);
        assert!(matches!(gamma_q_classical(c(-2.0, 0.0), &q), Err(Error::Pole { .. })));
    }

    #[test]
    fn gamma_tilde_functional_equation() {
        let q = QModulus::unit(0.6180339887).unwrap();
        let z = c(0.3, 0.2);
        let g0 = gamma_tilde(z, &q).unwrap();
        let g1 = gamma_tilde(z + 1.0, &q).unwrap();
        let br = q_bracket(z, &q).unwrap();
        assert!((g1.value / g0.value - br).norm() < 1e-9 * br.norm());
    }

    #[test]
    fn gamma_tilde_lattice_statuses() {
        let omega = 0.6180339887;
        let q = QModulus::unit(omega).unwrap();
        let zero = gamma_tilde(c(1.0 + 1.0 / omega, 0.0), &q).unwrap();
        assert!(matches!(zero.status, crate::doublesine::S2Status::Zero { .. }));
        let pole = gamma_tilde(c(0.0, 0.0), &q).unwrap();
        assert!(matches!(pole.status, crate::doublesine::S2Status::Pole { .. }));
    }
}
