//! Double zeta, double gamma and double sine functions.
//!
//! `S2(z | w1, w2) = Gamma2(z)^{-1} Gamma2(w1 + w2 - z)` has zeros at
//! `-m1 w1 - m2 w2` (`m1, m2 >= 0`) and poles at `n1 w1 + n2 w2`
//! (`n1, n2 >= 1`), and satisfies
//! `S2(z + w1) / S2(z) = 1 / (2 sin(pi z / w2))` together with the same
//! relation with `w1` and `w2` exchanged.
//!
//! Production values of `log S2` come from a one-dimensional integral on a
//! central band of the fundamental strip, moved to any `z` with the shift
//! relation. Far from the real axis a convergent q-series expansion is used
//! instead (real periods only). `log Gamma2` is an oracle built from an
//! Euler–Maclaurin continuation of the double zeta function.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{expm1, integrate_interval, log_two_sin, IndexRange, PoleFamily};

/// Quasi-periods `(w1, w2)`.
///
/// Positive real periods are the main case. Complex periods are accepted when
/// both lie in a common open half plane; the strip integral is then taken
/// along a rotated ray.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaPair {
    omega1: Complex64,
    omega2: Complex64,
}

impl OmegaPair {
    pub fn new(omega1: f64, omega2: f64) -> Result<Self> {
        if !(omega1 > 0.0 && omega2 > 0.0 && omega1.is_finite() && omega2.is_finite()) {
            return Err(Error::Parameter(format!(
                "quasi-periods must be positive and finite, got ({omega1}, {omega2})"
            )));
        }
        Ok(Self { omega1: omega1.into(), omega2: omega2.into() })
    }

    /// Complex quasi-periods lying in a common open half plane.
    pub fn complex(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        let w = Self { omega1, omega2 };
        if !omega1.is_finite() || !omega2.is_finite() || omega1.norm() == 0.0 || omega2.norm() == 0.0 {
            return Err(Error::Parameter("quasi-periods must be finite and non-zero".into()));
        }
        let e = w.ray_direction();
        if (omega1 * e).re <= 1e-12 * omega1.norm() || (omega2 * e).re <= 1e-12 * omega2.norm() {
            return Err(Error::Parameter(format!(
                "quasi-periods {omega1}, {omega2} do not lie in a common half plane"
            )));
        }
        Ok(w)
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn sum(&self) -> Complex64 {
        self.omega1 + self.omega2
    }

    pub fn is_real(&self) -> bool {
        self.omega1.im == 0.0 && self.omega2.im == 0.0
    }

    pub fn swapped(&self) -> Self {
        Self { omega1: self.omega2, omega2: self.omega1 }
    }

    /// Unit direction `e^{i theta}` of the integration ray, bisecting the
    /// directions conjugate to the two periods.
    pub fn ray_direction(&self) -> Complex64 {
        let theta = -0.5 * (self.omega1.arg() + self.omega2.arg());
        Complex64::from_polar(1.0, theta)
    }
}

/// Classification of a point relative to the zero/pole lattice of `S2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum S2Status {
    Regular,
    Zero { lattice_point: Complex64 },
    Pole { lattice_point: Complex64 },
}

/// A value of `S2` together with its logarithm.
///
/// For `Regular` points `value = exp(log_value)`. At zeros the value is `0`
/// and `log_value.re = -inf`; at poles the value is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct S2Value {
    pub log_value: Complex64,
    pub value: Complex64,
    pub status: S2Status,
}

impl S2Value {
    pub fn regular(log_value: Complex64) -> Self {
        Self { log_value, value: log_value.exp(), status: S2Status::Regular }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self.status, S2Status::Regular)
    }

    /// The reciprocal `1 / S2`, with zeros and poles exchanged.
    pub fn recip(&self) -> Self {
        match self.status {
            S2Status::Regular => Self::regular(-self.log_value),
            S2Status::Zero { lattice_point } => Self {
                log_value: Complex64::new(f64::INFINITY, 0.0),
                value: Complex64::new(f64::INFINITY, 0.0),
                status: S2Status::Pole { lattice_point },
            },
            S2Status::Pole { lattice_point } => Self {
                log_value: Complex64::new(f64::NEG_INFINITY, 0.0),
                value: Complex64::new(0.0, 0.0),
                status: S2Status::Zero { lattice_point },
            },
        }
    }
}

/// Evaluation strategy for [`log_s2_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum S2Route {
    /// Expansion when it converges fast, otherwise the strip integral.
    Auto,
    /// Strip integral plus shift relation only.
    Integral,
    /// Large-`|Im z|` expansion only (errors when not applicable).
    Expansion,
}

const LATTICE_TOL: f64 = 1e-9;

/// Zero/pole test with the lattice point responsible.
pub fn lattice_status(z: Complex64, w: &OmegaPair) -> S2Status {
    let tol = LATTICE_TOL * w.omega1.norm().max(w.omega2.norm()).max(1.0);
    let zeros = PoleFamily::lattice(Complex64::new(0.0, 0.0), w.omega1, w.omega2, IndexRange::NonPositive, "zeros");
    let poles = PoleFamily::lattice(w.sum(), w.omega1, w.omega2, IndexRange::NonNegative, "poles");
    if let Ok(f) = zeros {
        if let Some(&p) = f.nearest(z, tol).first() {
            return S2Status::Zero { lattice_point: p };
        }
    }
    if let Ok(f) = poles {
        if let Some(&p) = f.nearest(z, tol).first() {
            return S2Status::Pole { lattice_point: p };
        }
    }
    S2Status::Regular
}

fn singular_value(status: S2Status) -> S2Value {
    match status {
        S2Status::Zero { .. } => S2Value {
            log_value: Complex64::new(f64::NEG_INFINITY, 0.0),
            value: Complex64::new(0.0, 0.0),
            status,
        },
        _ => S2Value {
            log_value: Complex64::new(f64::INFINITY, 0.0),
            value: Complex64::new(f64::INFINITY, 0.0),
            status,
        },
    }
}

/// Coefficients of `x / sinh x = sum r_k x^{2k}`.
fn inv_sinhc_coeffs() -> &'static [f64; 24] {
    static COEFFS: OnceLock<[f64; 24]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        // invert sinh(x)/x = sum x^{2k}/(2k+1)!
        let mut c = [0.0; 24];
        let mut fact = 1.0;
        for k in 0..24 {
            if k > 0 {
                fact *= (2 * k) as f64 * (2 * k + 1) as f64;
            }
            c[k] = 1.0 / fact;
        }
        let mut r = [0.0; 24];
        r[0] = 1.0;
        for n in 1..24 {
            let mut acc = 0.0;
            for j in 1..=n {
                acc += c[j] * r[n - j];
            }
            r[n] = -acc;
        }
        r
    })
}

const HEAD_TERMS: usize = 20;

/// Complex `e^x - 1` without cancellation for small `|x|`.
/// `integral_0^inf [sinh(A t/2) / (2 sinh(w1 t/2) sinh(w2 t/2)) - A/(w1 w2 t)] dt/t`
/// with `A = w1 + w2 - 2z`, taken along the ray `t = r e^{i theta}`.
///
/// Equals `-log S2(z)` for `z` inside the (rotated) fundamental strip.
fn strip_integral(z: Complex64, w: &OmegaPair) -> Result<Complex64> {
    let (w1, w2) = (w.omega1, w.omega2);
    let omega = w.sum();
    let e = w.ray_direction();
    let a = omega - 2.0 * z;
    let d = (z * e).re.min(((omega - z) * e).re);
    if d <= 0.0 {
        return Err(Error::Domain(format!("{z} is outside the fundamental strip")));
    }
    let scale = a.norm().max(w1.norm()).max(w2.norm());
    let r_s = 0.5_f64.min(1.0 / scale);
    let t_s = e * r_s;
    let pref = a / (w1 * w2);

    // head [0, t_s]: the bracket equals (A/(w1 w2 t)) (P(u^2) - 1) with u = t/2,
    // P = sinh(A u)/(A u) * R(w1 u) * R(w2 u), R(x) = x / sinh x.
    let r = inv_sinhc_coeffs();
    let mut s_a = [Complex64::new(0.0, 0.0); HEAD_TERMS];
    let mut r1 = [Complex64::new(0.0, 0.0); HEAD_TERMS];
    let mut r2 = [Complex64::new(0.0, 0.0); HEAD_TERMS];
    let (a2, w1s, w2s) = (a * a, w1 * w1, w2 * w2);
    let mut pa = Complex64::new(1.0, 0.0);
    let mut p1 = Complex64::new(1.0, 0.0);
    let mut p2 = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    for k in 0..HEAD_TERMS {
        if k > 0 {
            pa *= a2;
            p1 *= w1s;
            p2 *= w2s;
            fact *= (2 * k) as f64 * (2 * k + 1) as f64;
        }
        s_a[k] = pa / fact;
        r1[k] = p1 * r[k];
        r2[k] = p2 * r[k];
    }
    let mut head = Complex64::new(0.0, 0.0);
    let mut ts_pow = t_s; // t_s^{2k-1}
    let ts2 = t_s * t_s;
    let mut four = 1.0;
    for k in 1..HEAD_TERMS {
        let mut pk = Complex64::new(0.0, 0.0);
        for i in 0..=k {
            let mut inner = Complex64::new(0.0, 0.0);
            for j in 0..=(k - i) {
                inner += r1[j] * r2[k - i - j];
            }
            pk += s_a[i] * inner;
        }
        four *= 4.0;
        if k > 1 {
            ts_pow *= ts2;
        }
        head += pk * ts_pow / (four * (2 * k - 1) as f64);
    }
    head *= pref;

    // tail [t_s, t_T] of g(t)/t with the 1/t^2 counterterm integrated exactly
    let r_t = (42.0 / d).max(2.0 * r_s);
    let integrand = |rr: f64| -> Complex64 {
        let t = e * rr;
        let num = -(-z * t).exp() * expm1(-a * t);
        let den = expm1(-w1 * t) * expm1(-w2 * t);
        num / den / rr
    };
    let guide = pref.norm() / r_s + head.norm() + 1.0;
    let (tail, _) = integrate_interval(integrand, r_s, r_t, 1e-14 * guide, 1e-13)?;
    Ok(head + tail - pref / t_s)
}

/// `log S2` for `z` in the strip, by the integral representation.
fn log_s2_strip(z: Complex64, w: &OmegaPair) -> Result<Complex64> {
    Ok(-strip_integral(z, w)?)
}

/// `B_{2,2}(z | w1, w2)`.
pub fn bernoulli22(z: Complex64, w: &OmegaPair) -> Complex64 {
    let (w1, w2) = (w.omega1, w.omega2);
    let p = w1 * w2;
    z * z / p - (w1 + w2) * z / p + (w1 * w1 + w2 * w2 + 3.0 * w1 * w2) / (6.0 * p)
}

const EXPANSION_SMALL_DIVISOR: f64 = 1e-8;

/// Large-`|Im z|` expansion for real periods:
/// `log S2 = +-(pi i / 2) B22(z) + sum_k e^{+-2 pi i k z / w2} / (k (e^{+-2 pi i k w1/w2} - 1)) + (1 <-> 2)`.
fn log_s2_expansion(z: Complex64, w: &OmegaPair) -> Option<Complex64> {
    if !w.is_real() || z.im == 0.0 {
        return None;
    }
    let sgn = z.im.signum();
    let i = Complex64::i();
    let mut total = sgn * i * PI / 2.0 * bernoulli22(z, w);
    for (wa, wb) in [(w.omega1.re, w.omega2.re), (w.omega2.re, w.omega1.re)] {
        // sum over e^{2 pi i k z / wb} / (k (e^{2 pi i k wa / wb} - 1))
        let ratio = (sgn * 2.0 * PI * i * z / wb).exp();
        let ratio_norm = ratio.norm();
        if ratio_norm >= 0.5 {
            return None;
        }
        let mut pow = Complex64::new(1.0, 0.0);
        for k in 1..=400 {
            pow *= ratio;
            let den = (sgn * 2.0 * PI * i * k as f64 * wa / wb).exp() - 1.0;
            if den.norm() < EXPANSION_SMALL_DIVISOR {
                return None;
            }
            let term = pow / (k as f64 * den);
            total += term;
            if pow.norm() < 1e-19 * EXPANSION_SMALL_DIVISOR {
                break;
            }
        }
    }
    Some(total)
}

/// Whether the expansion is used by the automatic route.
fn expansion_applicable(z: Complex64, w: &OmegaPair) -> bool {
    w.is_real() && z.im.abs() >= 0.75 * w.omega1.re.max(w.omega2.re)
}

/// `log S2(z)` by the strip integral, after moving `z` into the central band
/// with the shift relation (branch of each `log(2 sin)` factor continued
/// analytically within the half plane of its argument).
fn log_s2_integral_route(z: Complex64, w: &OmegaPair) -> Result<Complex64> {
    let e = w.ray_direction();
    let omega = w.sum();
    let width = (omega * e).re;
    let p1 = (w.omega1 * e).re / width;
    let p2 = (w.omega2 * e).re / width;
    let (step, other, ps) = if p1 <= p2 { (w.omega1, w.omega2, p1) } else { (w.omega2, w.omega1, p2) };
    let pz = (z * e).re / width;
    let k = ((0.5 - pz) / ps).round();
    if k.abs() > 1e6 {
        return Err(Error::Domain(format!("{z} is too far from the fundamental strip")));
    }
    let k = k as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut cur = z;
    if k > 0 {
        for _ in 0..k {
            acc += log_two_sin(PI * cur / other);
            cur += step;
        }
    } else {
        for _ in 0..(-k) {
            cur -= step;
            acc -= log_two_sin(PI * cur / other);
        }
    }
    Ok(log_s2_strip(cur, w)? + acc)
}

/// `log S2(z | w)` with the automatic route.
pub fn log_s2(z: Complex64, w: &OmegaPair) -> Result<S2Value> {
    log_s2_with(z, w, S2Route::Auto)
}

/// `log S2(z | w)` with an explicit route (used to cross-check the routes).
pub fn log_s2_with(z: Complex64, w: &OmegaPair, route: S2Route) -> Result<S2Value> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    let status = lattice_status(z, w);
    if status != S2Status::Regular {
        return Ok(singular_value(status));
    }
    let log_value = match route {
        S2Route::Integral => log_s2_integral_route(z, w)?,
        S2Route::Expansion => log_s2_expansion(z, w).ok_or_else(|| {
            Error::Domain(format!("large-|Im z| expansion not applicable at {z}"))
        })?,
        S2Route::Auto => {
            let fast = if expansion_applicable(z, w) { log_s2_expansion(z, w) } else { None };
            match fast {
                Some(v) => v,
                None => log_s2_integral_route(z, w)?,
            }
        }
    };
    if !log_value.is_finite() {
        return Err(Error::Accuracy { best: log_value, estimate: f64::INFINITY });
    }
    Ok(S2Value::regular(log_value))
}

/// `S2(z | w)`; the value field is the exponential of `log_s2`.
pub fn s2(z: Complex64, w: &OmegaPair) -> Result<S2Value> {
    log_s2(z, w)
}

/// Partial double zeta sum with its estimated truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zeta2Sum {
    pub value: Complex64,
    pub tail_bound: f64,
}

impl Zeta2Sum {
    /// True when the tail estimate is below `1e-8`.
    pub fn is_accurate(&self) -> bool {
        self.tail_bound < 1e-8
    }
}

/// `B_{2j} / (2j)!` for `j = 1..=12`.
fn bernoulli_over_factorial(j: usize) -> f64 {
    const B: [(f64, f64); 12] = [
        (1.0, 6.0),
        (-1.0, 30.0),
        (1.0, 42.0),
        (-1.0, 30.0),
        (5.0, 66.0),
        (-691.0, 2730.0),
        (7.0, 6.0),
        (-3617.0, 510.0),
        (43867.0, 798.0),
        (-174611.0, 330.0),
        (854513.0, 138.0),
        (-236364091.0, 2730.0),
    ];
    let (num, den) = B[j - 1];
    let mut fact = 1.0;
    for k in 2..=(2 * j) {
        fact *= k as f64;
    }
    num / den / fact
}

fn cpow_neg(y: Complex64, s: Complex64) -> Complex64 {
    (-s * y.ln()).exp()
}

/// `sum_{m >= 0} (y + m w)^{-s}`: direct terms below `cut`, Euler–Maclaurin
/// beyond. Analytic in `s` (away from `s = 1`), so it continues the sum past
/// its region of convergence. Returns the value and the size of the last
/// correction term kept.
fn hurwitz_em(s: Complex64, y: Complex64, w: Complex64, cut: usize, order: usize) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    for m in 0..cut {
        acc += cpow_neg(y + w * m as f64, s);
    }
    let yk = y + w * cut as f64;
    acc += cpow_neg(yk, s - 1.0) / (w * (s - 1.0)) + 0.5 * cpow_neg(yk, s);
    let mut poch = s; // (s)_{2j-1}
    let mut wpow = w;
    let mut last = 0.0;
    for j in 1..=order {
        if j > 1 {
            poch *= (s + (2 * j - 3) as f64) * (s + (2 * j - 2) as f64);
            wpow *= w * w;
        }
        let term = bernoulli_over_factorial(j) * poch * wpow * cpow_neg(yk, s + (2 * j - 1) as f64);
        acc += term;
        last = term.norm();
    }
    (acc, last)
}

/// `zeta2(s, z | w)` by nested Euler–Maclaurin summation around a direct
/// square of `terms x terms` lattice points.
fn zeta2_em(s: Complex64, z: Complex64, w: &OmegaPair, terms: usize, order: usize) -> Zeta2Sum {
    let (w1, w2) = (w.omega1, w.omega2);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut bound: f64 = 0.0;
    for m2 in 0..terms {
        let (h, b) = hurwitz_em(s, z + w2 * m2 as f64, w1, terms, order);
        acc += h;
        bound += b;
    }
    let zn = z + w2 * terms as f64;
    let (h_int, b0) = hurwitz_em(s - 1.0, zn, w1, terms, order);
    let (h_mid, b1) = hurwitz_em(s, zn, w1, terms, order);
    acc += h_int / (w2 * (s - 1.0)) + 0.5 * h_mid;
    bound += b0 + b1;
    let mut poch = s;
    let mut wpow = w2;
    let mut last = 0.0;
    for j in 1..=order {
        if j > 1 {
            poch *= (s + (2 * j - 3) as f64) * (s + (2 * j - 2) as f64);
            wpow *= w2 * w2;
        }
        let (h, b) = hurwitz_em(s + (2 * j - 1) as f64, zn, w1, terms, order);
        let term = bernoulli_over_factorial(j) * poch * wpow * h;
        acc += term;
        bound += b;
        last = term.norm();
    }
    Zeta2Sum { value: acc, tail_bound: bound + last }
}

/// `zeta2(s, z | w) = sum (z + m1 w1 + m2 w2)^{-s}` for `Re s > 2`.
///
/// The `terms x terms` square of lattice points is summed directly; the
/// remainder is the integral comparison term plus Euler–Maclaurin
/// corrections, whose last retained term is reported as `tail_bound`.
pub fn zeta2_direct(s: Complex64, z: Complex64, w: &OmegaPair, terms: usize) -> Result<Zeta2Sum> {
    if s.re <= 2.0 {
        return Err(Error::Domain(format!("double zeta sum needs Re s > 2, got {s}")));
    }
    if let S2Status::Zero { lattice_point } = lattice_status(z, w) {
        return Err(Error::Pole { location: lattice_point, family: "z + m1 w1 + m2 w2 = 0".into() });
    }
    let terms = terms.max(4);
    Ok(zeta2_em(s, z, w, terms, 8))
}

/// `log Gamma2(z | w) = d/ds zeta2(s, z | w)` at `s = 0`, with continuation
/// step `h` in `s` (fourth-order central difference).
pub fn log_gamma2_with_step(z: Complex64, w: &OmegaPair, h: f64) -> Result<Complex64> {
    if !w.is_real() {
        return Err(Error::Parameter("log_gamma2 is implemented for real quasi-periods".into()));
    }
    if let S2Status::Zero { lattice_point } = lattice_status(z, w) {
        return Err(Error::Pole { location: lattice_point, family: "Gamma2 pole".into() });
    }
    if z.re <= 0.0 && z.im == 0.0 {
        return Err(Error::Domain("log_gamma2 needs z off the non-positive real axis".into()));
    }
    const TERMS: usize = 40;
    const ORDER: usize = 10;
    let f = |s: f64| zeta2_em(Complex64::new(s, 0.0), z, w, TERMS, ORDER);
    let (p1, m1, p2, m2) = (f(h), f(-h), f(2.0 * h), f(-2.0 * h));
    let d = (8.0 * (p1.value - m1.value) - (p2.value - m2.value)) / (12.0 * h);
    let bound = p1.tail_bound.max(m1.tail_bound).max(p2.tail_bound).max(m2.tail_bound) / h;
    if !d.is_finite() || bound > 1e-6 {
        return Err(Error::Accuracy { best: d, estimate: bound });
    }
    Ok(d)
}

/// `log Gamma2(z | w)`; oracle quality (about `1e-8` relative).
pub fn log_gamma2(z: Complex64, w: &OmegaPair) -> Result<Complex64> {
    log_gamma2_with_step(z, w, 0.01)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::log_distance;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inverse_sinhc_series() {
        let r = inv_sinhc_coeffs();
        assert!((r[1] + 1.0 / 6.0).abs() < 1e-16);
        assert!((r[2] - 7.0 / 360.0).abs() < 1e-16);
    }

    #[test]
    fn center_value_is_one() {
        for w2 in [1.732, 2.0, 16.18] {
            let w = OmegaPair::new(1.0, w2).unwrap();
            let v = log_s2(w.sum() / 2.0, &w).unwrap();
            assert!(v.log_value.norm() < 1e-13, "{w2}: {}", v.log_value);
        }
    }

    #[test]
    fn shift_relation_at_quarter() {
        let w = OmegaPair::new(1.0, 2.5).unwrap();
        let z = c(0.25, 0.0);
        let lhs = (log_s2(z + 1.0, &w).unwrap().value) / log_s2(z, &w).unwrap().value;
        let rhs = 1.0 / (2.0 * (PI * z / 2.5).sin());
        assert!((lhs - rhs).norm() < 1e-10 * rhs.norm());
    }

    #[test]
    fn routes_agree_off_axis() {
        let w = OmegaPair::new(1.0, 2.414).unwrap();
        for z in [c(0.3, 2.0), c(-1.7, 3.1), c(4.2, -2.5), c(1.0, -1.9)] {
            let a = log_s2_with(z, &w, S2Route::Integral).unwrap().log_value;
            let b = log_s2_with(z, &w, S2Route::Expansion).unwrap().log_value;
            assert!((a - b).norm() < 1e-11, "{z}: {a} vs {b}");
        }
    }

    #[test]
    fn lattice_points_are_flagged() {
        let w = OmegaPair::new(1.0, 2.0).unwrap();
        assert!(matches!(log_s2(c(-3.0, 0.0), &w).unwrap().status, S2Status::Zero { .. }));
        assert!(matches!(log_s2(c(4.0, 0.0), &w).unwrap().status, S2Status::Pole { .. }));
        assert!(log_s2(c(2.5, 0.0), &w).unwrap().is_regular());
    }

    #[test]
    fn zeta2_collapses_to_riemann_zeta() {
        let w = OmegaPair::new(1.0, 1.0).unwrap();
        let z2 = zeta2_direct(c(3.0, 0.0), c(1.0, 0.0), &w, 30).unwrap();
        assert!((z2.value - PI * PI / 6.0).norm() < 1e-12, "{:?}", z2);
        assert!(z2.is_accurate());
    }

    #[test]
    fn gamma2_reflection_ties_to_s2() {
        let w = OmegaPair::new(1.0, 2.0).unwrap();
        let z = c(0.4, 0.1);
        let lhs = log_gamma2(w.sum() - z, &w).unwrap() - log_gamma2(z, &w).unwrap();
        let rhs = log_s2(z, &w).unwrap().log_value;
        assert!(log_distance(lhs, rhs) < 1e-6, "{lhs} vs {rhs}");
    }

    #[test]
    fn rotated_periods_satisfy_shift() {
        let w = OmegaPair::complex(c(1.0, 0.0), c(0.0, -4.0)).unwrap();
        let z = c(0.4, -0.3);
        let l0 = log_s2(z, &w).unwrap().log_value;
        let l1 = log_s2(z + 1.0, &w).unwrap().log_value;
        let rhs = -log_two_sin(PI * z / w.omega2());
        assert!(log_distance(l1 - l0, rhs) < 1e-10);
        let l2 = log_s2(z + w.omega2(), &w).unwrap().log_value;
        let rhs2 = -log_two_sin(PI * z / w.omega1());
        assert!(log_distance(l2 - l0, rhs2) < 1e-10);
    }
}
