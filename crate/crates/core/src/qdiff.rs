//! q-difference operators acting on sampled functions.
//!
//! Multiplicative variable: `T_q f(z) = f(qz)`, `D_q = (1 - T_q)/((1 - q) z)`,
//! `[theta + a] = (1 - q^a T_q)/(1 - q)` and
//! `L_q = z^{-1} [theta][theta + c - 1] - [theta + a][theta + b]`.
//!
//! Additive variable: `T_+ g(x) = g(x + 1)`, `[theta + a]_+ = (1 - q^a T_+)/(1 - q)` and
//! `L_+ = q^{-x} [theta]_+ [theta + c - 1]_+ - [theta + a]_+ [theta + b]_+`.
//!
//! The factored forms above are the reference. The expanded second-order
//! forms are available only as cross-checks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qgamma::{q_bracket, QModulus};
use crate::qseries::HGParams;

/// A function that can be sampled along the q-orbit `z, qz, q^2 z`.
///
/// Implementors that carry a branch of `log(-z)` should advance it
/// additively by `log q` instead of multiplying `z` by `q`.
pub trait QOrbit {
    /// `[f(z), f(qz), f(q^2 z)]`.
    fn orbit(&self, z: Complex64, q: &QModulus) -> Result<[Complex64; 3]>;
}

/// A plain function of `z`, shifted by complex multiplication.
pub struct Multiplicative<F>(pub F);

impl<F> QOrbit for Multiplicative<F>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    fn orbit(&self, z: Complex64, q: &QModulus) -> Result<[Complex64; 3]> {
        Ok([(self.0)(z)?, (self.0)(z * q.pow(1.0.into()))?, (self.0)(z * q.pow(2.0.into()))?])
    }
}

/// A function of the log-variable `ell = log(-z)`; `T_q` acts as `ell -> ell + log q`.
///
/// The orbit starts from the principal `log(-z)` of the given point.
pub struct LogVariable<F>(pub F);

impl<F> QOrbit for LogVariable<F>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    fn orbit(&self, z: Complex64, q: &QModulus) -> Result<[Complex64; 3]> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("log-variable undefined at z = 0".into()));
        }
        let ell = (-z).ln();
        let lq = q.log_q();
        Ok([(self.0)(ell)?, (self.0)(ell + lq)?, (self.0)(ell + 2.0 * lq)?])
    }
}

/// Outcome of applying a difference operator.
///
/// `scale` is the largest magnitude among the operator's additive parts, so
/// `normalized` measures cancellation rather than absolute size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residual: Complex64,
    pub scale: f64,
    pub normalized: f64,
    pub point: Complex64,
}

impl ResidualReport {
    fn new(residual: Complex64, scale: f64, point: Complex64) -> Self {
        let normalized = if scale > 0.0 { residual.norm() / scale } else { residual.norm() };
        Self { residual, scale, normalized, point }
    }
}

fn one_minus_q(q: &QModulus) -> Complex64 {
    -crate::numerics::expm1(q.log_q())
}

/// `[theta + a][theta + b]` applied to samples `f0, f1, f2` along any orbit
/// on which `T` maps `f_j` to `f_{j+1}`.
fn double_bracket(s: &[Complex64; 3], a: Complex64, b: Complex64, q: &QModulus) -> Complex64 {
    let d = one_minus_q(q);
    let qa = q.pow(a);
    let qb = q.pow(b);
    let g0 = (s[0] - qb * s[1]) / d;
    let g1 = (s[1] - qb * s[2]) / d;
    (g0 - qa * g1) / d
}

/// `(T_q f)(z) = f(qz)`.
pub fn apply_tq(f: &impl QOrbit, z: Complex64, q: &QModulus) -> Result<Complex64> {
    Ok(f.orbit(z, q)?[1])
}

/// `(D_q f)(z) = (f(z) - f(qz)) / ((1 - q) z)`.
pub fn apply_dq(f: &impl QOrbit, z: Complex64, q: &QModulus) -> Result<Complex64> {
    nonzero(z)?;
    let s = f.orbit(z, q)?;
    Ok((s[0] - s[1]) / (one_minus_q(q) * z))
}

/// `([theta + a] f)(z) = (f(z) - q^a f(qz)) / (1 - q)`.
pub fn apply_theta_bracket(f: &impl QOrbit, z: Complex64, q: &QModulus, a: Complex64) -> Result<Complex64> {
    let s = f.orbit(z, q)?;
    Ok((s[0] - q.pow(a) * s[1]) / one_minus_q(q))
}

fn nonzero(z: Complex64) -> Result<()> {
    if z == Complex64::new(0.0, 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("operator needs finite z != 0, got {z}")));
    }
    Ok(())
}

/// `L_q` from the samples `f(z), f(qz), f(q^2 z)`.
pub fn lq_from_samples(s: &[Complex64; 3], p: &HGParams, z: Complex64, q: &QModulus) -> Result<ResidualReport> {
    nonzero(z)?;
    let one = Complex64::new(1.0, 0.0);
    let left = double_bracket(s, Complex64::new(0.0, 0.0), p.c - one, q) / z;
    let right = double_bracket(s, p.a, p.b, q);
    Ok(ResidualReport::new(left - right, left.norm().max(right.norm()), z))
}

/// `(L_q f)(z)` in factored form.
pub fn apply_lq(f: &impl QOrbit, p: &HGParams, z: Complex64, q: &QModulus) -> Result<ResidualReport> {
    nonzero(z)?;
    lq_from_samples(&f.orbit(z, q)?, p, z, q)
}

/// `L_+` from the samples `g(x), g(x + 1), g(x + 2)`.
pub fn lplus_from_samples(s: &[Complex64; 3], p: &HGParams, x: Complex64, q: &QModulus) -> Result<ResidualReport> {
    let one = Complex64::new(1.0, 0.0);
    let left = q.pow(-x) * double_bracket(s, Complex64::new(0.0, 0.0), p.c - one, q);
    let right = double_bracket(s, p.a, p.b, q);
    Ok(ResidualReport::new(left - right, left.norm().max(right.norm()), x))
}

/// `(L_+ g)(x)` in factored form.
pub fn apply_lplus<G>(g: G, p: &HGParams, x: Complex64, q: &QModulus) -> Result<ResidualReport>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let s = [g(x)?, g(x + 1.0)?, g(x + 2.0)?];
    lplus_from_samples(&s, p, x, q)
}

/// The expanded second-order display of `L_q` evaluated verbatim:
/// `z (q^c - q^{a+b+1} z) D_q^2 - {[c] - ((1-q^a)(1-q^b) - (1-q^{a+b+1}))/(1-q) z} D_q - [a][b]`.
///
/// `residual` is the expanded value minus the factored one; `scale` is the
/// factored report's scale.
pub fn expanded_lq_crosscheck(f: &impl QOrbit, p: &HGParams, z: Complex64, q: &QModulus) -> Result<ResidualReport> {
    nonzero(z)?;
    let s = f.orbit(z, q)?;
    let factored = lq_from_samples(&s, p, z, q)?;
    let one = Complex64::new(1.0, 0.0);
    let d = one_minus_q(q);
    let qz = z * q.q();
    let dq0 = (s[0] - s[1]) / (d * z);
    let dq1 = (s[1] - s[2]) / (d * qz);
    let dq2 = (dq0 - dq1) / (d * z);
    let qa = q.pow(p.a);
    let qb = q.pow(p.b);
    let qab1 = q.pow(p.a + p.b + one);
    let first = z * (q.pow(p.c) - qab1 * z) * dq2;
    let middle = (q_bracket(p.c, q)? - ((one - qa) * (one - qb) - (one - qab1)) / d * z) * dq0;
    let last = q_bracket(p.a, q)? * q_bracket(p.b, q)? * s[0];
    let expanded = first - middle - last;
    Ok(ResidualReport::new(expanded - factored.residual, factored.scale, z))
}

/// The expanded display of `L_+` evaluated verbatim, reported like
/// [`expanded_lq_crosscheck`].
pub fn expanded_lplus_crosscheck<G>(g: G, p: &HGParams, x: Complex64, q: &QModulus) -> Result<ResidualReport>
where
    G: Fn(Complex64) -> Result<Complex64>,
{
    let s = [g(x)?, g(x + 1.0)?, g(x + 2.0)?];
    let factored = lplus_from_samples(&s, p, x, q)?;
    let one = Complex64::new(1.0, 0.0);
    let d = one_minus_q(q);
    let qq = q.q();
    let qa = q.pow(p.a);
    let qb = q.pow(p.b);
    let qmx = q.pow(-x);
    let second = s[2] - (one + qq) * s[1] + qq * s[0];
    let first = s[1] - s[0];
    let bracket = (q.pow(p.c - one - x) - q.pow(p.a + p.b)) * second
        - ((one - q.pow(p.c)) * qmx + (one - qa) * (one - qb) - (one - q.pow(p.a + p.b + one))) * first
        - (one - qa) * (one - qb) * s[0];
    let expanded = bracket / (d * d);
    Ok(ResidualReport::new(expanded - factored.residual, factored.scale, x))
}
