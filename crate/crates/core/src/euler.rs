//! The Euler-type integral `Psi(a, b, c; q, x)` for `|q| = 1` in the additive
//! variable `x` (`z = q^x`), and the Jackson-integral representation of the
//! basic series for `0 < q < 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barnes::{BarnesEvaluation, DEFAULT_CLEARANCE};
use crate::error::{Error, Result};
use crate::numerics::{build_contour, contour_integral, Contour, ContourRequest, IndexRange, PoleFamily, QuadratureConfig};
use crate::qgamma::{gamma_tilde, log_gamma_q_classical, QModulus};
use crate::qseries::HGParams;

/// Validated parameters for `Psi`.
///
/// Separability (`b - c` not a positive real, `a` not a negative real) is
/// required. The decay condition `Re b > 0`, `Re(a - c - 1) > 0` is soft:
/// when it fails the problem is still built and `warnings` says why.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EulerProblem {
    pub params: HGParams,
    pub q: QModulus,
    pub decay_condition_holds: bool,
    pub warnings: Vec<String>,
}

fn is_positive_real(x: Complex64) -> bool {
    x.im == 0.0 && x.re > 0.0
}

/// Checks the separability and decay conditions on `(a, b, c)`.
pub fn check_conditions_e(p: &HGParams, q: &QModulus) -> Result<EulerProblem> {
    if q.omega().is_none() {
        return Err(Error::Parameter("the Euler-type integral Psi needs |q| = 1".into()));
    }
    if is_positive_real(p.b - p.c) {
        return Err(Error::Condition { name: "E1".into(), detail: format!("b - c = {} is a positive real", p.b - p.c) });
    }
    if is_positive_real(-p.a) {
        return Err(Error::Condition { name: "E2".into(), detail: format!("a = {} is a negative real", p.a) });
    }
    let mut warnings = Vec::new();
    if p.b.re <= 0.0 {
        warnings.push(format!("E3: Re b = {} is not positive; the integral may diverge towards +i inf", p.b.re));
    }
    let r = (p.a - p.c - 1.0).re;
    if r <= 0.0 {
        warnings.push(format!("E3: Re(a - c - 1) = {r} is not positive; the integral may diverge towards -i inf"));
    }
    Ok(EulerProblem { params: *p, q: *q, decay_condition_holds: warnings.is_empty(), warnings })
}

fn check_x(x: Complex64) -> Result<()> {
    if !x.is_finite() || (x.im == 0.0 && x.re < 0.0) {
        return Err(Error::Domain(format!("Psi needs x off the negative real axis, got {x}")));
    }
    Ok(())
}

/// `log [Gamma~(s+x) Gamma~(s+c-b) / (Gamma~(s+x+a) Gamma~(s+1)) q^{bs}]`.
pub fn log_psi_integrand(p: &HGParams, q: &QModulus, s: Complex64, x: Complex64) -> Result<Complex64> {
    let term = |y: Complex64, label: &str| -> Result<Complex64> {
        let v = gamma_tilde(y, q)?;
        if !v.is_regular() {
            return Err(Error::Pole { location: s, family: label.to_string() });
        }
        Ok(v.log_value)
    };
    let one = Complex64::new(1.0, 0.0);
    Ok(term(s + x, "Gamma~(s + x)")? + term(s + p.c - p.b, "Gamma~(s + c - b)")?
        - term(s + x + p.a, "1/Gamma~(s + x + a)")?
        - term(s + one, "1/Gamma~(s + 1)")?
        + p.b * s * q.log_q())
}

/// The integrand of `Psi`.
pub fn psi_integrand(prob: &EulerProblem, s: Complex64, x: Complex64) -> Result<Complex64> {
    check_x(x)?;
    Ok(log_psi_integrand(&prob.params, &prob.q, s, x)?.exp())
}

/// Pole families `(right_of, left_of)` of the integrand at `x`.
pub fn euler_pole_families(p: &HGParams, q: &QModulus, x: Complex64) -> Result<(Vec<PoleFamily>, Vec<PoleFamily>)> {
    let omega = q.omega().ok_or_else(|| Error::Parameter("needs |q| = 1".into()))?;
    let g1 = Complex64::new(1.0, 0.0);
    let g2 = Complex64::new(1.0 / omega, 0.0);
    let right = vec![
        PoleFamily::lattice(-x, g1, g2, IndexRange::NonPositive, "-x + n1 + n2/omega")?,
        PoleFamily::lattice(p.b - p.c, g1, g2, IndexRange::NonPositive, "b - c + n1 + n2/omega")?,
    ];
    let left = vec![
        PoleFamily::lattice(-x - p.a + g1 + g2, g1, g2, IndexRange::NonNegative, "-x - a + n1 + n2/omega")?,
        PoleFamily::lattice(g2, g1, g2, IndexRange::NonNegative, "-1 + n1 + n2/omega")?,
    ];
    Ok((right, left))
}

/// The separating contour for `Psi` at `x`.
pub fn build_euler_contour(
    prob: &EulerProblem,
    x: Complex64,
    height: f64,
    clearance: f64,
    preferred_abscissa: Option<f64>,
) -> Result<Contour> {
    check_x(x)?;
    let (right, left) = euler_pole_families(&prob.params, &prob.q, x)?;
    let p = &prob.params;
    let rows = [x, p.b - p.c, x + p.a].iter().map(|y| y.im.abs()).fold(0.0, f64::max) + 2.0;
    let mut req = ContourRequest::new(&right, &left, clearance, height.max(rows));
    req.preferred_abscissa = preferred_abscissa;
    build_contour(&req)
}

/// Decay rates of the integrand towards `+i inf` and `-i inf`.
pub fn psi_decay_rates(prob: &EulerProblem) -> (f64, f64) {
    let two_pi_omega = prob.q.log_q().im;
    let p = &prob.params;
    (two_pi_omega * p.b.re, two_pi_omega * (p.a - p.c - 1.0).re)
}

/// `Psi(a, b, c; q, x)`, the integral with no normalising prefactor.
pub fn capital_psi(prob: &EulerProblem, x: Complex64, cfg: &QuadratureConfig) -> Result<BarnesEvaluation> {
    let contour = build_euler_contour(prob, x, 0.0, DEFAULT_CLEARANCE, None)?;
    capital_psi_on(prob, x, &contour, cfg)
}

/// `Psi` on a caller-supplied contour.
pub fn capital_psi_on(
    prob: &EulerProblem,
    x: Complex64,
    contour: &Contour,
    cfg: &QuadratureConfig,
) -> Result<BarnesEvaluation> {
    check_x(x)?;
    let p = prob.params;
    let q = prob.q;
    let (value, err) = contour_integral(|s| Ok(log_psi_integrand(&p, &q, s, x)?.exp()), contour, cfg)?;
    Ok(BarnesEvaluation { value, error_estimate: err, contour_used: contour.clone(), warnings: prob.warnings.clone() })
}

/// A Jackson sum with its stopping information.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacksonSum {
    pub value: Complex64,
    pub terms: usize,
    /// Magnitude of the last summand included.
    pub last_term: f64,
}

const JACKSON_MAX_TERMS: usize = 50_000_000;

/// Sums `(1 - q) sum_n w_n` for summands produced by `next(n)`, stopping after
/// three consecutive terms below `tail_tol * |sum|`.
fn jackson_sum<F>(mut next: F, q: f64, tail_tol: f64) -> Result<JacksonSum>
where
    F: FnMut(usize) -> Result<Complex64>,
{
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small = 0;
    let mut last = 0.0;
    for n in 0..JACKSON_MAX_TERMS {
        let t = next(n)?;
        sum += t;
        last = t.norm();
        if !sum.is_finite() {
            return Err(Error::Divergence { value: sum, tail: last });
        }
        if last <= tail_tol * sum.norm() {
            small += 1;
            if small == 3 {
                return Ok(JacksonSum { value: sum * (1.0 - q), terms: n + 1, last_term: last });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Divergence { value: sum * (1.0 - q), tail: last })
}

/// `integral_0^1 f(t) d_q t = (1 - q) sum_{n >= 0} q^n f(q^n)` for `0 < q < 1`.
pub fn jackson_integral<F>(f: F, q: &QModulus, tail_tol: f64) -> Result<JacksonSum>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let qr = q.real_q()?;
    if !(tail_tol > 0.0) {
        return Err(Error::Parameter("tail tolerance must be positive".into()));
    }
    let ln_q = qr.ln();
    jackson_sum(
        |n| {
            let t = (n as f64 * ln_q).exp();
            Ok(f(t)? * t)
        },
        qr,
        tail_tol,
    )
}

/// Euler's representation of `phi(q^a, q^b, q^c; q, z)` by a Jackson integral:
/// `Gamma_q(c) / (Gamma_q(b) Gamma_q(c-b)) integral_0^1 t^b (tzq^a, tq; q)_inf / (tz, tq^{c-b}; q)_inf d_q t / t`.
///
/// The summand at `t = q^n` is advanced by its one-step ratio, so the cost
/// is linear in the number of terms even for `q` close to 1.
pub fn euler_jackson_phi(p: &HGParams, q: &QModulus, z: Complex64, tail_tol: f64) -> Result<JacksonSum> {
    let qr = q.real_q()?;
    if !z.is_finite() || z.norm() >= 1.0 {
        return Err(Error::Domain(format!("needs |z| < 1, got |z| = {}", z.norm())));
    }
    if p.b.re <= 0.0 {
        return Err(Error::Parameter(format!("needs Re b > 0, got b = {}", p.b)));
    }
    let lg = |x: Complex64| log_gamma_q_classical(x, q);
    let log_pre = lg(p.c)? - lg(p.b)? - lg(p.c - p.b)?;
    let one = Complex64::new(1.0, 0.0);
    let qa = q.pow(p.a);
    let qcb = q.pow(p.c - p.b);
    let qb = q.pow(p.b);
    // F(1) = (z q^a, q; q)_inf / (z, q^{c-b}; q)_inf
    let lp = |x: Complex64| crate::qgamma::log_q_pochhammer_inf(x, qr);
    let log_f0 = lp(z * qa)? + lp(Complex64::new(qr, 0.0))? - lp(z)? - lp(qcb)?;
    let mut f = log_f0.exp();
    let mut weight = one;
    let mut t = 1.0;
    let sum = jackson_sum(
        |_| {
            let term = weight * f;
            // F(q t) / F(t) = (1 - tz)(1 - t q^{c-b}) / ((1 - t z q^a)(1 - t q))
            let ratio = (one - z * t) * (one - qcb * t) / ((one - z * qa * t) * (1.0 - qr * t));
            f *= ratio;
            weight *= qb;
            t *= qr;
            Ok(term)
        },
        qr,
        tail_tol,
    )?;
    let pre = log_pre.exp();
    Ok(JacksonSum { value: sum.value * pre, ..sum })
}
