//! The Barnes-type integral `Phi(a, b, c; q, z)` for `|q| = 1`, together with
//! the classical Barnes integral and Watson's integral (`0 < q < 1`) that it
//! generalises.
//!
//! All integrands are assembled in log space and exponentiated once: the
//! gamma factors grow or decay like `exp(quadratic)` along the contour and
//! would overflow as separate values.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    build_contour, contour_integral_multi, ln_gamma, log_kernel_from_log, log_neg, Contour, ContourRequest,
    IndexRange, PoleFamily, QuadratureConfig, SectorSpec,
};
use crate::qgamma::{gamma_tilde, log_gamma_q_classical, QModulus, Regime};
use crate::qseries::HGParams;

/// Clearance kept between contours and poles unless configured otherwise.
pub const DEFAULT_CLEARANCE: f64 = 0.05;

/// Which half of the separability condition holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparationClause {
    /// `Re alpha > Re beta` for every `alpha in {a, b}`, `beta in {c, 1}`.
    RealOrdering,
    /// `Im alpha != Im beta` for every such pair.
    ImagSeparation,
}

/// Validated parameters for `Phi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarnesProblem {
    pub params: HGParams,
    pub q: QModulus,
    pub sector: SectorSpec,
    pub clause: SeparationClause,
    /// `1 - omega Re(a + b - c + 1)`; positive for a valid problem.
    pub convergence_margin: f64,
    /// The `delta` of the lower sector bound `-pi + delta < arg(-z)`.
    pub delta: f64,
}

fn separation_clause(p: &HGParams) -> Result<SeparationClause> {
    let one = Complex64::new(1.0, 0.0);
    let pairs = [(p.a, p.c), (p.a, one), (p.b, p.c), (p.b, one)];
    if pairs.iter().all(|(al, be)| al.re > be.re) {
        return Ok(SeparationClause::RealOrdering);
    }
    if pairs.iter().all(|(al, be)| al.im != be.im) {
        return Ok(SeparationClause::ImagSeparation);
    }
    let culprit = pairs
        .iter()
        .find(|(al, be)| al.re <= be.re && al.im == be.im)
        .copied()
        .unwrap_or(pairs[0]);
    Err(Error::Condition {
        name: "B1".into(),
        detail: format!(
            "pole families are not separable: alpha = {} and beta = {} satisfy neither Re alpha > Re beta nor Im alpha != Im beta",
            culprit.0, culprit.1
        ),
    })
}

/// Checks the separability and convergence conditions and fixes the sector
/// `-pi + delta < arg(-z) < pi - 2 pi omega Re(a + b - c + 1)`, `|z| < 1`.
///
/// `delta` defaults to the smaller of `0.1` and half its admissible range
/// `(0, pi - pi omega Re(a + b - c + 1))`.
pub fn check_conditions_b(p: &HGParams, q: &QModulus, delta: Option<f64>) -> Result<BarnesProblem> {
    let omega = q
        .omega()
        .ok_or_else(|| Error::Parameter("the Barnes-type integral Phi needs |q| = 1".into()))?;
    let clause = separation_clause(p)?;
    let r = (p.a + p.b - p.c + 1.0).re;
    let margin = 1.0 - omega * r;
    if !(margin > 0.0) {
        return Err(Error::Condition {
            name: "B2".into(),
            detail: format!("omega Re(a + b - c + 1) = {} is not below 1", omega * r),
        });
    }
    let delta_max = PI - PI * omega * r;
    let delta = delta.unwrap_or((0.5 * delta_max).min(0.1));
    if !(delta > 0.0 && delta < delta_max) {
        return Err(Error::Parameter(format!("delta = {delta} must lie in (0, {delta_max})")));
    }
    let sector = SectorSpec::new(-PI + delta, PI - 2.0 * PI * omega * r, 1.0).map_err(|_| Error::Condition {
        name: "sector".into(),
        detail: format!("empty sector: lower bound {} exceeds upper bound {}", -PI + delta, PI - 2.0 * PI * omega * r),
    })?;
    Ok(BarnesProblem { params: *p, q: *q, sector, clause, convergence_margin: margin, delta })
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `log [Gamma~(a+s) Gamma~(b+s) / (Gamma~(c+s) Gamma~(1+s))]`.
fn log_gamma_tilde_ratio(p: &HGParams, q: &QModulus, s: Complex64) -> Result<Complex64> {
    let term = |x: Complex64, label: &str| -> Result<Complex64> {
        let v = gamma_tilde(x + s, q)?;
        if !v.is_regular() {
            return Err(Error::Pole { location: s, family: format!("{label} lattice at s = {s}") });
        }
        Ok(v.log_value)
    };
    Ok(term(p.a, "Gamma~(a + s)")? + term(p.b, "Gamma~(b + s)")? - term(p.c, "1/Gamma~(c + s)")?
        - term(c64(1.0), "1/Gamma~(1 + s)")?)
}

fn check_kernel_pole(s: Complex64) -> Result<()> {
    let k = s.re.round();
    if (s - c64(k)).norm() < 1e-9 && k >= 0.0 {
        return Err(Error::Pole { location: c64(k), family: "kernel pole s = m".into() });
    }
    Ok(())
}

/// `log phi(a, b, c; q; s, z)` with `z` given through `ell = log(-z)`.
pub fn log_barnes_integrand(p: &HGParams, q: &QModulus, s: Complex64, ell: Complex64) -> Result<Complex64> {
    check_kernel_pole(s)?;
    Ok(log_gamma_tilde_ratio(p, q, s)? + log_kernel_from_log(s, ell))
}

/// `phi(a, b, c; q; s, z) = Gamma~(a+s) Gamma~(b+s) / (Gamma~(c+s) Gamma~(1+s)) * pi (-z)^s / sin(pi s)`.
pub fn barnes_integrand(prob: &BarnesProblem, s: Complex64, z: Complex64) -> Result<Complex64> {
    let ell = log_neg(z, &prob.sector)?;
    Ok(log_barnes_integrand(&prob.params, &prob.q, s, ell)?.exp())
}

/// Pole families of the integrand: `(right_of, left_of, avoid)`.
///
/// Kept left of the path: `-a + n1 + n2/omega`, `-b + n1 + n2/omega` (`n <= 0`).
/// Kept right: `-c + n1 + n2/omega`, `-1 + n1 + n2/omega` (`n > 0`) and `s = m >= 0`.
/// The kernel poles at negative integers are cancelled by `1/Gamma~(1+s)`; they
/// are only avoided.
pub fn barnes_pole_families(p: &HGParams, q: &QModulus) -> Result<(Vec<PoleFamily>, Vec<PoleFamily>, Vec<Complex64>)> {
    let omega = q.omega().ok_or_else(|| Error::Parameter("needs |q| = 1".into()))?;
    let g1 = c64(1.0);
    let g2 = c64(1.0 / omega);
    let right = vec![
        PoleFamily::lattice(-p.a, g1, g2, IndexRange::NonPositive, "-a + n1 + n2/omega")?,
        PoleFamily::lattice(-p.b, g1, g2, IndexRange::NonPositive, "-b + n1 + n2/omega")?,
    ];
    let left = vec![
        PoleFamily::lattice(-p.c + g1 + g2, g1, g2, IndexRange::NonNegative, "-c + n1 + n2/omega")?,
        PoleFamily::lattice(g2, g1, g2, IndexRange::NonNegative, "-1 + n1 + n2/omega")?,
        PoleFamily::ray(c64(0.0), g1, IndexRange::NonNegative, "s = m")?,
    ];
    Ok((right, left, negative_integers(p)))
}

fn negative_integers(p: &HGParams) -> Vec<Complex64> {
    let reach = [p.a, p.b, p.c].iter().map(|x| x.re.abs()).fold(0.0, f64::max) + 12.0;
    (1..=reach.ceil() as i64).map(|k| c64(-(k as f64))).collect()
}

fn row_height(p: &HGParams) -> f64 {
    [p.a, p.b, p.c].iter().map(|x| x.im.abs()).fold(0.0, f64::max) + 2.0
}

/// The separating contour for `Phi`.
///
/// `preferred_abscissa` is used for every vertical piece where admissible
/// (handy for deformation checks).
pub fn build_barnes_contour(
    prob: &BarnesProblem,
    height: f64,
    clearance: f64,
    preferred_abscissa: Option<f64>,
) -> Result<Contour> {
    let (right, left, avoid) = barnes_pole_families(&prob.params, &prob.q)?;
    let mut req = ContourRequest::new(&right, &left, clearance, height.max(row_height(&prob.params)));
    req.avoid = avoid;
    req.preferred_abscissa = preferred_abscissa;
    build_contour(&req)
}

/// A contour integral together with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarnesEvaluation {
    pub value: Complex64,
    pub error_estimate: f64,
    pub contour_used: Contour,
    pub warnings: Vec<String>,
}

/// `(-1/(2 pi i)) * integral exp(log_f_j(s)) ds` for several `j` on one contour,
/// multiplied by `exp(log_prefactor)`.
fn integrate_log<const N: usize, F>(
    log_f: F,
    log_prefactor: Complex64,
    contour: &Contour,
    cfg: &QuadratureConfig,
) -> Result<([Complex64; N], f64)>
where
    F: Fn(Complex64) -> Result<[Complex64; N]> + Sync,
{
    let pre = log_prefactor.exp();
    if !pre.is_finite() || pre.norm() == 0.0 {
        return Err(Error::Accuracy { best: pre, estimate: f64::INFINITY });
    }
    // tolerances refer to the final value, so rescale the absolute one
    let inner = QuadratureConfig { abs_tol: cfg.abs_tol / pre.norm(), ..*cfg };
    let f = |s: Complex64| -> Result<[Complex64; N]> {
        let mut v = log_f(s)?;
        for x in v.iter_mut() {
            *x = x.exp();
        }
        Ok(v)
    };
    let (raw, err) = contour_integral_multi(f, contour, &inner)?;
    let factor = pre * Complex64::new(0.0, 1.0 / (2.0 * PI));
    let mut out = raw;
    for x in out.iter_mut() {
        *x *= factor;
    }
    Ok((out, err * pre.norm() / (2.0 * PI)))
}

/// Decay rates of `phi` towards `+i inf` and `-i inf` at `ell = log(-z)`.
pub fn barnes_decay_rates(prob: &BarnesProblem, ell: Complex64) -> (f64, f64) {
    let omega = prob.q.omega().unwrap_or(0.0);
    let theta = ell.im;
    let r = (prob.params.a + prob.params.b - prob.params.c - 1.0).re;
    (PI + theta, PI - theta - 2.0 * PI * omega * r)
}

fn check_decay(prob: &BarnesProblem, ell: Complex64) -> Result<()> {
    let (up, down) = barnes_decay_rates(prob, ell);
    if up <= 0.0 || down <= 0.0 {
        return Err(Error::Condition {
            name: "convergence".into(),
            detail: format!("integrand does not decay at Im log(-z) = {} (rates {up:.4}, {down:.4})", ell.im),
        });
    }
    Ok(())
}

fn log_phi_prefactor(prob: &BarnesProblem) -> Result<Complex64> {
    let p = &prob.params;
    let g = |x: Complex64| -> Result<Complex64> {
        let v = gamma_tilde(x, &prob.q)?;
        if !v.is_regular() {
            return Err(Error::Pole { location: x, family: "Gamma~ in the prefactor".into() });
        }
        Ok(v.log_value)
    };
    Ok(g(p.c)? - g(p.a)? - g(p.b)?)
}

fn sector_warnings(prob: &BarnesProblem, z: Complex64) -> Vec<String> {
    let margin = prob.sector.margin((-z).arg());
    if margin < 0.05 {
        vec![format!("arg(-z) is within {margin:.3} of the sector boundary; convergence is slow")]
    } else {
        Vec::new()
    }
}

/// `Phi` at the points with log-variables `ells` (all on one contour).
///
/// Only the decay of the integrand is checked, not the sector, so this also
/// evaluates the q-shifted points `ell + k log q`.
pub fn capital_phi_at_logs<const N: usize>(
    prob: &BarnesProblem,
    ells: [Complex64; N],
    contour: &Contour,
    cfg: &QuadratureConfig,
) -> Result<([Complex64; N], f64)> {
    for &ell in &ells {
        check_decay(prob, ell)?;
    }
    let p = prob.params;
    let q = prob.q;
    let log_f = |s: Complex64| -> Result<[Complex64; N]> {
        check_kernel_pole(s)?;
        let ratio = log_gamma_tilde_ratio(&p, &q, s)?;
        let mut out = [Complex64::new(0.0, 0.0); N];
        for (o, &ell) in out.iter_mut().zip(ells.iter()) {
            *o = ratio + log_kernel_from_log(s, ell);
        }
        Ok(out)
    };
    integrate_log(log_f, log_phi_prefactor(prob)?, contour, cfg)
}

/// `Phi(a, b, c; q, z) = Gamma~(c)/(Gamma~(a) Gamma~(b)) (-1/(2 pi i)) integral phi(s, z) ds`.
pub fn capital_phi(prob: &BarnesProblem, z: Complex64, cfg: &QuadratureConfig) -> Result<BarnesEvaluation> {
    let contour = build_barnes_contour(prob, row_height(&prob.params), DEFAULT_CLEARANCE, None)?;
    capital_phi_on(prob, z, &contour, cfg)
}

/// `Phi` on a caller-supplied contour.
pub fn capital_phi_on(
    prob: &BarnesProblem,
    z: Complex64,
    contour: &Contour,
    cfg: &QuadratureConfig,
) -> Result<BarnesEvaluation> {
    prob.sector.check(z)?;
    let ell = log_neg(z, &prob.sector)?;
    let ([value], err) = capital_phi_at_logs(prob, [ell], contour, cfg)?;
    Ok(BarnesEvaluation { value, error_estimate: err, contour_used: contour.clone(), warnings: sector_warnings(prob, z) })
}

/// `Phi(z)`, `Phi(qz)`, `Phi(q^2 z)` on one contour, the shifts taken on the
/// log-variable. This is the input of the `L_q` residual.
pub fn capital_phi_orbit(
    prob: &BarnesProblem,
    z: Complex64,
    contour: &Contour,
    cfg: &QuadratureConfig,
) -> Result<([Complex64; 3], f64)> {
    prob.sector.check(z)?;
    let ell = log_neg(z, &prob.sector)?;
    let lq = prob.q.log_q();
    capital_phi_at_logs(prob, [ell, ell + lq, ell + 2.0 * lq], contour, cfg)
}

/// `Phi` as a sampled function for the operator layer.
pub struct PhiFunction<'a> {
    pub problem: &'a BarnesProblem,
    pub contour: Contour,
    pub config: QuadratureConfig,
}

impl crate::qdiff::QOrbit for PhiFunction<'_> {
    fn orbit(&self, z: Complex64, q: &QModulus) -> Result<[Complex64; 3]> {
        if q != &self.problem.q {
            return Err(Error::Parameter("orbit modulus differs from the problem's".into()));
        }
        Ok(capital_phi_orbit(self.problem, z, &self.contour, &self.config)?.0)
    }
}

/// Pointwise check of the contiguous relation behind `L_q Phi = 0`:
/// `L_q phi(a, b, c; s, .)(z) = phi(a+1, b+1, c; s-1, z) - phi(a+1, b+1, c; s, z)`.
///
/// `residual` is the difference of both sides; `scale` is the largest of the
/// operator's parts and the two right-hand terms.
pub fn contiguous_relation_check(
    p: &HGParams,
    q: &QModulus,
    s: Complex64,
    z: Complex64,
) -> Result<crate::qdiff::ResidualReport> {
    let ell = (-z).ln();
    let lq = q.log_q();
    let samples = [
        log_barnes_integrand(p, q, s, ell)?.exp(),
        log_barnes_integrand(p, q, s, ell + lq)?.exp(),
        log_barnes_integrand(p, q, s, ell + 2.0 * lq)?.exp(),
    ];
    let lhs = crate::qdiff::lq_from_samples(&samples, p, z, q)?;
    let shifted = HGParams::new(p.a + 1.0, p.b + 1.0, p.c);
    let r1 = log_barnes_integrand(&shifted, q, s - 1.0, ell)?.exp();
    let r0 = log_barnes_integrand(&shifted, q, s, ell)?.exp();
    let residual = lhs.residual - (r1 - r0);
    let scale = lhs.scale.max(r1.norm()).max(r0.norm());
    Ok(crate::qdiff::ResidualReport { residual, scale, normalized: residual.norm() / scale, point: z })
}

fn classical_families(p: &HGParams) -> Result<(Vec<PoleFamily>, Vec<PoleFamily>)> {
    let g = c64(1.0);
    Ok((
        vec![
            PoleFamily::ray(-p.a, g, IndexRange::NonPositive, "-a - n")?,
            PoleFamily::ray(-p.b, g, IndexRange::NonPositive, "-b - n")?,
        ],
        vec![PoleFamily::ray(c64(0.0), g, IndexRange::NonNegative, "s = m")?],
    ))
}

fn non_positive_integer(x: Complex64) -> bool {
    x.im == 0.0 && x.re <= 0.0 && x.re == x.re.round()
}

/// Barnes' integral for Gauss's `F(a, b, c; z)` with classical gamma functions,
/// for `z` in `sector`.
pub fn classical_barnes(
    p: &HGParams,
    z: Complex64,
    sector: &SectorSpec,
    cfg: &QuadratureConfig,
) -> Result<BarnesEvaluation> {
    if non_positive_integer(p.a) || non_positive_integer(p.b) {
        return Err(Error::Parameter("a and b must not be non-positive integers".into()));
    }
    sector.check(z)?;
    let ell = log_neg(z, sector)?;
    let (right, left) = classical_families(p)?;
    let mut req = ContourRequest::new(&right, &left, DEFAULT_CLEARANCE, row_height(p));
    req.avoid = negative_integers(p);
    let contour = build_contour(&req)?;
    let log_pre = ln_gamma(p.c)? - ln_gamma(p.a)? - ln_gamma(p.b)?;
    let log_f = |s: Complex64| -> Result<[Complex64; 1]> {
        check_kernel_pole(s)?;
        let r = ln_gamma(p.a + s)? + ln_gamma(p.b + s)? - ln_gamma(p.c + s)? - ln_gamma(s + 1.0)?;
        Ok([r + log_kernel_from_log(s, ell)])
    };
    let ([value], err) = integrate_log(log_f, log_pre, &contour, cfg)?;
    Ok(BarnesEvaluation { value, error_estimate: err, contour_used: contour, warnings: Vec::new() })
}

/// Watson's integral for `phi(q^a, q^b, q^c; q, z)` with `0 < q < 1`.
///
/// The poles of `Gamma_q(a + s)` sit at `-a - n + 2 pi i k / log q`, an
/// imaginary lattice with spacing `1/tau`.
pub fn watson_integral(
    p: &HGParams,
    q: &QModulus,
    z: Complex64,
    sector: &SectorSpec,
    cfg: &QuadratureConfig,
) -> Result<BarnesEvaluation> {
    let tau = q.tau().ok_or_else(|| Error::Parameter("Watson's integral needs 0 < q < 1".into()))?;
    if q.regime() != Regime::Classical {
        return Err(Error::Parameter("Watson's integral needs 0 < q < 1".into()));
    }
    sector.check(z)?;
    let ell = log_neg(z, sector)?;
    let g1 = c64(1.0);
    let g2 = Complex64::new(0.0, 1.0 / tau);
    let right = vec![
        PoleFamily::new(-p.a, vec![g1, g2], vec![IndexRange::NonPositive, IndexRange::All], "-a + n1 + i n2/tau")?,
        PoleFamily::new(-p.b, vec![g1, g2], vec![IndexRange::NonPositive, IndexRange::All], "-b + n1 + i n2/tau")?,
    ];
    let left = vec![PoleFamily::ray(c64(0.0), g1, IndexRange::NonNegative, "s = m")?];
    let height = (row_height(p) + 1.0 / tau).min(cfg.max_height.max(row_height(p)));
    let mut req = ContourRequest::new(&right, &left, DEFAULT_CLEARANCE, height);
    req.avoid = negative_integers(p);
    let contour = build_contour(&req)?;
    let lg = |x: Complex64| -> Result<Complex64> { log_gamma_q_classical(x, q) };
    let log_pre = lg(p.c)? - lg(p.a)? - lg(p.b)?;
    let log_f = |s: Complex64| -> Result<[Complex64; 1]> {
        check_kernel_pole(s)?;
        let r = lg(p.a + s)? + lg(p.b + s)? - lg(p.c + s)? - lg(s + 1.0)?;
        Ok([r + log_kernel_from_log(s, ell)])
    };
    let ([value], err) = integrate_log(log_f, log_pre, &contour, cfg)?;
    Ok(BarnesEvaluation { value, error_estimate: err, contour_used: contour, warnings: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn condition_examples() {
        let p = HGParams::real(2.5, 3.1, 1.2);
        let q02 = QModulus::unit_unchecked(0.2).unwrap();
        assert!(matches!(check_conditions_b(&p, &q02, None), Err(Error::Condition { .. })));
        let q01 = QModulus::unit_unchecked(0.1).unwrap();
        let prob = check_conditions_b(&p, &q01, None).unwrap();
        assert_eq!(prob.clause, SeparationClause::RealOrdering);
        assert!((prob.convergence_margin - 0.46).abs() < 1e-12);
        let pi = HGParams::new(c(1.0, 2.0), c(1.0, -1.0), c(2.0, 0.5));
        let q015 = QModulus::unit_unchecked(0.15).unwrap();
        assert_eq!(check_conditions_b(&pi, &q015, None).unwrap().clause, SeparationClause::ImagSeparation);
        let bad = HGParams::real(0.5, 3.1, 1.2);
        assert!(matches!(check_conditions_b(&bad, &q01, None), Err(Error::Condition { ref name, .. }) if name == "B1"));
    }

    #[test]
    fn equal_parameters_cancel() {
        let q = QModulus::unit_unchecked(0.45).unwrap();
        let a = c(2.2, 0.0);
        let s = c(0.0, 0.5);
        let ell = c(0.3f64.ln(), 0.0);
        let full = log_barnes_integrand(&HGParams::new(a, c(2.2, 0.0), a), &q, s, ell).unwrap();
        let reduced = gamma_tilde(a + s, &q).unwrap().log_value - gamma_tilde(s + 1.0, &q).unwrap().log_value
            + log_kernel_from_log(s, ell);
        assert!(crate::numerics::log_distance(full, reduced) < 1e-12);
    }
}
