//! Series oracles: Gauss's `F(a, b, c; z)`, the basic series
//! `phi(q^a, q^b, q^c; q, z)` for `0 < q < 1`, and the formal coefficients of
//! the same series when `|q| = 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qgamma::{q_bracket, QModulus, Regime};

/// The parameters `a, b, c` shared by all hypergeometric objects.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HGParams {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
}

impl HGParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self { a, b, c }
    }

    pub fn real(a: f64, b: f64, c: f64) -> Self {
        Self::new(a.into(), b.into(), c.into())
    }

    fn check_finite(&self) -> Result<()> {
        if [self.a, self.b, self.c].iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::Parameter("non-finite hypergeometric parameter".into()))
        }
    }
}

/// Truncation control for the series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    pub max_terms: usize,
    pub tail_tol: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self { max_terms: 100_000, tail_tol: 1e-17 }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms < 1 || !(self.tail_tol > 0.0) {
            return Err(Error::Parameter("series config needs max_terms >= 1 and tail_tol > 0".into()));
        }
        Ok(())
    }
}

/// A partial sum and whether the tail criterion was met.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSum {
    pub value: Complex64,
    pub terms: usize,
    /// False when `max_terms` ran out first; the value is then only a best effort.
    pub converged: bool,
}

/// Sums `sum_k t_k` with `t_0 = 1` and `t_{k+1} = ratio(k) t_k`, stopping
/// after three consecutive terms below `tail_tol * |sum|`.
fn sum_by_ratio<F>(ratio: F, cfg: &SeriesConfig) -> Result<SeriesSum>
where
    F: Fn(usize) -> Result<Complex64>,
{
    cfg.validate()?;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..cfg.max_terms.saturating_sub(1) {
        term *= ratio(k)?;
        sum += term;
        if term.norm() < cfg.tail_tol * sum.norm() {
            small += 1;
            if small == 3 {
                return Ok(SeriesSum { value: sum, terms: k + 2, converged: true });
            }
        } else {
            small = 0;
        }
    }
    Ok(SeriesSum { value: sum, terms: cfg.max_terms, converged: false })
}

fn check_disk(z: Complex64) -> Result<()> {
    if !z.is_finite() || z.norm() >= 1.0 {
        return Err(Error::Domain(format!("series needs |z| < 1, got |z| = {}", z.norm())));
    }
    Ok(())
}

/// `F(a, b, c; z) = sum_k (a)_k (b)_k / ((c)_k k!) z^k` for `|z| < 1` (rising factorials).
pub fn hypergeometric_f(p: &HGParams, z: Complex64, cfg: &SeriesConfig) -> Result<SeriesSum> {
    p.check_finite()?;
    check_disk(z)?;
    if p.c.im == 0.0 && p.c.re <= 0.0 && p.c.re == p.c.re.round() {
        return Err(Error::Parameter(format!("c = {} is a non-positive integer", p.c)));
    }
    sum_by_ratio(
        |k| {
            let k = k as f64;
            Ok((p.a + k) * (p.b + k) / ((p.c + k) * (k + 1.0)) * z)
        },
        cfg,
    )
}

/// Ratio `c_{k+1} / c_k = [a+k][b+k] / ([c+k][k+1])` of the basic series
/// coefficients (without the power of `z`).
pub fn basic_coefficient_ratio(p: &HGParams, q: &QModulus, k: usize) -> Result<Complex64> {
    let k = k as f64;
    let den = q_bracket(p.c + k, q)? * q_bracket(Complex64::new(k + 1.0, 0.0), q)?;
    if den.norm() < 1e-12 {
        return Err(Error::Degenerate(format!("bracket [c + {k}] or [{}] vanishes", k + 1.0)));
    }
    Ok(q_bracket(p.a + k, q)? * q_bracket(p.b + k, q)? / den)
}

/// `phi(q^a, q^b, q^c; q, z) = sum_k (q^a;q)_k (q^b;q)_k / ((q^c;q)_k (q;q)_k) z^k` for `0 < q < 1`.
pub fn basic_phi(p: &HGParams, q: &QModulus, z: Complex64, cfg: &SeriesConfig) -> Result<SeriesSum> {
    p.check_finite()?;
    if q.regime() != Regime::Classical {
        return Err(Error::Parameter("basic_phi needs 0 < q < 1; use formal_phi_coefficients on |q| = 1".into()));
    }
    check_disk(z)?;
    sum_by_ratio(
        |k| match basic_coefficient_ratio(p, q, k) {
            Ok(r) => Ok(r * z),
            Err(Error::Degenerate(d)) => Err(Error::Parameter(format!("(q^c; q)_k has a zero factor: {d}"))),
            Err(e) => Err(e),
        },
        cfg,
    )
}

/// The first `n` coefficients of the basic series, in any regime.
///
/// For `|q| = 1` the series diverges and only these formal coefficients are
/// meaningful.
pub fn formal_phi_coefficients(p: &HGParams, q: &QModulus, n: usize) -> Result<Vec<Complex64>> {
    p.check_finite()?;
    let mut out = Vec::with_capacity(n);
    let mut cur = Complex64::new(1.0, 0.0);
    for k in 0..n {
        out.push(cur);
        if k + 1 < n {
            cur *= basic_coefficient_ratio(p, q, k)?;
        }
    }
    Ok(out)
}

/// Evaluates a truncated series `sum_k coeffs[k] z^k` by Horner's rule.
pub fn eval_polynomial(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}
