//! Adaptive Gauss–Kronrod (G7/K15) quadrature on real intervals and on
//! straight segments of the complex plane, vector-valued so that several
//! integrands sharing expensive factors can be integrated on one node set.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of one 15-point panel.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Panel<const N: usize> {
    pub a: f64,
    pub b: f64,
    pub value: [Complex64; N],
    pub error: f64,
}

fn zero<const N: usize>() -> [Complex64; N] {
    [Complex64::new(0.0, 0.0); N]
}

fn max_norm<const N: usize>(v: &[Complex64; N]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.norm()))
}

/// One G7/K15 panel on `[a, b]` with QUADPACK-style error rescaling.
pub(crate) fn gk15<const N: usize, F>(f: &F, a: f64, b: f64) -> Result<Panel<N>>
where
    F: Fn(f64) -> Result<[Complex64; N]>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut kron = zero::<N>();
    let mut gauss = zero::<N>();
    let mut samples = [zero::<N>(); 15];
    let fc = f(center)?;
    samples[7] = fc;
    for k in 0..N {
        kron[k] = fc[k] * WGK[7];
        gauss[k] = fc[k] * WG[3];
    }
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        samples[j] = f1;
        samples[14 - j] = f2;
        for k in 0..N {
            kron[k] += (f1[k] + f2[k]) * WGK[j];
            if j % 2 == 1 {
                gauss[k] += (f1[k] + f2[k]) * WG[j / 2];
            }
        }
    }
    let mut error = 0.0_f64;
    for k in 0..N {
        let mean = kron[k] * 0.5;
        let mut resasc = WGK[7] * (fc[k] - mean).norm();
        for j in 0..7 {
            resasc += WGK[j] * ((samples[j][k] - mean).norm() + (samples[14 - j][k] - mean).norm());
        }
        resasc *= half.abs();
        let raw = ((kron[k] - gauss[k]) * half).norm();
        let est = if resasc > 0.0 && raw > 0.0 {
            resasc * (200.0 * raw / resasc).powf(1.5).min(1.0)
        } else {
            raw
        };
        let resabs = kron[k].norm() * half.abs();
        let floor = 50.0 * f64::EPSILON * resabs;
        error = error.max(est.max(floor));
    }
    for v in kron.iter_mut() {
        *v *= half;
    }
    for s in samples.iter() {
        if s.iter().any(|x| !x.is_finite()) {
            return Err(Error::Accuracy { best: Complex64::new(f64::NAN, 0.0), estimate: f64::INFINITY });
        }
    }
    Ok(Panel { a, b, value: kron, error })
}

struct Queued<const N: usize>(Panel<N>);

impl<const N: usize> PartialEq for Queued<N> {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}
impl<const N: usize> Eq for Queued<N> {}
impl<const N: usize> PartialOrd for Queued<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<const N: usize> Ord for Queued<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Outcome of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Integral<const N: usize> {
    pub value: [Complex64; N],
    pub error: f64,
    pub panels: usize,
    /// False when the subdivision budget ran out before the tolerance was met.
    pub converged: bool,
}

/// Globally adaptive bisection on `[a, b]`.
///
/// Stops when the summed error estimate is below
/// `max(abs_tol, rel_tol * |value|)` (componentwise maximum norm).
pub(crate) fn adaptive<const N: usize, F>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Integral<N>>
where
    F: Fn(f64) -> Result<[Complex64; N]>,
{
    let first = gk15(f, a, b)?;
    let mut total = first.value;
    let mut err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(Queued(first));
    let mut panels = 1;
    loop {
        let tol = abs_tol.max(rel_tol * max_norm(&total));
        if err <= tol {
            return Ok(Integral { value: total, error: err, panels, converged: true });
        }
        if panels >= max_panels {
            return Ok(Integral { value: total, error: err, panels, converged: false });
        }
        let Queued(worst) = heap.pop().expect("heap holds every live panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval exhausted at machine resolution
            return Ok(Integral { value: total, error: err, panels, converged: false });
        }
        let left = gk15(f, worst.a, mid)?;
        let right = gk15(f, mid, worst.b)?;
        for k in 0..N {
            total[k] += left.value[k] + right.value[k] - worst.value[k];
        }
        err += left.error + right.error - worst.error;
        heap.push(Queued(left));
        heap.push(Queued(right));
        panels += 1;
    }
}

/// Scalar convenience wrapper around [`adaptive`] for real-parameter integrands.
pub fn integrate_interval<F>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Complex64,
{
    let g = |t: f64| Ok([f(t)]);
    let r = adaptive(&g, a, b, abs_tol, rel_tol, 4000)?;
    if !r.converged {
        return Err(Error::Accuracy { best: r.value[0], estimate: r.error });
    }
    Ok((r.value[0], r.error))
}

/// Integral of `f(s) ds` along the straight segment from `p` to `q`.
pub(crate) fn segment<const N: usize, F>(
    f: &F,
    p: Complex64,
    q: Complex64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Integral<N>>
where
    F: Fn(Complex64) -> Result<[Complex64; N]> + Sync,
{
    let d = q - p;
    let g = |t: f64| -> Result<[Complex64; N]> {
        let mut v = f(p + d * t)?;
        for x in v.iter_mut() {
            *x *= d;
        }
        Ok(v)
    };
    adaptive(&g, 0.0, 1.0, abs_tol, rel_tol, max_panels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials_up_to_degree_22() {
        // K15 built on G7 is exact through degree 3n + 1 = 22.
        for deg in 0..=22u32 {
            let f = |x: f64| Ok([Complex64::new(x.powi(deg as i32), 0.0)]);
            let p = gk15::<1, _>(&f, -1.0, 1.0).unwrap();
            let exact = if deg % 2 == 0 { 2.0 / (deg as f64 + 1.0) } else { 0.0 };
            assert!((p.value[0].re - exact).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn gauss_part_exact_to_degree_13() {
        // G7 is exact through degree 13, so the G7/K15 gap opens at degree 14.
        let f13 = |x: f64| Ok([Complex64::new(x.powi(12), 0.0)]);
        let f14 = |x: f64| Ok([Complex64::new(x.powi(14), 0.0)]);
        let p13 = gk15::<1, _>(&f13, -1.0, 1.0).unwrap();
        let p14 = gk15::<1, _>(&f14, -1.0, 1.0).unwrap();
        assert!(p13.error < 1e-13);
        assert!(p14.error > 1e-10);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let (v, e) = integrate_interval(
            |x| Complex64::new(1.0 / (1e-4 + x * x), 0.0),
            -1.0,
            1.0,
            1e-12,
            1e-12,
        )
        .unwrap();
        let exact = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        assert!((v.re - exact).abs() < 1e-9 * exact, "{v} vs {exact} (err {e})");
    }

    #[test]
    fn segment_scales_by_direction() {
        let f = |s: Complex64| Ok([s]);
        let r = segment::<1, _>(&f, Complex64::new(0.0, 0.0), Complex64::new(0.0, 2.0), 1e-14, 1e-14, 50)
            .unwrap();
        // integral of s ds from 0 to 2i is (2i)^2/2 = -2
        assert!((r.value[0] - Complex64::new(-2.0, 0.0)).norm() < 1e-14);
    }
}
