//! Pole families, pole-separating polyline contours and contour quadrature.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::{segment, Integral};
use crate::error::{Error, Result};

/// Admissible range of one lattice index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexRange {
    /// `n <= 0`
    NonPositive,
    /// `n > 0`
    Positive,
    /// `n >= 0`
    NonNegative,
    /// every integer
    All,
}

impl IndexRange {
    pub fn contains(self, n: i64) -> bool {
        match self {
            IndexRange::NonPositive => n <= 0,
            IndexRange::Positive => n > 0,
            IndexRange::NonNegative => n >= 0,
            IndexRange::All => true,
        }
    }

    fn clamp(self, lo: i64, hi: i64) -> (i64, i64) {
        match self {
            IndexRange::NonPositive => (lo, hi.min(0)),
            IndexRange::Positive => (lo.max(1), hi),
            IndexRange::NonNegative => (lo.max(0), hi),
            IndexRange::All => (lo, hi),
        }
    }

    /// Sign of admissible indices, or `None` when both signs occur.
    fn direction(self) -> Option<f64> {
        match self {
            IndexRange::NonPositive => Some(-1.0),
            IndexRange::Positive | IndexRange::NonNegative => Some(1.0),
            IndexRange::All => None,
        }
    }
}

/// A set of poles `base + sum_j n_j g_j` with per-index sign constraints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleFamily {
    pub base: Complex64,
    pub generators: Vec<Complex64>,
    pub constraints: Vec<IndexRange>,
    pub label: String,
}

const MAX_ENUMERATED: usize = 2_000_000;

impl PoleFamily {
    pub fn new(
        base: Complex64,
        generators: Vec<Complex64>,
        constraints: Vec<IndexRange>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if generators.is_empty() || generators.len() > 2 || generators.len() != constraints.len() {
            return Err(Error::Parameter("a pole family needs one or two generators, each with a constraint".into()));
        }
        if generators.iter().any(|g| g.norm() < 1e-12 || !g.is_finite()) || !base.is_finite() {
            return Err(Error::Parameter("pole family generators must be finite and non-zero".into()));
        }
        let fam = Self { base, generators, constraints, label: label.into() };
        if fam.generators.len() == 2 && fam.collinear() {
            let d0 = fam.constraints[0].direction();
            let d1 = fam.constraints[1].direction();
            let aligned = match (d0, d1) {
                (Some(s0), Some(s1)) => {
                    let v0 = fam.generators[0] * s0;
                    let v1 = fam.generators[1] * s1;
                    (v0 * v1.conj()).re > 0.0
                }
                _ => false,
            };
            if !aligned {
                return Err(Error::Parameter(format!(
                    "family {}: collinear generators with opposing index ranges are not locally finite",
                    fam.label
                )));
            }
        }
        Ok(fam)
    }

    /// `base + n g` for `n` in `range`.
    pub fn ray(base: Complex64, g: Complex64, range: IndexRange, label: impl Into<String>) -> Result<Self> {
        Self::new(base, vec![g], vec![range], label)
    }

    /// `base + n1 g1 + n2 g2` with both indices in `range`.
    pub fn lattice(
        base: Complex64,
        g1: Complex64,
        g2: Complex64,
        range: IndexRange,
        label: impl Into<String>,
    ) -> Result<Self> {
        Self::new(base, vec![g1, g2], vec![range, range], label)
    }

    fn collinear(&self) -> bool {
        let (g0, g1) = (self.generators[0], self.generators[1]);
        (g0.conj() * g1).im.abs() < 1e-12 * g0.norm() * g1.norm()
    }

    /// All members inside the closed box `[re_min, re_max] x [im_min, im_max]`.
    pub fn points_in(&self, re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Vec<Complex64> {
        let corners = [
            Complex64::new(re_min, im_min),
            Complex64::new(re_min, im_max),
            Complex64::new(re_max, im_min),
            Complex64::new(re_max, im_max),
        ];
        let inside = |p: Complex64| {
            p.re >= re_min && p.re <= re_max && p.im >= im_min && p.im <= im_max
        };
        let reach = corners.iter().map(|c| (c - self.base).norm()).fold(0.0, f64::max);
        let mut out = Vec::new();
        match self.generators.len() {
            1 => {
                let g = self.generators[0];
                let m = (reach / g.norm()).ceil() as i64 + 1;
                let (lo, hi) = self.constraints[0].clamp(-m, m);
                for n in lo..=hi {
                    let p = self.base + g * n as f64;
                    if inside(p) {
                        out.push(p);
                    }
                }
            }
            _ => {
                let (g0, g1) = (self.generators[0], self.generators[1]);
                let ((lo0, hi0), (lo1, hi1)) = if self.collinear() {
                    let m0 = (reach / g0.norm()).ceil() as i64 + 1;
                    let m1 = (reach / g1.norm()).ceil() as i64 + 1;
                    ((-m0, m0), (-m1, m1))
                } else {
                    // coordinates of the box corners in the (g0, g1) basis
                    let det = g0.re * g1.im - g0.im * g1.re;
                    let mut b0 = (f64::INFINITY, f64::NEG_INFINITY);
                    let mut b1 = (f64::INFINITY, f64::NEG_INFINITY);
                    for c in corners {
                        let d = c - self.base;
                        let n0 = (d.re * g1.im - d.im * g1.re) / det;
                        let n1 = (g0.re * d.im - g0.im * d.re) / det;
                        b0 = (b0.0.min(n0), b0.1.max(n0));
                        b1 = (b1.0.min(n1), b1.1.max(n1));
                    }
                    (
                        (b0.0.floor() as i64 - 1, b0.1.ceil() as i64 + 1),
                        (b1.0.floor() as i64 - 1, b1.1.ceil() as i64 + 1),
                    )
                };
                let (lo0, hi0) = self.constraints[0].clamp(lo0, hi0);
                let (lo1, hi1) = self.constraints[1].clamp(lo1, hi1);
                'outer: for n0 in lo0..=hi0 {
                    for n1 in lo1..=hi1 {
                        let p = self.base + g0 * n0 as f64 + g1 * n1 as f64;
                        if inside(p) {
                            out.push(p);
                            if out.len() >= MAX_ENUMERATED {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Members within `radius` of `center`, nearest first.
    pub fn nearest(&self, center: Complex64, radius: f64) -> Vec<Complex64> {
        let mut pts: Vec<Complex64> = self
            .points_in(center.re - radius, center.re + radius, center.im - radius, center.im + radius)
            .into_iter()
            .filter(|p| (p - center).norm() <= radius)
            .collect();
        pts.sort_by(|a, b| (a - center).norm().total_cmp(&(b - center).norm()));
        pts
    }

    /// True when `p` is a member (to within `tol`).
    pub fn contains(&self, p: Complex64, tol: f64) -> bool {
        !self.nearest(p, tol.max(1e-15)).is_empty()
    }
}

/// A path from `-i inf` to `+i inf`: a vertical ray up to `vertices[0]`,
/// the polyline through `vertices`, and a vertical ray from the last vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub vertices: Vec<Complex64>,
    pub asymptotic_abscissa_bottom: f64,
    pub asymptotic_abscissa_top: f64,
    pub clearance: f64,
}

impl Contour {
    /// The vertical line `Re s = x`.
    pub fn vertical(x: f64, clearance: f64) -> Self {
        Self {
            vertices: vec![Complex64::new(x, -1.0), Complex64::new(x, 1.0)],
            asymptotic_abscissa_bottom: x,
            asymptotic_abscissa_top: x,
            clearance,
        }
    }

    pub fn is_straight(&self) -> bool {
        let x = self.asymptotic_abscissa_bottom;
        self.vertices.iter().all(|v| (v.re - x).abs() < 1e-15)
    }

    /// Finite pieces as `(start, end)` pairs.
    pub fn segments(&self) -> Vec<(Complex64, Complex64)> {
        self.vertices.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Euclidean distance from `p` to the full path including both rays.
    pub fn distance_to(&self, p: Complex64) -> f64 {
        let first = self.vertices[0];
        let last = *self.vertices.last().expect("contour has vertices");
        let mut d = f64::INFINITY;
        d = d.min(if p.im <= first.im { (p.re - first.re).abs() } else { (p - first).norm() });
        d = d.min(if p.im >= last.im { (p.re - last.re).abs() } else { (p - last).norm() });
        for (a, b) in self.segments() {
            d = d.min(point_segment_distance(p, a, b));
        }
        d
    }

    /// True when `p` lies to the left of the path (odd crossing count of the
    /// horizontal ray from `p` towards `+inf`).
    pub fn is_left_of(&self, p: Complex64) -> bool {
        let first = self.vertices[0];
        let last = *self.vertices.last().expect("contour has vertices");
        let mut pieces = vec![(Complex64::new(first.re, f64::NEG_INFINITY), first)];
        pieces.extend(self.segments());
        pieces.push((last, Complex64::new(last.re, f64::INFINITY)));
        let mut crossings = 0;
        for (a, b) in pieces {
            if (a.im <= p.im) != (b.im <= p.im) {
                let x = if a.re == b.re {
                    a.re
                } else {
                    a.re + (p.im - a.im) * (b.re - a.re) / (b.im - a.im)
                };
                if x > p.re {
                    crossings += 1;
                }
            }
        }
        crossings % 2 == 1
    }

    /// Copy translated horizontally by `dx`.
    pub fn shifted(&self, dx: f64) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v + dx).collect(),
            asymptotic_abscissa_bottom: self.asymptotic_abscissa_bottom + dx,
            asymptotic_abscissa_top: self.asymptotic_abscissa_top + dx,
            clearance: self.clearance,
        }
    }
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + d * t)).norm()
}

/// Full description of a separation problem.
#[derive(Debug, Clone)]
pub struct ContourRequest<'a> {
    /// Families that must lie strictly to the left of the path.
    pub right_of: &'a [PoleFamily],
    /// Families that must lie strictly to the right of the path.
    pub left_of: &'a [PoleFamily],
    /// Removable singularities: either side is fine but they need clearance.
    pub avoid: Vec<Complex64>,
    pub clearance: f64,
    pub height: f64,
    /// Horizontal search window for the vertical pieces.
    pub re_window: Option<(f64, f64)>,
    /// Abscissa to use whenever it is admissible.
    pub preferred_abscissa: Option<f64>,
}

impl<'a> ContourRequest<'a> {
    pub fn new(right_of: &'a [PoleFamily], left_of: &'a [PoleFamily], clearance: f64, height: f64) -> Self {
        Self {
            right_of,
            left_of,
            avoid: Vec::new(),
            clearance,
            height,
            re_window: None,
            preferred_abscissa: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Side {
    Right,
    Left,
    Avoid,
}

/// Open intervals of admissible abscissas.
#[derive(Clone, Debug)]
struct IntervalSet(Vec<(f64, f64)>);

impl IntervalSet {
    fn restrict_above(&mut self, lo: f64) {
        self.0 = self.0.iter().filter_map(|&(a, b)| {
            let a = a.max(lo);
            (a < b).then_some((a, b))
        }).collect();
    }
    fn restrict_below(&mut self, hi: f64) {
        self.0 = self.0.iter().filter_map(|&(a, b)| {
            let b = b.min(hi);
            (a < b).then_some((a, b))
        }).collect();
    }
    fn remove(&mut self, lo: f64, hi: f64) {
        let mut out = Vec::new();
        for &(a, b) in &self.0 {
            if hi <= a || lo >= b {
                out.push((a, b));
                continue;
            }
            if a < lo {
                out.push((a, lo));
            }
            if hi < b {
                out.push((hi, b));
            }
        }
        self.0 = out;
    }
    fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for &(a, b) in &self.0 {
            for &(c, d) in &other.0 {
                let lo = a.max(c);
                let hi = b.min(d);
                if lo < hi {
                    out.push((lo, hi));
                }
            }
        }
        IntervalSet(out)
    }
    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    fn contains(&self, x: f64) -> bool {
        self.0.iter().any(|&(a, b)| x > a && x < b)
    }

    /// Representative abscissa. Intervals that reach the search window edge
    /// are treated as unbounded: the point sits a fixed offset inside the
    /// finite end rather than at the window midpoint.
    fn choose(&self, window: (f64, f64), preferred: Option<f64>) -> f64 {
        const OFFSET: f64 = 0.5;
        let rep = |&(a, b): &(f64, f64)| -> (f64, f64) {
            let lo_open = a <= window.0;
            let hi_open = b >= window.1;
            match (lo_open, hi_open) {
                (false, false) => (0.5 * (a + b), b - a),
                (false, true) => ((a + OFFSET).min(0.5 * (a + b)), f64::INFINITY),
                (true, false) => ((b - OFFSET).max(0.5 * (a + b)), f64::INFINITY),
                (true, true) => (preferred.unwrap_or(0.0).clamp(a, b), f64::INFINITY),
            }
        };
        if let Some(x) = preferred {
            if self.contains(x) {
                return x;
            }
            return self
                .0
                .iter()
                .map(rep)
                .min_by(|p, q| (p.0 - x).abs().total_cmp(&(q.0 - x).abs()))
                .map(|p| p.0)
                .expect("non-empty interval set");
        }
        let mut best: Option<(f64, f64)> = None;
        for iv in &self.0 {
            let (x, len) = rep(iv);
            best = match best {
                None => Some((x, len)),
                Some((bx, blen)) => {
                    let longer = len > blen * (1.0 + 1e-9) || (len.is_infinite() && !blen.is_infinite());
                    let tie = (len - blen).abs() <= 1e-9 * blen.max(1.0) || (len.is_infinite() && blen.is_infinite());
                    if longer || (tie && x.abs() < bx.abs()) {
                        Some((x, len))
                    } else {
                        Some((bx, blen))
                    }
                }
            };
        }
        best.expect("non-empty interval set").0
    }
}

struct Row {
    im_lo: f64,
    im_hi: f64,
    poles: Vec<(Complex64, Side)>,
}

fn default_window(families: &[&PoleFamily], avoid: &[Complex64]) -> (f64, f64) {
    let mut w: f64 = 0.0;
    for f in families {
        w = w.max(f.base.re.abs());
    }
    for a in avoid {
        w = w.max(a.re.abs());
    }
    (-(w + 10.0), w + 10.0)
}

/// Build a path separating `right_of` (kept on the left) from `left_of`
/// (kept on the right) with the requested clearance.
pub fn build_separating_contour(
    right_of: &[PoleFamily],
    left_of: &[PoleFamily],
    clearance: f64,
    height: f64,
) -> Result<Contour> {
    build_contour(&ContourRequest::new(right_of, left_of, clearance, height))
}

/// Construct a separating contour.
///
/// Poles are grouped into horizontal rows. A single vertical line is used
/// when one abscissa clears every row; otherwise the path is a staircase of
/// vertical pieces joined by horizontal steps placed midway between rows.
pub fn build_contour(req: &ContourRequest<'_>) -> Result<Contour> {
    let c = req.clearance;
    if !(c > 0.0) || !(req.height > 0.0) {
        return Err(Error::Parameter("clearance and height must be positive".into()));
    }
    let all: Vec<&PoleFamily> = req.right_of.iter().chain(req.left_of.iter()).collect();
    let window = req.re_window.unwrap_or_else(|| default_window(&all, &req.avoid));
    let im_lim = req.height + 1.0;
    let mut poles: Vec<(Complex64, Side)> = Vec::new();
    let scan = |f: &PoleFamily| f.points_in(window.0 - 1.0, window.1 + 1.0, -im_lim, im_lim);
    for f in req.right_of {
        poles.extend(scan(f).into_iter().map(|p| (p, Side::Right)));
    }
    for f in req.left_of {
        poles.extend(scan(f).into_iter().map(|p| (p, Side::Left)));
    }
    for &a in &req.avoid {
        if a.im.abs() <= im_lim && a.re >= window.0 - 1.0 && a.re <= window.1 + 1.0 {
            poles.push((a, Side::Avoid));
        }
    }
    poles.sort_by(|a, b| a.0.im.total_cmp(&b.0.im));

    let mut rows: Vec<Row> = Vec::new();
    for (p, side) in poles {
        match rows.last_mut() {
            Some(r) if p.im - r.im_hi < 2.0 * c => {
                r.im_hi = r.im_hi.max(p.im);
                r.poles.push((p, side));
            }
            _ => rows.push(Row { im_lo: p.im, im_hi: p.im, poles: vec![(p, side)] }),
        }
    }

    let mut feasible = Vec::with_capacity(rows.len());
    for row in &rows {
        let mut set = IntervalSet(vec![window]);
        for &(p, side) in &row.poles {
            match side {
                Side::Right => set.restrict_above(p.re + c),
                Side::Left => set.restrict_below(p.re - c),
                Side::Avoid => set.remove(p.re - c, p.re + c),
            }
        }
        if set.is_empty() {
            let mut conflicts = Vec::new();
            for &(r, sr) in &row.poles {
                for &(l, sl) in &row.poles {
                    if sr == Side::Right && sl == Side::Left && r.re + 2.0 * c > l.re {
                        conflicts.push((r, l));
                    }
                }
            }
            if conflicts.is_empty() {
                let pts: Vec<Complex64> = row.poles.iter().map(|p| p.0).collect();
                for w in pts.windows(2) {
                    conflicts.push((w[0], w[1]));
                }
            }
            conflicts.sort_by(|a, b| (a.0 - a.1).norm().total_cmp(&(b.0 - b.1).norm()));
            conflicts.truncate(16);
            return Err(Error::Contour {
                reason: format!(
                    "no admissible abscissa in the row near Im s = {:.6} with clearance {c}",
                    row.im_lo
                ),
                conflicts,
            });
        }
        feasible.push(set);
    }

    // Greedy maximal runs of rows sharing one abscissa, bottom to top.
    let mut runs: Vec<(usize, usize, IntervalSet)> = Vec::new();
    for (k, set) in feasible.iter().enumerate() {
        if let Some((_, end, cur)) = runs.last_mut() {
            let inter = cur.intersect(set);
            if !inter.is_empty() {
                *end = k;
                *cur = inter;
                continue;
            }
        }
        runs.push((k, k, set.clone()));
    }

    let contour = if runs.len() <= 1 {
        let x = match runs.first() {
            Some((_, _, set)) => set.choose(window, req.preferred_abscissa),
            None => req.preferred_abscissa.unwrap_or(0.0),
        };
        let lo = rows.first().map_or(-1.0, |r| r.im_lo - 1.0);
        let hi = rows.last().map_or(1.0, |r| r.im_hi + 1.0);
        Contour {
            vertices: vec![Complex64::new(x, lo.min(-1.0)), Complex64::new(x, hi.max(1.0))],
            asymptotic_abscissa_bottom: x,
            asymptotic_abscissa_top: x,
            clearance: c,
        }
    } else {
        let xs: Vec<f64> = runs.iter().map(|(_, _, set)| set.choose(window, req.preferred_abscissa)).collect();
        let mut vertices = Vec::new();
        let first_row = &rows[runs[0].0];
        vertices.push(Complex64::new(xs[0], first_row.im_lo - 1.0));
        for k in 0..runs.len() - 1 {
            let below = &rows[runs[k].1];
            let above = &rows[runs[k + 1].0];
            let y = 0.5 * (below.im_hi + above.im_lo);
            vertices.push(Complex64::new(xs[k], y));
            vertices.push(Complex64::new(xs[k + 1], y));
        }
        let last_row = &rows[runs.last().expect("runs").1];
        vertices.push(Complex64::new(*xs.last().expect("xs"), last_row.im_hi + 1.0));
        Contour {
            vertices,
            asymptotic_abscissa_bottom: xs[0],
            asymptotic_abscissa_top: *xs.last().expect("xs"),
            clearance: c,
        }
    };
    verify_contour(&contour, req)?;
    Ok(contour)
}

/// Independent check of the clearance and side conditions for every pole
/// in the scanned strip.
pub fn verify_contour(contour: &Contour, req: &ContourRequest<'_>) -> Result<()> {
    let all: Vec<&PoleFamily> = req.right_of.iter().chain(req.left_of.iter()).collect();
    let window = req.re_window.unwrap_or_else(|| default_window(&all, &req.avoid));
    let im_lim = req.height + 1.0;
    let c = req.clearance * (1.0 - 1e-9);
    let mut bad = Vec::new();
    let mut check = |p: Complex64, want_left: Option<bool>| {
        let d = contour.distance_to(p);
        let side_ok = want_left.is_none_or(|w| contour.is_left_of(p) == w);
        if d < c || !side_ok {
            bad.push((p, p));
        }
    };
    for f in req.right_of {
        for p in f.points_in(window.0 - 1.0, window.1 + 1.0, -im_lim, im_lim) {
            check(p, Some(true));
        }
    }
    for f in req.left_of {
        for p in f.points_in(window.0 - 1.0, window.1 + 1.0, -im_lim, im_lim) {
            check(p, Some(false));
        }
    }
    for &a in &req.avoid {
        check(a, None);
    }
    if bad.is_empty() {
        Ok(())
    } else {
        bad.truncate(16);
        Err(Error::Contour { reason: "constructed path failed its clearance/side verification".into(), conflicts: bad })
    }
}

/// Truncation and tolerance settings for contour quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Initial truncation of `|Im s|` for the vertical rays.
    pub max_height: f64,
    /// Number of height doublings allowed per ray.
    pub max_refinements: u32,
    /// Nodes per panel; only the 15-point Kronrod rule is implemented.
    pub panel_order: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 1e-11, max_height: 20.0, max_refinements: 6, panel_order: 15 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_height > 0.0) {
            return Err(Error::Parameter("quadrature tolerances and height must be positive".into()));
        }
        if self.panel_order != 15 {
            return Err(Error::Parameter(format!(
                "panel order {} unsupported (only 15)",
                self.panel_order
            )));
        }
        Ok(())
    }

    /// Same settings with both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self { abs_tol: self.abs_tol * factor, rel_tol: self.rel_tol * factor, ..*self }
    }
}

const PANELS_PER_PIECE: usize = 4000;

fn max_norm<const N: usize>(v: &[Complex64; N]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.norm()))
}

fn add<const N: usize>(acc: &mut [Complex64; N], v: &[Complex64; N]) {
    for k in 0..N {
        acc[k] += v[k];
    }
}

fn check_piece<const N: usize>(r: Result<Integral<N>>) -> Result<Integral<N>> {
    let r = r?;
    if !r.converged {
        return Err(Error::Accuracy { best: r.value[0], estimate: r.error });
    }
    Ok(r)
}

/// Integrate one vertical ray starting at `start` in direction `sign` (+1 up).
fn ray<const N: usize, F>(
    f: &F,
    start: Complex64,
    sign: f64,
    cfg: &QuadratureConfig,
) -> Result<([Complex64; N], f64)>
where
    F: Fn(Complex64) -> Result<[Complex64; N]> + Sync,
{
    let piece_tol = cfg.abs_tol / 8.0;
    let mut h = cfg.max_height.max(sign * start.im + 1.0);
    let top = Complex64::new(start.re, sign * h);
    let first = check_piece(segment(f, start, top, piece_tol, cfg.rel_tol, PANELS_PER_PIECE))?;
    let mut total = first.value;
    let mut err = first.error;
    for _ in 0..cfg.max_refinements {
        let a = Complex64::new(start.re, sign * h);
        let b = Complex64::new(start.re, sign * 2.0 * h);
        let piece = check_piece(segment(f, a, b, piece_tol, cfg.rel_tol, PANELS_PER_PIECE))?;
        add(&mut total, &piece.value);
        err += piece.error;
        h *= 2.0;
        let tail = max_norm(&piece.value);
        let target = cfg.abs_tol.max(cfg.rel_tol * max_norm(&total)) / 10.0;
        if tail < target {
            return Ok((total, err + tail));
        }
    }
    Err(Error::Divergence { value: total[0], tail: err })
}

/// Vector-valued contour quadrature: the components share every node.
pub fn contour_integral_multi<const N: usize, F>(
    f: F,
    contour: &Contour,
    cfg: &QuadratureConfig,
) -> Result<([Complex64; N], f64)>
where
    F: Fn(Complex64) -> Result<[Complex64; N]> + Sync,
{
    cfg.validate()?;
    let first = contour.vertices[0];
    let last = *contour.vertices.last().expect("contour has vertices");
    let segs = contour.segments();
    let piece_tol = cfg.abs_tol / 8.0;
    let (finite, (bottom, top)) = rayon::join(
        || -> Result<Vec<Integral<N>>> {
            segs.par_iter()
                .map(|&(a, b)| check_piece(segment(&f, a, b, piece_tol, cfg.rel_tol, PANELS_PER_PIECE)))
                .collect()
        },
        || rayon::join(|| ray(&f, first, -1.0, cfg), || ray(&f, last, 1.0, cfg)),
    );
    let mut total = [Complex64::new(0.0, 0.0); N];
    let mut err = 0.0;
    for piece in finite? {
        add(&mut total, &piece.value);
        err += piece.error;
    }
    // the bottom ray was integrated downwards
    let (bv, be) = bottom?;
    for k in 0..N {
        total[k] -= bv[k];
    }
    err += be;
    let (tv, te) = top?;
    add(&mut total, &tv);
    err += te;
    Ok((total, err))
}

/// `integral of f(s) ds` along the contour, with an error estimate.
pub fn contour_integral<F>(f: F, contour: &Contour, cfg: &QuadratureConfig) -> Result<(Complex64, f64)>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let (v, e) = contour_integral_multi(|s| Ok([f(s)?]), contour, cfg)?;
    Ok((v[0], e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lattice_enumeration_counts() {
        let fam = PoleFamily::lattice(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), IndexRange::NonNegative, "grid").unwrap();
        assert_eq!(fam.points_in(-0.5, 2.5, -0.5, 1.5).len(), 6);
        let real = PoleFamily::lattice(c(-2.0, 0.0), c(1.0, 0.0), c(1.6, 0.0), IndexRange::NonPositive, "real").unwrap();
        let pts = real.points_in(-5.0, 0.0, -1.0, 1.0);
        // -2, -3, -4, -5, -3.6, -4.6, -5.2 (the last is out) ...
        assert!(pts.iter().all(|p| p.re <= -2.0 + 1e-12 && p.re >= -5.0));
        assert!(pts.contains(&c(-3.6, 0.0)));
        assert!(PoleFamily::lattice(c(0.0, 0.0), c(1.0, 0.0), c(-1.3, 0.0), IndexRange::NonNegative, "bad").is_err());
    }

    #[test]
    fn nearest_is_sorted() {
        let fam = PoleFamily::ray(c(0.0, 0.0), c(1.0, 0.0), IndexRange::All, "z").unwrap();
        let pts = fam.nearest(c(2.3, 0.0), 1.5);
        assert_eq!(pts, vec![c(2.0, 0.0), c(3.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn vertical_line_between_rays() {
        let right = [PoleFamily::ray(c(-2.0, 0.0), c(1.0, 0.0), IndexRange::NonPositive, "r").unwrap()];
        let left = [PoleFamily::ray(c(0.0, 0.0), c(1.0, 0.0), IndexRange::NonNegative, "l").unwrap()];
        let k = build_separating_contour(&right, &left, 0.3, 20.0).unwrap();
        assert!(k.is_straight());
        let x = k.asymptotic_abscissa_bottom;
        assert!(x > -1.7 && x < -0.3, "{x}");
    }

    #[test]
    fn staircase_between_offset_poles() {
        let right = [PoleFamily::ray(c(-1.0, 0.5), c(1.0, 0.0), IndexRange::NonPositive, "r").unwrap()];
        let left = [PoleFamily::ray(c(-1.0, -0.5), c(1.0, 0.0), IndexRange::NonNegative, "l").unwrap()];
        let k = build_separating_contour(&right, &left, 0.2, 10.0).unwrap();
        assert!(!k.is_straight());
        assert!(k.is_left_of(c(-1.0, 0.5)));
        assert!(!k.is_left_of(c(-1.0, -0.5)));
        assert!(k.distance_to(c(-1.0, 0.5)) >= 0.2);
        assert!(k.distance_to(c(-1.0, -0.5)) >= 0.2);
        // the step crosses the real axis between the two poles
        assert!(k.segments().iter().any(|(a, b)| a.im == 0.0 && b.im == 0.0));
    }

    #[test]
    fn inseparable_families_report_conflicts() {
        let right = [PoleFamily::ray(c(0.5, 0.0), c(1.0, 0.0), IndexRange::NonPositive, "r").unwrap()];
        let left = [PoleFamily::ray(c(0.0, 0.0), c(1.0, 0.0), IndexRange::NonNegative, "l").unwrap()];
        match build_separating_contour(&right, &left, 0.3, 10.0) {
            Err(Error::Contour { conflicts, .. }) => {
                assert!(conflicts.iter().any(|&(r, l)| r == c(0.5, 0.0) && l == c(0.0, 0.0)));
            }
            other => panic!("expected contour failure, got {other:?}"),
        }
    }

    #[test]
    fn avoid_points_get_clearance() {
        let right = [PoleFamily::ray(c(-2.3, 0.0), c(1.0, 0.0), IndexRange::NonPositive, "r").unwrap()];
        let left = [PoleFamily::ray(c(0.0, 0.0), c(1.0, 0.0), IndexRange::NonNegative, "l").unwrap()];
        let mut req = ContourRequest::new(&right, &left, 0.05, 10.0);
        req.avoid = vec![c(-1.0, 0.0), c(-2.0, 0.0)];
        let k = build_contour(&req).unwrap();
        assert!((k.asymptotic_abscissa_bottom + 0.5).abs() < 1e-12);
        req.preferred_abscissa = Some(-1.02);
        let k = build_contour(&req).unwrap();
        assert!(k.distance_to(c(-1.0, 0.0)) >= 0.05);
    }

    #[test]
    fn gaussian_on_imaginary_axis() {
        // exp(s^2) decays along the imaginary axis; the integral is i sqrt(pi).
        let k = Contour::vertical(0.0, 0.1);
        let (v, e) = contour_integral(|s| Ok((s * s).exp()), &k, &QuadratureConfig::default()).unwrap();
        let exact = c(0.0, std::f64::consts::PI.sqrt());
        assert!((v - exact).norm() < 1e-12, "{v} err {e}");
    }

    #[test]
    fn non_decaying_tail_is_reported() {
        let k = Contour::vertical(0.0, 0.1);
        let cfg = QuadratureConfig { max_refinements: 3, ..Default::default() };
        let r = contour_integral(|s| Ok(1.0 / (s + 2.0)), &k, &cfg);
        assert!(matches!(r, Err(Error::Divergence { .. })), "{r:?}");
    }
}
