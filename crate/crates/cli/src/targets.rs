//! Parameter bindings and single-point evaluation of each target.

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use qhyper::barnes::{capital_phi_orbit, build_barnes_contour, check_conditions_b, watson_integral, DEFAULT_CLEARANCE};
use qhyper::doublesine::{log_s2, OmegaPair};
use qhyper::euler::{capital_psi, check_conditions_e, euler_jackson_phi};
use qhyper::numerics::{QuadratureConfig, SectorSpec};
use qhyper::qdiff::{lplus_from_samples, lq_from_samples};
use qhyper::qgamma::{gamma_tilde, q_bracket, QModulus};
use qhyper::qseries::{basic_phi, hypergeometric_f, HGParams, SeriesConfig};
use qhyper::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    S2,
    Qgamma,
    PhiSeries,
    PhiBasic,
    CapitalPhi,
    CapitalPsi,
    Watson,
    EulerJackson,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::S2 => "s2",
            Target::Qgamma => "qgamma",
            Target::PhiSeries => "phi-series",
            Target::PhiBasic => "phi-basic",
            Target::CapitalPhi => "capital-phi",
            Target::CapitalPsi => "capital-psi",
            Target::Watson => "watson",
            Target::EulerJackson => "euler-jackson",
        }
    }
}

/// Scalar inputs. Complex values come as `--name-re` / `--name-im` pairs.
#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long = "a-re", allow_negative_numbers = true)]
    pub a_re: Option<f64>,
    #[arg(long = "a-im", allow_negative_numbers = true)]
    pub a_im: Option<f64>,
    #[arg(long = "b-re", allow_negative_numbers = true)]
    pub b_re: Option<f64>,
    #[arg(long = "b-im", allow_negative_numbers = true)]
    pub b_im: Option<f64>,
    #[arg(long = "c-re", allow_negative_numbers = true)]
    pub c_re: Option<f64>,
    #[arg(long = "c-im", allow_negative_numbers = true)]
    pub c_im: Option<f64>,
    #[arg(long = "z-re", allow_negative_numbers = true)]
    pub z_re: Option<f64>,
    #[arg(long = "z-im", allow_negative_numbers = true)]
    pub z_im: Option<f64>,
    #[arg(long = "x-re", allow_negative_numbers = true)]
    pub x_re: Option<f64>,
    #[arg(long = "x-im", allow_negative_numbers = true)]
    pub x_im: Option<f64>,
    /// `q = exp(2 pi i omega)` on the unit circle.
    #[arg(long)]
    pub omega: Option<f64>,
    /// `q = exp(-2 pi tau)` inside the unit disk.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Real `0 < q < 1`.
    #[arg(long)]
    pub q: Option<f64>,
    /// Quasi-periods of the double sine.
    #[arg(long)]
    pub omega1: Option<f64>,
    #[arg(long)]
    pub omega2: Option<f64>,
    /// Sector margin for the Barnes integrals.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Accept omega close to a rational with small denominator.
    #[arg(long)]
    pub unchecked: bool,
    /// Also report the q-difference residual (capital-psi; always on for capital-phi).
    #[arg(long)]
    pub residual: bool,
}

const SCALAR_NAMES: [&str; 16] = [
    "a-re", "a-im", "b-re", "b-im", "c-re", "c-im", "z-re", "z-im", "x-re", "x-im", "omega", "tau", "q", "omega1",
    "omega2", "delta",
];

impl Params {
    fn slot(&mut self, name: &str) -> Option<&mut Option<f64>> {
        Some(match name {
            "a-re" => &mut self.a_re,
            "a-im" => &mut self.a_im,
            "b-re" => &mut self.b_re,
            "b-im" => &mut self.b_im,
            "c-re" => &mut self.c_re,
            "c-im" => &mut self.c_im,
            "z-re" => &mut self.z_re,
            "z-im" => &mut self.z_im,
            "x-re" => &mut self.x_re,
            "x-im" => &mut self.x_im,
            "omega" => &mut self.omega,
            "tau" => &mut self.tau,
            "q" => &mut self.q,
            "omega1" => &mut self.omega1,
            "omega2" => &mut self.omega2,
            "delta" => &mut self.delta,
            _ => return None,
        })
    }

    /// Sets a scalar input by its flag name (without dashes).
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let slot = self.slot(name).ok_or_else(|| {
            Error::Parameter(format!("unknown parameter '{name}'; expected one of {}", SCALAR_NAMES.join(", ")))
        })?;
        *slot = Some(value);
        Ok(())
    }

    fn scalar(&self, name: &str) -> Option<f64> {
        self.clone().slot(name).and_then(|s| *s)
    }

    fn complex(&self, name: &str) -> Result<Complex64> {
        let re = self
            .scalar(&format!("{name}-re"))
            .ok_or_else(|| Error::Parameter(format!("missing --{name}-re")))?;
        let im = self.scalar(&format!("{name}-im")).unwrap_or(0.0);
        Ok(Complex64::new(re, im))
    }

    fn hg(&self) -> Result<HGParams> {
        Ok(HGParams::new(self.complex("a")?, self.complex("b")?, self.complex("c")?))
    }

    fn unit_modulus(&self) -> Result<QModulus> {
        let omega = self.omega.ok_or_else(|| Error::Parameter("missing --omega".into()))?;
        if self.unchecked {
            QModulus::unit_unchecked(omega)
        } else {
            QModulus::unit(omega)
        }
    }

    fn classical_modulus(&self) -> Result<QModulus> {
        match (self.q, self.tau) {
            (Some(q), None) => QModulus::from_real_q(q),
            (None, Some(tau)) => QModulus::classical(tau),
            _ => Err(Error::Parameter("give exactly one of --q and --tau".into())),
        }
    }

    fn any_modulus(&self) -> Result<QModulus> {
        match (self.omega, self.q, self.tau) {
            (Some(_), None, None) => self.unit_modulus(),
            (None, _, _) => self.classical_modulus(),
            _ => Err(Error::Parameter("give exactly one of --omega, --q and --tau".into())),
        }
    }

    /// The inputs as flat record fields, in a fixed order.
    pub fn fields(&self) -> Map<String, Value> {
        let mut m = Map::new();
        for name in SCALAR_NAMES {
            if let Some(v) = self.scalar(name) {
                m.insert(name.replace('-', "_"), json!(v));
            }
        }
        m
    }
}

/// A successful evaluation.
pub struct Outcome {
    pub value: Complex64,
    pub error_estimate: f64,
    pub warnings: Vec<String>,
    pub residual: Option<f64>,
}

impl Outcome {
    fn plain(value: Complex64, error_estimate: f64) -> Self {
        Self { value, error_estimate, warnings: Vec::new(), residual: None }
    }
}

/// Evaluates `target` once.
pub fn evaluate(target: Target, p: &Params, quad: &QuadratureConfig) -> Result<Outcome> {
    let series = SeriesConfig::default();
    match target {
        Target::S2 => {
            let w = OmegaPair::new(p.omega1.unwrap_or(1.0), p.omega2.ok_or_else(|| Error::Parameter("missing --omega2".into()))?)?;
            let z = p.complex("z")?;
            let v = log_s2(z, &w)?;
            if !v.is_regular() {
                return Err(Error::Pole { location: z, family: format!("{:?}", v.status) });
            }
            // the reflection defect serves as an a posteriori error estimate
            let r = log_s2(w.sum() - z, &w)?;
            let defect = ((v.log_value + r.log_value).exp() - 1.0).norm() * v.value.norm();
            Ok(Outcome::plain(v.value, defect))
        }
        Target::Qgamma => {
            let q = p.any_modulus()?;
            let z = p.complex("z")?;
            let g = gamma_tilde(z, &q)?;
            if !g.is_regular() {
                return Err(Error::Pole { location: z, family: format!("{:?}", g.status) });
            }
            // defect of the functional equation, scaled to the value
            let g1 = gamma_tilde(z + 1.0, &q)?;
            let br = q_bracket(z, &q)?;
            let defect = if g1.is_regular() && br.norm() > 1e-12 {
                ((g1.log_value - g.log_value).exp() / br - 1.0).norm() * g.value.norm()
            } else {
                0.0
            };
            Ok(Outcome::plain(g.value, defect))
        }
        Target::PhiSeries => series_outcome(hypergeometric_f(&p.hg()?, p.complex("z")?, &series)?),
        Target::PhiBasic => series_outcome(basic_phi(&p.hg()?, &p.classical_modulus()?, p.complex("z")?, &series)?),
        Target::CapitalPhi => {
            let prob = check_conditions_b(&p.hg()?, &p.unit_modulus()?, p.delta)?;
            let z = p.complex("z")?;
            let contour = build_barnes_contour(&prob, 2.0, DEFAULT_CLEARANCE, None)?;
            let (orbit, err) = capital_phi_orbit(&prob, z, &contour, quad)?;
            let r = lq_from_samples(&orbit, &prob.params, z, &prob.q)?;
            Ok(Outcome { value: orbit[0], error_estimate: err, warnings: Vec::new(), residual: Some(r.normalized) })
        }
        Target::CapitalPsi => {
            let prob = check_conditions_e(&p.hg()?, &p.unit_modulus()?)?;
            let x = p.complex("x")?;
            let v = capital_psi(&prob, x, quad)?;
            let residual = if p.residual {
                let s1 = capital_psi(&prob, x + 1.0, quad)?.value;
                let s2 = capital_psi(&prob, x + 2.0, quad)?.value;
                Some(lplus_from_samples(&[v.value, s1, s2], &prob.params, x, &prob.q)?.normalized)
            } else {
                None
            };
            Ok(Outcome { value: v.value, error_estimate: v.error_estimate, warnings: v.warnings, residual })
        }
        Target::Watson => {
            let sector = SectorSpec::symmetric(p.delta.unwrap_or(0.3))?;
            let v = watson_integral(&p.hg()?, &p.classical_modulus()?, p.complex("z")?, &sector, quad)?;
            Ok(Outcome { value: v.value, error_estimate: v.error_estimate, warnings: v.warnings, residual: None })
        }
        Target::EulerJackson => {
            let q = p.classical_modulus()?;
            let s = euler_jackson_phi(&p.hg()?, &q, p.complex("z")?, series.tail_tol)?;
            // the remaining tail is bounded by a geometric series in the last term
            let qr = q.real_q()?;
            Ok(Outcome::plain(s.value, s.last_term * (1.0 - qr) / (1.0 - qr.powf(p.hg()?.b.re)).max(1e-300)))
        }
    }
}

fn series_outcome(s: qhyper::qseries::SeriesSum) -> Result<Outcome> {
    if !s.converged {
        return Err(Error::Accuracy { best: s.value, estimate: f64::INFINITY });
    }
    Ok(Outcome::plain(s.value, 0.0))
}
