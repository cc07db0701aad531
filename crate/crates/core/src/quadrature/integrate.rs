//! Integrals over the modular curve `A₁ = SL₂(ℤ)\ℍ` against `dμ = dx dy / (4πy²)`.
//!
//! The truncated fundamental domain `{|x| ≤ 1/2, |τ| ≥ 1, y ≤ Y}` is integrated in the
//! coordinates `(x, u = 1/y)`, where `dμ = dx du / 4π`, and the region `y > Y` is added in
//! closed form. Logarithmic singularities at zeros of the integrand's form are cut out by
//! disks of radius `δ` whose contribution is bounded, not integrated.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::gk;
use crate::error::{Error, Result};
use crate::forms::fast::log_petersson1_f64;
use crate::forms::{EllipticPoint, FormName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureMode {
    Adaptive,
    MonteCarlo,
}

impl FromStr for QuadratureMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "adaptive" => Ok(Self::Adaptive),
            "monte_carlo" | "mc" => Ok(Self::MonteCarlo),
            _ => Err(Error::Parse(format!("unknown quadrature mode {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IntegrationConfig {
    pub cusp_cutoff: f64,
    pub target_tolerance: f64,
    pub max_refinement_depth: u32,
    pub singularity_exclusion_radius: f64,
    pub mode: QuadratureMode,
    pub rng_seed: u64,
    /// Sample count in Monte Carlo mode.
    pub samples: u64,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        Self {
            cusp_cutoff: 10.0,
            target_tolerance: 1e-8,
            max_refinement_depth: 48,
            singularity_exclusion_radius: 1e-3,
            mode: QuadratureMode::Adaptive,
            rng_seed: 0,
            samples: 10_000_000,
        }
    }
}

impl IntegrationConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if !(self.cusp_cutoff > 2.0) || !self.cusp_cutoff.is_finite() {
            return bad(format!("cusp cutoff must exceed 2, got {}", self.cusp_cutoff));
        }
        if !(self.target_tolerance > 0.0) {
            return bad(format!("tolerance must be positive, got {}", self.target_tolerance));
        }
        if !(self.singularity_exclusion_radius > 0.0 && self.singularity_exclusion_radius < 0.1) {
            return bad(format!("exclusion radius must lie in (0, 0.1), got {}", self.singularity_exclusion_radius));
        }
        if self.max_refinement_depth == 0 {
            return bad("refinement depth must be positive".into());
        }
        if self.mode == QuadratureMode::MonteCarlo && self.samples == 0 {
            return bad("Monte Carlo mode needs at least one sample".into());
        }
        Ok(())
    }
}

/// Integrands with a known cusp behaviour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum A1Integrand {
    One,
    /// `log ‖f‖_Pet` for a degree-1 form with `f(i∞) = 1`.
    LogPetersson(FormName),
}

impl A1Integrand {
    fn weight(self) -> u32 {
        match self {
            A1Integrand::One => 0,
            A1Integrand::LogPetersson(f) => f.weight(),
        }
    }

    /// Zeros of the form in the closed fundamental domain: `(x₀, y₀, function order)`.
    fn singularities(self) -> Vec<(f64, f64, u32)> {
        let i = EllipticPoint::I.tau();
        let w = EllipticPoint::Omega.tau();
        match self {
            A1Integrand::LogPetersson(FormName::E6) => vec![(i.re, i.im, 1)],
            A1Integrand::LogPetersson(FormName::E4) => vec![(w.re, w.im, 1), (w.re + 1.0, w.im, 1)],
            _ => Vec::new(),
        }
    }

    fn check(self) -> Result<()> {
        match self {
            A1Integrand::One | A1Integrand::LogPetersson(FormName::E4 | FormName::E6) => Ok(()),
            A1Integrand::LogPetersson(f) => Err(Error::InvalidConfig(format!(
                "{f} is not a degree-1 form with value 1 at the cusp"
            ))),
        }
    }

    fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            A1Integrand::One => 1.0,
            A1Integrand::LogPetersson(f) => {
                log_petersson1_f64(f, Complex64::new(x, y)).expect("checked degree-1 form")
            }
        }
    }

    /// `∫_{y>Y} g dμ` in closed form, and a bound on what the closed form leaves out.
    fn tail(self, y_cut: f64) -> (f64, f64) {
        match self {
            A1Integrand::One => (1.0 / (4.0 * PI * y_cut), 0.0),
            A1Integrand::LogPetersson(_) => {
                let k = self.weight() as f64;
                let value = k / (8.0 * PI) * ((4.0 * PI * y_cut).ln() + 1.0) / y_cut;
                // |log|f|| ≤ 2·504·e^{−2πy} beyond the cutoff
                let err = 1008.0 * (-2.0 * PI * y_cut).exp() / (8.0 * PI * PI * y_cut * y_cut);
                (value, err)
            }
        }
    }
}

impl fmt::Display for A1Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A1Integrand::One => f.write_str("1"),
            A1Integrand::LogPetersson(n) => write!(f, "log_pet_{n}"),
        }
    }
}

impl FromStr for A1Integrand {
    type Err = Error;
    /// `1`, `one`, or `log_pet_E4` / `log_pet_E6` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let l = s.to_ascii_lowercase();
        if l == "1" || l == "one" {
            return Ok(A1Integrand::One);
        }
        let name = l
            .strip_prefix("log_pet_")
            .or_else(|| l.strip_prefix("log_petersson_"))
            .ok_or_else(|| Error::Parse(format!("unknown integrand {s:?}")))?;
        let it = A1Integrand::LogPetersson(name.parse()?);
        it.check()?;
        Ok(it)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub tail_contribution: f64,
    pub singular_contribution_bound: f64,
}

/// Membership in the closed fundamental domain, with the wall convention of `reduce1`.
pub fn in_fundamental_domain(x: f64, y: f64) -> bool {
    let r2 = x * x + y * y;
    (-0.5..0.5).contains(&x) && (r2 > 1.0 || (r2 == 1.0 && x <= 0.0))
}

fn u_max(x: f64) -> f64 {
    1.0 / (1.0 - x * x).sqrt()
}

struct Domain {
    integrand: A1Integrand,
    u_min: f64,
    delta: f64,
    disks: Vec<(f64, f64, u32)>,
}

impl Domain {
    fn new(integrand: A1Integrand, cfg: &IntegrationConfig) -> Self {
        Self {
            integrand,
            u_min: 1.0 / cfg.cusp_cutoff,
            delta: cfg.singularity_exclusion_radius,
            disks: integrand.singularities(),
        }
    }

    fn excluded(&self, x: f64, y: f64) -> bool {
        self.disks.iter().any(|&(x0, y0, _)| (x - x0).powi(2) + (y - y0).powi(2) < self.delta * self.delta)
    }

    /// Pieces of `[u_min, u_max(x)]` outside the disks.
    fn u_intervals(&self, x: f64) -> Vec<(f64, f64)> {
        let mut pieces = vec![(self.u_min, u_max(x))];
        for &(x0, y0, _) in &self.disks {
            let dx = x - x0;
            if dx.abs() >= self.delta {
                continue;
            }
            let h = (self.delta * self.delta - dx * dx).sqrt();
            let (lo, hi) = (1.0 / (y0 + h), 1.0 / (y0 - h));
            pieces = pieces
                .into_iter()
                .flat_map(|(a, b)| {
                    let mut out = Vec::new();
                    if lo > a {
                        out.push((a, lo.min(b)));
                    }
                    if hi < b {
                        out.push((hi.max(a), b));
                    }
                    out
                })
                .filter(|(a, b)| b > a)
                .collect();
        }
        pieces
    }

    fn x_breakpoints(&self) -> Vec<f64> {
        let mut xs = vec![-0.5, 0.0, 0.5];
        for &(x0, _, _) in &self.disks {
            xs.extend([x0 - self.delta, x0 + self.delta]);
        }
        xs.retain(|x| (-0.5..=0.5).contains(x));
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs
    }

    /// Bound on `|∫_{disk ∩ F} g dμ|`: with `g ≈ A + n log r` inside the disk, the integral over
    /// a sector of angle θ is `θδ²/2 · (g(δ) − n/2) / (4πy₀²)`; take θ = π and double it.
    fn disk_bound(&self) -> f64 {
        self.disks
            .iter()
            .map(|&(x0, y0, n)| {
                let g = self.integrand.eval(x0, y0 + self.delta);
                let d2 = self.delta * self.delta;
                2.0 * PI * d2 / 2.0 * (g.abs() + n as f64 / 2.0) / (4.0 * PI * (y0 - self.delta).powi(2))
            })
            .fold(0.0, |a, b| a + b)
    }
}

pub fn integrate_a1(integrand: A1Integrand, cfg: &IntegrationConfig) -> Result<IntegralResult> {
    cfg.validate()?;
    integrand.check()?;
    let dom = Domain::new(integrand, cfg);
    let (core, core_err) = match cfg.mode {
        QuadratureMode::Adaptive => adaptive(&dom, cfg)?,
        QuadratureMode::MonteCarlo => monte_carlo(&dom, cfg),
    };
    let (tail, tail_err) = integrand.tail(cfg.cusp_cutoff);
    let singular = dom.disk_bound();
    Ok(IntegralResult {
        value: core + tail,
        error_estimate: core_err + tail_err + singular,
        tail_contribution: tail,
        singular_contribution_bound: singular,
    })
}

fn adaptive(dom: &Domain, cfg: &IntegrationConfig) -> Result<(f64, f64)> {
    // the 1/4π of the measure is applied at the end, so tolerances are scaled up by 4π
    let tol = cfg.target_tolerance * 4.0 * PI;
    let inner_tol = 0.25 * tol;
    let depth = cfg.max_refinement_depth;
    let inner = |x: f64| -> Result<(f64, f64)> {
        let g = |u: f64| Ok((dom.integrand.eval(x, 1.0 / u), 0.0));
        let mut v = 0.0;
        let mut e = 0.0;
        for (a, b) in dom.u_intervals(x) {
            let r = gk::integrate(&g, &[a, b], inner_tol, depth)?;
            v += r.value;
            e += r.error;
        }
        Ok((v, e))
    };
    let est = gk::integrate(&inner, &dom.x_breakpoints(), tol, depth)?;
    Ok((est.value / (4.0 * PI), est.error / (4.0 * PI)))
}

const CHUNK: u64 = 1 << 16;

/// Uniform sampling of the box `[−1/2, 1/2] × [1/Y, 2/√3]` in `(x, u)`; chunk `c` draws from
/// ChaCha stream `c`, so the result does not depend on how chunks are scheduled.
fn monte_carlo(dom: &Domain, cfg: &IntegrationConfig) -> (f64, f64) {
    let u_top = 2.0 / 3f64.sqrt();
    let area = u_top - dom.u_min;
    let n_chunks = cfg.samples.div_ceil(CHUNK);
    let partial: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            rng.set_stream(c);
            let n = CHUNK.min(cfg.samples - c * CHUNK);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..n {
                let x: f64 = rng.gen_range(-0.5..0.5);
                let u: f64 = rng.gen_range(dom.u_min..u_top);
                let y = 1.0 / u;
                if in_fundamental_domain(x, y) && !dom.excluded(x, y) {
                    let g = dom.integrand.eval(x, y);
                    s += g;
                    s2 += g * g;
                }
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = partial.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let n = cfg.samples as f64;
    let mean = s / n;
    let var = (s2 / n - mean * mean).max(0.0);
    let scale = area / (4.0 * PI);
    (mean * scale, 3.0 * (var / n).sqrt() * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volume_is_one_twelfth() {
        let r = integrate_a1(A1Integrand::One, &IntegrationConfig::default()).unwrap();
        assert!((r.value - 1.0 / 12.0).abs() < 1e-9, "{}", r.value);
        assert_eq!(r.singular_contribution_bound, 0.0);
    }

    #[test]
    fn wall_convention() {
        assert!(in_fundamental_domain(-0.5, 1.0));
        assert!(!in_fundamental_domain(0.5, 1.0));
        assert!(in_fundamental_domain(0.0, 1.0));
        assert!(!in_fundamental_domain(0.3, (1.0f64 - 0.09).sqrt()));
        assert!(!in_fundamental_domain(0.0, 0.99));
    }

    #[test]
    fn config_validation() {
        let bad = [
            IntegrationConfig { cusp_cutoff: 2.0, ..Default::default() },
            IntegrationConfig { singularity_exclusion_radius: 0.1, ..Default::default() },
            IntegrationConfig { target_tolerance: 0.0, ..Default::default() },
            IntegrationConfig { max_refinement_depth: 0, ..Default::default() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }

    #[test]
    fn parse_integrands() {
        assert_eq!("1".parse::<A1Integrand>().unwrap(), A1Integrand::One);
        assert_eq!("log_pet_e6".parse::<A1Integrand>().unwrap(), A1Integrand::LogPetersson(FormName::E6));
        assert!("log_pet_delta".parse::<A1Integrand>().is_err());
        assert!("log_pet_chi10".parse::<A1Integrand>().is_err());
    }

    #[test]
    fn exclusion_pieces_avoid_disk() {
        let dom = Domain::new(A1Integrand::LogPetersson(FormName::E6), &IntegrationConfig::default());
        for (a, b) in dom.u_intervals(0.0) {
            assert!(b <= 1.0 / 1.001 + 1e-15 || a >= 1.0 / 0.999 - 1e-15, "{a} {b}");
        }
        assert_eq!(dom.u_intervals(0.2).len(), 1);
    }
}
