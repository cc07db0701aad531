//! Seeded numerical checks of the classical identities between the forms.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::forms::{degree1_values, degree2_values, petersson_norm, FormName, FormSpec};
use crate::numerics::{Cx, PrecisionConfig};
use crate::symplectic::{reduce1, reduce2, CandidateSet, SymplecticMatrix};
use crate::theta::{SiegelPoint, SiegelPoint1, SiegelPoint2};

pub const DEFAULT_SEED: u64 = 20;
const MAX_REDUCTION_STEPS: usize = 200;

/// Worst error of one suite over its sample.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub points: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub seconds: f64,
    /// Worst error per checked quantity.
    pub components: Vec<(String, f64)>,
}

struct Worst(Vec<(String, f64)>);

impl Worst {
    fn new(names: &[&str]) -> Self {
        Worst(names.iter().map(|n| (n.to_string(), 0.0)).collect())
    }

    fn record(&mut self, i: usize, v: f64) {
        // NaN must not hide behind max
        if v.is_nan() || v > self.0[i].1 {
            self.0[i].1 = v;
        }
    }

    fn finish(self, name: &'static str, points: usize, tolerance: f64, start: Instant) -> SuiteReport {
        let max_error = self.0.iter().map(|c| c.1).fold(0.0, |a: f64, b| if b.is_nan() { b } else { a.max(b) });
        SuiteReport {
            name,
            points,
            max_error,
            tolerance,
            passed: max_error <= tolerance,
            seconds: start.elapsed().as_secs_f64(),
            components: self.0,
        }
    }
}

/// A point of the standard fundamental domain of SL₂(ℤ) with `y ≤ 3`.
pub fn random_reduced_point1<R: Rng>(rng: &mut R, prec: u32) -> SiegelPoint1 {
    let x: f64 = rng.gen_range(-0.5..0.5);
    let y: f64 = rng.gen_range((1.0 - x * x).sqrt()..3.0);
    reduce1(&SiegelPoint1::from_f64(x, y, prec).expect("y > 0")).point
}

/// A point with Minkowski-reduced imaginary part, `y₁ ∈ [0.9, 1.6)`, `|x| < 1/2`.
pub fn random_generic_point2<R: Rng>(rng: &mut R, prec: u32) -> SiegelPoint2 {
    let y1: f64 = rng.gen_range(0.9..1.6);
    let y2: f64 = rng.gen_range(y1..2.0);
    let y12: f64 = rng.gen_range(0.0..y1 / 2.0);
    let x = [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)];
    SiegelPoint2::from_f64([[x[0], x[1]], [x[1], x[2]]], [[y1, y12], [y12, y2]], prec)
        .expect("positive definite by construction")
}

/// `E4³ − E6² = 1728 Δ`, relative to `max(|E4|³, |E6|²)`.
pub fn igusa_suite(n: usize, seed: u64, cfg: &PrecisionConfig) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Worst::new(&["E4^3 - E6^2 - 1728 Delta"]);
    for _ in 0..n {
        let t = random_reduced_point1(&mut rng, cfg.bits());
        let v = degree1_values(&t, cfg);
        let e43 = v.e4.pow_u(3);
        let e62 = v.e6.square();
        let res = &(&e43 - &e62) - &v.delta.scale_f64(1728.0);
        let scale = e43.abs().to_f64().max(e62.abs().to_f64());
        w.record(0, res.abs().to_f64() / scale);
    }
    w.finish("igusa", n, 1e-9, start)
}

/// On `diag(τ₁, τ₂)`: `E4`, `E6` multiply, `χ12 = 12 Δ Δ` and `χ10 = 0`.
pub fn splitting_suite(n: usize, seed: u64, cfg: &PrecisionConfig) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Worst::new(&["E4", "E6", "chi12", "|chi10|"]);
    for _ in 0..n {
        let a = random_reduced_point1(&mut rng, cfg.bits());
        let b = random_reduced_point1(&mut rng, cfg.bits());
        let (va, vb) = (degree1_values(&a, cfg), degree1_values(&b, cfg));
        let v = degree2_values(&SiegelPoint2::diagonal(&a, &b), cfg);
        w.record(0, v.e4.rel_dist(&(&va.e4 * &vb.e4)));
        w.record(1, v.e6.rel_dist(&(&va.e6 * &vb.e6)));
        w.record(2, v.chi12.rel_dist(&(&va.delta * &vb.delta).scale_f64(12.0)));
        w.record(3, v.chi10.abs().to_f64());
    }
    w.finish("splitting", n, 1e-9, start)
}

/// Siegel's Φ: at `y₁ = Y` the Eisenstein series agree with their degree-1 restriction to `τ₂`.
pub fn boundary_suite(n: usize, y1: f64, seed: u64, cfg: &PrecisionConfig) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = Worst::new(&["E4", "E6"]);
    for _ in 0..n {
        let t2 = random_reduced_point1(&mut rng, cfg.bits());
        let x1: f64 = rng.gen_range(-0.5..0.5);
        let x12: f64 = rng.gen_range(-0.5..0.5);
        let y2 = t2.y().to_f64();
        let y12: f64 = rng.gen_range(0.0..y2.min(y1) / 2.0);
        let tau = SiegelPoint2::new(
            Cx::from_f64(x1, y1, cfg.bits()),
            Cx::from_f64(x12, y12, cfg.bits()),
            t2.tau().clone(),
        )
        .expect("positive definite by construction");
        let v = degree2_values(&tau, cfg);
        let u = degree1_values(&t2, cfg);
        w.record(0, (&v.e4 - &u.e4).abs().to_f64());
        w.record(1, (&v.e6 - &u.e6).abs().to_f64());
    }
    w.finish("boundary", n, 1e-15, start)
}

/// Petersson norms of the degree-2 forms at `τ` and `g·τ`, and `reduce2(g·τ) = reduce2(τ)`.
pub fn invariance_suite(n: usize, seed: u64, cfg: &PrecisionConfig) -> Result<(SuiteReport, SuiteReport)> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = CandidateSet::default();
    let forms = [FormName::E4, FormName::E6, FormName::Chi10, FormName::Chi12]
        .map(|f| FormSpec::new(f, 2).expect("degree-2 forms"));
    let mut norms = Worst::new(&["E4", "E6", "chi10", "chi12"]);
    let mut round_trip = Worst::new(&["reduce2"]);
    let mut reduce_time = 0.0;
    for _ in 0..n {
        let tau = reduce2(&random_generic_point2(&mut rng, cfg.bits()), &candidates, MAX_REDUCTION_STEPS)?.point;
        let g = SymplecticMatrix::random_word(&mut rng, 4);
        let moved = g.act(&tau).0;

        let r0 = Instant::now();
        let back = reduce2(&moved, &candidates, MAX_REDUCTION_STEPS)?.point;
        reduce_time += r0.elapsed().as_secs_f64();
        let d = [(back.t1(), tau.t1()), (back.t12(), tau.t12()), (back.t2(), tau.t2())]
            .iter()
            .map(|(a, b)| (*a - *b).abs().to_f64())
            .fold(0.0, f64::max);
        round_trip.record(0, d);

        let (p, q): (SiegelPoint, SiegelPoint) = (tau.into(), moved.into());
        for (i, f) in forms.iter().enumerate() {
            let a = petersson_norm(f, &p, cfg)?;
            let b = petersson_norm(f, &q, cfg)?;
            let rel = ((a.clone() - &b) / &a).abs().to_f64();
            norms.record(i, rel);
        }
    }
    let mut norms = norms.finish("petersson_invariance", n, 1e-8, start);
    norms.seconds -= reduce_time;
    let mut rt = round_trip.finish("reduce2_round_trip", n, 1e-9, Instant::now());
    rt.seconds = reduce_time;
    Ok((norms, rt))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PrecisionConfig {
        PrecisionConfig::with_digits(30).unwrap()
    }

    #[test]
    fn small_suites_pass() {
        let c = cfg();
        for r in [igusa_suite(5, 1, &c), splitting_suite(5, 1, &c), boundary_suite(3, 30.0, 1, &c)] {
            assert!(r.passed, "{r:?}");
        }
        let (a, b) = invariance_suite(3, 1, &c).unwrap();
        assert!(a.passed && b.passed, "{a:?} {b:?}");
    }

    #[test]
    fn nan_is_never_hidden() {
        let mut w = Worst::new(&["x"]);
        w.record(0, 1.0);
        w.record(0, f64::NAN);
        w.record(0, 2.0);
        assert!(!w.finish("t", 1, 1.0, Instant::now()).passed);
    }
}
