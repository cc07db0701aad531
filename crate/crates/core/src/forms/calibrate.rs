//! Numerical derivation of the signs in the theta expression for the degree-2 `E6`.
//!
//! Each product `F_t = (ϑ_i ϑ_j ϑ_k)⁴` is carried by every generator of Sp₄(ℤ) to `±F_{t'}`
//! (with the weight-6 cocycle). Invariance of `Σ s_t F_t` forces `s_{t'} = ±s_t` along these
//! moves; propagating from one triple fixes all signs up to a global one, which the diagonal
//! splitting `E6(diag(τ₁, τ₂)) = E6(τ₁) E6(τ₂)` then pins.

use std::collections::VecDeque;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::{degree1_values, e6_from_fourth_powers, even_fourth_powers};
use super::syzygy::{enumerate_syzygous_triples, TripleSystem};
use crate::error::{Error, Result};
use crate::numerics::{Cx, PrecisionConfig};
use crate::symplectic::SymplecticMatrix;
use crate::theta::{SiegelPoint1, SiegelPoint2, ThetaTable};

const CALIBRATION_SEED: u64 = 0x5eed_e6;
const N_DIAGONAL: usize = 20;
const N_GENERIC: usize = 20;
const CHECK_TOL: f64 = 1e-10;

/// Outcome of [`calibrate_e6_signs_report`].
#[derive(Clone, Debug)]
pub struct CalibrationReport {
    pub system: TripleSystem,
    pub splitting_max_rel: f64,
    pub invariance_max_rel: f64,
    /// Number of sign vectors at Hamming distance 1 or 2 from the result that were tested.
    pub flips_checked: usize,
    /// Sign vectors among those that also pass every check.
    pub alternatives: Vec<Vec<i8>>,
    /// Smallest combined splitting/invariance error among single flips.
    pub single_flip_min_error: f64,
}

fn products(t4: &[Cx], triples: &[[usize; 3]]) -> Vec<Cx> {
    triples.iter().map(|t| &(&t4[t[0]] * &t4[t[1]]) * &t4[t[2]]).collect()
}

fn products_at(tau: &SiegelPoint2, triples: &[[usize; 3]], cfg: &PrecisionConfig) -> Vec<Cx> {
    products(&even_fourth_powers(&ThetaTable::compute(tau, cfg, false)), triples)
}

fn calibration_point() -> ([[f64; 2]; 2], [[f64; 2]; 2]) {
    ([[0.113, 0.071], [0.071, -0.197]], [[1.17, 0.31], [0.31, 1.05]])
}

pub(crate) fn random_generic_point<R: Rng>(rng: &mut R, prec: u32) -> SiegelPoint2 {
    let y1: f64 = rng.gen_range(0.9..1.6);
    let y2: f64 = rng.gen_range(y1..2.0);
    let y12: f64 = rng.gen_range(0.0..y1 / 2.0);
    let x = [rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)];
    SiegelPoint2::from_f64([[x[0], x[1]], [x[1], x[2]]], [[y1, y12], [y12, y2]], prec)
        .expect("positive definite by construction")
}

pub(crate) fn random_point1<R: Rng>(rng: &mut R, prec: u32) -> SiegelPoint1 {
    SiegelPoint1::from_f64(rng.gen_range(-0.5..0.5), rng.gen_range(0.9..2.0), prec).expect("y > 0")
}

pub fn calibrate_e6_signs(cfg: &PrecisionConfig) -> Result<TripleSystem> {
    calibrate_e6_signs_report(cfg).map(|r| r.system)
}

pub fn calibrate_e6_signs_report(cfg: &PrecisionConfig) -> Result<CalibrationReport> {
    let base = enumerate_syzygous_triples();
    let triples = base.triples().to_vec();
    let n = triples.len();
    let prec = cfg.bits();
    let match_tol = (cfg.series_tolerance() * 1e10).clamp(1e-30, 1e-8);

    let (x0, y0) = calibration_point();
    let tau0 = SiegelPoint2::from_f64(x0, y0, prec)?;
    let f0 = products_at(&tau0, &triples, cfg);

    // edges[g][t] = (t', ε) with F_t(gτ)/j⁶ = ε F_{t'}(τ)
    let gens = SymplecticMatrix::generators();
    let mut edges: Vec<Vec<(usize, i8)>> = Vec::new();
    for g in &gens {
        let (tg, j) = g.act(&tau0);
        let j6inv = j.pow_u(6).inv();
        let fg = products_at(&tg, &triples, cfg);
        let mut row = Vec::with_capacity(n);
        for (t, v) in fg.iter().enumerate() {
            let w = v * &j6inv;
            let mut hit = None;
            for (u, f) in f0.iter().enumerate() {
                for eps in [1i8, -1] {
                    let target = if eps > 0 { f.clone() } else { -f };
                    if w.rel_dist(&target) < match_tol {
                        if hit.is_some() {
                            return Err(Error::SignCalibration(format!("ambiguous image of triple {t}")));
                        }
                        hit = Some((u, eps));
                    }
                }
            }
            row.push(hit.ok_or_else(|| {
                Error::SignCalibration(format!("triple {t} has no signed image under {g:?}"))
            })?);
        }
        edges.push(row);
    }

    let mut signs: Vec<Option<i8>> = vec![None; n];
    signs[0] = Some(1);
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        let st = signs[t].expect("queued triples are signed");
        for row in &edges {
            let (u, eps) = row[t];
            let want = st * eps;
            match signs[u] {
                None => {
                    signs[u] = Some(want);
                    queue.push_back(u);
                }
                Some(s) if s != want => {
                    return Err(Error::SignCalibration(format!(
                        "inconsistent propagation at triple {u}"
                    )));
                }
                _ => {}
            }
        }
    }
    let mut signs: Vec<i8> = signs
        .into_iter()
        .enumerate()
        .map(|(t, s)| s.ok_or_else(|| Error::SignCalibration(format!("triple {t} unreachable"))))
        .collect::<Result<_>>()?;

    // Global sign and verification data.
    let mut rng = ChaCha8Rng::seed_from_u64(CALIBRATION_SEED);
    let mut diag: Vec<(Vec<Complex64>, Complex64)> = Vec::new();
    let mut diag_hp: Vec<(Vec<Cx>, Cx)> = Vec::new();
    for _ in 0..N_DIAGONAL {
        let a = random_point1(&mut rng, prec);
        let b = random_point1(&mut rng, prec);
        let t = SiegelPoint2::diagonal(&a, &b);
        let f = products_at(&t, &triples, cfg);
        let target = &degree1_values(&a, cfg).e6 * &degree1_values(&b, cfg).e6;
        diag.push((f.iter().map(Cx::to_c64).collect(), target.to_c64()));
        diag_hp.push((f, target));
    }
    {
        let (f, target) = &diag_hp[0];
        let v = weighted_sum(f, &signs);
        if v.rel_dist(target) > v.rel_dist(&-target) {
            for s in signs.iter_mut() {
                *s = -*s;
            }
        }
    }

    let mut inv_checks: Vec<(Vec<Complex64>, Vec<Complex64>)> = Vec::new();
    let mut invariance_max_rel: f64 = 0.0;
    for _ in 0..N_GENERIC {
        let t = random_generic_point(&mut rng, prec);
        let f = products_at(&t, &triples, cfg);
        let e = weighted_sum(&f, &signs);
        for g in &gens {
            let (tg, j) = g.act(&t);
            let fg = products_at(&tg, &triples, cfg);
            let j6inv = j.pow_u(6).inv();
            let fg: Vec<Cx> = fg.iter().map(|v| v * &j6inv).collect();
            let eg = weighted_sum(&fg, &signs);
            invariance_max_rel = invariance_max_rel.max(eg.rel_dist(&e));
            inv_checks.push((f.iter().map(Cx::to_c64).collect(), fg.iter().map(Cx::to_c64).collect()));
        }
    }
    let splitting_max_rel = diag_hp
        .iter()
        .map(|(f, target)| weighted_sum(f, &signs).rel_dist(target))
        .fold(0.0, f64::max);
    if splitting_max_rel > CHECK_TOL || invariance_max_rel > CHECK_TOL {
        return Err(Error::SignCalibration(format!(
            "verification failed: splitting {splitting_max_rel:e}, invariance {invariance_max_rel:e}"
        )));
    }

    // Probe sign vectors at Hamming distance 1 and 2.
    let passes = |s: &[i8]| -> (bool, f64) {
        let mut worst: f64 = 0.0;
        for (f, target) in &diag {
            let v = dot(f, s);
            worst = worst.max((v - target).norm() / target.norm().max(v.norm()));
        }
        for (f, fg) in &inv_checks {
            let a = dot(f, s);
            let b = dot(fg, s);
            worst = worst.max((a - b).norm() / a.norm().max(b.norm()));
        }
        (worst < 1e-8, worst)
    };
    let mut alternatives = Vec::new();
    let mut flips_checked = 0;
    let mut single_flip_min_error = f64::INFINITY;
    let mut trial = signs.clone();
    for i in 0..n {
        trial[i] = -trial[i];
        flips_checked += 1;
        let (ok, err) = passes(&trial);
        single_flip_min_error = single_flip_min_error.min(err);
        if ok {
            alternatives.push(trial.clone());
        }
        for j in i + 1..n {
            trial[j] = -trial[j];
            flips_checked += 1;
            if passes(&trial).0 {
                alternatives.push(trial.clone());
            }
            trial[j] = -trial[j];
        }
        trial[i] = -trial[i];
    }

    let system = base.with_signs(signs)?;
    Ok(CalibrationReport {
        system,
        splitting_max_rel,
        invariance_max_rel,
        flips_checked,
        alternatives,
        single_flip_min_error,
    })
}

fn weighted_sum(f: &[Cx], signs: &[i8]) -> Cx {
    let p = f[0].prec();
    let mut s = Cx::zero(p);
    for (v, sg) in f.iter().zip(signs) {
        if *sg > 0 {
            s += v;
        } else {
            s -= v;
        }
    }
    s.scale_f64(0.25)
}

fn dot(f: &[Complex64], s: &[i8]) -> Complex64 {
    f.iter().zip(s).map(|(v, sg)| v * (*sg as f64)).sum::<Complex64>() * 0.25
}

/// Signed E6 from explicit signs, for perturbation experiments.
pub fn e6_with_signs(tau: &SiegelPoint2, signs: &[i8], cfg: &PrecisionConfig) -> Cx {
    let t4 = even_fourth_powers(&ThetaTable::compute(tau, cfg, false));
    e6_from_fourth_powers(&t4, enumerate_syzygous_triples().triples(), signs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_reproduces_frozen_table() {
        let cfg = PrecisionConfig::with_digits(30).unwrap();
        let report = calibrate_e6_signs_report(&cfg).unwrap();
        assert_eq!(&report.system, TripleSystem::frozen());
        assert!(report.alternatives.is_empty());
        assert_eq!(report.flips_checked, 60 + 60 * 59 / 2);
        assert!(report.single_flip_min_error > 1e-3);
    }
}
