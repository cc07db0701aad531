//! Recovery of integer polynomials in `y` from numerical values of the forms.
//!
//! The form is sampled at seeded points and fitted by least squares over the degree-`d`
//! monomials; in degree ≥ 4 the monomials divisible by `y₃²y₄²` are left out, since the
//! quartic relation makes them redundant and the remaining ones give a unique normal form.
//! The fitted coefficients are rational with small denominators; clearing them gives the
//! primitive integer polynomial and its scale relative to the form.

use rayon::prelude::*;
use rug::{Float, Integer, Rational};

use super::poly::{Exponent, IntegerPolynomial5};
use super::system::{y_from_table, FiberSampler, FiberTarget, QUARTIC_LEAD};
use crate::error::{Error, Result};
use crate::forms::{degree2_from_table, TripleSystem};
use crate::numerics::{Cx, PrecisionConfig};
use crate::theta::ThetaTable;

pub const RECONSTRUCTION_SEED: u64 = 0x6669_6265;
const MAX_DENOMINATOR: i64 = 1 << 24;
const ROUNDING_TOL: f64 = 1e-6;
const FIT_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub target: FiberTarget,
    pub polynomial: IntegerPolynomial5,
    /// `polynomial(y(τ)) = scale · f(τ)^power`
    pub scale: Rational,
    /// Largest distance of a scaled fitted coefficient from its integer.
    pub rounding_residual: f64,
    /// Largest relative misfit of the integer polynomial over the samples.
    pub fit_residual: f64,
    pub samples: usize,
    pub unknowns: usize,
}

/// Degree-`d` monomials, without those divisible by `y₃²y₄²`.
pub fn normal_form_monomials(d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                for e in 0..=d - a - b - c {
                    let m = [a, b, c, e, d - a - b - c - e];
                    if !(0..5).all(|i| m[i] >= QUARTIC_LEAD[i]) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn monomial_values(y: &[Cx; 5], monos: &[Exponent], d: u32) -> Vec<Cx> {
    let p = y[0].prec();
    let pw: Vec<Vec<Cx>> = y
        .iter()
        .map(|v| {
            let mut row = vec![Cx::one(p)];
            for k in 1..=d as usize {
                row.push(&row[k - 1] * v);
            }
            row
        })
        .collect();
    monos
        .iter()
        .map(|m| {
            let mut v = Cx::one(p);
            for i in 0..5 {
                if m[i] > 0 {
                    v = &v * &pw[i][m[i] as usize];
                }
            }
            v
        })
        .collect()
}

/// Best rational approximation with bounded denominator, by continued fractions.
fn rationalize(x: f64, tol: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_DENOMINATOR {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some((h1, k1));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// Solve the symmetric positive definite system `n·c = r` by Gaussian elimination with pivoting.
fn solve(mut n: Vec<Vec<Float>>, mut r: Vec<Float>) -> Result<Vec<Float>> {
    let m = r.len();
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&a, &b| n[a][col].clone().abs().total_cmp(&n[b][col].clone().abs()))
            .expect("non-empty");
        if n[piv][col].is_zero() {
            return Err(Error::Reconstruction("singular normal equations".into()));
        }
        n.swap(col, piv);
        r.swap(col, piv);
        for row in col + 1..m {
            let f = Float::with_val(r[0].prec(), &n[row][col] / &n[col][col]);
            if f.is_zero() {
                continue;
            }
            for k in col..m {
                let t = Float::with_val(f.prec(), &f * &n[col][k]);
                n[row][k] -= t;
            }
            let t = Float::with_val(f.prec(), &f * &r[col]);
            r[row] -= t;
        }
    }
    let mut c = vec![Float::new(r[0].prec()); m];
    for row in (0..m).rev() {
        let mut s = r[row].clone();
        for k in row + 1..m {
            s -= Float::with_val(s.prec(), &n[row][k] * &c[k]);
        }
        c[row] = s / &n[row][row];
    }
    Ok(c)
}

pub fn reconstruct_polynomial(target: FiberTarget, cfg: &PrecisionConfig) -> Result<Reconstruction> {
    if target == FiberTarget::Chi10Squared {
        return Err(Error::Reconstruction("CHI10SQ_y is transcribed, not reconstructed".into()));
    }
    let d = target.degree();
    let monos = normal_form_monomials(d);
    let m = monos.len();
    let n_samples = 3 * m;
    let prec = cfg.bits();

    let mut sampler = FiberSampler::new(RECONSTRUCTION_SEED, prec);
    let points: Vec<_> = (0..n_samples).map(|_| sampler.sample()).collect();
    let signs = TripleSystem::frozen();
    let rows: Vec<(Vec<Cx>, Cx)> = points
        .par_iter()
        .map(|tau| {
            let table = ThetaTable::compute(tau, cfg, false);
            let y = y_from_table(&table);
            let f = degree2_from_table(&table, signs);
            let v = match target {
                FiberTarget::E4 => f.e4,
                FiberTarget::E6 => f.e6,
                _ => f.chi12,
            };
            (monomial_values(&y, &monos, d), v)
        })
        .collect();

    // Real normal equations for real unknowns; each sample's equation is divided by |f(τ)|.
    let mut nmat = vec![vec![Float::new(prec); m]; m];
    let mut rhs = vec![Float::new(prec); m];
    for (vals, v) in &rows {
        let w = v.abs();
        for part in 0..2 {
            let a: Vec<Float> = vals
                .iter()
                .map(|z| Float::with_val(prec, if part == 0 { &z.re } else { &z.im }) / &w)
                .collect();
            let b = Float::with_val(prec, if part == 0 { &v.re } else { &v.im }) / &w;
            for i in 0..m {
                for j in i..m {
                    nmat[i][j] += Float::with_val(prec, &a[i] * &a[j]);
                }
                rhs[i] += Float::with_val(prec, &a[i] * &b);
            }
        }
    }
    for i in 0..m {
        for j in 0..i {
            nmat[i][j] = nmat[j][i].clone();
        }
    }
    let coeffs = solve(nmat, rhs)?;

    let mut denominators = Integer::from(1);
    let mut fracs = Vec::with_capacity(m);
    for (c, mono) in coeffs.iter().zip(&monos) {
        let x = c.to_f64();
        let (p, q) = rationalize(x, 1e-9 * x.abs().max(1.0)).ok_or_else(|| {
            Error::Reconstruction(format!("coefficient {x} of {mono:?} is not a small rational"))
        })?;
        denominators.lcm_mut(&Integer::from(q));
        fracs.push(Rational::from((p, q)));
    }
    let mut ints: Vec<Integer> = fracs.iter().map(|f| Rational::from(f * &denominators).into_numer_denom().0).collect();
    let g = ints.iter().fold(Integer::new(), |acc, n| acc.gcd(n));
    if g == 0 {
        return Err(Error::Reconstruction("all coefficients vanish".into()));
    }
    for n in ints.iter_mut() {
        *n /= &g;
    }
    let scale = Rational::from((denominators, g));

    let scale_f = Float::with_val(prec, &scale);
    let rounding_residual = coeffs
        .iter()
        .zip(&ints)
        .map(|(c, n)| (Float::with_val(prec, c * &scale_f) - n).abs().to_f64())
        .fold(0.0, f64::max);
    if rounding_residual > ROUNDING_TOL {
        return Err(Error::Reconstruction(format!("rounding residual {rounding_residual:e}")));
    }
    let polynomial = IntegerPolynomial5::from_terms(monos.iter().copied().zip(ints));

    let fit_residual = rows
        .iter()
        .map(|(vals, v)| {
            let mut s = Cx::zero(prec);
            for (mono_v, (_, c)) in vals.iter().zip(monos.iter().map(|e| (e, polynomial.coefficient(e)))) {
                if c != 0 {
                    s += &mono_v.scale(&Float::with_val(prec, &c));
                }
            }
            s.rel_dist(&v.scale(&scale_f))
        })
        .fold(0.0, f64::max);
    if fit_residual > FIT_TOL {
        return Err(Error::Reconstruction(format!("inconsistent system: relative misfit {fit_residual:e}")));
    }
    if !polynomial.is_homogeneous() || polynomial.degree() != d {
        return Err(Error::Reconstruction(format!("expected a form of degree {d}")));
    }
    if !polynomial.is_symmetric() {
        return Err(Error::Reconstruction("result is not symmetric in (y0, y1, y2) and (y3, y4)".into()));
    }
    Ok(Reconstruction {
        target,
        polynomial,
        scale,
        rounding_residual,
        fit_residual,
        samples: n_samples,
        unknowns: m,
    })
}

/// Plain-text table with a header recording target and scale.
pub fn reconstruction_to_text(r: &Reconstruction) -> String {
    format!(
        "# {} = {} * {}{}, version 1\n# coeff e0 e1 e2 e3 e4\n{}",
        r.target,
        r.scale,
        r.target.form(),
        if r.target.power() == 2 { "^2" } else { "" },
        r.polynomial.to_text()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(normal_form_monomials(3).len(), 35);
        assert_eq!(normal_form_monomials(6).len(), 210 - 15);
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(rationalize(0.75, 1e-12), Some((3, 4)));
        assert_eq!(rationalize(-3.0 / 32768.0, 1e-15), Some((-3, 32768)));
        assert_eq!(rationalize(std::f64::consts::PI, 1e-15), None);
    }

    /// E4 is transcribed, so reconstructing it is a check of the method.
    #[test]
    fn reconstructs_transcribed_e4() {
        let cfg = PrecisionConfig::with_digits(30).unwrap();
        let r = reconstruct_polynomial(FiberTarget::E4, &cfg).unwrap();
        // the transcribed E4_y = 4·E4 has content 2; the reconstruction is primitive
        assert_eq!(r.scale, 2);
        assert_eq!(&r.polynomial.scale(&Rational::from(2)).unwrap(), FiberTarget::E4.polynomial());
    }
}
