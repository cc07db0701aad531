//! Riemann zeta at the handful of arguments the volume formula needs.
//!
//! `ζ(s)` and `ζ'(s)` for real `s > 1` come from Euler–Maclaurin summation;
//! `ζ'(-n)` for odd `n` is obtained by differentiating the functional equation.

use std::sync::OnceLock;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use super::PrecisionConfig;
use crate::error::{Error, Result};

const BERNOULLI_TABLE_LEN: usize = 402;

/// `B_0 .. B_401` (with `B_1 = -1/2`), computed once by the Akiyama–Tanigawa recurrence.
fn bernoulli_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = BERNOULLI_TABLE_LEN;
        let mut out = Vec::with_capacity(n);
        let mut a: Vec<Rational> = Vec::with_capacity(n);
        for m in 0..n {
            a.push(Rational::from((1, m as u32 + 1)));
            for j in (1..=m).rev() {
                let diff = Rational::from(&a[j - 1] - &a[j]);
                a[j - 1] = diff * Rational::from(j as u32);
            }
            out.push(a[0].clone());
        }
        // Akiyama–Tanigawa yields B_1 = +1/2.
        out[1] = Rational::from((-1, 2));
        out
    })
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table()[n].clone()
}

/// `ζ(-n)` for `n ∈ {1, 3}` as an exact rational, `-B_{n+1}/(n+1)`.
pub fn zeta_negative(n: i64) -> Result<Rational> {
    if n != 1 && n != 3 {
        return Err(Error::UnsupportedZetaArgument(n));
    }
    let b = bernoulli(n as usize + 1);
    Ok(-b / Rational::from(n + 1))
}

/// `(ζ(s), ζ'(s))` for real `s > 1`.
pub fn zeta_and_derivative(s: f64, cfg: &PrecisionConfig) -> Result<(Float, Float)> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Domain(format!("zeta_and_derivative needs s > 1, got {s}")));
    }
    let prec = cfg.internal_bits();
    let tol = cfg.series_tolerance();
    let s_f = Float::with_val(prec, s);
    let big_n = 12 + cfg.working_digits() as u64;

    let mut z = Float::new(prec);
    let mut dz = Float::new(prec);
    for n in 1..big_n {
        let ln_n = Float::with_val(prec, n).ln();
        let t = (-Float::with_val(prec, &s_f * &ln_n)).exp();
        dz -= Float::with_val(prec, &t * &ln_n);
        z += t;
    }

    let nf = Float::with_val(prec, big_n);
    let ln_nn = Float::with_val(prec, nf.ln_ref());
    let n_pow_ms = (-Float::with_val(prec, &s_f * &ln_nn)).exp();
    let n_pow_1ms = Float::with_val(prec, &n_pow_ms * &nf);
    let sm1 = Float::with_val(prec, &s_f - 1u32);

    // integral tail N^{1-s}/(s-1)
    let integral = Float::with_val(prec, &n_pow_1ms / &sm1);
    z += &integral;
    dz -= Float::with_val(prec, &integral * &ln_nn);
    dz -= Float::with_val(prec, &integral / &sm1);

    // boundary term N^{-s}/2
    let half = Float::with_val(prec, &n_pow_ms / 2u32);
    z += &half;
    dz -= Float::with_val(prec, &half * &ln_nn);

    // Σ B_{2k}/(2k)! · (s)_{2k-1} · N^{-s-2k+1}
    let inv_n2 = Float::with_val(prec, 1u32) / Float::with_val(prec, nf.square_ref());
    let mut poch = s_f.clone();
    let mut dlog_poch = Float::with_val(prec, 1u32) / &s_f;
    let mut npow = Float::with_val(prec, &n_pow_ms / &nf);
    let mut fact = Integer::from(2u32);
    let threshold = tol * 1e-3;
    let mut converged = false;
    let mut prev = f64::INFINITY;
    for k in 1..(BERNOULLI_TABLE_LEN / 2) {
        let coef = Float::with_val(prec, &bernoulli(2 * k)) / Float::with_val(prec, &fact);
        let base = Float::with_val(prec, &coef * &npow);
        let term = Float::with_val(prec, &base * &poch);
        let mut dterm = Float::with_val(prec, &dlog_poch - &ln_nn);
        dterm *= &term;
        z += &term;
        dz += &dterm;

        let mag = term.to_f64().abs().max(dterm.to_f64().abs());
        if mag < threshold {
            converged = true;
            break;
        }
        if mag > prev {
            break;
        }
        prev = mag;

        // advance: (s)_{2k-1} → (s)_{2k+1}, N^{-s-2k+1} → N^{-s-2k-1}, (2k)! → (2k+2)!
        for j in [2 * k - 1, 2 * k] {
            let sj = Float::with_val(prec, &s_f + j as u32);
            dlog_poch += Float::with_val(prec, 1u32) / &sj;
            poch *= sj;
        }
        npow *= &inv_n2;
        fact *= (2 * k as u32 + 1) * (2 * k as u32 + 2);
    }
    if !converged {
        return Err(Error::Domain(format!(
            "Euler-Maclaurin series for zeta({s}) did not reach tolerance {tol:e}"
        )));
    }
    let bits = cfg.bits();
    Ok((Float::with_val(bits, z), Float::with_val(bits, dz)))
}

/// `ζ'(-n)` for `n ∈ {1, 3}`:
/// `ζ'(-n) = ζ(-n)·(ln 2π - ψ(1+n) - ζ'(1+n)/ζ(1+n))`, the cotangent term vanishing at odd `n`.
pub fn zeta_prime_negative(n: i64, cfg: &PrecisionConfig) -> Result<Float> {
    let zn = zeta_negative(n)?;
    let prec = cfg.internal_bits();
    let (z, dz) = zeta_and_derivative((n + 1) as f64, cfg)?;

    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let mut bracket = two_pi.ln();
    // ψ(1+n) = H_n - γ
    let mut psi = -Float::with_val(prec, Constant::Euler);
    for j in 1..=n {
        psi += Float::with_val(prec, 1u32) / Float::with_val(prec, j);
    }
    bracket -= psi;
    bracket -= Float::with_val(prec, &dz / &z);
    let out = Float::with_val(prec, &zn) * bracket;
    Ok(Float::with_val(cfg.bits(), out))
}
