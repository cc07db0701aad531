//! Lattice sums for theta constants.
//!
//! Both genera are summed over `m = 2n + a`, so that the term for `(a, b)` is
//! `exp(πi mᵗτm / 4) · i^{m·b}`; one pass over the lattice produces every characteristic.

use std::f64::consts::PI;

use rug::float::Constant;
use rug::Float;

use super::{Characteristic, SiegelPoint1, SiegelPoint2};
use crate::error::{Error, Result};
use crate::numerics::{Cx, PrecisionConfig};

/// Guard factor between the requested tolerance and the tail bound actually enforced.
const TAIL_GUARD: f64 = 1e-2;

/// Smallest `K` such that the shells `|m|∞ > K` contribute less than `tol`,
/// given `|term| ≤ exp(-decay·|m|²)` and optionally the derivative weight `π|m|²/4`.
pub(crate) fn shell_radius(decay: f64, tol: f64, genus: usize, deriv: bool) -> i64 {
    assert!(decay > 0.0, "decay must be positive");
    let log_term = |k: f64| {
        let count = if genus == 1 { 2.0 } else { 8.0 * k };
        let w = if deriv { PI * k * k / 4.0 } else { 1.0 };
        (count * w).ln() - decay * k * k
    };
    let log_tol = tol.ln();
    let mut k0: i64 = 0;
    loop {
        // Tail from k0+1 on; terms past the peak of k·exp(-decay k²) fall faster than geometrically.
        let mut tail = f64::NEG_INFINITY;
        let mut k = k0 + 1;
        loop {
            let lt = log_term(k as f64);
            tail = log_add(tail, lt);
            if lt < tail - 40.0 && (k as f64) * (k as f64) * decay > 2.0 {
                break;
            }
            k += 1;
        }
        if tail < log_tol {
            return k0.max(1);
        }
        k0 += 1;
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `acc += i^k · e`.
#[inline]
fn add_rotated(acc: &mut Cx, e: &Cx, k: i64) {
    match k.rem_euclid(4) {
        0 => {
            acc.re += &e.re;
            acc.im += &e.im;
        }
        1 => {
            acc.re -= &e.im;
            acc.im += &e.re;
        }
        2 => {
            acc.re -= &e.re;
            acc.im -= &e.im;
        }
        _ => {
            acc.re += &e.im;
            acc.im -= &e.re;
        }
    }
}

fn genus_check(ch: &Characteristic, g: usize) -> Result<()> {
    if ch.genus() != g {
        return Err(Error::InvalidCharacteristic(format!(
            "characteristic {ch} has genus {}, expected {g}",
            ch.genus()
        )));
    }
    Ok(())
}

/// All four genus-1 theta constants (indexed `2a + b`) and, optionally, their `τ`-derivatives.
pub(crate) fn theta1_all(tau: &SiegelPoint1, cfg: &PrecisionConfig, deriv: bool) -> ([Cx; 4], Option<[Cx; 4]>) {
    let prec = cfg.internal_bits();
    let t = tau.tau().with_prec(prec);
    let y = t.im.to_f64();
    let k_max = shell_radius(PI * y / 4.0, cfg.series_tolerance() * TAIL_GUARD, 1, deriv);

    let mut acc: [Cx; 4] = std::array::from_fn(|_| Cx::zero(prec));
    let mut dacc: [Cx; 4] = std::array::from_fn(|_| Cx::zero(prec));
    for k in 0..=k_max {
        let e = t.scale_f64((k * k) as f64 / 4.0).exp_i_pi();
        let a = (k % 2) as usize;
        let ms: &[i64] = if k == 0 { &[0] } else { &[-k, k] };
        for &m in ms {
            for b in 0..2usize {
                let code = 2 * a + b;
                add_rotated(&mut acc[code], &e, m * b as i64);
                if deriv {
                    let mut w = e.clone();
                    w.re *= (k * k) as u32;
                    w.im *= (k * k) as u32;
                    add_rotated(&mut dacc[code], &w, m * b as i64);
                }
            }
        }
    }
    let bits = cfg.bits();
    acc[3] = Cx::zero(prec);
    let values = acc.map(|z| z.with_prec(bits));
    let derivs = deriv.then(|| {
        // d/dτ of exp(πi m²τ/4) is (πi/4)·m²·exp(...)
        let pi4 = Float::with_val(prec, Constant::Pi) / 4u32;
        dacc[3] = Cx::zero(prec);
        dacc.map(|z| z.scale(&pi4).mul_i_pow(1).with_prec(bits))
    });
    (values, derivs)
}

/// `ϑ_{a,b}(τ₁)` for a genus-1 characteristic.
pub fn theta1(ch: &Characteristic, tau: &SiegelPoint1, cfg: &PrecisionConfig) -> Result<Cx> {
    genus_check(ch, 1)?;
    if !ch.is_even() {
        return Ok(Cx::zero(cfg.bits()));
    }
    Ok(theta1_all(tau, cfg, false).0[ch.code()].clone())
}

/// All sixteen genus-2 theta constants at one point, indexed by the code `a1 a2 b1 b2`.
#[derive(Clone, Debug)]
pub struct ThetaTable {
    values: Vec<Cx>,
    dx1: Option<Vec<Cx>>,
}

impl ThetaTable {
    pub fn compute(tau: &SiegelPoint2, cfg: &PrecisionConfig, with_dx1: bool) -> Self {
        if tau.is_diagonal() {
            return Self::diagonal(tau, cfg, with_dx1);
        }
        let prec = cfg.internal_bits();
        let t1 = tau.t1().with_prec(prec);
        let t12 = tau.t12().with_prec(prec);
        let t2 = tau.t2().with_prec(prec);
        let lambda = tau.lambda_min();
        let k_max = shell_radius(PI * lambda / 4.0, cfg.series_tolerance() * TAIL_GUARD, 2, with_dx1);

        let p1: Vec<Cx> = (0..=k_max).map(|k| t1.scale_f64((k * k) as f64 / 4.0).exp_i_pi()).collect();
        let p2: Vec<Cx> = (0..=k_max).map(|k| t2.scale_f64((k * k) as f64 / 4.0).exp_i_pi()).collect();
        let w = t12.scale_f64(0.5).exp_i_pi();
        let w_inv = w.inv();
        let kk = (k_max * k_max) as usize;
        let mut wpos = Vec::with_capacity(kk + 1);
        let mut wneg = Vec::with_capacity(kk + 1);
        wpos.push(Cx::one(prec));
        wneg.push(Cx::one(prec));
        for j in 1..=kk {
            wpos.push(&wpos[j - 1] * &w);
            wneg.push(&wneg[j - 1] * &w_inv);
        }

        let even: Vec<bool> = (0..16).map(|c| is_even_code(c)).collect();
        let mut acc: Vec<Cx> = (0..16).map(|_| Cx::zero(prec)).collect();
        let mut dacc: Vec<Cx> = if with_dx1 { (0..16).map(|_| Cx::zero(prec)).collect() } else { Vec::new() };
        for k in 0..=k_max {
            for m1 in -k..=k {
                for m2 in -k..=k {
                    if m1.abs().max(m2.abs()) != k {
                        continue;
                    }
                    let j = m1 * m2;
                    let wp = if j >= 0 { &wpos[j as usize] } else { &wneg[(-j) as usize] };
                    let e = &(&p1[m1.unsigned_abs() as usize] * &p2[m2.unsigned_abs() as usize]) * wp;
                    let a_code = (m1.rem_euclid(2) * 8 + m2.rem_euclid(2) * 4) as usize;
                    let weighted = with_dx1.then(|| {
                        let mut w = e.clone();
                        let s = (m1 * m1) as u32;
                        w.re *= s;
                        w.im *= s;
                        w
                    });
                    for b1 in 0..2i64 {
                        for b2 in 0..2i64 {
                            let code = a_code + (b1 * 2 + b2) as usize;
                            if !even[code] {
                                continue;
                            }
                            let phase = m1 * b1 + m2 * b2;
                            add_rotated(&mut acc[code], &e, phase);
                            if let Some(wt) = &weighted {
                                add_rotated(&mut dacc[code], wt, phase);
                            }
                        }
                    }
                }
            }
        }
        let bits = cfg.bits();
        let values = acc.into_iter().map(|z| z.with_prec(bits)).collect();
        let dx1 = with_dx1.then(|| {
            let pi4 = Float::with_val(prec, Constant::Pi) / 4u32;
            dacc.into_iter().map(|z| z.scale(&pi4).mul_i_pow(1).with_prec(bits)).collect()
        });
        Self { values, dx1 }
    }

    fn diagonal(tau: &SiegelPoint2, cfg: &PrecisionConfig, with_dx1: bool) -> Self {
        let s1 = SiegelPoint1::new(tau.t1().clone()).expect("diagonal entries of a point of H2 lie in H1");
        let s2 = SiegelPoint1::new(tau.t2().clone()).expect("diagonal entries of a point of H2 lie in H1");
        let (v1, d1) = theta1_all(&s1, cfg, with_dx1);
        let (v2, _) = theta1_all(&s2, cfg, false);
        let mut values = Vec::with_capacity(16);
        let mut dx1 = Vec::with_capacity(16);
        for code in 0..16usize {
            let (a1, a2, b1, b2) = ((code >> 3) & 1, (code >> 2) & 1, (code >> 1) & 1, code & 1);
            let f1 = 2 * a1 + b1;
            let f2 = 2 * a2 + b2;
            values.push(&v1[f1] * &v2[f2]);
            if let Some(d) = &d1 {
                dx1.push(&d[f1] * &v2[f2]);
            }
        }
        Self { values, dx1: with_dx1.then_some(dx1) }
    }

    pub fn get(&self, ch: &Characteristic) -> &Cx {
        &self.values[ch.code()]
    }

    pub fn by_code(&self, code: usize) -> &Cx {
        &self.values[code]
    }

    pub fn dx1(&self, ch: &Characteristic) -> Option<&Cx> {
        self.dx1.as_ref().map(|d| &d[ch.code()])
    }
}

pub(crate) fn is_even_code(code: usize) -> bool {
    let a = (code >> 2) & 3;
    let b = code & 3;
    (a & b).count_ones() % 2 == 0
}

/// `ϑ_{a,b}(τ)` for a genus-2 characteristic.
pub fn theta2(ch: &Characteristic, tau: &SiegelPoint2, cfg: &PrecisionConfig) -> Result<Cx> {
    genus_check(ch, 2)?;
    if !ch.is_even() {
        return Ok(Cx::zero(cfg.bits()));
    }
    Ok(ThetaTable::compute(tau, cfg, false).get(ch).clone())
}

/// `∂ϑ_{a,b}/∂x₁` at `τ`, from the termwise differentiated series.
pub fn theta2_dx1(ch: &Characteristic, tau: &SiegelPoint2, cfg: &PrecisionConfig) -> Result<Cx> {
    genus_check(ch, 2)?;
    if !ch.is_even() {
        return Ok(Cx::zero(cfg.bits()));
    }
    let t = ThetaTable::compute(tau, cfg, true);
    Ok(t.dx1(ch).expect("derivative requested").clone())
}
