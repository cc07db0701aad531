//! Evaluation of the modular forms from theta constants, and Petersson norms.

use rug::float::Constant;
use rug::Float;

use super::spec::{FormName, FormSpec};
use super::syzygy::{QuadrupleComplementSystem, TripleSystem};
use crate::error::{Error, Result};
use crate::numerics::{Cx, PrecisionConfig};
use crate::theta::{even_characteristics, theta1_all, SiegelPoint, SiegelPoint1, SiegelPoint2, ThetaTable};

/// Degree-1 forms from `(ϑ₀₀, ϑ₀₁, ϑ₁₀)`.
#[derive(Clone, Debug)]
pub struct Degree1Values {
    pub e4: Cx,
    pub e6: Cx,
    pub delta: Cx,
}

pub fn degree1_values(tau: &SiegelPoint1, cfg: &PrecisionConfig) -> Degree1Values {
    let (th, _) = theta1_all(tau, cfg, false);
    let p = cfg.bits();
    let (t00, t01, t10) = (&th[0], &th[1], &th[2]);
    let a = t00.pow_u(4);
    let b = t01.pow_u(4);
    let c = t10.pow_u(4);
    let mut e4 = &(&a.square() + &b.square()) + &c.square();
    e4 = e4.scale_f64(0.5);
    let e6 = (&(&(&a + &b) * &(&a + &c)) * &(&b - &c)).scale_f64(0.5);
    let delta = (&(t00 * t01) * t10).pow_u(8).scale(&Float::with_val(p, 2f64.powi(-8)));
    Degree1Values { e4, e6, delta }
}

/// `q ∏ (1 - qⁿ)²⁴` with `q = e^{2πiτ}`, truncated once `|q|ⁿ` drops below the series tolerance.
pub fn delta_q_product(tau: &SiegelPoint1, cfg: &PrecisionConfig) -> Cx {
    let prec = cfg.internal_bits();
    let q = tau.tau().with_prec(prec).scale_f64(2.0).exp_i_pi();
    let abs_q = q.abs().to_f64();
    let mut prod = Cx::one(prec);
    let mut qn = q.clone();
    let one = Cx::one(prec);
    let tol = cfg.series_tolerance() * 1e-3;
    let mut n = 1u32;
    loop {
        prod = &prod * &(&one - &qn);
        if abs_q.powi(n as i32) < tol / 24.0 {
            break;
        }
        qn = &qn * &q;
        n += 1;
    }
    (&q * &prod.pow_u(24)).with_prec(cfg.bits())
}

/// Degree-2 forms at one point.
#[derive(Clone, Debug)]
pub struct Degree2Values {
    pub e4: Cx,
    pub e6: Cx,
    pub chi10: Cx,
    pub chi12: Cx,
}

impl Degree2Values {
    pub fn get(&self, name: FormName) -> Option<&Cx> {
        match name {
            FormName::E4 => Some(&self.e4),
            FormName::E6 => Some(&self.e6),
            FormName::Chi10 => Some(&self.chi10),
            FormName::Chi12 => Some(&self.chi12),
            FormName::Delta => None,
        }
    }
}

/// Fourth powers of the ten even theta constants, in [`even_characteristics`] order.
pub fn even_fourth_powers(table: &ThetaTable) -> Vec<Cx> {
    even_characteristics(2)
        .expect("genus 2")
        .iter()
        .map(|ch| table.get(ch).square().square())
        .collect()
}

/// `E6` from the fourth powers and a sign assignment.
pub fn e6_from_fourth_powers(t4: &[Cx], triples: &[[usize; 3]], signs: &[i8]) -> Cx {
    let p = t4[0].prec();
    let mut s = Cx::zero(p);
    for (t, sg) in triples.iter().zip(signs) {
        let term = &(&t4[t[0]] * &t4[t[1]]) * &t4[t[2]];
        if *sg > 0 {
            s += &term;
        } else {
            s -= &term;
        }
    }
    s.scale_f64(0.25)
}

pub fn degree2_from_table(table: &ThetaTable, signs: &TripleSystem) -> Degree2Values {
    let evens = even_characteristics(2).expect("genus 2");
    let th: Vec<Cx> = evens.iter().map(|c| table.get(c).clone()).collect();
    let p = th[0].prec();
    let t2: Vec<Cx> = th.iter().map(|t| t.square()).collect();
    let t4: Vec<Cx> = t2.iter().map(|t| t.square()).collect();

    let mut e4 = Cx::zero(p);
    for t in &t4 {
        e4 += &t.square();
    }
    let e4 = e4.scale_f64(0.25);

    let e6 = e6_from_fourth_powers(
        &t4,
        signs.triples(),
        signs.signs().expect("calibrated sign table required"),
    );

    let mut chi10 = Cx::one(p);
    for t in &t2 {
        chi10 *= t;
    }
    let chi10 = chi10.scale_f64(2f64.powi(-12));

    let mut chi12 = Cx::zero(p);
    for s in QuadrupleComplementSystem::shared().sextets() {
        let mut prod = Cx::one(p);
        for &i in s {
            prod *= &t4[i];
        }
        chi12 += &prod;
    }
    let chi12 = chi12.scale_f64(2f64.powi(-15));

    Degree2Values { e4, e6, chi10, chi12 }
}

pub fn degree2_values(tau: &SiegelPoint2, cfg: &PrecisionConfig) -> Degree2Values {
    let table = ThetaTable::compute(tau, cfg, false);
    degree2_from_table(&table, TripleSystem::frozen())
}

/// Value of `form` at `tau`.
pub fn eval(form: &FormSpec, tau: &SiegelPoint, cfg: &PrecisionConfig) -> Result<Cx> {
    check_degree(form, tau)?;
    match tau {
        SiegelPoint::Degree1(t) => {
            let v = degree1_values(t, cfg);
            Ok(match form.name() {
                FormName::E4 => v.e4,
                FormName::E6 => v.e6,
                FormName::Delta => v.delta,
                _ => unreachable!("degree checked"),
            })
        }
        SiegelPoint::Degree2(t) => {
            let v = degree2_values(t, cfg);
            Ok(v.get(form.name()).expect("degree checked").clone())
        }
    }
}

fn check_degree(form: &FormSpec, tau: &SiegelPoint) -> Result<()> {
    if form.degree() != tau.degree() {
        return Err(Error::DegreeMismatch {
            form: form.name().to_string(),
            expected: form.degree(),
            found: tau.degree(),
        });
    }
    Ok(())
}

/// `((4π)^g det y)^{k/2}` for the point's degree `g`.
pub fn petersson_factor(weight: u32, tau: &SiegelPoint, prec: u32) -> Float {
    let four_pi = Float::with_val(prec, Constant::Pi) * 4u32;
    let base = match tau {
        SiegelPoint::Degree1(t) => four_pi * t.y(),
        SiegelPoint::Degree2(t) => Float::with_val(prec, four_pi.square_ref()) * t.det_y(),
    };
    let half_k = Float::with_val(prec, weight) / 2u32;
    (base.ln() * half_k).exp()
}

/// `‖f(τ)‖ = |f(τ)|·((4π)^g det Im τ)^{k/2}`.
pub fn petersson_norm(form: &FormSpec, tau: &SiegelPoint, cfg: &PrecisionConfig) -> Result<Float> {
    let v = eval(form, tau, cfg)?;
    Ok(v.abs() * petersson_factor(form.weight(), tau, cfg.bits()))
}
