//! Closed-form values of `∫ log‖f‖ dμ` and the numerical lower-dimensional part of term (B).

use rug::Float;
use rug::Rational;
use serde::Serialize;

use super::integrate::{integrate_a1, A1Integrand, IntegralResult, IntegrationConfig};
use crate::error::{Error, Result};
use crate::forms::{
    elliptic_vanishing_order, petersson_norm, EllipticPoint, FormName, FormSpec,
};
use crate::numerics::{zeta_negative, zeta_prime_negative, PrecisionConfig};
use crate::theta::{SiegelPoint, SiegelPoint1, SiegelPoint2};

#[derive(Clone, Debug, PartialEq)]
pub enum DivisorPoint {
    Elliptic(EllipticPoint),
    /// Any other point of `ℍ`; `log ‖Δ(τ₀)‖` must be supplied.
    Other { tau: (f64, f64), log_norm_delta: Option<f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorEntry {
    pub point: DivisorPoint,
    /// Order on the orbifold, i.e. function order divided by the stabilizer.
    pub order: Rational,
}

fn elliptic_tau(p: EllipticPoint, prec: u32) -> SiegelPoint1 {
    let t = p.tau();
    match p {
        EllipticPoint::I => SiegelPoint1::from_f64(0.0, 1.0, prec),
        EllipticPoint::Omega => {
            let y = Float::with_val(prec, 3u32).sqrt() / 2u32;
            SiegelPoint1::new(crate::numerics::Cx::new(Float::with_val(prec, t.re), y))
        }
    }
    .expect("elliptic points lie in the upper half-plane")
}

/// `log ‖Δ(τ₀)‖_Pet = log((4π)⁶ |Δ(τ₀)| y₀⁶)`.
pub fn log_norm_delta(p: EllipticPoint, cfg: &PrecisionConfig) -> Result<f64> {
    let tau: SiegelPoint = elliptic_tau(p, cfg.bits()).into();
    let n = petersson_norm(&FormSpec::new(FormName::Delta, 1)?, &tau, cfg)?;
    Ok(n.ln().to_f64())
}

/// `−k(ζ(−1)/2 + ζ′(−1)) − (1/12) Σ ord_{τ₀}(f) log‖Δ(τ₀)‖`.
pub fn rohrlich_rhs_from_divisor(weight: u32, divisor: &[DivisorEntry], cfg: &PrecisionConfig) -> Result<f64> {
    let prec = cfg.bits();
    let z = Float::with_val(prec, &zeta_negative(1)?);
    let zp = zeta_prime_negative(1, cfg)?;
    let mut out = -(Float::with_val(prec, &z / 2u32) + &zp) * weight;
    for e in divisor {
        let log_d = match &e.point {
            DivisorPoint::Elliptic(p) => log_norm_delta(*p, cfg)?,
            DivisorPoint::Other { log_norm_delta: Some(v), .. } => *v,
            DivisorPoint::Other { tau, log_norm_delta: None } => {
                return Err(Error::UnsupportedDivisor(format!(
                    "point {} + {}i needs log ||Delta|| supplied",
                    tau.0, tau.1
                )))
            }
        };
        out -= Float::with_val(prec, &e.order) / 12u32 * log_d;
    }
    Ok(out.to_f64())
}

/// Divisor of `E4` or `E6` from winding numbers at `i` and `ω`; the orders must exhaust
/// the valence `k/12`, otherwise the form has zeros elsewhere and is rejected.
pub fn elliptic_divisor(form: &FormSpec, cfg: &PrecisionConfig) -> Result<Vec<DivisorEntry>> {
    let mut out = Vec::new();
    let mut total = Rational::new();
    for p in [EllipticPoint::I, EllipticPoint::Omega] {
        let ord = elliptic_vanishing_order(form, p, cfg)?;
        if ord.function_order > 0 {
            total += ord.orbifold_order();
            out.push(DivisorEntry { point: DivisorPoint::Elliptic(p), order: ord.orbifold_order() });
        }
    }
    if total != Rational::from((form.weight(), 12)) {
        return Err(Error::UnsupportedDivisor(format!(
            "{} has zeros away from the elliptic points (elliptic orders sum to {total})",
            form.name()
        )));
    }
    Ok(out)
}

/// Right-hand side of the Rohrlich formula for `E4` or `E6` of degree 1.
pub fn rohrlich_rhs(form: &FormSpec, cfg: &PrecisionConfig) -> Result<f64> {
    if form.degree() != 1 || !matches!(form.name(), FormName::E4 | FormName::E6) {
        return Err(Error::UnsupportedDivisor(format!("{} is not a degree-1 form with f(i∞) = 1", form.name())));
    }
    let div = elliptic_divisor(form, cfg)?;
    rohrlich_rhs_from_divisor(form.weight(), &div, cfg)
}

/// Numerical value of the second line of term (B), split into its three summands.
#[derive(Clone, Debug, Serialize)]
pub struct TermBNumeric {
    pub value: f64,
    pub error_estimate: f64,
    /// `−8 ∫ log‖E6‖ dμ`
    pub h_bar_part: f64,
    /// `6·(−(1/12) log‖E4(i)‖ − ∫ log‖E4‖ dμ)`
    pub i_times_a1_part: f64,
    /// `−(1/6) log‖χ12(diag(i, ω))‖`
    pub point_part: f64,
    pub integral_e6: IntegralResult,
    pub integral_e4: IntegralResult,
}

pub fn term_b_numeric(icfg: &IntegrationConfig, cfg: &PrecisionConfig) -> Result<TermBNumeric> {
    let i6 = integrate_a1(A1Integrand::LogPetersson(FormName::E6), icfg)?;
    let i4 = integrate_a1(A1Integrand::LogPetersson(FormName::E4), icfg)?;
    let prec = cfg.bits();

    let i_pt = elliptic_tau(EllipticPoint::I, prec);
    let w_pt = elliptic_tau(EllipticPoint::Omega, prec);
    let log_e4_i = petersson_norm(&FormSpec::new(FormName::E4, 1)?, &i_pt.clone().into(), cfg)?.ln().to_f64();
    let diag: SiegelPoint = SiegelPoint2::diagonal(&i_pt, &w_pt).into();
    let log_chi12 = petersson_norm(&FormSpec::new(FormName::Chi12, 2)?, &diag, cfg)?.ln().to_f64();

    let h_bar_part = -8.0 * i6.value;
    let i_times_a1_part = 6.0 * (-log_e4_i / 12.0 - i4.value);
    let point_part = -log_chi12 / 6.0;
    Ok(TermBNumeric {
        value: h_bar_part + i_times_a1_part + point_part,
        error_estimate: 8.0 * i6.error_estimate + 6.0 * i4.error_estimate,
        h_bar_part,
        i_times_a1_part,
        point_part,
        integral_e6: i6,
        integral_e4: i4,
    })
}
