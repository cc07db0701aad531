//! Vanishing orders of degree-1 forms at the elliptic points, by winding number.

use std::fmt;

use num_complex::Complex64;
use rug::Rational;

use super::eval::degree1_values;
use super::spec::{FormName, FormSpec};
use crate::error::{Error, Result};
use crate::numerics::PrecisionConfig;
use crate::theta::SiegelPoint1;

const START_RADIUS: f64 = 0.05;
const MAX_SHRINKS: usize = 6;
const MAX_SAMPLES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticPoint {
    /// `i`, stabilizer of order 2 in PSL₂(ℤ).
    I,
    /// `ω = e^{2πi/3}`, stabilizer of order 3.
    Omega,
}

impl EllipticPoint {
    pub fn tau(self) -> Complex64 {
        match self {
            EllipticPoint::I => Complex64::new(0.0, 1.0),
            EllipticPoint::Omega => Complex64::new(-0.5, 3f64.sqrt() / 2.0),
        }
    }

    pub fn stabilizer(self) -> u32 {
        match self {
            EllipticPoint::I => 2,
            EllipticPoint::Omega => 3,
        }
    }
}

impl fmt::Display for EllipticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EllipticPoint::I => "i",
            EllipticPoint::Omega => "omega",
        })
    }
}

/// Function-level order and the stabilizer order it is divided by on the orbifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VanishingOrder {
    pub function_order: u32,
    pub stabilizer: u32,
}

impl VanishingOrder {
    pub fn orbifold_order(&self) -> Rational {
        Rational::from((self.function_order, self.stabilizer))
    }
}

fn form_value(name: FormName, tau: &SiegelPoint1, cfg: &PrecisionConfig) -> Complex64 {
    let v = degree1_values(tau, cfg);
    match name {
        FormName::E4 => v.e4,
        FormName::E6 => v.e6,
        _ => v.delta,
    }
    .to_c64()
}

pub fn elliptic_vanishing_order(
    form: &FormSpec,
    point: EllipticPoint,
    cfg: &PrecisionConfig,
) -> Result<VanishingOrder> {
    if form.degree() != 1 {
        return Err(Error::DegreeMismatch { form: form.name().to_string(), expected: 1, found: form.degree() });
    }
    let centre = point.tau();
    let prec = cfg.bits();
    let mut radius = START_RADIUS;
    for _ in 0..=MAX_SHRINKS {
        let mut samples = 128;
        let winding = loop {
            let vals: Vec<Complex64> = (0..samples)
                .map(|k| {
                    let t = centre + Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / samples as f64);
                    let p = SiegelPoint1::from_f64(t.re, t.im, prec).expect("circle stays in the upper half-plane");
                    form_value(form.name(), &p, cfg)
                })
                .collect();
            let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if vals.iter().any(|v| v.norm() <= 1e-12 * scale) {
                break None;
            }
            let steps: Vec<f64> = (0..samples).map(|k| (vals[(k + 1) % samples] / vals[k]).arg()).collect();
            if steps.iter().all(|s| s.abs() < std::f64::consts::FRAC_PI_2) {
                break Some(steps.iter().sum::<f64>() / std::f64::consts::TAU);
            }
            if samples >= MAX_SAMPLES {
                break None;
            }
            samples *= 2;
        };
        if let Some(w) = winding {
            let order = w.round();
            if (w - order).abs() > 0.05 || order < 0.0 {
                return Err(Error::Domain(format!("winding number {w} of {} at {point} is not a non-negative integer", form.name())));
            }
            return Ok(VanishingOrder { function_order: order as u32, stabilizer: point.stabilizer() });
        }
        radius /= 2.0;
    }
    Err(Error::ZeroOnContour { point: point.to_string(), radius: radius * 2.0 })
}
