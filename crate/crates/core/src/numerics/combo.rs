//! Exact rational combinations of the constants appearing in the volume formula.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Float, Rational};
use serde::ser::SerializeMap;
use serde::Serialize;

use super::zeta::{zeta_negative, zeta_prime_negative};
use super::PrecisionConfig;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    One,
    /// ζ'(-1)/ζ(-1)
    Z1,
    /// ζ'(-3)/ζ(-3)
    Z3,
    Log2,
    Log3,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::One, Basis::Z1, Basis::Z3, Basis::Log2, Basis::Log3];

    pub fn symbol(self) -> &'static str {
        match self {
            Basis::One => "ONE",
            Basis::Z1 => "Z1",
            Basis::Z3 => "Z3",
            Basis::Log2 => "LOG2",
            Basis::Log3 => "LOG3",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Numeric value of the basis symbol.
    pub fn eval(self, cfg: &PrecisionConfig) -> Result<Float> {
        let p = cfg.bits();
        Ok(match self {
            Basis::One => Float::with_val(p, 1),
            Basis::Z1 => zeta_prime_negative(1, cfg)? / Float::with_val(p, &zeta_negative(1)?),
            Basis::Z3 => zeta_prime_negative(3, cfg)? / Float::with_val(p, &zeta_negative(3)?),
            Basis::Log2 => Float::with_val(p, 2).ln(),
            Basis::Log3 => Float::with_val(p, 3).ln(),
        })
    }
}

/// `Σ c_b · b` over [`Basis`], with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstantCombo {
    coeffs: [Rational; 5],
}

impl ConstantCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I, R>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Basis, R)>,
        R: Into<Rational>,
    {
        let mut c = Self::zero();
        for (b, r) in terms {
            c.coeffs[b.index()] += r.into();
        }
        c
    }

    pub fn coefficient(&self, b: Basis) -> &Rational {
        &self.coeffs[b.index()]
    }

    pub fn set(&mut self, b: Basis, r: Rational) {
        self.coeffs[b.index()] = r;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= q;
        }
        out
    }

    /// `Σ c_b · numeric(b)` at working precision.
    pub fn eval(&self, cfg: &PrecisionConfig) -> Result<Float> {
        let p = cfg.bits();
        let mut acc = Float::with_val(p, 0);
        for b in Basis::ALL {
            let c = self.coefficient(b);
            if *c != 0 {
                acc += Float::with_val(p, c) * b.eval(cfg)?;
            }
        }
        Ok(acc)
    }
}

pub fn combo_eval(c: &ConstantCombo, cfg: &PrecisionConfig) -> Result<Float> {
    c.eval(cfg)
}

impl Add<&ConstantCombo> for &ConstantCombo {
    type Output = ConstantCombo;
    fn add(self, rhs: &ConstantCombo) -> ConstantCombo {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        out
    }
}

impl Sub<&ConstantCombo> for &ConstantCombo {
    type Output = ConstantCombo;
    fn sub(self, rhs: &ConstantCombo) -> ConstantCombo {
        self + &(-rhs)
    }
}

impl Neg for &ConstantCombo {
    type Output = ConstantCombo;
    fn neg(self) -> ConstantCombo {
        self.scale(&Rational::from(-1))
    }
}

impl Mul<&ConstantCombo> for &Rational {
    type Output = ConstantCombo;
    fn mul(self, rhs: &ConstantCombo) -> ConstantCombo {
        rhs.scale(self)
    }
}

impl fmt::Display for ConstantCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in Basis::ALL {
            let c = self.coefficient(b);
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match b {
                Basis::One => write!(f, "{c}")?,
                _ => write!(f, "({c})*{}", b.symbol())?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for ConstantCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(5))?;
        for b in Basis::ALL {
            m.serialize_entry(b.symbol(), &self.coefficient(b).to_string())?;
        }
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_evaluations() {
        let cfg = PrecisionConfig::default();
        assert_eq!(ConstantCombo::zero().eval(&cfg).unwrap(), 0);
        let one = ConstantCombo::from_terms([(Basis::One, 1)]);
        assert_eq!(one.eval(&cfg).unwrap(), 1);
    }

    #[test]
    fn z1_value() {
        let cfg = PrecisionConfig::default();
        let z1 = ConstantCombo::from_terms([(Basis::Z1, 1)]).eval(&cfg).unwrap();
        assert!((z1.to_f64() - 1.985_053_724_405_411).abs() < 1e-14);
    }

    #[test]
    fn exact_arithmetic() {
        let a = ConstantCombo::from_terms([(Basis::One, Rational::from((1, 3))), (Basis::Log2, Rational::from(2))]);
        let b = ConstantCombo::from_terms([(Basis::One, Rational::from((2, 3))), (Basis::Log3, Rational::from(-1))]);
        let s = &a + &b;
        assert_eq!(*s.coefficient(Basis::One), 1);
        assert_eq!(*s.coefficient(Basis::Log2), 2);
        assert_eq!(*s.coefficient(Basis::Log3), -1);
        assert!((&s - &s).is_zero());
        let half = Rational::from((1, 2));
        assert_eq!(*(&half * &s).coefficient(Basis::Log2), 1);
    }

    #[test]
    fn display_skips_zero_terms() {
        let c = ConstantCombo::from_terms([(Basis::One, Rational::from((-17, 8640))), (Basis::Z1, Rational::from((-1, 720)))]);
        assert_eq!(c.to_string(), "-17/8640 + (-1/720)*Z1");
        assert_eq!(ConstantCombo::zero().to_string(), "0");
    }
}
