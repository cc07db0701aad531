//! Minimal complex arithmetic over MPFR floats.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use rug::float::Constant;
use rug::Float;

#[derive(Clone, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl Cx {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Self::new(Float::with_val(prec, 1), Float::new(prec))
    }

    pub fn i(prec: u32) -> Self {
        Self::new(Float::new(prec), Float::with_val(prec, 1))
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        Self::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_real(re: &Float) -> Self {
        Self::new(re.clone(), Float::new(re.prec()))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Copy at a different precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    /// Multiply by `i^k` without rounding.
    pub fn mul_i_pow(&self, k: u32) -> Self {
        match k % 4 {
            0 => self.clone(),
            1 => Self::new(-self.im.clone(), self.re.clone()),
            2 => Self::new(-self.re.clone(), -self.im.clone()),
            _ => Self::new(self.im.clone(), -self.re.clone()),
        }
    }

    pub fn scale(&self, f: &Float) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re * f), Float::with_val(p, &self.im * f))
    }

    pub fn scale_f64(&self, f: f64) -> Self {
        let p = self.prec();
        Self::new(Float::with_val(p, &self.re * f), Float::with_val(p, &self.im * f))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut r = Float::with_val(p, self.re.square_ref());
        r += Float::with_val(p, self.im.square_ref());
        r
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn ln_abs(&self) -> Float {
        self.abs().ln()
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        Self::new(
            Float::with_val(p, &self.re / &n),
            Float::with_val(p, -Float::with_val(p, &self.im / &n)),
        )
    }

    pub fn div(&self, rhs: &Cx) -> Self {
        self * &rhs.inv()
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow_u(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Cx::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self::new(Float::with_val(p, &m * &c), Float::with_val(p, &m * &s))
    }

    /// `exp(i·pi·self)`.
    pub fn exp_i_pi(&self) -> Self {
        let p = self.prec();
        let pi = Float::with_val(p, Constant::Pi);
        let arg = Cx::new(
            Float::with_val(p, -Float::with_val(p, &self.im * &pi)),
            Float::with_val(p, &self.re * &pi),
        );
        arg.exp()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Relative distance `|self - other| / max(|self|, |other|)`, zero if both vanish.
    pub fn rel_dist(&self, other: &Cx) -> f64 {
        let d = (self - other).abs().to_f64();
        let s = self.abs().to_f64().max(other.abs().to_f64());
        if s == 0.0 {
            d
        } else {
            d / s
        }
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.20e} + {:.20e}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(
            f,
            "{} + {}i",
            self.re.to_string_radix(10, Some(digits)),
            self.im.to_string_radix(10, Some(digits))
        )
    }
}

impl Add<&Cx> for &Cx {
    type Output = Cx;
    fn add(self, rhs: &Cx) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re + &rhs.re), Float::with_val(p, &self.im + &rhs.im))
    }
}

impl Sub<&Cx> for &Cx {
    type Output = Cx;
    fn sub(self, rhs: &Cx) -> Cx {
        let p = self.prec();
        Cx::new(Float::with_val(p, &self.re - &rhs.re), Float::with_val(p, &self.im - &rhs.im))
    }
}

impl Mul<&Cx> for &Cx {
    type Output = Cx;
    fn mul(self, rhs: &Cx) -> Cx {
        let p = self.prec();
        let mut re = Float::with_val(p, &self.re * &rhs.re);
        re -= Float::with_val(p, &self.im * &rhs.im);
        let mut im = Float::with_val(p, &self.re * &rhs.im);
        im += Float::with_val(p, &self.im * &rhs.re);
        Cx::new(re, im)
    }
}

impl Neg for &Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-self.re, -self.im)
    }
}

impl AddAssign<&Cx> for Cx {
    fn add_assign(&mut self, rhs: &Cx) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Cx> for Cx {
    fn sub_assign(&mut self, rhs: &Cx) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Cx> for Cx {
    fn mul_assign(&mut self, rhs: &Cx) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    #[test]
    fn i_squared_is_minus_one() {
        let i = Cx::i(P);
        let m = &i * &i;
        assert_eq!(m.re, -1);
        assert!(m.im.is_zero());
    }

    #[test]
    fn mul_i_pow_matches_multiplication() {
        let z = Cx::from_f64(0.3, -1.7, P);
        let i = Cx::i(P);
        let mut w = z.clone();
        for k in 0..8 {
            assert!(z.mul_i_pow(k).rel_dist(&w) < 1e-55, "k={k}");
            w = &w * &i;
        }
    }

    #[test]
    fn exp_i_pi_of_one_is_minus_one() {
        let e = Cx::one(P).exp_i_pi();
        assert!((e.re.to_f64() + 1.0).abs() < 1e-50);
        assert!(e.im.to_f64().abs() < 1e-50);
    }

    #[test]
    fn inverse_and_power() {
        let z = Cx::from_f64(1.25, 0.5, P);
        let one = &z * &z.inv();
        assert!(one.rel_dist(&Cx::one(P)) < 1e-55);
        let z5 = z.pow_u(5);
        let direct = &(&(&(&z * &z) * &z) * &z) * &z;
        assert!(z5.rel_dist(&direct) < 1e-55);
        assert!(z.pow_u(0).rel_dist(&Cx::one(P)) == 0.0);
    }
}
