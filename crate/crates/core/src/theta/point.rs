use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::Cx;

/// `τ₁ = x + iy` in the upper half-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint1 {
    tau: Cx,
}

impl SiegelPoint1 {
    pub fn new(tau: Cx) -> Result<Self> {
        if !(tau.im.is_finite() && tau.re.is_finite() && tau.im > 0) {
            return Err(Error::InvalidPoint(format!("imaginary part must be positive: {tau:?}")));
        }
        Ok(Self { tau })
    }

    pub fn from_f64(x: f64, y: f64, prec: u32) -> Result<Self> {
        Self::new(Cx::from_f64(x, y, prec))
    }

    pub fn tau(&self) -> &Cx {
        &self.tau
    }

    pub fn x(&self) -> &Float {
        &self.tau.re
    }

    pub fn y(&self) -> &Float {
        &self.tau.im
    }

    pub fn prec(&self) -> u32 {
        self.tau.prec()
    }
}

/// Symmetric `τ = x + iy` with `y` positive definite, stored as `(τ₁, τ₁₂, τ₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint2 {
    t1: Cx,
    t12: Cx,
    t2: Cx,
}

impl SiegelPoint2 {
    pub fn new(t1: Cx, t12: Cx, t2: Cx) -> Result<Self> {
        let finite = [&t1, &t12, &t2].iter().all(|z| z.re.is_finite() && z.im.is_finite());
        let p = t1.prec();
        let det = Float::with_val(p, &t1.im * &t2.im) - Float::with_val(p, t12.im.square_ref());
        if !finite || !(t1.im > 0) || !(det > 0) {
            return Err(Error::InvalidPoint(format!(
                "imaginary part must be positive definite: y = [[{}, {}], [{}, {}]]",
                t1.im.to_f64(),
                t12.im.to_f64(),
                t12.im.to_f64(),
                t2.im.to_f64()
            )));
        }
        Ok(Self { t1, t12, t2 })
    }

    pub fn from_f64(x: [[f64; 2]; 2], y: [[f64; 2]; 2], prec: u32) -> Result<Self> {
        if x[0][1] != x[1][0] || y[0][1] != y[1][0] {
            return Err(Error::InvalidPoint("x and y must be symmetric".into()));
        }
        Self::new(
            Cx::from_f64(x[0][0], y[0][0], prec),
            Cx::from_f64(x[0][1], y[0][1], prec),
            Cx::from_f64(x[1][1], y[1][1], prec),
        )
    }

    pub fn diagonal(a: &SiegelPoint1, b: &SiegelPoint1) -> Self {
        let p = a.prec().max(b.prec());
        Self {
            t1: a.tau().with_prec(p),
            t12: Cx::zero(p),
            t2: b.tau().with_prec(p),
        }
    }

    pub fn t1(&self) -> &Cx {
        &self.t1
    }

    pub fn t12(&self) -> &Cx {
        &self.t12
    }

    pub fn t2(&self) -> &Cx {
        &self.t2
    }

    pub fn prec(&self) -> u32 {
        self.t1.prec()
    }

    /// True when `τ₁₂` is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        self.t12.is_zero()
    }

    pub fn matrix(&self) -> [[Cx; 2]; 2] {
        [[self.t1.clone(), self.t12.clone()], [self.t12.clone(), self.t2.clone()]]
    }

    pub fn x_f64(&self) -> [[f64; 2]; 2] {
        let o = self.t12.re.to_f64();
        [[self.t1.re.to_f64(), o], [o, self.t2.re.to_f64()]]
    }

    pub fn y_f64(&self) -> [[f64; 2]; 2] {
        let o = self.t12.im.to_f64();
        [[self.t1.im.to_f64(), o], [o, self.t2.im.to_f64()]]
    }

    pub fn det_y(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, &self.t1.im * &self.t2.im) - Float::with_val(p, self.t12.im.square_ref())
    }

    /// Smallest eigenvalue of `y`.
    pub fn lambda_min(&self) -> f64 {
        let [[a, b], [_, d]] = self.y_f64();
        let tr = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        // `tr - disc` loses digits when the eigenvalues differ a lot; use det/λ_max instead.
        let lmax = tr + disc;
        (a * d - b * b) / lmax
    }
}

/// A point of either degree.
#[derive(Clone, Debug, PartialEq)]
pub enum SiegelPoint {
    Degree1(SiegelPoint1),
    Degree2(SiegelPoint2),
}

impl SiegelPoint {
    pub fn degree(&self) -> u8 {
        match self {
            SiegelPoint::Degree1(_) => 1,
            SiegelPoint::Degree2(_) => 2,
        }
    }
}

impl From<SiegelPoint1> for SiegelPoint {
    fn from(p: SiegelPoint1) -> Self {
        SiegelPoint::Degree1(p)
    }
}

impl From<SiegelPoint2> for SiegelPoint {
    fn from(p: SiegelPoint2) -> Self {
        SiegelPoint::Degree2(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive_imaginary_parts() {
        assert!(SiegelPoint1::from_f64(0.0, 0.0, 64).is_err());
        assert!(SiegelPoint1::from_f64(0.0, -1.0, 64).is_err());
        assert!(SiegelPoint2::from_f64([[0.0; 2]; 2], [[1.0, 2.0], [2.0, 1.0]], 64).is_err());
        assert!(SiegelPoint2::from_f64([[0.0, 0.1], [0.2, 0.0]], [[1.0, 0.0], [0.0, 1.0]], 64).is_err());
        assert!(SiegelPoint2::from_f64([[0.0; 2]; 2], [[1.0, 0.5], [0.5, 1.0]], 64).is_ok());
    }

    #[test]
    fn lambda_min_of_identity_and_skewed() {
        let p = SiegelPoint2::from_f64([[0.0; 2]; 2], [[1.0, 0.0], [0.0, 1.0]], 64).unwrap();
        assert!((p.lambda_min() - 1.0).abs() < 1e-15);
        let p = SiegelPoint2::from_f64([[0.0; 2]; 2], [[2.0, 1.0], [1.0, 2.0]], 64).unwrap();
        assert!((p.lambda_min() - 1.0).abs() < 1e-15);
    }
}
