//! Double-precision genus-1 theta constants for the quadrature inner loops.

use num_complex::Complex64;

/// `(ϑ₀₀, ϑ₀₁, ϑ₁₀)(τ)` in f64 via `q = e^{πiτ}`; intended for `Im τ ≳ 0.2`.
pub fn thetas1_f64(tau: Complex64) -> [Complex64; 3] {
    let i_pi = Complex64::new(0.0, std::f64::consts::PI);
    let q = (i_pi * tau).exp();
    let q4 = (i_pi * tau * 0.25).exp();
    let y = tau.im;
    let one = Complex64::new(1.0, 0.0);
    let mut t00 = one;
    let mut t01 = one;
    let mut t10 = Complex64::new(0.0, 0.0);
    // |q|^{n²} < 1e-18 relative to the leading term
    let n_max = ((41.5 / (std::f64::consts::PI * y)).sqrt().ceil() as i64).max(2) + 1;
    for n in 1..=n_max {
        let qn2 = q.powi((n * n) as i32);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        t00 += 2.0 * qn2;
        t01 += 2.0 * sign * qn2;
    }
    for n in 0..=n_max {
        t10 += 2.0 * q.powi((n * (n + 1)) as i32);
    }
    [t00, t01, t10 * q4]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::PrecisionConfig;
    use crate::theta::{theta1, Characteristic, SiegelPoint1};

    #[test]
    fn agrees_with_high_precision() {
        let cfg = PrecisionConfig::with_digits(30).unwrap();
        for &(x, y) in &[(0.0, 1.0), (0.31, 0.87), (-0.5, 0.866), (0.2, 5.0), (0.45, 0.3)] {
            let f = thetas1_f64(Complex64::new(x, y));
            let p = SiegelPoint1::from_f64(x, y, cfg.bits()).unwrap();
            for (k, (a, b)) in [(0, 0), (0, 1), (1, 0)].into_iter().enumerate() {
                let hp = theta1(&Characteristic::genus1(a, b).unwrap(), &p, &cfg).unwrap().to_c64();
                assert!((f[k] - hp).norm() <= 1e-14 * hp.norm().max(1e-300), "{x} {y} {a}{b}");
            }
        }
    }
}
