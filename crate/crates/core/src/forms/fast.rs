//! Double-precision degree-1 forms and log-Petersson norms for quadrature inner loops.

use num_complex::Complex64;

use super::spec::FormName;
use crate::error::{Error, Result};
use crate::theta::fast::thetas1_f64;

/// `(E4, E6)(τ)` in f64.
pub fn eisenstein1_f64(tau: Complex64) -> (Complex64, Complex64) {
    let [t00, t01, t10] = thetas1_f64(tau);
    let a = t00.powi(4);
    let b = t01.powi(4);
    let c = t10.powi(4);
    let e4 = 0.5 * (a * a + b * b + c * c);
    let e6 = 0.5 * (a + b) * (a + c) * (b - c);
    (e4, e6)
}

/// `log|Δ(τ)| = −2πy + 24 Σ log|1 − qⁿ|`, without underflow at large `y`.
pub fn log_abs_delta_f64(tau: Complex64) -> f64 {
    let q = (Complex64::new(0.0, std::f64::consts::TAU) * tau).exp();
    let aq = q.norm();
    let mut s = 0.0;
    let mut qn = q;
    let mut n = 1;
    while aq.powi(n) > 1e-18 {
        s += (Complex64::new(1.0, 0.0) - qn).norm().ln();
        qn *= q;
        n += 1;
    }
    -std::f64::consts::TAU * tau.im + 24.0 * s
}

/// `log ‖f(τ)‖ = log|f(τ)| + (k/2)·log(4πy)` for a degree-1 form.
pub fn log_petersson1_f64(name: FormName, tau: Complex64) -> Result<f64> {
    let log_abs = match name {
        FormName::E4 => eisenstein1_f64(tau).0.norm().ln(),
        FormName::E6 => eisenstein1_f64(tau).1.norm().ln(),
        FormName::Delta => log_abs_delta_f64(tau),
        _ => return Err(Error::DegreeMismatch { form: name.to_string(), expected: 2, found: 1 }),
    };
    let k = name.weight() as f64;
    Ok(log_abs + 0.5 * k * (4.0 * std::f64::consts::PI * tau.im).ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::eval::degree1_values;
    use crate::numerics::PrecisionConfig;
    use crate::theta::SiegelPoint1;

    #[test]
    fn matches_high_precision() {
        let cfg = PrecisionConfig::with_digits(30).unwrap();
        for &(x, y) in &[(0.0, 1.0), (0.3, 0.95), (-0.5, 0.8660254), (0.1, 4.0)] {
            let hp = degree1_values(&SiegelPoint1::from_f64(x, y, cfg.bits()).unwrap(), &cfg);
            let tau = Complex64::new(x, y);
            let (e4, e6) = eisenstein1_f64(tau);
            assert!((e4 - hp.e4.to_c64()).norm() < 1e-13 * hp.e4.to_c64().norm().max(1.0));
            assert!((e6 - hp.e6.to_c64()).norm() < 1e-13 * hp.e6.to_c64().norm().max(1.0));
            let ld = hp.delta.to_c64().norm().ln();
            assert!((log_abs_delta_f64(tau) - ld).abs() < 1e-12);
        }
    }

    #[test]
    fn delta_log_survives_large_y() {
        let v = log_abs_delta_f64(Complex64::new(0.2, 500.0));
        assert!((v + std::f64::consts::TAU * 500.0).abs() < 1e-9);
    }
}
