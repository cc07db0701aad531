//! The modular forms of degree 2 as polynomials in the coordinates `y₀, …, y₄` of `ℙ⁴`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Integer;

use super::poly::IntegerPolynomial5;
use crate::error::{Error, Result};
use crate::forms::FormName;
use crate::numerics::{Cx, PrecisionConfig};
use crate::theta::{Characteristic, SiegelPoint2, ThetaTable};

/// Fourth power of the theta constant with label `a1a2b1b2`.
fn theta4(table: &ThetaTable, label: &str) -> Cx {
    let ch = Characteristic::from_label(label).expect("static label");
    table.get(&ch).square().square()
}

/// `(ϑ⁴₀₁₁₀, ϑ⁴₀₁₀₀, ϑ⁴₀₀₀₀, −ϑ⁴₁₀₀₀ − ϑ⁴₀₁₁₀, −ϑ⁴₁₁₀₀ − ϑ⁴₀₁₁₀)` from a computed table.
pub fn y_from_table(table: &ThetaTable) -> [Cx; 5] {
    let t0110 = theta4(table, "0110");
    let y3 = -&(&theta4(table, "1000") + &t0110);
    let y4 = -&(&theta4(table, "1100") + &t0110);
    [t0110, theta4(table, "0100"), theta4(table, "0000"), y3, y4]
}

pub fn y_coordinates(tau: &SiegelPoint2, cfg: &PrecisionConfig) -> [Cx; 5] {
    y_from_table(&ThetaTable::compute(tau, cfg, false))
}

/// The ten linear forms whose product is `χ10²` and whose squares sum to `E4`.
pub fn linear_forms() -> [IntegerPolynomial5; 10] {
    [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, -1, 0, -1],
        [1, 1, 1, 1, 1],
        [0, 0, -1, -1, 0],
        [1, 0, 0, 1, 0],
        [0, -1, 0, -1, 0],
        [1, 0, 0, 0, 1],
        [0, -1, 0, 0, -1],
    ]
    .map(IntegerPolynomial5::linear)
}

/// `(y₀y₁ + y₀y₂ + y₁y₂ − y₃y₄)² − 4y₀y₁y₂(y₀ + y₁ + y₂ + y₃ + y₄)`
pub fn quartic() -> IntegerPolynomial5 {
    let y = |i| IntegerPolynomial5::var(i);
    let s = &(&(&(&y(0) * &y(1)) + &(&y(0) * &y(2))) + &(&y(1) * &y(2))) - &(&y(3) * &y(4));
    let t = &(&(&(&y(0) * &y(1)) * &y(2)) * &IntegerPolynomial5::linear([1, 1, 1, 1, 1]));
    &s.pow(2) - &(t * &IntegerPolynomial5::constant(4))
}

/// Leading monomial of the quartic for any term order that weights `y₃, y₄` heavily.
pub const QUARTIC_LEAD: [u32; 5] = [0, 0, 0, 2, 2];

pub fn e4_y() -> IntegerPolynomial5 {
    linear_forms().iter().fold(IntegerPolynomial5::zero(), |acc, l| &acc + &l.pow(2))
}

pub fn chi10_squared_y() -> IntegerPolynomial5 {
    linear_forms().iter().fold(IntegerPolynomial5::constant(1), |acc, l| &acc * l)
}

/// Forms expressed in the `y` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberTarget {
    E4,
    E6,
    Chi10Squared,
    Chi12,
}

impl FiberTarget {
    pub const ALL: [FiberTarget; 4] = [FiberTarget::E4, FiberTarget::E6, FiberTarget::Chi10Squared, FiberTarget::Chi12];

    pub fn degree(self) -> u32 {
        match self {
            FiberTarget::E4 => 2,
            FiberTarget::E6 => 3,
            FiberTarget::Chi10Squared => 10,
            FiberTarget::Chi12 => 6,
        }
    }

    pub fn form(self) -> FormName {
        match self {
            FiberTarget::E4 => FormName::E4,
            FiberTarget::E6 => FormName::E6,
            FiberTarget::Chi10Squared => FormName::Chi10,
            FiberTarget::Chi12 => FormName::Chi12,
        }
    }

    /// Power of the form that the polynomial represents.
    pub fn power(self) -> u32 {
        if self == FiberTarget::Chi10Squared {
            2
        } else {
            1
        }
    }

    /// `P(y(τ)) = scale · f(τ)^power`; the polynomials are primitive, so the scale is forced.
    pub fn scale(self) -> Integer {
        match self {
            FiberTarget::E4 | FiberTarget::E6 => Integer::from(4),
            FiberTarget::Chi10Squared => Integer::from(1) << 24,
            FiberTarget::Chi12 => Integer::from(1) << 14,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FiberTarget::E4 => "E4_y",
            FiberTarget::E6 => "E6_y",
            FiberTarget::Chi10Squared => "CHI10SQ_y",
            FiberTarget::Chi12 => "CHI12_y",
        }
    }

    /// Transcribed targets are complete in closed form; the others are reconstructed.
    pub fn is_transcribed(self) -> bool {
        matches!(self, FiberTarget::E4 | FiberTarget::Chi10Squared)
    }

    /// The polynomial: transcribed, or the frozen reconstruction.
    pub fn polynomial(self) -> &'static IntegerPolynomial5 {
        static E4: OnceLock<IntegerPolynomial5> = OnceLock::new();
        static C10: OnceLock<IntegerPolynomial5> = OnceLock::new();
        static E6: OnceLock<IntegerPolynomial5> = OnceLock::new();
        static C12: OnceLock<IntegerPolynomial5> = OnceLock::new();
        match self {
            FiberTarget::E4 => E4.get_or_init(e4_y),
            FiberTarget::Chi10Squared => C10.get_or_init(chi10_squared_y),
            FiberTarget::E6 => E6.get_or_init(|| {
                IntegerPolynomial5::from_text(include_str!("../../data/e6_y.txt")).expect("embedded table")
            }),
            FiberTarget::Chi12 => C12.get_or_init(|| {
                IntegerPolynomial5::from_text(include_str!("../../data/chi12_y.txt")).expect("embedded table")
            }),
        }
    }
}

impl fmt::Display for FiberTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FiberTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let u = s.to_ascii_uppercase();
        let u = u.strip_suffix("_Y").unwrap_or(&u);
        match u {
            "E4" => Ok(FiberTarget::E4),
            "E6" => Ok(FiberTarget::E6),
            "CHI10SQ" | "CHI10^2" => Ok(FiberTarget::Chi10Squared),
            "CHI12" => Ok(FiberTarget::Chi12),
            _ => Err(Error::Parse(format!("unknown fiber target {s:?}"))),
        }
    }
}

/// Seeded sampler of points with Minkowski-reduced imaginary part and `det y ∈ [1, 4]`.
pub struct FiberSampler {
    rng: ChaCha8Rng,
    prec: u32,
}

impl FiberSampler {
    pub fn new(seed: u64, prec: u32) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), prec }
    }

    pub fn sample(&mut self) -> SiegelPoint2 {
        loop {
            let r = &mut self.rng;
            let y1: f64 = r.gen_range(1.0..1.8);
            let y2: f64 = r.gen_range(y1..2.0);
            let y12: f64 = r.gen_range(0.0..y1 / 2.0);
            let det = y1 * y2 - y12 * y12;
            if !(1.0..=4.0).contains(&det) {
                continue;
            }
            let x = [r.gen_range(-0.5..0.5), r.gen_range(-0.5..0.5), r.gen_range(-0.5..0.5)];
            return SiegelPoint2::from_f64([[x[0], x[1]], [x[1], x[2]]], [[y1, y12], [y12, y2]], self.prec)
                .expect("positive definite by construction");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::degree2_from_table;
    use crate::forms::TripleSystem;

    #[test]
    fn transcribed_shapes() {
        let q = quartic();
        assert_eq!((q.degree(), q.is_homogeneous()), (4, true));
        assert_eq!(q.coefficient(&QUARTIC_LEAD), 1);
        assert!(q.is_symmetric());
        assert!(e4_y().is_symmetric() && chi10_squared_y().is_symmetric());
        assert_eq!(chi10_squared_y().degree(), 10);
    }

    /// The quartic vanishes on the image, and the transcribed forms match the theta formulas.
    #[test]
    fn transcribed_relations_hold() {
        let cfg = PrecisionConfig::with_digits(40).unwrap();
        let mut s = FiberSampler::new(7, cfg.bits());
        for _ in 0..20 {
            let table = ThetaTable::compute(&s.sample(), &cfg, false);
            let y = y_from_table(&table);
            let f = degree2_from_table(&table, TripleSystem::frozen());
            let scale = y.iter().map(|v| v.abs().to_f64()).fold(0.0, f64::max);
            assert!(quartic().eval_cx(&y).abs().to_f64() < 1e-30 * scale.powi(4));
            let e4 = f.e4.scale_f64(4.0);
            assert!(e4_y().eval_cx(&y).rel_dist(&e4) < 1e-30);
            let c10 = f.chi10.square().scale_f64(2f64.powi(24));
            assert!(chi10_squared_y().eval_cx(&y).rel_dist(&c10) < 1e-25);
        }
    }

    #[test]
    fn parse_targets() {
        assert_eq!("e6_y".parse::<FiberTarget>().unwrap(), FiberTarget::E6);
        assert_eq!("CHI12".parse::<FiberTarget>().unwrap(), FiberTarget::Chi12);
        assert!("E8".parse::<FiberTarget>().is_err());
    }
}
