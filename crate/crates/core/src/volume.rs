//! Exact assembly of the archimedean part of the arithmetic volume of `𝒜₂`.

use rug::Rational;
use serde::Serialize;

use crate::error::Result;
use crate::numerics::{zeta_negative, Basis, ConstantCombo, PrecisionConfig};

/// `10·6·4·12`, the product of the weights of χ10, E6, E4, χ12.
pub const NORMALIZATION: u32 = 10 * 6 * 4 * 12;

/// What the finite places add; the proof only says it is a rational combination of log 2 and log 3.
pub const FINITE_CONTRIBUTION: &str = "rational multiple of log 2 and log 3, undetermined";

fn zeta_product() -> Rational {
    zeta_negative(3).expect("s = -3") * zeta_negative(1).expect("s = -1")
}

/// `2880 ζ(−3)ζ(−1) (4/3 + 2Z3 − Z1 + (6/5) log 2)`
pub fn term_a() -> ConstantCombo {
    let inner = ConstantCombo::from_terms([
        (Basis::One, Rational::from((4, 3))),
        (Basis::Z3, Rational::from(2)),
        (Basis::Z1, Rational::from(-1)),
        (Basis::Log2, Rational::from((6, 5))),
    ]);
    inner.scale(&(zeta_product() * NORMALIZATION))
}

/// `−6(1/2 + Z1) − (4/3) log 2 − (2/3) log 3`
pub fn term_b() -> ConstantCombo {
    ConstantCombo::from_terms([
        (Basis::One, Rational::from(-3)),
        (Basis::Z1, Rational::from(-6)),
        (Basis::Log2, Rational::from((-4, 3))),
        (Basis::Log3, Rational::from((-2, 3))),
    ])
}

/// `ζ(−3)ζ(−1)(17/6 + 2Z3 + 2Z1)`, the part of the main formula written without logs.
fn theorem_zeta_part() -> ConstantCombo {
    ConstantCombo::from_terms([
        (Basis::One, Rational::from((17, 6))),
        (Basis::Z3, Rational::from(2)),
        (Basis::Z1, Rational::from(2)),
    ])
    .scale(&zeta_product())
}

/// The formula at the end of the proof, with its explicit `−56/15 log 2 − 2/3 log 3`.
pub fn theorem_stated() -> ConstantCombo {
    let logs = ConstantCombo::from_terms([
        (Basis::Log2, Rational::from((-56, 15))),
        (Basis::Log3, Rational::from((-2, 3))),
    ]);
    &theorem_zeta_part() + &logs
}

/// The formula of the theorem statement with the symbolic `c₂, c₃` set to the given values.
pub fn theorem_symbolic(c2: &Rational, c3: &Rational) -> ConstantCombo {
    let logs = ConstantCombo::from_terms([(Basis::Log2, c2.clone()), (Basis::Log3, c3.clone())]);
    &theorem_zeta_part() + &logs
}

/// `ĥvol(𝒜̄₁) = ζ(−1)(Z1 + 1/2)`
pub fn a1_volume_reference() -> ConstantCombo {
    let z = zeta_negative(1).expect("s = -1");
    ConstantCombo::from_terms([(Basis::One, Rational::from(&z / 2u32)), (Basis::Z1, z)])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Discrepancy {
    pub against: String,
    pub basis: &'static str,
    pub computed: String,
    pub stated: String,
    pub difference: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericValues {
    pub term_a: f64,
    pub term_b: f64,
    pub assembled: f64,
    pub theorem_stated: f64,
    pub theorem_symbolic: f64,
    pub a1_reference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeReport {
    pub term_a: ConstantCombo,
    pub term_b: ConstantCombo,
    /// `(term_a + term_b) / 2880`
    pub assembled: ConstantCombo,
    pub normalization: u32,
    pub theorem_stated: ConstantCombo,
    /// Theorem statement with `c₂, c₃` taken from the assembly.
    pub theorem_symbolic: ConstantCombo,
    /// Coefficients of log 2 and log 3 in `assembled`.
    pub c2_c3_computed: (String, String),
    pub discrepancies: Vec<Discrepancy>,
    pub a1_reference: ConstantCombo,
    pub finite_contribution: &'static str,
    pub numeric_values: NumericValues,
}

impl VolumeReport {
    pub fn c2(&self) -> &Rational {
        self.assembled.coefficient(Basis::Log2)
    }

    pub fn c3(&self) -> &Rational {
        self.assembled.coefficient(Basis::Log3)
    }
}

/// Per-basis differences `computed − stated`, skipping agreeing coefficients.
pub fn compare(against: &str, computed: &ConstantCombo, stated: &ConstantCombo) -> Vec<Discrepancy> {
    Basis::ALL
        .iter()
        .filter(|b| computed.coefficient(**b) != stated.coefficient(**b))
        .map(|&b| Discrepancy {
            against: against.to_string(),
            basis: b.symbol(),
            computed: computed.coefficient(b).to_string(),
            stated: stated.coefficient(b).to_string(),
            difference: Rational::from(computed.coefficient(b) - stated.coefficient(b)).to_string(),
        })
        .collect()
}

pub fn assemble(cfg: &PrecisionConfig) -> Result<VolumeReport> {
    let a = term_a();
    let b = term_b();
    let assembled = (&a + &b).scale(&Rational::from((1, NORMALIZATION)));
    let c2 = assembled.coefficient(Basis::Log2).clone();
    let c3 = assembled.coefficient(Basis::Log3).clone();
    let stated = theorem_stated();
    let symbolic = theorem_symbolic(&c2, &c3);
    let a1 = a1_volume_reference();

    let mut discrepancies = compare("proof", &assembled, &stated);
    discrepancies.extend(compare("theorem", &assembled, &symbolic));

    let ev = |c: &ConstantCombo| c.eval(cfg).map(|v| v.to_f64());
    let numeric_values = NumericValues {
        term_a: ev(&a)?,
        term_b: ev(&b)?,
        assembled: ev(&assembled)?,
        theorem_stated: ev(&stated)?,
        theorem_symbolic: ev(&symbolic)?,
        a1_reference: ev(&a1)?,
    };
    Ok(VolumeReport {
        term_a: a,
        term_b: b,
        assembled,
        normalization: NORMALIZATION,
        theorem_stated: stated,
        theorem_symbolic: symbolic,
        c2_c3_computed: (c2.to_string(), c3.to_string()),
        discrepancies,
        a1_reference: a1,
        finite_contribution: FINITE_CONTRIBUTION,
        numeric_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn term_a_coefficients() {
        let a = term_a();
        assert_eq!(*a.coefficient(Basis::One), q(-8, 3));
        assert_eq!(*a.coefficient(Basis::Z3), -4);
        assert_eq!(*a.coefficient(Basis::Z1), 2);
        assert_eq!(*a.coefficient(Basis::Log2), q(-12, 5));
        assert_eq!(*a.coefficient(Basis::Log3), 0);
    }

    #[test]
    fn term_b_has_no_z3() {
        assert_eq!(*term_b().coefficient(Basis::Z3), 0);
        assert_eq!(*term_b().coefficient(Basis::Z1), -6);
    }

    #[test]
    fn assembled_coefficients() {
        let r = assemble(&PrecisionConfig::default()).unwrap();
        let c = &r.assembled;
        assert_eq!(*c.coefficient(Basis::One), q(-17, 8640));
        assert_eq!(*c.coefficient(Basis::Z1), q(-1, 720));
        assert_eq!(*c.coefficient(Basis::Z3), q(-1, 720));
        assert_eq!(*r.c2(), q(-7, 5400));
        assert_eq!(*r.c3(), q(-1, 4320));
        // 4/3 + (−3)/(2880 ζ(−3)ζ(−1)) = 17/6
        assert_eq!(*c.coefficient(Basis::One), zeta_product() * q(17, 6));
    }

    #[test]
    fn discrepancies_only_in_logs() {
        let r = assemble(&PrecisionConfig::default()).unwrap();
        let proof: Vec<_> = r.discrepancies.iter().filter(|d| d.against == "proof").map(|d| d.basis).collect();
        assert_eq!(proof, ["LOG2", "LOG3"]);
        assert!(r.discrepancies.iter().all(|d| d.against != "theorem"));
        let log2 = &r.discrepancies[0];
        assert_eq!((log2.computed.as_str(), log2.stated.as_str()), ("-7/5400", "-56/15"));
    }

    #[test]
    fn a1_reference() {
        let a1 = a1_volume_reference();
        assert_eq!(*a1.coefficient(Basis::One), q(-1, 24));
        assert_eq!(*a1.coefficient(Basis::Z1), q(-1, 12));
    }
}
