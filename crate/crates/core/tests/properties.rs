//! Randomized invariants across the modules.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Integer, Rational};
use siegel_volume::fiber::{enumerate_solutions, quartic, FiberTarget, IntegerPolynomial5};
use siegel_volume::forms::{petersson_norm, FormName, FormSpec};
use siegel_volume::numerics::{Basis, ConstantCombo, PrecisionConfig};
use siegel_volume::symplectic::{reduce2, CandidateSet, SymplecticMatrix};
use siegel_volume::theta::{theta2, Characteristic, SiegelPoint, SiegelPoint2};

fn cfg() -> PrecisionConfig {
    PrecisionConfig::with_digits(30).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..500).prop_map(|(n, d)| Rational::from((n, d)))
}

fn combo() -> impl Strategy<Value = ConstantCombo> {
    prop::array::uniform5(rational()).prop_map(|c| {
        ConstantCombo::from_terms(Basis::ALL.iter().copied().zip(c))
    })
}

/// Points with Minkowski-reduced imaginary part and `|x| ≤ 1/2`.
fn point2() -> impl Strategy<Value = SiegelPoint2> {
    (-0.5f64..0.5, -0.5f64..0.5, -0.5f64..0.5, 0.8f64..2.0, 0.0f64..1.0, 0.0f64..0.5).prop_map(
        |(x1, x12, x2, y1, t, s)| {
            let y2 = y1 + t;
            let y12 = s * y1;
            SiegelPoint2::from_f64([[x1, x12], [x12, x2]], [[y1, y12], [y12, y2]], cfg().bits()).unwrap()
        },
    )
}

fn characteristic() -> impl Strategy<Value = Characteristic> {
    (0u8..2, 0u8..2, 0u8..2, 0u8..2).prop_map(|(a1, a2, b1, b2)| Characteristic::genus2([a1, a2], [b1, b2]).unwrap())
}

fn translate(tau: &SiegelPoint2, s: [[i64; 2]; 2]) -> SiegelPoint2 {
    SymplecticMatrix::translation(s).unwrap().act(tau).0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn combo_ring_laws(x in combo(), y in combo(), q in rational()) {
        let c = cfg();
        let lhs = (&x + &y).eval(&c).unwrap();
        let rhs = x.eval(&c).unwrap() + y.eval(&c).unwrap();
        let scale = lhs.to_f64().abs().max(1.0);
        prop_assert!((lhs - rhs).abs().to_f64() < 1e-25 * scale);
        let qx = x.scale(&q);
        for b in Basis::ALL {
            prop_assert_eq!(qx.coefficient(b).clone(), Rational::from(x.coefficient(b) * &q));
        }
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn odd_characteristics_vanish_exactly(tau in point2(), ch in characteristic()) {
        let v = theta2(&ch, &tau, &cfg()).unwrap();
        if !ch.is_even() {
            prop_assert!(v.re.is_zero() && v.im.is_zero());
        }
    }

    /// θ(τ + 2E_jj) = i^{a_j} θ(τ) and θ(τ + 2(E₁₂ + E₂₁)) = (−1)^{a₁a₂} θ(τ).
    #[test]
    fn periodicity_up_to_roots_of_unity(tau in point2(), ch in characteristic()) {
        let c = cfg();
        let base = theta2(&ch, &tau, &c).unwrap();
        let (a1, a2) = (ch.a()[0] as u32, ch.a()[1] as u32);
        let cases = [([[2, 0], [0, 0]], a1), ([[0, 0], [0, 2]], a2), ([[0, 2], [2, 0]], 2 * a1 * a2)];
        for (s, k) in cases {
            let moved = theta2(&ch, &translate(&tau, s), &c).unwrap();
            let want = base.mul_i_pow(k);
            prop_assert!((&moved - &want).abs().to_f64() < 1e-25, "{} {:?}", ch.label(), s);
        }
    }

    /// Raising the working precision leaves the value unchanged up to the coarser tolerance.
    #[test]
    fn truncation_is_sound(tau in point2(), ch in characteristic()) {
        let coarse = PrecisionConfig::with_digits(20).unwrap();
        let fine = PrecisionConfig::with_digits(40).unwrap();
        let a = theta2(&ch, &tau, &coarse).unwrap();
        let b = theta2(&ch, &tau, &fine).unwrap();
        prop_assert!((&a - &b).abs().to_f64() < 10.0 * coarse.series_tolerance() * b.abs().to_f64().max(1.0));
    }

    #[test]
    fn cocycle_is_multiplicative(tau in point2(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = SymplecticMatrix::random_word(&mut rng, 3);
        let n = SymplecticMatrix::random_word(&mut rng, 3);
        let (mt, j1) = m.act(&tau);
        let (_, j2) = n.act(&mt);
        let (_, j) = n.mul(&m).act(&tau);
        prop_assert!(j.rel_dist(&(&j2 * &j1)) < 1e-10);
    }

    #[test]
    fn petersson_norms_are_invariant(tau in point2(), seed in any::<u64>(), form in 0usize..4) {
        let c = cfg();
        let name = [FormName::E4, FormName::E6, FormName::Chi10, FormName::Chi12][form];
        let f = FormSpec::new(name, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = SymplecticMatrix::random_word(&mut rng, 3);
        let moved: SiegelPoint = g.act(&tau).0.into();
        let a = petersson_norm(&f, &tau.clone().into(), &c).unwrap();
        let b = petersson_norm(&f, &moved, &c).unwrap();
        prop_assert!(((a.clone() - &b) / &a).abs().to_f64() < 1e-8);
    }

    /// Reduction does not decrease det y and lands where det y ≤ y₁y₂ ≤ 2 det y.
    #[test]
    fn reduction_raises_det_y(tau in point2(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let moved = SymplecticMatrix::random_word(&mut rng, 5).act(&tau).0;
        let r = reduce2(&moved, &CandidateSet::default(), 500).unwrap();
        let before = moved.det_y().to_f64();
        let after = r.point.det_y().to_f64();
        prop_assert!(after >= before * (1.0 - 1e-12));
        let y = r.point.y_f64();
        let prod = y[0][0] * y[1][1];
        prop_assert!(after <= prod * (1.0 + 1e-12) && prod <= 2.0 * after);
    }

    #[test]
    fn fiber_polynomials_are_symmetric_mod_p(v in prop::array::uniform5(0u64..11), swap in 0usize..4) {
        let perms = [[1, 0, 2, 3, 4], [0, 2, 1, 3, 4], [2, 1, 0, 3, 4], [0, 1, 2, 4, 3]];
        let p = perms[swap];
        let w = [v[p[0]], v[p[1]], v[p[2]], v[p[3]], v[p[4]]];
        for t in FiberTarget::ALL {
            let f = t.polynomial().mod_p(11);
            prop_assert_eq!(f.eval(&v), f.eval(&w));
        }
    }

    #[test]
    fn mod_p_reduction_commutes_with_evaluation(v in prop::array::uniform5(-20i64..20)) {
        let q: &IntegerPolynomial5 = FiberTarget::E6.polynomial();
        let exact: Integer = q.terms().map(|(e, c)| {
            let mut t = c.clone();
            for i in 0..5 {
                t *= Integer::from(v[i]).pow(e[i]);
            }
            t
        }).sum();
        for p in [3u64, 7, 13] {
            let vm = v.map(|x| x.rem_euclid(p as i64) as u64);
            let want = exact.mod_u(p as u32) as u64;
            prop_assert_eq!(q.mod_p(p).eval(&vm), want);
        }
    }
}

#[test]
fn solutions_satisfy_each_equation() {
    for p in [3u64, 5, 7] {
        let system: Vec<_> = std::iter::once(quartic())
            .chain(FiberTarget::ALL.iter().map(|t| t.polynomial().clone()))
            .map(|f| f.mod_p(p))
            .collect();
        for s in enumerate_solutions(p).unwrap() {
            for f in &system {
                assert_eq!(f.eval(&s.coords()), 0, "{s}");
            }
        }
    }
}
