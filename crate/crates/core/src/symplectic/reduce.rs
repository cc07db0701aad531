//! Reduction to the standard fundamental domains of SL₂(ℤ) and (heuristically) Sp₄(ℤ).

use rug::Float;

use super::matrix::{Mat2, Sl2Matrix, SymplecticMatrix};
use crate::error::{Error, Result};
use crate::theta::{SiegelPoint1, SiegelPoint2};

/// Reduced point, the transformation that produced it and the number of non-trivial steps.
#[derive(Clone, Debug)]
pub struct ReductionResult<P, M> {
    pub point: P,
    pub transformation: M,
    pub steps: usize,
}

pub type ReductionResult1 = ReductionResult<SiegelPoint1, Sl2Matrix>;
pub type ReductionResult2 = ReductionResult<SiegelPoint2, SymplecticMatrix>;

/// Shift `x` into `[-1/2, 1/2)`; returns the integer added.
fn centre_shift(x: &Float) -> i64 {
    let shifted = Float::with_val(x.prec(), x + 0.5f64);
    -shifted.floor().to_f64() as i64
}

/// Standard reduction into `|x| ≤ 1/2`, `|τ| ≥ 1`, with `x ∈ [-1/2, 1/2)` and `x ≤ 0` on the unit circle.
pub fn reduce1(tau: &SiegelPoint1) -> ReductionResult1 {
    let mut g = Sl2Matrix::identity();
    let mut steps = 0;
    let mut cur = tau.clone();
    loop {
        let n = centre_shift(cur.x());
        if n != 0 {
            let t = Sl2Matrix::t(n);
            cur = t.act(&cur).0;
            g = t.mul(&g);
        }
        let r2 = cur.tau().norm_sqr();
        if r2 < 1 {
            let s = Sl2Matrix::s();
            cur = s.act(&cur).0;
            g = s.mul(&g);
            steps += 1;
            continue;
        }
        if r2 == 1 && *cur.x() > 0 {
            let s = Sl2Matrix::s();
            cur = s.act(&cur).0;
            g = s.mul(&g);
            steps += 1;
            continue;
        }
        break;
    }
    ReductionResult { point: g.act(tau).0, transformation: g, steps }
}

fn quad(y: &[[f64; 2]; 2], u: &Mat2) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut s = 0.0;
            for k in 0..2 {
                for l in 0..2 {
                    s += u[k][i] as f64 * y[k][l] * u[l][j] as f64;
                }
            }
            out[i][j] = s;
        }
    }
    out
}

fn mat_mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// Lagrange–Gauss reduction: `y' = Uᵗ y U` with `y'₁ ≤ y'₂` and `0 ≤ 2y'₁₂ ≤ y'₁`.
pub fn minkowski_reduce_y(y: &[[f64; 2]; 2]) -> ([[f64; 2]; 2], Mat2) {
    let mut u: Mat2 = [[1, 0], [0, 1]];
    let mut cur = *y;
    for _ in 0..200 {
        let mut changed = false;
        if cur[0][0] > cur[1][1] {
            u = mat_mul2(&u, &[[0, 1], [1, 0]]);
            cur = quad(y, &u);
            changed = true;
        }
        if 2.0 * cur[0][1].abs() > cur[0][0] {
            let r = (cur[0][1] / cur[0][0]).round() as i64;
            u = mat_mul2(&u, &[[1, -r], [0, 1]]);
            cur = quad(y, &u);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    if cur[0][1] < 0.0 {
        u = mat_mul2(&u, &[[1, 0], [0, -1]]);
        cur = quad(y, &u);
    }
    (cur, u)
}

/// Finite set of symplectic matrices standing in for condition `|det(Cτ+D)| ≥ 1` over all of Sp₄(ℤ).
#[derive(Clone, Debug)]
pub struct CandidateSet {
    matrices: Vec<SymplecticMatrix>,
}

impl CandidateSet {
    pub fn new(matrices: Vec<SymplecticMatrix>) -> Self {
        Self { matrices }
    }

    /// `J`; `(C, D) = (I, S)` with symmetric `|S_ij| ≤ 2`; and the rank-one family
    /// `|uᵗτu + d|` for `u ∈ {e₁, e₂, e₁+e₂, e₁-e₂}`, `|d| ≤ 2`.
    pub fn default_set() -> Self {
        let mut out = vec![SymplecticMatrix::j()];
        for s1 in -2..=2 {
            for s12 in -2..=2 {
                for s2 in -2..=2 {
                    out.push(
                        SymplecticMatrix::from_blocks(
                            [[0, 0], [0, 0]],
                            [[-1, 0], [0, -1]],
                            [[1, 0], [0, 1]],
                            [[s1, s12], [s12, s2]],
                        )
                        .expect("(0, -I, I, S) is symplectic for symmetric S"),
                    );
                }
            }
        }
        let bases: [Mat2; 4] = [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 0], [1, 1]], [[1, 0], [-1, 1]]];
        for v in bases {
            let rot = SymplecticMatrix::rotation(v).expect("unimodular basis");
            for d in -2..=2 {
                let e = SymplecticMatrix::embed_first(&Sl2Matrix::new(0, -1, 1, d).expect("det 1"));
                out.push(e.mul(&rot));
            }
        }
        Self { matrices: out }
    }

    pub fn matrices(&self) -> &[SymplecticMatrix] {
        &self.matrices
    }

    /// One matrix per line, 16 integers row by row; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let vals: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1))))
                .collect::<Result<_>>()?;
            if vals.len() != 16 {
                return Err(Error::Parse(format!("line {}: expected 16 integers, got {}", lineno + 1, vals.len())));
            }
            let mut m = [[0i64; 4]; 4];
            for (k, v) in vals.into_iter().enumerate() {
                m[k / 4][k % 4] = v;
            }
            out.push(SymplecticMatrix::new(m)?);
        }
        Ok(Self { matrices: out })
    }

    pub fn to_text(&self) -> String {
        self.matrices.iter().map(|m| m.to_row() + "\n").collect()
    }
}

impl Default for CandidateSet {
    fn default() -> Self {
        Self::default_set()
    }
}

const DET_MARGIN: f64 = 1e-12;

/// Iterate Minkowski reduction of `y`, centring of `x` and the candidate inversions.
pub fn reduce2(tau: &SiegelPoint2, candidates: &CandidateSet, max_steps: usize) -> Result<ReductionResult2> {
    let mut total = SymplecticMatrix::identity();
    let mut cur = tau.clone();
    let mut steps = 0;
    let mut trace = Vec::new();
    loop {
        let (_, u) = minkowski_reduce_y(&cur.y_f64());
        if u != [[1, 0], [0, 1]] {
            let r = SymplecticMatrix::rotation(u)?;
            cur = r.act(&cur).0;
            total = r.mul(&total);
        }
        let s = [centre_shift(&cur.t1().re), centre_shift(&cur.t12().re), centre_shift(&cur.t2().re)];
        if s != [0, 0, 0] {
            let t = SymplecticMatrix::translation([[s[0], s[1]], [s[1], s[2]]])?;
            cur = t.act(&cur).0;
            total = t.mul(&total);
        }
        let (x, y) = (cur.x_f64(), cur.y_f64());
        let (best, best_abs) = candidates
            .matrices()
            .iter()
            .enumerate()
            .map(|(i, m)| (i, m.cocycle_abs_f64(&x, &y)))
            .fold((usize::MAX, f64::INFINITY), |acc, v| if v.1 < acc.1 { v } else { acc });
        if best_abs >= 1.0 - DET_MARGIN {
            break;
        }
        if steps >= max_steps {
            return Err(Error::ReductionDiverged { steps, trace });
        }
        let m = candidates.matrices()[best];
        trace.push(format!(
            "step {}: det y = {:.6e}, candidate #{best} with |det(C tau + D)| = {best_abs:.6e}",
            steps + 1,
            cur.det_y().to_f64()
        ));
        cur = m.act(&cur).0;
        total = m.mul(&total);
        steps += 1;
    }
    let point = total.act(tau).0;
    Ok(ReductionResult { point, transformation: total, steps })
}

/// Membership test for the heuristic domain, with slack `tol` on every inequality.
pub fn is_reduced2(tau: &SiegelPoint2, candidates: &CandidateSet, tol: f64) -> bool {
    let (x, y) = (tau.x_f64(), tau.y_f64());
    let minkowski = y[0][0] <= y[1][1] * (1.0 + tol) && y[0][1] >= -tol && 2.0 * y[0][1] <= y[0][0] * (1.0 + tol);
    let centred = [x[0][0], x[0][1], x[1][1]].iter().all(|v| v.abs() <= 0.5 + tol);
    let dets = candidates.matrices().iter().all(|m| m.cocycle_abs_f64(&x, &y) >= 1.0 - tol);
    minkowski && centred && dets
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const P: u32 = 200;

    #[test]
    fn reduce1_examples() {
        let r = reduce1(&SiegelPoint1::from_f64(0.5, 2.0, P).unwrap());
        assert!((r.point.x().to_f64() + 0.5).abs() < 1e-50);
        assert!((r.point.y().to_f64() - 2.0).abs() < 1e-50);

        let r = reduce1(&SiegelPoint1::from_f64(0.0, 0.2, P).unwrap());
        assert!(r.point.x().to_f64().abs() < 1e-50);
        assert!((r.point.y().to_f64() - 5.0).abs() < 1e-14);
        assert_eq!(r.steps, 1);

        let r = reduce1(&SiegelPoint1::from_f64(0.1, 1.2, P).unwrap());
        assert_eq!(r.transformation, Sl2Matrix::identity());
        assert_eq!(r.steps, 0);
    }

    #[test]
    fn reduce1_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x: f64 = rng.gen_range(-0.5..0.5);
            let y: f64 = rng.gen_range(0.9..3.0);
            let tau = reduce1(&SiegelPoint1::from_f64(x, y, P).unwrap()).point;
            let g = Sl2Matrix::random_word(&mut rng, 10);
            let moved = g.act(&tau).0;
            let back = reduce1(&moved).point;
            assert!((back.tau() - tau.tau()).abs() < 1e-40);
        }
    }

    #[test]
    fn minkowski_examples() {
        let (y, u) = minkowski_reduce_y(&[[2.0, 0.9], [0.9, 1.0]]);
        assert!(y[0][0] <= y[1][1] && 0.0 <= y[0][1] && 2.0 * y[0][1] <= y[0][0]);
        let det = (u[0][0] * u[1][1] - u[0][1] * u[1][0]).abs();
        assert_eq!(det, 1);
        let (y, u) = minkowski_reduce_y(&[[1.0, 0.0], [0.0, 2.0]]);
        assert_eq!(u, [[1, 0], [0, 1]]);
        assert_eq!(y, [[1.0, 0.0], [0.0, 2.0]]);
        let (_, u) = minkowski_reduce_y(&[[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(u, [[1, 0], [0, 1]]);
    }

    #[test]
    fn already_reduced_point_is_fixed() {
        let tau = SiegelPoint2::from_f64([[0.0; 2]; 2], [[2.0, 0.1], [0.1, 3.0]], P).unwrap();
        let r = reduce2(&tau, &CandidateSet::default(), 200).unwrap();
        assert_eq!(r.steps, 0);
        assert_eq!(r.transformation, SymplecticMatrix::identity());
    }

    #[test]
    fn near_boundary_point() {
        let tau = SiegelPoint2::from_f64([[0.1, 0.1], [0.1, 0.2]], [[1e4, 0.2], [0.2, 1.5]], P).unwrap();
        let r = reduce2(&tau, &CandidateSet::default(), 200).unwrap();
        assert!(r.steps <= 2);
        let y = r.point.y_f64();
        assert!((y[1][1] - 1e4).abs() < 1e-6);
    }

    #[test]
    fn candidate_text_round_trip() {
        let c = CandidateSet::default();
        let back = CandidateSet::from_text(&c.to_text()).unwrap();
        assert_eq!(back.matrices(), c.matrices());
        assert!(CandidateSet::from_text("1 2 3").is_err());
        assert!(CandidateSet::from_text("1 1 0 0 0 1 0 0 0 0 1 0 0 0 0 1").is_err());
    }

    #[test]
    fn diverges_with_error_when_budget_is_zero() {
        let tau = SiegelPoint2::from_f64([[0.0; 2]; 2], [[0.1, 0.0], [0.0, 0.1]], P).unwrap();
        let err = reduce2(&tau, &CandidateSet::default(), 0).unwrap_err();
        assert!(matches!(err, Error::ReductionDiverged { .. }));
    }
}
