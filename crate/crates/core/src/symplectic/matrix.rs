use std::fmt;

use rand::Rng;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::Cx;
use crate::theta::{SiegelPoint1, SiegelPoint2};

pub type Mat2 = [[i64; 2]; 2];

/// Element of SL₂(ℤ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sl2Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Sl2Matrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::NotSymplectic(format!("det [[{a}, {b}], [{c}, {d}]] != 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn s() -> Self {
        Self { a: 0, b: -1, c: 1, d: 0 }
    }

    pub fn t(n: i64) -> Self {
        Self { a: 1, b: n, c: 0, d: 1 }
    }

    pub fn mul(&self, o: &Sl2Matrix) -> Sl2Matrix {
        Sl2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Sl2Matrix {
        Sl2Matrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `(aτ+b)/(cτ+d)` and the cocycle `cτ+d`.
    pub fn act(&self, tau: &SiegelPoint1) -> (SiegelPoint1, Cx) {
        let p = tau.prec() + 32;
        let t = tau.tau().with_prec(p);
        let num = {
            let mut z = t.scale_f64(self.a as f64);
            z.re += self.b;
            z
        };
        let mut den = t.scale_f64(self.c as f64);
        den.re += self.d;
        let out = num.div(&den).with_prec(tau.prec());
        let point = SiegelPoint1::new(out).expect("SL2(Z) preserves the upper half-plane");
        (point, den.with_prec(tau.prec()))
    }

    /// Random word of the given length in `S`, `T`, `T⁻¹`.
    pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> Self {
        let mut g = Self::identity();
        for _ in 0..len {
            let h = match rng.gen_range(0..3) {
                0 => Self::s(),
                1 => Self::t(1),
                _ => Self::t(-1),
            };
            g = g.mul(&h);
        }
        g
    }
}

/// Element of Sp₄(ℤ) in block form `[[A, B], [C, D]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix {
    m: [[i64; 4]; 4],
}

const J4: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]];

fn mul4(x: &[[i64; 4]; 4], y: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| x[i][k] * y[k][j]).sum();
        }
    }
    out
}

fn transpose4(x: &[[i64; 4]; 4]) -> [[i64; 4]; 4] {
    let mut out = [[0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = x[j][i];
        }
    }
    out
}

impl SymplecticMatrix {
    pub fn new(m: [[i64; 4]; 4]) -> Result<Self> {
        let lhs = mul4(&mul4(&transpose4(&m), &J4), &m);
        if lhs != J4 {
            return Err(Error::NotSymplectic(format!("{m:?}")));
        }
        Ok(Self { m })
    }

    pub fn from_blocks(a: Mat2, b: Mat2, c: Mat2, d: Mat2) -> Result<Self> {
        let mut m = [[0i64; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][j];
                m[i][j + 2] = b[i][j];
                m[i + 2][j] = c[i][j];
                m[i + 2][j + 2] = d[i][j];
            }
        }
        Self::new(m)
    }

    pub fn identity() -> Self {
        Self { m: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]] }
    }

    pub fn j() -> Self {
        Self { m: J4 }
    }

    /// `τ ↦ τ + S` for symmetric integral `S`.
    pub fn translation(s: Mat2) -> Result<Self> {
        if s[0][1] != s[1][0] {
            return Err(Error::NotSymplectic(format!("translation by non-symmetric {s:?}")));
        }
        Self::from_blocks([[1, 0], [0, 1]], s, [[0, 0], [0, 0]], [[1, 0], [0, 1]])
    }

    /// `τ ↦ Uᵗ τ U` for `U ∈ GL₂(ℤ)`.
    pub fn rotation(u: Mat2) -> Result<Self> {
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        if det.abs() != 1 {
            return Err(Error::NotSymplectic(format!("rotation by non-unimodular {u:?}")));
        }
        let ut = [[u[0][0], u[1][0]], [u[0][1], u[1][1]]];
        let uinv = [[det * u[1][1], -det * u[0][1]], [-det * u[1][0], det * u[0][0]]];
        Self::from_blocks(ut, [[0, 0], [0, 0]], [[0, 0], [0, 0]], uinv)
    }

    /// Swap of the two coordinates, `diag(τ₁, τ₂) ↦ diag(τ₂, τ₁)`.
    pub fn swap() -> Self {
        Self::rotation([[0, 1], [1, 0]]).expect("permutation matrix is unimodular")
    }

    /// SL₂(ℤ) acting on the first coordinate.
    pub fn embed_first(g: &Sl2Matrix) -> Self {
        Self::from_blocks([[g.a, 0], [0, 1]], [[g.b, 0], [0, 0]], [[g.c, 0], [0, 0]], [[g.d, 0], [0, 1]])
            .expect("embedded SL2 is symplectic")
    }

    pub fn entries(&self) -> &[[i64; 4]; 4] {
        &self.m
    }

    fn block(&self, r: usize, c: usize) -> Mat2 {
        [[self.m[r][c], self.m[r][c + 1]], [self.m[r + 1][c], self.m[r + 1][c + 1]]]
    }

    pub fn a(&self) -> Mat2 {
        self.block(0, 0)
    }

    pub fn b(&self) -> Mat2 {
        self.block(0, 2)
    }

    pub fn c(&self) -> Mat2 {
        self.block(2, 0)
    }

    pub fn d(&self) -> Mat2 {
        self.block(2, 2)
    }

    pub fn mul(&self, o: &SymplecticMatrix) -> SymplecticMatrix {
        Self { m: mul4(&self.m, &o.m) }
    }

    /// `M⁻¹ = -J Mᵗ J`.
    pub fn inverse(&self) -> SymplecticMatrix {
        let mut out = mul4(&mul4(&J4, &transpose4(&self.m)), &J4);
        for row in out.iter_mut() {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
        Self { m: out }
    }

    /// `det(Cτ + D)` only.
    pub fn cocycle(&self, tau: &SiegelPoint2) -> Cx {
        let q = affine(&self.c(), &self.d(), &tau.matrix(), tau.prec() + 32);
        det2(&q).with_prec(tau.prec())
    }

    /// `|det(Cτ + D)|` in double precision, used for candidate screening.
    pub fn cocycle_abs_f64(&self, x: &[[f64; 2]; 2], y: &[[f64; 2]; 2]) -> f64 {
        use num_complex::Complex64;
        let c = self.c();
        let d = self.d();
        let t = |i: usize, j: usize| Complex64::new(x[i][j], y[i][j]);
        let q = |i: usize, j: usize| {
            (0..2).map(|k| t(k, j) * c[i][k] as f64).sum::<Complex64>() + d[i][j] as f64
        };
        (q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0)).norm()
    }

    /// `Mτ = (Aτ+B)(Cτ+D)⁻¹` and the cocycle `det(Cτ+D)`.
    pub fn act(&self, tau: &SiegelPoint2) -> (SiegelPoint2, Cx) {
        let prec = tau.prec();
        let p = prec + 32;
        let t = tau.matrix();
        let n = affine(&self.a(), &self.b(), &t, p);
        let q = affine(&self.c(), &self.d(), &t, p);
        let det = det2(&q);
        let dinv = det.inv();
        // (Cτ+D)⁻¹ = adj / det
        let qinv = [
            [&q[1][1] * &dinv, -(&q[0][1] * &dinv)],
            [-(&q[1][0] * &dinv), &q[0][0] * &dinv],
        ];
        let mut r: [[Cx; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| Cx::zero(p)));
        for i in 0..2 {
            for j in 0..2 {
                let mut s = &n[i][0] * &qinv[0][j];
                s += &(&n[i][1] * &qinv[1][j]);
                r[i][j] = s;
            }
        }
        // symmetric in exact arithmetic; average away the rounding
        let mut off = &r[0][1] + &r[1][0];
        off.re /= 2u32;
        off.im /= 2u32;
        let out = SiegelPoint2::new(r[0][0].with_prec(prec), off.with_prec(prec), r[1][1].with_prec(prec))
            .expect("Sp4(Z) preserves the Siegel upper half-space");
        (out, det.with_prec(prec))
    }

    /// Generators used for invariance checks: three translations, `J` and two rotations.
    pub fn generators() -> Vec<SymplecticMatrix> {
        vec![
            Self::translation([[1, 0], [0, 0]]).unwrap(),
            Self::translation([[0, 0], [0, 1]]).unwrap(),
            Self::translation([[0, 1], [1, 0]]).unwrap(),
            Self::j(),
            Self::rotation([[0, 1], [1, 0]]).unwrap(),
            Self::rotation([[1, 1], [0, 1]]).unwrap(),
        ]
    }

    /// Random word in the generators and their inverses.
    pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> Self {
        let gens = Self::generators();
        let mut m = Self::identity();
        for _ in 0..len {
            let g = &gens[rng.gen_range(0..gens.len())];
            let g = if rng.gen_bool(0.5) { g.inverse() } else { *g };
            m = m.mul(&g);
        }
        m
    }

    /// The 16 entries row by row.
    pub fn to_row(&self) -> String {
        self.m.iter().flatten().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Debug for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sp4{:?}", self.m)
    }
}

/// `Xτ + Y` for integral `X`, `Y`.
fn affine(x: &Mat2, y: &Mat2, t: &[[Cx; 2]; 2], p: u32) -> [[Cx; 2]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = Cx::zero(p);
            for k in 0..2 {
                if x[i][k] != 0 {
                    s += &t[k][j].scale(&Float::with_val(p, x[i][k]));
                }
            }
            s.re += y[i][j];
            s
        })
    })
}

fn det2(q: &[[Cx; 2]; 2]) -> Cx {
    &(&q[0][0] * &q[1][1]) - &(&q[0][1] * &q[1][0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const P: u32 = 200;

    fn pt(x: [[f64; 2]; 2], y: [[f64; 2]; 2]) -> SiegelPoint2 {
        SiegelPoint2::from_f64(x, y, P).unwrap()
    }

    #[test]
    fn rejects_non_symplectic() {
        let mut m = *SymplecticMatrix::identity().entries();
        m[0][1] = 1;
        assert!(SymplecticMatrix::new(m).is_err());
        assert!(SymplecticMatrix::translation([[0, 1], [2, 0]]).is_err());
        assert!(SymplecticMatrix::rotation([[2, 0], [0, 1]]).is_err());
        assert!(Sl2Matrix::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn identity_and_j_fixed_point() {
        let tau = pt([[0.1, 0.2], [0.2, 0.3]], [[1.0, 0.1], [0.1, 2.0]]);
        let (t, c) = SymplecticMatrix::identity().act(&tau);
        assert_eq!(t, tau);
        assert!(c.rel_dist(&Cx::one(P)) == 0.0);

        let i = pt([[0.0; 2]; 2], [[1.0, 0.0], [0.0, 1.0]]);
        let (t, c) = SymplecticMatrix::j().act(&i);
        for (u, v) in [(t.t1(), i.t1()), (t.t12(), i.t12()), (t.t2(), i.t2())] {
            assert!((u - v).abs() < 1e-55);
        }
        assert!(c.rel_dist(&Cx::from_f64(-1.0, 0.0, P)) < 1e-55);
    }

    #[test]
    fn swap_exchanges_diagonal_entries() {
        let tau = pt([[0.1, 0.0], [0.0, 0.3]], [[1.0, 0.0], [0.0, 2.0]]);
        let (t, _) = SymplecticMatrix::swap().act(&tau);
        assert_eq!(t.t1(), tau.t2());
        assert_eq!(t.t2(), tau.t1());
    }

    #[test]
    fn inverse_and_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = SymplecticMatrix::random_word(&mut rng, 8);
            assert!(SymplecticMatrix::new(*m.entries()).is_ok());
            assert_eq!(m.mul(&m.inverse()), SymplecticMatrix::identity());
        }
    }

    #[test]
    fn cocycle_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let tau = pt([[0.13, -0.21], [-0.21, 0.4]], [[0.9, 0.2], [0.2, 1.3]]);
        for _ in 0..10 {
            let m1 = SymplecticMatrix::random_word(&mut rng, 5);
            let m2 = SymplecticMatrix::random_word(&mut rng, 5);
            let (t1, j1) = m1.act(&tau);
            let (_, j2) = m2.act(&t1);
            let (t12, j12) = m2.mul(&m1).act(&tau);
            assert!(j12.rel_dist(&(&j2 * &j1)) < 1e-40);
            let (direct, _) = m2.act(&t1);
            assert!((direct.t12() - t12.t12()).abs() < 1e-35);
        }
    }

    #[test]
    fn sl2_action() {
        let tau = SiegelPoint1::from_f64(0.0, 0.2, P).unwrap();
        let (t, c) = Sl2Matrix::s().act(&tau);
        assert!((t.y().to_f64() - 5.0).abs() < 1e-14);
        assert!(c.rel_dist(&Cx::from_f64(0.0, 0.2, P)) < 1e-55);
    }
}
