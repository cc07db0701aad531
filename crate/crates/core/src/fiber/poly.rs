//! Integer polynomials in the five projective coordinates `y₀, …, y₄`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::Cx;

pub type Exponent = [u32; 5];

/// Sparse polynomial with arbitrary-precision coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntegerPolynomial5 {
    terms: BTreeMap<Exponent, Integer>,
}

fn total(e: &Exponent) -> u32 {
    e.iter().sum()
}

impl IntegerPolynomial5 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::from_terms([([0; 5], c.into())])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 5];
        e[i] = 1;
        Self::from_terms([(e, Integer::from(1))])
    }

    /// `Σ cᵢ yᵢ`
    pub fn linear(c: [i64; 5]) -> Self {
        Self::from_terms((0..5).map(|i| {
            let mut e = [0; 5];
            e[i] = 1;
            (e, Integer::from(c[i]))
        }))
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Integer)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: Integer) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_default();
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Integer)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> Integer {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(total).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|e| total(e) == d)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(1);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitute `yᵢ ↦ y_{perm[i]}`.
    pub fn permute(&self, perm: [usize; 5]) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut f = [0; 5];
            for i in 0..5 {
                f[perm[i]] += e[i];
            }
            (f, c.clone())
        }))
    }

    /// Invariance under all permutations of `(y₀, y₁, y₂)` and the swap `y₃ ↔ y₄`.
    pub fn is_symmetric(&self) -> bool {
        [[1, 0, 2, 3, 4], [0, 2, 1, 3, 4], [0, 1, 2, 4, 3]]
            .iter()
            .all(|p| self.permute(*p) == *self)
    }

    /// Remainder on division by `g`, whose coefficient at `lead` must be ±1 and whose
    /// `lead` is its leading monomial for some term order; `g` then alone is a Gröbner basis.
    pub fn remainder(&self, g: &Self, lead: Exponent) -> Result<Self> {
        let lc = g.coefficient(&lead);
        if lc != 1 && lc != -1 {
            return Err(Error::Domain(format!("leading coefficient {lc} is not a unit")));
        }
        let mut r = self.clone();
        loop {
            // the largest divisible monomial in BTreeMap order is cleared first; each step
            // replaces it by monomials of lower weight, so the loop terminates
            let hit = r
                .terms
                .iter()
                .rev()
                .find(|(e, _)| (0..5).all(|i| e[i] >= lead[i]))
                .map(|(e, c)| (*e, c.clone()));
            let Some((e, c)) = hit else { return Ok(r) };
            let mut shift = [0; 5];
            for i in 0..5 {
                shift[i] = e[i] - lead[i];
            }
            let factor = Self::from_terms([(shift, Integer::from(&c * &lc))]);
            r = &r - &(&factor * g);
        }
    }

    pub fn eval_cx(&self, y: &[Cx; 5]) -> Cx {
        let p = y[0].prec();
        let d = self.degree() as usize;
        let pw: Vec<Vec<Cx>> = y
            .iter()
            .map(|v| {
                let mut row = vec![Cx::one(p)];
                for k in 1..=d {
                    row.push(&row[k - 1] * v);
                }
                row
            })
            .collect();
        let mut acc = Cx::zero(p);
        for (e, c) in &self.terms {
            let mut m = Cx::from_real(&rug::Float::with_val(p, c));
            for i in 0..5 {
                if e[i] > 0 {
                    m = &m * &pw[i][e[i] as usize];
                }
            }
            acc += &m;
        }
        acc
    }

    /// Coefficients reduced into `[0, p)` for fast evaluation over `F_p`.
    pub fn mod_p(&self, p: u64) -> ModPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                (c.mod_u(p as u32) as u64, *e)
            })
            .filter(|(c, _)| *c != 0)
            .collect();
        ModPoly { p, degree: self.degree(), terms }
    }

    /// One `coeff e0 e1 e2 e3 e4` row per term, in exponent order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            out.push_str(&format!("{c} {} {} {} {} {}\n", e[0], e[1], e[2], e[3], e[4]));
        }
        out
    }

    /// Inverse of [`to_text`](Self::to_text); `#` comment lines and blank lines are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut out = Self::zero();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 6 {
                return Err(Error::Parse(format!("line {}: expected 6 fields, got {}", n + 1, f.len())));
            }
            let c: Integer = f[0].parse().map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
            let mut e = [0u32; 5];
            for i in 0..5 {
                e[i] = f[i + 1].parse().map_err(|err| Error::Parse(format!("line {}: {err}", n + 1)))?;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Scale by a rational that keeps all coefficients integral.
    pub fn scale(&self, q: &Rational) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let v = Rational::from(q * c);
            if *v.denom() != 1 {
                return Err(Error::Domain(format!("scaling by {q} leaves a fraction")));
            }
            out.add_term(*e, v.numer().clone());
        }
        Ok(out)
    }
}

impl fmt::Display for IntegerPolynomial5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            let abs = Integer::from(c.abs_ref());
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono: Vec<String> = (0..5)
                .filter(|&i| e[i] > 0)
                .map(|i| if e[i] == 1 { format!("y{i}") } else { format!("y{i}^{}", e[i]) })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &IntegerPolynomial5 {
    type Output = IntegerPolynomial5;
    fn add(self, rhs: Self) -> IntegerPolynomial5 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &IntegerPolynomial5 {
    type Output = IntegerPolynomial5;
    fn sub(self, rhs: Self) -> IntegerPolynomial5 {
        self + &(-rhs)
    }
}

impl Neg for &IntegerPolynomial5 {
    type Output = IntegerPolynomial5;
    fn neg(self) -> IntegerPolynomial5 {
        IntegerPolynomial5 { terms: self.terms.iter().map(|(e, c)| (*e, Integer::from(-c))).collect() }
    }
}

impl Mul for &IntegerPolynomial5 {
    type Output = IntegerPolynomial5;
    fn mul(self, rhs: Self) -> IntegerPolynomial5 {
        let mut out = IntegerPolynomial5::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut e = [0; 5];
                for i in 0..5 {
                    e[i] = a[i] + b[i];
                }
                out.add_term(e, Integer::from(ca * cb));
            }
        }
        out
    }
}

/// A polynomial with coefficients in `F_p`, `p < 2³²`.
#[derive(Clone, Debug)]
pub struct ModPoly {
    p: u64,
    degree: u32,
    terms: Vec<(u64, Exponent)>,
}

impl ModPoly {
    pub fn eval(&self, y: &[u64; 5]) -> u64 {
        let p = self.p;
        let d = self.degree as usize;
        let mut pw = [[1u64; 16]; 5];
        for i in 0..5 {
            for k in 1..=d.min(15) {
                pw[i][k] = pw[i][k - 1] * y[i] % p;
            }
        }
        let mut acc = 0u64;
        for (c, e) in &self.terms {
            let mut m = *c;
            for i in 0..5 {
                m = m * pw[i][e[i] as usize] % p;
            }
            acc = (acc + m) % p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(i: usize) -> IntegerPolynomial5 {
        IntegerPolynomial5::var(i)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let a = &y(0) + &y(1);
        let b = &y(0) - &y(1);
        let prod = &a * &b;
        assert_eq!(prod, &y(0).pow(2) - &y(1).pow(2));
        assert_eq!(prod.len(), 2);
        assert!((&prod - &prod).is_zero());
        assert_eq!(prod.degree(), 2);
        assert!(prod.is_homogeneous());
        assert!(!(&prod + &IntegerPolynomial5::constant(1)).is_homogeneous());
    }

    #[test]
    fn text_round_trip() {
        let p = &(&y(0) * &y(3)).pow(3) - &IntegerPolynomial5::linear([2, -7, 0, 0, 1]);
        let t = p.to_text();
        assert_eq!(IntegerPolynomial5::from_text(&format!("# comment\n{t}")).unwrap(), p);
        assert!(IntegerPolynomial5::from_text("1 0 0").is_err());
    }

    #[test]
    fn remainder_is_canonical() {
        // g = y3 y4 - y0²; reducing g·h + r gives r back when r has no y3·y4 terms
        let g = &(&y(3) * &y(4)) - &y(0).pow(2);
        let r = &y(1).pow(2) + &(&y(3) * &y(2));
        let h = &y(4) + &y(2);
        let f = &(&g * &h) + &r;
        assert_eq!(f.remainder(&g, [0, 0, 0, 1, 1]).unwrap(), r);
    }

    #[test]
    fn mod_p_matches_integer_eval() {
        let p = &(&y(0) * &y(1)).pow(2) - &IntegerPolynomial5::linear([3, 1, 4, 1, 5]).pow(4);
        let m = p.mod_p(7);
        let pt = [3u64, 5, 0, 6, 2];
        let v: i64 = {
            let l = 3 * 3 + 5 + 0 + 6 + 5 * 2;
            (3 * 5i64).pow(2) - (l as i64).pow(4)
        };
        assert_eq!(m.eval(&pt), v.rem_euclid(7) as u64);
    }

    #[test]
    fn display() {
        let p = &IntegerPolynomial5::linear([1, -2, 0, 0, 0]) - &IntegerPolynomial5::constant(3);
        assert_eq!(p.to_string(), "-3 - 2*y1 + y0");
    }
}
