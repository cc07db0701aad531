//! Common zeros of the fiber system over `F_p` by exhaustive search of `ℙ⁴(F_p)`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::poly::ModPoly;
use super::system::{quartic, FiberTarget};
use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 101;

/// A point of `ℙ⁴(F_p)` scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePointFp {
    p: u64,
    coords: [u64; 5],
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut base = a % p;
    let mut e = p - 2;
    let mut out = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            out = out * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    out
}

impl ProjectivePointFp {
    pub fn new(p: u64, coords: [i64; 5]) -> Result<Self> {
        check_prime(p)?;
        let mut c = coords.map(|v| v.rem_euclid(p as i64) as u64);
        let lead = c.iter().copied().find(|v| *v != 0).ok_or_else(|| {
            Error::InvalidPoint("all coordinates vanish".into())
        })?;
        let inv = inverse_mod(lead, p);
        for v in c.iter_mut() {
            *v = *v * inv % p;
        }
        Ok(Self { p, coords: c })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coords(&self) -> [u64; 5] {
        self.coords
    }

    /// `p: (y0:y1:y2:y3:y4)`
    pub fn to_line(&self) -> String {
        format!("{}: {}", self.p, self)
    }
}

impl fmt::Display for ProjectivePointFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords;
        write!(f, "({}:{}:{}:{}:{})", c[0], c[1], c[2], c[3], c[4])
    }
}

impl FromStr for ProjectivePointFp {
    type Err = Error;
    /// Parses the `p: (y0:y1:y2:y3:y4)` line format.
    fn from_str(s: &str) -> Result<Self> {
        let (p, rest) = s.split_once(':').ok_or_else(|| Error::Parse(format!("missing prime in {s:?}")))?;
        let p: u64 = p.trim().parse().map_err(|e| Error::Parse(format!("prime: {e}")))?;
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (y0:…:y4) in {s:?}")))?;
        let v: Vec<i64> = inner
            .split(':')
            .map(|t| t.trim().parse().map_err(|e| Error::Parse(format!("coordinate: {e}"))))
            .collect::<Result<_>>()?;
        let coords: [i64; 5] = v.try_into().map_err(|_| Error::Parse("expected five coordinates".into()))?;
        Self::new(p, coords)
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn check_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::PrimeTwo);
    }
    if !is_prime(p) || p > MAX_PRIME {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

/// The reductions mod `p` of the quartic, `χ10²`, `E4`, `E6`, `χ12`, in checking order.
fn system_mod_p(p: u64) -> Vec<ModPoly> {
    let mut out = vec![quartic().mod_p(p)];
    for t in [FiberTarget::Chi10Squared, FiberTarget::E4, FiberTarget::E6, FiberTarget::Chi12] {
        out.push(t.polynomial().mod_p(p));
    }
    out
}

/// All points of `ℙ⁴(F_p)` on which the whole system vanishes, in lexicographic order.
pub fn enumerate_solutions(p: u64) -> Result<Vec<ProjectivePointFp>> {
    check_prime(p)?;
    let system = system_mod_p(p);
    // one task per (position of the leading 1, value of the next coordinate)
    let tasks: Vec<(usize, u64)> = (0..5).flat_map(|lead| (0..if lead < 4 { p } else { 1 }).map(move |v| (lead, v))).collect();
    let mut found: Vec<ProjectivePointFp> = tasks
        .par_iter()
        .map(|&(lead, first)| {
            let mut out = Vec::new();
            let free = 4 - lead;
            let rest = free.saturating_sub(1) as u32;
            for idx in 0..p.pow(rest) {
                let mut c = [0u64; 5];
                c[lead] = 1;
                if lead < 4 {
                    c[lead + 1] = first;
                }
                let mut k = idx;
                for pos in (lead + 2..5).rev() {
                    c[pos] = k % p;
                    k /= p;
                }
                if system.iter().all(|f| f.eval(&c) == 0) {
                    out.push(ProjectivePointFp { p, coords: c });
                }
            }
            out
        })
        .flatten()
        .collect();
    found.sort();
    Ok(found)
}
