//! Syzygous triples and quadruples of even genus-2 characteristics.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::theta::{even_characteristics, Characteristic};

pub const SIGN_TABLE_VERSION: u32 = 1;

fn evens() -> Vec<Characteristic> {
    even_characteristics(2).expect("genus 2 is supported")
}

fn is_syzygous(evens: &[Characteristic], idx: &[usize]) -> bool {
    let mut s = evens[idx[0]];
    for &i in &idx[1..] {
        s = s.add(&evens[i]);
    }
    s.is_even()
}

/// Syzygous triples as index triples into [`even_characteristics`]`(2)`, with optional signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    triples: Vec<[usize; 3]>,
    signs: Option<Vec<i8>>,
    version: u32,
}

/// Exhaustive scan of the 120 unordered triples of even characteristics.
pub fn enumerate_syzygous_triples() -> TripleSystem {
    let ev = evens();
    let mut triples = Vec::new();
    for i in 0..ev.len() {
        for j in i + 1..ev.len() {
            for k in j + 1..ev.len() {
                if is_syzygous(&ev, &[i, j, k]) {
                    triples.push([i, j, k]);
                }
            }
        }
    }
    TripleSystem { triples, signs: None, version: SIGN_TABLE_VERSION }
}

/// Number of unordered triples examined by [`enumerate_syzygous_triples`].
pub fn candidate_triple_count() -> usize {
    let n = evens().len();
    n * (n - 1) * (n - 2) / 6
}

impl TripleSystem {
    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn signs(&self) -> Option<&[i8]> {
        self.signs.as_deref()
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn with_signs(&self, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != self.triples.len() || signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::SignCalibration(format!(
                "need {} signs in {{+1, -1}}, got {:?}",
                self.triples.len(),
                signs
            )));
        }
        Ok(Self { triples: self.triples.clone(), signs: Some(signs), version: self.version })
    }

    /// `idx1 idx2 idx3 sign` per line, preceded by a version comment.
    pub fn to_table_text(&self) -> Result<String> {
        let signs = self
            .signs
            .as_ref()
            .ok_or_else(|| Error::SignCalibration("signs not set".into()))?;
        let mut out = format!("# E6 sign table, version {}\n", self.version);
        out.push_str("# indices into the even genus-2 characteristics in lexicographic (a, b) order\n");
        for (t, s) in self.triples.iter().zip(signs) {
            out.push_str(&format!("{} {} {} {}\n", t[0], t[1], t[2], if *s > 0 { "+1" } else { "-1" }));
        }
        Ok(out)
    }

    /// Parse the table format; triples must be exactly the syzygous ones, in enumeration order.
    pub fn from_table_text(text: &str) -> Result<Self> {
        let mut version = SIGN_TABLE_VERSION;
        let mut triples = Vec::new();
        let mut signs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("E6 sign table, version ") {
                    version = v.trim().parse().map_err(|e| Error::Parse(format!("version: {e}")))?;
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 {
                return Err(Error::Parse(format!("line {}: expected 4 fields", n + 1)));
            }
            let idx: Vec<usize> = f[..3]
                .iter()
                .map(|t| t.parse().map_err(|e| Error::Parse(format!("line {}: {e}", n + 1))))
                .collect::<Result<_>>()?;
            let s: i8 = f[3].parse().map_err(|e| Error::Parse(format!("line {}: {e}", n + 1)))?;
            triples.push([idx[0], idx[1], idx[2]]);
            signs.push(s);
        }
        let reference = enumerate_syzygous_triples();
        if triples != reference.triples {
            return Err(Error::Parse("sign table triples do not match the syzygous enumeration".into()));
        }
        let mut out = reference.with_signs(signs)?;
        out.version = version;
        Ok(out)
    }

    /// The calibrated table shipped with the crate.
    pub fn frozen() -> &'static TripleSystem {
        static FROZEN: OnceLock<TripleSystem> = OnceLock::new();
        FROZEN.get_or_init(|| {
            TripleSystem::from_table_text(include_str!("../../data/e6_signs.txt"))
                .expect("embedded sign table is well formed")
        })
    }
}

/// Complements of syzygous quadruples, as index sextets into the even characteristics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrupleComplementSystem {
    sextets: Vec<[usize; 6]>,
}

impl QuadrupleComplementSystem {
    pub fn enumerate() -> Self {
        let ev = evens();
        let n = ev.len();
        let mut sextets = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let q = [a, b, c, d];
                        let all_sub = [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
                            .iter()
                            .all(|t| is_syzygous(&ev, t));
                        if !all_sub {
                            continue;
                        }
                        let rest: Vec<usize> = (0..n).filter(|i| !q.contains(i)).collect();
                        sextets.push(rest.try_into().expect("10 - 4 = 6"));
                    }
                }
            }
        }
        Self { sextets }
    }

    pub fn sextets(&self) -> &[[usize; 6]] {
        &self.sextets
    }

    pub fn shared() -> &'static QuadrupleComplementSystem {
        static S: OnceLock<QuadrupleComplementSystem> = OnceLock::new();
        S.get_or_init(Self::enumerate)
    }
}
