use std::fmt;

use crate::error::{Error, Result};

/// Theta characteristic `(a, b)` with raw 0/1 entries; the `/2` shift is applied inside the sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characteristic {
    genus: u8,
    a: [u8; 2],
    b: [u8; 2],
}

impl Characteristic {
    pub fn new(a: &[u8], b: &[u8]) -> Result<Self> {
        let g = a.len();
        if g != b.len() {
            return Err(Error::InvalidCharacteristic(format!(
                "a has length {g}, b has length {}",
                b.len()
            )));
        }
        if g == 0 || g > 2 {
            return Err(Error::UnsupportedGenus(g));
        }
        if a.iter().chain(b).any(|&v| v > 1) {
            return Err(Error::InvalidCharacteristic(format!("entries must be 0/1: a={a:?} b={b:?}")));
        }
        let mut aa = [0u8; 2];
        let mut bb = [0u8; 2];
        aa[..g].copy_from_slice(a);
        bb[..g].copy_from_slice(b);
        Ok(Self { genus: g as u8, a: aa, b: bb })
    }

    pub fn genus1(a: u8, b: u8) -> Result<Self> {
        Self::new(&[a], &[b])
    }

    pub fn genus2(a: [u8; 2], b: [u8; 2]) -> Result<Self> {
        Self::new(&a, &b)
    }

    /// Parse `"ab"` (genus 1) or `"a1a2b1b2"` (genus 2).
    pub fn from_label(label: &str) -> Result<Self> {
        let digits: Vec<u8> = label
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidCharacteristic(format!("bad label {label:?}"))),
            })
            .collect::<Result<_>>()?;
        if digits.len() % 2 != 0 {
            return Err(Error::InvalidCharacteristic(format!("bad label {label:?}")));
        }
        let g = digits.len() / 2;
        Self::new(&digits[..g], &digits[g..])
    }

    pub fn genus(&self) -> usize {
        self.genus as usize
    }

    pub fn a(&self) -> &[u8] {
        &self.a[..self.genus()]
    }

    pub fn b(&self) -> &[u8] {
        &self.b[..self.genus()]
    }

    pub fn is_even(&self) -> bool {
        let dot: u8 = self.a().iter().zip(self.b()).map(|(x, y)| x * y).sum();
        dot % 2 == 0
    }

    /// Componentwise sum mod 2.
    pub fn add(&self, other: &Characteristic) -> Characteristic {
        debug_assert_eq!(self.genus, other.genus);
        let mut out = *self;
        for i in 0..2 {
            out.a[i] ^= other.a[i];
            out.b[i] ^= other.b[i];
        }
        out
    }

    /// Bit pattern `a1 a2 b1 b2` (genus 2) or `a b` (genus 1).
    pub fn code(&self) -> usize {
        self.a().iter().chain(self.b()).fold(0usize, |acc, &d| acc * 2 + d as usize)
    }

    pub fn label(&self) -> String {
        self.a().iter().chain(self.b()).map(|d| char::from(b'0' + d)).collect()
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Even characteristics of genus `g` in lexicographic `(a, b)` order.
pub fn even_characteristics(g: usize) -> Result<Vec<Characteristic>> {
    if g == 0 || g > 2 {
        return Err(Error::UnsupportedGenus(g));
    }
    let mut out = Vec::new();
    for code in 0..(1usize << (2 * g)) {
        let bits: Vec<u8> = (0..2 * g).rev().map(|i| ((code >> i) & 1) as u8).collect();
        let ch = Characteristic::new(&bits[..g], &bits[g..])?;
        if ch.is_even() {
            out.push(ch);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let g1 = even_characteristics(1).unwrap();
        let labels: Vec<_> = g1.iter().map(|c| c.label()).collect();
        assert_eq!(labels, ["00", "01", "10"]);
        let g2 = even_characteristics(2).unwrap();
        let labels: Vec<_> = g2.iter().map(|c| c.label()).collect();
        assert_eq!(
            labels,
            ["0000", "0001", "0010", "0011", "0100", "0110", "1000", "1001", "1100", "1111"]
        );
        assert!(even_characteristics(3).is_err());
        assert!(even_characteristics(0).is_err());
    }

    #[test]
    fn labels_round_trip() {
        for code in 0..16 {
            let s = format!("{code:04b}");
            let ch = Characteristic::from_label(&s).unwrap();
            assert_eq!(ch.label(), s);
            assert_eq!(ch.code(), code);
        }
        assert!(Characteristic::from_label("012").is_err());
        assert!(Characteristic::from_label("102").is_err());
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(Characteristic::new(&[2], &[0]).is_err());
        assert!(Characteristic::new(&[0, 1], &[0]).is_err());
        assert!(matches!(Characteristic::new(&[0, 0, 0], &[0, 0, 0]), Err(Error::UnsupportedGenus(3))));
    }

    #[test]
    fn sum_is_xor() {
        let x = Characteristic::from_label("0110").unwrap();
        let y = Characteristic::from_label("1100").unwrap();
        assert_eq!(x.add(&y).label(), "1010");
        assert!(!x.add(&y).is_even());
    }
}
