use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormName {
    E4,
    E6,
    Delta,
    Chi10,
    Chi12,
}

impl FormName {
    pub fn weight(self) -> u32 {
        match self {
            FormName::E4 => 4,
            FormName::E6 => 6,
            FormName::Delta => 12,
            FormName::Chi10 => 10,
            FormName::Chi12 => 12,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FormName::E4 => "E4",
            FormName::E6 => "E6",
            FormName::Delta => "DELTA",
            FormName::Chi10 => "CHI10",
            FormName::Chi12 => "CHI12",
        }
    }
}

impl fmt::Display for FormName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FormName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "E4" => Ok(FormName::E4),
            "E6" => Ok(FormName::E6),
            "DELTA" => Ok(FormName::Delta),
            "CHI10" => Ok(FormName::Chi10),
            "CHI12" => Ok(FormName::Chi12),
            _ => Err(Error::Parse(format!("unknown form {s:?}"))),
        }
    }
}

/// A named modular form of a fixed degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FormSpec {
    name: FormName,
    degree: u8,
}

impl FormSpec {
    pub fn new(name: FormName, degree: u8) -> Result<Self> {
        let ok = match name {
            FormName::E4 | FormName::E6 => degree == 1 || degree == 2,
            FormName::Delta => degree == 1,
            FormName::Chi10 | FormName::Chi12 => degree == 2,
        };
        if !ok {
            return Err(Error::Parse(format!("{name} is not defined in degree {degree}")));
        }
        Ok(Self { name, degree })
    }

    pub fn name(&self) -> FormName {
        self.name
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn weight(&self) -> u32 {
        self.name.weight()
    }
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {}, weight {})", self.name, self.degree, self.weight())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_pairs() {
        assert!(FormSpec::new(FormName::E4, 1).is_ok());
        assert!(FormSpec::new(FormName::E6, 2).is_ok());
        assert!(FormSpec::new(FormName::Delta, 2).is_err());
        assert!(FormSpec::new(FormName::Chi10, 1).is_err());
        assert!(FormSpec::new(FormName::Chi12, 3).is_err());
    }

    #[test]
    fn weights_and_parsing() {
        let w: Vec<u32> = [FormName::E4, FormName::E6, FormName::Delta, FormName::Chi10, FormName::Chi12]
            .iter()
            .map(|f| f.weight())
            .collect();
        assert_eq!(w, [4, 6, 12, 10, 12]);
        assert_eq!("chi10".parse::<FormName>().unwrap(), FormName::Chi10);
        assert!("E8".parse::<FormName>().is_err());
    }
}
