use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A class of colimit weights. Each tag carries a classification predicate
/// on presheaves and a family of conical shapes for preservation checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightClass {
    Empty,
    Absolute,
    Discrete,
    Connected,
    Finite,
    Filtered,
    Small,
}

impl WeightClass {
    pub const ALL: [WeightClass; 7] = [
        WeightClass::Empty,
        WeightClass::Absolute,
        WeightClass::Discrete,
        WeightClass::Connected,
        WeightClass::Finite,
        WeightClass::Filtered,
        WeightClass::Small,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WeightClass::Empty => "empty",
            WeightClass::Absolute => "absolute",
            WeightClass::Discrete => "discrete",
            WeightClass::Connected => "connected",
            WeightClass::Finite => "finite",
            WeightClass::Filtered => "filtered",
            WeightClass::Small => "small",
        }
    }
}

impl fmt::Display for WeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        WeightClass::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedClass(s.to_string()))
    }
}
