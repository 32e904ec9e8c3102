//! Versioned reference values, each tagged with where it comes from:
//! `published` values are quoted results, `derived` values were computed
//! independently (closed formulas or exhaustive enumeration).

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub const EMBEDDED: &str = include_str!("../data/goldens.json");
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Published,
    Derived,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Entry {
    pub name: String,
    pub origin: Origin,
    pub value: Value,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Goldens {
    pub version: u32,
    pub entries: Vec<Entry>,
}

impl Goldens {
    pub fn embedded() -> Self {
        Self::parse(EMBEDDED).expect("embedded goldens are valid")
    }

    /// Parses and validates a goldens document.
    pub fn parse(s: &str) -> Result<Self> {
        let g: Goldens = serde_json::from_str(s).map_err(|e| Error::Parse(format!("goldens: {e}")))?;
        if g.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("goldens: unsupported version {}", g.version)));
        }
        g.poincare_coeffs()?;
        g.integer("poincare_degree")?;
        g.integer("euler_characteristic")?;
        Ok(g)
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    fn require(&self, name: &str) -> Result<&Entry> {
        self.get(name)
            .ok_or_else(|| Error::Parse(format!("goldens: missing entry {name:?}")))
    }

    pub fn integer(&self, name: &str) -> Result<i64> {
        self.require(name)?
            .value
            .as_i64()
            .ok_or_else(|| Error::Parse(format!("goldens: {name:?} is not an integer")))
    }

    /// Poincaré coefficients from the leading term down.
    pub fn poincare_coeffs(&self) -> Result<Vec<i64>> {
        let bad = || Error::Parse("goldens: \"poincare_coeffs\" must be an integer array".into());
        self.require("poincare_coeffs")?
            .value
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|v| v.as_i64().ok_or_else(bad))
            .collect()
    }

    pub fn euler(&self) -> Result<i64> {
        self.integer("euler_characteristic")
    }

    pub fn x_count(&self, p: u32) -> Option<i64> {
        self.integer(&format!("x_count.{p}")).ok()
    }

    pub fn moduli_count(&self, p: u32) -> Option<i64> {
        self.integer(&format!("moduli_count.{p}")).ok()
    }
}
