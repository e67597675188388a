use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One of the eleven orbit indices, in table order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orbit {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    S10,
    Op,
}

impl Orbit {
    pub const ALL: [Orbit; 11] = [
        Orbit::S1,
        Orbit::S2,
        Orbit::S3,
        Orbit::S4,
        Orbit::S5,
        Orbit::S6,
        Orbit::S7,
        Orbit::S8,
        Orbit::S9,
        Orbit::S10,
        Orbit::Op,
    ];

    /// `"1"`..`"10"` or `"op"`.
    pub fn index_str(self) -> &'static str {
        ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "op"][self as usize]
    }

    pub fn position(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `K_C`-orbits `S_j`.
    Kc,
    /// `G_R`-orbits `S'_j`.
    Gr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    pub side: Side,
    pub orbit: Orbit,
}

impl OrbitLabel {
    pub fn kc(orbit: Orbit) -> OrbitLabel {
        OrbitLabel { side: Side::Kc, orbit }
    }

    pub fn gr(orbit: Orbit) -> OrbitLabel {
        OrbitLabel { side: Side::Gr, orbit }
    }

    pub fn dual(self) -> OrbitLabel {
        let side = match self.side {
            Side::Kc => Side::Gr,
            Side::Gr => Side::Kc,
        };
        OrbitLabel { side, ..self }
    }
}

/// `S5`, `Sop`, `S'5`, `S'op`.
impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = if self.side == Side::Gr { "'" } else { "" };
        write!(f, "S{prime}{}", self.orbit.index_str())
    }
}

impl FromStr for OrbitLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<OrbitLabel> {
        let bad = || Error::Parse(format!("not an orbit label: {s:?}"));
        let rest = s.trim().strip_prefix('S').ok_or_else(bad)?;
        let (side, idx) = match rest.strip_prefix('\'') {
            Some(r) => (Side::Gr, r),
            None => (Side::Kc, rest),
        };
        let orbit = Orbit::ALL
            .into_iter()
            .find(|o| o.index_str() == idx.to_ascii_lowercase())
            .ok_or_else(bad)?;
        Ok(OrbitLabel { side, orbit })
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OrbitLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<OrbitLabel, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
