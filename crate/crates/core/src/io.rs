//! Instance and packing files. Rationals are written as `"p/q"` strings.

use std::path::Path;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{verify_certificate, Certificate};
use crate::dispatch::{
    pack_square_iso_diag, pack_unit_square_eq, pack_unit_square_iso, CaseTrace, DispatchError,
    PackingResult,
};
use crate::exact::Rational;
use crate::gen::Profile;
use crate::geometry::TrianglePlacement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceFamily {
    /// Isosceles right triangles, legs parallel to the square's sides.
    IsoAxis,
    /// Isosceles right triangles, legs parallel to the square's diagonals.
    IsoDiag,
    Equilateral,
}

impl InstanceFamily {
    pub const ALL: [InstanceFamily; 3] =
        [InstanceFamily::IsoAxis, InstanceFamily::IsoDiag, InstanceFamily::Equilateral];

    pub fn name(self) -> &'static str {
        match self {
            InstanceFamily::IsoAxis => "iso_axis",
            InstanceFamily::IsoDiag => "iso_diag",
            InstanceFamily::Equilateral => "equilateral",
        }
    }

    /// Runs the matching unit-square packer.
    pub fn pack(self, sides: &[Rational]) -> Result<PackingResult, DispatchError> {
        match self {
            InstanceFamily::IsoAxis => pack_unit_square_iso(sides),
            InstanceFamily::IsoDiag => pack_square_iso_diag(sides),
            InstanceFamily::Equilateral => pack_unit_square_eq(sides),
        }
    }
}

impl std::str::FromStr for InstanceFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        InstanceFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s} (expected iso_axis, iso_diag or equilateral)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub seed: u64,
    #[serde(with = "rational_str")]
    pub density: Rational,
    pub profile: Profile,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub family: InstanceFamily,
    #[serde(with = "rational_vec_str")]
    pub sides: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<InstanceMeta>,
}

impl Instance {
    pub fn new(family: InstanceFamily, sides: Vec<Rational>) -> Self {
        Self { family, sides, meta: None }
    }

    pub fn pack(&self) -> Result<PackingFile, DispatchError> {
        let result = self.family.pack(&self.sides)?;
        Ok(PackingFile {
            instance: self.clone(),
            placements: result.placements,
            trace: result.trace,
            certificate: result.certificate,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingFile {
    pub instance: Instance,
    pub placements: Vec<TrianglePlacement>,
    pub trace: CaseTrace,
    pub certificate: Certificate,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("instance has a non-positive side: {0}")]
    NonPositiveSide(String),
    #[error("certificate does not match the placements")]
    BadCertificate,
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let inst: Instance = serde_json::from_str(text)?;
        if let Some(s) = inst.sides.iter().find(|s| !s.is_positive()) {
            return Err(IoError::NonPositiveSide(crate::exact::format_rational(s)));
        }
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances always serialize")
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Self::from_json(&read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), IoError> {
        write(path, &self.to_json())
    }
}

impl PackingFile {
    /// Parses a packing file without checking its certificate.
    pub fn from_json_unchecked(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Parses a packing file and checks its certificate against the
    /// placements.
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let file = Self::from_json_unchecked(text)?;
        if !verify_certificate(&file.certificate, &file.placements) {
            return Err(IoError::BadCertificate);
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("packings always serialize")
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Self::from_json(&read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), IoError> {
        write(path, &self.to_json())
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), IoError> {
    let mut text = text.to_string();
    text.push('\n');
    std::fs::write(path, text).map_err(|source| IoError::Write { path: path.display().to_string(), source })
}

pub(crate) mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod rational_vec_str {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        items.iter().map(|t| parse_rational(t).map_err(serde::de::Error::custom)).collect()
    }
}
