//! Machine-readable report schema. The JSON layout is stable: parsing
//! an emitted report recovers every dimension exactly.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModelMeta {
    pub name: String,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ResultEntry {
    pub kind: String,
    pub degree: usize,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(rename = "harmonicBasis", skip_serializing_if = "Option::is_none")]
    pub harmonic_basis: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub verdict: String,
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub model: ModelMeta,
    pub version: String,
    #[serde(rename = "inputHash")]
    pub input_hash: String,
    pub results: Vec<ResultEntry>,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    pub fn new(name: &str, dim: usize, input_hash: String) -> Report {
        Report {
            model: ModelMeta {
                name: name.to_string(),
                dim,
            },
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_hash,
            results: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// FNV-1a 64-bit content hash, hex-encoded; input files hash to the same
/// value on every platform.
pub fn input_hash(bytes: &[u8]) -> String {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}
