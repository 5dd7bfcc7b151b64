//! JSON interchange format for finite ortholattices.
//!
//! ```json
//! {
//!   "elements": ["0", "a", "a'", "1"],
//!   "leq": [["0", "a"], ["a", "1"]],
//!   "ortho": { "0": "1", "a": "a'", "a'": "a", "1": "0" },
//!   "bottom": "0",
//!   "top": "1"
//! }
//! ```
//!
//! `leq` may list any generating set of order pairs (covers suffice); the
//! loader computes the reflexive–transitive closure before validating.
//! `ortho` must map every element to its complement. Files written by
//! [`write_oml_string`] contain the full closed relation in declaration
//! order, so saving and reloading reproduces the lattice exactly.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FiniteOml, OmlViolation, RawOml};

#[derive(Serialize, Deserialize)]
struct OmlDoc {
    elements: Vec<String>,
    leq: Vec<(String, String)>,
    ortho: BTreeMap<String, String>,
    bottom: String,
    top: String,
}

/// Why a lattice file could not be turned into a [`FiniteOml`].
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read lattice file")]
    Io(#[from] std::io::Error),
    #[error("cannot parse lattice file")]
    Json(#[from] serde_json::Error),
    /// The file parsed but the described structure breaks a lattice law
    /// (or is malformed at the name level).
    #[error(transparent)]
    Invalid(#[from] OmlViolation),
}

impl LoadError {
    /// True for I/O, JSON and name-level problems — the file itself is
    /// unusable, as opposed to describing a structure that fails a law.
    pub fn is_malformed(&self) -> bool {
        match self {
            LoadError::Io(_) | LoadError::Json(_) => true,
            LoadError::Invalid(v) => matches!(v, OmlViolation::Malformed { .. }),
        }
    }
}

/// Parse the JSON text of a lattice file into a closed [`RawOml`].
pub fn parse_oml(text: &str) -> Result<RawOml, LoadError> {
    let doc: OmlDoc = serde_json::from_str(text)?;
    // Emit complement pairs in declaration order, rejecting names the map
    // invents; totality is checked by validation.
    let mut ortho = Vec::with_capacity(doc.elements.len());
    for (x, y) in &doc.ortho {
        if !doc.elements.contains(x) {
            return Err(OmlViolation::Malformed { reason: format!("unknown element '{x}'") }.into());
        }
        ortho.push((x.clone(), y.clone()));
    }
    let raw = RawOml {
        elements: doc.elements,
        leq: doc.leq,
        ortho,
        bottom: doc.bottom,
        top: doc.top,
    };
    Ok(raw.closed()?)
}

/// Read, parse, close and validate a lattice file.
pub fn load_oml(path: impl AsRef<Path>) -> Result<FiniteOml, LoadError> {
    let text = std::fs::read_to_string(path)?;
    Ok(parse_oml(&text)?.validate()?)
}

/// Serialize a raw structure as-is (pairs exactly as given, not closed).
///
/// Unlike [`write_oml_string`] this does not require the structure to be a
/// valid OML, so law-violating examples can be written to disk too.
pub fn write_raw_oml_string(raw: &RawOml) -> String {
    let doc = OmlDoc {
        elements: raw.elements.clone(),
        leq: raw.leq.clone(),
        ortho: raw.ortho.iter().cloned().collect(),
        bottom: raw.bottom.clone(),
        top: raw.top.clone(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("lattice doc serializes");
    text.push('\n');
    text
}

/// Serialize a lattice as pretty-printed JSON (full order relation).
pub fn write_oml_string(oml: &FiniteOml) -> String {
    let names: Vec<String> = oml.elements().map(|e| oml.name(e).to_string()).collect();
    let mut leq = Vec::new();
    for x in oml.elements() {
        for y in oml.elements() {
            if oml.leq(x, y).unwrap() {
                leq.push((oml.name(x).to_string(), oml.name(y).to_string()));
            }
        }
    }
    let ortho = oml
        .elements()
        .map(|x| (oml.name(x).to_string(), oml.name(oml.ortho(x).unwrap()).to_string()))
        .collect();
    let doc = OmlDoc {
        elements: names,
        leq,
        ortho,
        bottom: oml.name(oml.bottom()).to_string(),
        top: oml.name(oml.top()).to_string(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("lattice doc serializes");
    text.push('\n');
    text
}

/// Write a lattice file (see [`write_oml_string`]).
pub fn save_oml(oml: &FiniteOml, path: impl AsRef<Path>) -> Result<(), std::io::Error> {
    std::fs::write(path, write_oml_string(oml))
}
