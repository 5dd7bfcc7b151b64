//! Certificate wire format: versioned JSON documents with every real
//! written at 17 significant digits.
//!
//! Two document kinds share the envelope fields `format` and `version`:
//! pair certificates (`"collapse-pair"`) carry tolerance, basis,
//! initial_atoms, rounds (two-step records with parent index, plane as two
//! spanning vectors, witness index, phi and result vector) and the final
//! index pair; refutation certificates (`"collapse-refutation"`) carry the
//! atom, the subspace as dim plus row-major projector entries, the
//! optional projection and the optional embedded pair document. The exact
//! schema lives in `docs/formats.md`. Writing uses a fixed field order and
//! number format, so re-serializing a parsed document is byte-identical.

use std::path::Path;

use serde::Deserialize;

use super::{CollapseCertificate, CollapseStep, RefutationCertificate};
use crate::hilbert3::{Mat3, Vec3};

/// Envelope tag of pair certificates.
pub const PAIR_FORMAT: &str = "collapse-pair";

/// Envelope tag of refutation certificates.
pub const REFUTATION_FORMAT: &str = "collapse-refutation";

/// Current schema version of both document kinds.
pub const FORMAT_VERSION: u32 = 1;

/// Errors from reading a certificate document.
#[derive(Debug, thiserror::Error)]
pub enum CertLoadError {
    #[error("cannot read certificate")]
    Io(#[from] std::io::Error),
    #[error("certificate is not valid JSON")]
    Json(#[from] serde_json::Error),
    #[error("unrecognized certificate format {found:?}")]
    UnknownFormat { found: String },
    #[error("unsupported certificate version {found}")]
    UnsupportedVersion { found: u32 },
}

/// A parsed certificate of either kind.
#[derive(Clone, Debug)]
pub enum CertificateDocument {
    Pair(CollapseCertificate),
    Refutation(RefutationCertificate),
}

/// A real at 17 significant digits, e.g. `1.0000000000000000e0`.
fn real(x: f64) -> String {
    debug_assert!(x.is_finite(), "certificates carry finite reals only");
    format!("{x:.16e}")
}

fn vec3(v: &Vec3) -> String {
    format!("[{}, {}, {}]", real(v[0]), real(v[1]), real(v[2]))
}

fn step_json(step: &CollapseStep, pad: &str) -> String {
    format!(
        "{pad}{{\n\
         {pad}  \"parent\": {},\n\
         {pad}  \"witness\": {},\n\
         {pad}  \"phi\": {},\n\
         {pad}  \"plane\": [{}, {}],\n\
         {pad}  \"result\": {}\n\
         {pad}}}",
        step.parent_atom,
        step.plane_witness,
        real(step.phi),
        vec3(&step.plane[0]),
        vec3(&step.plane[1]),
        vec3(&step.result_atom),
    )
}

/// Serialize a pair certificate (deterministic, trailing newline).
pub fn write_pair_string(cert: &CollapseCertificate) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"format\": \"{PAIR_FORMAT}\",\n"));
    out.push_str(&format!("  \"version\": {FORMAT_VERSION},\n"));
    out.push_str(&format!("  \"tolerance\": {},\n", real(cert.tolerance)));
    out.push_str(&format!(
        "  \"basis\": [{}, {}, {}],\n",
        vec3(&cert.basis[0]),
        vec3(&cert.basis[1]),
        vec3(&cert.basis[2])
    ));
    out.push_str(&format!(
        "  \"initial_atoms\": [{}, {}],\n",
        vec3(&cert.initial_atoms[0]),
        vec3(&cert.initial_atoms[1])
    ));
    if cert.rounds.is_empty() {
        out.push_str("  \"rounds\": [],\n");
    } else {
        out.push_str("  \"rounds\": [\n");
        for (k, round) in cert.rounds.iter().enumerate() {
            out.push_str("    [\n");
            out.push_str(&step_json(&round[0], "      "));
            out.push_str(",\n");
            out.push_str(&step_json(&round[1], "      "));
            out.push_str("\n    ]");
            out.push_str(if k + 1 < cert.rounds.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ],\n");
    }
    out.push_str(&format!("  \"final\": [{}, {}]\n", cert.final_pair.0, cert.final_pair.1));
    out.push_str("}\n");
    out
}

/// Serialize a refutation certificate (deterministic, trailing newline).
pub fn write_refutation_string(cert: &RefutationCertificate) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"format\": \"{REFUTATION_FORMAT}\",\n"));
    out.push_str(&format!("  \"version\": {FORMAT_VERSION},\n"));
    out.push_str(&format!("  \"tolerance\": {},\n", real(cert.tolerance)));
    out.push_str(&format!("  \"atom\": {},\n", vec3(&cert.atom)));
    let entries: Vec<String> = (0..3)
        .flat_map(|r| (0..3).map(move |c| (r, c)))
        .map(|(r, c)| real(cert.subspace_projector[(r, c)]))
        .collect();
    out.push_str(&format!(
        "  \"subspace\": {{\"dim\": {}, \"projector\": [{}]}},\n",
        cert.subspace_dim,
        entries.join(", ")
    ));
    match &cert.projection {
        Some(p) => out.push_str(&format!("  \"projection\": {},\n", vec3(p))),
        None => out.push_str("  \"projection\": null,\n"),
    }
    match &cert.pair {
        Some(pair) => {
            let embedded = write_pair_string(pair);
            let embedded = embedded.trim_end().replace('\n', "\n  ");
            out.push_str(&format!("  \"pair\": {embedded}\n"));
        }
        None => out.push_str("  \"pair\": null\n"),
    }
    out.push_str("}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StepDoc {
    parent: usize,
    witness: usize,
    phi: f64,
    plane: [[f64; 3]; 2],
    result: [f64; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    format: String,
    version: u32,
    tolerance: f64,
    basis: [[f64; 3]; 3],
    initial_atoms: [[f64; 3]; 2],
    rounds: Vec<[StepDoc; 2]>,
    #[serde(rename = "final")]
    final_pair: [usize; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubspaceDoc {
    dim: usize,
    projector: [f64; 9],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RefutationDoc {
    format: String,
    version: u32,
    tolerance: f64,
    atom: [f64; 3],
    subspace: SubspaceDoc,
    projection: Option<[f64; 3]>,
    pair: Option<PairDoc>,
}

fn to_vec3(a: [f64; 3]) -> Vec3 {
    Vec3::new(a[0], a[1], a[2])
}

fn check_version(version: u32) -> Result<(), CertLoadError> {
    if version == FORMAT_VERSION {
        Ok(())
    } else {
        Err(CertLoadError::UnsupportedVersion { found: version })
    }
}

impl PairDoc {
    fn into_certificate(self) -> Result<CollapseCertificate, CertLoadError> {
        if self.format != PAIR_FORMAT {
            return Err(CertLoadError::UnknownFormat { found: self.format });
        }
        check_version(self.version)?;
        let step = |s: &StepDoc| CollapseStep {
            parent_atom: s.parent,
            plane: [to_vec3(s.plane[0]), to_vec3(s.plane[1])],
            plane_witness: s.witness,
            result_atom: to_vec3(s.result),
            phi: s.phi,
        };
        Ok(CollapseCertificate {
            tolerance: self.tolerance,
            basis: [to_vec3(self.basis[0]), to_vec3(self.basis[1]), to_vec3(self.basis[2])],
            initial_atoms: [to_vec3(self.initial_atoms[0]), to_vec3(self.initial_atoms[1])],
            rounds: self.rounds.iter().map(|r| [step(&r[0]), step(&r[1])]).collect(),
            final_pair: (self.final_pair[0], self.final_pair[1]),
        })
    }
}

impl RefutationDoc {
    fn into_certificate(self) -> Result<RefutationCertificate, CertLoadError> {
        if self.format != REFUTATION_FORMAT {
            return Err(CertLoadError::UnknownFormat { found: self.format });
        }
        check_version(self.version)?;
        let p = self.subspace.projector;
        Ok(RefutationCertificate {
            tolerance: self.tolerance,
            atom: to_vec3(self.atom),
            subspace_dim: self.subspace.dim,
            subspace_projector: Mat3::from_row_slice(&p),
            projection: self.projection.map(to_vec3),
            pair: self.pair.map(|d| d.into_certificate()).transpose()?,
        })
    }
}

/// Parse a certificate document of either kind, dispatching on `format`.
pub fn parse_certificate(text: &str) -> Result<CertificateDocument, CertLoadError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let format = value.get("format").and_then(|f| f.as_str()).unwrap_or_default().to_string();
    match format.as_str() {
        PAIR_FORMAT => {
            let doc: PairDoc = serde_json::from_value(value)?;
            Ok(CertificateDocument::Pair(doc.into_certificate()?))
        }
        REFUTATION_FORMAT => {
            let doc: RefutationDoc = serde_json::from_value(value)?;
            Ok(CertificateDocument::Refutation(doc.into_certificate()?))
        }
        _ => Err(CertLoadError::UnknownFormat { found: format }),
    }
}

/// Read and parse a certificate file.
pub fn load_certificate(path: impl AsRef<Path>) -> Result<CertificateDocument, CertLoadError> {
    parse_certificate(&std::fs::read_to_string(path)?)
}
