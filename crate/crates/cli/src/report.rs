//! Report envelope and result payloads.
//!
//! Every analysis command emits one JSON document with top-level keys
//! `{command, version, instance_sha256, result}`. Rationals are serialised
//! as canonical `"num/den"` strings, vectors as string arrays, and payload
//! fields stay in a fixed order, so identical runs are byte-identical.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};
use wsdec_core::approx::{ApproximationCertificate, ApproximationOutcome};
use wsdec_core::scalarize::{LexEsnRecord, SupportClass};
use wsdec_core::weightset::{CommonFace, CoverageReport, NecessityReport, RecoveryReport};
use wsdec_core::{Classification, Decomposition, QVector, WeightVector};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Report<T: Serialize> {
    pub command: String,
    pub version: String,
    pub instance_sha256: String,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(command: &str, instance_text: &str, result: T) -> Self {
        Self {
            command: command.to_string(),
            version: VERSION.to_string(),
            instance_sha256: digest(instance_text),
            result,
        }
    }

    /// Compact single-line JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string(self).expect("reports always serialise");
        text.push('\n');
        text
    }
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn vector_strings(v: &QVector) -> Vec<String> {
    v.iter().map(|e| e.to_string()).collect()
}

pub fn weight_strings(w: &WeightVector) -> Vec<String> {
    vector_strings(w.as_qvector())
}

pub fn class_name(class: SupportClass) -> &'static str {
    match class {
        SupportClass::Dominated => "dominated",
        SupportClass::NondominatedUnsupported => "nondominated_unsupported",
        SupportClass::SupportedNonextreme => "supported_nonextreme",
        SupportClass::ExtremeSupported => "extreme_supported",
    }
}

#[derive(Serialize)]
pub struct OutcomeDto {
    pub vector: Vec<String>,
    pub ids: Vec<String>,
    pub class: String,
    pub witness: Option<Vec<String>>,
}

#[derive(Serialize)]
pub struct ClassifyResult {
    pub p: usize,
    pub n: usize,
    pub outcomes: Vec<OutcomeDto>,
}

pub fn classify_result(p: usize, n: usize, classification: &Classification) -> ClassifyResult {
    ClassifyResult {
        p,
        n,
        outcomes: classification
            .outcomes
            .iter()
            .map(|o| OutcomeDto {
                vector: vector_strings(&o.vector),
                ids: o.ids.clone(),
                class: class_name(o.class).to_string(),
                witness: o.witness.as_ref().map(weight_strings),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct CellDto {
    pub owner: Vec<String>,
    pub owner_ids: Vec<String>,
    pub dim: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
}

#[derive(Serialize)]
pub struct DecompositionDto {
    pub cells: Vec<CellDto>,
    pub extreme_weights: Vec<Vec<String>>,
    /// Every cell has affine dimension p−1.
    pub full_dimensional: bool,
}

pub fn decomposition_dto(d: &Decomposition, include_vertices: bool) -> DecompositionDto {
    let p = d.set().p() as i64;
    DecompositionDto {
        cells: d
            .cells()
            .iter()
            .map(|c| CellDto {
                owner: vector_strings(c.owner()),
                owner_ids: c.owner_ids().to_vec(),
                dim: c.cached_dim().expect("decompose computes dimensions"),
                vertices: include_vertices.then(|| {
                    c.cached_vertices()
                        .expect("decompose computes vertices")
                        .iter()
                        .map(weight_strings)
                        .collect()
                }),
            })
            .collect(),
        extreme_weights: d.extreme_weights().iter().map(weight_strings).collect(),
        full_dimensional: d.cells().iter().all(|c| c.cached_dim() == Some(p - 1)),
    }
}

#[derive(Serialize)]
pub struct CoverageDto {
    pub samples: usize,
    pub seed: u64,
    pub failures: usize,
    pub pass: bool,
}

pub fn coverage_dto(report: &CoverageReport) -> CoverageDto {
    CoverageDto {
        samples: report.samples,
        seed: report.seed,
        failures: report.failures.len(),
        pass: report.passed(),
    }
}

#[derive(Serialize)]
pub struct NecessityRecordDto {
    pub owner: Vec<String>,
    pub witness: Option<Vec<String>>,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct NecessityDto {
    pub records: Vec<NecessityRecordDto>,
    pub pass: bool,
}

pub fn necessity_dto(report: &NecessityReport) -> NecessityDto {
    NecessityDto {
        records: report
            .records
            .iter()
            .map(|r| NecessityRecordDto {
                owner: vector_strings(&r.owner),
                witness: r.witness.as_ref().map(weight_strings),
                holds: r.holds(),
            })
            .collect(),
        pass: report.passed(),
    }
}

#[derive(Serialize)]
pub struct RecoveryDto {
    pub recovered: Vec<Vec<String>>,
    pub supported: Vec<Vec<String>>,
    pub pass: bool,
}

pub fn recovery_dto(report: &RecoveryReport) -> RecoveryDto {
    RecoveryDto {
        recovered: report.recovered.iter().map(vector_strings).collect(),
        supported: report.supported.iter().map(vector_strings).collect(),
        pass: report.passed(),
    }
}

#[derive(Serialize)]
pub struct FaceDto {
    pub owner_a: Vec<String>,
    pub owner_b: Vec<String>,
    pub face_dim: i64,
    pub is_face_of_both: bool,
    /// Face of both with dimension below p−1.
    pub ok: bool,
}

pub fn face_dto(owner_a: &QVector, owner_b: &QVector, face: &CommonFace, p: usize) -> FaceDto {
    let face_dim = face.intersection.cached_dim().expect("face dims computed");
    FaceDto {
        owner_a: vector_strings(owner_a),
        owner_b: vector_strings(owner_b),
        face_dim,
        is_face_of_both: face.is_face_of_both,
        ok: face.is_face_of_both && face_dim < p as i64 - 1,
    }
}

#[derive(Serialize)]
pub struct CertificateEntryDto {
    pub witness: String,
    pub alpha: Vec<String>,
    pub weight: Vec<String>,
}

#[derive(Serialize)]
pub struct CertificateDto {
    pub bound_p: usize,
    pub entries: BTreeMap<String, CertificateEntryDto>,
}

pub fn certificate_dto(cert: &ApproximationCertificate) -> CertificateDto {
    CertificateDto {
        bound_p: cert.bound_p,
        entries: cert
            .entries
            .iter()
            .map(|(target, entry)| {
                (
                    target.clone(),
                    CertificateEntryDto {
                        witness: entry.witness_id.clone(),
                        alpha: vector_strings(entry.alpha.as_qvector()),
                        weight: weight_strings(&entry.weight_used),
                    },
                )
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct ApproxResult {
    pub p: usize,
    pub candidates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub pass: bool,
}

pub fn approx_result(
    p: usize,
    candidates: Vec<String>,
    outcome: &ApproximationOutcome,
) -> ApproxResult {
    match outcome {
        ApproximationOutcome::Certificate(cert) => ApproxResult {
            p,
            candidates,
            certificate: Some(certificate_dto(cert)),
            counterexample: None,
            pass: true,
        },
        ApproximationOutcome::Counterexample { target_id } => ApproxResult {
            p,
            candidates,
            certificate: None,
            counterexample: Some(target_id.clone()),
            pass: false,
        },
    }
}

#[derive(Serialize)]
pub struct LexRecordDto {
    /// 1-based permutation of the objectives.
    pub perm: Vec<usize>,
    pub vector: Vec<String>,
    pub ids: Vec<String>,
    pub class: String,
    pub is_extreme_supported: bool,
}

#[derive(Serialize)]
pub struct LexResult {
    pub records: Vec<LexRecordDto>,
    pub pass: bool,
}

pub fn lex_result(records: &[LexEsnRecord]) -> LexResult {
    LexResult {
        records: records.iter().map(lex_record_dto).collect(),
        pass: records.iter().all(LexEsnRecord::holds),
    }
}

pub fn lex_record_dto(record: &LexEsnRecord) -> LexRecordDto {
    LexRecordDto {
        perm: record
            .permutation
            .indices()
            .iter()
            .map(|&i| i + 1)
            .collect(),
        vector: vector_strings(record.optimum.representative.vector()),
        ids: record
            .optimum
            .ties
            .iter()
            .map(|pt| pt.id().to_string())
            .collect(),
        class: class_name(record.class).to_string(),
        is_extreme_supported: record.holds(),
    }
}
