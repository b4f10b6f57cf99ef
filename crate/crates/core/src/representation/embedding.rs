//! Precomputed document embeddings stored on disk.
//!
//! Binary layout (little-endian):
//!
//! ```text
//! b"ALEMB1\0"            7 bytes
//! n_docs: u32
//! dim:    u32
//! n_docs * dim f32       row-major payload
//! checksum: u64          FNV-1a 64 of the payload bytes
//! ```
//!
//! Files that do not start with the magic are read as JSONL, one
//! `{"id": i, "vec": [...]}` object per line.

use std::fmt;
use std::fs;
use std::hash::Hasher;
use std::path::Path;

use fnv::FnvHasher;
use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};

use super::matrix::{DesignMatrix, RepresentationKind};

pub const MAGIC: &[u8; 7] = b"ALEMB1\0";
const HEADER_LEN: usize = MAGIC.len() + 8;
const MAX_REPORTED_ROWS: usize = 20;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = FnvHasher::default();
    h.write(bytes);
    h.finish()
}

/// Serializes rows to the binary layout. All rows must have length `dim`.
pub fn encode_embeddings(dim: usize, rows: &[Vec<f32>]) -> Result<Vec<u8>> {
    let n = u32::try_from(rows.len())
        .map_err(|_| Error::Argument("too many rows for the embedding format".into()))?;
    let dim32 = u32::try_from(dim).map_err(|_| Error::Argument("dimension too large".into()))?;
    let mut out = Vec::with_capacity(HEADER_LEN + rows.len() * dim * 4 + 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&n.to_le_bytes());
    out.extend_from_slice(&dim32.to_le_bytes());
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::Argument(format!(
                "row {i} has {} values, expected {dim}",
                row.len()
            )));
        }
        for v in row {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    let checksum = fnv1a64(&out[HEADER_LEN..]);
    out.extend_from_slice(&checksum.to_le_bytes());
    Ok(out)
}

pub fn write_embedding_file(path: &Path, dim: usize, rows: &[Vec<f32>]) -> Result<()> {
    let bytes = encode_embeddings(dim, rows)?;
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbeddingEncoding {
    Binary,
    Jsonl,
}

/// One integrity problem found while checking an embedding file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "issue", rename_all = "snake_case")]
pub enum EmbeddingIssue {
    Magic,
    Size { expected: u64, actual: u64 },
    Checksum { stored: u64, computed: u64 },
    RowCount { declared: usize, expected: usize },
    NonFinite { row: usize, column: usize },
    Record { record: usize, message: String },
}

impl EmbeddingIssue {
    pub fn is_alignment(&self) -> bool {
        matches!(self, EmbeddingIssue::RowCount { .. })
    }
}

impl fmt::Display for EmbeddingIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingIssue::Magic => {
                write!(f, "magic: file does not start with ALEMB1 and is not JSONL")
            }
            EmbeddingIssue::Size { expected, actual } => {
                write!(f, "size: expected {expected} bytes, found {actual}")
            }
            EmbeddingIssue::Checksum { stored, computed } => write!(
                f,
                "checksum: stored {stored:#018x}, computed {computed:#018x}"
            ),
            EmbeddingIssue::RowCount { declared, expected } => write!(
                f,
                "row count: file has {declared} rows, corpus has {expected} documents"
            ),
            EmbeddingIssue::NonFinite { row, column } => {
                write!(f, "non-finite value at row {row}, column {column}")
            }
            EmbeddingIssue::Record { record, message } => {
                write!(f, "record {record}: {message}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub encoding: Option<EmbeddingEncoding>,
    pub n_docs: usize,
    pub dim: usize,
    pub issues: Vec<EmbeddingIssue>,
}

impl EmbeddingReport {
    pub fn is_ok(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks an embedding file and returns its payload when it could be decoded.
///
/// Every problem is collected rather than stopping at the first, except
/// that a size mismatch prevents decoding the binary payload.
pub fn inspect_embeddings(
    bytes: &[u8],
    expected_rows: Option<usize>,
) -> (EmbeddingReport, Option<Vec<f32>>) {
    let (mut report, payload) = if bytes.starts_with(MAGIC) {
        inspect_binary(bytes)
    } else if bytes.iter().find(|b| !b.is_ascii_whitespace()) == Some(&b'{') {
        inspect_jsonl(bytes)
    } else {
        (
            EmbeddingReport {
                encoding: None,
                n_docs: 0,
                dim: 0,
                issues: vec![EmbeddingIssue::Magic],
            },
            None,
        )
    };
    if let (Some(expected), Some(_)) = (expected_rows, report.encoding) {
        if report.n_docs != expected {
            report.issues.push(EmbeddingIssue::RowCount {
                declared: report.n_docs,
                expected,
            });
        }
    }
    (report, payload)
}

fn non_finite_issues(values: &[f32], dim: usize, issues: &mut Vec<EmbeddingIssue>) {
    let mut last_row = None;
    for (pos, v) in values.iter().enumerate() {
        if v.is_finite() {
            continue;
        }
        let row = pos / dim.max(1);
        if last_row == Some(row) {
            continue;
        }
        last_row = Some(row);
        issues.push(EmbeddingIssue::NonFinite {
            row,
            column: pos % dim.max(1),
        });
        if issues.len() >= MAX_REPORTED_ROWS {
            break;
        }
    }
}

fn inspect_binary(bytes: &[u8]) -> (EmbeddingReport, Option<Vec<f32>>) {
    let mut report = EmbeddingReport {
        encoding: Some(EmbeddingEncoding::Binary),
        n_docs: 0,
        dim: 0,
        issues: Vec::new(),
    };
    if bytes.len() < HEADER_LEN {
        report.issues.push(EmbeddingIssue::Size {
            expected: HEADER_LEN as u64 + 8,
            actual: bytes.len() as u64,
        });
        return (report, None);
    }
    let read_u32 = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap());
    report.n_docs = read_u32(MAGIC.len()) as usize;
    report.dim = read_u32(MAGIC.len() + 4) as usize;
    let payload_len = report.n_docs as u64 * report.dim as u64 * 4;
    let expected = HEADER_LEN as u64 + payload_len + 8;
    if bytes.len() as u64 != expected {
        report.issues.push(EmbeddingIssue::Size {
            expected,
            actual: bytes.len() as u64,
        });
        return (report, None);
    }
    let payload = &bytes[HEADER_LEN..HEADER_LEN + payload_len as usize];
    let stored = u64::from_le_bytes(bytes[bytes.len() - 8..].try_into().unwrap());
    let computed = fnv1a64(payload);
    if stored != computed {
        report
            .issues
            .push(EmbeddingIssue::Checksum { stored, computed });
    }
    let values: Vec<f32> = payload
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    non_finite_issues(&values, report.dim, &mut report.issues);
    (report, Some(values))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRow {
    id: usize,
    vec: Vec<Option<f64>>,
}

fn inspect_jsonl(bytes: &[u8]) -> (EmbeddingReport, Option<Vec<f32>>) {
    let mut report = EmbeddingReport {
        encoding: Some(EmbeddingEncoding::Jsonl),
        n_docs: 0,
        dim: 0,
        issues: Vec::new(),
    };
    let text = match std::str::from_utf8(bytes) {
        Ok(t) => t,
        Err(e) => {
            report.issues.push(EmbeddingIssue::Record {
                record: 0,
                message: format!("invalid UTF-8: {e}"),
            });
            return (report, None);
        }
    };
    let mut rows: Vec<Option<Vec<f32>>> = Vec::new();
    let mut parsed = Vec::new();
    for (i, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        match serde_json::from_str::<JsonRow>(line) {
            Ok(r) => parsed.push((i, r)),
            Err(e) => report.issues.push(EmbeddingIssue::Record {
                record: i,
                message: e.to_string(),
            }),
        }
    }
    let n = parsed.len() + report.issues.len();
    report.n_docs = n;
    rows.resize(n, None);
    for (i, r) in parsed {
        if report.dim == 0 {
            report.dim = r.vec.len();
        }
        if r.vec.len() != report.dim {
            report.issues.push(EmbeddingIssue::Record {
                record: i,
                message: format!("{} values, expected {}", r.vec.len(), report.dim),
            });
            continue;
        }
        if r.id >= n || rows[r.id].is_some() {
            report.issues.push(EmbeddingIssue::Record {
                record: i,
                message: format!("id {} out of range or repeated", r.id),
            });
            continue;
        }
        rows[r.id] = Some(
            r.vec
                .iter()
                .map(|v| v.map(|x| x as f32).unwrap_or(f32::NAN))
                .collect(),
        );
    }
    if !report.issues.is_empty() {
        return (report, None);
    }
    let values: Vec<f32> = rows.into_iter().flatten().flatten().collect();
    non_finite_issues(&values, report.dim, &mut report.issues);
    (report, Some(values))
}

pub fn validate_embedding_file(
    path: &Path,
    expected_rows: Option<usize>,
) -> Result<EmbeddingReport> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(inspect_embeddings(&bytes, expected_rows).0)
}

/// Loads a precomputed embedding file aligned with `corpus`.
pub fn load_precomputed(path: &Path, corpus: &Corpus) -> Result<DesignMatrix> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let (report, values) = inspect_embeddings(&bytes, Some(corpus.len()));
    if let Some(issue) = report.issues.iter().find(|i| i.is_alignment()) {
        return Err(Error::Alignment(format!("{}: {issue}", path.display())));
    }
    if let Some(issue) = report.issues.first() {
        return Err(Error::Integrity(format!("{}: {issue}", path.display())));
    }
    let values = values.expect("decoded payload when no issues");
    DesignMatrix::from_dense_values(
        RepresentationKind::Precomputed,
        report.n_docs,
        report.dim,
        values.into_iter().map(f64::from).collect(),
        format!(
            "precomputed file={} corpus={} dim={}",
            path.file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default(),
            corpus.name,
            report.dim
        ),
    )
}
