use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RepresentationKind {
    #[serde(rename = "tf")]
    Tf,
    #[serde(rename = "tfidf")]
    TfIdf,
    #[serde(rename = "lda")]
    Lda,
    #[serde(rename = "wordvec")]
    WordVecAvg,
    #[serde(rename = "precomputed")]
    Precomputed,
}

impl RepresentationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RepresentationKind::Tf => "tf",
            RepresentationKind::TfIdf => "tfidf",
            RepresentationKind::Lda => "lda",
            RepresentationKind::WordVecAvg => "wordvec",
            RepresentationKind::Precomputed => "precomputed",
        }
    }
}

impl fmt::Display for RepresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RepresentationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tf" => Ok(RepresentationKind::Tf),
            "tfidf" | "tf-idf" => Ok(RepresentationKind::TfIdf),
            "lda" => Ok(RepresentationKind::Lda),
            "wordvec" | "wordvec_avg" => Ok(RepresentationKind::WordVecAvg),
            "precomputed" => Ok(RepresentationKind::Precomputed),
            other => Err(Error::Argument(format!("unknown representation {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseRow {
    /// Strictly increasing column indices.
    pub indices: Vec<u32>,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
enum Storage {
    Sparse(Vec<SparseRow>),
    /// Row-major, `n_docs * dim` values.
    Dense(Vec<f64>),
}

/// Borrowed view of one matrix row.
#[derive(Clone, Copy, Debug)]
pub enum Row<'a> {
    Sparse {
        indices: &'a [u32],
        values: &'a [f64],
    },
    Dense(&'a [f64]),
}

impl Row<'_> {
    #[inline]
    pub fn dot_dense(&self, w: &[f64]) -> f64 {
        match *self {
            Row::Sparse { indices, values } => indices
                .iter()
                .zip(values)
                .map(|(&j, &v)| w[j as usize] * v)
                .sum(),
            Row::Dense(x) => dense_dot(x, w),
        }
    }

    /// `w += a * self`
    #[inline]
    pub fn axpy(&self, a: f64, w: &mut [f64]) {
        match *self {
            Row::Sparse { indices, values } => {
                for (&j, &v) in indices.iter().zip(values) {
                    w[j as usize] += a * v;
                }
            }
            Row::Dense(x) => {
                for (wi, &xi) in w.iter_mut().zip(x) {
                    *wi += a * xi;
                }
            }
        }
    }

    pub fn norm_sq(&self) -> f64 {
        match *self {
            Row::Sparse { values, .. } => values.iter().map(|v| v * v).sum(),
            Row::Dense(x) => x.iter().map(|v| v * v).sum(),
        }
    }

    pub fn dot(&self, other: &Row<'_>) -> f64 {
        match (*self, *other) {
            (Row::Dense(a), Row::Dense(b)) => a.iter().zip(b).map(|(x, y)| x * y).sum(),
            (s @ Row::Sparse { .. }, Row::Dense(d)) | (Row::Dense(d), s @ Row::Sparse { .. }) => {
                s.dot_dense(d)
            }
            (
                Row::Sparse {
                    indices: ia,
                    values: va,
                },
                Row::Sparse {
                    indices: ib,
                    values: vb,
                },
            ) => {
                let (mut i, mut j, mut acc) = (0, 0, 0.0);
                while i < ia.len() && j < ib.len() {
                    match ia[i].cmp(&ib[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            acc += va[i] * vb[j];
                            i += 1;
                            j += 1;
                        }
                    }
                }
                acc
            }
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<f64> {
        match *self {
            Row::Sparse { indices, values } => {
                let mut out = vec![0.0; dim];
                for (&j, &v) in indices.iter().zip(values) {
                    out[j as usize] = v;
                }
                out
            }
            Row::Dense(x) => x.to_vec(),
        }
    }

    pub fn sum(&self) -> f64 {
        match *self {
            Row::Sparse { values, .. } => values.iter().sum(),
            Row::Dense(x) => x.iter().sum(),
        }
    }
}

/// Four independent partial sums so the compiler can vectorize.
#[inline]
fn dense_dot(x: &[f64], w: &[f64]) -> f64 {
    let n = x.len().min(w.len());
    let (x, w) = (&x[..n], &w[..n]);
    let mut acc = [0.0f64; 4];
    let mut xc = x.chunks_exact(4);
    let mut wc = w.chunks_exact(4);
    for (a, b) in (&mut xc).zip(&mut wc) {
        for k in 0..4 {
            acc[k] += a[k] * b[k];
        }
    }
    let tail: f64 = xc
        .remainder()
        .iter()
        .zip(wc.remainder())
        .map(|(a, b)| a * b)
        .sum();
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// One row per document, aligned by document id.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignMatrix {
    n_docs: usize,
    dim: usize,
    storage: Storage,
    kind: RepresentationKind,
    source_meta: String,
}

impl DesignMatrix {
    pub fn dense(
        kind: RepresentationKind,
        dim: usize,
        rows: Vec<Vec<f64>>,
        source_meta: impl Into<String>,
    ) -> Result<Self> {
        let n_docs = rows.len();
        let mut values = Vec::with_capacity(n_docs * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Argument(format!(
                    "row {i} has {} values, expected {dim}",
                    row.len()
                )));
            }
            values.extend(row);
        }
        Self::from_dense_values(kind, n_docs, dim, values, source_meta)
    }

    pub fn from_dense_values(
        kind: RepresentationKind,
        n_docs: usize,
        dim: usize,
        values: Vec<f64>,
        source_meta: impl Into<String>,
    ) -> Result<Self> {
        if values.len() != n_docs * dim {
            return Err(Error::Argument(format!(
                "{} values for a {n_docs}x{dim} matrix",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Integrity(format!(
                "non-finite value at row {} column {}",
                pos / dim.max(1),
                pos % dim.max(1)
            )));
        }
        Ok(Self {
            n_docs,
            dim,
            storage: Storage::Dense(values),
            kind,
            source_meta: source_meta.into(),
        })
    }

    /// Builds a sparse matrix. Entries within a row may come in any order but
    /// must not repeat a column; explicit zeros are dropped.
    pub fn sparse(
        kind: RepresentationKind,
        dim: usize,
        rows: Vec<Vec<(u32, f64)>>,
        source_meta: impl Into<String>,
    ) -> Result<Self> {
        let n_docs = rows.len();
        let mut out = Vec::with_capacity(n_docs);
        for (i, mut row) in rows.into_iter().enumerate() {
            row.sort_unstable_by_key(|&(j, _)| j);
            row.retain(|&(_, v)| v != 0.0);
            if row.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Argument(format!("row {i} repeats a column")));
            }
            if let Some(&(j, v)) = row
                .iter()
                .find(|&&(j, v)| j as usize >= dim || !v.is_finite())
            {
                return Err(Error::Argument(format!(
                    "row {i} has invalid entry ({j}, {v}) for dim {dim}"
                )));
            }
            let (indices, values) = row.into_iter().unzip();
            out.push(SparseRow { indices, values });
        }
        Ok(Self {
            n_docs,
            dim,
            storage: Storage::Sparse(out),
            kind,
            source_meta: source_meta.into(),
        })
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> RepresentationKind {
        self.kind
    }

    pub fn source_meta(&self) -> &str {
        &self.source_meta
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    #[inline]
    pub fn row(&self, i: usize) -> Row<'_> {
        match &self.storage {
            Storage::Sparse(rows) => Row::Sparse {
                indices: &rows[i].indices,
                values: &rows[i].values,
            },
            Storage::Dense(values) => Row::Dense(&values[i * self.dim..(i + 1) * self.dim]),
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = Row<'_>> + '_ {
        (0..self.n_docs).map(move |i| self.row(i))
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(|r| r.to_dense(self.dim)).collect()
    }
}
