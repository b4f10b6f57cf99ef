//! Document vectors as the mean of pretrained word vectors.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::corpus::Corpus;
use crate::error::{Error, Result};

use super::bow::require_preprocessed;
use super::matrix::{DesignMatrix, RepresentationKind};

/// Word vectors in the usual text layout: an optional `count dim` header,
/// then `token v1 ... vdim` per line.
#[derive(Clone, Debug, PartialEq)]
pub struct WordVectorTable {
    dim: usize,
    index: HashMap<String, usize>,
    values: Vec<f64>,
}

impl WordVectorTable {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Parses the text layout. Record numbers in errors are 0-based line
    /// indices. A repeated token keeps its first vector.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .collect();
        let mut body = &lines[..];
        let mut declared_dim = None;
        if let Some(&(_, first)) = lines.first() {
            let fields: Vec<&str> = first.split_whitespace().collect();
            if fields.len() == 2 {
                if let (Ok(_), Ok(dim)) = (fields[0].parse::<usize>(), fields[1].parse::<usize>()) {
                    let next_matches = lines
                        .get(1)
                        .map(|(_, l)| l.split_whitespace().count() == dim + 1)
                        .unwrap_or(true);
                    if next_matches {
                        declared_dim = Some(dim);
                        body = &lines[1..];
                    }
                }
            }
        }

        let mut dim = declared_dim;
        let mut index = HashMap::new();
        let mut values = Vec::new();
        for &(line_no, line) in body {
            let mut fields = line.split_whitespace();
            let token = fields.next().expect("non-empty line");
            let vec: Vec<f64> = fields
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|_| Error::format(line_no, format!("bad number {f:?}")))
                })
                .collect::<Result<_>>()?;
            match dim {
                None => dim = Some(vec.len()),
                Some(d) if d != vec.len() => {
                    return Err(Error::format(
                        line_no,
                        format!("token {token:?} has {} values, expected {d}", vec.len()),
                    ))
                }
                _ => {}
            }
            if vec.iter().any(|v| !v.is_finite()) {
                return Err(Error::format(line_no, "non-finite value"));
            }
            if !index.contains_key(token) {
                index.insert(token.to_string(), index.len());
                values.extend(vec);
            }
        }
        let dim = dim.unwrap_or(0);
        if dim == 0 {
            return Err(Error::format(0, "no word vectors found"));
        }
        Ok(Self { dim, index, values })
    }

    pub fn from_entries<S: Into<String>>(
        dim: usize,
        entries: impl IntoIterator<Item = (S, Vec<f64>)>,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        let mut values = Vec::new();
        for (i, (tok, v)) in entries.into_iter().enumerate() {
            if v.len() != dim {
                return Err(Error::format(i, format!("expected {dim} values")));
            }
            let tok = tok.into();
            if !index.contains_key(&tok) {
                index.insert(tok, index.len());
                values.extend(v);
            }
        }
        Ok(Self { dim, index, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<&[f64]> {
        self.index
            .get(token)
            .map(|&i| &self.values[i * self.dim..(i + 1) * self.dim])
    }
}

/// Mean vector over every token occurrence that has an entry in the table,
/// using the unpruned token stream. Documents with no known tokens give
/// zero rows.
pub fn build_wordvec_avg(corpus: &Corpus, vectors: &WordVectorTable) -> Result<DesignMatrix> {
    require_preprocessed(corpus)?;
    let dim = vectors.dim();
    let rows = corpus
        .documents
        .iter()
        .map(|d| {
            let mut acc = vec![0.0; dim];
            let mut n = 0usize;
            for v in d.stream.iter().filter_map(|t| vectors.get(t)) {
                for (a, x) in acc.iter_mut().zip(v) {
                    *a += x;
                }
                n += 1;
            }
            if n > 0 {
                for a in &mut acc {
                    *a /= n as f64;
                }
            }
            acc
        })
        .collect();
    DesignMatrix::dense(
        RepresentationKind::WordVecAvg,
        dim,
        rows,
        format!(
            "wordvec_avg corpus={} table={}x{}",
            corpus.name,
            vectors.len(),
            dim
        ),
    )
}
