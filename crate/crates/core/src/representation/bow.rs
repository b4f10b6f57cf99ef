//! Bag-of-words representations over the pruned vocabulary.

use std::collections::BTreeMap;

use crate::corpus::Corpus;
use crate::error::{Error, Result};

use super::matrix::{DesignMatrix, RepresentationKind};

pub(crate) fn require_preprocessed(corpus: &Corpus) -> Result<()> {
    if corpus.is_preprocessed() {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "corpus {:?} must be preprocessed first",
            corpus.name
        )))
    }
}

/// Raw term counts per document, keyed by vocabulary index.
pub(crate) fn term_counts(corpus: &Corpus) -> Vec<BTreeMap<u32, u32>> {
    corpus
        .documents
        .iter()
        .map(|d| {
            let mut counts = BTreeMap::new();
            for tok in &d.tokens {
                if let Some(j) = corpus.vocabulary.get(tok) {
                    *counts.entry(j as u32).or_insert(0) += 1;
                }
            }
            counts
        })
        .collect()
}

/// Term frequencies normalized by each document's retained token count.
pub fn build_tf(corpus: &Corpus) -> Result<DesignMatrix> {
    require_preprocessed(corpus)?;
    let rows = term_counts(corpus)
        .into_iter()
        .map(|counts| {
            let total: u32 = counts.values().sum();
            counts
                .into_iter()
                .map(|(j, c)| (j, c as f64 / total as f64))
                .collect()
        })
        .collect();
    DesignMatrix::sparse(
        RepresentationKind::Tf,
        corpus.vocabulary.len(),
        rows,
        format!(
            "tf corpus={} vocab={}",
            corpus.name,
            corpus.vocabulary.len()
        ),
    )
}

/// Smoothed inverse document frequency, `ln((1 + n) / (1 + df)) + 1`.
pub fn smoothed_idf(n_docs: usize, doc_freq: u64) -> f64 {
    ((1.0 + n_docs as f64) / (1.0 + doc_freq as f64)).ln() + 1.0
}

/// Count times idf, before row normalization.
pub(crate) fn tfidf_unnormalized(corpus: &Corpus) -> Vec<Vec<(u32, f64)>> {
    let n = corpus.len();
    let idf: Vec<f64> = (0..corpus.vocabulary.len())
        .map(|j| smoothed_idf(n, corpus.vocabulary.document_frequency(j)))
        .collect();
    term_counts(corpus)
        .into_iter()
        .map(|counts| {
            counts
                .into_iter()
                .map(|(j, c)| (j, c as f64 * idf[j as usize]))
                .collect()
        })
        .collect()
}

/// Smoothed TF-IDF with L2-normalized rows. Empty documents give zero rows.
pub fn build_tfidf(corpus: &Corpus) -> Result<DesignMatrix> {
    require_preprocessed(corpus)?;
    let rows = tfidf_unnormalized(corpus)
        .into_iter()
        .map(|mut row| {
            let norm = row.iter().map(|(_, v)| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                for (_, v) in &mut row {
                    *v /= norm;
                }
            }
            row
        })
        .collect();
    DesignMatrix::sparse(
        RepresentationKind::TfIdf,
        corpus.vocabulary.len(),
        rows,
        format!(
            "tfidf(smooth,l2) corpus={} vocab={}",
            corpus.name,
            corpus.vocabulary.len()
        ),
    )
}
