use rayon::prelude::*;

use crate::error::{Error, Result};

use super::matrix::DesignMatrix;

/// Dense symmetric matrix of pairwise cosine similarities.
///
/// Zero rows have similarity 0 with everything, themselves included.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityCache {
    n: usize,
    values: Vec<f64>,
    pair_mean: f64,
    pair_std: f64,
}

pub fn cosine_similarity_matrix(m: &DesignMatrix) -> SimilarityCache {
    let n = m.n_docs();
    let norms: Vec<f64> = m.rows().map(|r| r.norm_sq().sqrt()).collect();
    let upper: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let ri = m.row(i);
            (i..n)
                .map(|j| {
                    if norms[i] == 0.0 || norms[j] == 0.0 {
                        0.0
                    } else if i == j {
                        1.0
                    } else {
                        (ri.dot(&m.row(j)) / (norms[i] * norms[j])).clamp(-1.0, 1.0)
                    }
                })
                .collect()
        })
        .collect();
    let mut values = vec![0.0; n * n];
    for (i, row) in upper.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            let j = i + off;
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    SimilarityCache::build(n, values)
}

impl SimilarityCache {
    /// Wraps a precomputed similarity matrix (row-major `n x n`).
    pub fn from_matrix(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::Argument(format!(
                "{} values for a {n}x{n} similarity matrix",
                values.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let v = values[i * n + j];
                if !v.is_finite() || v != values[j * n + i] {
                    return Err(Error::Argument(format!(
                        "similarity matrix not finite and symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::build(n, values))
    }

    fn build(n: usize, values: Vec<f64>) -> Self {
        let pairs = n * n.saturating_sub(1) / 2;
        let (mut sum, mut sum_sq) = (0.0, 0.0);
        for i in 0..n {
            for &v in &values[i * n + i + 1..(i + 1) * n] {
                sum += v;
                sum_sq += v * v;
            }
        }
        let (pair_mean, pair_std) = if pairs == 0 {
            (0.0, 0.0)
        } else {
            let mean = sum / pairs as f64;
            (mean, (sum_sq / pairs as f64 - mean * mean).max(0.0).sqrt())
        };
        Self {
            n,
            values,
            pair_mean,
            pair_std,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    /// Mean over all unordered pairs `i < j`.
    pub fn pair_mean(&self) -> f64 {
        self.pair_mean
    }

    /// Population standard deviation over all unordered pairs `i < j`.
    pub fn pair_std(&self) -> f64 {
        self.pair_std
    }
}
