//! Exploration guided selection: density within a similarity neighbourhood,
//! restricted to candidates far from the labelled set.

use crate::corpus::DocId;
use crate::engine::PoolState;
use crate::representation::SimilarityCache;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EgalParams {
    /// Neighbourhood threshold is `mean - alpha_std * std` of pairwise similarity.
    pub alpha_std: f64,
    /// Quantile of the diversity values used as the candidate threshold.
    pub w: f64,
}

impl Default for EgalParams {
    fn default() -> Self {
        Self {
            alpha_std: 0.5,
            w: 0.25,
        }
    }
}

/// Per-candidate quantities for one round, aligned with `pool`.
#[derive(Clone, Debug, PartialEq)]
pub struct EgalScores {
    pub pool: Vec<DocId>,
    pub density: Vec<f64>,
    /// Maximum similarity to any labelled document; smaller is more diverse.
    pub diversity: Vec<f64>,
    pub alpha: f64,
    /// Candidates have `diversity <= threshold`.
    pub threshold: f64,
}

pub fn egal_scores(
    sims: &SimilarityCache,
    pool: &PoolState,
    batch_size: usize,
    params: &EgalParams,
) -> EgalScores {
    let alpha = sims.pair_mean() - params.alpha_std * sims.pair_std();
    let ids = pool.unlabelled_ids();
    let labelled: Vec<DocId> = pool.labelled().keys().copied().collect();

    let density: Vec<f64> = ids
        .iter()
        .map(|&u| {
            sims.row(u)
                .iter()
                .enumerate()
                .filter(|&(v, &s)| v != u && s >= alpha)
                .map(|(_, &s)| s)
                .sum()
        })
        .collect();
    let diversity: Vec<f64> = ids
        .iter()
        .map(|&u| {
            let row = sims.row(u);
            labelled
                .iter()
                .map(|&l| row[l])
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();

    let threshold = if ids.is_empty() {
        f64::INFINITY
    } else {
        let mut sorted = diversity.clone();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let q_index = ((params.w * n as f64).ceil() as usize).max(1) - 1;
        let full_batch = batch_size.clamp(1, n) - 1;
        sorted[q_index.max(full_batch).min(n - 1)]
    };

    EgalScores {
        pool: ids,
        density,
        diversity,
        alpha,
        threshold,
    }
}
