//! Batch selection strategies.
//!
//! Every strategy reads a [`StrategyContext`] and returns at most
//! `batch_size` distinct unlabelled ids. Model-based strategies (uncertainty,
//! information density, query-by-committee) need the classifier state built
//! by the engine; random sampling and EGAL do not.

mod committee;
mod egal;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifier::{CalibrationModel, LinearSvmModel};
use crate::corpus::DocId;
use crate::engine::PoolState;
use crate::error::{Error, Result};
use crate::representation::{DesignMatrix, SimilarityCache};

pub use committee::{build_committee, vote_entropy, COMMITTEE_SIZE};
pub use egal::{egal_scores, EgalParams, EgalScores};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StrategyName {
    #[serde(rename = "random")]
    Random,
    #[serde(rename = "uncertainty")]
    Uncertainty,
    #[serde(rename = "id")]
    InformationDensity,
    #[serde(rename = "qbc")]
    Qbc,
    #[serde(rename = "egal")]
    Egal,
}

impl StrategyName {
    pub const ALL: [StrategyName; 5] = [
        StrategyName::Random,
        StrategyName::Uncertainty,
        StrategyName::InformationDensity,
        StrategyName::Qbc,
        StrategyName::Egal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyName::Random => "random",
            StrategyName::Uncertainty => "uncertainty",
            StrategyName::InformationDensity => "id",
            StrategyName::Qbc => "qbc",
            StrategyName::Egal => "egal",
        }
    }

    pub fn needs_model(self) -> bool {
        matches!(
            self,
            StrategyName::Uncertainty | StrategyName::InformationDensity
        )
    }

    pub fn needs_calibration(self) -> bool {
        self == StrategyName::InformationDensity
    }

    pub fn needs_committee(self) -> bool {
        self == StrategyName::Qbc
    }

    pub fn needs_similarities(self) -> bool {
        matches!(self, StrategyName::InformationDensity | StrategyName::Egal)
    }
}

impl fmt::Display for StrategyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(StrategyName::Random),
            "uncertainty" => Ok(StrategyName::Uncertainty),
            "id" | "information_density" | "information-density" => {
                Ok(StrategyName::InformationDensity)
            }
            "qbc" => Ok(StrategyName::Qbc),
            "egal" => Ok(StrategyName::Egal),
            other => Err(Error::Argument(format!(
                "unknown strategy {other:?}; expected random|uncertainty|id|qbc|egal"
            ))),
        }
    }
}

/// Everything a strategy may read when picking the next batch.
#[derive(Clone, Copy, Debug)]
pub struct StrategyContext<'a> {
    pub matrix: &'a DesignMatrix,
    pub sims: Option<&'a SimilarityCache>,
    pub pool: &'a PoolState,
    pub model: Option<&'a LinearSvmModel>,
    pub calibration: Option<&'a CalibrationModel>,
    pub committee: Option<&'a [LinearSvmModel]>,
    pub seed: u64,
    pub batch_size: usize,
}

impl<'a> StrategyContext<'a> {
    pub fn new(
        matrix: &'a DesignMatrix,
        pool: &'a PoolState,
        batch_size: usize,
        seed: u64,
    ) -> Self {
        Self {
            matrix,
            sims: None,
            pool,
            model: None,
            calibration: None,
            committee: None,
            seed,
            batch_size,
        }
    }

    fn take(&self) -> usize {
        self.batch_size.min(self.pool.unlabelled().len())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BatchSelection {
    pub ids: Vec<DocId>,
    /// Score of each selected id; empty for random sampling.
    pub scores: Vec<f64>,
}

/// Keeps the `k` best `(id, score)` pairs. Equal scores go to the smaller id.
fn top_k(mut scored: Vec<(DocId, f64)>, k: usize, higher_is_better: bool) -> BatchSelection {
    scored.sort_by(|a, b| {
        let by_score = if higher_is_better {
            b.1.total_cmp(&a.1)
        } else {
            a.1.total_cmp(&b.1)
        };
        match by_score {
            Ordering::Equal => a.0.cmp(&b.0),
            other => other,
        }
    });
    scored.truncate(k);
    let (ids, scores) = scored.into_iter().unzip();
    BatchSelection { ids, scores }
}

pub fn select(strategy: StrategyName, ctx: &StrategyContext<'_>) -> Result<BatchSelection> {
    match strategy {
        StrategyName::Random => select_random(ctx),
        StrategyName::Uncertainty => select_uncertainty(ctx),
        StrategyName::InformationDensity => select_information_density(ctx),
        StrategyName::Qbc => select_qbc(ctx),
        StrategyName::Egal => select_egal(ctx),
    }
}

/// Uniform sample without replacement from the unlabelled pool.
pub fn select_random(ctx: &StrategyContext<'_>) -> Result<BatchSelection> {
    let pool = ctx.pool.unlabelled_ids();
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let ids = sample(&mut rng, pool.len(), ctx.take())
        .into_iter()
        .map(|i| pool[i])
        .collect();
    Ok(BatchSelection {
        ids,
        scores: Vec::new(),
    })
}

fn require<'a, T: ?Sized>(
    value: Option<&'a T>,
    what: &str,
    strategy: StrategyName,
) -> Result<&'a T> {
    value.ok_or_else(|| Error::Contract(format!("{strategy} selection requires {what}")))
}

/// Smallest `|w . x + b|` first.
pub fn select_uncertainty(ctx: &StrategyContext<'_>) -> Result<BatchSelection> {
    let model = require(ctx.model, "a trained model", StrategyName::Uncertainty)?;
    let scored = ctx
        .pool
        .unlabelled()
        .iter()
        .map(|&id| (id, model.decision(ctx.matrix.row(id)).abs()))
        .collect();
    Ok(top_k(scored, ctx.take(), false))
}

/// Largest vote entropy across the committee first.
pub fn select_qbc(ctx: &StrategyContext<'_>) -> Result<BatchSelection> {
    let committee = require(ctx.committee, "a committee", StrategyName::Qbc)?;
    if committee.len() != COMMITTEE_SIZE {
        return Err(Error::Contract(format!(
            "committee has {} members, expected {COMMITTEE_SIZE}",
            committee.len()
        )));
    }
    let scored = ctx
        .pool
        .unlabelled()
        .iter()
        .map(|&id| {
            let row = ctx.matrix.row(id);
            let positive = committee.iter().filter(|m| m.decision(row) >= 0.0).count();
            (id, vote_entropy(positive, committee.len()))
        })
        .collect();
    Ok(top_k(scored, ctx.take(), true))
}

/// Entropy of a Bernoulli(p) variable in nats.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |q: f64| if q > 0.0 { -q * q.ln() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// `entropy * max(density, 0)`. Negative densities, possible for
/// representations with negative coordinates, count as zero.
pub fn information_density_score(entropy: f64, density: f64) -> f64 {
    entropy * density.max(0.0)
}

/// Calibrated entropy weighted by mean cosine similarity to the pool.
pub fn select_information_density(ctx: &StrategyContext<'_>) -> Result<BatchSelection> {
    let s = StrategyName::InformationDensity;
    let model = require(ctx.model, "a trained model", s)?;
    let calibration = require(ctx.calibration, "a calibration model", s)?;
    let sims = require(ctx.sims, "a similarity cache", s)?;
    let pool = ctx.pool.unlabelled_ids();
    let n_pool = pool.len() as f64;
    let scored = pool
        .iter()
        .map(|&id| {
            let row = sims.row(id);
            let density = pool.iter().map(|&u| row[u]).sum::<f64>() / n_pool;
            let p = calibration.probability(model.decision(ctx.matrix.row(id)));
            (id, information_density_score(binary_entropy(p), density))
        })
        .collect();
    Ok(top_k(scored, ctx.take(), true))
}

/// Densest documents among those least similar to the labelled set.
pub fn select_egal(ctx: &StrategyContext<'_>) -> Result<BatchSelection> {
    let sims = require(ctx.sims, "a similarity cache", StrategyName::Egal)?;
    let k = ctx.take();
    let scores = egal_scores(sims, ctx.pool, k, &EgalParams::default());
    let scored = scores
        .pool
        .iter()
        .zip(&scores.density)
        .zip(&scores.diversity)
        .filter(|&(_, &d)| d <= scores.threshold)
        .map(|((&id, &density), _)| (id, density))
        .collect();
    Ok(top_k(scored, k, true))
}
