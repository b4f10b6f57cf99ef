//! The simulated labelling loop and its metrics.

mod pool;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{
    fit_calibration, train_svm, tune_c, LinearSvmModel, SvmParams, DEFAULT_C_GRID, DEFAULT_FOLDS,
};
use crate::corpus::{Corpus, DocId, Label};
use crate::error::{Error, Result};
use crate::representation::{
    cosine_similarity_matrix, DesignMatrix, RepresentationKind, SimilarityCache,
};
use crate::strategies::{build_committee, select, StrategyContext, StrategyName};

pub use pool::{seed_pool, PoolState};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed_size: usize,
    pub batch_size: usize,
    pub budget: usize,
    pub repetitions: usize,
    /// Re-tune C every this many rounds, starting with round 0.
    pub tune_every: usize,
    pub c_grid: Vec<f64>,
    pub folds: usize,
    /// C used when the labelled set is too small to tune.
    pub initial_c: f64,
    pub strategy: StrategyName,
    pub representation: RepresentationKind,
    pub base_seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed_size: 10,
            batch_size: 10,
            budget: 1000,
            repetitions: 10,
            tune_every: 10,
            c_grid: DEFAULT_C_GRID.to_vec(),
            folds: DEFAULT_FOLDS,
            initial_c: 1.0,
            strategy: StrategyName::Random,
            representation: RepresentationKind::Tf,
            base_seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn new(strategy: StrategyName, representation: RepresentationKind) -> Self {
        Self {
            strategy,
            representation,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Argument(m));
        if self.seed_size < 2 || !self.seed_size.is_multiple_of(2) {
            return fail(format!(
                "seed_size must be even and >= 2, got {}",
                self.seed_size
            ));
        }
        if self.budget < self.seed_size {
            return fail(format!(
                "budget {} is smaller than seed_size {}",
                self.budget, self.seed_size
            ));
        }
        if self.batch_size == 0 {
            return fail("batch_size must be >= 1".into());
        }
        if self.repetitions == 0 {
            return fail("repetitions must be >= 1".into());
        }
        if self.tune_every == 0 {
            return fail("tune_every must be >= 1".into());
        }
        if self.folds < 2 {
            return fail(format!("folds must be >= 2, got {}", self.folds));
        }
        if self.c_grid.is_empty() || self.c_grid.iter().any(|&c| !(c > 0.0 && c.is_finite())) {
            return fail(format!("invalid C grid {:?}", self.c_grid));
        }
        if !(self.initial_c > 0.0 && self.initial_c.is_finite()) {
            return fail(format!("invalid initial C {}", self.initial_c));
        }
        Ok(())
    }

    pub fn repetition_seed(&self, r: usize) -> u64 {
        self.base_seed.wrapping_add(r as u64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub labels: usize,
    pub accuracy_plus: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearningCurve {
    pub seed: u64,
    pub points: Vec<CurvePoint>,
}

impl LearningCurve {
    pub fn from_points(seed: u64, points: &[(usize, f64)]) -> Self {
        Self {
            seed,
            points: points
                .iter()
                .map(|&(labels, accuracy_plus)| CurvePoint {
                    labels,
                    accuracy_plus,
                })
                .collect(),
        }
    }
}

/// Share of documents whose label is right: human labels on L plus correct
/// machine predictions on U.
pub fn accuracy_plus(
    pool: &PoolState,
    predictions: &BTreeMap<DocId, Label>,
    truth: &[Label],
) -> Result<f64> {
    if truth.len() != pool.n_docs() {
        return Err(Error::Argument(format!(
            "truth covers {} documents, pool has {}",
            truth.len(),
            pool.n_docs()
        )));
    }
    if predictions.len() != pool.unlabelled().len()
        || !predictions.keys().all(|id| pool.unlabelled().contains(id))
    {
        return Err(Error::Argument(
            "predictions must cover exactly the unlabelled documents".into(),
        ));
    }
    let correct = predictions
        .iter()
        .filter(|&(&id, &l)| truth[id] == l)
        .count();
    Ok((pool.labels_spent() + correct) as f64 / pool.n_docs() as f64)
}

/// Trapezoidal area under the curve divided by its width. A single point
/// returns its own accuracy.
pub fn aulc(curve: &LearningCurve) -> Result<f64> {
    let p = &curve.points;
    match p.len() {
        0 => Err(Error::Argument("empty learning curve".into())),
        1 => Ok(p[0].accuracy_plus),
        n => {
            let width = (p[n - 1].labels as f64) - (p[0].labels as f64);
            if width <= 0.0 {
                return Err(Error::Argument("curve labels must increase".into()));
            }
            let area: f64 = p
                .windows(2)
                .map(|w| {
                    (w[1].labels as f64 - w[0].labels as f64)
                        * (w[0].accuracy_plus + w[1].accuracy_plus)
                        / 2.0
                })
                .sum();
            Ok(area / width)
        }
    }
}

/// Independent seed for one use of randomness within a repetition.
fn derive_seed(rep_seed: u64, stream: u64, round: u64) -> u64 {
    let mut z = rep_seed
        ^ stream.wrapping_mul(0xD1B5_4A32_D192_ED03)
        ^ round.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const STREAM_SEED: u64 = 1;
const STREAM_TUNE: u64 = 2;
const STREAM_TRAIN: u64 = 3;
const STREAM_COMMITTEE: u64 = 4;
const STREAM_SELECT: u64 = 5;

fn check_alignment(corpus: &Corpus, matrix: &DesignMatrix) -> Result<()> {
    if matrix.n_docs() != corpus.len() {
        return Err(Error::Alignment(format!(
            "matrix has {} rows, corpus has {} documents",
            matrix.n_docs(),
            corpus.len()
        )));
    }
    Ok(())
}

/// One simulated labelling run.
pub fn run_repetition(
    corpus: &Corpus,
    matrix: &DesignMatrix,
    config: &ExperimentConfig,
    rep_seed: u64,
    sims: Option<&SimilarityCache>,
) -> Result<LearningCurve> {
    config.validate()?;
    check_alignment(corpus, matrix)?;
    let strategy = config.strategy;
    if strategy.needs_similarities() && sims.is_none() {
        return Err(Error::Contract(format!(
            "{strategy} needs a similarity cache"
        )));
    }

    let truth = corpus.labels();
    let mut pool = seed_pool(
        corpus,
        config.seed_size,
        derive_seed(rep_seed, STREAM_SEED, 0),
    )?;
    let mut c = config.initial_c;
    let mut points = Vec::new();

    loop {
        let round = pool.round as u64;
        let (rows, y) = pool.training_set();
        let mut model: Option<LinearSvmModel> = None;
        let mut predictions = BTreeMap::new();
        if !pool.unlabelled().is_empty() {
            if pool.round % config.tune_every == 0 && rows.len() >= config.folds {
                let seed = derive_seed(rep_seed, STREAM_TUNE, round);
                c = tune_c(matrix, &rows, &y, &config.c_grid, config.folds, seed)?;
            }
            let params = SvmParams::new(c, derive_seed(rep_seed, STREAM_TRAIN, round));
            let m = train_svm(matrix, &rows, &y, &params)?;
            for &id in pool.unlabelled() {
                predictions.insert(id, m.predict(matrix.row(id)));
            }
            model = Some(m);
        }
        points.push(CurvePoint {
            labels: pool.labels_spent(),
            accuracy_plus: accuracy_plus(&pool, &predictions, &truth)?,
        });

        let spent = pool.labels_spent();
        if spent >= config.budget || pool.unlabelled().is_empty() {
            break;
        }
        let k = config
            .batch_size
            .min(config.budget - spent)
            .min(pool.unlabelled().len());

        let calibration = match (&model, strategy.needs_calibration()) {
            (Some(m), true) => Some(fit_calibration(m, matrix, &rows, &y)?),
            _ => None,
        };
        let committee = if strategy.needs_committee() {
            let seed = derive_seed(rep_seed, STREAM_COMMITTEE, round);
            Some(build_committee(matrix, &rows, &y, c, seed)?)
        } else {
            None
        };
        let ctx = StrategyContext {
            matrix,
            sims,
            pool: &pool,
            model: model.as_ref(),
            calibration: calibration.as_ref(),
            committee: committee.as_deref(),
            seed: derive_seed(rep_seed, STREAM_SELECT, round),
            batch_size: k,
        };
        let batch = select(strategy, &ctx)?;
        if batch.ids.len() != k {
            return Err(Error::Contract(format!(
                "{strategy} returned {} ids, expected {k}",
                batch.ids.len()
            )));
        }
        pool.reveal(&batch.ids, &truth)?;
        pool.round += 1;
    }

    Ok(LearningCurve {
        seed: rep_seed,
        points,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub dataset: String,
    pub config: ExperimentConfig,
    pub curves: Vec<LearningCurve>,
    pub aulc: Vec<f64>,
    pub aulc_mean: f64,
    /// Sample standard deviation; 0 for a single repetition.
    pub aulc_std: f64,
}

pub fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs every repetition of one (dataset, representation, strategy) cell.
/// Similarities are computed here when the strategy needs them and `sims` is
/// not supplied.
pub fn run_cell(
    corpus: &Corpus,
    matrix: &DesignMatrix,
    config: &ExperimentConfig,
    sims: Option<&SimilarityCache>,
) -> Result<CellResult> {
    config.validate()?;
    check_alignment(corpus, matrix)?;
    let owned;
    let sims = match sims {
        Some(s) => Some(s),
        None if config.strategy.needs_similarities() => {
            owned = cosine_similarity_matrix(matrix);
            Some(&owned)
        }
        None => None,
    };
    let curves = (0..config.repetitions)
        .into_par_iter()
        .map(|r| run_repetition(corpus, matrix, config, config.repetition_seed(r), sims))
        .collect::<Result<Vec<_>>>()?;
    let aulc = curves.iter().map(aulc).collect::<Result<Vec<_>>>()?;
    let (aulc_mean, aulc_std) = mean_and_std(&aulc);
    Ok(CellResult {
        dataset: corpus.name.clone(),
        config: config.clone(),
        curves,
        aulc,
        aulc_mean,
        aulc_std,
    })
}
