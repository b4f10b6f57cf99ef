//! L2-regularized hinge-loss linear SVM trained by dual coordinate descent.
//!
//! The bias is folded in as an extra constant feature equal to 1, so it is
//! regularized together with the weights and the dual has only box
//! constraints `0 <= alpha_i <= C`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::representation::{DesignMatrix, Row};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvmParams {
    pub c: f64,
    /// Stopping tolerance on the spread of projected gradients.
    pub tolerance: f64,
    pub max_epochs: usize,
    pub seed: u64,
}

impl SvmParams {
    pub fn new(c: f64, seed: u64) -> Self {
        Self {
            c,
            tolerance: 1e-4,
            max_epochs: 10_000,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainingMeta {
    pub epochs: usize,
    pub converged: bool,
    /// `sum(alpha) - 0.5 * (|w|^2 + b^2)` at the returned solution.
    pub dual_objective: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearSvmModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub c: f64,
    pub meta: TrainingMeta,
}

impl LinearSvmModel {
    #[inline]
    pub fn decision(&self, x: Row<'_>) -> f64 {
        x.dot_dense(&self.weights) + self.bias
    }

    pub fn predict(&self, x: Row<'_>) -> Label {
        Label::from_decision(self.decision(x))
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `|w|` over the feature weights (bias excluded).
    pub fn weight_norm(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum::<f64>().sqrt()
    }
}

/// `w . x + b` for the requested rows.
pub fn decision_values(
    model: &LinearSvmModel,
    x: &DesignMatrix,
    rows: &[usize],
) -> Result<Vec<f64>> {
    if model.dim() != x.dim() {
        return Err(Error::Argument(format!(
            "model has dimension {}, matrix has {}",
            model.dim(),
            x.dim()
        )));
    }
    Ok(rows.iter().map(|&i| model.decision(x.row(i))).collect())
}

fn check_training_input(x: &DesignMatrix, rows: &[usize], y: &[Label]) -> Result<()> {
    if rows.len() != y.len() {
        return Err(Error::Argument(format!(
            "{} rows but {} labels",
            rows.len(),
            y.len()
        )));
    }
    if let Some(&bad) = rows.iter().find(|&&r| r >= x.n_docs()) {
        return Err(Error::Argument(format!("row {bad} out of range")));
    }
    let positives = y.iter().filter(|&&l| l == Label::Positive).count();
    if rows.len() < 2 || positives == 0 || positives == y.len() {
        return Err(Error::Training(format!(
            "need both classes, got {positives} positive of {}",
            y.len()
        )));
    }
    Ok(())
}

/// Trains on `x.row(rows[i])` with label `y[i]`. Rows may repeat.
pub fn train_svm(
    x: &DesignMatrix,
    rows: &[usize],
    y: &[Label],
    params: &SvmParams,
) -> Result<LinearSvmModel> {
    check_training_input(x, rows, y)?;
    if !(params.c > 0.0 && params.c.is_finite()) {
        return Err(Error::Argument(format!(
            "C must be positive, got {}",
            params.c
        )));
    }
    let c = params.c;
    let l = rows.len();
    let sign: Vec<f64> = y.iter().map(|l| l.sign()).collect();
    let qd: Vec<f64> = rows.iter().map(|&r| x.row(r).norm_sq() + 1.0).collect();

    let mut w = vec![0.0; x.dim()];
    let mut b = 0.0;
    let mut alpha = vec![0.0; l];
    let mut index: Vec<usize> = (0..l).collect();
    let mut active = l;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    // projected-gradient bounds from the previous epoch, used for shrinking
    let mut pg_max_old = f64::INFINITY;
    let mut pg_min_old = f64::NEG_INFINITY;
    let mut epochs = 0;
    let mut converged = false;

    while epochs < params.max_epochs {
        let mut pg_max = f64::NEG_INFINITY;
        let mut pg_min = f64::INFINITY;
        index[..active].shuffle(&mut rng);

        let mut s = 0;
        while s < active {
            let i = index[s];
            let xi = x.row(rows[i]);
            let g = sign[i] * (xi.dot_dense(&w) + b) - 1.0;
            let mut pg = 0.0;
            if alpha[i] == 0.0 {
                if g > pg_max_old {
                    active -= 1;
                    index.swap(s, active);
                    continue;
                } else if g < 0.0 {
                    pg = g;
                }
            } else if alpha[i] == c {
                if g < pg_min_old {
                    active -= 1;
                    index.swap(s, active);
                    continue;
                } else if g > 0.0 {
                    pg = g;
                }
            } else {
                pg = g;
            }
            pg_max = pg_max.max(pg);
            pg_min = pg_min.min(pg);

            if pg.abs() > 1e-12 {
                let old = alpha[i];
                alpha[i] = (old - g / qd[i]).clamp(0.0, c);
                let d = (alpha[i] - old) * sign[i];
                if d != 0.0 {
                    xi.axpy(d, &mut w);
                    b += d;
                }
            }
            s += 1;
        }
        epochs += 1;

        if pg_max - pg_min <= params.tolerance {
            if active == l {
                converged = true;
                break;
            }
            // recheck every coordinate before declaring convergence
            active = l;
            pg_max_old = f64::INFINITY;
            pg_min_old = f64::NEG_INFINITY;
            continue;
        }
        pg_max_old = if pg_max <= 0.0 { f64::INFINITY } else { pg_max };
        pg_min_old = if pg_min >= 0.0 {
            f64::NEG_INFINITY
        } else {
            pg_min
        };
    }

    let w_sq: f64 = w.iter().map(|v| v * v).sum();
    let dual_objective = alpha.iter().sum::<f64>() - 0.5 * (w_sq + b * b);
    Ok(LinearSvmModel {
        weights: w,
        bias: b,
        c,
        meta: TrainingMeta {
            epochs,
            converged,
            dual_objective,
        },
    })
}
