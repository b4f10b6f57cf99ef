//! Choice of the SVM regularization constant by stratified cross-validation.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::Label;
use crate::error::{Error, Result};
use crate::representation::DesignMatrix;

use super::svm::{train_svm, SvmParams};

pub const DEFAULT_C_GRID: [f64; 5] = [0.01, 0.1, 1.0, 10.0, 100.0];
pub const DEFAULT_FOLDS: usize = 5;

/// Stratified fold index for each training example. Each class is shuffled
/// and dealt round-robin, continuing the count across classes.
pub fn stratified_folds(y: &[Label], folds: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0; y.len()];
    let mut dealt = 0;
    for class in [Label::Positive, Label::Negative] {
        let mut members: Vec<usize> = (0..y.len()).filter(|&i| y[i] == class).collect();
        members.shuffle(&mut rng);
        for i in members {
            assignment[i] = dealt % folds;
            dealt += 1;
        }
    }
    assignment
}

/// Number of held-out examples classified correctly over all folds.
///
/// A training split that contains a single class predicts that class.
pub fn cv_correct(
    x: &DesignMatrix,
    rows: &[usize],
    y: &[Label],
    c: f64,
    fold_of: &[usize],
    folds: usize,
    seed: u64,
) -> Result<usize> {
    let mut correct = 0;
    for fold in 0..folds {
        let (mut train_rows, mut train_y, mut test) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..rows.len() {
            if fold_of[i] == fold {
                test.push(i);
            } else {
                train_rows.push(rows[i]);
                train_y.push(y[i]);
            }
        }
        if test.is_empty() {
            continue;
        }
        let first = train_y[0];
        if train_y.iter().all(|&l| l == first) {
            correct += test.iter().filter(|&&i| y[i] == first).count();
            continue;
        }
        let model = train_svm(x, &train_rows, &train_y, &SvmParams::new(c, seed))?;
        correct += test
            .iter()
            .filter(|&&i| model.predict(x.row(rows[i])) == y[i])
            .count();
    }
    Ok(correct)
}

/// Returns the grid value with the best cross-validated accuracy, preferring
/// the smallest C among ties.
pub fn tune_c(
    x: &DesignMatrix,
    rows: &[usize],
    y: &[Label],
    grid: &[f64],
    folds: usize,
    seed: u64,
) -> Result<f64> {
    if grid.is_empty() || grid.iter().any(|&c| !(c > 0.0 && c.is_finite())) {
        return Err(Error::Argument(format!("invalid C grid {grid:?}")));
    }
    if grid.len() == 1 {
        return Ok(grid[0]);
    }
    if folds < 2 || rows.len() < folds {
        return Err(Error::Argument(format!(
            "{} examples cannot be split into {folds} folds",
            rows.len()
        )));
    }
    if rows.len() != y.len() {
        return Err(Error::Argument("rows and labels differ in length".into()));
    }
    let positives = y.iter().filter(|&&l| l == Label::Positive).count();
    if positives == 0 || positives == y.len() {
        return Err(Error::Training("tuning needs both classes".into()));
    }

    let fold_of = stratified_folds(y, folds, seed);
    let mut sorted = grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut best = (
        sorted[0],
        cv_correct(x, rows, y, sorted[0], &fold_of, folds, seed)?,
    );
    for &c in &sorted[1..] {
        let score = cv_correct(x, rows, y, c, &fold_of, folds, seed)?;
        if score > best.1 {
            best = (c, score);
        }
    }
    Ok(best.0)
}
