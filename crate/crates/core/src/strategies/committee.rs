//! Bagged committees for query-by-committee.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classifier::{train_svm, LinearSvmModel, SvmParams};
use crate::corpus::{DocId, Label};
use crate::error::{Error, Result};
use crate::representation::DesignMatrix;

pub const COMMITTEE_SIZE: usize = 5;
const MAX_REDRAWS: usize = 100;

/// Entropy of the committee's sign votes in nats.
pub fn vote_entropy(positive_votes: usize, members: usize) -> f64 {
    [positive_votes, members - positive_votes]
        .iter()
        .filter(|&&v| v > 0)
        .map(|&v| {
            let p = v as f64 / members as f64;
            -p * p.ln()
        })
        .sum()
}

/// Draws a bootstrap resample (positions into `y`) that contains both classes.
/// After `MAX_REDRAWS` single-class draws, a random example of the missing
/// class replaces the first position.
fn bootstrap(y: &[Label], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = y.len();
    let mut draw = Vec::new();
    for _ in 0..MAX_REDRAWS {
        draw = (0..n).map(|_| rng.gen_range(0..n)).collect();
        let first = y[draw[0]];
        if draw.iter().any(|&i| y[i] != first) {
            return draw;
        }
    }
    let missing = y[draw[0]].flipped();
    let others: Vec<usize> = (0..n).filter(|&i| y[i] == missing).collect();
    draw[0] = others[rng.gen_range(0..others.len())];
    draw
}

/// Trains `COMMITTEE_SIZE` SVMs on bootstrap resamples of the labelled set.
pub fn build_committee(
    x: &DesignMatrix,
    rows: &[DocId],
    y: &[Label],
    c: f64,
    seed: u64,
) -> Result<Vec<LinearSvmModel>> {
    if rows.len() != y.len() {
        return Err(Error::Argument("rows and labels differ in length".into()));
    }
    let positives = y.iter().filter(|&&l| l == Label::Positive).count();
    if positives == 0 || positives == y.len() {
        return Err(Error::Training("committee needs both classes".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..COMMITTEE_SIZE)
        .map(|m| {
            let draw = bootstrap(y, &mut rng);
            let r: Vec<DocId> = draw.iter().map(|&i| rows[i]).collect();
            let l: Vec<Label> = draw.iter().map(|&i| y[i]).collect();
            train_svm(x, &r, &l, &SvmParams::new(c, seed.wrapping_add(m as u64)))
        })
        .collect()
}
