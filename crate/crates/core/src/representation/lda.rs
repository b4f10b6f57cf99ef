//! Latent Dirichlet allocation fitted by collapsed Gibbs sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::Corpus;
use crate::error::{Error, Result};

use super::bow::require_preprocessed;
use super::matrix::{DesignMatrix, RepresentationKind};

#[derive(Clone, Debug, PartialEq)]
pub struct LdaConfig {
    pub n_topics: usize,
    /// Document-topic prior. `None` means `50 / n_topics`.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl LdaConfig {
    pub fn new(n_topics: usize, seed: u64) -> Self {
        Self {
            n_topics,
            alpha: None,
            beta: 0.01,
            iterations: 1000,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LdaModel {
    pub n_topics: usize,
    pub alpha: f64,
    pub beta: f64,
    pub vocab_size: usize,
    pub seed: u64,
    pub iterations: usize,
    /// `n_topics x vocab_size` assignment counts, row-major.
    topic_term: Vec<u32>,
    topic_totals: Vec<u32>,
    /// `n_docs x n_topics` assignment counts, row-major.
    doc_topic: Vec<u32>,
    doc_len: Vec<u32>,
    corpus_name: String,
}

/// Fits LDA with the default priors (alpha = 50/K, beta = 0.01).
pub fn fit_lda(corpus: &Corpus, n_topics: usize, seed: u64, iterations: usize) -> Result<LdaModel> {
    fit_lda_with(
        corpus,
        &LdaConfig {
            iterations,
            ..LdaConfig::new(n_topics, seed)
        },
    )
}

pub fn fit_lda_with(corpus: &Corpus, config: &LdaConfig) -> Result<LdaModel> {
    require_preprocessed(corpus)?;
    let k = config.n_topics;
    if k < 2 {
        return Err(Error::Argument(format!("n_topics must be >= 2, got {k}")));
    }
    if config.iterations == 0 {
        return Err(Error::Argument("iterations must be >= 1".into()));
    }
    let alpha = config.alpha.unwrap_or(50.0 / k as f64);
    if !(alpha > 0.0 && config.beta > 0.0) {
        return Err(Error::Argument("alpha and beta must be positive".into()));
    }
    let v = corpus.vocabulary.len();
    if v == 0 {
        return Err(Error::Dataset(format!(
            "corpus {:?} has an empty vocabulary",
            corpus.name
        )));
    }

    let docs: Vec<Vec<usize>> = corpus
        .documents
        .iter()
        .map(|d| {
            d.tokens
                .iter()
                .filter_map(|t| corpus.vocabulary.get(t))
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut topic_term = vec![0u32; k * v];
    let mut topic_totals = vec![0u32; k];
    let mut doc_topic = vec![0u32; docs.len() * k];
    let mut assignments: Vec<Vec<usize>> = Vec::with_capacity(docs.len());

    for (d, words) in docs.iter().enumerate() {
        let z: Vec<usize> = words.iter().map(|_| rng.gen_range(0..k)).collect();
        for (&w, &t) in words.iter().zip(&z) {
            topic_term[t * v + w] += 1;
            topic_totals[t] += 1;
            doc_topic[d * k + t] += 1;
        }
        assignments.push(z);
    }

    let v_beta = v as f64 * config.beta;
    let mut weights = vec![0.0f64; k];
    for _ in 0..config.iterations {
        for (d, words) in docs.iter().enumerate() {
            let dt = &mut doc_topic[d * k..(d + 1) * k];
            for (pos, &w) in words.iter().enumerate() {
                let old = assignments[d][pos];
                topic_term[old * v + w] -= 1;
                topic_totals[old] -= 1;
                dt[old] -= 1;

                let mut total = 0.0;
                for t in 0..k {
                    total += (dt[t] as f64 + alpha) * (topic_term[t * v + w] as f64 + config.beta)
                        / (topic_totals[t] as f64 + v_beta);
                    weights[t] = total;
                }
                let u = rng.gen::<f64>() * total;
                let new = weights.partition_point(|&c| c <= u).min(k - 1);

                topic_term[new * v + w] += 1;
                topic_totals[new] += 1;
                dt[new] += 1;
                assignments[d][pos] = new;
            }
        }
    }

    Ok(LdaModel {
        n_topics: k,
        alpha,
        beta: config.beta,
        vocab_size: v,
        seed: config.seed,
        iterations: config.iterations,
        topic_term,
        topic_totals,
        doc_len: docs.iter().map(|w| w.len() as u32).collect(),
        doc_topic,
        corpus_name: corpus.name.clone(),
    })
}

impl LdaModel {
    pub fn n_docs(&self) -> usize {
        self.doc_len.len()
    }

    /// Smoothed topic proportions `(n_dk + alpha) / (n_d + K alpha)`.
    /// A document without tokens gets the uniform distribution.
    pub fn proportions(&self, doc: usize) -> Vec<f64> {
        let k = self.n_topics;
        let denom = self.doc_len[doc] as f64 + k as f64 * self.alpha;
        self.doc_topic[doc * k..(doc + 1) * k]
            .iter()
            .map(|&c| (c as f64 + self.alpha) / denom)
            .collect()
    }

    /// Smoothed term distribution of one topic.
    pub fn topic_terms(&self, topic: usize) -> Vec<f64> {
        let v = self.vocab_size;
        let denom = self.topic_totals[topic] as f64 + v as f64 * self.beta;
        self.topic_term[topic * v..(topic + 1) * v]
            .iter()
            .map(|&c| (c as f64 + self.beta) / denom)
            .collect()
    }

    pub fn to_matrix(&self) -> DesignMatrix {
        let rows = (0..self.n_docs()).map(|d| self.proportions(d)).collect();
        DesignMatrix::dense(
            RepresentationKind::Lda,
            self.n_topics,
            rows,
            format!(
                "lda corpus={} topics={} alpha={} beta={} iters={} seed={}",
                self.corpus_name, self.n_topics, self.alpha, self.beta, self.iterations, self.seed
            ),
        )
        .expect("proportions are finite and correctly shaped")
    }
}

pub fn lda_to_matrix(model: &LdaModel) -> DesignMatrix {
    model.to_matrix()
}
