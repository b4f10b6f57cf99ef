use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Corpus, DocId, Label};
use crate::error::{Error, Result};

/// Partition of the corpus into labelled and unlabelled documents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoolState {
    labelled: BTreeMap<DocId, Label>,
    unlabelled: BTreeSet<DocId>,
    /// Completed selection rounds.
    pub round: usize,
}

impl PoolState {
    /// Everything unlabelled.
    pub fn new(n_docs: usize) -> Self {
        Self {
            labelled: BTreeMap::new(),
            unlabelled: (0..n_docs).collect(),
            round: 0,
        }
    }

    /// Builds a pool with the given labelled documents; the rest of
    /// `0..n_docs` is unlabelled.
    pub fn with_labelled(
        n_docs: usize,
        labelled: impl IntoIterator<Item = (DocId, Label)>,
    ) -> Result<Self> {
        let mut pool = Self::new(n_docs);
        for (id, label) in labelled {
            if !pool.unlabelled.remove(&id) {
                return Err(Error::Argument(format!(
                    "document {id} is out of range or listed twice"
                )));
            }
            pool.labelled.insert(id, label);
        }
        Ok(pool)
    }

    pub fn n_docs(&self) -> usize {
        self.labelled.len() + self.unlabelled.len()
    }

    pub fn labels_spent(&self) -> usize {
        self.labelled.len()
    }

    pub fn labelled(&self) -> &BTreeMap<DocId, Label> {
        &self.labelled
    }

    pub fn unlabelled(&self) -> &BTreeSet<DocId> {
        &self.unlabelled
    }

    pub fn is_labelled(&self, id: DocId) -> bool {
        self.labelled.contains_key(&id)
    }

    /// Labelled ids (ascending) and their labels, ready for training.
    pub fn training_set(&self) -> (Vec<DocId>, Vec<Label>) {
        self.labelled.iter().map(|(&id, &l)| (id, l)).unzip()
    }

    pub fn unlabelled_ids(&self) -> Vec<DocId> {
        self.unlabelled.iter().copied().collect()
    }

    /// Moves `ids` from the pool to the labelled set with their true labels.
    pub fn reveal(&mut self, ids: &[DocId], truth: &[Label]) -> Result<()> {
        if let Some(&bad) = ids.iter().find(|id| !self.unlabelled.contains(id)) {
            return Err(Error::Argument(format!(
                "document {bad} is not in the unlabelled pool"
            )));
        }
        let distinct: BTreeSet<_> = ids.iter().collect();
        if distinct.len() != ids.len() {
            return Err(Error::Argument("batch repeats a document".into()));
        }
        for &id in ids {
            self.unlabelled.remove(&id);
            self.labelled.insert(id, truth[id]);
        }
        Ok(())
    }
}

/// Labels `seed_size / 2` random documents of each class.
pub fn seed_pool(corpus: &Corpus, seed_size: usize, rng_seed: u64) -> Result<PoolState> {
    if seed_size < 2 || !seed_size.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "seed size must be even and >= 2, got {seed_size}"
        )));
    }
    let per_class = seed_size / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut chosen = Vec::with_capacity(seed_size);
    for label in [Label::Positive, Label::Negative] {
        let mut ids = corpus.ids_with_label(label);
        if ids.len() < per_class {
            return Err(Error::Dataset(format!(
                "{} {label:?} documents, seed needs {per_class}",
                ids.len()
            )));
        }
        ids.shuffle(&mut rng);
        chosen.extend(ids[..per_class].iter().map(|&id| (id, label)));
    }
    PoolState::with_labelled(corpus.len(), chosen)
}
