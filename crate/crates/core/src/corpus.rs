//! Labelled binary text corpora: loading, tokenization, and vocabulary pruning.
//!
//! A [`Corpus`] starts out raw (as returned by [`load_corpus`]) and becomes
//! usable by the bag-of-words and topic representations after [`preprocess`].
//! Preprocessing always works from `raw_text`, so applying it twice gives the
//! same corpus as applying it once.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type DocId = usize;

/// Identifier recorded with every preprocessed corpus so that external
/// tools can check they tokenize the same way.
pub const TOKENIZER_ID: &str = "unicode-alnum-lower/v1";

const BUNDLED_STOP_WORDS: &str = include_str!("../data/stopwords_en.txt");

/// Binary class label. Files encode `Positive` as 1 and `Negative` as 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    /// +1.0 for positive, -1.0 for negative.
    pub fn sign(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }

    /// Decision values of exactly zero are assigned to the positive class.
    pub fn from_decision(value: f64) -> Label {
        if value >= 0.0 {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn from_int(value: i64) -> Option<Label> {
        match value {
            1 => Some(Label::Positive),
            0 => Some(Label::Negative),
            _ => None,
        }
    }

    pub fn as_int(self) -> u8 {
        match self {
            Label::Positive => 1,
            Label::Negative => 0,
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Positive => Label::Negative,
            Label::Negative => Label::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub id: DocId,
    pub raw_text: String,
    /// Vocabulary-retained tokens (bag-of-words and LDA input). Empty until
    /// the corpus is preprocessed.
    pub tokens: Vec<String>,
    /// Lowercased, stop-word-free token stream without rarity pruning, used
    /// for word-vector averaging.
    pub stream: Vec<String>,
    pub label: Label,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Vocabulary {
    index: HashMap<String, usize>,
    terms: Vec<String>,
    corpus_freq: Vec<u64>,
    doc_freq: Vec<u64>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, index: usize) -> &str {
        &self.terms[index]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    /// Total occurrences of the term across the corpus.
    pub fn corpus_frequency(&self, index: usize) -> u64 {
        self.corpus_freq[index]
    }

    /// Number of documents the term appears in.
    pub fn document_frequency(&self, index: usize) -> u64 {
        self.doc_freq[index]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub positive: usize,
    pub negative: usize,
}

impl ClassCounts {
    pub fn total(&self) -> usize {
        self.positive + self.negative
    }

    pub fn min(&self) -> usize {
        self.positive.min(self.negative)
    }

    pub fn get(&self, label: Label) -> usize {
        match label {
            Label::Positive => self.positive,
            Label::Negative => self.negative,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PreprocessConfig {
    pub stop_words: BTreeSet<String>,
    /// Terms with fewer total occurrences are dropped.
    pub min_count: u64,
    /// Terms appearing in fewer documents are dropped.
    pub min_doc_freq: u64,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            stop_words: parse_stop_words(BUNDLED_STOP_WORDS),
            min_count: 10,
            min_doc_freq: 5,
        }
    }
}

impl PreprocessConfig {
    /// Replaces the stop-word list with one read from a file (one term per line).
    pub fn with_stop_word_file(mut self, path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.stop_words = parse_stop_words(&text);
        Ok(self)
    }
}

fn parse_stop_words(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|l| l.trim().to_lowercase())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// The bundled English stop-word list.
pub fn default_stop_words() -> BTreeSet<String> {
    parse_stop_words(BUNDLED_STOP_WORDS)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Corpus {
    pub name: String,
    pub documents: Vec<Document>,
    pub vocabulary: Vocabulary,
    pub class_counts: ClassCounts,
    /// Configuration of the last preprocessing pass, if any.
    pub preprocess: Option<PreprocessConfig>,
}

impl Corpus {
    /// Builds a raw corpus from `(text, label)` pairs in order.
    pub fn from_records<S: Into<String>>(
        name: impl Into<String>,
        records: impl IntoIterator<Item = (S, Label)>,
    ) -> Result<Self> {
        let documents: Vec<Document> = records
            .into_iter()
            .enumerate()
            .map(|(id, (text, label))| Document {
                id,
                raw_text: text.into(),
                tokens: Vec::new(),
                stream: Vec::new(),
                label,
            })
            .collect();
        let class_counts = count_classes(&documents);
        if documents.is_empty() {
            return Err(Error::Dataset("empty corpus".into()));
        }
        if class_counts.positive == 0 || class_counts.negative == 0 {
            return Err(Error::Dataset(format!(
                "single class: {} positive, {} negative",
                class_counts.positive, class_counts.negative
            )));
        }
        Ok(Self {
            name: name.into(),
            documents,
            vocabulary: Vocabulary::default(),
            class_counts,
            preprocess: None,
        })
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.documents.iter().map(|d| d.label).collect()
    }

    pub fn is_preprocessed(&self) -> bool {
        self.preprocess.is_some()
    }

    pub fn ids_with_label(&self, label: Label) -> Vec<DocId> {
        self.documents
            .iter()
            .filter(|d| d.label == label)
            .map(|d| d.id)
            .collect()
    }
}

fn count_classes(documents: &[Document]) -> ClassCounts {
    let positive = documents
        .iter()
        .filter(|d| d.label == Label::Positive)
        .count();
    ClassCounts {
        positive,
        negative: documents.len() - positive,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    Csv,
    Jsonl,
}

impl CorpusFormat {
    /// Guesses the format from a file extension (`.csv`, `.jsonl`/`.json`).
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(CorpusFormat::Csv),
            "jsonl" | "json" | "ndjson" => Some(CorpusFormat::Jsonl),
            _ => None,
        }
    }
}

impl std::str::FromStr for CorpusFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(CorpusFormat::Csv),
            "jsonl" => Ok(CorpusFormat::Jsonl),
            other => Err(Error::Argument(format!("unknown corpus format {other:?}"))),
        }
    }
}

/// Loads a corpus without preprocessing it. The corpus name is the file stem.
pub fn load_corpus(path: &Path, format: CorpusFormat) -> Result<Corpus> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let records = match format {
        CorpusFormat::Csv => parse_csv(&text)?,
        CorpusFormat::Jsonl => parse_jsonl(&text)?,
    };
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string());
    Corpus::from_records(name, records)
}

fn parse_label(record: usize, field: &str) -> Result<Label> {
    field
        .trim()
        .parse::<i64>()
        .ok()
        .and_then(Label::from_int)
        .ok_or_else(|| Error::format(record, format!("label must be 0 or 1, got {field:?}")))
}

fn parse_csv(text: &str) -> Result<Vec<(String, Label)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::format(0, format!("unreadable header: {e}")))?
        .clone();
    let text_col = headers.iter().position(|h| h.trim() == "text");
    let label_col = headers.iter().position(|h| h.trim() == "label");
    let (text_col, label_col) = match (text_col, label_col) {
        (Some(t), Some(l)) if headers.len() == 2 => (t, l),
        _ => {
            return Err(Error::format(
                0,
                format!("header must be exactly `text,label`, got {:?}", headers),
            ))
        }
    };
    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| Error::format(i, e.to_string()))?;
        if row.len() != 2 {
            return Err(Error::format(
                i,
                format!("expected 2 fields (text,label), found {}", row.len()),
            ));
        }
        let label_field = &row[label_col];
        if label_field.trim().is_empty() {
            return Err(Error::format(i, "missing label"));
        }
        out.push((row[text_col].to_string(), parse_label(i, label_field)?));
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRecord {
    text: String,
    label: i64,
}

fn parse_jsonl(text: &str) -> Result<Vec<(String, Label)>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            let rec: JsonRecord =
                serde_json::from_str(line).map_err(|e| Error::format(i, e.to_string()))?;
            let label = Label::from_int(rec.label).ok_or_else(|| {
                Error::format(i, format!("label must be 0 or 1, got {}", rec.label))
            })?;
            Ok((rec.text, label))
        })
        .collect()
}

/// Lowercases and splits on every non-alphanumeric character.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Tokenizes every document, removes stop words, and prunes rare terms.
///
/// A term is dropped when its total count is below `min_count` or its
/// document frequency is below `min_doc_freq`. Documents left with no tokens
/// stay in the corpus.
pub fn preprocess(corpus: &Corpus, config: &PreprocessConfig) -> Corpus {
    let streams: Vec<Vec<String>> = corpus
        .documents
        .iter()
        .map(|d| {
            tokenize(&d.raw_text)
                .into_iter()
                .filter(|t| !config.stop_words.contains(t))
                .collect()
        })
        .collect();

    let mut counts: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for stream in &streams {
        let mut seen = BTreeSet::new();
        for tok in stream {
            let entry = counts.entry(tok.as_str()).or_default();
            entry.0 += 1;
            if seen.insert(tok.as_str()) {
                entry.1 += 1;
            }
        }
    }

    let mut vocabulary = Vocabulary::default();
    for (term, (count, df)) in counts {
        if count < config.min_count || df < config.min_doc_freq {
            continue;
        }
        vocabulary
            .index
            .insert(term.to_string(), vocabulary.terms.len());
        vocabulary.terms.push(term.to_string());
        vocabulary.corpus_freq.push(count);
        vocabulary.doc_freq.push(df);
    }

    let documents = corpus
        .documents
        .iter()
        .zip(streams)
        .map(|(d, stream)| Document {
            id: d.id,
            raw_text: d.raw_text.clone(),
            tokens: stream
                .iter()
                .filter(|t| vocabulary.index.contains_key(t.as_str()))
                .cloned()
                .collect(),
            stream,
            label: d.label,
        })
        .collect();

    Corpus {
        name: corpus.name.clone(),
        documents,
        vocabulary,
        class_counts: corpus.class_counts,
        preprocess: Some(config.clone()),
    }
}

/// Draws a balanced subsample with `n_per_class` documents of each class.
///
/// Selected documents keep their original relative order and are renumbered
/// from 0. A preprocessed input is preprocessed again with the same
/// configuration, since vocabulary thresholds depend on the documents present.
pub fn subsample(corpus: &Corpus, n_per_class: usize, seed: u64) -> Result<Corpus> {
    if n_per_class == 0 || n_per_class > corpus.class_counts.min() {
        return Err(Error::Argument(format!(
            "n_per_class={n_per_class} must be in 1..={}",
            corpus.class_counts.min()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = Vec::with_capacity(2 * n_per_class);
    for label in [Label::Positive, Label::Negative] {
        let mut ids = corpus.ids_with_label(label);
        ids.shuffle(&mut rng);
        chosen.extend_from_slice(&ids[..n_per_class]);
    }
    chosen.sort_unstable();

    let raw = Corpus::from_records(
        corpus.name.clone(),
        chosen.iter().map(|&id| {
            let d = &corpus.documents[id];
            (d.raw_text.clone(), d.label)
        }),
    )?;
    Ok(match &corpus.preprocess {
        Some(config) => preprocess(&raw, config),
        None => raw,
    })
}
