//! Python module `alrep`: corpora, representations, selection strategies,
//! the simulation loop and the cross-dataset statistics.

use std::collections::BTreeMap;
use std::path::PathBuf;

use alrep_core::classifier::{self, fit_calibration, train_svm, SvmParams};
use alrep_core::corpus::{self, CorpusFormat, Label, PreprocessConfig};
use alrep_core::engine::{self, ExperimentConfig, PoolState};
use alrep_core::representation::{self, DesignMatrix, RepresentationKind};
use alrep_core::stats::{self, ResultTable};
use alrep_core::strategies::{self, build_committee, StrategyContext, StrategyName};
use alrep_core::Error;
use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        Error::Training(_) | Error::Contract(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn label(v: i64) -> PyResult<Label> {
    Label::from_int(v)
        .ok_or_else(|| PyValueError::new_err(format!("label must be 0 or 1, got {v}")))
}

fn strategy(name: &str) -> PyResult<StrategyName> {
    name.parse().map_err(py_err)
}

/// Labelled documents. Built raw, then `preprocess()` fixes tokens and vocabulary.
#[pyclass(name = "Corpus", module = "alrep", frozen)]
struct PyCorpus {
    inner: corpus::Corpus,
}

#[pymethods]
impl PyCorpus {
    #[new]
    #[pyo3(signature = (texts, labels, name = "corpus"))]
    fn new(texts: Vec<String>, labels: Vec<i64>, name: &str) -> PyResult<Self> {
        if texts.len() != labels.len() {
            return Err(PyValueError::new_err("texts and labels differ in length"));
        }
        let labels = labels
            .into_iter()
            .map(label)
            .collect::<PyResult<Vec<_>>>()?;
        let inner =
            corpus::Corpus::from_records(name, texts.into_iter().zip(labels)).map_err(py_err)?;
        Ok(Self { inner })
    }

    /// Reads csv or jsonl (inferred from the extension unless given).
    #[staticmethod]
    #[pyo3(signature = (path, format = None))]
    fn load(path: PathBuf, format: Option<&str>) -> PyResult<Self> {
        let format = match format {
            Some("csv") => CorpusFormat::Csv,
            Some("jsonl") => CorpusFormat::Jsonl,
            Some(other) => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
            None => CorpusFormat::from_path(&path).ok_or_else(|| {
                PyValueError::new_err(format!("cannot infer format of {}", path.display()))
            })?,
        };
        Ok(Self {
            inner: corpus::load_corpus(&path, format).map_err(py_err)?,
        })
    }

    #[pyo3(signature = (min_count = 10, min_doc_freq = 5))]
    fn preprocess(&self, min_count: u64, min_doc_freq: u64) -> Self {
        let config = PreprocessConfig {
            min_count,
            min_doc_freq,
            ..PreprocessConfig::default()
        };
        Self {
            inner: corpus::preprocess(&self.inner, &config),
        }
    }

    fn subsample(&self, n_per_class: usize, seed: u64) -> PyResult<Self> {
        Ok(Self {
            inner: corpus::subsample(&self.inner, n_per_class, seed).map_err(py_err)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    fn labels(&self) -> Vec<u32> {
        self.inner
            .labels()
            .into_iter()
            .map(|l| u32::from(l.as_int()))
            .collect()
    }

    fn tokens(&self, id: usize) -> PyResult<Vec<String>> {
        self.inner
            .documents
            .get(id)
            .map(|d| d.tokens.clone())
            .ok_or_else(|| PyValueError::new_err(format!("no document {id}")))
    }

    fn vocabulary(&self) -> Vec<String> {
        self.inner.vocabulary.terms().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Corpus({:?}, {} docs, {} positive, vocabulary {})",
            self.inner.name,
            self.inner.len(),
            self.inner.class_counts.positive,
            self.inner.vocabulary.len()
        )
    }
}

/// One row per document in a fixed representation.
#[pyclass(name = "Matrix", module = "alrep", frozen)]
struct PyMatrix {
    inner: DesignMatrix,
}

#[pymethods]
impl PyMatrix {
    #[staticmethod]
    fn tf(corpus: &PyCorpus) -> PyResult<Self> {
        Ok(Self {
            inner: representation::build_tf(&corpus.inner).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn tfidf(corpus: &PyCorpus) -> PyResult<Self> {
        Ok(Self {
            inner: representation::build_tfidf(&corpus.inner).map_err(py_err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (corpus, topics = 300, seed = 0, iterations = 1000))]
    fn lda(corpus: &PyCorpus, topics: usize, seed: u64, iterations: usize) -> PyResult<Self> {
        let model =
            representation::fit_lda(&corpus.inner, topics, seed, iterations).map_err(py_err)?;
        Ok(Self {
            inner: model.to_matrix(),
        })
    }

    /// Token-weighted mean of word vectors read from a text vector file.
    #[staticmethod]
    fn wordvec(corpus: &PyCorpus, vectors: PathBuf) -> PyResult<Self> {
        let table = representation::WordVectorTable::load(&vectors).map_err(py_err)?;
        Ok(Self {
            inner: representation::build_wordvec_avg(&corpus.inner, &table).map_err(py_err)?,
        })
    }

    /// Rows from an embedding file, checked against the corpus size.
    #[staticmethod]
    fn precomputed(path: PathBuf, corpus: &PyCorpus) -> PyResult<Self> {
        Ok(Self {
            inner: representation::load_precomputed(&path, &corpus.inner).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn dense(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        Ok(Self {
            inner: DesignMatrix::dense(RepresentationKind::Precomputed, dim, rows, "python")
                .map_err(py_err)?,
        })
    }

    #[getter]
    fn n_docs(&self) -> usize {
        self.inner.n_docs()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().as_str()
    }

    fn row(&self, i: usize) -> PyResult<Vec<f64>> {
        if i >= self.inner.n_docs() {
            return Err(PyValueError::new_err(format!("no row {i}")));
        }
        Ok(self.inner.row(i).to_dense(self.inner.dim()))
    }

    /// Cosine similarity of every pair of rows, as nested lists.
    fn similarities(&self) -> Vec<Vec<f64>> {
        let s = representation::cosine_similarity_matrix(&self.inner);
        (0..s.len()).map(|i| s.row(i).to_vec()).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Matrix({}, {}x{})",
            self.inner.kind().as_str(),
            self.inner.n_docs(),
            self.inner.dim()
        )
    }
}

#[pyclass(name = "SvmModel", module = "alrep", frozen)]
struct PySvmModel {
    inner: classifier::LinearSvmModel,
}

#[pymethods]
impl PySvmModel {
    #[getter]
    fn weights(&self) -> Vec<f64> {
        self.inner.weights.clone()
    }

    #[getter]
    fn bias(&self) -> f64 {
        self.inner.bias
    }

    #[getter]
    fn c(&self) -> f64 {
        self.inner.c
    }

    #[getter]
    fn dual_objective(&self) -> f64 {
        self.inner.meta.dual_objective
    }

    #[getter]
    fn converged(&self) -> bool {
        self.inner.meta.converged
    }

    fn decision(&self, x: Vec<f64>) -> PyResult<f64> {
        if x.len() != self.inner.dim() {
            return Err(PyValueError::new_err(format!(
                "expected {} values, got {}",
                self.inner.dim(),
                x.len()
            )));
        }
        Ok(self.inner.decision(representation::Row::Dense(&x)))
    }
}

/// Linear SVM on the given rows of `matrix` with 0/1 labels.
#[pyfunction]
#[pyo3(signature = (matrix, rows, labels, c = 1.0, seed = 0))]
fn train(
    matrix: &PyMatrix,
    rows: Vec<usize>,
    labels: Vec<i64>,
    c: f64,
    seed: u64,
) -> PyResult<PySvmModel> {
    let y = labels
        .into_iter()
        .map(label)
        .collect::<PyResult<Vec<_>>>()?;
    let inner = train_svm(&matrix.inner, &rows, &y, &SvmParams::new(c, seed)).map_err(py_err)?;
    Ok(PySvmModel { inner })
}

/// Next batch for `strategy` given the labelled documents `{id: label}`.
/// Model-based strategies train on the labelled set with the given C.
#[pyfunction]
#[pyo3(signature = (strategy_name, matrix, labelled, batch_size = 10, seed = 0, c = 1.0))]
fn select_batch(
    strategy_name: &str,
    matrix: &PyMatrix,
    labelled: BTreeMap<usize, i64>,
    batch_size: usize,
    seed: u64,
    c: f64,
) -> PyResult<Vec<usize>> {
    let name = strategy(strategy_name)?;
    let m = &matrix.inner;
    let pairs = labelled
        .into_iter()
        .map(|(id, l)| Ok((id, label(l)?)))
        .collect::<PyResult<Vec<_>>>()?;
    let pool = PoolState::with_labelled(m.n_docs(), pairs).map_err(py_err)?;
    let (rows, y) = pool.training_set();
    let model = if name.needs_model() {
        Some(train_svm(m, &rows, &y, &SvmParams::new(c, seed)).map_err(py_err)?)
    } else {
        None
    };
    let calibration = match (&model, name.needs_calibration()) {
        (Some(model), true) => Some(fit_calibration(model, m, &rows, &y).map_err(py_err)?),
        _ => None,
    };
    let committee = if name.needs_committee() {
        Some(build_committee(m, &rows, &y, c, seed).map_err(py_err)?)
    } else {
        None
    };
    let sims = name
        .needs_similarities()
        .then(|| representation::cosine_similarity_matrix(m));
    let ctx = StrategyContext {
        matrix: m,
        sims: sims.as_ref(),
        pool: &pool,
        model: model.as_ref(),
        calibration: calibration.as_ref(),
        committee: committee.as_deref(),
        seed,
        batch_size,
    };
    Ok(strategies::select(name, &ctx).map_err(py_err)?.ids)
}

/// Runs every repetition of one cell. Returns a dict with the AULC values,
/// their mean and standard deviation, and the curves as
/// `[(labels, accuracy_plus), ...]` per repetition.
#[pyfunction]
#[pyo3(signature = (corpus, matrix, strategy_name, budget = 1000, batch_size = 10, seed_size = 10, repetitions = 10, base_seed = 0))]
#[allow(clippy::too_many_arguments)]
fn run_cell<'py>(
    py: Python<'py>,
    corpus: &PyCorpus,
    matrix: &PyMatrix,
    strategy_name: &str,
    budget: usize,
    batch_size: usize,
    seed_size: usize,
    repetitions: usize,
    base_seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let config = ExperimentConfig {
        budget,
        batch_size,
        seed_size,
        repetitions,
        base_seed,
        ..ExperimentConfig::new(strategy(strategy_name)?, matrix.inner.kind())
    };
    let result = py
        .detach(|| engine::run_cell(&corpus.inner, &matrix.inner, &config, None))
        .map_err(py_err)?;
    let curves: Vec<Vec<(usize, f64)>> = result
        .curves
        .iter()
        .map(|c| {
            c.points
                .iter()
                .map(|p| (p.labels, p.accuracy_plus))
                .collect()
        })
        .collect();
    let out = PyDict::new(py);
    out.set_item("aulc", result.aulc)?;
    out.set_item("aulc_mean", result.aulc_mean)?;
    out.set_item("aulc_std", result.aulc_std)?;
    out.set_item("curves", curves)?;
    Ok(out)
}

/// Normalized trapezoid area under `[(labels, accuracy), ...]`.
#[pyfunction]
fn aulc(points: Vec<(usize, f64)>) -> PyResult<f64> {
    engine::aulc(&engine::LearningCurve::from_points(0, &points)).map_err(py_err)
}

/// Two-sided Wilcoxon signed-rank test of `a - b`.
#[pyfunction]
fn wilcoxon<'py>(py: Python<'py>, a: Vec<f64>, b: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
    let r = stats::wilcoxon_signed_rank(&a, &b).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("w_plus", r.w_plus)?;
    out.set_item("n_effective", r.n_effective)?;
    out.set_item("p_value", r.p_value)?;
    out.set_item("degenerate", r.degenerate)?;
    out.set_item(
        "method",
        match r.method {
            stats::WilcoxonMethod::Exact => "exact",
            stats::WilcoxonMethod::Normal => "normal",
        },
    )?;
    Ok(out)
}

/// `(wins, draws, losses, p_value)` of method a against b at 3 decimals.
#[pyfunction]
fn compare(a: Vec<f64>, b: Vec<f64>) -> PyResult<(usize, usize, usize, Option<f64>)> {
    let c = stats::compare_methods("a", &a, "b", &b).map_err(py_err)?;
    Ok((c.wins, c.draws, c.losses, c.p_value))
}

/// Mean rank per method; `aulc` has one row per method and one column per dataset.
#[pyfunction]
fn average_ranks(aulc: Vec<Vec<f64>>) -> PyResult<Vec<f64>> {
    let methods = (0..aulc.len()).map(|i| format!("m{i}")).collect();
    let datasets = (0..aulc.first().map_or(0, Vec::len))
        .map(|d| format!("d{d}"))
        .collect();
    let table = ResultTable::new(methods, datasets, aulc).map_err(py_err)?;
    Ok(stats::average_ranks(&table))
}

#[pyfunction]
fn write_embeddings(path: PathBuf, rows: Vec<Vec<f32>>) -> PyResult<()> {
    let dim = rows.first().map_or(0, Vec::len);
    representation::write_embedding_file(&path, dim, &rows).map_err(py_err)
}

/// Header, checksum and value checks. Returns a dict with `n_docs`, `dim`
/// and a list of issue strings.
#[pyfunction]
#[pyo3(signature = (path, n_docs = None))]
fn validate_embeddings<'py>(
    py: Python<'py>,
    path: PathBuf,
    n_docs: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let report = representation::validate_embedding_file(&path, n_docs).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("n_docs", report.n_docs)?;
    out.set_item("dim", report.dim)?;
    out.set_item(
        "issues",
        report
            .issues
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>(),
    )?;
    Ok(out)
}

#[pymodule]
#[pyo3(name = "alrep")]
fn alrep_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCorpus>()?;
    m.add_class::<PyMatrix>()?;
    m.add_class::<PySvmModel>()?;
    m.add_function(wrap_pyfunction!(train, m)?)?;
    m.add_function(wrap_pyfunction!(select_batch, m)?)?;
    m.add_function(wrap_pyfunction!(run_cell, m)?)?;
    m.add_function(wrap_pyfunction!(aulc, m)?)?;
    m.add_function(wrap_pyfunction!(wilcoxon, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(average_ranks, m)?)?;
    m.add_function(wrap_pyfunction!(write_embeddings, m)?)?;
    m.add_function(wrap_pyfunction!(validate_embeddings, m)?)?;
    m.add(
        "STRATEGIES",
        StrategyName::ALL
            .iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>(),
    )?;
    Ok(())
}
