//! Experiment grids: run every (dataset, representation, strategy) cell and
//! write curves, AULC tables, ranks and pairwise tests to an output folder.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{load_corpus, preprocess, subsample, Corpus, CorpusFormat, PreprocessConfig};
use crate::engine::{run_cell, CellResult, ExperimentConfig};
use crate::error::{Error, Result};
use crate::representation::{
    build_tf, build_tfidf, build_wordvec_avg, cosine_similarity_matrix, fit_lda_with,
    load_precomputed, DesignMatrix, LdaConfig, RepresentationKind, WordVectorTable,
};
use crate::stats::{average_ranks, dataset_ranks, pairwise_table, ResultTable};
use crate::strategies::StrategyName;

/// A representation as named in a manifest: `tf`, `tfidf`, `lda`,
/// `wordvec`, or `precomputed:<embedding name>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepresentationSpec {
    pub kind: RepresentationKind,
    pub embedding: Option<String>,
}

impl RepresentationSpec {
    pub fn label(&self) -> String {
        match &self.embedding {
            Some(name) => format!("precomputed:{name}"),
            None => self.kind.as_str().to_string(),
        }
    }

    /// Name safe for file paths.
    pub fn slug(&self) -> String {
        match &self.embedding {
            Some(name) => name.clone(),
            None => self.kind.as_str().to_string(),
        }
    }
}

impl std::str::FromStr for RepresentationSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((kind, name)) => {
                if kind.parse::<RepresentationKind>()? != RepresentationKind::Precomputed
                    || name.is_empty()
                {
                    return Err(Error::Argument(format!(
                        "{s:?}: only precomputed representations take a name"
                    )));
                }
                Ok(Self {
                    kind: RepresentationKind::Precomputed,
                    embedding: Some(name.to_string()),
                })
            }
            None => {
                let kind: RepresentationKind = s.parse()?;
                if kind == RepresentationKind::Precomputed {
                    return Err(Error::Argument("write precomputed:<name>".into()));
                }
                Ok(Self {
                    kind,
                    embedding: None,
                })
            }
        }
    }
}

impl Serialize for RepresentationSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for RepresentationSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetEntry {
    pub name: String,
    pub path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<CorpusFormat>,
    /// Balanced subsample size per class, applied before preprocessing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_class: Option<usize>,
    /// Embedding file for each precomputed representation name.
    #[serde(default)]
    pub embeddings: BTreeMap<String, PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LdaSettings {
    pub topics: usize,
    pub iterations: usize,
}

impl Default for LdaSettings {
    fn default() -> Self {
        Self {
            topics: 300,
            iterations: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub datasets: Vec<DatasetEntry>,
    pub representations: Vec<RepresentationSpec>,
    pub strategies: Vec<StrategyName>,
    /// Protocol settings shared by every cell; `strategy` and
    /// `representation` are filled in per cell.
    #[serde(default)]
    pub experiment: ExperimentConfig,
    #[serde(default)]
    pub lda: LdaSettings,
    /// Word vector text file, required when `wordvec` is requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_vectors: Option<PathBuf>,
    /// Not echoed into outputs, so a grid written to two folders matches
    /// byte for byte.
    #[serde(default, skip_serializing)]
    pub output: PathBuf,
}

impl RunManifest {
    /// Checks names and file references before any work starts.
    pub fn validate(&self) -> Result<()> {
        self.experiment.validate()?;
        if self.output.as_os_str().is_empty() {
            return Err(Error::Argument("manifest has no output folder".into()));
        }
        if self.datasets.is_empty() || self.representations.is_empty() || self.strategies.is_empty()
        {
            return Err(Error::Argument(
                "manifest needs at least one dataset, representation and strategy".into(),
            ));
        }
        let mut names = std::collections::BTreeSet::new();
        for d in &self.datasets {
            if !names.insert(&d.name) {
                return Err(Error::Argument(format!(
                    "dataset {:?} listed twice",
                    d.name
                )));
            }
            check_file(&d.path)?;
            for rep in &self.representations {
                if let Some(name) = &rep.embedding {
                    let path = d.embeddings.get(name).ok_or_else(|| {
                        Error::Argument(format!(
                            "dataset {:?} has no embedding file for {name:?}",
                            d.name
                        ))
                    })?;
                    check_file(path)?;
                }
            }
        }
        if self
            .representations
            .iter()
            .any(|r| r.kind == RepresentationKind::WordVecAvg)
        {
            match &self.word_vectors {
                Some(p) => check_file(p)?,
                None => return Err(Error::Argument("wordvec requires word_vectors".into())),
            }
        }
        if self.lda.topics == 0 || self.lda.iterations == 0 {
            return Err(Error::Argument(
                "lda topics and iterations must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Rebases relative paths onto `dir`.
    pub fn resolve_paths(&mut self, dir: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        for d in &mut self.datasets {
            fix(&mut d.path);
            d.embeddings.values_mut().for_each(fix);
        }
        if let Some(p) = &mut self.word_vectors {
            fix(p);
        }
        fix(&mut self.output);
    }

    pub fn cell_count(&self) -> usize {
        self.datasets.len() * self.representations.len() * self.strategies.len()
    }
}

fn check_file(path: &Path) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "file not found"),
        ))
    }
}

/// One finished cell with the names it was run under.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub dataset: String,
    pub representation: RepresentationSpec,
    pub strategy: StrategyName,
    pub result: CellResult,
}

impl CellRecord {
    pub fn method(&self) -> String {
        method_label(&self.representation.label(), self.strategy)
    }
}

pub fn method_label(representation: &str, strategy: StrategyName) -> String {
    format!("{representation}+{strategy}")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellStatus {
    pub dataset: String,
    pub representation: String,
    pub strategy: StrategyName,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunStatus {
    pub complete: bool,
    pub cells: Vec<CellStatus>,
}

pub fn load_dataset(entry: &DatasetEntry, seed: u64) -> Result<Corpus> {
    let format = match entry.format {
        Some(f) => f,
        None => CorpusFormat::from_path(&entry.path).ok_or_else(|| {
            Error::Argument(format!("cannot infer format of {}", entry.path.display()))
        })?,
    };
    let mut corpus = load_corpus(&entry.path, format)?;
    corpus.name = entry.name.clone();
    if let Some(n) = entry.per_class {
        corpus = subsample(&corpus, n, seed)?;
    }
    Ok(preprocess(&corpus, &PreprocessConfig::default()))
}

pub fn build_representation(
    corpus: &Corpus,
    spec: &RepresentationSpec,
    entry: &DatasetEntry,
    manifest: &RunManifest,
    vectors: Option<&WordVectorTable>,
) -> Result<DesignMatrix> {
    match spec.kind {
        RepresentationKind::Tf => build_tf(corpus),
        RepresentationKind::TfIdf => build_tfidf(corpus),
        RepresentationKind::Lda => {
            let mut cfg = LdaConfig::new(manifest.lda.topics, manifest.experiment.base_seed);
            cfg.iterations = manifest.lda.iterations;
            Ok(fit_lda_with(corpus, &cfg)?.to_matrix())
        }
        RepresentationKind::WordVecAvg => {
            let v =
                vectors.ok_or_else(|| Error::Argument("wordvec requires word_vectors".into()))?;
            build_wordvec_avg(corpus, v)
        }
        RepresentationKind::Precomputed => {
            let name = spec.embedding.as_deref().unwrap_or_default();
            let path = entry.embeddings.get(name).ok_or_else(|| {
                Error::Argument(format!(
                    "dataset {:?} has no embedding file for {name:?}",
                    entry.name
                ))
            })?;
            load_precomputed(path, corpus)
        }
    }
}

/// Runs all cells in manifest order. Failed cells are reported in the
/// status and skipped; the first failure is returned after outputs are
/// written.
pub fn run_grid(manifest: &RunManifest) -> Result<(Vec<CellRecord>, RunStatus)> {
    manifest.validate()?;
    let vectors = match &manifest.word_vectors {
        Some(p)
            if manifest
                .representations
                .iter()
                .any(|r| r.kind == RepresentationKind::WordVecAvg) =>
        {
            Some(WordVectorTable::load(p)?)
        }
        _ => None,
    };
    let mut records = Vec::new();
    let mut status = Vec::new();
    let fail = |dataset: &str, rep: &RepresentationSpec, strategy, e: &Error| CellStatus {
        dataset: dataset.to_string(),
        representation: rep.label(),
        strategy,
        ok: false,
        error: Some(e.to_string()),
    };

    for entry in &manifest.datasets {
        let corpus = load_dataset(entry, manifest.experiment.base_seed)?;
        for rep in &manifest.representations {
            let matrix = match build_representation(&corpus, rep, entry, manifest, vectors.as_ref())
            {
                Ok(m) => m,
                Err(e) => {
                    for &s in &manifest.strategies {
                        status.push(fail(&entry.name, rep, s, &e));
                    }
                    continue;
                }
            };
            let sims = manifest
                .strategies
                .iter()
                .any(|s| s.needs_similarities())
                .then(|| cosine_similarity_matrix(&matrix));
            let results: Vec<_> = manifest
                .strategies
                .par_iter()
                .map(|&strategy| {
                    let mut config = manifest.experiment.clone();
                    config.strategy = strategy;
                    config.representation = rep.kind;
                    (strategy, run_cell(&corpus, &matrix, &config, sims.as_ref()))
                })
                .collect();
            for (strategy, result) in results {
                match result {
                    Ok(result) => {
                        status.push(CellStatus {
                            dataset: entry.name.clone(),
                            representation: rep.label(),
                            strategy,
                            ok: true,
                            error: None,
                        });
                        records.push(CellRecord {
                            dataset: entry.name.clone(),
                            representation: rep.clone(),
                            strategy,
                            result,
                        });
                    }
                    Err(e) => status.push(fail(&entry.name, rep, strategy, &e)),
                }
            }
        }
    }
    let complete = status.iter().all(|s| s.ok);
    Ok((
        records,
        RunStatus {
            complete,
            cells: status,
        },
    ))
}

/// `x` with six significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.5}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Mean AULC table over methods (rows, manifest order) and datasets.
pub fn result_table(manifest: &RunManifest, records: &[CellRecord]) -> Result<ResultTable> {
    let mut methods = Vec::new();
    let mut aulc = Vec::new();
    for rep in &manifest.representations {
        for &strategy in &manifest.strategies {
            let row = manifest
                .datasets
                .iter()
                .map(|d| {
                    records
                        .iter()
                        .find(|r| {
                            r.dataset == d.name
                                && &r.representation == rep
                                && r.strategy == strategy
                        })
                        .map(|r| r.result.aulc_mean)
                        .ok_or_else(|| {
                            Error::Argument(format!(
                                "missing cell {} {} {strategy}",
                                d.name,
                                rep.label()
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()?;
            methods.push(method_label(&rep.label(), strategy));
            aulc.push(row);
        }
    }
    let datasets = manifest.datasets.iter().map(|d| d.name.clone()).collect();
    ResultTable::new(methods, datasets, aulc)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn config_line(manifest: &RunManifest) -> Result<String> {
    let json = serde_json::to_string(manifest).map_err(|e| Error::Argument(e.to_string()))?;
    Ok(format!("# config: {json}\n"))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Argument(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Serialize)]
struct Echoed<'a, T: Serialize> {
    manifest: &'a RunManifest,
    #[serde(flatten)]
    body: &'a T,
}

/// Writes every output file for a finished grid into `manifest.output`.
#[allow(clippy::needless_range_loop)]
pub fn write_outputs(
    manifest: &RunManifest,
    records: &[CellRecord],
    status: &RunStatus,
) -> Result<()> {
    let out = &manifest.output;
    let cells_dir = out.join("cells");
    fs::create_dir_all(&cells_dir).map_err(|e| Error::io(&cells_dir, e))?;
    let header = config_line(manifest)?;

    for r in records {
        let name = format!(
            "{}__{}__{}.json",
            r.dataset,
            r.representation.slug(),
            r.strategy
        );
        write_file(
            &cells_dir.join(name),
            &to_json(&Echoed { manifest, body: r })?,
        )?;
    }

    let mut curves = header.clone();
    curves.push_str("dataset,rep,strategy,repetition,labels,accuracy_plus\n");
    for r in records {
        for (i, curve) in r.result.curves.iter().enumerate() {
            for p in &curve.points {
                let _ = writeln!(
                    curves,
                    "{},{},{},{},{},{}",
                    r.dataset,
                    r.representation.label(),
                    r.strategy,
                    i,
                    p.labels,
                    fmt_sig(p.accuracy_plus)
                );
            }
        }
    }
    write_file(&out.join("curves.csv"), &curves)?;

    #[derive(Serialize)]
    struct StatusBody<'a> {
        status: &'a RunStatus,
    }
    write_file(
        &out.join("status.json"),
        &to_json(&Echoed {
            manifest,
            body: &StatusBody { status },
        })?,
    )?;

    if !status.complete {
        return Ok(());
    }
    let table = result_table(manifest, records)?;
    let ranks = dataset_ranks(&table);
    let avg = average_ranks(&table);
    let find = |m: usize, d: usize| {
        let (rep, strategy) = (
            &manifest.representations[m / manifest.strategies.len()],
            manifest.strategies[m % manifest.strategies.len()],
        );
        records
            .iter()
            .find(|r| {
                r.dataset == table.datasets[d] && &r.representation == rep && r.strategy == strategy
            })
            .expect("table built from these records")
    };

    let mut summary = header.clone();
    summary.push_str("method");
    for d in &table.datasets {
        let _ = write!(summary, ",{d}");
    }
    summary.push_str(",rank\n");
    let mut long = header.clone();
    long.push_str("dataset,rep,strategy,aulc_mean,aulc_std,rank\n");
    for (m, method) in table.methods.iter().enumerate() {
        summary.push_str(method);
        for d in 0..table.datasets.len() {
            let res = &find(m, d).result;
            let _ = write!(
                summary,
                ",{:.3}±{:.3} ({})",
                res.aulc_mean, res.aulc_std, ranks[m][d]
            );
        }
        let _ = writeln!(summary, ",{:.2}", avg[m]);
    }
    for d in 0..table.datasets.len() {
        for m in 0..table.methods.len() {
            let r = find(m, d);
            let _ = writeln!(
                long,
                "{},{},{},{},{},{}",
                r.dataset,
                r.representation.label(),
                r.strategy,
                fmt_sig(r.result.aulc_mean),
                fmt_sig(r.result.aulc_std),
                ranks[m][d]
            );
        }
    }
    write_file(&out.join("aulc_summary.csv"), &summary)?;
    write_file(&out.join("aulc_long.csv"), &long)?;
    write_stats(out, &header, Some(manifest), &table)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub method: String,
    pub average_rank: f64,
    pub dataset_ranks: Vec<f64>,
}

/// Writes `ranks.{csv,json}` and `pairwise.{csv,json}` for a table.
pub fn write_stats(
    out: &Path,
    header: &str,
    manifest: Option<&RunManifest>,
    table: &ResultTable,
) -> Result<()> {
    let ranks = dataset_ranks(table);
    let avg = average_ranks(table);
    let entries: Vec<RankEntry> = table
        .methods
        .iter()
        .enumerate()
        .map(|(m, method)| RankEntry {
            method: method.clone(),
            average_rank: avg[m],
            dataset_ranks: ranks[m].clone(),
        })
        .collect();
    let pairs = pairwise_table(table)?;

    let mut csv = header.to_string();
    csv.push_str("method,average_rank\n");
    for e in &entries {
        let _ = writeln!(csv, "{},{}", e.method, fmt_sig(e.average_rank));
    }
    write_file(&out.join("ranks.csv"), &csv)?;

    let mut csv = header.to_string();
    csv.push_str("method_a,method_b,wins,draws,losses,p_value\n");
    for p in &pairs {
        let pv = p.p_value.map(fmt_sig).unwrap_or_default();
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{pv}",
            p.method_a, p.method_b, p.wins, p.draws, p.losses
        );
    }
    write_file(&out.join("pairwise.csv"), &csv)?;

    #[derive(Serialize)]
    struct Ranks<'a> {
        manifest: Option<&'a RunManifest>,
        datasets: &'a [String],
        ranks: &'a [RankEntry],
    }
    #[derive(Serialize)]
    struct Pairs<'a> {
        manifest: Option<&'a RunManifest>,
        pairwise: &'a [crate::stats::PairwiseComparison],
    }
    write_file(
        &out.join("ranks.json"),
        &to_json(&Ranks {
            manifest,
            datasets: &table.datasets,
            ranks: &entries,
        })?,
    )?;
    write_file(
        &out.join("pairwise.json"),
        &to_json(&Pairs {
            manifest,
            pairwise: &pairs,
        })?,
    )
}

/// Reads a long AULC file (`dataset,rep,strategy,aulc_mean,...`) back into
/// a table. Methods and datasets keep their first-seen order.
pub fn read_aulc_long(path: &Path) -> Result<ResultTable> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| Error::format(0, e.to_string()))?;
    let mut methods: Vec<String> = Vec::new();
    let mut datasets: Vec<String> = Vec::new();
    let mut cells: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (i, row) in reader.deserialize::<AulcRow>().enumerate() {
        let row = row.map_err(|e| Error::format(i, e.to_string()))?;
        let method = method_label(&row.rep, row.strategy.parse()?);
        let m = position_or_push(&mut methods, method);
        let d = position_or_push(&mut datasets, row.dataset);
        cells.insert((m, d), row.aulc_mean);
    }
    let aulc = (0..methods.len())
        .map(|m| {
            (0..datasets.len())
                .map(|d| {
                    cells.get(&(m, d)).copied().ok_or_else(|| {
                        Error::Dataset(format!("no AULC for {} on {}", methods[m], datasets[d]))
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    ResultTable::new(methods, datasets, aulc)
}

#[derive(Deserialize)]
struct AulcRow {
    dataset: String,
    rep: String,
    strategy: String,
    aulc_mean: f64,
}

fn position_or_push(list: &mut Vec<String>, item: String) -> usize {
    match list.iter().position(|x| *x == item) {
        Some(i) => i,
        None => {
            list.push(item);
            list.len() - 1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub dataset: String,
    pub rep: String,
    pub strategy: String,
    pub repetition: usize,
    pub labels: usize,
    pub accuracy_plus: f64,
}

pub fn read_curves(path: &Path) -> Result<Vec<CurveRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(|e| Error::format(0, e.to_string()))?;
    reader
        .deserialize()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| Error::format(i, e.to_string())))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupBy {
    Strategy,
    Representation,
}

impl std::str::FromStr for GroupBy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strategy" => Ok(GroupBy::Strategy),
            "representation" | "rep" => Ok(GroupBy::Representation),
            other => Err(Error::Argument(format!(
                "unknown group key {other:?}; expected strategy|representation"
            ))),
        }
    }
}

/// Mean accuracy+ over repetitions for one (dataset, rep, strategy).
#[derive(Clone, Debug, PartialEq)]
pub struct MeanCurve {
    pub dataset: String,
    pub rep: String,
    pub strategy: String,
    pub points: Vec<(usize, f64)>,
    pub repetitions: usize,
}

/// Mean curves split by the grouping key, keyed by group value.
pub fn mean_curves(
    rows: &[CurveRow],
    group_by: GroupBy,
) -> Result<BTreeMap<String, Vec<MeanCurve>>> {
    if rows.is_empty() {
        return Err(Error::Argument("no curves".into()));
    }
    type Key = (String, String, String);
    let mut acc: BTreeMap<Key, BTreeMap<usize, (f64, usize)>> = BTreeMap::new();
    let mut reps: BTreeMap<Key, std::collections::BTreeSet<usize>> = BTreeMap::new();
    for r in rows {
        let key = (r.dataset.clone(), r.rep.clone(), r.strategy.clone());
        let slot = acc
            .entry(key.clone())
            .or_default()
            .entry(r.labels)
            .or_default();
        slot.0 += r.accuracy_plus;
        slot.1 += 1;
        reps.entry(key).or_default().insert(r.repetition);
    }
    let mut groups: BTreeMap<String, Vec<MeanCurve>> = BTreeMap::new();
    for ((dataset, rep, strategy), points) in acc {
        let key = (dataset.clone(), rep.clone(), strategy.clone());
        let group = match group_by {
            GroupBy::Strategy => strategy.clone(),
            GroupBy::Representation => rep.clone(),
        };
        groups.entry(group).or_default().push(MeanCurve {
            repetitions: reps[&key].len(),
            points: points
                .into_iter()
                .map(|(l, (s, n))| (l, s / n as f64))
                .collect(),
            dataset,
            rep,
            strategy,
        });
    }
    Ok(groups)
}

pub fn mean_curves_csv(curves: &[MeanCurve]) -> String {
    let mut s = String::from("dataset,rep,strategy,labels,mean_accuracy_plus,repetitions\n");
    for c in curves {
        for &(l, v) in &c.points {
            let _ = writeln!(
                s,
                "{},{},{},{l},{},{}",
                c.dataset,
                c.rep,
                c.strategy,
                fmt_sig(v),
                c.repetitions
            );
        }
    }
    s
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

/// Plain SVG line chart of the given curves.
pub fn mean_curves_svg(title: &str, curves: &[MeanCurve]) -> String {
    let (w, h, pad) = (640.0, 400.0, 50.0);
    let all = curves.iter().flat_map(|c| c.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(l, v) in all {
        x0 = x0.min(l as f64);
        x1 = x1.max(l as f64);
        y0 = y0.min(v);
        y1 = y1.max(v);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1e-3;
    }
    let sx = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let sy = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">"#
    );
    let _ = writeln!(s, r#"<text x="{pad}" y="20" font-size="14">{title}</text>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - 2.0 * pad,
        h - 2.0 * pad
    );
    let _ = writeln!(
        s,
        r#"<text x="{pad}" y="{}" font-size="10">{x0}</text>"#,
        h - pad + 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="10">{x1}</text>"#,
        w - pad - 20.0,
        h - pad + 14.0
    );
    let _ = writeln!(
        s,
        r#"<text x="4" y="{}" font-size="10">{y0:.3}</text>"#,
        h - pad
    );
    let _ = writeln!(
        s,
        r#"<text x="4" y="{}" font-size="10">{y1:.3}</text>"#,
        pad + 4.0
    );
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|&(l, v)| format!("{:.1},{:.1}", sx(l as f64), sy(v)))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" points="{}"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="10" fill="{color}">{} {} {}</text>"#,
            pad + 6.0,
            pad + 14.0 + 12.0 * i as f64,
            c.dataset,
            c.rep,
            c.strategy
        );
    }
    s.push_str("</svg>\n");
    s
}
