use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alrep::corpus::{load_corpus, CorpusFormat};
use alrep::report::{
    mean_curves, mean_curves_csv, mean_curves_svg, read_aulc_long, read_curves, run_grid,
    write_outputs, write_stats, DatasetEntry, GroupBy, RepresentationSpec, RunManifest,
};
use alrep::representation::validate_embedding_file;
use alrep::strategies::StrategyName;
use clap::{Args, Parser, Subcommand};

mod error;

use error::{CliError, CliResult};

/// Simulated active learning experiments over text representations.
#[derive(Parser, Debug)]
#[command(name = "alrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a grid of (dataset, representation, strategy) cells.
    Run(RunArgs),
    /// Check an embedding file's header, checksum, row count and values.
    ValidateEmbeddings {
        path: PathBuf,
        /// Corpus whose document count the file must match.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Average curves over repetitions, one CSV per group.
    Plotdata {
        curves: PathBuf,
        #[arg(long, default_value = "strategy")]
        group_by: String,
        #[arg(long)]
        out: PathBuf,
        /// Also write an SVG chart per group.
        #[arg(long)]
        svg: bool,
    },
    /// Average ranks and pairwise tests from a long AULC table.
    Stats {
        aulc: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// TOML manifest. Flags below override its values.
    manifest: Option<PathBuf>,
    /// `name=path` or a path (named after its stem). Replaces the manifest's datasets.
    #[arg(long)]
    dataset: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    rep: Vec<RepresentationSpec>,
    #[arg(long, value_delimiter = ',')]
    strategy: Vec<StrategyName>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    batch: Option<usize>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_manifest(args: &RunArgs) -> CliResult<RunManifest> {
    let mut manifest = match &args.manifest {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| alrep::Error::io(path, e))?;
            let mut m: RunManifest = toml::from_str(&text)
                .map_err(|e| CliError::Manifest(format!("{}: {e}", path.display())))?;
            m.resolve_paths(path.parent().unwrap_or(Path::new(".")));
            m
        }
        None => RunManifest {
            datasets: Vec::new(),
            representations: Vec::new(),
            strategies: Vec::new(),
            experiment: Default::default(),
            lda: Default::default(),
            word_vectors: None,
            output: PathBuf::from("alrep-out"),
        },
    };
    if !args.dataset.is_empty() {
        manifest.datasets = args.dataset.iter().map(|d| parse_dataset(d)).collect();
    }
    if !args.rep.is_empty() {
        manifest.representations = args.rep.clone();
    }
    if !args.strategy.is_empty() {
        manifest.strategies = args.strategy.clone();
    }
    let e = &mut manifest.experiment;
    if let Some(v) = args.budget {
        e.budget = v;
    }
    if let Some(v) = args.batch {
        e.batch_size = v;
    }
    if let Some(v) = args.reps {
        e.repetitions = v;
    }
    if let Some(v) = args.seed {
        e.base_seed = v;
    }
    if let Some(v) = &args.out {
        manifest.output = v.clone();
    }
    Ok(manifest)
}

fn parse_dataset(arg: &str) -> DatasetEntry {
    let (name, path) = match arg.split_once('=') {
        Some((n, p)) => (n.to_string(), PathBuf::from(p)),
        None => {
            let p = PathBuf::from(arg);
            let stem = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| arg.to_string());
            (stem, p)
        }
    };
    DatasetEntry {
        name,
        path,
        format: None,
        per_class: None,
        embeddings: Default::default(),
    }
}

fn cmd_run(args: &RunArgs) -> CliResult<()> {
    let manifest = load_manifest(args)?;
    manifest.validate()?;
    eprintln!(
        "running {} cells into {}",
        manifest.cell_count(),
        manifest.output.display()
    );
    let (records, status) = run_grid(&manifest)?;
    write_outputs(&manifest, &records, &status)?;
    for cell in status.cells.iter().filter(|c| !c.ok) {
        eprintln!(
            "cell {} {} {} failed: {}",
            cell.dataset,
            cell.representation,
            cell.strategy,
            cell.error.as_deref().unwrap_or("")
        );
    }
    if !status.complete {
        return Err(CliError::Incomplete(
            status.cells.iter().filter(|c| !c.ok).count(),
        ));
    }
    for r in &records {
        println!(
            "{}\t{}\taulc {:.3}±{:.3}",
            r.dataset,
            r.method(),
            r.result.aulc_mean,
            r.result.aulc_std
        );
    }
    Ok(())
}

fn cmd_validate(path: &Path, corpus: Option<&Path>) -> CliResult<()> {
    let expected = match corpus {
        Some(c) => {
            let format = CorpusFormat::from_path(c).ok_or_else(|| {
                CliError::Manifest(format!("cannot infer format of {}", c.display()))
            })?;
            Some(load_corpus(c, format)?.len())
        }
        None => None,
    };
    let report = validate_embedding_file(path, expected)?;
    let encoding = report
        .encoding
        .map(|e| format!("{e:?}").to_lowercase())
        .unwrap_or_else(|| "unknown".into());
    println!(
        "encoding={encoding} n_docs={} dim={}",
        report.n_docs, report.dim
    );
    for issue in &report.issues {
        eprintln!("{}: {issue}", path.display());
    }
    if report.is_ok() {
        Ok(())
    } else {
        Err(CliError::Embedding(report.issues.len()))
    }
}

fn cmd_plotdata(curves: &Path, group_by: &str, out: &Path, svg: bool) -> CliResult<()> {
    let group_by: GroupBy = group_by.parse()?;
    let rows = read_curves(curves)?;
    let groups = mean_curves(&rows, group_by)?;
    std::fs::create_dir_all(out).map_err(|e| alrep::Error::io(out, e))?;
    for (name, curves) in &groups {
        let slug: String = name
            .chars()
            .map(|c| {
                if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        let path = out.join(format!("{slug}.csv"));
        std::fs::write(&path, mean_curves_csv(curves)).map_err(|e| alrep::Error::io(&path, e))?;
        println!("{}", path.display());
        if svg {
            let path = out.join(format!("{slug}.svg"));
            std::fs::write(&path, mean_curves_svg(name, curves))
                .map_err(|e| alrep::Error::io(&path, e))?;
            println!("{}", path.display());
        }
    }
    Ok(())
}

fn cmd_stats(aulc: &Path, out: &Path) -> CliResult<()> {
    let table = read_aulc_long(aulc)?;
    std::fs::create_dir_all(out).map_err(|e| alrep::Error::io(out, e))?;
    write_stats(out, "", None, &table)?;
    let ranks = alrep::stats::average_ranks(&table);
    for (m, r) in table.methods.iter().zip(ranks) {
        println!("{m}\t{r:.2}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::ValidateEmbeddings { path, corpus } => cmd_validate(path, corpus.as_deref()),
        Command::Plotdata {
            curves,
            group_by,
            out,
            svg,
        } => cmd_plotdata(curves, group_by, out, *svg),
        Command::Stats { aulc, out } => cmd_stats(aulc, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
