use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use alrep::representation::write_embedding_file;

fn alrep(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alrep"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// 80 short documents; each class has its own marker words plus shared noise.
fn write_corpus(dir: &Path) {
    let mut csv = String::from("text,label\n");
    for i in 0..80 {
        let label = i % 2;
        let marker = if label == 1 { "good" } else { "bad" };
        let words: Vec<String> = (0..12)
            .map(|k| {
                if k % 3 == 0 {
                    format!("{marker}{}", (i + k) % 4)
                } else {
                    format!("w{}", (i * 7 + k * 13) % 9)
                }
            })
            .collect();
        csv.push_str(&format!("{},{label}\n", words.join(" ")));
    }
    fs::write(dir.join("toy.csv"), csv).unwrap();
}

fn write_embeddings(dir: &Path, name: &str, n: usize, nan_row: Option<usize>) {
    let rows: Vec<Vec<f32>> = (0..n)
        .map(|i| {
            let s = if i % 2 == 1 { 1.0 } else { -1.0 };
            let mut r = vec![s, (i % 5) as f32 * 0.1, 0.5];
            if nan_row == Some(i) {
                r[1] = f32::NAN;
            }
            r
        })
        .collect();
    write_embedding_file(&dir.join(name), 3, &rows).unwrap();
}

fn manifest(dir: &Path, reps: &[&str], strategies: &[&str], out: &str) -> String {
    let quote = |v: &[&str]| {
        v.iter()
            .map(|s| format!("\"{s}\""))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let text = format!(
        r#"representations = [{}]
strategies = [{}]
output = "{out}"

[experiment]
budget = 40
repetitions = 2
base_seed = 11

[[datasets]]
name = "toy"
path = "toy.csv"
embeddings = {{ synth = "toy.alemb" }}
"#,
        quote(reps),
        quote(strategies)
    );
    let path = dir.join(format!("{out}.toml"));
    fs::write(&path, text).unwrap();
    path.file_name().unwrap().to_string_lossy().into_owned()
}

#[test]
fn grid_writes_one_json_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    write_embeddings(dir.path(), "toy.alemb", 80, None);
    let m = manifest(
        dir.path(),
        &["tf", "precomputed:synth"],
        &["random", "uncertainty"],
        "out",
    );
    let o = alrep(&["run", &m], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));

    let out = dir.path().join("out");
    let mut cells: Vec<String> = fs::read_dir(out.join("cells"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    cells.sort();
    assert_eq!(cells.len(), 4, "{cells:?}");
    assert!(cells.iter().all(|c| c.ends_with(".json")));

    let curves = fs::read_to_string(out.join("curves.csv")).unwrap();
    let mut lines = curves.lines();
    assert!(lines.next().unwrap().starts_with("# config:"));
    assert_eq!(
        lines.next().unwrap(),
        "dataset,rep,strategy,repetition,labels,accuracy_plus"
    );
    let groups: std::collections::BTreeSet<(String, String, String)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[1].to_string(), f[2].to_string(), f[3].to_string())
        })
        .collect();
    assert_eq!(groups.len(), 8);

    for f in [
        "aulc_summary.csv",
        "aulc_long.csv",
        "ranks.csv",
        "pairwise.csv",
        "status.json",
    ] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let status = fs::read_to_string(out.join("status.json")).unwrap();
    assert!(status.contains("\"complete\": true") || status.contains("\"complete\":true"));
    let cell = fs::read_to_string(out.join("cells").join(&cells[0])).unwrap();
    assert!(cell.contains("\"base_seed\": 11") || cell.contains("\"base_seed\":11"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    write_embeddings(dir.path(), "toy.alemb", 80, None);
    let a = manifest(
        dir.path(),
        &["tfidf", "precomputed:synth"],
        &["egal", "qbc", "id"],
        "a",
    );
    let b = manifest(
        dir.path(),
        &["tfidf", "precomputed:synth"],
        &["egal", "qbc", "id"],
        "b",
    );
    for m in [&a, &b] {
        let o = alrep(&["run", m], dir.path());
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for f in [
        "curves.csv",
        "aulc_summary.csv",
        "aulc_long.csv",
        "ranks.csv",
        "pairwise.csv",
    ] {
        let x = fs::read(dir.path().join("a").join(f)).unwrap();
        let y = fs::read(dir.path().join("b").join(f)).unwrap();
        assert_eq!(x, y, "{f} differs");
    }
}

#[test]
fn flags_override_manifest() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let o = alrep(
        &[
            "run",
            "--dataset",
            "toy=toy.csv",
            "--rep",
            "tf",
            "--strategy",
            "uncertainty",
            "--budget",
            "30",
            "--reps",
            "1",
            "--out",
            "flags",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let curves = fs::read_to_string(dir.path().join("flags/curves.csv")).unwrap();
    let last = curves.lines().last().unwrap();
    assert!(last.starts_with("toy,tf,uncertainty,0,30,"), "{last}");
}

#[test]
fn missing_embedding_fails_before_running() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let m = manifest(dir.path(), &["tf", "precomputed:synth"], &["random"], "out");
    let o = alrep(&["run", &m], dir.path());
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("toy.alemb"), "{}", stderr(&o));
    assert!(!dir.path().join("out").exists());

    // an embedding name the dataset does not list is a config error
    let m = manifest(dir.path(), &["precomputed:other"], &["random"], "out");
    let o = alrep(&["run", &m], dir.path());
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn unknown_strategy_is_config_error() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let o = alrep(
        &[
            "run",
            "--dataset",
            "toy.csv",
            "--rep",
            "tf",
            "--strategy",
            "greedy",
        ],
        dir.path(),
    );
    assert!(!o.status.success());
}

#[test]
fn validate_embeddings_reports_issues() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    write_embeddings(dir.path(), "good.alemb", 80, None);
    let o = alrep(
        &["validate-embeddings", "good.alemb", "--corpus", "toy.csv"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("n_docs=80 dim=3"), "{}", stdout(&o));

    let mut bytes = fs::read(dir.path().join("good.alemb")).unwrap();
    bytes[30] ^= 0x40;
    fs::write(dir.path().join("flipped.alemb"), &bytes).unwrap();
    let o = alrep(&["validate-embeddings", "flipped.alemb"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("checksum"), "{}", stderr(&o));

    write_embeddings(dir.path(), "nan.alemb", 80, Some(7));
    let o = alrep(&["validate-embeddings", "nan.alemb"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 7"), "{}", stderr(&o));

    let o = alrep(
        &["validate-embeddings", "good.alemb", "--corpus", "short.csv"],
        dir.path(),
    );
    assert!(!o.status.success());
    write_embeddings(dir.path(), "short.alemb", 79, None);
    let o = alrep(
        &["validate-embeddings", "short.alemb", "--corpus", "toy.csv"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row count"), "{}", stderr(&o));
}

fn write_curves(path: &Path, strategies: &[&str], reps: usize) {
    let mut s = String::from("dataset,rep,strategy,repetition,labels,accuracy_plus\n");
    for st in strategies {
        for r in 0..reps {
            for k in 1..=3 {
                s.push_str(&format!(
                    "toy,tf,{st},{r},{},{}\n",
                    10 * k,
                    0.5 + 0.1 * k as f64 + 0.01 * r as f64
                ));
            }
        }
    }
    fs::write(path, s).unwrap();
}

#[test]
fn plotdata_writes_one_file_per_group() {
    let dir = tempfile::tempdir().unwrap();
    write_curves(
        &dir.path().join("curves.csv"),
        &["random", "uncertainty", "id", "qbc", "egal"],
        2,
    );
    let o = alrep(
        &[
            "plotdata",
            "curves.csv",
            "--group-by",
            "strategy",
            "--out",
            "plots",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let n = fs::read_dir(dir.path().join("plots")).unwrap().count();
    assert_eq!(n, 5);

    let o = alrep(
        &[
            "plotdata",
            "curves.csv",
            "--group-by",
            "representation",
            "--out",
            "svg",
            "--svg",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("svg/tf.svg").exists());

    let o = alrep(
        &[
            "plotdata",
            "curves.csv",
            "--group-by",
            "colour",
            "--out",
            "x",
        ],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));

    fs::write(
        dir.path().join("empty.csv"),
        "dataset,rep,strategy,repetition,labels,accuracy_plus\n",
    )
    .unwrap();
    let o = alrep(&["plotdata", "empty.csv", "--out", "e"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no curves"), "{}", stderr(&o));
}

#[test]
fn stats_ranks_long_table() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = String::from("dataset,rep,strategy,aulc_mean,aulc_std,rank\n");
    for d in 0..6 {
        s.push_str(&format!("d{d},bert,qbc,0.9{d},0.01,1\n"));
        s.push_str(&format!("d{d},tf,qbc,0.8{d},0.01,2\n"));
    }
    fs::write(dir.path().join("long.csv"), s).unwrap();
    let o = alrep(&["stats", "long.csv", "--out", "st"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("bert+qbc\t1.00"), "{out}");
    assert!(out.contains("tf+qbc\t2.00"), "{out}");
    let pairwise = fs::read_to_string(dir.path().join("st/pairwise.csv")).unwrap();
    assert!(
        pairwise.contains("6/0/0") || pairwise.contains(",6,0,0,"),
        "{pairwise}"
    );
}
