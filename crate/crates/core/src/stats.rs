//! Cross-dataset comparison: average ranks and paired Wilcoxon tests.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Below this many paired datasets no p-value is reported.
pub const MIN_PAIRED_SAMPLES: usize = 5;
/// Largest non-zero sample size handled by the exact distribution.
pub const EXACT_MAX_N: usize = 25;

/// Mean AULC per method (rows) and dataset (columns).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub methods: Vec<String>,
    pub datasets: Vec<String>,
    pub aulc: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(methods: Vec<String>, datasets: Vec<String>, aulc: Vec<Vec<f64>>) -> Result<Self> {
        if aulc.len() != methods.len() || aulc.iter().any(|r| r.len() != datasets.len()) {
            return Err(Error::Argument(format!(
                "table must be {} methods x {} datasets",
                methods.len(),
                datasets.len()
            )));
        }
        if let Some(v) = aulc.iter().flatten().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Argument(format!("AULC {v} outside [0, 1]")));
        }
        Ok(Self {
            methods,
            datasets,
            aulc,
        })
    }

    pub fn column(&self, dataset: usize) -> Vec<f64> {
        self.aulc.iter().map(|r| r[dataset]).collect()
    }
}

/// 1-based ranks with ties sharing the mean of the positions they span.
/// `descending` ranks the largest value first.
pub fn mid_ranks(values: &[f64], descending: bool) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        let o = values[a].total_cmp(&values[b]);
        if descending {
            o.reverse()
        } else {
            o
        }
    });
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Rank of every method on every dataset, best AULC = 1.
pub fn dataset_ranks(table: &ResultTable) -> Vec<Vec<f64>> {
    let per_dataset: Vec<Vec<f64>> = (0..table.datasets.len())
        .map(|d| mid_ranks(&table.column(d), true))
        .collect();
    (0..table.methods.len())
        .map(|m| per_dataset.iter().map(|col| col[m]).collect())
        .collect()
}

/// Mean rank of each method across datasets, aligned with `table.methods`.
pub fn average_ranks(table: &ResultTable) -> Vec<f64> {
    let n = table.datasets.len() as f64;
    dataset_ranks(table)
        .iter()
        .map(|r| r.iter().sum::<f64>() / n)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WilcoxonMethod {
    Exact,
    Normal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    /// Sum of ranks of the positive differences `a - b`.
    pub w_plus: f64,
    /// Pairs left after dropping zero differences.
    pub n_effective: usize,
    pub p_value: f64,
    /// Every difference was zero.
    pub degenerate: bool,
    pub method: WilcoxonMethod,
}

/// Two-sided Wilcoxon signed-rank test of `a - b`.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    if a.len() != b.len() {
        return Err(Error::Argument(format!(
            "paired samples differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .filter(|&d| d != 0.0)
        .collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(WilcoxonResult {
            w_plus: 0.0,
            n_effective: 0,
            p_value: 1.0,
            degenerate: true,
            method: WilcoxonMethod::Exact,
        });
    }
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = mid_ranks(&abs, false);
    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(&d, _)| d > 0.0)
        .map(|(_, &r)| r)
        .sum();

    if n <= EXACT_MAX_N {
        let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
        let p = exact_two_sided(&doubled, (2.0 * w_plus).round() as usize);
        return Ok(WilcoxonResult {
            w_plus,
            n_effective: n,
            p_value: p,
            degenerate: false,
            method: WilcoxonMethod::Exact,
        });
    }

    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let mut var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0;
    let mut sorted = abs.clone();
    sorted.sort_by(f64::total_cmp);
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        var -= (t * t * t - t) / 48.0;
        i = j + 1;
    }
    let z = ((w_plus - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let p = (2.0 * normal.sf(z)).min(1.0);
    Ok(WilcoxonResult {
        w_plus,
        n_effective: n,
        p_value: p,
        degenerate: false,
        method: WilcoxonMethod::Normal,
    })
}

/// `min(1, 2 * min(P(W <= w), P(W >= w)))` under the null, where every
/// doubled rank enters the sum with probability 1/2.
fn exact_two_sided(doubled_ranks: &[usize], observed: usize) -> f64 {
    let total: usize = doubled_ranks.iter().sum();
    let mut counts = vec![0.0f64; total + 1];
    counts[0] = 1.0;
    let mut reach = 0;
    for &r in doubled_ranks {
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let all = 2f64.powi(doubled_ranks.len() as i32);
    let lower: f64 = counts[..=observed].iter().sum();
    let upper: f64 = counts[observed..].iter().sum();
    (2.0 * lower.min(upper) / all).min(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseComparison {
    pub method_a: String,
    pub method_b: String,
    pub wins: usize,
    pub draws: usize,
    pub losses: usize,
    /// Absent when fewer than `MIN_PAIRED_SAMPLES` datasets are compared.
    pub p_value: Option<f64>,
}

/// Rounds to the three decimals used when reporting AULC.
pub fn round3(x: f64) -> f64 {
    (x * 1000.0).round() / 1000.0
}

pub fn compare_methods(
    method_a: &str,
    a: &[f64],
    method_b: &str,
    b: &[f64],
) -> Result<PairwiseComparison> {
    let test = wilcoxon_signed_rank(a, b)?;
    let (mut wins, mut draws, mut losses) = (0, 0, 0);
    for (&x, &y) in a.iter().zip(b) {
        match round3(x).total_cmp(&round3(y)) {
            std::cmp::Ordering::Greater => wins += 1,
            std::cmp::Ordering::Equal => draws += 1,
            std::cmp::Ordering::Less => losses += 1,
        }
    }
    Ok(PairwiseComparison {
        method_a: method_a.to_string(),
        method_b: method_b.to_string(),
        wins,
        draws,
        losses,
        p_value: (a.len() >= MIN_PAIRED_SAMPLES).then_some(test.p_value),
    })
}

/// Every unordered pair of methods, in table order.
pub fn pairwise_table(table: &ResultTable) -> Result<Vec<PairwiseComparison>> {
    let m = table.methods.len();
    let mut out = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            out.push(compare_methods(
                &table.methods[i],
                &table.aulc[i],
                &table.methods[j],
                &table.aulc[j],
            )?);
        }
    }
    Ok(out)
}
