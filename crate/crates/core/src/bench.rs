//! Timing harness for naive globalization, efficient globalization and the
//! partition-refinement baseline.
//!
//! Each cell (family, algorithm, size) runs a few untimed warmups, then `K`
//! timed trials, and reports the median. Only the algorithm itself is timed:
//! the input is built beforehand and the output is dropped afterwards.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::bisim::{bisim_partition_refine, build_graph};
use crate::error::{Error, Result};
use crate::generate::Family;
use crate::globalize::{globalize, globalize_naive};
use crate::hash::Hasher;
use crate::term::{PureTerm, Term};

pub const ROW_HEADER: &str = "family\talgorithm\tsize\ttrial\tseconds";
pub const SUMMARY_HEADER: &str = "family\talgorithm\tsize\tmedian_seconds";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Naive,
    Efficient,
    Refine,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Naive, Algorithm::Efficient, Algorithm::Refine];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Efficient => "efficient",
            Algorithm::Refine => "refine",
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected naive, efficient or refine)"))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub family: Family,
    pub algorithm: Algorithm,
    pub size: usize,
    pub trial: usize,
    pub seconds: f64,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}\t{:.9}",
            self.family, self.algorithm, self.size, self.trial, self.seconds
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub family: Family,
    pub algorithm: Algorithm,
    pub size: usize,
    pub median_seconds: f64,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{:.9}",
            self.family, self.algorithm, self.size, self.median_seconds
        )
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub families: Vec<Family>,
    pub algorithms: Vec<Algorithm>,
    /// Target term sizes; each family picks the largest parameter that fits.
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub warmups: usize,
    /// Wall-clock limit per cell, warmups included. No run is started that
    /// the previous run suggests would overshoot it, but the first always is.
    pub budget: Duration,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            families: vec![Family::Random, Family::Linear, Family::Balanced],
            algorithms: Algorithm::ALL.to_vec(),
            sizes: parse_sizes("2^4..2^18").expect("valid default"),
            trials: 5,
            warmups: 3,
            budget: Duration::from_secs(60),
            seed: crate::generate::DEFAULT_SEED,
        }
    }
}

/// Parses `2^a..2^b` (every power of two in between) or a comma-separated
/// list of sizes, where each item may itself be `2^k`.
pub fn parse_sizes(s: &str) -> std::result::Result<Vec<usize>, String> {
    let pow = |x: &str| -> std::result::Result<usize, String> {
        let x = x.trim();
        match x.strip_prefix("2^") {
            Some(k) => k
                .parse::<u32>()
                .ok()
                .and_then(|k| 1usize.checked_shl(k))
                .ok_or_else(|| format!("bad exponent in `{x}`")),
            None => x.parse().map_err(|_| format!("bad size `{x}`")),
        }
    };
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (pow(a)?, pow(b)?);
        if !a.is_power_of_two() || !b.is_power_of_two() || a > b {
            return Err(format!("`{s}` is not a range of powers of two"));
        }
        Ok((a.trailing_zeros()..=b.trailing_zeros())
            .map(|k| 1 << k)
            .collect())
    } else {
        s.split(',').map(pow).collect()
    }
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    match n {
        0 => f64::NAN,
        _ if n % 2 == 1 => v[n / 2],
        _ => (v[n / 2 - 1] + v[n / 2]) / 2.0,
    }
}

enum Input {
    Decorated(Term),
    Pure(PureTerm),
}

/// Runs one algorithm once, returning the elapsed time.
fn run_once(algorithm: Algorithm, input: &Input, hasher: &mut Hasher) -> Result<Duration> {
    let start = Instant::now();
    let elapsed;
    match (algorithm, input) {
        (Algorithm::Efficient, Input::Decorated(t)) => {
            let out = globalize(hasher, t)?;
            elapsed = start.elapsed();
            drop(out);
        }
        (Algorithm::Naive, Input::Decorated(t)) => {
            let out = globalize_naive(hasher, t)?;
            elapsed = start.elapsed();
            drop(out);
        }
        (Algorithm::Refine, Input::Pure(t)) => {
            let out = bisim_partition_refine(&build_graph(t)?);
            elapsed = start.elapsed();
            drop(out);
        }
        _ => unreachable!("input prepared for another algorithm"),
    }
    Ok(elapsed)
}

/// Why a cell produced no summary.
#[derive(Debug, Clone, PartialEq)]
pub enum Skip {
    /// The family has no term near this size (e.g. too big for uniform sampling).
    NoTerm(Error),
    /// A single run at the previous size already took over a quarter of the budget.
    Predicted,
    /// An earlier size ran out of budget before any timed trial.
    OverBudget,
}

/// Outcome of one cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Done(Summary),
    Skipped {
        family: Family,
        algorithm: Algorithm,
        size: usize,
        why: Skip,
    },
}

/// Runs every cell, calling `row` for each timed trial and `cell` after each
/// cell. Cells with fewer trials than asked still get a median; larger sizes
/// of a (family, algorithm) pair are skipped once a size has none.
pub fn run_bench(
    config: &BenchConfig,
    mut row: impl FnMut(&BenchRow),
    mut cell: impl FnMut(&Cell),
) -> Result<Vec<Summary>> {
    let mut summaries = Vec::new();
    for &family in &config.families {
        for &algorithm in &config.algorithms {
            let mut last: Option<f64> = None;
            let mut stopped = false;
            let mut seen = std::collections::HashSet::new();
            for &target in &config.sizes {
                let param = family.param_for_size(target);
                if !seen.insert(param) {
                    continue;
                }
                let skipped = |why| Cell::Skipped {
                    family,
                    algorithm,
                    size: target,
                    why,
                };
                if stopped {
                    cell(&skipped(Skip::OverBudget));
                    continue;
                }
                // Doubling the size at most quadruples the time for these algorithms.
                if last.is_some_and(|s| 4.0 * s > config.budget.as_secs_f64()) {
                    stopped = true;
                    cell(&skipped(Skip::Predicted));
                    continue;
                }
                let pure = match family.generate(param, config.seed) {
                    Ok(t) => t,
                    Err(e) => {
                        cell(&skipped(Skip::NoTerm(e)));
                        continue;
                    }
                };
                let size = pure.size();
                let mut hasher = Hasher::fast();
                let input = match algorithm {
                    Algorithm::Refine => Input::Pure(pure),
                    _ => Input::Decorated(Term::from_pure(&mut hasher, &pure)),
                };
                let started = Instant::now();
                let mut times = Vec::new();
                let mut previous = Duration::ZERO;
                for k in 0..config.warmups + config.trials {
                    if started.elapsed() + previous > config.budget {
                        break;
                    }
                    let d = run_once(algorithm, &input, &mut hasher)?;
                    previous = d;
                    if k >= config.warmups {
                        let r = BenchRow {
                            family,
                            algorithm,
                            size,
                            trial: k - config.warmups,
                            seconds: d.as_secs_f64(),
                        };
                        row(&r);
                        times.push(r.seconds);
                    }
                }
                if times.is_empty() {
                    stopped = true;
                    cell(&skipped(Skip::OverBudget));
                    continue;
                }
                let s = Summary {
                    family,
                    algorithm,
                    size,
                    median_seconds: median(&times),
                };
                last = Some(s.median_seconds);
                cell(&Cell::Done(s.clone()));
                summaries.push(s);
            }
        }
    }
    Ok(summaries)
}

/// `median(next) / median(prev)` for consecutive sizes of one
/// (family, algorithm) pair.
pub fn doubling_ratios(
    summaries: &[Summary],
    family: Family,
    algorithm: Algorithm,
) -> Vec<(usize, usize, f64)> {
    let cells: Vec<&Summary> = summaries
        .iter()
        .filter(|s| s.family == family && s.algorithm == algorithm)
        .collect();
    cells
        .windows(2)
        .map(|w| {
            (
                w[0].size,
                w[1].size,
                w[1].median_seconds / w[0].median_seconds,
            )
        })
        .collect()
}
