//! The work behind each CLI subcommand, as plain functions over text.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Result;
use crate::globalize::{globalize, globalize_naive};
use crate::hash::{HashMode, Hasher};
use crate::term::{valid_positions, PureTerm, Syntax, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GlobalizeAlgo {
    Naive,
    #[default]
    Efficient,
}

impl FromStr for GlobalizeAlgo {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "naive" => Ok(GlobalizeAlgo::Naive),
            "efficient" => Ok(GlobalizeAlgo::Efficient),
            other => Err(format!(
                "unknown algorithm `{other}` (expected naive or efficient)"
            )),
        }
    }
}

/// Decorates and globalizes a closed term.
pub fn globalize_with(hasher: &mut Hasher, algo: GlobalizeAlgo, t: &PureTerm) -> Result<Term> {
    let d = Term::from_pure(hasher, t);
    match algo {
        GlobalizeAlgo::Naive => globalize_naive(hasher, &d),
        GlobalizeAlgo::Efficient => globalize(hasher, &d),
    }
}

/// One `position<TAB>hash` line per position, in preorder.
pub fn hash_table(t: &PureTerm, mode: HashMode, algo: GlobalizeAlgo) -> Result<String> {
    let mut hasher = Hasher::new(mode);
    let g = globalize_with(&mut hasher, algo, t)?;
    let mut out = String::new();
    for (p, (u, _)) in valid_positions(&g).zip(g.preorder()) {
        out.push_str(&format!("{p}\t{}\n", u.hash()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DedupReport {
    pub total_nodes: usize,
    pub unique_hashes: usize,
    pub reduction_percent: f64,
}

impl DedupReport {
    pub const HEADER: &'static str = "total_nodes\tunique_hashes\treduction_percent";

    pub fn tsv(&self) -> String {
        format!(
            "{}\t{}\t{:.2}",
            self.total_nodes, self.unique_hashes, self.reduction_percent
        )
    }
}

impl fmt::Display for DedupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} nodes, {} distinct up to context-sensitive alpha-equivalence ({:.2}% reduction)",
            self.total_nodes, self.unique_hashes, self.reduction_percent
        )
    }
}

/// Counts distinct hashes over every position of every term, with one shared
/// hashing session so equivalent subterms of different terms coincide.
pub fn dedup(terms: &[PureTerm], mode: HashMode) -> Result<DedupReport> {
    let mut hasher = Hasher::new(mode);
    let mut seen = HashSet::new();
    let mut total = 0;
    for t in terms {
        let g = globalize_with(&mut hasher, GlobalizeAlgo::Efficient, t)?;
        for (u, _) in g.preorder() {
            total += 1;
            seen.insert(u.hash());
        }
    }
    let unique = seen.len();
    let reduction = if total == 0 {
        0.0
    } else {
        100.0 * (1.0 - unique as f64 / total as f64)
    };
    Ok(DedupReport {
        total_nodes: total,
        unique_hashes: unique,
        reduction_percent: reduction,
    })
}

/// The seed from `ALPHAHASH_SEED` if set and valid, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("ALPHAHASH_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_balanced, gen_linear};
    use crate::syntax::parse_term;

    #[test]
    fn identity_rows() {
        let rows = hash_table(
            &parse_term("\\0").unwrap(),
            HashMode::Fast,
            GlobalizeAlgo::Efficient,
        )
        .unwrap();
        let lines: Vec<&str> = rows.lines().collect();
        assert_eq!(lines.len(), 2);
        let (p0, h0) = lines[0].split_once('\t').unwrap();
        let (p1, h1) = lines[1].split_once('\t').unwrap();
        assert_eq!((p0, p1), (".", "D"));
        assert_ne!(h0, h1);
        assert_eq!(h0.len(), 16);
    }

    #[test]
    fn dedup_examples() {
        let r = dedup(&[parse_term("\\0").unwrap()], HashMode::Exact).unwrap();
        assert_eq!(
            (r.total_nodes, r.unique_hashes, r.reduction_percent),
            (2, 2, 0.0)
        );
        let r = dedup(&[gen_linear(100)], HashMode::Exact).unwrap();
        assert_eq!(r.unique_hashes, r.total_nodes);
        let r = dedup(&[gen_balanced(10)], HashMode::Exact).unwrap();
        assert_eq!(r.total_nodes, 3070);
        assert!(r.reduction_percent >= 95.0, "{r}");
    }
}
