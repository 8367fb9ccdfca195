//! Cross-checks every way this crate has of deciding context-sensitive
//! α-equivalence against each other.
//!
//! For each term the position partitions induced by naive and efficient
//! globalization (exact and fast hashes), by both bisimulation partitioners,
//! and, for tiny terms, by fork equivalence must all coincide.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

use crate::bisim::{
    bisim_partition_naive, bisim_partition_refine, build_graph, fork_closure, FORK_BOUND,
};
use crate::error::Result;
use crate::generate::{all_closed_up_to, gen_grown_closed, RandomClosedSampler, UNIFORM_LIMIT};
use crate::globalize::{globalize, globalize_naive, hash_partition};
use crate::hash::{Combine64, Hasher, SplitMix};
use crate::partition::Partition;
use crate::term::{Position, PureTerm, Term, TermF};

/// Exhaustive enumeration never goes beyond this size.
pub const EXHAUSTIVE_LIMIT: usize = 8;

/// The fixed-point partitioner is only run up to this size.
pub const NAIVE_BISIM_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    /// Largest term size checked.
    pub max_size: usize,
    /// Number of random terms, with sizes uniform in `2..=max_size`.
    pub trials: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_size: 12,
            trials: 200,
            seed: crate::generate::DEFAULT_SEED,
        }
    }
}

/// A term on which two methods disagree, and the first position where their
/// partitions differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub term: PureTerm,
    pub reference: &'static str,
    pub method: &'static str,
    pub position: Position,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} disagrees with {} at position {} of {}",
            self.method, self.reference, self.position, self.term
        )
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub terms: usize,
    pub positions: usize,
    pub fork_checked: usize,
}

/// Partitions of one term by every applicable method, reference first.
pub fn partitions_of(
    t: &PureTerm,
    make_fast: &dyn Fn() -> Hasher,
) -> Result<Vec<(&'static str, Partition)>> {
    let g = build_graph(t)?;
    let mut out = vec![("bisim-refine", bisim_partition_refine(&g))];
    if t.size() <= NAIVE_BISIM_LIMIT {
        out.push(("bisim-naive", bisim_partition_naive(&g)));
    }
    let mut exact = Hasher::exact();
    let d = Term::from_pure(&mut exact, t);
    out.push((
        "efficient-exact",
        hash_partition(&globalize(&mut exact, &d)?),
    ));
    out.push((
        "naive-exact",
        hash_partition(&globalize_naive(&mut exact, &d)?),
    ));
    let mut fast = make_fast();
    let d = Term::from_pure(&mut fast, t);
    out.push(("efficient-fast", hash_partition(&globalize(&mut fast, &d)?)));
    out.push((
        "naive-fast",
        hash_partition(&globalize_naive(&mut fast, &d)?),
    ));
    if t.size() <= FORK_BOUND {
        out.push(("fork-closure", fork_closure(t, FORK_BOUND)?));
    }
    Ok(out)
}

/// Checks one term; `Ok(None)` when every method agrees.
pub fn check_term(t: &PureTerm, make_fast: &dyn Fn() -> Hasher) -> Result<Option<Counterexample>> {
    let parts = partitions_of(t, make_fast)?;
    let (reference, want) = &parts[0];
    for (method, got) in &parts[1..] {
        if let Some(v) = want.first_difference(got) {
            let position = crate::term::valid_positions(t).nth(v).unwrap_or_default();
            return Ok(Some(Counterexample {
                term: t.clone(),
                reference,
                method,
                position,
            }));
        }
    }
    Ok(None)
}

/// Runs the suite with the default fast combiner.
pub fn run_check(config: &CheckConfig) -> Result<std::result::Result<CheckReport, Counterexample>> {
    run_check_with(config, &Hasher::fast)
}

/// Runs the suite with fast hashers from `make_fast`: every closed term up to
/// `min(max_size, 8)` nodes, then `trials` random closed terms.
pub fn run_check_with(
    config: &CheckConfig,
    make_fast: &dyn Fn() -> Hasher,
) -> Result<std::result::Result<CheckReport, Counterexample>> {
    let mut report = CheckReport::default();
    let visit = |t: &PureTerm, report: &mut CheckReport| -> Result<Option<Counterexample>> {
        report.terms += 1;
        report.positions += t.size();
        if t.size() <= FORK_BOUND {
            report.fork_checked += 1;
        }
        check_term(t, make_fast)
    };
    for t in all_closed_up_to(config.max_size.min(EXHAUSTIVE_LIMIT)) {
        if let Some(c) = visit(&t, &mut report)? {
            return Ok(Err(c));
        }
    }
    if config.trials == 0 || config.max_size < 2 {
        return Ok(Ok(report));
    }
    let mut rng = Pcg64::seed_from_u64(config.seed);
    let sampler = if config.max_size <= UNIFORM_LIMIT {
        Some(RandomClosedSampler::new(config.max_size)?)
    } else {
        None
    };
    for _ in 0..config.trials {
        let n = rng.random_range(2..=config.max_size);
        let t = match &sampler {
            Some(s) => s.sample(n, &mut rng)?,
            None => gen_grown_closed(n, rng.random())?,
        };
        if let Some(c) = visit(&t, &mut report)? {
            return Ok(Err(c));
        }
    }
    Ok(Ok(report))
}

/// A deliberately broken fast combiner whose global-variable hash ignores its
/// payload, so all global variables collide. The check suite must reject it.
#[derive(Debug, Default, Clone, Copy)]
pub struct PayloadBlindMutant;

impl Combine64 for PayloadBlindMutant {
    fn lift(&self, layer: TermF<u64>) -> u64 {
        SplitMix.lift(layer)
    }

    fn gvar(&self, _payload: u64) -> u64 {
        SplitMix.gvar(0)
    }
}

pub fn mutant_hasher() -> Hasher {
    Hasher::fast_with(Arc::new(PayloadBlindMutant))
}
