//! Synthetic term families.
//!
//! * `linear`: `λx₁…λxₙ. xₙ … x₂ x₁`, the worst case for naive globalization.
//! * `balanced`: `B(0) = 0`, `B(k) = λ(B(k−1) B(k−1))`.
//! * `random`: closed terms of an exact size drawn uniformly, by counting and
//!   unranking.
//! * `grown`: closed terms of an exact size grown by random splits. Not
//!   uniform, but cheap at any size.

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_pcg::Pcg64;

use crate::error::{Error, Result};
use crate::term::PureTerm;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_a1fa;

/// Largest size the uniform sampler accepts; its counting table grows
/// roughly cubically in the size.
pub const UNIFORM_LIMIT: usize = 1000;

/// `λⁿ (((0 1) 2) … n−1)`, of size `3n − 1`.
pub fn gen_linear(n: usize) -> PureTerm {
    assert!(n >= 1, "the linear family starts at n = 1");
    let spine = (1..n).fold(PureTerm::var(0), |f, i| PureTerm::app(f, PureTerm::var(i)));
    PureTerm::lams(n, spine)
}

/// `B(d)`, of size `3·2^d − 2`.
pub fn gen_balanced(d: u32) -> PureTerm {
    (0..d).fold(PureTerm::var(0), |b, _| {
        PureTerm::lam(PureTerm::app(b.clone(), b))
    })
}

/// Table of `T(m, j)`, the number of terms of size `m` whose free indices are
/// all below `j`:
///
/// ```text
/// T(1, j) = j
/// T(m, j) = T(m−1, j+1) + Σ_{i=1}^{m−2} T(i, j)·T(m−1−i, j)
/// ```
#[derive(Debug, Clone)]
pub struct TermCounts {
    /// `table[m][j]` for `1 ≤ m ≤ size`, `j ≤ free + size − m`.
    table: Vec<Vec<BigUint>>,
    size: usize,
}

impl TermCounts {
    /// Counts for every `(m, j)` reachable from `(size, free)`.
    pub fn new(size: usize, free: usize) -> Self {
        let mut table: Vec<Vec<BigUint>> = vec![Vec::new(); size + 1];
        for m in 1..=size {
            let width = free + size - m + 1;
            let mut row = Vec::with_capacity(width);
            for j in 0..width {
                let c = if m == 1 {
                    BigUint::from(j)
                } else {
                    let mut c = table[m - 1][j + 1].clone();
                    let half = (m - 1) / 2;
                    for i in 1..=half {
                        let prod = &table[i][j] * &table[m - 1 - i][j];
                        if 2 * i == m - 1 {
                            c += prod;
                        } else {
                            c += prod << 1u32;
                        }
                    }
                    c
                };
                row.push(c);
            }
            table[m] = row;
        }
        TermCounts { table, size }
    }

    pub fn max_size(&self) -> usize {
        self.size
    }

    /// `T(m, j)`; panics outside the table.
    pub fn get(&self, m: usize, j: usize) -> &BigUint {
        &self.table[m][j]
    }

    /// The term of size `m` with free indices below `j` at position `rank` in
    /// the order: variables, then λs, then applications by function size.
    pub fn unrank(&self, m: usize, j: usize, rank: &BigUint) -> PureTerm {
        enum Frame {
            Build(usize, usize, BigUint),
            Lam,
            App,
        }
        let mut stack = vec![Frame::Build(m, j, rank.clone())];
        let mut out: Vec<PureTerm> = Vec::new();
        while let Some(frame) = stack.pop() {
            match frame {
                Frame::Build(1, _, r) => {
                    out.push(PureTerm::var(r.to_usize().expect("index fits")));
                }
                Frame::Build(m, j, mut r) => {
                    let lams = &self.table[m - 1][j + 1];
                    if &r < lams {
                        stack.push(Frame::Lam);
                        stack.push(Frame::Build(m - 1, j + 1, r));
                        continue;
                    }
                    r -= lams;
                    let mut placed = false;
                    for i in 1..=m - 2 {
                        let right = &self.table[m - 1 - i][j];
                        let block = &self.table[i][j] * right;
                        if r < block {
                            let (q, rem) = (&r / right, &r % right);
                            stack.push(Frame::App);
                            stack.push(Frame::Build(m - 1 - i, j, rem));
                            stack.push(Frame::Build(i, j, q));
                            placed = true;
                            break;
                        }
                        r -= block;
                    }
                    assert!(placed, "rank out of range");
                }
                Frame::Lam => {
                    let b = out.pop().expect("body");
                    out.push(PureTerm::lam(b));
                }
                Frame::App => {
                    let x = out.pop().expect("argument");
                    let f = out.pop().expect("function");
                    out.push(PureTerm::app(f, x));
                }
            }
        }
        out.pop().expect("one term")
    }
}

/// `T(n, k)`.
pub fn count_terms(n: usize, k: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    TermCounts::new(n, k).get(n, k).clone()
}

/// A uniform integer in `0..bound`, by rejection on the bit length.
pub fn random_below(rng: &mut impl RngCore, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let spare = (words as u64 * 32 - bits) as u32;
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
        if let Some(top) = digits.last_mut() {
            *top >>= spare;
        }
        let x = BigUint::from_slice(&digits);
        if &x < bound {
            return x;
        }
    }
}

/// Uniform sampler of closed terms up to a fixed maximum size.
#[derive(Debug, Clone)]
pub struct RandomClosedSampler {
    counts: TermCounts,
}

impl RandomClosedSampler {
    pub fn new(max_size: usize) -> Result<Self> {
        if max_size > UNIFORM_LIMIT {
            return Err(Error::TermTooLarge {
                size: max_size,
                limit: UNIFORM_LIMIT,
            });
        }
        Ok(RandomClosedSampler {
            counts: TermCounts::new(max_size, 0),
        })
    }

    pub fn max_size(&self) -> usize {
        self.counts.max_size()
    }

    /// Number of closed terms of size `n`.
    pub fn count(&self, n: usize) -> &BigUint {
        self.counts.get(n, 0)
    }

    pub fn sample(&self, n: usize, rng: &mut impl RngCore) -> Result<PureTerm> {
        if n == 0 || n == 1 {
            return Err(Error::NoTermOfSize(n));
        }
        if n > self.max_size() {
            return Err(Error::TermTooLarge {
                size: n,
                limit: self.max_size(),
            });
        }
        let rank = random_below(rng, self.count(n));
        Ok(self.counts.unrank(n, 0, &rank))
    }
}

/// A closed term of size exactly `n`, uniform among all of them.
pub fn gen_random_closed(n: usize, seed: u64) -> Result<PureTerm> {
    if n < 2 {
        return Err(Error::NoTermOfSize(n));
    }
    let mut rng = Pcg64::seed_from_u64(seed);
    RandomClosedSampler::new(n)?.sample(n, &mut rng)
}

/// A closed term of size exactly `n`, grown top-down: each node is a λ with
/// probability 1/3 when an application is also possible, an application
/// splits its remaining size uniformly among the splits that can still be
/// closed, and a variable picks a uniform bound index.
pub fn gen_grown_closed(n: usize, seed: u64) -> Result<PureTerm> {
    if n < 2 {
        return Err(Error::NoTermOfSize(n));
    }
    let mut rng = Pcg64::seed_from_u64(seed);
    // A subterm of size m under k binders can be closed iff k ≥ 1 or m ≥ 2.
    let ok = |m: usize, k: usize| m >= 1 && (k >= 1 || m >= 2);
    enum Frame {
        Build(usize, usize),
        Lam,
        App,
    }
    let mut stack = vec![Frame::Build(n, 0)];
    let mut out: Vec<PureTerm> = Vec::new();
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Build(1, k) => out.push(PureTerm::var(rng.random_range(0..k))),
            Frame::Build(m, k) => {
                let splits: Vec<usize> = (1..m - 1)
                    .filter(|&i| ok(i, k) && ok(m - 1 - i, k))
                    .collect();
                if splits.is_empty() || rng.random_ratio(1, 3) {
                    stack.push(Frame::Lam);
                    stack.push(Frame::Build(m - 1, k + 1));
                } else {
                    let i = splits[rng.random_range(0..splits.len())];
                    stack.push(Frame::App);
                    stack.push(Frame::Build(m - 1 - i, k));
                    stack.push(Frame::Build(i, k));
                }
            }
            Frame::Lam => {
                let b = out.pop().expect("body");
                out.push(PureTerm::lam(b));
            }
            Frame::App => {
                let x = out.pop().expect("argument");
                let f = out.pop().expect("function");
                out.push(PureTerm::app(f, x));
            }
        }
    }
    Ok(out.pop().expect("one term"))
}

/// Every term of size `n` with free indices below `k`, by brute force.
pub fn all_terms(n: usize, k: usize) -> Vec<PureTerm> {
    match n {
        0 => Vec::new(),
        1 => (0..k).map(PureTerm::var).collect(),
        _ => {
            let mut out: Vec<PureTerm> = all_terms(n - 1, k + 1)
                .into_iter()
                .map(PureTerm::lam)
                .collect();
            for i in 1..n - 1 {
                let rights = all_terms(n - 1 - i, k);
                for f in all_terms(i, k) {
                    for x in &rights {
                        out.push(PureTerm::app(f.clone(), x.clone()));
                    }
                }
            }
            out
        }
    }
}

/// Every closed term with at most `max` nodes, smallest first.
pub fn all_closed_up_to(max: usize) -> Vec<PureTerm> {
    (2..=max).flat_map(|n| all_terms(n, 0)).collect()
}

/// A named family of generated terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Random,
    Grown,
    Linear,
    Balanced,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Random,
        Family::Grown,
        Family::Linear,
        Family::Balanced,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Random => "random",
            Family::Grown => "grown",
            Family::Linear => "linear",
            Family::Balanced => "balanced",
        }
    }

    /// The term of this family with `param` (size, `n`, or depth) and seed.
    pub fn generate(self, param: usize, seed: u64) -> Result<PureTerm> {
        match self {
            Family::Random => gen_random_closed(param, seed),
            Family::Grown => gen_grown_closed(param, seed),
            Family::Linear if param == 0 => Err(Error::NoTermOfSize(0)),
            Family::Linear => Ok(gen_linear(param)),
            Family::Balanced => Ok(gen_balanced(param as u32)),
        }
    }

    /// The parameter giving a term of roughly `size` nodes, never more.
    pub fn param_for_size(self, size: usize) -> usize {
        match self {
            Family::Random | Family::Grown => size,
            Family::Linear => (size + 1) / 3,
            Family::Balanced => {
                let mut d = 0;
                while 3 * (1usize << (d + 1)) - 2 <= size {
                    d += 1;
                }
                d
            }
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                format!("unknown family `{s}` (expected random, grown, linear or balanced)")
            })
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.name())
    }
}
