//! Hash back-ends.
//!
//! A [`Hasher`] is one hashing session. In fast mode a hash is a 64-bit digest
//! built from the splitmix64 finalizer; in exact mode it is an identifier into
//! an [`InternTable`] of g-term layers, so equal identifiers mean equal g-terms
//! and there are no collisions.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::term::TermF;

const TAG_LAM: u64 = 0xA1;
const TAG_APP: u64 = 0xA2;
const TAG_VAR: u64 = 0xA3;
const TAG_GVAR: u64 = 0xA4;
const MISSING: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn combine(tag: u64, left: u64, right: u64) -> u64 {
    mix64(tag ^ mix64(left ^ mix64(right)))
}

/// A 64-bit combiner for fast-mode hashes.
pub trait Combine64: Send + Sync {
    fn lift(&self, layer: TermF<u64>) -> u64;
    fn gvar(&self, payload: u64) -> u64;
}

/// The default fast combiner.
///
/// ```text
/// Lam(h)    = mix(0xA1 ^ mix(h ^ mix(M)))
/// App(a, b) = mix(0xA2 ^ mix(a ^ mix(b)))
/// Var(i)    = mix(0xA3 ^ mix(mix(i ^ 0xA3) ^ mix(M)))
/// GVar(h)   = mix(0xA4 ^ mix(h ^ mix(M)))
/// ```
/// where `mix` is [`mix64`] and `M = 0x9E3779B97F4A7C15` fills a missing child.
#[derive(Debug, Default, Clone, Copy)]
pub struct SplitMix;

impl Combine64 for SplitMix {
    fn lift(&self, layer: TermF<u64>) -> u64 {
        match layer {
            TermF::Lam(h) => combine(TAG_LAM, h, MISSING),
            TermF::App(a, b) => combine(TAG_APP, a, b),
            TermF::Var(i) => combine(TAG_VAR, mix64(i as u64 ^ TAG_VAR), MISSING),
        }
    }

    fn gvar(&self, payload: u64) -> u64 {
        combine(TAG_GVAR, payload, MISSING)
    }
}

/// Identifier of an interned g-term, tagged with the table that issued it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactId {
    table: u32,
    index: u32,
}

impl ExactId {
    pub fn index(self) -> u32 {
        self.index
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Hash {
    Fast(u64),
    Exact(ExactId),
}

impl fmt::Display for Hash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hash::Fast(h) => write!(f, "{h:016x}"),
            Hash::Exact(id) => write!(f, "{}", id.index),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HashMode {
    Fast,
    Exact,
}

impl std::str::FromStr for HashMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(HashMode::Fast),
            "exact" => Ok(HashMode::Exact),
            other => Err(format!(
                "unknown hash mode `{other}` (expected fast or exact)"
            )),
        }
    }
}

/// λ-terms extended with global variables labelled by g-terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GTerm {
    Term(Box<TermF<GTerm>>),
    GVar(Box<GTerm>),
}

impl GTerm {
    pub fn var(i: usize) -> Self {
        GTerm::Term(Box::new(TermF::Var(i)))
    }

    pub fn lam(body: GTerm) -> Self {
        GTerm::Term(Box::new(TermF::Lam(body)))
    }

    pub fn app(f: GTerm, x: GTerm) -> Self {
        GTerm::Term(Box::new(TermF::App(f, x)))
    }

    pub fn gvar(label: GTerm) -> Self {
        GTerm::GVar(Box::new(label))
    }
}

/// The term syntax, with global variables written `g[label]`.
impl fmt::Display for GTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        enum Item<'a> {
            Term(&'a GTerm),
            Text(&'static str),
        }
        let mut stack = vec![Item::Term(self)];
        while let Some(item) = stack.pop() {
            match item {
                Item::Text(s) => f.write_str(s)?,
                Item::Term(GTerm::GVar(label)) => {
                    f.write_str("g[")?;
                    stack.push(Item::Text("]"));
                    stack.push(Item::Term(label));
                }
                Item::Term(GTerm::Term(layer)) => match &**layer {
                    TermF::Var(i) => write!(f, "{i}")?,
                    TermF::Lam(b) => {
                        f.write_str("\\")?;
                        stack.push(Item::Term(b));
                    }
                    TermF::App(g, x) => {
                        f.write_str("(")?;
                        stack.push(Item::Text(")"));
                        stack.push(Item::Term(x));
                        stack.push(Item::Text(" "));
                        stack.push(Item::Term(g));
                    }
                },
            }
        }
        Ok(())
    }
}

/// One interned layer: children are identifiers of earlier entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Layer {
    Term(TermF<u32>),
    GVar(u32),
}

static NEXT_TABLE: AtomicU32 = AtomicU32::new(1);

/// Hash-consing table for g-terms. Structurally equal g-terms get the same
/// identifier for the lifetime of the table.
#[derive(Debug)]
pub struct InternTable {
    id: u32,
    ids: HashMap<Layer, u32>,
    layers: Vec<Layer>,
}

impl Default for InternTable {
    fn default() -> Self {
        Self::new()
    }
}

impl InternTable {
    pub fn new() -> Self {
        InternTable {
            id: NEXT_TABLE.fetch_add(1, Ordering::Relaxed),
            ids: HashMap::new(),
            layers: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    fn own(&self, h: Hash) -> Result<u32> {
        match h {
            Hash::Exact(id) if id.table == self.id => Ok(id.index),
            _ => Err(Error::ModeMismatch),
        }
    }

    fn intern(&mut self, layer: Layer) -> Hash {
        let index = match self.ids.get(&layer) {
            Some(&i) => i,
            None => {
                let i = u32::try_from(self.layers.len()).expect("intern table overflow");
                self.layers.push(layer);
                self.ids.insert(layer, i);
                i
            }
        };
        Hash::Exact(ExactId {
            table: self.id,
            index,
        })
    }

    pub fn lift(&mut self, layer: TermF<Hash>) -> Result<Hash> {
        let layer = match layer {
            TermF::Lam(b) => TermF::Lam(self.own(b)?),
            TermF::App(f, x) => TermF::App(self.own(f)?, self.own(x)?),
            TermF::Var(i) => TermF::Var(i),
        };
        Ok(self.intern(Layer::Term(layer)))
    }

    pub fn gvar(&mut self, payload: Hash) -> Result<Hash> {
        let p = self.own(payload)?;
        Ok(self.intern(Layer::GVar(p)))
    }

    /// Expands an identifier back into its g-term. The expansion is a tree, so
    /// it can be exponentially larger than the table; meant for small terms.
    pub fn gterm(&self, h: Hash) -> Result<GTerm> {
        let root = self.own(h)?;
        enum Frame {
            Enter(u32),
            Exit(u32),
        }
        let mut stack = vec![Frame::Enter(root)];
        let mut out: Vec<GTerm> = Vec::new();
        while let Some(frame) = stack.pop() {
            match frame {
                Frame::Enter(i) => match self.layers[i as usize] {
                    Layer::Term(TermF::Var(v)) => out.push(GTerm::var(v)),
                    Layer::Term(TermF::Lam(b)) | Layer::GVar(b) => {
                        stack.push(Frame::Exit(i));
                        stack.push(Frame::Enter(b));
                    }
                    Layer::Term(TermF::App(f, x)) => {
                        stack.push(Frame::Exit(i));
                        stack.push(Frame::Enter(x));
                        stack.push(Frame::Enter(f));
                    }
                },
                Frame::Exit(i) => {
                    let g = match self.layers[i as usize] {
                        Layer::Term(TermF::Lam(_)) => GTerm::lam(out.pop().unwrap()),
                        Layer::GVar(_) => GTerm::gvar(out.pop().unwrap()),
                        Layer::Term(TermF::App(..)) => {
                            let x = out.pop().unwrap();
                            let f = out.pop().unwrap();
                            GTerm::app(f, x)
                        }
                        Layer::Term(TermF::Var(_)) => unreachable!(),
                    };
                    out.push(g);
                }
            }
        }
        Ok(out.pop().unwrap())
    }
}

enum Backend {
    Fast(Arc<dyn Combine64>),
    Exact(InternTable),
}

/// A hashing session: supplies `lift_hash` and `hash_gvar` for one mode.
///
/// Exact sessions own their intern table and need `&mut` access; fast
/// sessions are stateless.
pub struct Hasher {
    backend: Backend,
}

impl fmt::Debug for Hasher {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.backend {
            Backend::Fast(_) => f.write_str("Hasher::Fast"),
            Backend::Exact(t) => write!(f, "Hasher::Exact({} entries)", t.len()),
        }
    }
}

impl Hasher {
    pub fn fast() -> Self {
        Self::fast_with(Arc::new(SplitMix))
    }

    pub fn fast_with(combiner: Arc<dyn Combine64>) -> Self {
        Hasher {
            backend: Backend::Fast(combiner),
        }
    }

    pub fn exact() -> Self {
        Hasher {
            backend: Backend::Exact(InternTable::new()),
        }
    }

    pub fn new(mode: HashMode) -> Self {
        match mode {
            HashMode::Fast => Self::fast(),
            HashMode::Exact => Self::exact(),
        }
    }

    pub fn mode(&self) -> HashMode {
        match self.backend {
            Backend::Fast(_) => HashMode::Fast,
            Backend::Exact(_) => HashMode::Exact,
        }
    }

    pub fn intern_table(&self) -> Option<&InternTable> {
        match &self.backend {
            Backend::Exact(t) => Some(t),
            Backend::Fast(_) => None,
        }
    }

    pub fn lift_hash(&mut self, layer: TermF<Hash>) -> Result<Hash> {
        match &mut self.backend {
            Backend::Exact(t) => t.lift(layer),
            Backend::Fast(c) => {
                let fast = |h: Hash| match h {
                    Hash::Fast(x) => Ok(x),
                    Hash::Exact(_) => Err(Error::ModeMismatch),
                };
                let layer = match layer {
                    TermF::Lam(b) => TermF::Lam(fast(b)?),
                    TermF::App(f, x) => TermF::App(fast(f)?, fast(x)?),
                    TermF::Var(i) => TermF::Var(i),
                };
                Ok(Hash::Fast(c.lift(layer)))
            }
        }
    }

    pub fn hash_gvar(&mut self, payload: Hash) -> Result<Hash> {
        match (&mut self.backend, payload) {
            (Backend::Exact(t), h) => t.gvar(h),
            (Backend::Fast(c), Hash::Fast(h)) => Ok(Hash::Fast(c.gvar(h))),
            (Backend::Fast(_), Hash::Exact(_)) => Err(Error::ModeMismatch),
        }
    }

    /// The g-term behind an exact-mode hash.
    pub fn gterm_of_exact(&self, h: Hash) -> Result<GTerm> {
        match &self.backend {
            Backend::Exact(t) => t.gterm(h),
            Backend::Fast(_) => Err(Error::ModeMismatch),
        }
    }
}
