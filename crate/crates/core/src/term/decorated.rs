use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use super::{Build, PureTerm, Syntax, TermF};
use crate::error::Result;
use crate::hash::{Hash, Hasher};

/// An immutable, shared λ/g-term node decorated with its size, free-variable
/// range and hash.
///
/// Cloning is `O(1)`. A node built by [`Term::gvar`] is a global variable: its
/// shape is `Var(i)` but its hash is `hash_gvar(payload)` and it counts as
/// closed.
#[derive(Clone)]
pub struct Term(Arc<Node>);

struct Node {
    shape: TermF<Term>,
    size: usize,
    /// One more than the largest free de Bruijn index reachable from the root,
    /// 0 when there is none. Global variables contribute nothing.
    range: usize,
    hash: Hash,
    gvar: Option<Hash>,
    visits: AtomicU32,
}

impl Term {
    fn with(shape: TermF<Term>, hash: Hash, gvar: Option<Hash>, visits: u32) -> Term {
        let (size, range) = match (&shape, gvar) {
            (TermF::Var(_), Some(_)) => (1, 0),
            (TermF::Var(i), None) => (1, i + 1),
            (TermF::Lam(b), _) => (b.size() + 1, b.0.range.saturating_sub(1)),
            (TermF::App(f, x), _) => (f.size() + x.size() + 1, f.0.range.max(x.0.range)),
        };
        Term(Arc::new(Node {
            shape,
            size,
            range,
            hash,
            gvar,
            visits: AtomicU32::new(visits),
        }))
    }

    /// Builds a node from one layer, hashing it with `lift_hash`.
    ///
    /// # Panics
    /// If the children were hashed by a different session; see [`Term::try_lift`].
    pub fn lift(hasher: &mut Hasher, layer: TermF<Term>) -> Term {
        Self::try_lift(hasher, layer).expect("children hashed by another session")
    }

    pub fn try_lift(hasher: &mut Hasher, layer: TermF<Term>) -> Result<Term> {
        Self::lift_visited(hasher, layer, 0)
    }

    pub(crate) fn lift_visited(
        hasher: &mut Hasher,
        layer: TermF<Term>,
        visits: u32,
    ) -> Result<Term> {
        let h = hasher.lift_hash(layer.as_ref().map(|c| c.hash()))?;
        Ok(Self::with(layer, h, None, visits))
    }

    /// A global variable with shape `Var(i)` and hash `hash_gvar(payload)`.
    pub fn gvar(hasher: &mut Hasher, payload: Hash, i: usize) -> Result<Term> {
        Self::gvar_visited(hasher, payload, i, 0)
    }

    pub(crate) fn gvar_visited(
        hasher: &mut Hasher,
        payload: Hash,
        i: usize,
        visits: u32,
    ) -> Result<Term> {
        let h = hasher.hash_gvar(payload)?;
        Ok(Self::with(TermF::Var(i), h, Some(payload), visits))
    }

    /// Decorates a pure term; its hashes are plain Merkle hashes of the syntax.
    pub fn from_pure(hasher: &mut Hasher, t: &PureTerm) -> Term {
        t.fold_up(|_, layer| Term::lift(hasher, layer))
    }

    /// Drops all decorations. Global variables become their underlying `Var(i)`.
    pub fn to_pure(&self) -> PureTerm {
        self.fold_up(|_, layer| PureTerm::new(layer))
    }

    /// The layer this node was built from.
    pub fn case(&self) -> TermF<Term> {
        self.0.shape.clone()
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    /// True iff the term has no free variable other than global ones.
    pub fn gclosed(&self) -> bool {
        self.0.range == 0
    }

    /// One more than the largest free non-global index, or 0.
    pub fn free_range(&self) -> usize {
        self.0.range
    }

    pub fn hash(&self) -> Hash {
        self.0.hash
    }

    pub fn gvar_payload(&self) -> Option<Hash> {
        self.0.gvar
    }

    pub fn is_gvar(&self) -> bool {
        self.0.gvar.is_some()
    }

    pub fn visits(&self) -> u32 {
        self.0.visits.load(Ordering::Relaxed)
    }

    pub(crate) fn set_visits(&self, v: u32) {
        self.0.visits.store(v, Ordering::Relaxed);
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Syntax for Term {
    fn node(&self) -> &TermF<Term> {
        &self.0.shape
    }

    fn is_global(&self) -> bool {
        self.is_gvar()
    }

    fn known_closed(&self) -> bool {
        self.gclosed()
    }
}

impl Build<Term> for Hasher {
    fn build(&mut self, layer: TermF<Term>) -> Term {
        Term::lift(self, layer)
    }
}

impl Drop for Node {
    fn drop(&mut self) {
        let mut stack: Vec<Term> = Vec::new();
        let take = |shape: &mut TermF<Term>, stack: &mut Vec<Term>| match std::mem::replace(
            shape,
            TermF::Var(0),
        ) {
            TermF::Var(_) => {}
            TermF::Lam(b) => stack.push(b),
            TermF::App(f, x) => {
                stack.push(f);
                stack.push(x);
            }
        };
        take(&mut self.shape, &mut stack);
        while let Some(t) = stack.pop() {
            if let Some(mut node) = Arc::into_inner(t.0) {
                take(&mut node.shape, &mut stack);
            }
        }
    }
}

/// Structural equality, including global-variable payloads. Visit counts are
/// ignored.
impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        let mut stack = vec![(self, other)];
        while let Some((a, b)) = stack.pop() {
            if a.ptr_eq(b) {
                continue;
            }
            if a.0.gvar != b.0.gvar {
                return false;
            }
            match (a.node(), b.node()) {
                (TermF::Var(i), TermF::Var(j)) if i == j => {}
                (TermF::Lam(x), TermF::Lam(y)) => stack.push((x, y)),
                (TermF::App(f1, x1), TermF::App(f2, x2)) => {
                    stack.push((x1, x2));
                    stack.push((f1, f2));
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for Term {}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({} #{})", self.to_pure(), self.hash())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_pure(), f)
    }
}
