//! Globalization: replacing bound de Bruijn indices with global variables that
//! carry enough of their context for subterms to be compared syntactically.
//!
//! [`globalize_naive`] substitutes at every binder and is quadratic in the
//! worst case. [`globalize`] delays substitutions in a [`HashEnv`] and only
//! performs them when a subterm becomes the root of a new strongly connected
//! component or has a duplicate size within its component, which bounds the
//! number of times any node is rewritten by `⌊log₂ n⌋ + 1`.
//!
//! Both run on an explicit stack.

mod env;

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

pub use env::HashEnv;

use crate::error::{Error, Result};
use crate::hash::{Hash, Hasher};
use crate::partition::Partition;
use crate::term::{index, Position, Syntax, Term, TermF};

/// Sizes shared by two or more strict subterms of `r`'s component.
///
/// The component is every position reachable from `r` without passing through
/// a closed subterm (closed subterms themselves are not counted). Subterms of
/// a duplicate are counted too: pruning them, as a priority-queue sweep would,
/// can leave a size looking unique when it also occurs inside the duplicate.
pub fn calc_duplicates(r: &Term) -> Result<HashSet<usize>> {
    if !r.gclosed() {
        return Err(Error::NotClosed);
    }
    let mut counts: HashMap<usize, u32> = HashMap::new();
    let mut stack = vec![r];
    while let Some(t) = stack.pop() {
        t.node().as_ref().fold((), |(), c| {
            if !c.gclosed() {
                *counts.entry(c.size()).or_default() += 1;
                stack.push(c);
            }
        });
    }
    Ok(counts
        .into_iter()
        .filter(|&(_, c)| c > 1)
        .map(|(s, _)| s)
        .collect())
}

/// Rewrites the free indices of `t`: index `i` at binder depth `d` becomes a
/// global variable with payload `f(i, d)` when that is `Some`. Subtrees with
/// `keep(u, d)` (at least the closed ones) are shared as they are; every other
/// node is rebuilt with its visit count incremented.
fn substitute(
    hasher: &mut Hasher,
    t: &Term,
    keep: impl Fn(&Term, usize) -> bool,
    mut f: impl FnMut(usize, usize) -> Option<Hash>,
) -> Result<Term> {
    enum Frame<'a> {
        Enter(&'a Term, usize),
        Lam(u32),
        App(u32),
    }
    if t.gclosed() || keep(t, 0) {
        return Ok(t.clone());
    }
    let mut stack = vec![Frame::Enter(t, 0)];
    let mut out: Vec<Term> = Vec::new();
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Enter(u, depth) => {
                if u.gclosed() || keep(u, depth) {
                    out.push(u.clone());
                    continue;
                }
                let visits = u.visits() + 1;
                match u.node() {
                    TermF::Var(i) => {
                        let v = match (*i >= depth).then(|| f(*i, depth)).flatten() {
                            Some(h) => Term::gvar_visited(hasher, h, *i, visits)?,
                            None => Term::lift_visited(hasher, TermF::Var(*i), visits)?,
                        };
                        out.push(v);
                    }
                    TermF::Lam(b) => {
                        stack.push(Frame::Lam(visits));
                        stack.push(Frame::Enter(b, depth + 1));
                    }
                    TermF::App(g, x) => {
                        stack.push(Frame::App(visits));
                        stack.push(Frame::Enter(x, depth));
                        stack.push(Frame::Enter(g, depth));
                    }
                }
            }
            Frame::Lam(v) => {
                let b = out.pop().expect("body");
                out.push(Term::lift_visited(hasher, TermF::Lam(b), v)?);
            }
            Frame::App(v) => {
                let x = out.pop().expect("argument");
                let g = out.pop().expect("function");
                out.push(Term::lift_visited(hasher, TermF::App(g, x), v)?);
            }
        }
    }
    Ok(out.pop().expect("one result"))
}

/// `t[n := g(h)]`: every free occurrence of index `n` becomes a global
/// variable with payload `h`. Closed subterms, including existing global
/// variables, are left alone.
pub fn set_hash(hasher: &mut Hasher, n: usize, h: Hash, t: &Term) -> Result<Term> {
    substitute(
        hasher,
        t,
        |u, depth| u.free_range() <= n + depth,
        |i, depth| (i == n + depth).then_some(h),
    )
}

/// `t σ` for the environment `σ = env`: free index `i` becomes a global
/// variable with payload `env[i]`.
pub fn set_hashes(hasher: &mut Hasher, env: &HashEnv, t: &Term) -> Result<Term> {
    if t.free_range() > env.len() {
        return Err(Error::IndexOutOfRange {
            index: t.free_range() - 1,
            len: env.len(),
        });
    }
    substitute(hasher, t, |_, _| false, |i, depth| env.get(i - depth))
}

/// Naive globalization: at each binder `λ b`, substitute `g(λ b)` for the
/// bound variable in `b` and continue with the now closed body.
pub fn globalize_naive(hasher: &mut Hasher, t: &Term) -> Result<Term> {
    enum Frame {
        Enter(Term),
        Lam(u32),
        App(u32),
    }
    if !t.gclosed() {
        return Err(Error::NotClosed);
    }
    let mut stack = vec![Frame::Enter(t.clone())];
    let mut out: Vec<Term> = Vec::new();
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Enter(u) => match u.node() {
                TermF::Lam(b) => {
                    let b = set_hash(hasher, 0, u.hash(), b)?;
                    stack.push(Frame::Lam(u.visits()));
                    stack.push(Frame::Enter(b));
                }
                TermF::App(g, x) => {
                    stack.push(Frame::App(u.visits()));
                    stack.push(Frame::Enter(x.clone()));
                    stack.push(Frame::Enter(g.clone()));
                }
                TermF::Var(_) => {
                    debug_assert!(u.is_gvar());
                    out.push(u);
                }
            },
            Frame::Lam(v) => {
                let b = out.pop().expect("body");
                out.push(Term::lift_visited(hasher, TermF::Lam(b), v)?);
            }
            Frame::App(v) => {
                let x = out.pop().expect("argument");
                let g = out.pop().expect("function");
                out.push(Term::lift_visited(hasher, TermF::App(g, x), v)?);
            }
        }
    }
    Ok(out.pop().expect("one result"))
}

struct Component {
    root: Hash,
    duplicates: HashSet<usize>,
}

/// Efficient globalization.
///
/// `globalize(r)` walks the component of `r`, pushing the payload
/// `hash(r t)` for each binder `t` onto a lazy environment. A subterm is only
/// rewritten when it is a variable, or when its size is duplicated in the
/// component; a subterm that is (or becomes) closed starts a new component.
pub fn globalize(hasher: &mut Hasher, r: &Term) -> Result<Term> {
    enum Frame {
        Globalize(Term),
        Scc(Rc<Component>, HashEnv, Term),
        Step(Rc<Component>, HashEnv, Term),
        Lam(u32),
        App(u32),
    }
    if !r.gclosed() {
        return Err(Error::NotClosed);
    }
    let mut stack = vec![Frame::Globalize(r.clone())];
    let mut out: Vec<Term> = Vec::new();
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Globalize(t) => {
                let scc = Rc::new(Component {
                    root: t.hash(),
                    duplicates: calc_duplicates(&t)?,
                });
                stack.push(Frame::Scc(scc, HashEnv::new(), t));
            }
            Frame::Scc(scc, env, t) => match t.node() {
                TermF::Lam(b) => {
                    let h = hasher.lift_hash(TermF::App(scc.root, t.hash()))?;
                    let env = env.push(h);
                    stack.push(Frame::Lam(t.visits()));
                    stack.push(Frame::Step(scc, env, b.clone()));
                }
                TermF::App(g, x) => {
                    stack.push(Frame::App(t.visits()));
                    stack.push(Frame::Step(scc.clone(), env.clone(), x.clone()));
                    stack.push(Frame::Step(scc, env, g.clone()));
                }
                TermF::Var(_) => out.push(set_hashes(hasher, &env, &t)?),
            },
            Frame::Step(scc, env, t) => {
                let t = if scc.duplicates.contains(&t.size()) {
                    set_hashes(hasher, &env, &t)?
                } else {
                    t
                };
                if t.gclosed() {
                    stack.push(Frame::Globalize(t));
                } else {
                    debug_assert!(!scc.duplicates.contains(&t.size()));
                    stack.push(Frame::Scc(scc, env, t));
                }
            }
            Frame::Lam(v) => {
                let b = out.pop().expect("body");
                out.push(Term::lift_visited(hasher, TermF::Lam(b), v)?);
            }
            Frame::App(v) => {
                let x = out.pop().expect("argument");
                let g = out.pop().expect("function");
                out.push(Term::lift_visited(hasher, TermF::App(g, x), v)?);
            }
        }
    }
    Ok(out.pop().expect("one result"))
}

/// The hash decoration of `t[p]`.
pub fn hash_at(t: &Term, p: &Position) -> Result<Hash> {
    Ok(index(t, p)?.hash())
}

pub fn reset_visits(t: &Term) {
    for (u, _) in t.preorder() {
        u.set_visits(0);
    }
}

pub fn max_visit(t: &Term) -> u32 {
    t.preorder().map(|(u, _)| u.visits()).max().unwrap_or(0)
}

/// Groups the positions of `t` (in preorder) by their hash.
pub fn hash_partition(t: &Term) -> Partition {
    Partition::from_labels(t.preorder().map(|(u, _)| u.hash()))
}

/// `⌊log₂ n⌋ + 1`, the most times globalization may rewrite one node of a
/// term of size `n`.
pub fn visit_bound(n: usize) -> u32 {
    n.max(1).ilog2() + 1
}
