use std::fmt;

use super::{Syntax, TermF};

/// An undecorated de Bruijn λ-term.
///
/// Clone, equality and drop are iterative, so deep terms never touch the call
/// stack.
pub struct PureTerm(Box<TermF<PureTerm>>);

impl PureTerm {
    pub fn new(layer: TermF<PureTerm>) -> Self {
        PureTerm(Box::new(layer))
    }

    pub fn var(i: usize) -> Self {
        Self::new(TermF::Var(i))
    }

    pub fn lam(body: PureTerm) -> Self {
        Self::new(TermF::Lam(body))
    }

    pub fn app(f: PureTerm, x: PureTerm) -> Self {
        Self::new(TermF::App(f, x))
    }

    /// `n` nested binders around `body`.
    pub fn lams(n: usize, body: PureTerm) -> Self {
        (0..n).fold(body, |t, _| PureTerm::lam(t))
    }

    pub fn into_node(mut self) -> TermF<PureTerm> {
        std::mem::replace(&mut *self.0, TermF::Var(0))
    }

    pub fn size(&self) -> usize {
        self.count_nodes()
    }
}

impl Syntax for PureTerm {
    fn node(&self) -> &TermF<PureTerm> {
        &self.0
    }
}

impl Drop for PureTerm {
    fn drop(&mut self) {
        let mut stack = Vec::new();
        match std::mem::replace(&mut *self.0, TermF::Var(0)) {
            TermF::Var(_) => return,
            TermF::Lam(b) => stack.push(b),
            TermF::App(x, y) => {
                stack.push(x);
                stack.push(y);
            }
        }
        while let Some(mut t) = stack.pop() {
            match std::mem::replace(&mut *t.0, TermF::Var(0)) {
                TermF::Var(_) => {}
                TermF::Lam(b) => stack.push(b),
                TermF::App(x, y) => {
                    stack.push(x);
                    stack.push(y);
                }
            }
        }
    }
}

impl Clone for PureTerm {
    fn clone(&self) -> Self {
        self.fold_up(|_, layer| PureTerm::new(layer))
    }
}

impl PartialEq for PureTerm {
    fn eq(&self, other: &Self) -> bool {
        let mut stack = vec![(self, other)];
        while let Some((a, b)) = stack.pop() {
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

impl Eq for PureTerm {}

impl std::hash::Hash for PureTerm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (t, _) in self.preorder() {
            match t.node() {
                TermF::Lam(_) => state.write_u8(0),
                TermF::App(..) => state.write_u8(1),
                TermF::Var(i) => {
                    state.write_u8(2);
                    state.write_usize(*i);
                }
            }
        }
    }
}

impl fmt::Debug for PureTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PureTerm({self})")
    }
}

impl fmt::Display for PureTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}
