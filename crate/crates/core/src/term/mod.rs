//! De Bruijn λ-terms.
//!
//! Two representations share one functor, [`TermF`]: [`PureTerm`] is a plain
//! syntax tree, [`Term`] is a shared, immutable node decorated with its size,
//! closedness and hash. Everything that walks a term does so with an explicit
//! stack, so terms nested millions of levels deep are fine.

mod decorated;
mod ops;
mod position;
mod pure;

pub use decorated::Term;
pub use ops::{
    bound_positions, free_positions, index, is_closed, lift_out, locally_closed, scc_positions,
    shift, subst, subst_list, valid_positions, var_positions, Positions,
};
pub use position::{Position, Step};
pub use pure::PureTerm;

/// One layer of a λ-term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermF<A> {
    Lam(A),
    App(A, A),
    Var(usize),
}

impl<A> TermF<A> {
    pub fn map<B>(self, mut f: impl FnMut(A) -> B) -> TermF<B> {
        match self {
            TermF::Lam(b) => TermF::Lam(f(b)),
            TermF::App(x, y) => {
                let x = f(x);
                TermF::App(x, f(y))
            }
            TermF::Var(i) => TermF::Var(i),
        }
    }

    pub fn as_ref(&self) -> TermF<&A> {
        match self {
            TermF::Lam(b) => TermF::Lam(b),
            TermF::App(x, y) => TermF::App(x, y),
            TermF::Var(i) => TermF::Var(*i),
        }
    }

    /// Left fold over the children.
    pub fn fold<B>(self, init: B, mut f: impl FnMut(B, A) -> B) -> B {
        match self {
            TermF::Lam(b) => f(init, b),
            TermF::App(x, y) => {
                let acc = f(init, x);
                f(acc, y)
            }
            TermF::Var(_) => init,
        }
    }

    pub fn kind(&self) -> NodeKind {
        match self {
            TermF::Lam(_) => NodeKind::Lam,
            TermF::App(..) => NodeKind::App,
            TermF::Var(_) => NodeKind::Var,
        }
    }
}

/// Root symbol of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Lam,
    App,
    Var,
}

/// A tree whose layers are [`TermF`] values.
pub trait Syntax: Sized + Clone {
    fn node(&self) -> &TermF<Self>;

    /// True for global-variable leaves, which are never part of `vars(t)` and
    /// never rewritten by substitution.
    fn is_global(&self) -> bool {
        false
    }

    /// A cheap "definitely closed" answer, when the representation caches one.
    fn known_closed(&self) -> bool {
        false
    }

    /// Bottom-up fold with an explicit stack.
    fn fold_up<R>(&self, mut f: impl FnMut(&Self, TermF<R>) -> R) -> R {
        enum Frame<'a, T> {
            Enter(&'a T),
            Exit(&'a T),
        }
        let mut stack = vec![Frame::Enter(self)];
        let mut out: Vec<R> = Vec::new();
        while let Some(frame) = stack.pop() {
            match frame {
                Frame::Enter(t) => match t.node() {
                    TermF::Var(i) => {
                        let r = f(t, TermF::Var(*i));
                        out.push(r);
                    }
                    TermF::Lam(b) => {
                        stack.push(Frame::Exit(t));
                        stack.push(Frame::Enter(b));
                    }
                    TermF::App(x, y) => {
                        stack.push(Frame::Exit(t));
                        stack.push(Frame::Enter(y));
                        stack.push(Frame::Enter(x));
                    }
                },
                Frame::Exit(t) => {
                    let layer = match t.node() {
                        TermF::Lam(_) => TermF::Lam(out.pop().expect("body result")),
                        TermF::App(..) => {
                            let y = out.pop().expect("argument result");
                            let x = out.pop().expect("function result");
                            TermF::App(x, y)
                        }
                        TermF::Var(_) => unreachable!(),
                    };
                    let r = f(t, layer);
                    out.push(r);
                }
            }
        }
        out.pop().expect("fold produces one result")
    }

    /// Number of nodes.
    fn count_nodes(&self) -> usize {
        let mut n = 0;
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            n += 1;
            match t.node() {
                TermF::Lam(b) => stack.push(b),
                TermF::App(x, y) => {
                    stack.push(y);
                    stack.push(x);
                }
                TermF::Var(_) => {}
            }
        }
        n
    }

    /// Nodes in preorder, each paired with the number of binders above it.
    fn preorder(&self) -> Preorder<'_, Self> {
        Preorder {
            stack: vec![(self, 0)],
        }
    }
}

/// Something that can build terms of type `T` one layer at a time.
pub trait Build<T> {
    fn build(&mut self, layer: TermF<T>) -> T;
}

/// Builder for [`PureTerm`]s.
#[derive(Debug, Default, Clone, Copy)]
pub struct Pure;

impl Build<PureTerm> for Pure {
    fn build(&mut self, layer: TermF<PureTerm>) -> PureTerm {
        PureTerm::new(layer)
    }
}

/// Preorder walk yielding `(node, binder depth)`.
pub struct Preorder<'a, T> {
    stack: Vec<(&'a T, usize)>,
}

impl<'a, T: Syntax> Iterator for Preorder<'a, T> {
    type Item = (&'a T, usize);

    fn next(&mut self) -> Option<Self::Item> {
        let (t, depth) = self.stack.pop()?;
        match t.node() {
            TermF::Lam(b) => self.stack.push((b, depth + 1)),
            TermF::App(x, y) => {
                self.stack.push((y, depth));
                self.stack.push((x, depth));
            }
            TermF::Var(_) => {}
        }
        Some((t, depth))
    }
}
