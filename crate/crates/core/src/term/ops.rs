use super::{Build, Position, Step, Syntax, Term, TermF};
use crate::error::{Error, Result};

/// The subterm `t[p]`. Global variables are leaves.
pub fn index<'a, T: Syntax>(t: &'a T, p: &Position) -> Result<&'a T> {
    let mut cur = t;
    for (at, step) in p.steps().iter().enumerate() {
        cur = match (cur.node(), step) {
            (TermF::Lam(b), Step::Down) => b,
            (TermF::App(f, _), Step::Left) => f,
            (TermF::App(_, x), Step::Right) => x,
            _ => {
                return Err(Error::PositionInvalid {
                    position: p.clone(),
                    at,
                })
            }
        };
    }
    Ok(cur)
}

/// Preorder walk over every position of a term, with the subterm found there.
pub struct Positions<'a, T> {
    path: Vec<Step>,
    stack: Vec<(&'a T, usize, Option<Step>)>,
}

impl<'a, T: Syntax> Positions<'a, T> {
    pub fn new(t: &'a T) -> Self {
        Positions {
            path: Vec::new(),
            stack: vec![(t, 0, None)],
        }
    }
}

impl<'a, T: Syntax> Iterator for Positions<'a, T> {
    type Item = (Position, &'a T);

    fn next(&mut self) -> Option<Self::Item> {
        let (t, len, step) = self.stack.pop()?;
        self.path.truncate(len);
        if let Some(s) = step {
            self.path.push(s);
        }
        let here = self.path.len();
        match t.node() {
            TermF::Lam(b) => self.stack.push((b, here, Some(Step::Down))),
            TermF::App(f, x) => {
                self.stack.push((x, here, Some(Step::Right)));
                self.stack.push((f, here, Some(Step::Left)));
            }
            TermF::Var(_) => {}
        }
        Some((Position::from(self.path.clone()), t))
    }
}

/// All valid positions, in preorder.
pub fn valid_positions<T: Syntax>(t: &T) -> impl Iterator<Item = Position> + '_ {
    Positions::new(t).map(|(p, _)| p)
}

fn vars_with<T: Syntax>(
    t: &T,
    keep: fn(usize, usize) -> bool,
) -> impl Iterator<Item = Position> + '_ {
    Positions::new(t).filter_map(move |(p, u)| match u.node() {
        TermF::Var(i) if !u.is_global() && keep(*i, p.lam_count()) => Some(p),
        _ => None,
    })
}

/// Positions of de Bruijn indices (global variables excluded).
pub fn var_positions<T: Syntax>(t: &T) -> impl Iterator<Item = Position> + '_ {
    vars_with(t, |_, _| true)
}

/// Positions `p` of indices with `t[p] ≥ ‖p‖`.
pub fn free_positions<T: Syntax>(t: &T) -> impl Iterator<Item = Position> + '_ {
    vars_with(t, |i, depth| i >= depth)
}

pub fn bound_positions<T: Syntax>(t: &T) -> impl Iterator<Item = Position> + '_ {
    vars_with(t, |i, depth| i < depth)
}

/// True iff no de Bruijn index of `t` is free.
pub fn is_closed<T: Syntax>(t: &T) -> bool {
    if t.known_closed() {
        return true;
    }
    t.preorder()
        .all(|(u, depth)| u.is_global() || !matches!(u.node(), TermF::Var(i) if *i >= depth))
}

/// Every index free in `t[p]` is also free in `t`.
pub fn locally_closed<T: Syntax>(t: &T, p: &Position) -> Result<bool> {
    let sub = index(t, p)?;
    let outer = p.lam_count();
    Ok(sub.preorder().all(|(u, depth)| match u.node() {
        TermF::Var(i) if !u.is_global() && *i >= depth => *i >= depth + outer,
        _ => true,
    }))
}

/// Rebuilds `t`, replacing each index `i` that is free at binder depth `depth`
/// by `f(i, depth)` when that returns `Some`. Global and known-closed
/// subterms are shared, not traversed.
fn rewrite<T, B, F>(b: &mut B, t: &T, mut f: F) -> Result<T>
where
    T: Syntax,
    B: Build<T>,
    F: FnMut(&mut B, usize, usize) -> Result<Option<T>>,
{
    enum Frame<'a, T> {
        Enter(&'a T, usize),
        Lam,
        App,
    }
    let mut stack = vec![Frame::Enter(t, 0)];
    let mut out: Vec<T> = Vec::new();
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Enter(u, depth) => {
                if u.is_global() || u.known_closed() {
                    out.push(u.clone());
                    continue;
                }
                match u.node() {
                    TermF::Var(i) => {
                        let r = if *i >= depth { f(b, *i, depth)? } else { None };
                        out.push(r.unwrap_or_else(|| u.clone()));
                    }
                    TermF::Lam(body) => {
                        stack.push(Frame::Lam);
                        stack.push(Frame::Enter(body, depth + 1));
                    }
                    TermF::App(g, x) => {
                        stack.push(Frame::App);
                        stack.push(Frame::Enter(x, depth));
                        stack.push(Frame::Enter(g, depth));
                    }
                }
            }
            Frame::Lam => {
                let body = out.pop().expect("body");
                out.push(b.build(TermF::Lam(body)));
            }
            Frame::App => {
                let x = out.pop().expect("argument");
                let g = out.pop().expect("function");
                out.push(b.build(TermF::App(g, x)));
            }
        }
    }
    Ok(out.pop().expect("one result"))
}

/// Adds `by` to every free index of `t`.
pub fn shift<T: Syntax, B: Build<T>>(b: &mut B, t: &T, by: usize) -> T {
    if by == 0 {
        return t.clone();
    }
    rewrite(b, t, |b, i, _| Ok(Some(b.build(TermF::Var(i + by))))).expect("shifting cannot fail")
}

/// The semantic lift `⟨t⟩⟨p⟩`: `t[p]` with its free indices lowered by `‖p‖`.
pub fn lift_out<T: Syntax, B: Build<T>>(b: &mut B, t: &T, p: &Position) -> Result<T> {
    let sub = index(t, p)?;
    let by = p.lam_count();
    if by == 0 {
        return Ok(sub.clone());
    }
    rewrite(b, sub, |b, i, depth| {
        if i < depth + by {
            Err(Error::NotLocallyClosed(p.clone()))
        } else {
            Ok(Some(b.build(TermF::Var(i - by))))
        }
    })
}

/// Capture-avoiding `t[i := u]`. Other free indices are left unchanged, so
/// substituting `0, 1, …` one at a time with closed terms agrees with
/// [`subst_list`].
pub fn subst<T: Syntax, B: Build<T>>(b: &mut B, t: &T, i: usize, u: &T) -> T {
    rewrite(b, t, |b, j, depth| {
        Ok((j == i + depth).then(|| shift(b, u, depth)))
    })
    .expect("single substitution cannot fail")
}

/// Simultaneous substitution `t σ`: each free index `i` becomes `σ[i]`.
pub fn subst_list<T: Syntax, B: Build<T>>(b: &mut B, t: &T, sigma: &[T]) -> Result<T> {
    rewrite(b, t, |b, j, depth| {
        let k = j - depth;
        match sigma.get(k) {
            Some(u) => Ok(Some(shift(b, u, depth))),
            None => Err(Error::IndexOutOfRange {
                index: k,
                len: sigma.len(),
            }),
        }
    })
}

/// Positions of the strongly connected component rooted at `t`: the root plus
/// every position whose nonempty prefixes all point at non-closed subterms.
pub fn scc_positions(t: &Term) -> Result<Vec<Position>> {
    if !t.gclosed() {
        return Err(Error::NotClosed);
    }
    let mut out = vec![Position::root()];
    let mut stack: Vec<(&Term, Position)> = vec![(t, Position::root())];
    while let Some((u, p)) = stack.pop() {
        let children: Vec<(&Term, Step)> = match u.node() {
            TermF::Lam(b) => vec![(b, Step::Down)],
            TermF::App(f, x) => vec![(x, Step::Right), (f, Step::Left)],
            TermF::Var(_) => vec![],
        };
        for (c, s) in children {
            if !c.gclosed() {
                let q = p.child(s);
                out.push(q.clone());
                stack.push((c, q));
            }
        }
    }
    Ok(out)
}
