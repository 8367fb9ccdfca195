use crate::error::{Error, Result};
use crate::term::{NodeKind, Position, PureTerm, Step, Syntax, TermF};

/// Edge labels of the term-node graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Down,
    Left,
    Right,
    /// From a variable to its binder.
    Up,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::Down, Label::Left, Label::Right, Label::Up];

    fn slot(self) -> usize {
        self as usize
    }
}

impl From<Step> for Label {
    fn from(s: Step) -> Self {
        match s {
            Step::Down => Label::Down,
            Step::Left => Label::Left,
            Step::Right => Label::Right,
        }
    }
}

/// The deterministic transition graph of a closed term: one node per position,
/// numbered in preorder, with structural edges plus an `Up` edge from each
/// variable to its binder.
#[derive(Debug, Clone)]
pub struct TermGraph {
    kinds: Vec<NodeKind>,
    edges: Vec<[Option<u32>; 4]>,
    parent: Vec<Option<(u32, Step)>>,
}

impl TermGraph {
    pub fn build(t: &PureTerm) -> Result<TermGraph> {
        let n = t.size();
        let mut g = TermGraph {
            kinds: Vec::with_capacity(n),
            edges: Vec::with_capacity(n),
            parent: Vec::with_capacity(n),
        };
        let mut binders: Vec<u32> = Vec::new();
        let mut stack: Vec<(&PureTerm, Option<(u32, Step)>, usize)> = vec![(t, None, 0)];
        while let Some((u, parent, scope)) = stack.pop() {
            binders.truncate(scope);
            let id = g.kinds.len() as u32;
            g.kinds.push(u.node().kind());
            g.edges.push([None; 4]);
            g.parent.push(parent);
            if let Some((p, step)) = parent {
                g.edges[p as usize][Label::from(step).slot()] = Some(id);
            }
            match u.node() {
                TermF::Var(i) => {
                    let k = binders.len().checked_sub(i + 1).ok_or(Error::NotClosed)?;
                    g.edges[id as usize][Label::Up.slot()] = Some(binders[k]);
                }
                TermF::Lam(b) => {
                    binders.push(id);
                    stack.push((b, Some((id, Step::Down)), binders.len()));
                }
                TermF::App(f, x) => {
                    stack.push((x, Some((id, Step::Right)), binders.len()));
                    stack.push((f, Some((id, Step::Left)), binders.len()));
                }
            }
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn kind(&self, v: usize) -> NodeKind {
        self.kinds[v]
    }

    pub fn succ(&self, v: usize, label: Label) -> Option<usize> {
        self.edges[v][label.slot()].map(|w| w as usize)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().flatten().filter(|e| e.is_some()).count()
    }

    /// The position a node stands for.
    pub fn position(&self, v: usize) -> Position {
        let mut steps = Vec::new();
        let mut cur = v;
        while let Some((p, s)) = self.parent[cur] {
            steps.push(s);
            cur = p as usize;
        }
        steps.reverse();
        Position::from(steps)
    }

    /// The node at a position.
    pub fn node_at(&self, p: &Position) -> Result<usize> {
        let mut v = 0;
        for (at, s) in p.steps().iter().enumerate() {
            v = self
                .succ(v, Label::from(*s))
                .ok_or_else(|| Error::PositionInvalid {
                    position: p.clone(),
                    at,
                })?;
        }
        Ok(v)
    }
}

pub fn build_graph(t: &PureTerm) -> Result<TermGraph> {
    TermGraph::build(t)
}
