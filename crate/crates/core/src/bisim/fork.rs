use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::term::{index, is_closed, lift_out, locally_closed, Position, Pure, PureTerm};

/// Default size limit for the fork enumeration.
pub const FORK_BOUND: usize = 16;

struct Positions {
    list: Vec<Position>,
    ids: HashMap<Position, usize>,
}

impl Positions {
    fn of(t: &PureTerm) -> Self {
        let list: Vec<Position> = crate::term::valid_positions(t).collect();
        let ids = list
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Positions { list, ids }
    }
}

/// Calls `f` with every pair `(p₁ r, p₂ r)` justified by one rule instance,
/// given as preorder indices of positions in `t`.
fn each_fork(t: &PureTerm, bound: usize, mut f: impl FnMut(usize, usize)) -> Result<Positions> {
    if !is_closed(t) {
        return Err(Error::NotClosed);
    }
    let size = t.size();
    if size > bound {
        return Err(Error::TermTooLarge { size, limit: bound });
    }
    let pos = Positions::of(t);
    let mut prongs = |a: &Position, b: &Position, sub: &PureTerm| {
        for r in crate::term::valid_positions(sub) {
            f(pos.ids[&a.concat(&r)], pos.ids[&b.concat(&r)]);
        }
    };

    // let-abs: inside t[p], positions q₁, q₂ with equal lifts.
    for p in &pos.list {
        let s = index(t, p)?;
        let mut groups: HashMap<PureTerm, Vec<Position>> = HashMap::new();
        for q in crate::term::valid_positions(s) {
            if locally_closed(s, &q)? {
                groups
                    .entry(lift_out(&mut Pure, s, &q)?)
                    .or_default()
                    .push(q);
            }
        }
        for qs in groups.values() {
            let body = index(s, &qs[0])?;
            for q1 in qs {
                for q2 in qs {
                    prongs(&p.concat(q1), &p.concat(q2), body);
                }
            }
        }
    }

    // closed: equal closed subterms.
    let mut closed: HashMap<&PureTerm, Vec<&Position>> = HashMap::new();
    for p in &pos.list {
        let s = index(t, p)?;
        if is_closed(s) {
            closed.entry(s).or_default().push(p);
        }
    }
    for (s, ps) in &closed {
        for p1 in ps {
            for p2 in ps {
                prongs(p1, p2, s);
            }
        }
    }
    Ok(pos)
}

/// All single forks between positions of `t`, as pairs of preorder indices.
/// Symmetric and reflexive. Exponential-ish; `t` must have at most `bound`
/// nodes.
pub fn enumerate_single_forks(t: &PureTerm, bound: usize) -> Result<BTreeSet<(usize, usize)>> {
    let mut out = BTreeSet::new();
    each_fork(t, bound, |a, b| {
        out.insert((a, b));
        out.insert((b, a));
    })?;
    Ok(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Fork equivalence on the positions of `t` (preorder): the transitive
/// closure of single forks.
pub fn fork_closure(t: &PureTerm, bound: usize) -> Result<Partition> {
    let mut parent: Vec<usize> = (0..t.size()).collect();
    each_fork(t, bound, |a, b| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    })?;
    Ok(Partition::from_labels(
        (0..parent.len()).map(|i| find(&mut parent, i)),
    ))
}
