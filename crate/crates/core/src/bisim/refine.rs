use super::graph::{Label, TermGraph};
use crate::partition::Partition;

/// Blocks kept as contiguous ranges of a permutation of the nodes; marked
/// members of a block sit at the front of its range.
struct Refinable {
    elems: Vec<u32>,
    loc: Vec<u32>,
    block: Vec<u32>,
    first: Vec<u32>,
    end: Vec<u32>,
    mid: Vec<u32>,
    touched: Vec<u32>,
}

impl Refinable {
    fn new(keys: &[u8]) -> Self {
        let n = keys.len();
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|v| keys[*v as usize]);
        let mut loc = vec![0; n];
        let mut block = vec![0; n];
        let (mut first, mut end) = (Vec::new(), Vec::new());
        for (i, v) in elems.iter().enumerate() {
            if i == 0 || keys[*v as usize] != keys[elems[i - 1] as usize] {
                if i > 0 {
                    end.push(i as u32);
                }
                first.push(i as u32);
            }
            loc[*v as usize] = i as u32;
            block[*v as usize] = first.len() as u32 - 1;
        }
        if n > 0 {
            end.push(n as u32);
        }
        let mid = first.clone();
        Refinable {
            elems,
            loc,
            block,
            first,
            end,
            mid,
            touched: Vec::new(),
        }
    }

    fn count(&self) -> usize {
        self.first.len()
    }

    fn members(&self, b: u32) -> &[u32] {
        &self.elems[self.first[b as usize] as usize..self.end[b as usize] as usize]
    }

    fn mark(&mut self, v: u32) {
        let b = self.block[v as usize] as usize;
        let i = self.loc[v as usize];
        let m = self.mid[b];
        if i < m {
            return;
        }
        if m == self.first[b] {
            self.touched.push(b as u32);
        }
        let w = self.elems[m as usize];
        self.elems.swap(i as usize, m as usize);
        self.loc[v as usize] = m;
        self.loc[w as usize] = i;
        self.mid[b] = m + 1;
    }

    /// Splits every touched block into its marked and unmarked parts. The
    /// smaller part becomes the new block; returns the new block ids.
    fn split(&mut self) -> Vec<u32> {
        let mut fresh = Vec::new();
        for b in std::mem::take(&mut self.touched) {
            let b = b as usize;
            let (f, m, e) = (self.first[b], self.mid[b], self.end[b]);
            self.mid[b] = f;
            if m == e {
                continue;
            }
            let c = self.first.len() as u32;
            let (cf, ce) = if m - f <= e - m {
                self.first[b] = m;
                (f, m)
            } else {
                self.end[b] = m;
                (m, e)
            };
            self.mid[b] = self.first[b];
            self.first.push(cf);
            self.end.push(ce);
            self.mid.push(cf);
            for i in cf..ce {
                self.block[self.elems[i as usize] as usize] = c;
            }
            fresh.push(c);
        }
        fresh
    }
}

/// Coarsest bisimulation by Hopcroft-style partition refinement, in
/// `O(|E| log |V|)`.
///
/// The initial partition is by node kind. Since the kind fixes which labels
/// are enabled, a missing transition never needs a sink state. Each split
/// keeps the larger half under the old id and queues the smaller half as a
/// splitter for every label.
pub fn bisim_partition_refine(g: &TermGraph) -> Partition {
    let n = g.len();
    let mut pred: Vec<Vec<u32>> = Vec::with_capacity(4);
    let mut pred_start: Vec<Vec<u32>> = Vec::with_capacity(4);
    for label in Label::ALL {
        let mut start = vec![0u32; n + 1];
        for v in 0..n {
            if let Some(w) = g.succ(v, label) {
                start[w + 1] += 1;
            }
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut list = vec![0u32; start[n] as usize];
        for v in 0..n {
            if let Some(w) = g.succ(v, label) {
                list[fill[w] as usize] = v as u32;
                fill[w] += 1;
            }
        }
        pred.push(list);
        pred_start.push(start);
    }

    let keys: Vec<u8> = (0..n).map(|v| g.kind(v) as u8).collect();
    let mut part = Refinable::new(&keys);
    let mut work: Vec<(u32, usize)> = (0..part.count() as u32)
        .flat_map(|b| (0..4).map(move |l| (b, l)))
        .collect();
    let mut splitter: Vec<u32> = Vec::new();
    while let Some((b, l)) = work.pop() {
        splitter.clear();
        splitter.extend_from_slice(part.members(b));
        for &w in &splitter {
            let (s, e) = (pred_start[l][w as usize], pred_start[l][w as usize + 1]);
            for &v in &pred[l][s as usize..e as usize] {
                part.mark(v);
            }
        }
        for c in part.split() {
            work.extend((0..4).map(|l| (c, l)));
        }
    }
    Partition::from_labels(part.block)
}
