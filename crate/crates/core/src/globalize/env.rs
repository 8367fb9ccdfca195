use std::sync::Arc;

use crate::hash::Hash;

enum Tree {
    Leaf(Hash),
    Node(Hash, Arc<Tree>, Arc<Tree>),
}

struct Spine {
    weight: usize,
    tree: Arc<Tree>,
    next: Option<Arc<Spine>>,
}

/// Persistent list of hashes indexed like de Bruijn indices: `push` puts a new
/// entry at index 0.
///
/// A skew-binary random-access list: `push` is `O(1)`, `get` is `O(log n)`,
/// and pushing never changes environments handed out earlier.
#[derive(Clone, Default)]
pub struct HashEnv {
    len: usize,
    spine: Option<Arc<Spine>>,
}

impl HashEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn push(&self, h: Hash) -> HashEnv {
        let spine = match &self.spine {
            Some(a) => match &a.next {
                Some(b) if a.weight == b.weight => Spine {
                    weight: 1 + a.weight + b.weight,
                    tree: Arc::new(Tree::Node(h, a.tree.clone(), b.tree.clone())),
                    next: b.next.clone(),
                },
                _ => Spine {
                    weight: 1,
                    tree: Arc::new(Tree::Leaf(h)),
                    next: self.spine.clone(),
                },
            },
            None => Spine {
                weight: 1,
                tree: Arc::new(Tree::Leaf(h)),
                next: None,
            },
        };
        HashEnv {
            len: self.len + 1,
            spine: Some(Arc::new(spine)),
        }
    }

    pub fn get(&self, mut i: usize) -> Option<Hash> {
        let mut spine = self.spine.as_deref();
        while let Some(s) = spine {
            if i < s.weight {
                let (mut tree, mut weight) = (&*s.tree, s.weight);
                loop {
                    match tree {
                        Tree::Leaf(h) => return Some(*h),
                        Tree::Node(h, l, r) => {
                            if i == 0 {
                                return Some(*h);
                            }
                            weight /= 2;
                            if i <= weight {
                                tree = l;
                                i -= 1;
                            } else {
                                tree = r;
                                i -= 1 + weight;
                            }
                        }
                    }
                }
            }
            i -= s.weight;
            spine = s.next.as_deref();
        }
        None
    }
}

impl std::fmt::Debug for HashEnv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list()
            .entries((0..self.len).map(|i| self.get(i).expect("in range")))
            .finish()
    }
}
