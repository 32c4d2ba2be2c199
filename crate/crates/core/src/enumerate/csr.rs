use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;

use crate::graph::{GraphRule, VertexId};
use crate::{Error, Result};

/// A finite neighborhood of the root flattened to integer ids, with parallel
/// edges grouped into one arc per target carrying the multiplicity.
///
/// Vertices at the outer radius are never expanded and are merged into one
/// shared node: a walk of at most `radius` steps reaches them only on its
/// last step, so they never need to be told apart.
pub(crate) struct LocalGraph {
    /// Inner vertices in breadth-first order; the position is the id.
    inner: FxIndexSet<VertexId>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    multiplicity: Vec<u32>,
}

type FxIndexSet<T> = IndexSet<T, FxBuildHasher>;

/// Placeholder for the merged outer node until its id is known.
const OUTER: u32 = u32::MAX;

impl LocalGraph {
    pub(crate) fn build(rule: &dyn GraphRule, root: &VertexId, radius: usize, max_vertices: u64) -> Result<Self> {
        let mut inner = FxIndexSet::default();
        inner.insert(root.clone());
        let mut g = LocalGraph {
            inner,
            offsets: vec![0],
            targets: Vec::new(),
            multiplicity: Vec::new(),
        };
        let mut distance = vec![0usize];
        let mut has_outer = false;
        // Ids are handed out in breadth-first order, so expanding them in id
        // order keeps `offsets` aligned.
        let mut i = 0;
        while i < g.inner.len() {
            let d = distance[i];
            if d < radius {
                let start = g.targets.len();
                let v = g.inner.get_index(i).expect("id in range").clone();
                for nb in rule.neighbors(&v)? {
                    let j = match g.inner.get_index_of(&nb.vertex) {
                        Some(j) => j as u32,
                        None if d + 1 == radius => {
                            has_outer = true;
                            OUTER
                        }
                        None => {
                            let j = g.inner.len() as u32;
                            if j as u64 >= max_vertices {
                                return Err(Error::BudgetExceeded { budget: max_vertices });
                            }
                            g.inner.insert(nb.vertex);
                            distance.push(d + 1);
                            j
                        }
                    };
                    match g.targets[start..].iter().position(|&t| t == j) {
                        Some(p) => g.multiplicity[start + p] += 1,
                        None => {
                            g.targets.push(j);
                            g.multiplicity.push(1);
                        }
                    }
                }
            }
            g.offsets.push(g.targets.len() as u32);
            i += 1;
        }
        if has_outer {
            let o = g.inner.len() as u32;
            for t in g.targets.iter_mut().filter(|t| **t == OUTER) {
                *t = o;
            }
            g.offsets.push(g.targets.len() as u32);
        }
        Ok(g)
    }

    /// Number of ids, including the merged outer node.
    pub(crate) fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Id of an inner vertex (distance below the radius).
    pub(crate) fn id(&self, v: &VertexId) -> Option<u32> {
        self.inner.get_index_of(v).map(|i| i as u32)
    }

    #[inline]
    pub(crate) fn arcs(&self, v: u32) -> (&[u32], &[u32]) {
        let lo = self.offsets[v as usize] as usize;
        let hi = self.offsets[v as usize + 1] as usize;
        (&self.targets[lo..hi], &self.multiplicity[lo..hi])
    }
}
