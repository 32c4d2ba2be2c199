use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeRef, GraphRule, VertexId};
use crate::{Error, Result};

/// A finite self-avoiding walk `v_0 e_0 v_1 ... e_{k-1} v_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SawPrefix {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeRef>,
}

impl SawPrefix {
    pub fn start(v: VertexId) -> Self {
        SawPrefix {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> &VertexId {
        &self.vertices[0]
    }

    pub fn last(&self) -> &VertexId {
        self.vertices.last().expect("a walk has at least one vertex")
    }

    pub fn last_edge(&self) -> Option<&EdgeRef> {
        self.edges.last()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    /// Checks the walk against the graph: consecutive incidence through
    /// edges the rule actually reports, and no repeated vertex.
    pub fn validate(&self, rule: &dyn GraphRule) -> Result<()> {
        if self.vertices.len() != self.edges.len() + 1 {
            return Err(Error::InvalidWalk(format!(
                "{} vertices but {} edges",
                self.vertices.len(),
                self.edges.len()
            )));
        }
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v) {
                return Err(Error::InvalidWalk(format!("vertex {v} visited twice")));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            let (a, b) = (&self.vertices[i], &self.vertices[i + 1]);
            let ok = rule.neighbors(a)?.iter().any(|n| &n.edge == e && &n.vertex == b);
            if !ok {
                return Err(Error::InvalidWalk(format!("edge {e} does not join {a} and {b}")));
            }
        }
        Ok(())
    }
}
