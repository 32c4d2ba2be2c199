use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::{EdgeRef, GraphRule, VertexId};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BallNode {
    Interior(usize),
    /// The super-vertex that absorbs every vertex at distance `> radius`.
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallEdge {
    pub edge: EdgeRef,
    pub to: BallNode,
}

/// The radius-`n` ball around a vertex, with every vertex at distance
/// `n + 1` or more identified into a single boundary vertex. Edge
/// multiplicities are preserved, including edges into the boundary.
#[derive(Debug, Clone)]
pub struct BallGraph {
    radius: usize,
    vertices: Vec<VertexId>,
    distances: Vec<usize>,
    index: FxHashMap<VertexId, usize>,
    adjacency: Vec<Vec<BallEdge>>,
}

/// Builds the ball `B_n(v)`; `n` must be at least 1.
pub fn ball(rule: &dyn GraphRule, v: &VertexId, n: usize) -> Result<BallGraph> {
    if n == 0 {
        return Err(Error::InvalidArgument("ball radius must be at least 1".into()));
    }
    BallGraph::build(rule, v, n, usize::MAX)
}

impl BallGraph {
    /// Breadth-first construction, failing with `BudgetExceeded` once more
    /// than `max_vertices` interior vertices are discovered.
    pub fn build(rule: &dyn GraphRule, v: &VertexId, radius: usize, max_vertices: usize) -> Result<Self> {
        let mut ball = BallGraph {
            radius,
            vertices: vec![v.clone()],
            distances: vec![0],
            index: FxHashMap::from_iter([(v.clone(), 0)]),
            adjacency: Vec::new(),
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let d = ball.distances[i];
            let mut adj = Vec::new();
            for nb in rule.neighbors(&ball.vertices[i])? {
                let to = match ball.index.get(&nb.vertex) {
                    Some(&j) => BallNode::Interior(j),
                    None if d < radius => {
                        let j = ball.vertices.len();
                        if j >= max_vertices {
                            return Err(Error::BudgetExceeded {
                                budget: max_vertices as u64,
                            });
                        }
                        ball.vertices.push(nb.vertex.clone());
                        ball.distances.push(d + 1);
                        ball.index.insert(nb.vertex, j);
                        queue.push_back(j);
                        BallNode::Interior(j)
                    }
                    None => BallNode::Boundary,
                };
                adj.push(BallEdge { edge: nb.edge, to });
            }
            debug_assert_eq!(ball.adjacency.len(), i);
            ball.adjacency.push(adj);
        }
        Ok(ball)
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn center(&self) -> &VertexId {
        &self.vertices[0]
    }

    /// Number of interior vertices (the boundary vertex excluded).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &VertexId {
        &self.vertices[i]
    }

    pub fn distance(&self, i: usize) -> usize {
        self.distances[i]
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn adjacency(&self, i: usize) -> &[BallEdge] {
        &self.adjacency[i]
    }

    /// Edges joining an interior vertex to the boundary vertex.
    pub fn boundary_edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .flatten()
            .filter(|e| e.to == BallNode::Boundary)
            .count()
    }

    /// Every edge of the ball exactly once, as `(interior endpoint, edge, other end)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, &BallEdge)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, adj)| {
            adj.iter().filter(move |e| match e.to {
                BallNode::Interior(j) => i < j,
                BallNode::Boundary => true,
            })
            .map(move |e| (i, e))
        })
    }
}
