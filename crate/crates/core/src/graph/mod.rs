//! Infinite multigraphs given by neighbor rules.
//!
//! A [`GraphRule`] maps a canonical [`VertexId`] to its incident edges. Parallel
//! edges are first class: every [`EdgeRef`] carries a `parallel_index` that
//! distinguishes it from the other edges joining the same pair of endpoints.

mod ball;
mod families;
mod symmetry;
mod types;

pub use ball::{ball, BallEdge, BallGraph, BallNode};
pub use families::Family;
pub use symmetry::{verify_symmetry, SymmetryReport, SymmetryViolation};
pub use types::{DirectedEdge, EdgeRef, FamilyTag, Neighbor, VertexId};

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transitivity {
    VertexTransitive,
    QuasiTransitive,
}

/// A locally finite, connected, loopless multigraph defined by a pure
/// neighbor generator plus symmetry metadata.
///
/// Implementations must be deterministic: repeated calls to [`neighbors`]
/// for the same vertex return identical lists in identical order, and every
/// edge reported at `v` towards `u` is also reported at `u` towards `v`.
///
/// [`neighbors`]: GraphRule::neighbors
pub trait GraphRule: Send + Sync {
    /// Short spec string, e.g. `loop:4`.
    fn name(&self) -> String;

    fn tag(&self) -> FamilyTag;

    /// Supremum of the vertex degrees.
    fn max_degree(&self) -> usize;

    /// Declared degree of the orbit containing `v`.
    fn degree(&self, v: &VertexId) -> Result<usize>;

    /// All edges incident to `v`, with multiplicity, in a fixed order.
    fn neighbors(&self, v: &VertexId) -> Result<Vec<Neighbor>>;

    /// One vertex per orbit of the automorphism group.
    fn orbit_reps(&self) -> Vec<VertexId>;

    fn transitivity(&self) -> Transitivity;

    fn is_simple(&self) -> bool;

    /// Whether the graph contains a cycle (two parallel edges count as one).
    fn has_cycle(&self) -> bool;

    /// Whether every vertex has degree [`max_degree`](GraphRule::max_degree).
    fn is_regular(&self) -> bool {
        true
    }
}

impl<R: GraphRule + ?Sized> GraphRule for &R {
    fn name(&self) -> String {
        (**self).name()
    }
    fn tag(&self) -> FamilyTag {
        (**self).tag()
    }
    fn max_degree(&self) -> usize {
        (**self).max_degree()
    }
    fn degree(&self, v: &VertexId) -> Result<usize> {
        (**self).degree(v)
    }
    fn neighbors(&self, v: &VertexId) -> Result<Vec<Neighbor>> {
        (**self).neighbors(v)
    }
    fn orbit_reps(&self) -> Vec<VertexId> {
        (**self).orbit_reps()
    }
    fn transitivity(&self) -> Transitivity {
        (**self).transitivity()
    }
    fn is_simple(&self) -> bool {
        (**self).is_simple()
    }
    fn has_cycle(&self) -> bool {
        (**self).has_cycle()
    }
    fn is_regular(&self) -> bool {
        (**self).is_regular()
    }
}

/// Checks that `e` is incident to `v` and returns the opposite endpoint.
pub fn other_endpoint<'a>(e: &'a EdgeRef, v: &VertexId) -> Result<&'a VertexId> {
    e.other(v).ok_or_else(|| crate::Error::NotIncident {
        edge: e.to_string(),
        vertex: v.to_string(),
    })
}

/// Confirms that `e` is an edge of the graph incident to `v`.
pub fn require_incident(rule: &dyn GraphRule, v: &VertexId, e: &EdgeRef) -> Result<()> {
    if !rule.neighbors(v)?.iter().any(|n| &n.edge == e) {
        return Err(crate::Error::NotIncident {
            edge: e.to_string(),
            vertex: v.to_string(),
        });
    }
    Ok(())
}
