//! Depth-bounded red/blue classification and condition-Pi checks.
//!
//! Let `pi_w` be a self-avoiding walk from `v` ending at `w`. An edge `e''`
//! at `w` off the walk is *blue* when the walk continues through `e''` to an
//! infinite self-avoiding walk, and *red* otherwise. Infinite continuations
//! are replaced here by continuations of `D` steps:
//!
//! * `RedAtDepth(D)` is exact: no continuation of `D` steps exists, so none
//!   of any length `>= D` exists and the edge is red.
//! * `BlueCertified` at depth `D` carries a `D`-step continuation; the edge
//!   may still be red for the infinite walk.
//!
//! Hence red at `D` implies red at every `D' >= D`, and blue at `D` implies
//! blue at every `D' <= D`.

mod check;
mod search;
mod witness;

use serde::{Deserialize, Serialize};

use crate::enumerate::SawPrefix;
use crate::graph::{DirectedEdge, EdgeRef, GraphRule, Neighbor, VertexId};
use crate::{Error, Result};
use search::{continuation, Meter, Outcome};

pub use check::{blue_count_audit, check_pi, BlueCountReport, PiBounds, PiCertificate, PiOutcome, StepCount, AuditedPrefix};
pub use witness::{find_f_witness, validate_f_witness, FWitness, WitnessPair, WitnessSearch};

/// Default node allowance for a single classification or witness search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// A walk prefix ending at `w` with its last edge `e`, and an edge `e'`
/// leaving `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraversedTriple {
    pub prefix: SawPrefix,
    pub e: EdgeRef,
    pub e_prime: EdgeRef,
}

impl TraversedTriple {
    pub fn new(rule: &dyn GraphRule, prefix: SawPrefix, e_prime: EdgeRef) -> Result<Self> {
        prefix.validate(rule)?;
        let e = prefix
            .last_edge()
            .cloned()
            .ok_or_else(|| Error::InvalidWalk("a triple needs a prefix of at least one step".into()))?;
        let w = prefix.last();
        if e_prime == e {
            return Err(Error::InvalidEdge {
                edge: e_prime.to_string(),
                reason: "e' must differ from the entering edge".into(),
            });
        }
        crate::graph::require_incident(rule, w, &e_prime)?;
        Ok(TraversedTriple { prefix, e, e_prime })
    }

    pub fn w(&self) -> &VertexId {
        self.prefix.last()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// A continuation of `depth` steps from `w`, starting with the edge.
    BlueCertified { continuation: SawPrefix },
    RedAtDepth { depth: usize },
    Unknown { reason: String },
}

impl Verdict {
    pub fn is_blue(&self) -> bool {
        matches!(self, Verdict::BlueCertified { .. })
    }

    pub fn is_red(&self) -> bool {
        matches!(self, Verdict::RedAtDepth { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorVerdict {
    pub directed_edge: DirectedEdge,
    pub depth: usize,
    pub verdict: Verdict,
}

/// Classifies `e_dd` at the end of the triple's prefix.
pub fn classify_edge(rule: &dyn GraphRule, triple: &TraversedTriple, e_dd: &EdgeRef, depth: usize) -> Result<ColorVerdict> {
    classify_edge_with_budget(rule, triple, e_dd, depth, DEFAULT_SEARCH_BUDGET)
}

pub fn classify_edge_with_budget(
    rule: &dyn GraphRule,
    triple: &TraversedTriple,
    e_dd: &EdgeRef,
    depth: usize,
    budget: u64,
) -> Result<ColorVerdict> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    if e_dd == &triple.e || e_dd == &triple.e_prime {
        return Err(Error::InvalidEdge {
            edge: e_dd.to_string(),
            reason: "e'' must differ from e and e'".into(),
        });
    }
    let w = triple.w();
    crate::graph::require_incident(rule, w, e_dd)?;
    let nb = Neighbor {
        edge: e_dd.clone(),
        vertex: e_dd.other(w).expect("incident").clone(),
    };
    classify(rule, &triple.prefix, &nb, depth, &mut Meter::new(budget))
}

/// Classifies the edge `nb` leaving the last vertex of `prefix`.
pub(crate) fn classify(
    rule: &dyn GraphRule,
    prefix: &SawPrefix,
    nb: &Neighbor,
    depth: usize,
    meter: &mut Meter,
) -> Result<ColorVerdict> {
    let w = prefix.last();
    let verdict = match continuation(rule, &prefix.vertices, w, nb, depth, meter)? {
        Outcome::Found(continuation) => Verdict::BlueCertified { continuation },
        Outcome::Exhausted => Verdict::RedAtDepth { depth },
        Outcome::OutOfBudget => Verdict::Unknown {
            reason: "search budget exhausted".into(),
        },
    };
    Ok(ColorVerdict {
        directed_edge: DirectedEdge {
            from: w.clone(),
            edge: nb.edge.clone(),
        },
        depth,
        verdict,
    })
}
