//! Exact self-avoiding walk counts.
//!
//! All counters run a depth-first search over an integer-indexed copy of the
//! relevant ball around the root. Parallel edges to the same neighbor are
//! walked once and weighted by their multiplicity, which leaves the counts
//! unchanged (parallel edges yield the same vertex sequence) while keeping
//! multigraphs such as `loop:6` cheap. The search tree is cut at a fixed
//! depth into independent tasks; results are reduced in task order, so the
//! output does not depend on the number of worker threads.

mod csr;
mod engine;
mod prefix;
mod weight;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::graph::{other_endpoint, require_incident, EdgeRef, GraphRule, VertexId};
use crate::{Error, Result};
use csr::LocalGraph;
use engine::{Mode, Stop, Walker};
use weight::Weight;

pub use prefix::SawPrefix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Root {
    Vertex(VertexId),
    MidEdge(EdgeRef),
}

/// Exact counts `sigma_0 ..= sigma_k` from a root.
///
/// When the node budget ran out, `truncated` is set and `counts` holds the
/// longest prefix that could be computed completely (possibly shorter than
/// `n_max + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SawCountSeries {
    pub family: String,
    pub root: Root,
    pub n_max: usize,
    #[serde(with = "decimal_strings")]
    pub counts: Vec<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub avoided_edge: Option<EdgeRef>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extendable_lookahead: Option<usize>,
    pub truncated: bool,
}

impl SawCountSeries {
    /// Largest `n` with a known count.
    pub fn computed_n(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    pub fn sigma(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }

    pub fn root_vertex(&self) -> Option<&VertexId> {
        match &self.root {
            Root::Vertex(v) => Some(v),
            Root::MidEdge(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
    /// Cap on search-tree nodes per run.
    pub budget: u64,
    /// Cap on vertices of the finite neighbourhood built before a run; it
    /// bounds memory (roughly 250 bytes per vertex).
    pub max_ball_vertices: u64,
    /// Depth at which the search tree is cut into parallel tasks.
    pub split_depth: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            threads: None,
            budget: 1_000_000_000,
            max_ball_vertices: 1 << 23,
            split_depth: 5,
        }
    }
}

impl EnumConfig {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the ambient pool.
pub fn install<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// `sigma_k(v)` for `0 <= k <= n_max`.
pub fn count_saws(rule: &dyn GraphRule, v: &VertexId, n_max: usize, cfg: &EnumConfig) -> Result<SawCountSeries> {
    rule.degree(v)?;
    let (counts, truncated) = with_fallback(n_max, |n| {
        run_counts(rule, v, None, n, n, Mode::Count, cfg)
    })?;
    Ok(SawCountSeries {
        family: rule.name(),
        root: Root::Vertex(v.clone()),
        n_max,
        counts,
        avoided_edge: None,
        extendable_lookahead: None,
        truncated,
    })
}

/// `sigma_k(u, e)`: walks from `u` that never traverse `e` (the far endpoint
/// of `e` may still be reached by other routes).
pub fn count_saws_avoiding(
    rule: &dyn GraphRule,
    u: &VertexId,
    e: &EdgeRef,
    n_max: usize,
    cfg: &EnumConfig,
) -> Result<SawCountSeries> {
    require_incident(rule, u, e)?;
    let (counts, truncated) = with_fallback(n_max, |n| {
        run_counts(rule, u, Some(e), n, n, Mode::Count, cfg)
    })?;
    Ok(SawCountSeries {
        family: rule.name(),
        root: Root::Vertex(u.clone()),
        n_max,
        counts,
        avoided_edge: Some(e.clone()),
        extendable_lookahead: None,
        truncated,
    })
}

/// Walks from the midpoint of `e`: `counts[k]` is the number of
/// self-avoiding walks that start at the mid-edge, step to either endpoint
/// and visit exactly `k` vertices, never revisiting a vertex or a mid-edge.
/// Parallel partners of `e` are distinct mid-edges and may be used.
pub fn count_saws_midedge(rule: &dyn GraphRule, e: &EdgeRef, n_max: usize, cfg: &EnumConfig) -> Result<SawCountSeries> {
    let (a, b) = e.endpoints();
    require_incident(rule, a, e)?;
    let (from_a, trunc_a) = with_fallback(n_max.saturating_sub(1), |n| {
        run_counts(rule, a, Some(e), n, n, Mode::Count, cfg)
    })?;
    let (from_b, trunc_b) = with_fallback(n_max.saturating_sub(1), |n| {
        run_counts(rule, b, Some(e), n, n, Mode::Count, cfg)
    })?;
    let mut counts = vec![<BigUint as One>::one()];
    if n_max > 0 {
        counts.extend(from_a.iter().zip(&from_b).map(|(x, y)| x + y));
    }
    Ok(SawCountSeries {
        family: rule.name(),
        root: Root::MidEdge(e.clone()),
        n_max,
        counts,
        avoided_edge: None,
        extendable_lookahead: None,
        truncated: trunc_a || trunc_b,
    })
}

/// Walks of length `k <= n_max` from `v` that admit a self-avoiding
/// continuation of `lookahead` further steps: a computable stand-in for
/// extendability to an infinite walk, and an upper bound on it.
pub fn count_extendable(
    rule: &dyn GraphRule,
    v: &VertexId,
    n_max: usize,
    lookahead: usize,
    cfg: &EnumConfig,
) -> Result<SawCountSeries> {
    if lookahead == 0 {
        return Err(Error::InvalidArgument("lookahead must be at least 1".into()));
    }
    rule.degree(v)?;
    let (counts, truncated) = with_fallback(n_max, |n| {
        run_counts(rule, v, None, n, n + lookahead, Mode::Extendable { lookahead }, cfg)
    })?;
    Ok(SawCountSeries {
        family: rule.name(),
        root: Root::Vertex(v.clone()),
        n_max,
        counts,
        avoided_edge: None,
        extendable_lookahead: Some(lookahead),
        truncated,
    })
}

/// Runs `attempt(n_max)`; if it exceeds the budget, deepens from 0 and keeps
/// the last length that fit.
fn with_fallback(n_max: usize, attempt: impl Fn(usize) -> Result<Vec<BigUint>>) -> Result<(Vec<BigUint>, bool)> {
    match attempt(n_max) {
        Ok(c) => Ok((c, false)),
        Err(Error::BudgetExceeded { .. }) => {
            let mut best = Vec::new();
            for n in 0..n_max {
                match attempt(n) {
                    Ok(c) => best = c,
                    Err(Error::BudgetExceeded { .. }) => break,
                    Err(e) => return Err(e),
                }
            }
            Ok((best, true))
        }
        Err(e) => Err(e),
    }
}

fn run_counts(
    rule: &dyn GraphRule,
    root: &VertexId,
    avoid: Option<&EdgeRef>,
    n_max: usize,
    radius: usize,
    mode: Mode,
    cfg: &EnumConfig,
) -> Result<Vec<BigUint>> {
    // The avoided edge's far endpoint must be an inner vertex.
    let radius = if avoid.is_some() && radius > 0 { radius.max(2) } else { radius };
    let graph = LocalGraph::build(rule, root, radius, cfg.budget.min(cfg.max_ball_vertices))?;
    let avoid = match avoid {
        Some(e) if radius > 0 => {
            let far = other_endpoint(e, root)?;
            Some((0, graph.id(far).expect("neighbors lie inside a ball of radius >= 1")))
        }
        _ => None,
    };
    let walker = Walker {
        graph: &graph,
        avoid,
        n_max,
        mode,
    };
    let budget_err = Error::BudgetExceeded { budget: cfg.budget };
    install(cfg.threads, || match walker.run::<u128>(0, cfg.split_depth, cfg.budget) {
        Ok(c) => Ok(c.into_iter().map(Weight::into_big).collect()),
        Err(Stop::Budget) => Err(budget_err.clone()),
        Err(Stop::Overflow) => match walker.run::<BigUint>(0, cfg.split_depth, cfg.budget) {
            Ok(c) => Ok(c),
            Err(_) => Err(budget_err.clone()),
        },
    })
}

mod decimal_strings {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_str_radix(10)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| D::Error::custom(format!("bad count `{s}`"))))
            .collect()
    }
}
