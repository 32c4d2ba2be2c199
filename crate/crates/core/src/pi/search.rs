use crate::enumerate::SawPrefix;
use crate::graph::{GraphRule, Neighbor, VertexId};
use crate::Result;

/// Node allowance shared by all searches of one check.
#[derive(Debug, Clone)]
pub(crate) struct Meter {
    remaining: u64,
}

impl Meter {
    pub(crate) fn new(budget: u64) -> Self {
        Meter { remaining: budget }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.remaining == 0 {
            return false;
        }
        self.remaining -= 1;
        true
    }
}

pub(crate) enum Outcome<T> {
    Found(T),
    Exhausted,
    OutOfBudget,
}

/// Searches for a self-avoiding continuation of exactly `depth` steps that
/// leaves `w` through `first` and avoids every vertex of `blocked`
/// (the prefix, which contains `w`).
pub(crate) fn continuation(
    rule: &dyn GraphRule,
    blocked: &[VertexId],
    w: &VertexId,
    first: &Neighbor,
    depth: usize,
    meter: &mut Meter,
) -> Result<Outcome<SawPrefix>> {
    if blocked.contains(&first.vertex) {
        return Ok(Outcome::Exhausted);
    }
    let mut walk = SawPrefix::start(w.clone());
    walk.vertices.push(first.vertex.clone());
    walk.edges.push(first.edge.clone());
    if depth <= 1 {
        return Ok(Outcome::Found(walk));
    }
    match extend(rule, blocked, &mut walk, depth, meter)? {
        Some(true) => Ok(Outcome::Found(walk)),
        Some(false) => Ok(Outcome::Exhausted),
        None => Ok(Outcome::OutOfBudget),
    }
}

/// `Some(true)`: `walk` now has `depth` steps. `None`: out of budget.
fn extend(
    rule: &dyn GraphRule,
    blocked: &[VertexId],
    walk: &mut SawPrefix,
    depth: usize,
    meter: &mut Meter,
) -> Result<Option<bool>> {
    if walk.len() == depth {
        return Ok(Some(true));
    }
    if !meter.tick() {
        return Ok(None);
    }
    let mut tried: Vec<VertexId> = Vec::new();
    for nb in rule.neighbors(walk.last())? {
        // Parallel edges reach the same vertex; one try suffices.
        if blocked.contains(&nb.vertex) || walk.contains(&nb.vertex) || tried.contains(&nb.vertex) {
            continue;
        }
        tried.push(nb.vertex.clone());
        walk.vertices.push(nb.vertex);
        walk.edges.push(nb.edge);
        match extend(rule, blocked, walk, depth, meter)? {
            Some(true) => return Ok(Some(true)),
            Some(false) => {}
            None => return Ok(None),
        }
        walk.vertices.pop();
        walk.edges.pop();
    }
    Ok(Some(false))
}
