use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::search::Meter;
use super::{TraversedTriple, DEFAULT_SEARCH_BUDGET};
use crate::enumerate::SawPrefix;
use crate::graph::{EdgeRef, GraphRule, Neighbor, VertexId};
use crate::{Error, Result};

/// A red edge `e_j` at `w` matched to `f_j = <x_j, y_j>`.
///
/// `path` runs from `w` to `x_j` and starts with `e_j`. When `e_j` itself
/// lands on the prefix, `f_j = e_j`, `x_j = w` and `path` is the single
/// vertex `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub red_edge: EdgeRef,
    pub f: EdgeRef,
    pub x: VertexId,
    pub y: VertexId,
    pub path: SawPrefix,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FWitness {
    pub pairs: Vec<WitnessPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessSearch {
    Found { witness: FWitness },
    /// Exhaustive within the path bound; these red edges stay unmatched in a
    /// maximum matching.
    NotFound { unmatched: Vec<EdgeRef> },
    Indeterminate { reason: String },
}

/// Matches the red edges at the triple's `w` to distinct witness edges
/// through connecting walks of at most `path_bound` steps.
pub fn find_f_witness(
    rule: &dyn GraphRule,
    triple: &TraversedTriple,
    red_edges: &[EdgeRef],
    path_bound: usize,
) -> Result<WitnessSearch> {
    let w = triple.w();
    let mut reds = Vec::with_capacity(red_edges.len());
    for e in red_edges {
        crate::graph::require_incident(rule, w, e)?;
        if e == &triple.e || e == &triple.e_prime {
            return Err(Error::InvalidEdge {
                edge: e.to_string(),
                reason: "red edges exclude e and e'".into(),
            });
        }
        reds.push(Neighbor {
            edge: e.clone(),
            vertex: e.other(w).expect("incident").clone(),
        });
    }
    search(rule, &triple.prefix, &reds, path_bound, &mut Meter::new(DEFAULT_SEARCH_BUDGET))
}

struct Candidate {
    f: EdgeRef,
    x: VertexId,
    y: VertexId,
    path: SawPrefix,
}

pub(crate) fn search(
    rule: &dyn GraphRule,
    prefix: &SawPrefix,
    reds: &[Neighbor],
    path_bound: usize,
    meter: &mut Meter,
) -> Result<WitnessSearch> {
    let mut candidates = Vec::with_capacity(reds.len());
    for red in reds {
        match candidates_for(rule, prefix, red, path_bound, meter)? {
            Some(c) => candidates.push(c),
            None => {
                return Ok(WitnessSearch::Indeterminate {
                    reason: "search budget exhausted".into(),
                })
            }
        }
    }
    let assignment = if candidates.len() == 1 {
        // Cubic case: a single red edge needs any one candidate.
        vec![if candidates[0].is_empty() { None } else { Some(0) }]
    } else {
        max_matching(&candidates)
    };
    let unmatched: Vec<EdgeRef> = reds
        .iter()
        .zip(&assignment)
        .filter(|(_, a)| a.is_none())
        .map(|(r, _)| r.edge.clone())
        .collect();
    if !unmatched.is_empty() {
        return Ok(WitnessSearch::NotFound { unmatched });
    }
    let mut pool: Vec<std::vec::IntoIter<Candidate>> = candidates.into_iter().map(Vec::into_iter).collect();
    let pairs = reds
        .iter()
        .zip(assignment)
        .enumerate()
        .map(|(i, (red, a))| {
            let c = pool[i].nth(a.expect("all matched")).expect("candidate index in range");
            WitnessPair {
                red_edge: red.edge.clone(),
                f: c.f,
                x: c.x,
                y: c.y,
                path: c.path,
            }
        })
        .collect();
    Ok(WitnessSearch::Found {
        witness: FWitness { pairs },
    })
}

/// Candidate witness edges for one red edge, in discovery order, each with
/// the first connecting walk found. `None` when out of budget.
fn candidates_for(
    rule: &dyn GraphRule,
    prefix: &SawPrefix,
    red: &Neighbor,
    path_bound: usize,
    meter: &mut Meter,
) -> Result<Option<Vec<Candidate>>> {
    let w = prefix.last();
    if prefix.contains(&red.vertex) {
        return Ok(Some(vec![Candidate {
            f: red.edge.clone(),
            x: w.clone(),
            y: red.vertex.clone(),
            path: SawPrefix::start(w.clone()),
        }]));
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut walk = SawPrefix::start(w.clone());
    walk.vertices.push(red.vertex.clone());
    walk.edges.push(red.edge.clone());
    if path_bound == 0 {
        return Ok(Some(out));
    }
    let complete = explore(rule, prefix, &mut walk, path_bound, &mut seen, &mut out, meter)?;
    Ok(complete.then_some(out))
}

fn explore(
    rule: &dyn GraphRule,
    prefix: &SawPrefix,
    walk: &mut SawPrefix,
    path_bound: usize,
    seen: &mut HashSet<EdgeRef>,
    out: &mut Vec<Candidate>,
    meter: &mut Meter,
) -> Result<bool> {
    if !meter.tick() {
        return Ok(false);
    }
    let w = prefix.last();
    let x = walk.last().clone();
    let neighbors = rule.neighbors(&x)?;
    for nb in &neighbors {
        if prefix.contains(&nb.vertex) && &nb.vertex != w && seen.insert(nb.edge.clone()) {
            out.push(Candidate {
                f: nb.edge.clone(),
                x: x.clone(),
                y: nb.vertex.clone(),
                path: walk.clone(),
            });
        }
    }
    if walk.len() == path_bound {
        return Ok(true);
    }
    let mut tried: Vec<&VertexId> = Vec::new();
    for nb in &neighbors {
        if prefix.contains(&nb.vertex) || walk.contains(&nb.vertex) || tried.contains(&&nb.vertex) {
            continue;
        }
        tried.push(&nb.vertex);
        walk.vertices.push(nb.vertex.clone());
        walk.edges.push(nb.edge.clone());
        let ok = explore(rule, prefix, walk, path_bound, seen, out, meter)?;
        walk.vertices.pop();
        walk.edges.pop();
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Augmenting-path bipartite matching from red edges to distinct witness
/// edges; returns each red edge's candidate index.
fn max_matching(candidates: &[Vec<Candidate>]) -> Vec<Option<usize>> {
    let mut owner: std::collections::HashMap<EdgeRef, usize> = std::collections::HashMap::new();
    let mut assignment: Vec<Option<usize>> = vec![None; candidates.len()];

    fn augment(
        i: usize,
        candidates: &[Vec<Candidate>],
        owner: &mut std::collections::HashMap<EdgeRef, usize>,
        assignment: &mut [Option<usize>],
        visited: &mut HashSet<EdgeRef>,
    ) -> bool {
        for (k, c) in candidates[i].iter().enumerate() {
            if !visited.insert(c.f.clone()) {
                continue;
            }
            let free = match owner.get(&c.f).copied() {
                None => true,
                Some(j) => augment(j, candidates, owner, assignment, visited),
            };
            if free {
                owner.insert(c.f.clone(), i);
                assignment[i] = Some(k);
                return true;
            }
        }
        false
    }

    for i in 0..candidates.len() {
        let mut visited = HashSet::new();
        augment(i, candidates, &mut owner, &mut assignment, &mut visited);
    }
    assignment
}

/// Re-checks a witness from scratch against the graph: one pair per red
/// edge, distinct `f`s, condition (a) on `y`, and condition (b) on the
/// connecting walk.
pub fn validate_f_witness(
    rule: &dyn GraphRule,
    prefix: &SawPrefix,
    red_edges: &[EdgeRef],
    witness: &FWitness,
) -> std::result::Result<(), String> {
    prefix.validate(rule).map_err(|e| e.to_string())?;
    let w = prefix.last();
    if witness.pairs.len() != red_edges.len() {
        return Err(format!("{} pairs for {} red edges", witness.pairs.len(), red_edges.len()));
    }
    let mut fs = Vec::new();
    for (pair, red) in witness.pairs.iter().zip(red_edges) {
        if &pair.red_edge != red {
            return Err(format!("pair for {} listed where {} expected", pair.red_edge, red));
        }
        if fs.contains(&&pair.f) {
            return Err(format!("witness edge {} used twice", pair.f));
        }
        fs.push(&pair.f);
        let at_x = rule.neighbors(&pair.x).map_err(|e| e.to_string())?;
        if !at_x.iter().any(|n| n.edge == pair.f && n.vertex == pair.y) {
            return Err(format!("{} does not join {} and {}", pair.f, pair.x, pair.y));
        }
        if &pair.y == w || !prefix.vertices.contains(&pair.y) {
            return Err(format!("y = {} must lie on the prefix and differ from w", pair.y));
        }
        let path = &pair.path;
        if path.first() != w || path.last() != &pair.x {
            return Err(format!("connecting walk must run from {w} to {}", pair.x));
        }
        path.validate(rule).map_err(|e| e.to_string())?;
        match path.edges.first() {
            None => {
                if pair.f != *red {
                    return Err(format!("empty connecting walk requires f = {red}"));
                }
            }
            Some(first) => {
                if first != red {
                    return Err(format!("connecting walk starts with {first}, not {red}"));
                }
                if let Some(v) = path.vertices[1..].iter().find(|v| prefix.vertices.contains(v)) {
                    return Err(format!("connecting walk meets the prefix at {v}"));
                }
            }
        }
    }
    Ok(())
}
