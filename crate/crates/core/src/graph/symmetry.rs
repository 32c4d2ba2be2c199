use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{GraphRule, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymmetryViolation {
    /// The rule rejected a vertex it produced itself.
    Rejected { vertex: String, reason: String },
    NonDeterministic { vertex: String },
    DegreeMismatch { vertex: String, declared: usize, found: usize },
    LoopEdge { vertex: String, edge: String },
    /// An edge reported at `vertex` does not join `vertex` to the reported neighbor.
    BadEndpoints { vertex: String, edge: String },
    /// `parallel_index` out of range for the multiplicity of the pair.
    BadParallelIndex { vertex: String, edge: String },
    DuplicateEdge { vertex: String, edge: String },
    /// `edge` is reported at `vertex` but not at its other endpoint.
    MissingReverse { vertex: String, edge: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub family: String,
    pub sample_radius: usize,
    pub vertices_checked: usize,
    pub passed: bool,
    pub violation: Option<SymmetryViolation>,
}

/// Checks symmetry, degree consistency and determinism on every vertex
/// within `sample_radius` of each orbit representative. Stops at the first
/// violation.
pub fn verify_symmetry(rule: &dyn GraphRule, sample_radius: usize) -> SymmetryReport {
    let mut report = SymmetryReport {
        family: rule.name(),
        sample_radius,
        vertices_checked: 0,
        passed: true,
        violation: None,
    };
    if let Err(v) = check(rule, sample_radius, &mut report.vertices_checked) {
        report.passed = false;
        report.violation = Some(v);
    }
    report
}

fn check(rule: &dyn GraphRule, radius: usize, checked: &mut usize) -> std::result::Result<(), SymmetryViolation> {
    let rejected = |v: &VertexId, e: crate::Error| SymmetryViolation::Rejected {
        vertex: v.to_string(),
        reason: e.to_string(),
    };
    let mut seen: HashMap<VertexId, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for rep in rule.orbit_reps() {
        if seen.insert(rep.clone(), 0).is_none() {
            queue.push_back(rep);
        }
    }
    while let Some(v) = queue.pop_front() {
        *checked += 1;
        let first = rule.neighbors(&v).map_err(|e| rejected(&v, e))?;
        let second = rule.neighbors(&v).map_err(|e| rejected(&v, e))?;
        if first != second {
            return Err(SymmetryViolation::NonDeterministic { vertex: v.to_string() });
        }
        let declared = rule.degree(&v).map_err(|e| rejected(&v, e))?;
        if declared != first.len() {
            return Err(SymmetryViolation::DegreeMismatch {
                vertex: v.to_string(),
                declared,
                found: first.len(),
            });
        }
        let mut multiplicity: HashMap<&VertexId, u32> = HashMap::new();
        for nb in &first {
            *multiplicity.entry(&nb.vertex).or_default() += 1;
        }
        let mut edges = BTreeSet::new();
        for nb in &first {
            let edge = nb.edge.to_string();
            if nb.vertex == v {
                return Err(SymmetryViolation::LoopEdge { vertex: v.to_string(), edge });
            }
            if nb.edge.other(&v) != Some(&nb.vertex) {
                return Err(SymmetryViolation::BadEndpoints { vertex: v.to_string(), edge });
            }
            if nb.edge.parallel_index() >= multiplicity[&nb.vertex] {
                return Err(SymmetryViolation::BadParallelIndex { vertex: v.to_string(), edge });
            }
            if !edges.insert(&nb.edge) {
                return Err(SymmetryViolation::DuplicateEdge { vertex: v.to_string(), edge });
            }
            let back = rule.neighbors(&nb.vertex).map_err(|e| rejected(&nb.vertex, e))?;
            if !back.iter().any(|b| b.edge == nb.edge && b.vertex == v) {
                return Err(SymmetryViolation::MissingReverse { vertex: v.to_string(), edge });
            }
        }
        let d = seen[&v];
        if d < radius {
            for nb in first {
                if !seen.contains_key(&nb.vertex) {
                    seen.insert(nb.vertex.clone(), d + 1);
                    queue.push_back(nb.vertex);
                }
            }
        }
    }
    Ok(())
}
