use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::enumerate::SawPrefix;
use crate::graph::{ball, BallGraph, BallNode, EdgeRef, GraphRule, VertexId};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MengerResult {
    pub family: String,
    pub source: VertexId,
    pub radius: usize,
    pub degree: usize,
    pub ball_vertices: usize,
    pub boundary_edges: usize,
    pub flow_value: usize,
    /// Edges leaving the source side of a minimum cut.
    pub min_cut: usize,
    /// Edge-disjoint walks from the source, each ending with the edge into
    /// the boundary at the first vertex outside the ball.
    pub paths: Vec<SawPrefix>,
}

impl MengerResult {
    pub fn meets_degree(&self) -> bool {
        self.flow_value == self.degree
    }
}

struct Arc {
    to: usize,
    cap: u8,
    rev: usize,
    /// Index into the ball's edge list; `None` for the reverse of a boundary arc.
    edge: Option<usize>,
}

struct Network {
    arcs: Vec<Vec<Arc>>,
}

impl Network {
    fn add(&mut self, a: usize, b: usize, cap_back: u8, edge: usize) {
        let (ra, rb) = (self.arcs[b].len(), self.arcs[a].len());
        self.arcs[a].push(Arc { to: b, cap: 1, rev: ra, edge: Some(edge) });
        self.arcs[b].push(Arc {
            to: a,
            cap: cap_back,
            rev: rb,
            edge: (cap_back == 1).then_some(edge),
        });
    }

    /// Shortest augmenting path by BFS in arc order; returns `(node, arc)` steps.
    fn augmenting_path(&self, s: usize, t: usize) -> Option<Vec<(usize, usize)>> {
        let mut pred: Vec<Option<(usize, usize)>> = vec![None; self.arcs.len()];
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for (i, arc) in self.arcs[x].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    pred[arc.to] = Some((x, i));
                    if arc.to == t {
                        let mut path = Vec::new();
                        let mut y = t;
                        while let Some((p, i)) = pred[y] {
                            path.push((p, i));
                            y = p;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        None
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.arcs.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for arc in &self.arcs[x] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}

/// Unit-capacity max flow from `v` to the boundary of `B_n(v)`
/// (Edmonds-Karp), decomposed into edge-disjoint walks.
pub fn menger_disjoint_paths(rule: &dyn GraphRule, v: &VertexId, n: usize) -> Result<MengerResult> {
    let ball = ball(rule, v, n)?;
    let sink = ball.len();
    let edges: Vec<(usize, &EdgeRef, BallNode)> = ball.edges().map(|(i, e)| (i, &e.edge, e.to)).collect();
    let mut net = Network {
        arcs: (0..=sink).map(|_| Vec::new()).collect(),
    };
    for (k, &(i, _, to)) in edges.iter().enumerate() {
        match to {
            BallNode::Interior(j) => net.add(i, j, 1, k),
            BallNode::Boundary => net.add(i, sink, 0, k),
        }
    }

    let mut flow_value = 0;
    while let Some(path) = net.augmenting_path(0, sink) {
        for (x, i) in path {
            let (to, rev) = (net.arcs[x][i].to, net.arcs[x][i].rev);
            net.arcs[x][i].cap -= 1;
            net.arcs[to][rev].cap += 1;
        }
        flow_value += 1;
    }

    let side = net.reachable(0);
    let min_cut = edges
        .iter()
        .filter(|&&(i, _, to)| {
            let j = match to {
                BallNode::Interior(j) => j,
                BallNode::Boundary => sink,
            };
            side[i] != side[j]
        })
        .count();

    let paths = decompose(&ball, &net, &edges, sink);
    Ok(MengerResult {
        family: rule.name(),
        source: v.clone(),
        radius: n,
        degree: rule.degree(v)?,
        ball_vertices: ball.len(),
        boundary_edges: ball.boundary_edge_count(),
        flow_value,
        min_cut,
        paths,
    })
}

/// Splits the flow into source-to-sink walks, dropping circulations.
fn decompose(ball: &BallGraph, net: &Network, edges: &[(usize, &EdgeRef, BallNode)], sink: usize) -> Vec<SawPrefix> {
    // An arc with capacity 0 carries one unit of net flow.
    let mut out: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sink + 1];
    for (x, arcs) in net.arcs.iter().enumerate() {
        for arc in arcs {
            if let (Some(k), 0) = (arc.edge, arc.cap) {
                out[x].push((arc.to, k));
            }
        }
    }
    let mut next = vec![0usize; sink + 1];
    let mut paths = Vec::new();
    loop {
        let mut nodes = vec![0usize];
        let mut used: Vec<usize> = Vec::new();
        let mut on_path = vec![usize::MAX; sink + 1];
        on_path[0] = 0;
        let complete = loop {
            let x = *nodes.last().unwrap();
            if x == sink {
                break true;
            }
            let Some(&(y, k)) = out[x].get(next[x]) else { break false };
            next[x] += 1;
            if on_path[y] != usize::MAX {
                let keep = on_path[y];
                for &z in &nodes[keep + 1..] {
                    on_path[z] = usize::MAX;
                }
                nodes.truncate(keep + 1);
                used.truncate(keep);
            } else {
                on_path[y] = nodes.len();
                nodes.push(y);
                used.push(k);
            }
        };
        if !complete {
            break;
        }
        let mut walk = SawPrefix::start(ball.vertex(0).clone());
        for (&z, &k) in nodes[1..].iter().zip(&used) {
            let (i, edge, _) = edges[k];
            let to = if z == sink {
                edge.other(ball.vertex(i)).expect("ball edge at its endpoint").clone()
            } else {
                ball.vertex(z).clone()
            };
            walk.edges.push(edge.clone());
            walk.vertices.push(to);
        }
        paths.push(walk);
    }
    paths
}

/// Re-derives the ball and checks a [`MengerResult`]: one walk per unit of
/// flow, each a valid self-avoiding walk from the source whose vertices lie
/// in the ball except the last, which lies outside, and pairwise edge-disjoint.
pub fn validate_menger(rule: &dyn GraphRule, result: &MengerResult) -> std::result::Result<(), String> {
    let ball = ball(rule, &result.source, result.radius).map_err(|e| e.to_string())?;
    if result.paths.len() != result.flow_value {
        return Err(format!("{} paths for flow {}", result.paths.len(), result.flow_value));
    }
    if result.min_cut != result.flow_value {
        return Err(format!("min cut {} differs from flow {}", result.min_cut, result.flow_value));
    }
    let mut seen: HashSet<&EdgeRef> = HashSet::new();
    for (p, walk) in result.paths.iter().enumerate() {
        walk.validate(rule).map_err(|e| format!("path {p}: {e}"))?;
        if walk.first() != &result.source {
            return Err(format!("path {p} does not start at the source"));
        }
        let (last, inner) = walk.vertices.split_last().expect("non-empty walk");
        if let Some(v) = inner.iter().find(|v| ball.index_of(v).is_none()) {
            return Err(format!("path {p} leaves the ball early at {v}"));
        }
        if ball.index_of(last).is_some() {
            return Err(format!("path {p} ends inside the ball at {last}"));
        }
        for e in &walk.edges {
            if !seen.insert(e) {
                return Err(format!("edge {e} used twice"));
            }
        }
    }
    Ok(())
}
