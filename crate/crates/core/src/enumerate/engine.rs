//! Depth-first SAW enumeration on a [`LocalGraph`], split into independent
//! subtree tasks at a fixed depth and reduced in task order.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::csr::LocalGraph;
use super::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    Overflow,
    Budget,
}

const FLUSH_EVERY: u64 = 1 << 14;

/// Node counter shared across workers. The total work of a run does not
/// depend on scheduling, so whether a run trips the cap is deterministic.
pub(crate) struct Meter<'a> {
    local: u64,
    shared: &'a AtomicU64,
    cap: u64,
}

impl<'a> Meter<'a> {
    pub(crate) fn new(shared: &'a AtomicU64, cap: u64) -> Self {
        Meter { local: 0, shared, cap }
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), Stop> {
        self.local += 1;
        if self.local >= FLUSH_EVERY {
            self.flush()
        } else {
            Ok(())
        }
    }

    pub(crate) fn flush(&mut self) -> Result<(), Stop> {
        let total = self.shared.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.cap {
            Err(Stop::Budget)
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Count,
    /// Count walks admitting `lookahead` further self-avoiding steps.
    Extendable { lookahead: usize },
}

pub(crate) struct Walker<'g> {
    pub(crate) graph: &'g LocalGraph,
    /// Endpoint ids of an edge that may not be traversed. Only the one edge
    /// is removed; its parallel partners stay usable.
    pub(crate) avoid: Option<(u32, u32)>,
    pub(crate) n_max: usize,
    pub(crate) mode: Mode,
}

struct Task<W> {
    path: Vec<u32>,
    weight: W,
}

struct TaskOut<W> {
    counts: Vec<W>,
    reach: usize,
}

impl<'g> Walker<'g> {
    #[inline]
    fn multiplicity(&self, a: u32, b: u32, m: u32) -> u32 {
        match self.avoid {
            Some((x, y)) if (a == x && b == y) || (a == y && b == x) => m - 1,
            _ => m,
        }
    }

    fn lookahead(&self) -> usize {
        match self.mode {
            Mode::Count => 0,
            Mode::Extendable { lookahead } => lookahead,
        }
    }

    /// Adds the weighted number of walks extending the current one (ending at
    /// `v` after `depth` steps) to `counts[depth..]`.
    fn count<W: Weight>(
        &self,
        v: u32,
        depth: usize,
        w: &W,
        visited: &mut [bool],
        counts: &mut [W],
        meter: &mut Meter,
    ) -> Result<(), Stop> {
        meter.tick()?;
        if !counts[depth].accumulate(w) {
            return Err(Stop::Overflow);
        }
        if depth == self.n_max {
            return Ok(());
        }
        let (targets, mult) = self.graph.arcs(v);
        if depth + 2 == self.n_max {
            // The last two levels are tallied without descending.
            let (mut one, mut two) = (0u32, 0u32);
            for (&t, &m) in targets.iter().zip(mult) {
                let m = self.multiplicity(v, t, m);
                if visited[t as usize] || m == 0 {
                    continue;
                }
                one += m;
                let (next, next_mult) = self.graph.arcs(t);
                let mut open = 0u32;
                for (&u, &k) in next.iter().zip(next_mult) {
                    if !visited[u as usize] {
                        open += self.multiplicity(t, u, k);
                    }
                }
                two += m * open;
            }
            for (slot, k) in [(depth + 1, one), (depth + 2, two)] {
                if k > 0 {
                    let add = w.scaled(k).ok_or(Stop::Overflow)?;
                    if !counts[slot].accumulate(&add) {
                        return Err(Stop::Overflow);
                    }
                }
            }
            return Ok(());
        }
        if depth + 1 == self.n_max {
            // Leaves are tallied without descending.
            let mut open = 0u32;
            for (&t, &m) in targets.iter().zip(mult) {
                if !visited[t as usize] {
                    open += self.multiplicity(v, t, m);
                }
            }
            if open > 0 {
                let add = w.scaled(open).ok_or(Stop::Overflow)?;
                if !counts[depth + 1].accumulate(&add) {
                    return Err(Stop::Overflow);
                }
            }
            return Ok(());
        }
        for (&t, &m) in targets.iter().zip(mult) {
            let m = self.multiplicity(v, t, m);
            if visited[t as usize] || m == 0 {
                continue;
            }
            let child = w.scaled(m).ok_or(Stop::Overflow)?;
            visited[t as usize] = true;
            let r = self.count(t, depth + 1, &child, visited, counts, meter);
            visited[t as usize] = false;
            r?;
        }
        Ok(())
    }

    /// Like [`count`](Self::count) but only tallies walks that can be
    /// continued by `lookahead` more steps. Returns how far (capped at the
    /// lookahead) the current walk can be continued.
    fn extend<W: Weight>(
        &self,
        v: u32,
        depth: usize,
        w: &W,
        visited: &mut [bool],
        counts: &mut [W],
        meter: &mut Meter,
    ) -> Result<usize, Stop> {
        meter.tick()?;
        let cap = self.lookahead();
        let reach = if depth == self.n_max {
            self.longest(v, cap, visited, meter)?
        } else {
            let (targets, mult) = self.graph.arcs(v);
            let mut best = 0;
            for (&t, &m) in targets.iter().zip(mult) {
                let m = self.multiplicity(v, t, m);
                if visited[t as usize] || m == 0 {
                    continue;
                }
                let child = w.scaled(m).ok_or(Stop::Overflow)?;
                visited[t as usize] = true;
                let r = self.extend(t, depth + 1, &child, visited, counts, meter);
                visited[t as usize] = false;
                best = best.max((r? + 1).min(cap));
            }
            best
        };
        if reach >= cap && !counts[depth].accumulate(w) {
            return Err(Stop::Overflow);
        }
        Ok(reach)
    }

    /// Longest self-avoiding continuation from `v`, capped at `remaining`.
    fn longest(&self, v: u32, remaining: usize, visited: &mut [bool], meter: &mut Meter) -> Result<usize, Stop> {
        if remaining == 0 {
            return Ok(0);
        }
        let (targets, mult) = self.graph.arcs(v);
        let mut best = 0;
        for (&t, &m) in targets.iter().zip(mult) {
            if visited[t as usize] || self.multiplicity(v, t, m) == 0 {
                continue;
            }
            meter.tick()?;
            visited[t as usize] = true;
            let r = self.longest(t, remaining - 1, visited, meter);
            visited[t as usize] = false;
            best = best.max(r? + 1);
            if best == remaining {
                break;
            }
        }
        Ok(best)
    }

    fn split_depth(&self, requested: usize) -> usize {
        match self.mode {
            Mode::Count => requested.min(self.n_max.saturating_sub(2)),
            Mode::Extendable { .. } => requested.min(self.n_max),
        }
    }

    fn collect_tasks<W: Weight>(
        &self,
        v: u32,
        depth: usize,
        split: usize,
        w: &W,
        path: &mut Vec<u32>,
        visited: &mut [bool],
        counts: &mut [W],
        tasks: &mut Vec<Task<W>>,
    ) -> Result<(), Stop> {
        if depth == split {
            tasks.push(Task {
                path: path.clone(),
                weight: w.clone(),
            });
            return Ok(());
        }
        if self.mode == Mode::Count && !counts[depth].accumulate(w) {
            return Err(Stop::Overflow);
        }
        let (targets, mult) = self.graph.arcs(v);
        for (&t, &m) in targets.iter().zip(mult) {
            let m = self.multiplicity(v, t, m);
            if visited[t as usize] || m == 0 {
                continue;
            }
            let child = w.scaled(m).ok_or(Stop::Overflow)?;
            visited[t as usize] = true;
            path.push(t);
            let r = self.collect_tasks(t, depth + 1, split, &child, path, visited, counts, tasks);
            path.pop();
            visited[t as usize] = false;
            r?;
        }
        Ok(())
    }

    /// Second pass over the prefix tree for extendable counting: combines
    /// task reaches bottom-up in the same order the tasks were collected.
    fn combine_prefix<W: Weight>(
        &self,
        v: u32,
        depth: usize,
        split: usize,
        w: &W,
        visited: &mut [bool],
        counts: &mut [W],
        outs: &mut std::vec::IntoIter<TaskOut<W>>,
    ) -> Result<usize, Stop> {
        if depth == split {
            let out = outs.next().expect("one result per task");
            for (acc, c) in counts.iter_mut().zip(&out.counts) {
                if !acc.accumulate(c) {
                    return Err(Stop::Overflow);
                }
            }
            return Ok(out.reach);
        }
        let cap = self.lookahead();
        let (targets, mult) = self.graph.arcs(v);
        let mut best = 0;
        for (&t, &m) in targets.iter().zip(mult) {
            let m = self.multiplicity(v, t, m);
            if visited[t as usize] || m == 0 {
                continue;
            }
            let child = w.scaled(m).ok_or(Stop::Overflow)?;
            visited[t as usize] = true;
            let r = self.combine_prefix(t, depth + 1, split, &child, visited, counts, outs);
            visited[t as usize] = false;
            best = best.max((r? + 1).min(cap));
        }
        if best >= cap && !counts[depth].accumulate(w) {
            return Err(Stop::Overflow);
        }
        Ok(best)
    }

    /// Runs the enumeration from `root`, returning per-length weighted counts.
    pub(crate) fn run<W: Weight>(&self, root: u32, split: usize, cap: u64) -> Result<Vec<W>, Stop> {
        let n = self.graph.len();
        let shared = AtomicU64::new(0);
        let split = self.split_depth(split);
        let mut counts = vec![W::zero(); self.n_max + 1];
        let mut tasks = Vec::new();
        let mut visited = vec![false; n];
        visited[root as usize] = true;
        let mut path = vec![root];
        self.collect_tasks(root, 0, split, &W::one(), &mut path, &mut visited, &mut counts, &mut tasks)?;

        let results: Vec<Result<TaskOut<W>, Stop>> = tasks
            .par_iter()
            .map_init(
                || vec![false; n],
                |seen, task| {
                    let mut meter = Meter::new(&shared, cap);
                    for &p in &task.path {
                        seen[p as usize] = true;
                    }
                    let last = *task.path.last().expect("paths start at the root");
                    let mut local = vec![W::zero(); self.n_max + 1];
                    let r = match self.mode {
                        Mode::Count => self
                            .count(last, split, &task.weight, seen, &mut local, &mut meter)
                            .map(|_| 0),
                        Mode::Extendable { .. } => self.extend(last, split, &task.weight, seen, &mut local, &mut meter),
                    };
                    for &p in &task.path {
                        seen[p as usize] = false;
                    }
                    let reach = r?;
                    meter.flush()?;
                    Ok(TaskOut { counts: local, reach })
                },
            )
            .collect();

        let mut outs = Vec::with_capacity(results.len());
        let mut stop = None;
        for r in results {
            match r {
                Ok(o) => outs.push(o),
                Err(Stop::Overflow) => stop = Some(Stop::Overflow),
                Err(Stop::Budget) => {
                    stop.get_or_insert(Stop::Budget);
                }
            }
        }
        if let Some(s) = stop {
            return Err(s);
        }

        match self.mode {
            Mode::Count => {
                for out in &outs {
                    for (acc, c) in counts.iter_mut().zip(&out.counts) {
                        if !acc.accumulate(c) {
                            return Err(Stop::Overflow);
                        }
                    }
                }
            }
            Mode::Extendable { .. } => {
                let mut it = outs.into_iter();
                self.combine_prefix(root, 0, split, &W::one(), &mut visited, &mut counts, &mut it)?;
            }
        }
        Ok(counts)
    }
}
