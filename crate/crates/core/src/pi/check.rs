use serde::{Deserialize, Serialize};

use super::search::Meter;
use super::witness::{search, validate_f_witness, WitnessSearch};
use super::{classify, ColorVerdict, Verdict};
use crate::enumerate::SawPrefix;
use crate::graph::{EdgeRef, GraphRule, Neighbor, VertexId};
use crate::{Error, Result};

/// Search bounds: prefix length `L`, colour depth `D`, connecting-walk
/// length `P`, and a total node budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiBounds {
    pub l: usize,
    pub d: usize,
    pub p: usize,
    pub budget: u64,
}

impl Default for PiBounds {
    fn default() -> Self {
        PiBounds {
            l: 8,
            d: 12,
            p: 12,
            budget: 200_000_000,
        }
    }
}

impl PiBounds {
    fn validate(&self) -> Result<()> {
        if self.l == 0 || self.d == 0 || self.p == 0 {
            return Err(Error::InvalidArgument("L, D and P must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PiOutcome {
    CertifiedUpTo {
        l: usize,
        d: usize,
        p: usize,
    },
    Violation {
        prefix: SawPrefix,
        e: EdgeRef,
        w: VertexId,
        e_prime: EdgeRef,
        red_edges: Vec<EdgeRef>,
        unmatched: Vec<EdgeRef>,
    },
    /// Some verdict or witness search ran out of budget and no violation
    /// was found.
    Partial { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiCertificate {
    pub family: String,
    pub vertex: VertexId,
    pub bounds: PiBounds,
    pub outcome: PiOutcome,
    /// `D`-extendable prefixes examined.
    pub prefixes_checked: u64,
    /// Traversed triples `(e, w, e')` examined.
    pub triples_checked: u64,
    /// Witnesses confirmed by the independent validator.
    pub witnesses_validated: u64,
}

impl PiCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self.outcome, PiOutcome::CertifiedUpTo { .. })
    }
}

struct Colours {
    blue: Vec<Neighbor>,
    red: Vec<Neighbor>,
    unknown: usize,
}

/// Classifies every edge at the end of `prefix` except `skip`.
fn colour_all(
    rule: &dyn GraphRule,
    prefix: &SawPrefix,
    skip: Option<&EdgeRef>,
    depth: usize,
    meter: &mut Meter,
) -> Result<Colours> {
    let mut c = Colours {
        blue: Vec::new(),
        red: Vec::new(),
        unknown: 0,
    };
    let mut last: Option<(VertexId, Verdict)> = None;
    for nb in rule.neighbors(prefix.last())? {
        if Some(&nb.edge) == skip {
            continue;
        }
        // Parallel edges share both endpoints and therefore the verdict.
        let verdict = match &last {
            Some((u, v)) if *u == nb.vertex => v.clone(),
            _ => {
                let ColorVerdict { verdict, .. } = classify(rule, prefix, &nb, depth, meter)?;
                last = Some((nb.vertex.clone(), verdict.clone()));
                verdict
            }
        };
        match verdict {
            Verdict::BlueCertified { .. } => c.blue.push(nb),
            Verdict::RedAtDepth { .. } => c.red.push(nb),
            Verdict::Unknown { .. } => c.unknown += 1,
        }
    }
    Ok(c)
}

struct PiRun<'a> {
    rule: &'a dyn GraphRule,
    bounds: PiBounds,
    meter: Meter,
    prefixes: u64,
    triples: u64,
    validated: u64,
    partial: Option<String>,
    violation: Option<PiOutcome>,
}

impl PiRun<'_> {
    fn visit(&mut self, prefix: &mut SawPrefix) -> Result<()> {
        let colours = colour_all(self.rule, prefix, prefix.last_edge(), self.bounds.d, &mut self.meter)?;
        if colours.unknown > 0 {
            self.partial.get_or_insert_with(|| "colour search budget exhausted".into());
        }
        if colours.blue.is_empty() {
            // Not D-extendable (or undecided): no walk of I(v) has this prefix.
            return Ok(());
        }
        self.prefixes += 1;
        if let (Some(e), 0) = (prefix.last_edge(), colours.unknown) {
            self.triples += colours.blue.len() as u64;
            if !colours.red.is_empty() {
                let reds: Vec<EdgeRef> = colours.red.iter().map(|n| n.edge.clone()).collect();
                match search(self.rule, prefix, &colours.red, self.bounds.p, &mut self.meter)? {
                    WitnessSearch::Found { witness } => {
                        if let Err(msg) = validate_f_witness(self.rule, prefix, &reds, &witness) {
                            return Err(Error::InvalidWalk(format!("witness rejected by validator: {msg}")));
                        }
                        self.validated += 1;
                    }
                    WitnessSearch::NotFound { unmatched } => {
                        self.violation = Some(PiOutcome::Violation {
                            prefix: prefix.clone(),
                            e: e.clone(),
                            w: prefix.last().clone(),
                            e_prime: colours.blue[0].edge.clone(),
                            red_edges: reds,
                            unmatched,
                        });
                        return Ok(());
                    }
                    WitnessSearch::Indeterminate { reason } => {
                        self.partial.get_or_insert(reason);
                    }
                }
            }
        }
        if prefix.len() < self.bounds.l {
            for nb in colours.blue {
                prefix.vertices.push(nb.vertex);
                prefix.edges.push(nb.edge);
                self.visit(prefix)?;
                prefix.vertices.pop();
                prefix.edges.pop();
                if self.violation.is_some() {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

/// Bounded check of condition Pi at `v`: every `D`-extendable prefix of
/// length at most `L` and every traversed triple at its end must admit an
/// F-witness with connecting walks of at most `P` steps.
///
/// Prefixes are explored depth first in neighbor order and the first failing
/// triple is reported. A violation is only reported when its own colouring
/// and witness search were exhaustive.
pub fn check_pi(rule: &dyn GraphRule, v: &VertexId, bounds: PiBounds) -> Result<PiCertificate> {
    bounds.validate()?;
    rule.degree(v)?;
    let mut run = PiRun {
        rule,
        bounds,
        meter: Meter::new(bounds.budget),
        prefixes: 0,
        triples: 0,
        validated: 0,
        partial: None,
        violation: None,
    };
    run.visit(&mut SawPrefix::start(v.clone()))?;
    let outcome = match (run.violation, run.partial) {
        (Some(v), _) => v,
        (None, Some(reason)) => PiOutcome::Partial { reason },
        (None, None) => PiOutcome::CertifiedUpTo {
            l: bounds.l,
            d: bounds.d,
            p: bounds.p,
        },
    };
    Ok(PiCertificate {
        family: rule.name(),
        vertex: v.clone(),
        bounds,
        outcome,
        prefixes_checked: run.prefixes,
        triples_checked: run.triples,
        witnesses_validated: run.validated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCount {
    pub blue: usize,
    pub red: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditedPrefix {
    pub prefix: SawPrefix,
    pub steps: Vec<StepCount>,
    pub blue_sum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlueCountReport {
    pub family: String,
    pub vertex: VertexId,
    pub n: usize,
    pub depth: usize,
    /// `n (D - 2)` for maximum degree `D`.
    pub required: usize,
    pub prefixes_audited: u64,
    /// Prefixes skipped because a verdict stayed unknown.
    pub prefixes_inconclusive: u64,
    /// `red + blue + 2 = deg(w)` at every audited step.
    pub accounting_holds: bool,
    /// `sum_s b_s >= required` on every audited prefix.
    pub inequality_holds: bool,
    /// The audited prefix with the smallest blue sum (first in search order).
    pub tightest: Option<AuditedPrefix>,
    pub first_failure: Option<AuditedPrefix>,
}

impl BlueCountReport {
    pub fn passed(&self) -> bool {
        self.accounting_holds && self.inequality_holds && self.prefixes_audited > 0
    }
}

struct Audit<'a> {
    rule: &'a dyn GraphRule,
    n: usize,
    depth: usize,
    required: usize,
    meter: Meter,
    steps: Vec<(StepCount, usize)>,
    report: BlueCountReport,
}

impl Audit<'_> {
    fn visit(&mut self, prefix: &mut SawPrefix) -> Result<()> {
        let s = prefix.len();
        let w = prefix.last().clone();
        let colours = colour_all(self.rule, prefix, prefix.last_edge(), self.depth, &mut self.meter)?;
        if s == 2 * self.n {
            if colours.blue.is_empty() && colours.unknown == 0 {
                return Ok(());
            }
            if colours.blue.is_empty() || self.steps.iter().any(|(_, u)| *u > 0) {
                self.report.prefixes_inconclusive += 1;
                return Ok(());
            }
            self.record(prefix);
            return Ok(());
        }
        let degree = self.rule.degree(&w)?;
        let all = self.rule.neighbors(&w)?;
        for next in colours.blue.clone() {
            // At the start there is no entering edge; the first other edge
            // at v plays its part.
            let ghost = if s == 0 {
                all.iter().find(|nb| nb.edge != next.edge).map(|nb| nb.edge.clone())
            } else {
                None
            };
            let keep = |nb: &&Neighbor| nb.edge != next.edge && Some(&nb.edge) != ghost.as_ref();
            let count = StepCount {
                blue: colours.blue.iter().filter(keep).count(),
                red: colours.red.iter().filter(keep).count(),
            };
            let unknown = colours.unknown;
            if count.blue + count.red + unknown + 2 != degree {
                self.report.accounting_holds = false;
            }
            self.steps.push((count, unknown));
            prefix.vertices.push(next.vertex.clone());
            prefix.edges.push(next.edge.clone());
            self.visit(prefix)?;
            prefix.vertices.pop();
            prefix.edges.pop();
            self.steps.pop();
        }
        Ok(())
    }

    fn record(&mut self, prefix: &SawPrefix) {
        let steps: Vec<StepCount> = self.steps.iter().map(|(c, _)| *c).collect();
        let blue_sum = steps.iter().map(|c| c.blue).sum();
        let entry = AuditedPrefix {
            prefix: prefix.clone(),
            steps,
            blue_sum,
        };
        self.report.prefixes_audited += 1;
        if blue_sum < self.required {
            self.report.inequality_holds = false;
            if self.report.first_failure.is_none() {
                self.report.first_failure = Some(entry.clone());
            }
        }
        if self.report.tightest.as_ref().is_none_or(|t| blue_sum < t.blue_sum) {
            self.report.tightest = Some(entry);
        }
    }
}

/// Audits `r_s + b_s = D - 2` and `sum_{s < 2n} b_s >= n (D - 2)` on every
/// `depth`-extendable walk of `2n` steps from `v`, with colours taken at
/// `depth`. Step `s` classifies the edges at `v_s` other than `e_{s-1}` and
/// `e_s`.
pub fn blue_count_audit(rule: &dyn GraphRule, v: &VertexId, n: usize, depth: usize, budget: u64) -> Result<BlueCountReport> {
    if n == 0 || depth == 0 {
        return Err(Error::InvalidArgument("n and depth must be at least 1".into()));
    }
    rule.degree(v)?;
    let required = n * rule.max_degree().saturating_sub(2);
    let mut audit = Audit {
        rule,
        n,
        depth,
        required,
        meter: Meter::new(budget),
        steps: Vec::new(),
        report: BlueCountReport {
            family: rule.name(),
            vertex: v.clone(),
            n,
            depth,
            required,
            prefixes_audited: 0,
            prefixes_inconclusive: 0,
            accounting_holds: true,
            inequality_holds: true,
            tightest: None,
            first_failure: None,
        },
    };
    audit.visit(&mut SawPrefix::start(v.clone()))?;
    Ok(audit.report)
}
