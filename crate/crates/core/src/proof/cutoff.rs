use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::enumerate::{count_saws_avoiding, EnumConfig};
use crate::estimate::GrowthEstimate;
use crate::graph::{EdgeRef, GraphRule, VertexId};
use crate::numeric::nth_root;
use crate::{Error, Result};

/// Slack on the float comparisons against the strictness bound.
pub const STRICTNESS_TOLERANCE: f64 = 1e-9;

/// Counts `sigma_k(u, e)` for one orbit representative `u` and one edge `e` at `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutoffPair {
    pub u: VertexId,
    pub e: EdgeRef,
    /// `sigma_k(u, e)` for `k = 0..=search_bound`, decimal strings.
    pub counts: Vec<String>,
    /// `sigma_N(u, e)` at the cutoff, if one was found.
    pub sigma_at_cutoff: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutoffResult {
    pub family: String,
    pub delta: usize,
    pub search_bound: usize,
    /// Smallest `N` with `sigma_N(u, e) <= (D - 1)^N - 1` for every pair.
    pub cutoff: Option<usize>,
    /// `(D - 1)^N - 1`, exact.
    pub limit: Option<String>,
    /// `((D - 1)^N - 1)^(1/N)`.
    pub bound: Option<f64>,
    pub pairs: Vec<CutoffPair>,
}

impl CutoffResult {
    pub fn found(&self) -> bool {
        self.cutoff.is_some()
    }
}

/// Searches `1..=search_bound` for the smallest `N` with
/// `sigma_N(u, e) <= (D - 1)^N - 1` over all orbit representatives `u` and
/// every edge `e` at `u`. Exact integer comparisons throughout.
#[allow(non_snake_case)]
pub fn find_cutoff_N(rule: &dyn GraphRule, search_bound: usize, cfg: &EnumConfig) -> Result<CutoffResult> {
    let delta = rule.max_degree();
    if delta < 3 {
        return Err(Error::InvalidArgument(format!("strictness cutoff needs D >= 3, got {delta}")));
    }
    if search_bound == 0 {
        return Err(Error::InvalidArgument("search bound must be at least 1".into()));
    }
    let mut series = Vec::new();
    for u in rule.orbit_reps() {
        for nb in rule.neighbors(&u)? {
            let s = count_saws_avoiding(rule, &u, &nb.edge, search_bound, cfg)?;
            if s.truncated {
                return Err(Error::BudgetExceeded { budget: cfg.budget });
            }
            series.push((u.clone(), nb.edge, s.counts));
        }
    }
    let base = BigUint::from(delta - 1);
    let limit = |n: usize| base.pow(n as u32) - <BigUint as One>::one();
    let cutoff = (1..=search_bound).find(|&n| {
        let lim = limit(n);
        series.iter().all(|(_, _, c)| c[n] <= lim)
    });
    let pairs = series
        .into_iter()
        .map(|(u, e, counts)| CutoffPair {
            u,
            e,
            sigma_at_cutoff: cutoff.map(|n| counts[n].to_string()),
            counts: counts.iter().map(ToString::to_string).collect(),
        })
        .collect();
    Ok(CutoffResult {
        family: rule.name(),
        delta,
        search_bound,
        cutoff,
        limit: cutoff.map(|n| limit(n).to_string()),
        bound: cutoff.map(|n| nth_root(&limit(n), n)),
        pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrictnessStatus {
    /// Cutoff found and the estimates lie below the rigorous bound.
    Certified,
    /// No cutoff within the search bound.
    NotWitnessed,
    /// Cutoff found but an estimate exceeds the rigorous bound.
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrictnessReport {
    pub family: String,
    pub delta: usize,
    pub cutoff: CutoffResult,
    pub mu_hat: Option<f64>,
    pub best_upper: Option<f64>,
    pub mu_hat_below_bound: Option<bool>,
    pub envelope_below_bound: Option<bool>,
    /// Some Fekete envelope entry is already below `D - 1`.
    pub envelope_below_delta_minus_one: bool,
    pub status: StrictnessStatus,
    pub detail: String,
}

/// Combines [`find_cutoff_N`] with an estimate: the rigorous bound
/// `mu <= ((D - 1)^N - 1)^(1/N) < D - 1` must dominate both the fitted value
/// and the smallest Fekete envelope entry.
pub fn mu_strictness_report(
    rule: &dyn GraphRule,
    estimate: &GrowthEstimate,
    search_bound: usize,
    cfg: &EnumConfig,
) -> Result<StrictnessReport> {
    let cutoff = find_cutoff_N(rule, search_bound, cfg)?;
    let delta = cutoff.delta;
    let best_upper = estimate.best_upper();
    let envelope_below_delta_minus_one = best_upper.is_some_and(|b| b < (delta - 1) as f64);
    let (mu_hat_below_bound, envelope_below_bound) = match cutoff.bound {
        Some(bound) => (
            estimate.mu_hat.map(|m| m <= bound + STRICTNESS_TOLERANCE),
            best_upper.map(|b| b <= bound + STRICTNESS_TOLERANCE),
        ),
        None => (None, None),
    };
    let (status, detail) = match (cutoff.cutoff, cutoff.bound) {
        (Some(n), Some(bound)) => {
            if mu_hat_below_bound != Some(false) && envelope_below_bound != Some(false) {
                (
                    StrictnessStatus::Certified,
                    format!("mu <= ({}^{n} - 1)^(1/{n}) = {bound:.6} < {}", delta - 1, delta - 1),
                )
            } else {
                (
                    StrictnessStatus::Inconsistent,
                    format!("estimate exceeds the rigorous bound {bound:.6}"),
                )
            }
        }
        _ => (
            StrictnessStatus::NotWitnessed,
            format!("strictness not witnessed at this bound (N <= {search_bound})"),
        ),
    };
    Ok(StrictnessReport {
        family: rule.name(),
        delta,
        cutoff,
        mu_hat: estimate.mu_hat,
        best_upper,
        mu_hat_below_bound,
        envelope_below_bound,
        envelope_below_delta_minus_one,
        status,
        detail,
    })
}
