use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// `B = alpha (D - 2) + beta` with `0 <= beta < D - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchLemmaInstance {
    pub delta: usize,
    pub b: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl BranchLemmaInstance {
    pub fn new(delta: usize, b: usize) -> Result<Self> {
        if delta < 3 {
            return Err(Error::InvalidArgument(format!("g(B) needs D >= 3, got {delta}")));
        }
        Ok(BranchLemmaInstance {
            delta,
            b,
            alpha: b / (delta - 2),
            beta: b % (delta - 2),
        })
    }

    pub fn g(&self) -> BigUint {
        BigUint::from(self.beta + 1) * BigUint::from(self.delta - 1).pow(self.alpha as u32)
    }
}

/// `g(B) = (beta + 1)(D - 1)^alpha`.
pub fn g_function(delta: usize, b: usize) -> Result<BigUint> {
    Ok(BranchLemmaInstance::new(delta, b)?.g())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GCounterexample {
    pub delta: usize,
    pub b: usize,
    pub gamma: usize,
    pub lhs: String,
    pub rhs: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GInductionReport {
    pub delta_max: usize,
    pub b_max: usize,
    /// `(D, B, gamma)` triples checked.
    pub checks: u64,
    pub counterexamples: Vec<GCounterexample>,
    /// `g` non-decreasing in `B` and `g(B + D - 2) = (D - 1) g(B)`.
    pub structure_holds: bool,
    pub passed: bool,
}

/// Checks `(gamma + 1) g(B - gamma) >= g(B)` for `3 <= D <= delta_max`,
/// `1 <= B <= b_max`, `1 <= gamma <= min(B, D - 2)`, and that both case
/// formulas of the induction step agree with direct evaluation:
///
/// * `gamma <= beta`: `(gamma + 1)(beta - gamma + 1)(D - 1)^alpha`;
/// * `gamma > beta`: `(gamma + 1)(D - 2 + beta - gamma + 1)(D - 1)^(alpha - 1)`.
pub fn verify_g_induction(delta_max: usize, b_max: usize) -> Result<GInductionReport> {
    if delta_max < 3 || b_max < 1 {
        return Err(Error::InvalidArgument("need delta_max >= 3 and b_max >= 1".into()));
    }
    let mut checks = 0;
    let mut counterexamples = Vec::new();
    let mut structure_holds = true;
    for delta in 3..=delta_max {
        let g: Vec<BigUint> = (0..=b_max + delta).map(|b| g_function(delta, b)).collect::<Result<_>>()?;
        for b in 0..=b_max {
            if g[b + 1] < g[b] || g[b + delta - 2] != &g[b] * BigUint::from(delta - 1) {
                structure_holds = false;
            }
        }
        for b in 1..=b_max {
            let inst = BranchLemmaInstance::new(delta, b)?;
            for gamma in 1..=b.min(delta - 2) {
                checks += 1;
                let lhs = BigUint::from(gamma + 1) * &g[b - gamma];
                let case = if gamma <= inst.beta {
                    BigUint::from((gamma + 1) * (inst.beta - gamma + 1)) * BigUint::from(delta - 1).pow(inst.alpha as u32)
                } else {
                    BigUint::from((gamma + 1) * (delta - 2 + inst.beta - gamma + 1))
                        * BigUint::from(delta - 1).pow(inst.alpha as u32 - 1)
                };
                let reason = if lhs < g[b] {
                    Some("(gamma+1) g(B-gamma) < g(B)")
                } else if case != lhs {
                    Some("case formula differs from direct evaluation")
                } else {
                    None
                };
                if let Some(reason) = reason {
                    counterexamples.push(GCounterexample {
                        delta,
                        b,
                        gamma,
                        lhs: lhs.to_string(),
                        rhs: g[b].to_string(),
                        reason: reason.into(),
                    });
                }
            }
        }
    }
    let passed = counterexamples.is_empty() && structure_holds;
    Ok(GInductionReport {
        delta_max,
        b_max,
        checks,
        counterexamples,
        structure_holds,
        passed,
    })
}
