use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::enumerate::{count_saws, EnumConfig};
use crate::graph::{Family, GraphRule, VertexId};
use crate::numeric::ln_biguint;
use crate::{Error, Result};

/// Largest `n` in the neighbor decomposition check.
pub const DEFAULT_EQ15_N: usize = 12;
/// Largest `m + n` in the submultiplicativity check.
pub const DEFAULT_SUBMULT_N: usize = 14;

/// The families every suite runs on by default (`interp:4:1` is `tree:4`).
pub fn default_suite_families() -> Vec<Family> {
    let mut out = vec![Family::Ladder, Family::Hexagonal];
    out.extend((2..=6).map(|d| Family::Loop { degree: d }));
    out.extend([3, 4].map(|d| Family::Tree { degree: d }));
    out.extend([Family::Decorated3, Family::Decorated4]);
    out.extend(
        [(3, 1), (3, 2), (3, 3), (4, 2), (4, 3)]
            .map(|(degree, segments)| Family::Interpolation { degree, segments }),
    );
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityFailure {
    pub u: VertexId,
    pub v: Option<VertexId>,
    pub m: Option<usize>,
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub statement: String,
    pub checked: u64,
    pub failures: Vec<InequalityFailure>,
}

impl InequalityCheck {
    fn new(name: &str, statement: &str) -> Self {
        InequalityCheck {
            name: name.into(),
            statement: statement.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, holds: bool, failure: impl FnOnce() -> InequalityFailure) {
        self.checked += 1;
        if !holds {
            self.failures.push(failure());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalitySuiteReport {
    pub family: String,
    pub eq15_n: usize,
    pub submult_n: usize,
    pub checks: Vec<InequalityCheck>,
    pub passed: bool,
}

/// Exact counts per vertex, computed once.
struct Counts<'a> {
    rule: &'a dyn GraphRule,
    cfg: &'a EnumConfig,
    cache: BTreeMap<VertexId, Vec<BigUint>>,
}

impl Counts<'_> {
    fn get(&mut self, v: &VertexId, n: usize) -> Result<&[BigUint]> {
        if self.cache.get(v).is_none_or(|c| c.len() <= n) {
            let s = count_saws(self.rule, v, n, self.cfg)?;
            if s.truncated {
                return Err(Error::BudgetExceeded { budget: self.cfg.budget });
            }
            self.cache.insert(v.clone(), s.counts);
        }
        Ok(&self.cache[v][..=n])
    }
}

/// Runs three exact checks on `rule`:
///
/// * `eq15`: `sigma_n(u) <= sigma_{n+1}(v) + sum_{m=1}^{n-1} sigma_m(v) sigma_{n-m}(v) + sigma_n(v)`
///   for every orbit representative `u`, every neighbor `v` of `u`, in both
///   roles, and `1 <= n <= eq15_n`;
/// * `submultiplicativity`: `sigma_{m+n}(v) <= sigma_m(v) max_u sigma_n(u)` for
///   orbit representatives and `m, n >= 1`, `m + n <= submult_n`;
/// * `trivial_upper`: `sigma_n(v) <= D (D - 1)^(n-1)` for `1 <= n <= submult_n`.
///
/// When the connective constant is known, `fekete_lower` also checks
/// `max_u sigma_n(u) >= mu^n` in floating point.
pub fn inequality_suite(
    rule: &dyn GraphRule,
    exact_mu: Option<f64>,
    eq15_n: usize,
    submult_n: usize,
    cfg: &EnumConfig,
) -> Result<InequalitySuiteReport> {
    let mut counts = Counts {
        rule,
        cfg,
        cache: BTreeMap::new(),
    };
    let reps = rule.orbit_reps();
    let delta = rule.max_degree();
    let top = submult_n.max(eq15_n);
    for u in &reps {
        counts.get(u, top)?;
    }

    let mut eq15 = InequalityCheck::new(
        "eq15",
        "sigma_n(u) <= sigma_{n+1}(v) + sum_{m=1}^{n-1} sigma_m(v) sigma_{n-m}(v) + sigma_n(v) for u ~ v",
    );
    for u in &reps {
        let mut seen = Vec::new();
        for nb in rule.neighbors(u)? {
            if seen.contains(&nb.vertex) {
                continue;
            }
            seen.push(nb.vertex.clone());
            for (a, b) in [(u, &nb.vertex), (&nb.vertex, u)] {
                let sa = counts.get(a, eq15_n)?.to_vec();
                let sb = counts.get(b, eq15_n + 1)?.to_vec();
                for n in 1..=eq15_n {
                    let rhs = &sb[n + 1] + (1..n).map(|m| &sb[m] * &sb[n - m]).sum::<BigUint>() + &sb[n];
                    eq15.record(sa[n] <= rhs, || InequalityFailure {
                        u: a.clone(),
                        v: Some(b.clone()),
                        m: None,
                        n,
                        lhs: sa[n].to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
    }

    let sup: Vec<BigUint> = (0..=top)
        .map(|n| reps.iter().map(|u| counts.cache[u][n].clone()).max().expect("at least one orbit"))
        .collect();
    let mut submult = InequalityCheck::new("submultiplicativity", "sigma_{m+n}(v) <= sigma_m(v) max_u sigma_n(u)");
    let mut trivial = InequalityCheck::new("trivial_upper", "sigma_n(v) <= D (D-1)^(n-1)");
    for v in &reps {
        let s = &counts.cache[v];
        for total in 2..=submult_n {
            for m in 1..total {
                let rhs = &s[m] * &sup[total - m];
                submult.record(s[total] <= rhs, || InequalityFailure {
                    u: v.clone(),
                    v: None,
                    m: Some(m),
                    n: total - m,
                    lhs: s[total].to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
        for (n, sn) in s.iter().enumerate().take(submult_n + 1).skip(1) {
            let rhs = BigUint::from(delta) * BigUint::from(delta - 1).pow(n as u32 - 1);
            trivial.record(sn <= &rhs, || InequalityFailure {
                u: v.clone(),
                v: None,
                m: None,
                n,
                lhs: sn.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    let mut checks = vec![eq15, submult, trivial];
    if let Some(mu) = exact_mu {
        let mut lower = InequalityCheck::new("fekete_lower", "max_u sigma_n(u) >= mu^n");
        for (n, s) in sup.iter().enumerate().skip(1) {
            let rhs = n as f64 * mu.ln();
            lower.record(ln_biguint(s) >= rhs - 1e-9, || InequalityFailure {
                u: reps[0].clone(),
                v: None,
                m: None,
                n,
                lhs: s.to_string(),
                rhs: format!("{:.6}", rhs.exp()),
            });
        }
        checks.push(lower);
    }
    let passed = checks.iter().all(InequalityCheck::passed);
    Ok(InequalitySuiteReport {
        family: rule.name(),
        eq15_n,
        submult_n,
        checks,
        passed,
    })
}
