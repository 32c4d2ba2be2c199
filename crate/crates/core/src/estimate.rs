//! Growth-rate estimates and finite-n bounds from exact count series.
//!
//! Quasi-transitive families are handled through the orbit supremum
//! `a_n = max_u sigma_n(u)` over one series per orbit representative.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::enumerate::SawCountSeries;
use crate::graph::{Family, GraphRule, Transitivity};
use crate::numeric::ln_biguint;
use crate::{Error, Result};

/// Slack when comparing a float bound against an exact constant.
pub const MACHINE_SLACK: f64 = 1e-12;
/// Disagreement threshold between the two estimators.
pub const METHOD_AGREEMENT: f64 = 1e-2;
/// Minimum series length accepted by [`estimate_mu`].
pub const MIN_ESTIMATE_N: usize = 8;

const MAX_PERIOD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    RatioExtrapolation,
    LogFit,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" | "ratio_extrapolation" => Ok(Method::RatioExtrapolation),
            "log" | "log_fit" => Ok(Method::LogFit),
            _ => Err(Error::InvalidArgument(format!("unknown method `{s}`"))),
        }
    }
}

/// `sigma_n / sigma_{n-1}` of the orbit supremum, exact and rendered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioEntry {
    pub n: usize,
    /// Reduced fraction `p/q`.
    pub exact: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    /// Detected period of the count oscillation.
    pub period: usize,
    pub n_from: usize,
    pub n_to: usize,
    pub points: usize,
    pub residual_rms: f64,
    pub ratio_mu: f64,
    pub log_fit_mu: f64,
    /// Fitted power-law exponent of the log fit, when enough points exist.
    pub log_fit_gamma: Option<f64>,
    /// The two methods differ by more than [`METHOD_AGREEMENT`].
    pub disagreement: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthEstimate {
    pub family: String,
    pub n_max: usize,
    /// `(max_u sigma_n(u))^(1/n)` for `n = 1..=n_max`.
    pub fekete_raw: Vec<f64>,
    /// Running minimum of `fekete_raw`: a non-increasing sequence of upper
    /// bounds on the connective constant.
    pub fekete_upper: Vec<f64>,
    pub ratios: Vec<RatioEntry>,
    pub mu_hat: Option<f64>,
    pub method: Option<Method>,
    pub diagnostics: Option<FitDiagnostics>,
}

impl GrowthEstimate {
    /// Smallest envelope entry.
    pub fn best_upper(&self) -> Option<f64> {
        self.fekete_upper.last().copied()
    }
}

/// Known closed-form connective constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactTarget {
    pub family: String,
    pub mu_exact: f64,
}

impl ExactTarget {
    pub fn of(family: &Family) -> Option<Self> {
        family.exact_mu().map(|mu_exact| ExactTarget {
            family: family.to_string(),
            mu_exact,
        })
    }
}

/// Orbit supremum of the series, checked against the rule's orbit list.
fn orbit_supremum(rule: &dyn GraphRule, series: &[SawCountSeries]) -> Result<Vec<BigUint>> {
    for rep in rule.orbit_reps() {
        if !series.iter().any(|s| s.root_vertex() == Some(&rep)) {
            return Err(Error::MissingOrbitSeries(rep.to_string()));
        }
    }
    let len = series.iter().map(|s| s.counts.len()).min().unwrap_or(0);
    Ok((0..len)
        .map(|n| series.iter().map(|s| &s.counts[n]).max().cloned().unwrap_or_else(BigUint::zero))
        .collect())
}

fn bounds_from(family: String, sup: &[BigUint]) -> GrowthEstimate {
    let n_max = sup.len().saturating_sub(1);
    let fekete_raw: Vec<f64> = (1..=n_max).map(|n| (ln_biguint(&sup[n]) / n as f64).exp()).collect();
    let mut fekete_upper = Vec::with_capacity(fekete_raw.len());
    let mut env = f64::INFINITY;
    for &b in &fekete_raw {
        env = env.min(b);
        fekete_upper.push(env);
    }
    let ratios = (1..=n_max)
        .filter(|&n| !sup[n - 1].is_zero())
        .map(|n| RatioEntry {
            n,
            exact: Ratio::new(sup[n].clone(), sup[n - 1].clone()).to_string(),
            value: (ln_biguint(&sup[n]) - ln_biguint(&sup[n - 1])).exp(),
        })
        .collect();
    GrowthEstimate {
        family,
        n_max,
        fekete_raw,
        fekete_upper,
        ratios,
        mu_hat: None,
        method: None,
        diagnostics: None,
    }
}

/// Fekete upper bounds from one series per orbit representative, on the
/// common range of computed lengths.
pub fn fekete_bounds(rule: &dyn GraphRule, series: &[SawCountSeries]) -> Result<GrowthEstimate> {
    let sup = orbit_supremum(rule, series)?;
    if sup.len() < 3 {
        return Err(Error::SeriesTooShort {
            required: 2,
            available: sup.len().saturating_sub(1),
        });
    }
    Ok(bounds_from(rule.name(), &sup))
}

/// Mean absolute first difference of the lag-`p` log growth rate over `tail`.
fn roughness(logs: &[f64], p: usize, tail: std::ops::RangeInclusive<usize>) -> f64 {
    let d: Vec<f64> = tail.map(|n| (logs[n] - logs[n - p]) / p as f64).collect();
    if d.len() < 2 {
        return f64::INFINITY;
    }
    d.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>() / (d.len() - 1) as f64
}

/// Smallest period whose lag ratios are (near-)smoothest.
fn detect_period(logs: &[f64]) -> usize {
    let n = logs.len() - 1;
    let max_p = MAX_PERIOD.min(n / 3).max(1);
    let from = (n / 2).max(max_p);
    let r: Vec<f64> = (1..=max_p).map(|p| roughness(logs, p, from..=n)).collect();
    let best = r.iter().cloned().fold(f64::INFINITY, f64::min);
    (1..=max_p).find(|&p| r[p - 1] <= 2.0 * best + 1e-12).unwrap_or(1)
}

struct Fit {
    coef: Vec<f64>,
    rms: f64,
}

fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Fit {
    let x = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let yv = DVector::from_column_slice(y);
    let coef = x.clone().svd(true, true).solve(&yv, 1e-14).expect("svd with both factors");
    let res = &x * &coef - &yv;
    Fit {
        coef: coef.iter().copied().collect(),
        rms: (res.norm_squared() / y.len() as f64).sqrt(),
    }
}

/// Estimates the connective constant from one series per orbit
/// representative.
///
/// Both estimators work on the orbit supremum `a_n` over the tail half of the
/// series, after detecting a period `p` of the count oscillation:
///
/// * ratio extrapolation fits `ln(a_n / a_{n-p}) / p = ln mu + b / n`;
/// * the log fit fits `ln a_n = n ln mu + gamma ln n + c` on the residue class
///   of `n_max` modulo `p`.
pub fn estimate_mu(rule: &dyn GraphRule, series: &[SawCountSeries], method: Method) -> Result<GrowthEstimate> {
    if let Some(s) = series.iter().find(|s| s.truncated) {
        return Err(Error::Truncated(s.computed_n().unwrap_or(0)));
    }
    let sup = orbit_supremum(rule, series)?;
    let n = sup.len().saturating_sub(1);
    if n < MIN_ESTIMATE_N {
        return Err(Error::SeriesTooShort {
            required: MIN_ESTIMATE_N,
            available: n,
        });
    }
    let logs: Vec<f64> = sup.iter().map(ln_biguint).collect();
    let period = detect_period(&logs);
    let from = (n / 2).max(period);

    let ratio_rows: Vec<Vec<f64>> = (from..=n).map(|k| vec![1.0, 1.0 / k as f64]).collect();
    let ratio_y: Vec<f64> = (from..=n).map(|k| (logs[k] - logs[k - period]) / period as f64).collect();
    let ratio_fit = least_squares(&ratio_rows, &ratio_y);
    let ratio_mu = ratio_fit.coef[0].exp();

    let class: Vec<usize> = (from..=n).filter(|k| (n - k) % period == 0).collect();
    let with_gamma = class.len() >= 3;
    let log_rows: Vec<Vec<f64>> = class
        .iter()
        .map(|&k| {
            let k = k as f64;
            if with_gamma {
                vec![k, k.ln(), 1.0]
            } else {
                vec![k, 1.0]
            }
        })
        .collect();
    let log_y: Vec<f64> = class.iter().map(|&k| logs[k]).collect();
    let log_fit = least_squares(&log_rows, &log_y);
    let log_fit_mu = log_fit.coef[0].exp();

    let (mu_hat, fit, points) = match method {
        Method::RatioExtrapolation => (ratio_mu, &ratio_fit, ratio_y.len()),
        Method::LogFit => (log_fit_mu, &log_fit, log_y.len()),
    };
    let mut est = bounds_from(rule.name(), &sup);
    est.mu_hat = Some(mu_hat);
    est.method = Some(method);
    est.diagnostics = Some(FitDiagnostics {
        period,
        n_from: from,
        n_to: n,
        points,
        residual_rms: fit.rms,
        ratio_mu,
        log_fit_mu,
        log_fit_gamma: with_gamma.then(|| log_fit.coef[1]),
        disagreement: (ratio_mu - log_fit_mu).abs() > METHOD_AGREEMENT,
    });
    Ok(est)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clause {
    /// Whether the clause's hypothesis holds for this family.
    pub applicable: bool,
    /// `None` when not applicable.
    pub passed: Option<bool>,
    pub detail: String,
}

impl Clause {
    fn skipped(detail: impl Into<String>) -> Self {
        Clause {
            applicable: false,
            passed: None,
            detail: detail.into(),
        }
    }

    fn checked(passed: bool, detail: impl Into<String>) -> Self {
        Clause {
            applicable: true,
            passed: Some(passed),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundClauses {
    pub lower_bound: Clause,
    pub upper_bound: Clause,
    pub strict_gap: Clause,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub family: String,
    pub degree: usize,
    pub sqrt_degree_minus_one: f64,
    pub mu_hat: Option<f64>,
    pub best_upper: Option<f64>,
    pub clauses: BoundClauses,
    pub passed: bool,
}

/// Checks an estimate against `sqrt(D-1) <= mu <= D-1` and, for families
/// with a cycle or a deficient vertex, the strict gap `mu < D-1`.
///
/// The lower-bound clause applies to simple vertex-transitive families and to
/// families whose condition-Pi check passed (`pi_certified`).
pub fn check_bounds(rule: &dyn GraphRule, est: &GrowthEstimate, pi_certified: bool, tolerance: f64) -> BoundReport {
    let delta = rule.max_degree();
    let top = (delta - 1) as f64;
    let root = top.sqrt();
    let envelope_min = est.best_upper();

    let lower_applies = (rule.transitivity() == Transitivity::VertexTransitive && rule.is_simple()) || pi_certified;
    let lower_bound = if lower_applies {
        let env_ok = est.fekete_upper.iter().all(|&b| b >= root - MACHINE_SLACK);
        let hat_ok = est.mu_hat.is_none_or(|m| m >= root - tolerance);
        Clause::checked(
            env_ok && hat_ok,
            format!("every envelope entry >= {root:.6} and mu_hat >= {root:.6} - {tolerance}"),
        )
    } else {
        Clause::skipped("not simple vertex-transitive and not Pi-certified")
    };

    let upper_bound = match est.mu_hat {
        Some(m) => Clause::checked(m <= top + tolerance, format!("mu_hat {m:.6} <= {top} + {tolerance}")),
        None => Clause::checked(
            envelope_min.is_some_and(|b| b <= delta as f64),
            "no estimate; envelope checked against D",
        ),
    };

    let strict_gap = if rule.has_cycle() || !rule.is_regular() {
        let first = est.fekete_upper.iter().position(|&b| b < top);
        Clause::checked(
            first.is_some(),
            match first {
                Some(i) => format!("envelope < {top} from n = {}", i + 1),
                None => format!("envelope never < {top} up to n = {}", est.n_max),
            },
        )
    } else {
        Clause::skipped("no cycle and regular")
    };

    let passed = [&lower_bound, &upper_bound, &strict_gap].iter().all(|c| c.passed != Some(false));
    BoundReport {
        family: rule.name(),
        degree: delta,
        sqrt_degree_minus_one: root,
        mu_hat: est.mu_hat,
        best_upper: envelope_min,
        clauses: BoundClauses {
            lower_bound,
            upper_bound,
            strict_gap,
        },
        passed,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub family: String,
    pub root_u: String,
    pub root_v: String,
    pub n: usize,
    pub root_u_value: f64,
    pub root_v_value: f64,
    pub difference: f64,
    pub threshold: f64,
    pub passed: bool,
}

/// Minimum common length for [`convergence_check`].
pub const MIN_CONVERGENCE_N: usize = 20;

/// Compares `sigma_n(u)^(1/n)` and `sigma_n(v)^(1/n)` at the largest common `n`.
pub fn convergence_check(u: &SawCountSeries, v: &SawCountSeries, threshold: f64) -> Result<ConvergenceReport> {
    let n = u.counts.len().min(v.counts.len()).saturating_sub(1);
    if n < MIN_CONVERGENCE_N {
        return Err(Error::SeriesTooShort {
            required: MIN_CONVERGENCE_N,
            available: n,
        });
    }
    let a = (ln_biguint(&u.counts[n]) / n as f64).exp();
    let b = (ln_biguint(&v.counts[n]) / n as f64).exp();
    let name = |s: &SawCountSeries| match &s.root {
        crate::enumerate::Root::Vertex(x) => x.to_string(),
        crate::enumerate::Root::MidEdge(e) => e.to_string(),
    };
    Ok(ConvergenceReport {
        family: u.family.clone(),
        root_u: name(u),
        root_v: name(v),
        n,
        root_u_value: a,
        root_v_value: b,
        difference: (a - b).abs(),
        threshold,
        passed: (a - b).abs() < threshold,
    })
}
