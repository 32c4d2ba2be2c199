use std::fmt;

use serde::Serialize;

use sawkit_core::enumerate::{
    count_extendable, count_saws, count_saws_avoiding, count_saws_midedge, EnumConfig, SawCountSeries,
};
use sawkit_core::estimate::{check_bounds, estimate_mu, BoundReport, ExactTarget, GrowthEstimate, Method};
use sawkit_core::graph::{EdgeRef, Family, GraphRule, Transitivity, VertexId};
use sawkit_core::pi::{blue_count_audit, check_pi, BlueCountReport, PiBounds, PiCertificate, PiOutcome};
use sawkit_core::proof::{
    default_suite_families, inequality_suite, menger_disjoint_paths, mu_strictness_report, validate_menger,
    verify_g_induction, InequalitySuiteReport, MengerResult, StrictnessStatus, DEFAULT_EQ15_N,
};
use sawkit_core::Error;

use crate::output::Report;
use crate::{CheckArgs, CheckKind, Cli, Command, EnumerateArgs, EstimateArgs, Global};

const DEFAULT_ESTIMATE_N: usize = 20;
const DEFAULT_BLUE_COUNT_N: usize = 4;
const MENGER_RADII: [usize; 3] = [2, 3, 4];

pub const PASS: u8 = 0;
pub const VIOLATION: u8 = 1;
pub const USAGE: u8 = 2;
pub const PARTIAL: u8 = 3;

pub enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

pub fn error_code(err: &CliError) -> u8 {
    match err {
        CliError::Core(Error::BudgetExceeded { .. } | Error::Truncated(_)) => PARTIAL,
        _ => USAGE,
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub struct Outcome {
    pub report: Report,
    pub exit: u8,
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Enumerate(a) => enumerate(&cli.global, a),
        Command::Estimate(a) => estimate(&cli.global, a),
        Command::Check(a) => check(&cli.global, a),
    }
}

fn family(spec: &str) -> Result<Family> {
    Ok(spec.parse()?)
}

fn config(g: &Global) -> EnumConfig {
    let cfg = EnumConfig::default();
    match g.budget {
        Some(b) => cfg.with_budget(b),
        None => cfg,
    }
}

fn roots(f: &Family, root: Option<&str>) -> Result<Vec<VertexId>> {
    match root {
        Some(r) => {
            let v = VertexId::parse(f.tag(), r)?;
            f.degree(&v)?;
            Ok(vec![v])
        }
        None => Ok(f.orbit_reps()),
    }
}

fn enumerate(g: &Global, a: &EnumerateArgs) -> Result<Outcome> {
    let f = family(&a.family)?;
    let cfg = config(g);
    let midedge = a.root.as_deref().is_some_and(|r| r.contains(':'));
    let series = match (&a.avoid_edge, a.extendable) {
        (Some(_), Some(_)) => return usage("--avoid-edge and --extendable cannot be combined"),
        _ if midedge && (a.avoid_edge.is_some() || a.extendable.is_some()) => {
            return usage("a mid-edge root takes neither --avoid-edge nor --extendable")
        }
        _ if midedge => {
            let e = EdgeRef::parse(f.tag(), a.root.as_deref().unwrap())?;
            count_saws_midedge(&f, &e, a.n, &cfg)?
        }
        (Some(e), None) => {
            let v = roots(&f, a.root.as_deref())?.remove(0);
            count_saws_avoiding(&f, &v, &EdgeRef::parse(f.tag(), e)?, a.n, &cfg)?
        }
        (None, Some(d)) => count_extendable(&f, &roots(&f, a.root.as_deref())?.remove(0), a.n, d, &cfg)?,
        (None, None) => count_saws(&f, &roots(&f, a.root.as_deref())?.remove(0), a.n, &cfg)?,
    };
    let rows = series
        .counts
        .iter()
        .enumerate()
        .map(|(n, c)| vec![n.to_string(), c.to_string()])
        .collect();
    Ok(Outcome {
        exit: if series.truncated { PARTIAL } else { PASS },
        report: Report::new(&series, vec!["n", "count"], rows),
    })
}

/// One series per orbit representative, cut to a common length if the
/// budget ran out.
fn orbit_series(f: &Family, n: usize, cfg: &EnumConfig) -> Result<(Vec<SawCountSeries>, bool)> {
    let mut series = f
        .orbit_reps()
        .iter()
        .map(|v| count_saws(f, v, n, cfg))
        .collect::<sawkit_core::Result<Vec<_>>>()?;
    let truncated = series.iter().any(|s| s.truncated);
    if truncated {
        let len = series.iter().map(|s| s.counts.len()).min().unwrap_or(0);
        for s in &mut series {
            s.counts.truncate(len);
            s.n_max = len.saturating_sub(1);
            s.truncated = false;
        }
    }
    Ok((series, truncated))
}

#[derive(Serialize)]
struct EstimateReport<'a> {
    family: String,
    n_requested: usize,
    n_used: usize,
    truncated: bool,
    target: Option<ExactTarget>,
    estimate: &'a GrowthEstimate,
    series: &'a [SawCountSeries],
}

fn estimate_rows(est: &GrowthEstimate, series: &[SawCountSeries]) -> Vec<Vec<String>> {
    (1..=est.n_max)
        .map(|n| {
            let sup = series.iter().filter_map(|s| s.sigma(n)).max().map(ToString::to_string).unwrap_or_default();
            let ratio = est.ratios.iter().find(|r| r.n == n);
            vec![
                n.to_string(),
                sup,
                est.fekete_raw[n - 1].to_string(),
                est.fekete_upper[n - 1].to_string(),
                ratio.map(|r| r.exact.clone()).unwrap_or_default(),
                ratio.map(|r| r.value.to_string()).unwrap_or_default(),
            ]
        })
        .collect()
}

fn estimate(g: &Global, a: &EstimateArgs) -> Result<Outcome> {
    let f = family(&a.family)?;
    let method: Method = a.method.parse()?;
    let (series, truncated) = orbit_series(&f, a.n, &config(g))?;
    let est = estimate_mu(&f, &series, method).map_err(|e| match (truncated, e) {
        (true, Error::SeriesTooShort { .. }) => Error::BudgetExceeded {
            budget: config(g).budget,
        },
        (_, e) => e,
    })?;
    let report = EstimateReport {
        family: f.to_string(),
        n_requested: a.n,
        n_used: est.n_max,
        truncated,
        target: ExactTarget::of(&f),
        estimate: &est,
        series: &series,
    };
    Ok(Outcome {
        exit: if truncated { PARTIAL } else { PASS },
        report: Report::new(
            &report,
            vec!["n", "sigma_sup", "fekete_raw", "fekete_upper", "ratio_exact", "ratio"],
            estimate_rows(&est, &series),
        ),
    })
}

fn check(g: &Global, a: &CheckArgs) -> Result<Outcome> {
    let fam = || match &a.family {
        Some(s) => family(s),
        None => usage(format!("check {:?} needs --family", a.kind).to_lowercase()),
    };
    match a.kind {
        CheckKind::Pi => check_pi_cmd(g, a, &fam()?),
        CheckKind::Bounds => check_bounds_cmd(g, a, &fam()?),
        CheckKind::Menger => check_menger(a, &fam()?),
        CheckKind::Strictness => check_strictness(g, a, &fam()?),
        CheckKind::Lemmas => check_lemmas(a),
        CheckKind::Inequalities => check_inequalities(g, a),
        CheckKind::BlueCount => check_blue_count(g, a, &fam()?),
    }
}

fn pi_bounds(g: &Global, a: &CheckArgs) -> PiBounds {
    PiBounds {
        l: a.l,
        d: a.d,
        p: a.p,
        budget: g.budget.unwrap_or(PiBounds::default().budget),
    }
}

fn outcome_kind(o: &PiOutcome) -> &'static str {
    match o {
        PiOutcome::CertifiedUpTo { .. } => "certified_up_to",
        PiOutcome::Violation { .. } => "violation",
        PiOutcome::Partial { .. } => "partial",
    }
}

/// Worst outcome first: violation, then partial, then certified.
fn pi_exit(certs: &[PiCertificate]) -> u8 {
    let has = |k| certs.iter().any(|c| outcome_kind(&c.outcome) == k);
    if has("violation") {
        VIOLATION
    } else if has("partial") {
        PARTIAL
    } else {
        PASS
    }
}

fn run_pi(g: &Global, a: &CheckArgs, f: &Family) -> Result<Vec<PiCertificate>> {
    let bounds = pi_bounds(g, a);
    let mut certs = Vec::new();
    for v in roots(f, a.root.as_deref())? {
        let c = check_pi(f, &v, bounds)?;
        let stop = matches!(c.outcome, PiOutcome::Violation { .. });
        certs.push(c);
        if stop {
            break;
        }
    }
    Ok(certs)
}

#[derive(Serialize)]
struct PiReport<'a> {
    family: String,
    outcome: &'static str,
    certificates: &'a [PiCertificate],
}

fn check_pi_cmd(g: &Global, a: &CheckArgs, f: &Family) -> Result<Outcome> {
    let certs = run_pi(g, a, f)?;
    let exit = pi_exit(&certs);
    let rows = certs
        .iter()
        .map(|c| {
            vec![
                c.vertex.to_string(),
                outcome_kind(&c.outcome).to_string(),
                c.prefixes_checked.to_string(),
                c.triples_checked.to_string(),
                c.witnesses_validated.to_string(),
            ]
        })
        .collect();
    let report = PiReport {
        family: f.to_string(),
        outcome: ["certified_up_to", "violation", "", "partial"][exit as usize],
        certificates: &certs,
    };
    Ok(Outcome {
        exit,
        report: Report::new(
            &report,
            vec!["vertex", "outcome", "prefixes_checked", "triples_checked", "witnesses_validated"],
            rows,
        ),
    })
}

#[derive(Serialize)]
struct BoundsCmdReport<'a> {
    n_used: usize,
    truncated: bool,
    pi_certified: Option<bool>,
    bounds: &'a BoundReport,
}

fn check_bounds_cmd(g: &Global, a: &CheckArgs, f: &Family) -> Result<Outcome> {
    let (series, truncated) = orbit_series(f, a.n.unwrap_or(DEFAULT_ESTIMATE_N), &config(g))?;
    let est = estimate_mu(f, &series, Method::RatioExtrapolation)?;
    let pi_certified = if a.with_pi {
        Some(run_pi(g, a, f)?.iter().all(PiCertificate::is_certified))
    } else {
        None
    };
    let report = check_bounds(f, &est, pi_certified == Some(true), a.tolerance);
    let c = &report.clauses;
    let rows = [("lower_bound", &c.lower_bound), ("upper_bound", &c.upper_bound), ("strict_gap", &c.strict_gap)]
        .iter()
        .map(|(name, cl)| {
            vec![
                name.to_string(),
                cl.applicable.to_string(),
                cl.passed.map(|p| p.to_string()).unwrap_or_default(),
                cl.detail.clone(),
            ]
        })
        .collect();
    let exit = if !report.passed {
        VIOLATION
    } else if truncated {
        PARTIAL
    } else {
        PASS
    };
    let out = BoundsCmdReport {
        n_used: est.n_max,
        truncated,
        pi_certified,
        bounds: &report,
    };
    Ok(Outcome {
        exit,
        report: Report::new(&out, vec!["clause", "applicable", "passed", "detail"], rows),
    })
}

#[derive(Serialize)]
struct MengerReport<'a> {
    family: String,
    /// Simple and vertex-transitive, so flow = degree is expected.
    hypothesis_holds: bool,
    all_valid: bool,
    all_meet_degree: bool,
    passed: bool,
    results: &'a [MengerResult],
    invalid: Vec<String>,
}

fn check_menger(a: &CheckArgs, f: &Family) -> Result<Outcome> {
    let radii = match a.n {
        Some(0) => return usage("menger radius must be at least 1"),
        Some(n) => vec![n],
        None => MENGER_RADII.to_vec(),
    };
    let mut results = Vec::new();
    let mut invalid = Vec::new();
    for v in roots(f, a.root.as_deref())? {
        for &n in &radii {
            let m = menger_disjoint_paths(f, &v, n)?;
            if let Err(e) = validate_menger(f, &m) {
                invalid.push(format!("{v} radius {n}: {e}"));
            }
            results.push(m);
        }
    }
    let hypothesis_holds = f.transitivity() == Transitivity::VertexTransitive && f.is_simple();
    let all_meet_degree = results.iter().all(MengerResult::meets_degree);
    let all_valid = invalid.is_empty();
    let passed = all_valid && (all_meet_degree || !hypothesis_holds);
    let rows = results
        .iter()
        .map(|m| {
            vec![
                m.source.to_string(),
                m.radius.to_string(),
                m.degree.to_string(),
                m.flow_value.to_string(),
                m.min_cut.to_string(),
                m.paths.len().to_string(),
            ]
        })
        .collect();
    let report = MengerReport {
        family: f.to_string(),
        hypothesis_holds,
        all_valid,
        all_meet_degree,
        passed,
        results: &results,
        invalid,
    };
    Ok(Outcome {
        exit: if passed { PASS } else { VIOLATION },
        report: Report::new(&report, vec!["vertex", "radius", "degree", "flow", "min_cut", "paths"], rows),
    })
}

fn check_strictness(g: &Global, a: &CheckArgs, f: &Family) -> Result<Outcome> {
    let cfg = config(g);
    let (series, truncated) = orbit_series(f, a.n.unwrap_or(DEFAULT_ESTIMATE_N), &cfg)?;
    let est = estimate_mu(f, &series, Method::RatioExtrapolation)?;
    let report = mu_strictness_report(f, &est, a.search_bound, &cfg)?;
    let cut = &report.cutoff;
    let rows = cut
        .pairs
        .iter()
        .map(|p| {
            vec![
                p.u.to_string(),
                p.e.to_string(),
                cut.cutoff.map(|n| n.to_string()).unwrap_or_default(),
                p.sigma_at_cutoff.clone().unwrap_or_default(),
                cut.limit.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let exit = match report.status {
        StrictnessStatus::Inconsistent => VIOLATION,
        StrictnessStatus::NotWitnessed => PARTIAL,
        StrictnessStatus::Certified if truncated => PARTIAL,
        StrictnessStatus::Certified => PASS,
    };
    Ok(Outcome {
        exit,
        report: Report::new(&report, vec!["u", "e", "N", "sigma_N", "limit"], rows),
    })
}

fn check_lemmas(a: &CheckArgs) -> Result<Outcome> {
    let report = verify_g_induction(a.delta_max, a.b_max)?;
    let mut rows = vec![vec![
        "summary".into(),
        a.delta_max.to_string(),
        a.b_max.to_string(),
        report.checks.to_string(),
        report.passed.to_string(),
    ]];
    rows.extend(report.counterexamples.iter().map(|c| {
        vec![
            "counterexample".into(),
            c.delta.to_string(),
            c.b.to_string(),
            c.gamma.to_string(),
            c.reason.clone(),
        ]
    }));
    Ok(Outcome {
        exit: if report.passed { PASS } else { VIOLATION },
        report: Report::new(&report, vec!["row", "delta", "b", "checks_or_gamma", "result"], rows),
    })
}

#[derive(Serialize)]
struct InequalitiesReport<'a> {
    passed: bool,
    families: &'a [InequalitySuiteReport],
}

fn check_inequalities(g: &Global, a: &CheckArgs) -> Result<Outcome> {
    let families = match &a.family {
        Some(s) => vec![family(s)?],
        None => default_suite_families(),
    };
    let cfg = config(g);
    let eq15_n = a.n.unwrap_or(DEFAULT_EQ15_N);
    let reports = families
        .iter()
        .map(|f| inequality_suite(f, f.exact_mu(), eq15_n, a.submult_n, &cfg))
        .collect::<sawkit_core::Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let rows = reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().map(move |c| {
                vec![
                    r.family.clone(),
                    c.name.clone(),
                    c.checked.to_string(),
                    c.failures.len().to_string(),
                ]
            })
        })
        .collect();
    Ok(Outcome {
        exit: if passed { PASS } else { VIOLATION },
        report: Report::new(
            &InequalitiesReport {
                passed,
                families: &reports,
            },
            vec!["family", "check", "checked", "failures"],
            rows,
        ),
    })
}

#[derive(Serialize)]
struct BlueCountCmdReport<'a> {
    family: String,
    passed: bool,
    audits: &'a [BlueCountReport],
}

fn check_blue_count(g: &Global, a: &CheckArgs, f: &Family) -> Result<Outcome> {
    let n = a.n.unwrap_or(DEFAULT_BLUE_COUNT_N);
    let budget = g.budget.unwrap_or(PiBounds::default().budget);
    let audits = roots(f, a.root.as_deref())?
        .iter()
        .map(|v| blue_count_audit(f, v, n, a.d, budget))
        .collect::<sawkit_core::Result<Vec<_>>>()?;
    let failed = audits.iter().any(|r| !r.accounting_holds || !r.inequality_holds);
    let empty = audits.iter().any(|r| r.prefixes_audited == 0);
    let rows = audits
        .iter()
        .map(|r| {
            vec![
                r.vertex.to_string(),
                r.n.to_string(),
                r.depth.to_string(),
                r.required.to_string(),
                r.prefixes_audited.to_string(),
                r.prefixes_inconclusive.to_string(),
                r.tightest.as_ref().map(|t| t.blue_sum.to_string()).unwrap_or_default(),
                r.passed().to_string(),
            ]
        })
        .collect();
    let exit = if failed {
        VIOLATION
    } else if empty {
        PARTIAL
    } else {
        PASS
    };
    Ok(Outcome {
        exit,
        report: Report::new(
            &BlueCountCmdReport {
                family: f.to_string(),
                passed: exit == PASS,
                audits: &audits,
            },
            vec![
                "vertex",
                "n",
                "depth",
                "required",
                "audited",
                "inconclusive",
                "min_blue_sum",
                "passed",
            ],
            rows,
        ),
    })
}
