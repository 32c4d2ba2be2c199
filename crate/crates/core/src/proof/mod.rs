//! Exact checks of the combinatorial steps behind the bounds: the branch
//! counting function `g(B)`, the strict upper bound cutoff, edge-disjoint
//! paths to the boundary of a ball, and inequality suites on exact counts.

mod branch;
mod cutoff;
mod inequalities;
mod menger;

pub use branch::{g_function, verify_g_induction, BranchLemmaInstance, GCounterexample, GInductionReport};
pub use cutoff::{
    find_cutoff_N, mu_strictness_report, CutoffPair, CutoffResult, StrictnessReport, StrictnessStatus,
    STRICTNESS_TOLERANCE,
};
pub use inequalities::{
    default_suite_families, inequality_suite, InequalityCheck, InequalityFailure, InequalitySuiteReport,
    DEFAULT_EQ15_N, DEFAULT_SUBMULT_N,
};
pub use menger::{menger_disjoint_paths, validate_menger, MengerResult};
