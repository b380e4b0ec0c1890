//! Relative divergence of grading functions on chains and power sets.
//!
//! A grading function assigns strictly order-preserving real grades to an
//! ordered set. Along a chain, the relative divergence of `F` from `G` is
//! `sum(ln(dG_k / dF_k) * dF_k)` over the steps; it reduces to Shannon
//! entropy when `G` counts steps and `F` spans the unit interval. On the
//! power set of a finite event space, ordered by subset inclusion, the
//! divergence is the minimum of the chain values over all maximal chains.
//!
//! Picking the admissible grading function that maximizes the divergence
//! from the cardinality function generalizes the maximum entropy principle.
//! The [`solvers`] module covers the closed-form and Lagrange-dual cases
//! for element-additive and cardinality-dependent functions under linear
//! constraints; [`oracle`] cross-checks them by brute force; [`problem`]
//! drives everything from JSON problem documents.

pub mod divergence;
pub mod error;
pub mod grading;
pub mod oracle;
pub mod powerset;
pub mod problem;
pub mod solvers;
pub mod space;

pub use divergence::{rd_chain, shannon_entropy, ChainGrades};
pub use error::{Error, Result};
pub use grading::{GradingFunction, NormalizedView};
pub use powerset::{
    enumerate_chains, entropy_powerset, is_equilateral, rd_powerset, restrict_to_chain,
    subordinate_additive, EquilateralCheck, MaximalChain, PowersetRdResult,
};
pub use problem::{parse_problem, render_problem, run, run_with, ProblemDoc, Report, RunOptions};
pub use solvers::{
    evaluate_objective, find_alpha_root, solve_cardinality_dependent, solve_linear_constraints,
    solve_quotas, solve_quotas_costs, CardinalityAnchors, ConstraintSystem, CostSpec,
    MrdpSolution, Partition, SolutionCase,
};
pub use space::EventSpace;
