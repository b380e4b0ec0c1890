//! Maximum-relative-divergence solvers.
//!
//! For element-additive grading functions the power-set divergence from the
//! cardinality function reduces to `-sum(f_i ln f_i)` over the increment
//! vector, so maximizing it under linear constraints is a maximum-entropy
//! problem. Four solvers cover the cases treated here: the piecewise-linear
//! closed form for cardinality-dependent functions, the partition-uniform
//! closed form for quota constraints, the per-block exponential family for
//! quotas with cost rates, and a Lagrange-dual Newton iteration for general
//! linear equality constraints.

mod cardinality;
mod costs;
mod dual;
mod quotas;

pub use cardinality::{solve_cardinality_dependent, CardinalityAnchors};
pub use costs::{cost_imbalance, find_alpha_root, solve_quotas_costs, CostSpec};
pub use dual::{solve_linear_constraints, ConstraintSystem};
pub use quotas::{solve_quotas, Partition};

use crate::error::{Error, Result};

/// How a solver arrived at its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionCase {
    /// Unique interior stationary point of the Lagrangian.
    Interior,
    /// Some block's cost constraint was implied by its quota, so the
    /// multipliers are not unique; the increments still are.
    UniformDegenerate,
    /// No admissible increment vector exists.
    Infeasible,
}

impl SolutionCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolutionCase::Interior => "interior",
            SolutionCase::UniformDegenerate => "uniform_degenerate",
            SolutionCase::Infeasible => "infeasible",
        }
    }
}

/// A solved MRDP instance: increments, Lagrange multipliers, objective, and
/// the largest absolute constraint violation.
#[derive(Debug, Clone, PartialEq)]
pub struct MrdpSolution {
    /// Per-element increments, all strictly positive.
    pub f: Vec<f64>,
    /// Lagrange multipliers. Quota solvers report one per block; the
    /// quotas-with-costs solver reports the K quota multipliers followed by
    /// the K cost multipliers (alpha); the linear solver one per constraint.
    pub multipliers: Vec<f64>,
    /// `-sum(f_i ln f_i)`, the divergence from the cardinality function.
    pub objective: f64,
    pub case: SolutionCase,
    /// Max absolute constraint violation.
    pub residual: f64,
}

/// The divergence of an element-additive grading function from the
/// cardinality function: `-sum(f_i ln f_i)`. Element-additive functions are
/// equilateral, so the single-chain value is the power-set value.
pub fn evaluate_objective(f: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for (index, &value) in f.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveIncrement { index, value });
        }
        sum -= value * value.ln();
    }
    Ok(sum)
}
