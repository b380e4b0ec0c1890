//! Solver for partition quotas with per-block cost constraints.
//!
//! Within a block, stationarity gives `f_i = e^(-1 - lambda - r_i alpha)`.
//! Eliminating `lambda` against the quota leaves one scalar equation in
//! `alpha`: with `r0 = Q / M` and deviations `d_i = r_i - r0`,
//! `E(alpha) = sum(d_i e^(-d_i alpha))` must vanish. `E` is strictly
//! decreasing, so the sign pattern of the deviations decides everything:
//! all zero means the cost row is implied by the quota, a single sign means
//! the block is infeasible, and mixed signs give a unique root.

use crate::error::{Error, Result};
use crate::solvers::quotas::Partition;
use crate::solvers::{MrdpSolution, SolutionCase};

/// Relative tolerance under which a rate deviation counts as zero.
const DEVIATION_TOL: f64 = 1e-12;

/// Per-element cost rates and per-block cost totals.
#[derive(Debug, Clone, PartialEq)]
pub struct CostSpec {
    rates: Vec<f64>,
    costs: Vec<f64>,
}

impl CostSpec {
    pub fn new(rates: Vec<f64>, costs: Vec<f64>) -> Result<Self> {
        for (index, &r) in rates.iter().enumerate() {
            if !r.is_finite() || r <= 0.0 {
                return Err(Error::InvalidPartition(format!(
                    "rate {r} of element {index} is not positive and finite"
                )));
            }
        }
        for (k, &q) in costs.iter().enumerate() {
            if !q.is_finite() || q <= 0.0 {
                return Err(Error::InvalidPartition(format!(
                    "cost {q} of block {} is not positive and finite",
                    k + 1
                )));
            }
        }
        Ok(CostSpec { rates, costs })
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }
}

/// `E(alpha) = sum(d_i e^(-d_i alpha))`: the cost imbalance of the
/// exponential allocation with deviations `d`. Strictly decreasing in
/// `alpha` whenever some deviation is nonzero.
pub fn cost_imbalance(deviations: &[f64], alpha: f64) -> f64 {
    deviations.iter().map(|&d| d * (-d * alpha).exp()).sum()
}

/// Solves `E(alpha) = 0` for deviations of mixed sign. Expands a bracket
/// geometrically from `[-1, 1]` (guaranteed to capture the root since `E`
/// runs from +inf to -inf), then closes in with a secant/bisection hybrid.
pub fn find_alpha_root(deviations: &[f64]) -> Result<f64> {
    let has_pos = deviations.iter().any(|&d| d > 0.0);
    let has_neg = deviations.iter().any(|&d| d < 0.0);
    if !has_pos || !has_neg {
        return Err(Error::NoSignMix);
    }

    let mut lo = -1.0;
    let mut hi = 1.0;
    let mut e_lo = cost_imbalance(deviations, lo);
    let mut e_hi = cost_imbalance(deviations, hi);
    let mut expansions = 0;
    while e_lo < 0.0 {
        hi = lo;
        e_hi = e_lo;
        lo *= 2.0;
        e_lo = cost_imbalance(deviations, lo);
        expansions += 1;
        if expansions > 200 {
            return Err(Error::RootBracketFailure);
        }
    }
    while e_hi > 0.0 {
        lo = hi;
        e_lo = e_hi;
        hi *= 2.0;
        e_hi = cost_imbalance(deviations, hi);
        expansions += 1;
        if expansions > 200 {
            return Err(Error::RootBracketFailure);
        }
    }
    if e_lo == 0.0 {
        return Ok(lo);
    }
    if e_hi == 0.0 {
        return Ok(hi);
    }

    for _ in 0..200 {
        let width = hi - lo;
        let mid = if e_lo.is_finite() && e_hi.is_finite() && e_lo != e_hi {
            // Secant proposal, kept strictly inside the bracket.
            let secant = lo - e_lo * width / (e_hi - e_lo);
            if secant > lo + 0.01 * width && secant < hi - 0.01 * width {
                secant
            } else {
                lo + 0.5 * width
            }
        } else {
            lo + 0.5 * width
        };
        let e_mid = cost_imbalance(deviations, mid);
        if e_mid == 0.0 {
            return Ok(mid);
        }
        if e_mid > 0.0 {
            lo = mid;
            e_lo = e_mid;
        } else {
            hi = mid;
            e_hi = e_mid;
        }
        if hi - lo <= 1e-13 * mid.abs().max(1.0) {
            break;
        }
    }
    Ok(if e_lo.abs() <= e_hi.abs() { lo } else { hi })
}

/// Log of `sum(e^(x_i))`, shifted for overflow safety.
fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    max + xs.map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Maximizes `-sum(f_i ln f_i)` under both the partition quotas and the
/// per-block cost totals. The blocks decouple into independent problems;
/// each is classified by the sign pattern of its rate deviations.
///
/// Multipliers are reported as the K quota multipliers followed by the K
/// cost multipliers alpha (0 for degenerate blocks, where any alpha works).
pub fn solve_quotas_costs(partition: &Partition, costs: &CostSpec) -> Result<MrdpSolution> {
    let n = partition.n();
    let k_blocks = partition.block_count();
    if costs.rates().len() != n {
        return Err(Error::DimensionMismatch {
            what: "cost rates",
            expected: n,
            got: costs.rates().len(),
        });
    }
    if costs.costs().len() != k_blocks {
        return Err(Error::DimensionMismatch {
            what: "block costs",
            expected: k_blocks,
            got: costs.costs().len(),
        });
    }

    let mut f = vec![0.0; n];
    let mut lambdas = Vec::with_capacity(k_blocks);
    let mut alphas = Vec::with_capacity(k_blocks);
    let mut residual: f64 = 0.0;
    let mut any_degenerate = false;

    for (k, (block, &quota)) in partition
        .blocks()
        .iter()
        .zip(partition.quotas())
        .enumerate()
    {
        let total_cost = costs.costs()[k];
        let r0 = total_cost / quota;
        let rates: Vec<f64> = block.iter().map(|&j| costs.rates()[j]).collect();
        let deviations: Vec<f64> = rates.iter().map(|r| r - r0).collect();

        let mut has_pos = false;
        let mut has_neg = false;
        for (&r, &d) in rates.iter().zip(&deviations) {
            let tol = DEVIATION_TOL * r.abs().max(r0.abs());
            if d > tol {
                has_pos = true;
            } else if d < -tol {
                has_neg = true;
            }
        }

        let alpha = match (has_pos, has_neg) {
            // Cost row implied by the quota: uniform split, alpha free.
            (false, false) => {
                any_degenerate = true;
                let share = quota / block.len() as f64;
                for &j in block {
                    f[j] = share;
                }
                lambdas.push(-share.ln() - 1.0);
                alphas.push(0.0);
                0.0
            }
            (true, true) => {
                let alpha = find_alpha_root(&deviations)?;
                // f_j = M e^(-d_j alpha) / sum(e^(-d alpha)), overflow-shifted.
                let shift = deviations
                    .iter()
                    .map(|&d| -d * alpha)
                    .fold(f64::NEG_INFINITY, f64::max);
                let weights: Vec<f64> = deviations
                    .iter()
                    .map(|&d| (-d * alpha - shift).exp())
                    .collect();
                let total: f64 = weights.iter().sum();
                for (&j, &w) in block.iter().zip(&weights) {
                    f[j] = quota * w / total;
                }
                let lse = log_sum_exp(rates.iter().map(|&r| -r * alpha));
                lambdas.push(lse - quota.ln() - 1.0);
                alphas.push(alpha);
                alpha
            }
            // One-sided deviations: the block's quota and cost cannot both
            // hold with positive increments.
            _ => {
                return Err(Error::Infeasible { block: k + 1, r0 });
            }
        };
        let _ = alpha;

        let sum: f64 = block.iter().map(|&j| f[j]).sum();
        let cost_sum: f64 = block.iter().map(|&j| costs.rates()[j] * f[j]).sum();
        residual = residual.max((sum - quota).abs());
        residual = residual.max((cost_sum - total_cost).abs());
    }

    let objective = crate::solvers::evaluate_objective(&f)?;
    let mut multipliers = lambdas;
    multipliers.extend(alphas);
    Ok(MrdpSolution {
        f,
        multipliers,
        objective,
        case: if any_degenerate {
            SolutionCase::UniformDegenerate
        } else {
            SolutionCase::Interior
        },
        residual,
    })
}
