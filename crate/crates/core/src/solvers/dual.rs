//! Lagrange-dual solver for general linear equality constraints.
//!
//! Stationarity of `-sum(f_i ln f_i)` under `A f = M` forces
//! `f_i = e^(-1 - lambda . A_i)` with `A_i` the i-th column of `A`. The
//! multipliers solve `A f(lambda) = M`, which is the gradient system of the
//! smooth convex dual potential
//! `Phi(lambda) = sum_i e^(-1 - lambda . A_i) + lambda . M`.
//! A damped Newton iteration minimizes `Phi`; if `Phi` has no finite
//! minimizer the constraints admit no strictly positive solution and the
//! iteration is reported as divergent.

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::solvers::quotas::Partition;
use crate::solvers::{CardinalityAnchors, CostSpec, MrdpSolution, SolutionCase};

/// Relative threshold on singular values under which `A` counts as rank
/// deficient.
const RANK_TOL: f64 = 1e-10;

const MAX_NEWTON_ITERS: usize = 500;

/// `K` linear equality constraints `A f = M` on the `n` increments,
/// with `A` of full row rank.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

impl ConstraintSystem {
    pub fn new(rows: Vec<Vec<f64>>, rhs: Vec<f64>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidPartition("no constraint rows".to_string()));
        }
        if rows.len() != rhs.len() {
            return Err(Error::DimensionMismatch {
                what: "constraint right-hand side",
                expected: rows.len(),
                got: rhs.len(),
            });
        }
        let n = rows[0].len();
        if n == 0 || rows.len() > n {
            return Err(Error::InvalidPartition(format!(
                "{} constraints on {} increments",
                rows.len(),
                n
            )));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    what: "constraint row",
                    expected: n,
                    got: row.len(),
                });
            }
            for &a in row {
                if !a.is_finite() {
                    return Err(Error::NonFinite {
                        context: "constraint matrix",
                        value: a,
                    });
                }
            }
        }
        for &m in &rhs {
            if !m.is_finite() {
                return Err(Error::NonFinite {
                    context: "constraint right-hand side",
                    value: m,
                });
            }
        }
        let system = ConstraintSystem { rows, rhs };
        let svals = system.matrix().singular_values();
        let smax = svals.max();
        let smin = svals.min();
        if !(smin > RANK_TOL * smax) {
            return Err(Error::RankDeficient { smin, smax });
        }
        Ok(system)
    }

    /// Indicator rows of a partition: row `k` selects block `k`, with the
    /// quota on the right-hand side.
    pub fn from_partition(partition: &Partition) -> Self {
        let n = partition.n();
        let rows = partition
            .blocks()
            .iter()
            .map(|block| {
                let mut row = vec![0.0; n];
                for &j in block {
                    row[j] = 1.0;
                }
                row
            })
            .collect();
        ConstraintSystem {
            rows,
            rhs: partition.quotas().to_vec(),
        }
    }

    /// Partition indicator rows followed by the per-block rate rows, with
    /// quotas then costs on the right-hand side.
    pub fn from_partition_with_costs(partition: &Partition, costs: &CostSpec) -> Self {
        let n = partition.n();
        let base = ConstraintSystem::from_partition(partition);
        let mut rows = base.rows;
        let mut rhs = base.rhs;
        for (block, &q) in partition.blocks().iter().zip(costs.costs()) {
            let mut row = vec![0.0; n];
            for &j in block {
                row[j] = costs.rates()[j];
            }
            rows.push(row);
            rhs.push(q);
        }
        ConstraintSystem { rows, rhs }
    }

    /// Interval-indicator rows of a cardinality anchor system: the steps
    /// between consecutive anchors must sum to the anchor value difference.
    pub fn from_anchors(anchors: &CardinalityAnchors) -> Self {
        let n = anchors.n();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for window in anchors.pairs().windows(2) {
            let (n_prev, m_prev) = window[0];
            let (n_next, m_next) = window[1];
            let mut row = vec![0.0; n];
            for item in row.iter_mut().take(n_next).skip(n_prev) {
                *item = 1.0;
            }
            rows.push(row);
            rhs.push(m_next - m_prev);
        }
        ConstraintSystem { rows, rhs }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    /// Number of increments.
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    /// Number of constraints.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// `A f` for a candidate increment vector.
    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(f).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// `max_k |(A f - M)_k|`.
    pub fn residual(&self, f: &[f64]) -> f64 {
        self.apply(f)
            .iter()
            .zip(&self.rhs)
            .map(|(af, m)| (af - m).abs())
            .fold(0.0, f64::max)
    }

    /// `lambda . A_i` for column `i`.
    pub fn column_dot(&self, i: usize, lambda: &[f64]) -> f64 {
        self.rows.iter().zip(lambda).map(|(row, l)| row[i] * l).sum()
    }

    pub(crate) fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.k(), self.n(), |k, i| self.rows[k][i])
    }
}

fn increments_for(a: &DMatrix<f64>, lambda: &DVector<f64>) -> DVector<f64> {
    // f_i = e^(-1 - lambda . A_i)
    let exponents = a.tr_mul(lambda);
    DVector::from_fn(a.ncols(), |i, _| (-1.0 - exponents[i]).exp())
}

fn potential(f: &DVector<f64>, lambda: &DVector<f64>, m: &DVector<f64>) -> f64 {
    f.sum() + lambda.dot(m)
}

/// Finds the multipliers of the stationarity system `A f(lambda) = M` by
/// damped Newton descent on the dual potential, then reads the increments
/// off the exponential formula. Errors with [`Error::DualDivergence`] when
/// the potential has no finite minimizer (infeasible constraints or a
/// boundary-only solution).
pub fn solve_linear_constraints(system: &ConstraintSystem) -> Result<MrdpSolution> {
    let a = system.matrix();
    let m = DVector::from_column_slice(system.rhs());
    let k = system.k();

    let m_scale = m.amax().max(1e-12);
    let tol = 1e-11 * m_scale;

    let mut lambda = DVector::zeros(k);
    let mut f = increments_for(&a, &lambda);
    let mut converged = false;
    let mut iterations = 0;

    for iter in 0..MAX_NEWTON_ITERS {
        iterations = iter;
        let gradient = &m - &a * &f;
        if gradient.amax() <= tol {
            converged = true;
            break;
        }

        // Hessian A diag(f) A^T, positive definite for full-rank A.
        let mut hessian = DMatrix::zeros(k, k);
        for i in 0..a.ncols() {
            let col = a.column(i);
            for r in 0..k {
                for c in 0..k {
                    hessian[(r, c)] += col[r] * col[c] * f[i];
                }
            }
        }
        let direction = match Cholesky::new(hessian) {
            Some(chol) => -chol.solve(&gradient),
            // Ill-conditioned Hessian: fall back to plain gradient descent.
            None => -gradient.clone(),
        };

        let slope = gradient.dot(&direction);
        let phi = potential(&f, &lambda, &m);

        // Near the minimizer the predicted decrease drops below the float
        // resolution of the potential and the damped test cannot see it;
        // the raw Newton step still converges quadratically, so take it.
        if slope.abs() <= 1e-13 * (1.0 + phi.abs()) {
            let candidate = &lambda + &direction;
            let f_candidate = increments_for(&a, &candidate);
            if f_candidate.iter().all(|x| x.is_finite()) {
                lambda = candidate;
                f = f_candidate;
                continue;
            }
        }

        let mut step = 1.0;
        let mut accepted = false;
        while step > 1e-18 {
            let candidate = &lambda + &direction * step;
            let f_candidate = increments_for(&a, &candidate);
            let phi_candidate = potential(&f_candidate, &candidate, &m);
            if phi_candidate.is_finite() && phi_candidate <= phi + 1e-4 * step * slope {
                lambda = candidate;
                f = f_candidate;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }

    if !converged {
        return Err(Error::DualDivergence { iterations });
    }
    let f: Vec<f64> = f.iter().copied().collect();
    let max_f = f.iter().fold(0.0f64, |acc, &x| acc.max(x));
    if f.iter().any(|&x| x < 1e-250 * max_f.max(1.0)) {
        // Effectively a boundary point: some increment collapsed to zero.
        return Err(Error::DualDivergence { iterations });
    }
    let objective = crate::solvers::evaluate_objective(&f)?;
    Ok(MrdpSolution {
        residual: system.residual(&f),
        f,
        multipliers: lambda.iter().copied().collect(),
        objective,
        case: SolutionCase::Interior,
    })
}
