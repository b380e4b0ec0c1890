//! Closed-form solver for element-additive grading functions under
//! partition quotas: each block's quota spreads uniformly over its
//! elements.

use crate::error::{Error, Result};
use crate::solvers::{MrdpSolution, SolutionCase};

/// A partition of the element indices `0..n` with a positive quota per
/// block.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    quotas: Vec<f64>,
    n: usize,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, quotas: Vec<f64>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".to_string()));
        }
        if blocks.len() != quotas.len() {
            return Err(Error::InvalidPartition(format!(
                "{} blocks but {} quotas",
                blocks.len(),
                quotas.len()
            )));
        }
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        let mut seen = vec![false; n];
        for (k, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", k + 1)));
            }
            for &j in block {
                if j >= n || seen[j] {
                    return Err(Error::InvalidPartition(format!(
                        "element index {j} is out of range or repeated"
                    )));
                }
                seen[j] = true;
            }
        }
        for (k, &m) in quotas.iter().enumerate() {
            if !m.is_finite() || m <= 0.0 {
                return Err(Error::InvalidPartition(format!(
                    "quota {m} of block {} is not positive",
                    k + 1
                )));
            }
        }
        Ok(Partition { blocks, quotas, n })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn quotas(&self) -> &[f64] {
        &self.quotas
    }

    /// Total element count.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// Maximizes `-sum(f_i ln f_i)` subject to the block sums hitting their
/// quotas. The blocks decouple, and within a block the optimum is uniform:
/// `f_j = M_k / |X_k|`.
///
/// The objective is assembled blockwise as
/// `sum_k M_k (H(p_k) - ln M_k)` with `p_j = f_j / M_k`, which agrees with
/// [`evaluate_objective`](crate::solvers::evaluate_objective) on the full
/// increment vector.
pub fn solve_quotas(partition: &Partition) -> Result<MrdpSolution> {
    let n = partition.n();
    let mut f = vec![0.0; n];
    let mut multipliers = Vec::with_capacity(partition.block_count());
    let mut objective = 0.0;
    let mut residual: f64 = 0.0;
    for (block, &quota) in partition.blocks().iter().zip(partition.quotas()) {
        let size = block.len() as f64;
        let share = quota / size;
        for &j in block {
            f[j] = share;
        }
        // Stationarity: -ln f - 1 - lambda = 0 on the block.
        multipliers.push(-share.ln() - 1.0);
        // Blockwise decomposition of -sum f ln f with p_j = 1/|X_k| uniform.
        let block_entropy = size.ln();
        objective += quota * (block_entropy - quota.ln());
        let sum: f64 = block.iter().map(|&j| f[j]).sum();
        residual = residual.max((sum - quota).abs());
    }
    Ok(MrdpSolution {
        f,
        multipliers,
        objective,
        case: SolutionCase::Interior,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::evaluate_objective;

    #[test]
    fn quotas_spread_uniformly_within_blocks() {
        let partition =
            Partition::new(vec![vec![0, 1], vec![2, 3, 4]], vec![1.0, 6.0]).unwrap();
        let solution = solve_quotas(&partition).unwrap();
        assert_eq!(solution.f, vec![0.5, 0.5, 2.0, 2.0, 2.0]);
        assert_eq!(solution.case, SolutionCase::Interior);
        assert!(solution.residual <= 1e-12);
    }

    #[test]
    fn single_block_reduces_to_the_uniform_distribution() {
        let partition = Partition::new(vec![vec![0, 1, 2, 3]], vec![1.0]).unwrap();
        let solution = solve_quotas(&partition).unwrap();
        assert_eq!(solution.f, vec![0.25; 4]);
        assert!((solution.objective - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn singleton_blocks_are_forced_to_their_quotas() {
        let partition =
            Partition::new(vec![vec![0], vec![1], vec![2]], vec![0.3, 1.2, 2.0]).unwrap();
        let solution = solve_quotas(&partition).unwrap();
        assert_eq!(solution.f, vec![0.3, 1.2, 2.0]);
    }

    #[test]
    fn blockwise_objective_agrees_with_direct_evaluation() {
        let partition = Partition::new(
            vec![vec![0, 3], vec![1, 2, 5], vec![4]],
            vec![0.7, 2.5, 1.1],
        )
        .unwrap();
        let solution = solve_quotas(&partition).unwrap();
        let direct = evaluate_objective(&solution.f).unwrap();
        assert!(
            (solution.objective - direct).abs() < 1e-12,
            "{} vs {}",
            solution.objective,
            direct
        );
    }

    #[test]
    fn stationarity_holds_for_the_reported_multipliers() {
        let partition =
            Partition::new(vec![vec![0, 1], vec![2, 3, 4]], vec![1.0, 6.0]).unwrap();
        let solution = solve_quotas(&partition).unwrap();
        for (k, block) in partition.blocks().iter().enumerate() {
            for &j in block {
                let g = -solution.f[j].ln() - 1.0 - solution.multipliers[k];
                assert!(g.abs() < 1e-12, "element {j}");
            }
        }
    }

    #[test]
    fn invalid_partitions_are_rejected() {
        assert!(matches!(
            Partition::new(vec![], vec![]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::new(vec![vec![0], vec![0]], vec![1.0, 1.0]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::new(vec![vec![0, 1]], vec![-2.0]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::new(vec![vec![0], vec![]], vec![1.0, 1.0]),
            Err(Error::InvalidPartition(_))
        ));
    }
}
