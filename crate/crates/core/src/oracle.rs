//! Brute-force cross-checks for the solvers, deliberately naive.
//!
//! `brute_force_maxent` hill-climbs the objective inside the affine
//! feasible set using random null-space moves; `exhaustive_min_chain`
//! re-derives the power-set divergence by full chain enumeration without
//! any shortcut. Both exist to disagree loudly when a solver is wrong.

use nalgebra::DVector;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grading::GradingFunction;
use crate::powerset::{MaximalChain, PowersetRdResult};
use crate::solvers::ConstraintSystem;
use crate::space::EventSpace;

/// Hill climbing is capped at 8 increments.
pub const MAX_ORACLE_ELEMENTS: usize = 8;
/// Exhaustive chain enumeration in the oracle is capped at 7 elements.
pub const MAX_ORACLE_CHAIN_ELEMENTS: usize = 7;

const STEPS_PER_RESTART: usize = 500;
const STEP_START: f64 = 0.1;
const STEP_END: f64 = 1e-6;

/// Outcome of a brute-force search.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    /// Best feasible increment vector found.
    pub best_f: Vec<f64>,
    /// Its objective `-sum(f ln f)`.
    pub best_objective: f64,
    /// Number of objective evaluations performed.
    pub evaluations: u64,
    /// `|best_objective - reference|` once a solver value is supplied.
    pub agreement_gap: Option<f64>,
}

impl OracleReport {
    /// Records the gap against a solver's objective.
    pub fn with_reference_objective(mut self, objective: f64) -> Self {
        self.agreement_gap = Some((self.best_objective - objective).abs());
        self
    }
}

// Local objective on purpose: the oracle must not share the solvers' code.
fn objective(f: &[f64]) -> f64 {
    f.iter().map(|&x| -x * x.ln()).sum()
}

/// Orthonormal basis of the kernel of `A`, built by Gram-Schmidt over the
/// columns of the projector `I - pinv(A) A`.
pub fn null_space_basis(system: &ConstraintSystem) -> Vec<Vec<f64>> {
    let a = system.matrix();
    let n = system.n();
    let svd = a.clone().svd(true, true);
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for i in 0..n {
        let mut e = DVector::zeros(n);
        e[i] = 1.0;
        // Project onto the kernel: v = e - A^+ (A e).
        let ae = &a * &e;
        let correction = svd.solve(&ae, 1e-12).expect("svd solve");
        let mut v = e - correction;
        for b in &basis {
            let dot = v.dot(b);
            v -= b * dot;
        }
        let norm = v.norm();
        if norm > 1e-8 {
            basis.push(v / norm);
        }
    }
    basis.iter().map(|v| v.iter().copied().collect()).collect()
}

fn feasible_interior_point(system: &ConstraintSystem) -> Result<Vec<f64>> {
    let a = system.matrix();
    let m = DVector::from_column_slice(system.rhs());
    let svd = a.clone().svd(true, true);
    let mut f = svd.solve(&m, 1e-12).map_err(|_| Error::NoFeasiblePoint)?;

    let m_scale = m.amax().max(1e-12);
    if (&a * &f - &m).amax() > 1e-8 * m_scale {
        // The system has no solution at all.
        return Err(Error::NoFeasiblePoint);
    }

    let scale = f.amax().max(m_scale / system.n() as f64);
    let floor = 1e-4 * scale;
    for _ in 0..100 {
        if f.iter().all(|&x| x >= 0.5 * floor)
            && (&a * &f - &m).amax() <= 1e-9 * m_scale.max(scale)
        {
            return Ok(f.iter().copied().collect());
        }
        let clipped = f.map(|x| x.max(floor));
        let violation = &a * &clipped - &m;
        let correction = svd.solve(&violation, 1e-12).map_err(|_| Error::NoFeasiblePoint)?;
        f = clipped - correction;
    }
    Err(Error::NoFeasiblePoint)
}

/// Random-restart hill climbing over `{f : A f = M, f > 0}`. Moves are
/// random directions in the kernel of `A` with a geometrically shrinking
/// step schedule; restart `s` is driven by a ChaCha stream seeded with `s`,
/// so a given restart count always reproduces the same report.
pub fn brute_force_maxent(system: &ConstraintSystem, restarts: u32) -> Result<OracleReport> {
    let n = system.n();
    if n > MAX_ORACLE_ELEMENTS {
        return Err(Error::SpaceTooLarge {
            n,
            cap: MAX_ORACLE_ELEMENTS,
        });
    }
    let start = feasible_interior_point(system)?;
    let basis = null_space_basis(system);
    let decay = if STEPS_PER_RESTART > 1 {
        (STEP_END / STEP_START).powf(1.0 / (STEPS_PER_RESTART as f64 - 1.0))
    } else {
        1.0
    };

    let mut evaluations = 0u64;
    let mut best_f = start.clone();
    let mut best_objective = objective(&start);
    evaluations += 1;

    let random_direction = |rng: &mut ChaCha8Rng| -> Option<Vec<f64>> {
        if basis.is_empty() {
            return None;
        }
        let mut dir = vec![0.0; n];
        for b in &basis {
            let w: f64 = rng.random_range(-1.0..1.0);
            for (d, &bi) in dir.iter_mut().zip(b) {
                *d += w * bi;
            }
        }
        let norm: f64 = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return None;
        }
        for d in &mut dir {
            *d /= norm;
        }
        Some(dir)
    };

    for seed in 0..restarts.max(1) as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Kick off away from the shared start point, keeping positivity.
        let mut current = start.clone();
        if let Some(dir) = random_direction(&mut rng) {
            for _ in 0..20 {
                let kick: f64 = rng.random_range(0.0..0.05);
                let candidate: Vec<f64> = current
                    .iter()
                    .zip(&dir)
                    .map(|(x, d)| x + kick * d)
                    .collect();
                if candidate.iter().all(|&x| x > 0.0) {
                    current = candidate;
                    break;
                }
            }
        }
        let mut current_objective = objective(&current);
        evaluations += 1;

        let mut step = STEP_START;
        for _ in 0..STEPS_PER_RESTART {
            if let Some(dir) = random_direction(&mut rng) {
                let candidate: Vec<f64> = current
                    .iter()
                    .zip(&dir)
                    .map(|(x, d)| x + step * d)
                    .collect();
                if candidate.iter().all(|&x| x > 0.0) {
                    let value = objective(&candidate);
                    evaluations += 1;
                    if value > current_objective {
                        current = candidate;
                        current_objective = value;
                    }
                }
            }
            step *= decay;
        }
        if current_objective > best_objective {
            best_objective = current_objective;
            best_f = current;
        }
    }

    Ok(OracleReport {
        best_f,
        best_objective,
        evaluations,
        agreement_gap: None,
    })
}

/// Power-set divergence by plain exhaustion: every chain, no shortcut.
/// Agrees with [`rd_powerset`](crate::powerset::rd_powerset) on the value,
/// the lexicographically first argmin, and the spread.
pub fn exhaustive_min_chain(
    f: &GradingFunction,
    g: &GradingFunction,
    space: &EventSpace,
) -> Result<PowersetRdResult> {
    let n = space.n();
    if n > MAX_ORACLE_CHAIN_ELEMENTS {
        return Err(Error::SpaceTooLarge {
            n,
            cap: MAX_ORACLE_CHAIN_ELEMENTS,
        });
    }
    if f.n() != n || g.n() != n {
        return Err(Error::DimensionMismatch {
            what: "grading function",
            expected: n,
            got: if f.n() != n { f.n() } else { g.n() },
        });
    }

    fn chain_rd(f: &GradingFunction, g: &GradingFunction, perm: &[usize]) -> Result<f64> {
        let mut mask = 0u32;
        let mut prev_f = f.value(0);
        let mut prev_g = g.value(0);
        let mut sum = 0.0;
        for (step, &p) in perm.iter().enumerate() {
            mask |= 1 << p;
            let cur_f = f.value(mask);
            let cur_g = g.value(mask);
            let df = cur_f - prev_f;
            let dg = cur_g - prev_g;
            if df <= 0.0 || dg <= 0.0 {
                return Err(Error::NonMonotoneAlongChain { step: step + 1 });
            }
            sum += (dg / df).ln() * df;
            prev_f = cur_f;
            prev_g = cur_g;
        }
        Ok(sum)
    }

    // Depth-first over permutations, visiting candidates in ascending index
    // order so chains arrive lexicographically.
    fn visit(
        f: &GradingFunction,
        g: &GradingFunction,
        prefix: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut Option<(f64, Vec<usize>)>,
        worst: &mut f64,
    ) -> Result<()> {
        let n = used.len();
        if prefix.len() == n {
            let value = chain_rd(f, g, prefix)?;
            *worst = worst.max(value);
            match best {
                Some((min, _)) if value >= *min => {}
                _ => *best = Some((value, prefix.clone())),
            }
            return Ok(());
        }
        for p in 0..n {
            if !used[p] {
                used[p] = true;
                prefix.push(p);
                visit(f, g, prefix, used, best, worst)?;
                prefix.pop();
                used[p] = false;
            }
        }
        Ok(())
    }

    let mut best = None;
    let mut worst = f64::NEG_INFINITY;
    visit(
        f,
        g,
        &mut Vec::with_capacity(n),
        &mut vec![false; n],
        &mut best,
        &mut worst,
    )?;
    let (value, perm) = best.expect("at least one chain");
    Ok(PowersetRdResult {
        value,
        argmin_chain: MaximalChain::new(perm)?,
        per_chain_spread: worst - value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powerset::rd_powerset;
    use crate::solvers::{solve_quotas, solve_quotas_costs, CostSpec, Partition};

    #[test]
    fn uniform_distribution_wins_under_a_single_sum_constraint() {
        let system = ConstraintSystem::new(vec![vec![1.0; 3]], vec![1.0]).unwrap();
        let report = brute_force_maxent(&system, 4).unwrap();
        assert!((report.best_objective - 3f64.ln()).abs() < 1e-4);
        for &f in &report.best_f {
            assert!((f - 1.0 / 3.0).abs() < 1e-2, "f = {f}");
        }
        assert!(report.evaluations > 0);
    }

    #[test]
    fn quota_instance_matches_the_closed_form() {
        let partition =
            Partition::new(vec![vec![0, 1], vec![2, 3, 4]], vec![1.0, 6.0]).unwrap();
        let closed = solve_quotas(&partition).unwrap();
        let system = ConstraintSystem::from_partition(&partition);
        let report = brute_force_maxent(&system, 6).unwrap();
        assert!(
            (report.best_objective - closed.objective).abs() < 1e-4,
            "oracle {} vs closed form {}",
            report.best_objective,
            closed.objective
        );
        assert!(report.best_objective <= closed.objective + 1e-9);
    }

    #[test]
    fn cost_instance_matches_the_costs_solver() {
        let partition = Partition::new(vec![vec![0, 1]], vec![1.0]).unwrap();
        let costs = CostSpec::new(vec![1.0, 3.0], vec![1.5]).unwrap();
        let closed = solve_quotas_costs(&partition, &costs).unwrap();
        let system = ConstraintSystem::from_partition_with_costs(&partition, &costs);
        let report = brute_force_maxent(&system, 6).unwrap();
        assert!(
            (report.best_objective - closed.objective).abs() < 1e-4,
            "oracle {} vs solver {}",
            report.best_objective,
            closed.objective
        );
    }

    #[test]
    fn reports_are_deterministic() {
        let system = ConstraintSystem::new(
            vec![vec![1.0, 1.0, 1.0, 1.0], vec![1.0, 2.0, 0.5, 1.5]],
            vec![1.0, 1.2],
        )
        .unwrap();
        let a = brute_force_maxent(&system, 3).unwrap();
        let b = brute_force_maxent(&system, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn inconsistent_systems_report_no_feasible_point() {
        let system =
            ConstraintSystem::new(vec![vec![1.0, 1.0]], vec![-1.0]).unwrap();
        assert_eq!(
            brute_force_maxent(&system, 2).unwrap_err(),
            Error::NoFeasiblePoint
        );
    }

    #[test]
    fn oracle_size_cap_is_enforced() {
        let system = ConstraintSystem::new(vec![vec![1.0; 9]], vec![1.0]).unwrap();
        assert!(matches!(
            brute_force_maxent(&system, 1),
            Err(Error::SpaceTooLarge { n: 9, cap: 8 })
        ));
    }

    #[test]
    fn exhaustion_reproduces_the_two_element_minimum() {
        let space = EventSpace::new(vec!["a", "b"]).unwrap();
        let mu = GradingFunction::table(2, vec![0.0, 0.2, 0.3, 1.0]).unwrap();
        let natural = GradingFunction::cardinality(2);
        let result = exhaustive_min_chain(&mu, &natural, &space).unwrap();
        let expected = -(0.2f64 * 0.2f64.ln() + 0.8 * 0.8f64.ln());
        assert!((result.value - expected).abs() < 1e-12);
        assert_eq!(result.argmin_chain.perm(), &[0, 1]);
    }

    #[test]
    fn exhaustion_sees_zero_spread_for_additive_functions() {
        let space = EventSpace::indexed(4).unwrap();
        let f = GradingFunction::element_additive(vec![0.4, 0.1, 0.3, 0.2]).unwrap();
        let natural = GradingFunction::cardinality(4);
        let result = exhaustive_min_chain(&f, &natural, &space).unwrap();
        assert!(result.per_chain_spread <= 1e-12);
        let shortcut = rd_powerset(&f, &natural, &space).unwrap();
        assert!((result.value - shortcut.value).abs() <= 1e-12);
    }

    #[test]
    fn exhaustion_of_equal_functions_is_zero() {
        let space = EventSpace::indexed(3).unwrap();
        let f = GradingFunction::table(3, vec![0.0, 0.2, 0.3, 0.6, 0.35, 0.7, 0.8, 1.0])
            .unwrap();
        let result = exhaustive_min_chain(&f, &f, &space).unwrap();
        assert_eq!(result.value, 0.0);
    }

    #[test]
    fn exhaustion_cap_is_enforced() {
        let space = EventSpace::indexed(8).unwrap();
        let f = GradingFunction::cardinality(8);
        assert!(matches!(
            exhaustive_min_chain(&f, &f, &space),
            Err(Error::SpaceTooLarge { n: 8, cap: 7 })
        ));
    }
}
