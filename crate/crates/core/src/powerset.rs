//! Maximal chains of the subset-inclusion lattice and divergence on the
//! whole power set.
//!
//! Every maximal chain of `2^X` is a permutation of the elements of `X`:
//! start from the empty set and add one element per step. The divergence of
//! two grading functions on the power set is the minimum of the chain
//! divergences over all `n!` maximal chains, so the enumeration cap is kept
//! at desk scale.

use crate::divergence::{rd_chain, shannon_entropy, ChainGrades, PROBABILITY_TOL};
use crate::error::{Error, Result};
use crate::grading::GradingFunction;
use crate::space::EventSpace;

/// Exhaustive chain enumeration is capped at 10 elements (10! chains).
pub const MAX_ENUM_ELEMENTS: usize = 10;

/// A maximal chain of `2^X`, stored as the permutation of element indices
/// in insertion order: step `i` adds element `perm[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MaximalChain {
    perm: Vec<usize>,
}

impl MaximalChain {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidPermutation(perm.clone()));
            }
            seen[p] = true;
        }
        Ok(MaximalChain { perm })
    }

    /// The lexicographically first chain: elements added in index order.
    pub fn identity(n: usize) -> Self {
        MaximalChain {
            perm: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Bitmasks `w_0 = 0, w_1, ..., w_n = X` of the chain subsets.
    pub fn subset_masks(&self) -> Vec<u32> {
        let mut masks = Vec::with_capacity(self.perm.len() + 1);
        let mut mask = 0u32;
        masks.push(mask);
        for &p in &self.perm {
            mask |= 1 << p;
            masks.push(mask);
        }
        masks
    }

    /// Labels of the added elements, in insertion order.
    pub fn labels<'a>(&self, space: &'a EventSpace) -> Vec<&'a str> {
        self.perm.iter().map(|&p| space.label(p)).collect()
    }
}

/// Lazy iterator over all maximal chains in lexicographic permutation order.
pub struct ChainIter {
    perm: Vec<usize>,
    started: bool,
    done: bool,
}

impl Iterator for ChainIter {
    type Item = MaximalChain;

    fn next(&mut self) -> Option<MaximalChain> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(MaximalChain {
                perm: self.perm.clone(),
            });
        }
        // Classic next-permutation step.
        let n = self.perm.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| self.perm[i] < self.perm[i + 1])
        else {
            self.done = true;
            return None;
        };
        let j = (i + 1..n).rev().find(|&j| self.perm[j] > self.perm[i]).unwrap();
        self.perm.swap(i, j);
        self.perm[i + 1..].reverse();
        Some(MaximalChain {
            perm: self.perm.clone(),
        })
    }
}

/// Streams the `n!` maximal chains of `2^X` lazily, in lexicographic order.
pub fn enumerate_chains(space: &EventSpace) -> Result<ChainIter> {
    let n = space.n();
    if n > MAX_ENUM_ELEMENTS {
        return Err(Error::SpaceTooLarge {
            n,
            cap: MAX_ENUM_ELEMENTS,
        });
    }
    Ok(ChainIter {
        perm: (0..n).collect(),
        started: false,
        done: false,
    })
}

/// Grades of `f` along the chain `mc`, as a strictly increasing sequence.
pub fn restrict_to_chain(f: &GradingFunction, mc: &MaximalChain) -> Result<ChainGrades> {
    if f.n() != mc.n() {
        return Err(Error::DimensionMismatch {
            what: "chain restriction",
            expected: f.n(),
            got: mc.n(),
        });
    }
    let values: Vec<f64> = mc.subset_masks().iter().map(|&m| f.value(m)).collect();
    ChainGrades::new(values).map_err(|err| match err {
        Error::NonMonotoneChain { index, .. } => Error::NonMonotoneAlongChain { step: index },
        other => other,
    })
}

/// The element-additive grading function subordinate to `f` on `mc`: its
/// increments are read off the chain, so it agrees with `f` at every subset
/// of the chain.
pub fn subordinate_additive(f: &GradingFunction, mc: &MaximalChain) -> Result<GradingFunction> {
    if let GradingFunction::ElementAdditive { .. } = f {
        // Already element-additive: subordination is a fixed point.
        if f.n() != mc.n() {
            return Err(Error::DimensionMismatch {
                what: "chain restriction",
                expected: f.n(),
                got: mc.n(),
            });
        }
        return Ok(f.clone());
    }
    let grades = restrict_to_chain(f, mc)?;
    let steps = grades.increments();
    let mut increments = vec![0.0; mc.n()];
    for (i, &p) in mc.perm().iter().enumerate() {
        increments[p] = steps[i];
    }
    GradingFunction::element_additive(increments)
}

/// Result of minimizing chain divergence over all maximal chains.
#[derive(Debug, Clone, PartialEq)]
pub struct PowersetRdResult {
    /// The minimum chain divergence.
    pub value: f64,
    /// Lexicographically first chain attaining the minimum.
    pub argmin_chain: MaximalChain,
    /// Max minus min of the per-chain divergences (0 for equilateral pairs).
    pub per_chain_spread: f64,
}

/// Outcome of the equilateral test: whether the divergence from the
/// cardinality function is chain-independent, and by how much it is not.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilateralCheck {
    pub equilateral: bool,
    pub spread: f64,
}

fn uniform_profile_steps(profile: &[f64]) -> bool {
    let first = profile[1] - profile[0];
    profile
        .windows(2)
        .all(|w| w[1] - w[0] == first)
}

/// True when the chain divergence of the pair provably does not depend on
/// the chain, so a single chain stands in for all of them. Element-additive
/// pairs and cardinality pairs qualify; a mixed pair qualifies only when the
/// cardinality side has uniform steps (the natural function N does).
fn chain_invariant_pair(f: &GradingFunction, g: &GradingFunction) -> bool {
    use GradingFunction::*;
    match (f, g) {
        (ElementAdditive { .. }, ElementAdditive { .. }) => true,
        (CardinalityProfile { .. }, CardinalityProfile { .. }) => true,
        (ElementAdditive { .. }, CardinalityProfile { profile })
        | (CardinalityProfile { profile }, ElementAdditive { .. }) => {
            uniform_profile_steps(profile)
        }
        _ => false,
    }
}

fn check_dims(f: &GradingFunction, g: &GradingFunction, space: &EventSpace) -> Result<()> {
    if f.n() != space.n() {
        return Err(Error::DimensionMismatch {
            what: "grading function F",
            expected: space.n(),
            got: f.n(),
        });
    }
    if g.n() != space.n() {
        return Err(Error::DimensionMismatch {
            what: "grading function G",
            expected: space.n(),
            got: g.n(),
        });
    }
    Ok(())
}

/// Relative divergence of `f` from `g` on the whole power set: the minimum
/// of the chain divergences over all maximal chains, with the
/// lexicographically first minimizer and the max-min spread.
pub fn rd_powerset(
    f: &GradingFunction,
    g: &GradingFunction,
    space: &EventSpace,
) -> Result<PowersetRdResult> {
    check_dims(f, g, space)?;
    if chain_invariant_pair(f, g) {
        let mc = MaximalChain::identity(space.n());
        let value = rd_chain(&restrict_to_chain(f, &mc)?, &restrict_to_chain(g, &mc)?)?;
        return Ok(PowersetRdResult {
            value,
            argmin_chain: mc,
            per_chain_spread: 0.0,
        });
    }
    let mut best: Option<(f64, MaximalChain)> = None;
    let mut max = f64::NEG_INFINITY;
    for mc in enumerate_chains(space)? {
        let value = rd_chain(&restrict_to_chain(f, &mc)?, &restrict_to_chain(g, &mc)?)?;
        max = max.max(value);
        match &best {
            Some((min, _)) if value >= *min => {}
            _ => best = Some((value, mc)),
        }
    }
    let (value, argmin_chain) = best.expect("n >= 1 yields at least one chain");
    Ok(PowersetRdResult {
        value,
        argmin_chain,
        per_chain_spread: max - value,
    })
}

/// Shannon entropy of a normalized measure on the power set: the minimum
/// over maximal chains of the entropy of the chain increments. Requires
/// `mu` to grade 0 at the empty set and 1 at X.
pub fn entropy_powerset(mu: &GradingFunction) -> Result<f64> {
    let span = mu.span();
    if (span - 1.0).abs() > PROBABILITY_TOL || mu.value(0) != 0.0 {
        return Err(Error::NotNormalizedMeasure { span });
    }
    let space = EventSpace::indexed(mu.n())?;
    if chain_invariant_pair(mu, &GradingFunction::cardinality(mu.n())) {
        let mc = MaximalChain::identity(mu.n());
        let grades = restrict_to_chain(mu, &mc)?;
        return shannon_entropy(&grades.increments());
    }
    let mut min = f64::INFINITY;
    for mc in enumerate_chains(&space)? {
        let grades = restrict_to_chain(mu, &mc)?;
        let h = shannon_entropy(&grades.increments())?;
        min = min.min(h);
    }
    Ok(min)
}

/// Tests whether `f` diverges from the cardinality function by the same
/// amount along every maximal chain. Always enumerates: the spread is the
/// point of the check, so no equilateral-by-construction shortcut applies.
pub fn is_equilateral(
    f: &GradingFunction,
    space: &EventSpace,
    tol: f64,
) -> Result<EquilateralCheck> {
    let natural = GradingFunction::cardinality(space.n());
    check_dims(f, &natural, space)?;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for mc in enumerate_chains(space)? {
        let value = rd_chain(
            &restrict_to_chain(f, &mc)?,
            &restrict_to_chain(&natural, &mc)?,
        )?;
        min = min.min(value);
        max = max.max(value);
    }
    let spread = max - min;
    Ok(EquilateralCheck {
        equilateral: spread <= tol,
        spread,
    })
}

/// Default absolute tolerance for the equilateral test.
pub const EQUILATERAL_TOL: f64 = 1e-9;

#[cfg(test)]
mod tests {
    use super::*;

    fn two_element_measure() -> GradingFunction {
        // mu(empty) = 0, mu({a}) = 0.2, mu({b}) = 0.3, mu(X) = 1.
        GradingFunction::table(2, vec![0.0, 0.2, 0.3, 1.0]).unwrap()
    }

    fn h2(p: f64) -> f64 {
        -(p * p.ln() + (1.0 - p) * (1.0 - p).ln())
    }

    #[test]
    fn single_element_space_has_one_chain() {
        let space = EventSpace::indexed(1).unwrap();
        let chains: Vec<_> = enumerate_chains(&space).unwrap().collect();
        assert_eq!(chains, vec![MaximalChain::identity(1)]);
    }

    #[test]
    fn three_element_chains_come_in_lexicographic_order() {
        let space = EventSpace::indexed(3).unwrap();
        let perms: Vec<Vec<usize>> = enumerate_chains(&space)
            .unwrap()
            .map(|mc| mc.perm().to_vec())
            .collect();
        assert_eq!(
            perms,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let space = EventSpace::indexed(11).unwrap();
        assert_eq!(
            enumerate_chains(&space).err(),
            Some(Error::SpaceTooLarge { n: 11, cap: 10 })
        );
    }

    #[test]
    fn chain_counts_match_factorials() {
        for n in 1..=7usize {
            let space = EventSpace::indexed(n).unwrap();
            let count = enumerate_chains(&space).unwrap().count();
            let factorial: usize = (1..=n).product();
            assert_eq!(count, factorial, "n = {n}");
        }
    }

    #[test]
    fn restriction_takes_partial_sums_of_additive_increments() {
        let f = GradingFunction::element_additive(vec![0.2, 0.8]).unwrap();
        let forward = restrict_to_chain(&f, &MaximalChain::new(vec![0, 1]).unwrap()).unwrap();
        assert_eq!(forward.values(), &[0.0, 0.2, 1.0]);
        let backward = restrict_to_chain(&f, &MaximalChain::new(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(backward.values(), &[0.0, 0.8, 1.0]);
    }

    #[test]
    fn restriction_of_cardinality_profile_ignores_the_chain() {
        let f = GradingFunction::cardinality_profile(vec![0.0, 1.0, 2.0]).unwrap();
        for perm in [vec![0, 1], vec![1, 0]] {
            let grades = restrict_to_chain(&f, &MaximalChain::new(perm).unwrap()).unwrap();
            assert_eq!(grades.values(), &[0.0, 1.0, 2.0]);
        }
    }

    #[test]
    fn subordinate_reads_increments_along_the_chain() {
        let mu = two_element_measure();
        let forward = subordinate_additive(&mu, &MaximalChain::new(vec![0, 1]).unwrap()).unwrap();
        match &forward {
            GradingFunction::ElementAdditive { increments } => {
                assert_eq!(increments, &vec![0.2, 0.8]);
            }
            other => panic!("unexpected variant {other:?}"),
        }
        let backward = subordinate_additive(&mu, &MaximalChain::new(vec![1, 0]).unwrap()).unwrap();
        match &backward {
            GradingFunction::ElementAdditive { increments } => {
                assert_eq!(increments, &vec![0.7, 0.3]);
            }
            other => panic!("unexpected variant {other:?}"),
        }
    }

    #[test]
    fn subordinate_agrees_with_the_source_on_chain_subsets() {
        let mu = two_element_measure();
        let mc = MaximalChain::new(vec![1, 0]).unwrap();
        let sub = subordinate_additive(&mu, &mc).unwrap();
        for mask in mc.subset_masks() {
            assert_eq!(sub.value(mask), mu.value(mask), "mask {mask:#b}");
        }
    }

    #[test]
    fn subordinate_of_additive_function_is_itself() {
        let f = GradingFunction::element_additive(vec![0.4, 1.1, 0.5]).unwrap();
        let mc = MaximalChain::new(vec![2, 0, 1]).unwrap();
        assert_eq!(subordinate_additive(&f, &mc).unwrap(), f);
    }

    #[test]
    fn powerset_rd_picks_the_smaller_chain_entropy() {
        let space = EventSpace::new(vec!["a", "b"]).unwrap();
        let mu = two_element_measure();
        let natural = GradingFunction::cardinality(2);
        let result = rd_powerset(&mu, &natural, &space).unwrap();
        assert!((result.value - h2(0.2)).abs() < 1e-12, "value {}", result.value);
        assert_eq!(result.argmin_chain.perm(), &[0, 1]);
        assert!((result.per_chain_spread - (h2(0.3) - h2(0.2))).abs() < 1e-12);
    }

    #[test]
    fn additive_f_against_natural_short_circuits_with_zero_spread() {
        let space = EventSpace::indexed(4).unwrap();
        let f = GradingFunction::element_additive(vec![0.5, 1.5, 2.0, 1.0]).unwrap();
        let natural = GradingFunction::cardinality(4);
        let result = rd_powerset(&f, &natural, &space).unwrap();
        assert_eq!(result.per_chain_spread, 0.0);
        let mc = MaximalChain::identity(4);
        let direct = rd_chain(
            &restrict_to_chain(&f, &mc).unwrap(),
            &restrict_to_chain(&natural, &mc).unwrap(),
        )
        .unwrap();
        assert_eq!(result.value, direct);
    }

    #[test]
    fn rd_powerset_of_equal_functions_is_zero() {
        let space = EventSpace::indexed(3).unwrap();
        let f = GradingFunction::table(
            3,
            vec![0.0, 0.3, 0.5, 0.9, 0.4, 0.8, 1.1, 2.0],
        )
        .unwrap();
        let result = rd_powerset(&f, &f, &space).unwrap();
        assert_eq!(result.value, 0.0);
        assert_eq!(result.per_chain_spread, 0.0);
    }

    #[test]
    fn entropy_powerset_matches_hand_enumeration() {
        let mu = two_element_measure();
        let h = entropy_powerset(&mu).unwrap();
        assert!((h - h2(0.2)).abs() < 1e-12, "h = {h}");
    }

    #[test]
    fn entropy_of_uniform_additive_measure_is_ln_n() {
        for n in 2..=5usize {
            let mu =
                GradingFunction::element_additive(vec![1.0 / n as f64; n]).unwrap();
            let h = entropy_powerset(&mu).unwrap();
            assert!((h - (n as f64).ln()).abs() < 1e-12, "n = {n}, h = {h}");
        }
    }

    #[test]
    fn degenerate_dirac_measure_is_rejected_at_construction() {
        // mu(w) = 1 iff w contains x1: flat in the second coordinate.
        let err = GradingFunction::table(2, vec![0.0, 1.0, 0.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NonMonotoneGrading { .. }));
    }

    #[test]
    fn entropy_powerset_rejects_unnormalized_measures() {
        let mu = GradingFunction::element_additive(vec![0.5, 1.5]).unwrap();
        assert!(matches!(
            entropy_powerset(&mu),
            Err(Error::NotNormalizedMeasure { .. })
        ));
    }

    #[test]
    fn additive_and_cardinality_functions_are_equilateral() {
        let space = EventSpace::indexed(4).unwrap();
        let f = GradingFunction::element_additive(vec![0.1, 2.0, 0.7, 1.2]).unwrap();
        let check = is_equilateral(&f, &space, EQUILATERAL_TOL).unwrap();
        assert!(check.equilateral, "spread {}", check.spread);

        let g = GradingFunction::cardinality_profile(vec![0.0, 0.5, 0.7, 2.0, 2.5]).unwrap();
        let check = is_equilateral(&g, &space, EQUILATERAL_TOL).unwrap();
        assert!(check.equilateral, "spread {}", check.spread);
    }

    #[test]
    fn the_two_element_measure_is_not_equilateral() {
        let space = EventSpace::new(vec!["a", "b"]).unwrap();
        let mu = two_element_measure();
        let check = is_equilateral(&mu, &space, EQUILATERAL_TOL).unwrap();
        assert!(!check.equilateral);
        let expected = h2(0.3) - h2(0.2);
        assert!((check.spread - expected).abs() < 1e-9, "spread {}", check.spread);
    }
}
