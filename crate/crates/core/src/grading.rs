//! Grading functions on the power set of a finite event space.
//!
//! A grading function is strictly monotone under subset inclusion. Three
//! storage variants cover the cases treated here: an explicit table over all
//! `2^n` subsets, an element-additive increment vector, and a profile that
//! depends on subset cardinality only. Grades are shift-normalized on
//! construction so that the empty set always grades 0; relative divergence is
//! shift-invariant, so nothing is lost.

use crate::error::{Error, Result};

/// Relative slack under which an increment counts as non-positive: increments
/// at or below `INCREMENT_TOL * span` are rejected as non-monotone.
pub const INCREMENT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum GradingFunction {
    /// Grades for every subset, indexed by bitmask. `values.len() == 2^n`.
    Table { n: usize, values: Vec<f64> },
    /// `F(w) = sum of increments[j] over elements j in w`.
    ElementAdditive { increments: Vec<f64> },
    /// `F(w) = profile[|w|]`. `profile.len() == n + 1`.
    CardinalityProfile { profile: Vec<f64> },
}

fn check_finite(values: &[f64], context: &'static str) -> Result<()> {
    for &v in values {
        if !v.is_finite() {
            return Err(Error::NonFinite { context, value: v });
        }
    }
    Ok(())
}

impl GradingFunction {
    /// Builds the table variant from grades listed in bitmask order.
    /// Shifts grades so the empty set grades 0, then verifies strict
    /// monotonicity by comparing every subset against its single-element
    /// supersets.
    pub fn table(n: usize, values: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let size = 1usize << n;
        if values.len() != size {
            return Err(Error::DimensionMismatch {
                what: "grading table",
                expected: size,
                got: values.len(),
            });
        }
        check_finite(&values, "grading table")?;
        let base = values[0];
        let values: Vec<f64> = values.iter().map(|v| v - base).collect();
        let span = values[size - 1];
        if span <= 0.0 {
            return Err(Error::ZeroSpan);
        }
        let tol = INCREMENT_TOL * span;
        for mask in 0..size as u32 {
            for element in 0..n {
                let bit = 1u32 << element;
                if mask & bit == 0 {
                    let step = values[(mask | bit) as usize] - values[mask as usize];
                    if step <= tol {
                        return Err(Error::NonMonotoneGrading { mask, element });
                    }
                }
            }
        }
        Ok(GradingFunction::Table { n, values })
    }

    /// Builds the element-additive variant from per-element increments.
    pub fn element_additive(increments: Vec<f64>) -> Result<Self> {
        if increments.is_empty() {
            return Err(Error::EmptySpace);
        }
        check_finite(&increments, "element increments")?;
        let span: f64 = increments.iter().sum();
        let tol = INCREMENT_TOL * span.max(0.0);
        for (index, &value) in increments.iter().enumerate() {
            if value <= tol || value <= 0.0 {
                return Err(Error::NonPositiveIncrement { index, value });
            }
        }
        Ok(GradingFunction::ElementAdditive { increments })
    }

    /// Builds the cardinality-dependent variant from `F(0), F(1), ..., F(n)`.
    pub fn cardinality_profile(profile: Vec<f64>) -> Result<Self> {
        if profile.len() < 2 {
            return Err(Error::ChainTooShort {
                len: profile.len(),
            });
        }
        check_finite(&profile, "cardinality profile")?;
        let base = profile[0];
        let profile: Vec<f64> = profile.iter().map(|v| v - base).collect();
        let span = profile[profile.len() - 1];
        let tol = INCREMENT_TOL * span.max(0.0);
        for index in 1..profile.len() {
            let step = profile[index] - profile[index - 1];
            if step <= tol || step <= 0.0 {
                return Err(Error::NonMonotoneChain { index, value: step });
            }
        }
        Ok(GradingFunction::CardinalityProfile { profile })
    }

    /// The natural grading function `N(w) = |w|`.
    pub fn cardinality(n: usize) -> Self {
        GradingFunction::CardinalityProfile {
            profile: (0..=n).map(|i| i as f64).collect(),
        }
    }

    /// Number of elements of the underlying event space.
    pub fn n(&self) -> usize {
        match self {
            GradingFunction::Table { n, .. } => *n,
            GradingFunction::ElementAdditive { increments } => increments.len(),
            GradingFunction::CardinalityProfile { profile } => profile.len() - 1,
        }
    }

    /// Grade of the subset given by `mask`.
    pub fn value(&self, mask: u32) -> f64 {
        match self {
            GradingFunction::Table { values, .. } => values[mask as usize],
            GradingFunction::ElementAdditive { increments } => increments
                .iter()
                .enumerate()
                .filter(|(j, _)| mask & (1 << j) != 0)
                .map(|(_, v)| v)
                .sum(),
            GradingFunction::CardinalityProfile { profile } => {
                profile[mask.count_ones() as usize]
            }
        }
    }

    /// `F(X) - F(empty)`; strictly positive for any constructed function.
    pub fn span(&self) -> f64 {
        let full = if self.n() >= 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        };
        self.value(full) - self.value(0)
    }

    /// Rescales onto `[0, 1]`, reporting the image bounds alongside.
    pub fn normalized(&self) -> Result<NormalizedView> {
        let span = self.span();
        if !(span > 0.0) || !span.is_finite() {
            return Err(Error::ZeroSpan);
        }
        let min = self.value(0);
        let hat = match self {
            GradingFunction::Table { n, values } => GradingFunction::Table {
                n: *n,
                values: values.iter().map(|v| v / span).collect(),
            },
            GradingFunction::ElementAdditive { increments } => {
                GradingFunction::ElementAdditive {
                    increments: increments.iter().map(|v| v / span).collect(),
                }
            }
            GradingFunction::CardinalityProfile { profile } => {
                GradingFunction::CardinalityProfile {
                    profile: profile.iter().map(|v| v / span).collect(),
                }
            }
        };
        Ok(NormalizedView {
            min,
            max: min + span,
            span,
            hat,
        })
    }
}

/// A grading function rescaled onto `[0, 1]`, together with the bounds of the
/// original image.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedView {
    /// Infimum of the original image (0 after canonical shifting).
    pub min: f64,
    /// Supremum of the original image.
    pub max: f64,
    /// `max - min`.
    pub span: f64,
    /// The rescaled grading function, grading 0 at the empty set and 1 at X.
    pub hat: GradingFunction,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shift_normalizes_empty_set_to_zero() {
        // |X| = 1, grades (2, 6): canonical form is (0, 4).
        let f = GradingFunction::table(1, vec![2.0, 6.0]).unwrap();
        assert_eq!(f.value(0), 0.0);
        assert_eq!(f.value(1), 4.0);
        let view = f.normalized().unwrap();
        assert_eq!(view.span, 4.0);
        assert_eq!(view.hat.value(0), 0.0);
        assert_eq!(view.hat.value(1), 1.0);
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = GradingFunction::element_additive(vec![0.25, 0.75]).unwrap();
        let view = f.normalized().unwrap();
        assert_eq!(view.span, 1.0);
        assert_eq!(view.hat, f);
    }

    #[test]
    fn element_additive_normalization_scales_increments() {
        let f = GradingFunction::element_additive(vec![1.0, 3.0]).unwrap();
        let view = f.normalized().unwrap();
        assert_eq!(view.min, 0.0);
        assert_eq!(view.span, 4.0);
        match view.hat {
            GradingFunction::ElementAdditive { increments } => {
                assert_eq!(increments, vec![0.25, 0.75]);
            }
            other => panic!("unexpected variant {other:?}"),
        }
    }

    #[test]
    fn table_rejects_non_monotone_grades() {
        // mu(a) = 1 iff a contains x1: flat along the second element.
        let err = GradingFunction::table(2, vec![0.0, 1.0, 0.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::NonMonotoneGrading { .. }));
    }

    #[test]
    fn element_additive_rejects_non_positive_increments() {
        let err = GradingFunction::element_additive(vec![0.5, 0.0]).unwrap_err();
        assert!(matches!(err, Error::NonPositiveIncrement { index: 1, .. }));
        let err = GradingFunction::element_additive(vec![1.0, -0.1]).unwrap_err();
        assert!(matches!(err, Error::NonPositiveIncrement { index: 1, .. }));
    }

    #[test]
    fn cardinality_profile_values_depend_only_on_popcount() {
        let f = GradingFunction::cardinality_profile(vec![0.0, 1.0, 3.0]).unwrap();
        assert_eq!(f.value(0b01), f.value(0b10));
        assert_eq!(f.value(0b11), 3.0);
        assert_eq!(f.n(), 2);
    }

    #[test]
    fn additive_values_sum_member_increments() {
        let f = GradingFunction::element_additive(vec![0.2, 0.8]).unwrap();
        assert_eq!(f.value(0b00), 0.0);
        assert_eq!(f.value(0b01), 0.2);
        assert_eq!(f.value(0b10), 0.8);
        assert_eq!(f.value(0b11), 1.0);
        assert_eq!(f.span(), 1.0);
    }
}
