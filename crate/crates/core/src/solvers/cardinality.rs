//! Closed-form solver for cardinality-dependent grading functions with
//! prescribed values at a few cardinalities.
//!
//! Between consecutive anchors the per-step increments must be equal (each
//! anchor interval is an independent entropy maximization over its steps),
//! so the solution is piecewise linear in the cardinality.

use crate::error::{Error, Result};
use crate::grading::GradingFunction;

/// Prescribed values `F(n_k) = M_k`, including the fixed endpoints
/// `F(0) = 0` and `F(n) = M`.
#[derive(Debug, Clone, PartialEq)]
pub struct CardinalityAnchors {
    anchors: Vec<(usize, f64)>,
}

impl CardinalityAnchors {
    /// Builds from `(n_k, M_k)` pairs. The first pair must be `(0, 0)`;
    /// both coordinates must be strictly increasing.
    pub fn new(anchors: Vec<(usize, f64)>) -> Result<Self> {
        if anchors.len() < 2 {
            return Err(Error::InvalidAnchors(format!(
                "need at least the endpoints, got {} pairs",
                anchors.len()
            )));
        }
        if anchors[0] != (0, 0.0) {
            return Err(Error::InvalidAnchors(format!(
                "first anchor must be (0, 0), got ({}, {})",
                anchors[0].0, anchors[0].1
            )));
        }
        for window in anchors.windows(2) {
            let (n_prev, m_prev) = window[0];
            let (n_next, m_next) = window[1];
            if n_next <= n_prev {
                return Err(Error::InvalidAnchors(format!(
                    "cardinalities must increase strictly: {n_prev} then {n_next}"
                )));
            }
            if !m_next.is_finite() || m_next <= m_prev {
                return Err(Error::InvalidAnchors(format!(
                    "anchor values must increase strictly: {m_prev} then {m_next}"
                )));
            }
        }
        Ok(CardinalityAnchors { anchors })
    }

    /// The two-anchor system `(0, 0), (n, m)`.
    pub fn endpoints(n: usize, m: f64) -> Result<Self> {
        CardinalityAnchors::new(vec![(0, 0.0), (n, m)])
    }

    pub fn pairs(&self) -> &[(usize, f64)] {
        &self.anchors
    }

    /// Total number of elements `n = n_K`.
    pub fn n(&self) -> usize {
        self.anchors[self.anchors.len() - 1].0
    }
}

/// Maximizes the divergence from the cardinality function over all
/// cardinality-dependent grading functions interpolating the anchors.
/// The result is linear on each anchor interval, with anchor values hit
/// exactly.
pub fn solve_cardinality_dependent(anchors: &CardinalityAnchors) -> Result<GradingFunction> {
    let n = anchors.n();
    let mut profile = vec![0.0; n + 1];
    for window in anchors.pairs().windows(2) {
        let (n_prev, m_prev) = window[0];
        let (n_next, m_next) = window[1];
        let dn = (n_next - n_prev) as f64;
        let dm = m_next - m_prev;
        for i in n_prev + 1..n_next {
            profile[i] = m_prev + dm * ((i - n_prev) as f64) / dn;
        }
        profile[n_next] = m_next;
    }
    GradingFunction::cardinality_profile(profile)
}
