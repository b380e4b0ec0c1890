//! Relative divergence along a totally ordered chain, and Shannon entropy.

use crate::error::{Error, Result};
use crate::grading::INCREMENT_TOL;

/// Tolerance on `|sum(p) - 1|` for probability vectors.
pub const PROBABILITY_TOL: f64 = 1e-9;

/// Grades of a grading function along one chain `w_0 < w_1 < ... < w_n`,
/// strictly increasing by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainGrades {
    values: Vec<f64>,
}

impl ChainGrades {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::ChainTooShort { len: values.len() });
        }
        for &v in &values {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    context: "chain grades",
                    value: v,
                });
            }
        }
        let span = values[values.len() - 1] - values[0];
        let tol = INCREMENT_TOL * span.max(0.0);
        for index in 1..values.len() {
            let step = values[index] - values[index - 1];
            if step <= tol || step <= 0.0 {
                return Err(Error::NonMonotoneChain { index, value: step });
            }
        }
        Ok(ChainGrades { values })
    }

    /// The ordinal chain `0, 1, ..., n`.
    pub fn ordinal(n: usize) -> Self {
        ChainGrades {
            values: (0..=n).map(|i| i as f64).collect(),
        }
    }

    /// Number of increments (chain length n).
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn span(&self) -> f64 {
        self.values[self.values.len() - 1] - self.values[0]
    }

    /// Successive differences; strictly positive.
    pub fn increments(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Affine rescale onto `[0, 1]`.
    pub fn normalized(&self) -> ChainGrades {
        let lo = self.values[0];
        let span = self.span();
        ChainGrades {
            values: self.values.iter().map(|v| (v - lo) / span).collect(),
        }
    }
}

/// Relative divergence of `f` from `g` along a shared chain:
/// the sum over steps of `ln(dG_k / dF_k) * dF_k`.
///
/// Shift-invariant in both arguments; both chains must have the same length.
pub fn rd_chain(f: &ChainGrades, g: &ChainGrades) -> Result<f64> {
    if f.values.len() != g.values.len() {
        return Err(Error::LengthMismatch {
            left: f.values.len(),
            right: g.values.len(),
        });
    }
    let mut sum = 0.0;
    for k in 1..f.values.len() {
        let df = f.values[k] - f.values[k - 1];
        let dg = g.values[k] - g.values[k - 1];
        sum += (dg / df).ln() * df;
    }
    Ok(sum)
}

/// Shannon entropy `-sum(p_i ln p_i)` of a probability vector, with the
/// convention `0 ln 0 = 0`. Bounded by `ln n`.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for (index, &value) in p.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite {
                context: "probability vector",
                value,
            });
        }
        if value < 0.0 {
            return Err(Error::NegativeMass { index, value });
        }
        sum += value;
    }
    if (sum - 1.0).abs() > PROBABILITY_TOL {
        return Err(Error::NotNormalized { sum });
    }
    let mut h = 0.0;
    for &value in p {
        if value > 0.0 {
            h -= value * value.ln();
        }
    }
    Ok(h)
}
