//! Probability vectors and the two distance measures used throughout:
//! the classical fidelity and the trace (total variation) distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::{EPS_PROB, EPS_ZERO};

/// A probability vector over a finite index set.
///
/// Entries are nonnegative and sum to one within [`EPS_PROB`]. Tiny negative
/// entries (down to `-EPS_ZERO`) are clamped to zero on construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbDist {
    values: Vec<f64>,
}

impl ProbDist {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::named("distribution", values)
    }

    /// Like [`ProbDist::new`] but names the vector in error messages.
    pub fn named(what: &str, mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain(format!("{what} is empty")));
        }
        for (i, v) in values.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(Error::Domain(format!("{what}[{i}] is not finite")));
            }
            if *v < -EPS_ZERO {
                return Err(Error::Domain(format!("{what}[{i}] = {v} is negative")));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > EPS_PROB {
            return Err(Error::Normalization {
                what: what.to_string(),
                sum,
            });
        }
        Ok(Self { values })
    }

    /// Uniform distribution over `len` outcomes.
    pub fn uniform(len: usize) -> Self {
        assert!(len > 0, "uniform distribution needs at least one outcome");
        Self {
            values: vec![1.0 / len as f64; len],
        }
    }

    /// Point mass on `index`.
    pub fn point(len: usize, index: usize) -> Self {
        assert!(index < len);
        let mut values = vec![0.0; len];
        values[index] = 1.0;
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn in_support(&self, i: usize) -> bool {
        self.values[i] > EPS_ZERO
    }

    /// Indices of the strictly positive entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.in_support(i))
            .collect()
    }

    /// Support indicator as a 0/1 vector.
    pub fn support_indicator(&self) -> Vec<f64> {
        (0..self.values.len())
            .map(|i| if self.in_support(i) { 1.0 } else { 0.0 })
            .collect()
    }

    /// True when the two supports do not intersect.
    pub fn is_orthogonal(&self, other: &ProbDist) -> bool {
        self.len() == other.len()
            && (0..self.len()).all(|i| !(self.in_support(i) && other.in_support(i)))
    }

    pub fn is_full_support(&self) -> bool {
        (0..self.len()).all(|i| self.in_support(i))
    }
}

impl TryFrom<Vec<f64>> for ProbDist {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        ProbDist::new(values)
    }
}

impl From<ProbDist> for Vec<f64> {
    fn from(p: ProbDist) -> Self {
        p.values
    }
}

fn check_same_len(context: &str, p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::Dimension {
            context: context.to_string(),
            expected: p.len(),
            actual: q.len(),
        });
    }
    Ok(())
}

/// `(Σ √(pₓ qₓ))²` for nonnegative vectors of equal length.
///
/// Neither argument needs to be normalized.
pub fn fidelity(p: &[f64], q: &[f64]) -> Result<f64> {
    check_same_len("fidelity", p, q)?;
    let mut root = 0.0;
    for (i, (&pi, &qi)) in p.iter().zip(q).enumerate() {
        if pi < -EPS_ZERO || qi < -EPS_ZERO || !pi.is_finite() || !qi.is_finite() {
            return Err(Error::Domain(format!(
                "fidelity arguments must be nonnegative (entry {i}: {pi}, {qi})"
            )));
        }
        root += (pi.max(0.0) * qi.max(0.0)).sqrt();
    }
    Ok(root * root)
}

/// Half the one-norm distance between two distributions.
pub fn trace_distance(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    check_same_len("trace distance", p.values(), q.values())?;
    let l1: f64 = p
        .values()
        .iter()
        .zip(q.values())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(0.5 * l1)
}

/// Both sides of `Σ_y max_b β_{b,y} = 1 + Δ(β₀, β₁)`, returned as `(lhs, rhs)`.
pub fn maxsum_identity_check(beta0: &ProbDist, beta1: &ProbDist) -> Result<(f64, f64)> {
    check_same_len("max-sum identity", beta0.values(), beta1.values())?;
    let lhs = beta0
        .values()
        .iter()
        .zip(beta1.values())
        .map(|(a, b)| a.max(*b))
        .sum();
    let rhs = 1.0 + trace_distance(beta0, beta1)?;
    Ok((lhs, rhs))
}
