//! Per-state distributions over an indexed set of operators (actions or
//! option models).

use crate::algebra::model::ModelMatrix;
use crate::error::{Error, Result};

const WEIGHT_SUM_TOL: f64 = 1e-9;

/// A policy over an indexed operator set, with state-dependent support.
/// `weights[s]` lists `(operator index, probability)` pairs for state `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolicyWeights {
    weights: Vec<Vec<(usize, f64)>>,
}

impl PolicyWeights {
    pub fn new(weights: Vec<Vec<(usize, f64)>>) -> PolicyWeights {
        PolicyWeights { weights }
    }

    /// A deterministic policy: state `s` always selects `choice[s]`.
    pub fn deterministic(choice: &[usize]) -> PolicyWeights {
        PolicyWeights {
            weights: choice.iter().map(|&o| vec![(o, 1.0)]).collect(),
        }
    }

    /// The uniform policy over the operators available in each state.
    /// States where no operator is available get empty support.
    pub fn uniform(models: &[ModelMatrix], n: usize) -> PolicyWeights {
        let weights = (0..n)
            .map(|s| {
                let avail: Vec<usize> = (0..models.len())
                    .filter(|&o| models[o].available_at(s))
                    .collect();
                let w = 1.0 / avail.len() as f64;
                avail.into_iter().map(|o| (o, w)).collect()
            })
            .collect();
        PolicyWeights { weights }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn support(&self, s: usize) -> &[(usize, f64)] {
        &self.weights[s]
    }

    /// Validates against a base set: indices in range and available, weights
    /// nonnegative and summing to one wherever support is nonempty.
    pub fn validate(&self, models: &[ModelMatrix]) -> Result<()> {
        for (s, row) in self.weights.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            let mut sum = 0.0;
            for &(o, w) in row {
                if o >= models.len() {
                    return Err(Error::MissingModel {
                        model: o,
                        len: models.len(),
                    });
                }
                if !models[o].available_at(s) {
                    return Err(Error::InvalidWeights {
                        state: s,
                        reason: format!("operator {o} is unavailable in state {s}"),
                    });
                }
                if !(w >= 0.0) {
                    return Err(Error::InvalidWeights {
                        state: s,
                        reason: format!("weight {w} on operator {o} is negative or NaN"),
                    });
                }
                sum += w;
            }
            if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
                return Err(Error::InvalidWeights {
                    state: s,
                    reason: format!("weights sum to {sum}, expected 1"),
                });
            }
        }
        Ok(())
    }
}
