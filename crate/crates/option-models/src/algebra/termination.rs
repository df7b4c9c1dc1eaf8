//! Per-state termination conditions.

use crate::error::{Error, Result};

/// A termination condition: the probability of stopping in each state.
#[derive(Clone, Debug, PartialEq)]
pub struct Termination {
    beta: Vec<f64>,
}

impl Termination {
    pub fn new(beta: Vec<f64>) -> Result<Termination> {
        for (s, &b) in beta.iter().enumerate() {
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::BetaRange { state: s, value: b });
            }
        }
        Ok(Termination { beta })
    }

    /// Always stop (primitive actions behave this way).
    pub fn always(n: usize) -> Termination {
        Termination { beta: vec![1.0; n] }
    }

    /// Never stop (policies run forever).
    pub fn never(n: usize) -> Termination {
        Termination { beta: vec![0.0; n] }
    }

    /// Stop exactly in the given states.
    pub fn indicator(n: usize, stop: &[usize]) -> Termination {
        let mut beta = vec![0.0; n];
        for &s in stop {
            beta[s] = 1.0;
        }
        Termination { beta }
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn at(&self, s: usize) -> f64 {
        self.beta[s]
    }
}
