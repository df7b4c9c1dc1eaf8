//! Subgoal specifications: what an option should achieve, and where.

use crate::algebra::ValueModel;
use crate::error::{Error, Result};

/// A subgoal value model `G` (the value of terminating in each state) plus
/// an optional initiation set. Rows outside the initiation set are never
/// planned for; they stay at their initialization.
#[derive(Clone, Debug)]
pub struct SubgoalSpec {
    pub name: String,
    pub g: ValueModel,
    pub initiation: Option<Vec<usize>>,
}

impl SubgoalSpec {
    pub fn new(name: impl Into<String>, g: ValueModel) -> SubgoalSpec {
        SubgoalSpec {
            name: name.into(),
            g,
            initiation: None,
        }
    }

    pub fn with_initiation(mut self, mut states: Vec<usize>) -> SubgoalSpec {
        states.sort_unstable();
        states.dedup();
        self.initiation = Some(states);
        self
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.g.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.g.n(),
            });
        }
        if let Some(init) = &self.initiation {
            if let Some(&s) = init.iter().find(|&&s| s >= n) {
                return Err(Error::InvalidConfig(format!(
                    "initiation state {s} out of range for subgoal {}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// The rows this subgoal's model updates: the initiation set if present,
    /// otherwise every state.
    pub fn planned_rows(&self, n: usize) -> Vec<usize> {
        match &self.initiation {
            Some(init) => init.clone(),
            None => (0..n).collect(),
        }
    }
}
