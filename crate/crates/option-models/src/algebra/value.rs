//! Value models: models whose transition block is identically zero.

use crate::algebra::model::ModelMatrix;
use crate::algebra::row::TransRow;

/// A value model `[1 0; V 0]`. Composing any rasp with it exits immediately,
/// collecting `V` — so its reward column is a value function.
#[derive(Clone, Debug, PartialEq)]
pub struct ValueModel {
    reward: Vec<f64>,
}

impl ValueModel {
    pub fn new(reward: Vec<f64>) -> ValueModel {
        ValueModel { reward }
    }

    pub fn constant(n: usize, v: f64) -> ValueModel {
        ValueModel {
            reward: vec![v; n],
        }
    }

    pub fn n(&self) -> usize {
        self.reward.len()
    }

    pub fn reward(&self) -> &[f64] {
        &self.reward
    }

    pub fn into_reward(self) -> Vec<f64> {
        self.reward
    }

    pub fn max_abs_diff(&self, other: &ValueModel) -> f64 {
        self.reward
            .iter()
            .zip(other.reward.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Expands to a full model with zero transition rows.
    pub fn to_model(&self) -> ModelMatrix {
        ModelMatrix::new(self.reward.clone(), vec![TransRow::Empty; self.n()])
    }
}

impl From<ValueModel> for ModelMatrix {
    fn from(v: ValueModel) -> ModelMatrix {
        let n = v.n();
        ModelMatrix::new(v.into_reward(), vec![TransRow::Empty; n])
    }
}
