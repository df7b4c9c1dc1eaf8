//! Rasps: reward-and-state-probability row vectors.

use crate::algebra::model::{ModelMatrix, ROW_SUM_TOL};
use crate::error::{Error, Result};

/// A reward paired with a discounted (substochastic) distribution over
/// states: the image of a start state under some sequence of models.
#[derive(Clone, Debug, PartialEq)]
pub struct Rasp {
    pub reward: f64,
    pub dist: Vec<f64>,
}

impl Rasp {
    pub fn new(reward: f64, dist: Vec<f64>) -> Rasp {
        Rasp { reward, dist }
    }

    /// The deterministic rasp for state `s`: zero reward, unit mass on `s`.
    pub fn deterministic(n: usize, s: usize) -> Rasp {
        let mut dist = vec![0.0; n];
        dist[s] = 1.0;
        Rasp { reward: 0.0, dist }
    }

    pub fn n(&self) -> usize {
        self.dist.len()
    }

    /// Checks nonnegativity and the substochastic mass bound.
    pub fn validate(&self) -> Result<()> {
        if !self.reward.is_finite() {
            return Err(Error::InvalidMdp(format!(
                "rasp reward {} is not finite",
                self.reward
            )));
        }
        let mut sum = 0.0;
        for (j, &p) in self.dist.iter().enumerate() {
            if !(p >= 0.0) {
                return Err(Error::InvalidMdp(format!(
                    "rasp probability {p} at state {j} is negative or NaN"
                )));
            }
            sum += p;
        }
        if sum > 1.0 + ROW_SUM_TOL {
            return Err(Error::InvalidMdp(format!(
                "rasp mass {sum} exceeds 1 + {ROW_SUM_TOL:e}"
            )));
        }
        Ok(())
    }
}

/// Applies a model to a rasp: `[r | p] -> [r + pR | pP]`.
pub fn apply(x: &Rasp, m: &ModelMatrix) -> Result<Rasp> {
    if x.n() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            got: x.n(),
        });
    }
    let mut reward = x.reward;
    let mut dist = vec![0.0; m.n()];
    for (s, &p) in x.dist.iter().enumerate() {
        if p != 0.0 {
            reward += p * m.reward()[s];
            for (j, v) in m.row(s).iter() {
                dist[j] += p * v;
            }
        }
    }
    Ok(Rasp { reward, dist })
}
