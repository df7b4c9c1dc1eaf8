//! Models in homogeneous coordinates.
//!
//! A model is the block matrix `[1 0; R P]` acting on rasps `[r | p]`. Only
//! the reward column `R` and the transition block `P` are stored; the
//! homogeneous top row is implicit. Composition multiplies the blocks:
//! `R = R1 + P1 R2`, `P = P1 P2`.

use crate::algebra::row::{Scratch, TransRow};
use crate::algebra::value::ValueModel;
use crate::error::{Error, Result};
use crate::par;

/// Tolerance on substochastic row sums. Rows are validated against this but
/// never renormalized; renormalizing would change the discount semantics.
pub const ROW_SUM_TOL: f64 = 1e-9;

/// An option/action/policy/value model: expected rewards plus a discounted
/// substochastic transition matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelMatrix {
    reward: Vec<f64>,
    trans: Vec<TransRow>,
    /// States where this model may be selected; `None` means everywhere.
    /// Only primitive action models carry masks (state-dependent legality).
    available: Option<Vec<bool>>,
}

impl ModelMatrix {
    pub fn new(reward: Vec<f64>, trans: Vec<TransRow>) -> ModelMatrix {
        assert_eq!(reward.len(), trans.len());
        ModelMatrix {
            reward,
            trans,
            available: None,
        }
    }

    pub fn with_availability(mut self, available: Vec<bool>) -> ModelMatrix {
        assert_eq!(available.len(), self.n());
        self.available = Some(available);
        self
    }

    pub fn from_dense(reward: Vec<f64>, trans: Vec<Vec<f64>>) -> ModelMatrix {
        let rows = trans.iter().map(|r| TransRow::from_dense(r)).collect();
        ModelMatrix::new(reward, rows)
    }

    /// The identity model: zero reward, identity transitions, no discounting.
    pub fn identity(n: usize) -> ModelMatrix {
        ModelMatrix::new(
            vec![0.0; n],
            (0..n).map(|s| TransRow::One(s as u32, 1.0)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.reward.len()
    }

    pub fn reward(&self) -> &[f64] {
        &self.reward
    }

    pub fn row(&self, s: usize) -> &TransRow {
        &self.trans[s]
    }

    pub fn rows(&self) -> &[TransRow] {
        &self.trans
    }

    pub fn available_at(&self, s: usize) -> bool {
        self.available.as_ref().map_or(true, |a| a[s])
    }

    pub fn availability(&self) -> Option<&[bool]> {
        self.available.as_deref()
    }

    /// Reads row `s` as a rasp `(reward[s], trans[s, .])`.
    pub fn rasp_row(&self, s: usize) -> crate::algebra::rasp::Rasp {
        crate::algebra::rasp::Rasp::new(self.reward[s], self.trans[s].to_dense(self.n()))
    }

    pub fn to_dense_trans(&self) -> Vec<Vec<f64>> {
        self.trans.iter().map(|r| r.to_dense(self.n())).collect()
    }

    /// True when the transition block is exactly zero (a value model).
    pub fn is_value_model(&self) -> bool {
        self.trans.iter().all(|r| r.is_empty())
    }

    /// Checks the model invariants: nonnegative entries, substochastic rows,
    /// finite rewards.
    pub fn validate(&self) -> Result<()> {
        for s in 0..self.n() {
            if !self.reward[s].is_finite() {
                return Err(Error::InvalidMdp(format!(
                    "reward {} at state {s} is not finite",
                    self.reward[s]
                )));
            }
            let mut sum = 0.0;
            for (j, v) in self.trans[s].iter() {
                if !(v >= 0.0) {
                    return Err(Error::InvalidMdp(format!(
                        "transition entry ({s}, {j}) = {v} is negative or NaN"
                    )));
                }
                sum += v;
            }
            if sum > 1.0 + ROW_SUM_TOL {
                return Err(Error::InvalidMdp(format!(
                    "row {s} sums to {sum} > 1 + {ROW_SUM_TOL:e}"
                )));
            }
        }
        Ok(())
    }

    /// Largest absolute difference over rewards and transition entries.
    pub fn max_abs_diff(&self, other: &ModelMatrix) -> f64 {
        let mut worst = 0.0f64;
        for s in 0..self.n() {
            worst = worst.max((self.reward[s] - other.reward[s]).abs());
            worst = worst.max(self.trans[s].max_abs_diff(&other.trans[s]));
        }
        worst
    }

    /// Composes `self` with `other` (run `self`, then `other`):
    /// reward `R1 + P1 R2`, transitions `P1 P2`. Availability follows the
    /// first model.
    pub fn compose(&self, other: &ModelMatrix) -> Result<ModelMatrix> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: other.n(),
            });
        }
        let n = self.n();
        let rows: Vec<usize> = (0..n).collect();
        let computed = par::map_rows(
            &rows,
            || Scratch::new(n),
            |scratch, s| compose_row(self.reward[s], &self.trans[s], other, scratch),
        );
        let mut reward = Vec::with_capacity(n);
        let mut trans = Vec::with_capacity(n);
        for (r, t) in computed {
            reward.push(r);
            trans.push(t);
        }
        Ok(ModelMatrix {
            reward,
            trans,
            available: self.available.clone(),
        })
    }

    /// Composes with a value model, yielding a value model (the transition
    /// block of the result is exactly zero).
    pub fn compose_value(&self, v: &ValueModel) -> Result<ValueModel> {
        if self.n() != v.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: v.n(),
            });
        }
        let reward = (0..self.n())
            .map(|s| self.reward[s] + self.trans[s].dot(v.reward()))
            .collect();
        Ok(ValueModel::new(reward))
    }
}

/// Composes a single row `[r1 | p1]` with a full model: the row of the
/// composite at that state.
pub fn compose_row(
    reward: f64,
    row: &TransRow,
    next: &ModelMatrix,
    scratch: &mut Scratch,
) -> (f64, TransRow) {
    let mut r = reward;
    for (j, p) in row.iter() {
        r += p * next.reward[j];
        scratch.axpy(p, &next.trans[j]);
    }
    (r, scratch.drain())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ModelMatrix {
        ModelMatrix::from_dense(
            vec![1.0, 0.0],
            vec![vec![0.0, 0.5], vec![0.0, 0.5]],
        )
    }

    #[test]
    fn identity_left_and_right() {
        let m = sample();
        let i = ModelMatrix::identity(2);
        assert_eq!(i.compose(&m).unwrap(), m);
        assert_eq!(m.compose(&i).unwrap(), m);
    }

    #[test]
    fn compose_matches_hand_multiplication() {
        // reward [1, 0], trans [[0, .5], [0, .5]] squared:
        // R' = R + P R = [1 + .5*0, 0 + .5*0] = [1, 0]
        // P' = P P    = [[0, .25], [0, .25]]
        let m = sample();
        let sq = m.compose(&m).unwrap();
        assert_eq!(sq.reward(), &[1.0, 0.0]);
        assert_eq!(sq.to_dense_trans(), vec![vec![0.0, 0.25], vec![0.0, 0.25]]);
    }

    #[test]
    fn compose_value_zeroes_transitions() {
        let m = sample();
        let v = ValueModel::new(vec![10.0, 20.0]);
        let mv = m.compose_value(&v).unwrap();
        assert_eq!(mv.reward(), &[1.0 + 0.5 * 20.0, 0.5 * 20.0]);
        // Same numbers through the general path.
        let full = m.compose(&v.to_model()).unwrap();
        assert_eq!(full.reward(), mv.reward());
        assert!(full.is_value_model());
    }

    #[test]
    fn validate_flags_bad_rows() {
        let bad = ModelMatrix::from_dense(vec![0.0], vec![vec![1.5]]);
        assert!(bad.validate().is_err());
        let neg = ModelMatrix::from_dense(vec![0.0], vec![vec![-0.1]]);
        assert!(neg.validate().is_err());
        assert!(sample().validate().is_ok());
    }

    #[test]
    fn substochastic_closed_under_composition() {
        let a = ModelMatrix::from_dense(
            vec![0.0, 0.0],
            vec![vec![0.3, 0.7], vec![0.9, 0.05]],
        );
        let b = ModelMatrix::from_dense(
            vec![1.0, -1.0],
            vec![vec![0.5, 0.5], vec![0.0, 1.0]],
        );
        let c = a.compose(&b).unwrap();
        assert!(c.validate().is_ok());
    }
}
