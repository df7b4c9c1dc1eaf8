//! Tabular MDP representation with discounting folded into the stored
//! transition matrices.

use crate::algebra::TransRow;
use crate::error::{Error, Result};

/// Row sums of available non-exit rows must equal gamma within this.
pub const MDP_ROW_TOL: f64 = 1e-9;

/// One primitive action: identifier, per-state rewards, discounted
/// transition rows and a per-state availability mask.
#[derive(Clone, Debug)]
pub struct MdpAction {
    pub id: String,
    pub reward: Vec<f64>,
    pub trans: Vec<TransRow>,
    pub available: Vec<bool>,
}

/// A finite MDP. `trans` rows store `gamma * Pr(s' | s, a)`, so the discount
/// never appears anywhere else: every downstream equation is literal matrix
/// algebra on these blocks.
#[derive(Clone, Debug)]
pub struct Mdp {
    n: usize,
    gamma: f64,
    exit_states: Vec<usize>,
    exit_mask: Vec<bool>,
    actions: Vec<MdpAction>,
}

impl Mdp {
    pub fn new(
        n: usize,
        gamma: f64,
        exit_states: Vec<usize>,
        actions: Vec<MdpAction>,
    ) -> Result<Mdp> {
        let mut exit_states = exit_states;
        exit_states.sort_unstable();
        exit_states.dedup();
        let mut exit_mask = vec![false; n];
        for &s in &exit_states {
            if s >= n {
                return Err(Error::InvalidMdp(format!(
                    "exit state {s} out of range for n = {n}"
                )));
            }
            exit_mask[s] = true;
        }
        let mdp = Mdp {
            n,
            gamma,
            exit_states,
            exit_mask,
            actions,
        };
        mdp.validate()?;
        Ok(mdp)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn exit_states(&self) -> &[usize] {
        &self.exit_states
    }

    pub fn is_exit(&self, s: usize) -> bool {
        self.exit_mask[s]
    }

    pub fn actions(&self) -> &[MdpAction] {
        &self.actions
    }

    pub fn num_actions(&self) -> usize {
        self.actions.len()
    }

    /// Indices of the actions available in state `s`.
    pub fn actions_at(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.actions.len()).filter(move |&a| self.actions[a].available[s])
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::InvalidMdp(format!(
                "gamma {} outside [0, 1]",
                self.gamma
            )));
        }
        if self.actions.is_empty() {
            return Err(Error::InvalidMdp("no actions".into()));
        }
        for act in &self.actions {
            if act.reward.len() != self.n
                || act.trans.len() != self.n
                || act.available.len() != self.n
            {
                return Err(Error::InvalidMdp(format!(
                    "action {} has inconsistent dimensions",
                    act.id
                )));
            }
            for s in 0..self.n {
                if !act.reward[s].is_finite() {
                    return Err(Error::InvalidMdp(format!(
                        "action {} reward at state {s} is not finite",
                        act.id
                    )));
                }
                let sum = act.trans[s].sum();
                if self.exit_mask[s] {
                    if sum != 0.0 {
                        return Err(Error::InvalidMdp(format!(
                            "exit state {s} has nonzero transitions under action {}",
                            act.id
                        )));
                    }
                } else if act.available[s] {
                    if (sum - self.gamma).abs() > MDP_ROW_TOL {
                        return Err(Error::InvalidMdp(format!(
                            "action {} row {s} sums to {sum}, expected gamma = {}",
                            act.id, self.gamma
                        )));
                    }
                    if act.trans[s].iter().any(|(_, v)| v < 0.0) {
                        return Err(Error::InvalidMdp(format!(
                            "action {} row {s} has a negative entry",
                            act.id
                        )));
                    }
                }
            }
        }
        for s in 0..self.n {
            if !self.exit_mask[s] && self.actions_at(s).next().is_none() {
                return Err(Error::InvalidMdp(format!(
                    "non-exit state {s} has no available action"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn two_state_chain() -> Mdp {
        // State 0 steps to state 1 earning 1; state 1 is an absorbing exit.
        // gamma = 0.5 folded into the row.
        Mdp::new(
            2,
            0.5,
            vec![1],
            vec![MdpAction {
                id: "step".into(),
                reward: vec![1.0, 0.0],
                trans: vec![TransRow::One(1, 0.5), TransRow::Empty],
                available: vec![true, true],
            }],
        )
        .unwrap()
    }

    #[test]
    fn accepts_valid_chain() {
        let mdp = two_state_chain();
        assert_eq!(mdp.n(), 2);
        assert!(mdp.is_exit(1));
        assert_eq!(mdp.actions_at(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn rejects_bad_row_sum() {
        let bad = Mdp::new(
            2,
            0.5,
            vec![1],
            vec![MdpAction {
                id: "step".into(),
                reward: vec![1.0, 0.0],
                trans: vec![TransRow::One(1, 0.7), TransRow::Empty],
                available: vec![true, true],
            }],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn rejects_nonzero_exit_row() {
        let bad = Mdp::new(
            2,
            0.5,
            vec![1],
            vec![MdpAction {
                id: "step".into(),
                reward: vec![1.0, 0.0],
                trans: vec![TransRow::One(1, 0.5), TransRow::One(1, 0.5)],
                available: vec![true, true],
            }],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn rejects_stranded_state() {
        let bad = Mdp::new(
            2,
            0.5,
            vec![],
            vec![MdpAction {
                id: "step".into(),
                reward: vec![1.0, 0.0],
                trans: vec![TransRow::One(1, 0.5), TransRow::One(0, 0.5)],
                available: vec![true, false],
            }],
        );
        assert!(bad.is_err());
    }
}
