//! N-disc Tower of Hanoi as an undiscounted shortest-path MDP.
//!
//! States are peg assignments (stacking order is implied by disc size), the
//! six ordered peg pairs are the actions, every step costs -1 and the goal
//! configuration (all discs on peg 2) is an absorbing exit.

use crate::algebra::{TransRow, ValueModel};
use crate::error::{Error, Result};
use crate::mdp::{Mdp, MdpAction, SubgoalSpec};

/// Default proportionality constant for disc-on-peg subgoal values. It must
/// dominate any achievable path cost so subgoals are worth reaching at any
/// cost.
pub const DEFAULT_HANOI_SUBGOAL_K: f64 = 1e4;

pub const HANOI_MAX_DISCS: usize = 12;

/// The six ordered (source, destination) peg pairs, in declaration order.
pub const HANOI_MOVES: [(u8, u8); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

/// Peg assignment per disc; entry `d` is the peg of disc `d`, disc 0 the
/// smallest. This encodes exactly the 3^N legal configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HanoiState {
    pub pegs: Vec<u8>,
}

impl HanoiState {
    pub fn from_index(index: usize, discs: usize) -> HanoiState {
        let mut pegs = Vec::with_capacity(discs);
        let mut rest = index;
        for _ in 0..discs {
            pegs.push((rest % 3) as u8);
            rest /= 3;
        }
        HanoiState { pegs }
    }

    pub fn index(&self) -> usize {
        self.pegs
            .iter()
            .rev()
            .fold(0usize, |acc, &p| acc * 3 + p as usize)
    }

    /// The smallest disc on `peg`, if any.
    pub fn top_disc(&self, peg: u8) -> Option<usize> {
        self.pegs.iter().position(|&p| p == peg)
    }

    /// A move is legal when the source peg is nonempty and its top disc is
    /// smaller than the destination's top disc.
    pub fn is_legal(&self, mv: (u8, u8)) -> bool {
        match self.top_disc(mv.0) {
            None => false,
            Some(d) => self.top_disc(mv.1).map_or(true, |t| d < t),
        }
    }

    pub fn apply_move(&self, mv: (u8, u8)) -> HanoiState {
        let mut next = self.clone();
        let d = self.top_disc(mv.0).expect("illegal move");
        next.pegs[d] = mv.1;
        next
    }

    pub fn legal_moves(&self) -> Vec<usize> {
        (0..HANOI_MOVES.len())
            .filter(|&a| self.is_legal(HANOI_MOVES[a]))
            .collect()
    }
}

/// All discs on the right peg.
pub fn hanoi_goal_index(discs: usize) -> usize {
    3usize.pow(discs as u32) - 1
}

/// All discs on the left peg.
pub fn hanoi_start_index(_discs: usize) -> usize {
    0
}

/// Builds the N-disc Tower of Hanoi MDP. With `stochastic`, the intended
/// move succeeds with probability `1 - p`; otherwise one of the *other*
/// legal moves is selected uniformly (if there is none, the intended move
/// happens anyway, preserving total probability).
pub fn hanoi_mdp(discs: usize, stochastic: bool, p: f64) -> Result<Mdp> {
    if discs == 0 || discs > HANOI_MAX_DISCS {
        return Err(Error::InvalidDomain(format!(
            "disc count {discs} outside 1..={HANOI_MAX_DISCS}"
        )));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidDomain(format!("slip probability {p} outside [0, 1)")));
    }
    let n = 3usize.pow(discs as u32);
    let goal = hanoi_goal_index(discs);

    let mut actions: Vec<MdpAction> = HANOI_MOVES
        .iter()
        .map(|&(src, dst)| MdpAction {
            id: format!("{src}->{dst}"),
            reward: vec![-1.0; n],
            trans: vec![TransRow::Empty; n],
            available: vec![false; n],
        })
        .collect();

    for s in 0..n {
        let state = HanoiState::from_index(s, discs);
        let legal = state.legal_moves();
        for &a in &legal {
            actions[a].available[s] = true;
        }
        if s == goal {
            // Absorbing exit: zero rows, zero reward.
            for act in actions.iter_mut() {
                act.reward[s] = 0.0;
            }
            continue;
        }
        for &a in &legal {
            let intended = state.apply_move(HANOI_MOVES[a]).index();
            if !stochastic {
                actions[a].trans[s] = TransRow::One(intended as u32, 1.0);
                continue;
            }
            let others: Vec<usize> = legal.iter().copied().filter(|&b| b != a).collect();
            if others.is_empty() {
                actions[a].trans[s] = TransRow::One(intended as u32, 1.0);
                continue;
            }
            let mut pairs: Vec<(u32, f64)> = Vec::with_capacity(1 + others.len());
            pairs.push((intended as u32, 1.0 - p));
            let share = p / others.len() as f64;
            for &b in &others {
                let next = state.apply_move(HANOI_MOVES[b]).index();
                pairs.push((next as u32, share));
            }
            pairs.sort_unstable_by_key(|&(j, _)| j);
            actions[a].trans[s] = TransRow::from_sorted_pairs(&pairs);
        }
    }

    Mdp::new(n, 1.0, vec![goal], actions)
}

/// The 3N + 1 subgoal value models: the true value model, then one model
/// per (disc, peg) pair scoring `k` wherever that disc sits on that peg.
pub fn hanoi_subgoals(mdp: &Mdp, k: f64) -> Result<Vec<SubgoalSpec>> {
    let discs = hanoi_discs_for(mdp.n())?;
    if k <= 0.0 {
        return Err(Error::InvalidDomain(format!("subgoal constant {k} must be positive")));
    }
    let n = mdp.n();
    let mut out = Vec::with_capacity(3 * discs + 1);
    out.push(SubgoalSpec::new(
        "true-value",
        crate::mdp::true_value_model(mdp, crate::mdp::DEFAULT_MARGIN)?,
    ));
    for d in 0..discs {
        for e in 0..3u8 {
            let mut reward = vec![0.0; n];
            for (s, r) in reward.iter_mut().enumerate() {
                if HanoiState::from_index(s, discs).pegs[d] == e {
                    *r = k;
                }
            }
            out.push(SubgoalSpec::new(
                format!("on(d{d},p{e})"),
                ValueModel::new(reward),
            ));
        }
    }
    Ok(out)
}

fn hanoi_discs_for(n: usize) -> Result<usize> {
    let mut m = n;
    let mut discs = 0;
    while m > 1 {
        if m % 3 != 0 {
            return Err(Error::InvalidDomain(format!(
                "state count {n} is not a power of three"
            )));
        }
        m /= 3;
        discs += 1;
    }
    if discs == 0 {
        return Err(Error::InvalidDomain("empty state space".into()));
    }
    Ok(discs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::graph::distances_to;

    #[test]
    fn single_disc_has_three_states() {
        let mdp = hanoi_mdp(1, false, 0.0).unwrap();
        assert_eq!(mdp.n(), 3);
        assert!(mdp.is_exit(2));
        // Each non-goal state has the two moves off its current peg.
        assert_eq!(mdp.actions_at(0).count(), 2);
        assert_eq!(mdp.actions_at(1).count(), 2);
    }

    #[test]
    fn blocked_disc_restricts_moves() {
        // Both discs on peg 0: only disc 0 can move, so the legal moves are
        // (0,1) and (0,2).
        let s = HanoiState { pegs: vec![0, 0] };
        let legal: Vec<(u8, u8)> = s.legal_moves().iter().map(|&a| HANOI_MOVES[a]).collect();
        assert_eq!(legal, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn move_counts_are_two_or_three() {
        for discs in 1..=5 {
            let mdp = hanoi_mdp(discs, false, 0.0).unwrap();
            for s in 0..mdp.n() {
                if !mdp.is_exit(s) {
                    let c = mdp.actions_at(s).count();
                    assert!(c == 2 || c == 3, "state {s} has {c} moves");
                }
            }
        }
    }

    #[test]
    fn goal_distance_is_classic() {
        for discs in 1..=6 {
            let mdp = hanoi_mdp(discs, false, 0.0).unwrap();
            let dist = distances_to(&mdp, hanoi_goal_index(discs));
            let expected = 2u32.pow(discs as u32) - 1;
            assert_eq!(dist[hanoi_start_index(discs)], expected);
            // No state is farther from the goal than the classic bound.
            assert_eq!(*dist.iter().max().unwrap(), expected);
        }
    }

    #[test]
    fn stochastic_rows_sum_to_gamma() {
        let mdp = hanoi_mdp(4, true, 0.4).unwrap();
        for act in mdp.actions() {
            for s in 0..mdp.n() {
                if act.available[s] && !mdp.is_exit(s) {
                    assert!((act.trans[s].sum() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn subgoal_family_shape() {
        let mdp = hanoi_mdp(2, false, 0.0).unwrap();
        let subgoals = hanoi_subgoals(&mdp, 1e4).unwrap();
        assert_eq!(subgoals.len(), 7);
        // The goal state stacks everything on peg 2, so every (d, 2) model
        // scores there.
        let goal = hanoi_goal_index(2);
        for d in 0..2 {
            let sg = &subgoals[1 + d * 3 + 2];
            assert_eq!(sg.g.reward()[goal], 1e4);
        }
        // (d = 0, e = 1) scores exactly the 3 states with disc 0 on peg 1.
        let sg01 = &subgoals[1 + 1];
        assert_eq!(sg01.name, "on(d0,p1)");
        let hits = sg01.g.reward().iter().filter(|&&r| r == 1e4).count();
        assert_eq!(hits, 3);
    }

    #[test]
    fn true_value_floor_matches_formula() {
        let mdp = hanoi_mdp(3, false, 0.0).unwrap();
        let subgoals = hanoi_subgoals(&mdp, 1e4).unwrap();
        assert_eq!(subgoals[0].g.reward()[0], -(10.0 * 27.0) - 1.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(hanoi_mdp(0, false, 0.0).is_err());
        assert!(hanoi_mdp(13, false, 0.0).is_err());
        assert!(hanoi_mdp(3, true, 1.0).is_err());
    }
}
