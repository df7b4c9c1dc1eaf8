//! Building models from an MDP: action models and the true value model.

use crate::algebra::{ModelMatrix, ValueModel};
use crate::error::{Error, Result};
use crate::mdp::core::Mdp;

/// Default margin below the value floor.
pub const DEFAULT_MARGIN: f64 = 1.0;

/// Builds one model per primitive action. Transition rows are the MDP's
/// (already discounted) rows and availability follows the MDP, except that
/// every action is available in exit states: the exit row `[R | 0]` must
/// participate in maximization sweeps so exit values settle at their reward
/// rather than the initialization floor.
pub fn action_models(mdp: &Mdp) -> Vec<ModelMatrix> {
    mdp.actions()
        .iter()
        .map(|act| {
            let avail = act
                .available
                .iter()
                .enumerate()
                .map(|(s, &a)| a || mdp.is_exit(s))
                .collect();
            ModelMatrix::new(act.reward.clone(), act.trans.clone())
                .with_availability(avail)
        })
        .collect()
}

/// A constant value model strictly below the value of every proper policy,
/// used both as planner initialization and as the "keep going forever"
/// subgoal.
///
/// For `gamma < 1` the floor is `min(0, min_reward) / (1 - gamma)`; for
/// `gamma = 1` it is `-max|reward| * horizon` with the default horizon bound
/// `10 n`. Improper policies under `gamma = 1` have divergent value and are
/// excluded from the bound; evaluation reports divergence for them instead.
pub fn true_value_model(mdp: &Mdp, margin: f64) -> Result<ValueModel> {
    true_value_model_with_horizon(mdp, margin, 10 * mdp.n())
}

pub fn true_value_model_with_horizon(
    mdp: &Mdp,
    margin: f64,
    horizon: usize,
) -> Result<ValueModel> {
    if margin <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "margin must be positive, got {margin}"
        )));
    }
    let mut min_reward = f64::INFINITY;
    let mut max_abs = 0.0f64;
    let mut positive_nonexit = false;
    for act in mdp.actions() {
        for s in 0..mdp.n() {
            if act.available[s] || mdp.is_exit(s) {
                let r = act.reward[s];
                min_reward = min_reward.min(r);
                max_abs = max_abs.max(r.abs());
                if r > 0.0 && !mdp.is_exit(s) {
                    positive_nonexit = true;
                }
            }
        }
    }
    let floor = if mdp.gamma() < 1.0 {
        min_reward.min(0.0) / (1.0 - mdp.gamma())
    } else {
        if positive_nonexit {
            return Err(Error::InvalidConfig(
                "gamma = 1 with positive rewards outside exit states: value floor undefined"
                    .into(),
            ));
        }
        -max_abs * horizon as f64
    };
    Ok(ValueModel::constant(mdp.n(), floor - margin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TransRow;
    use crate::mdp::core::MdpAction;

    fn gridlike() -> Mdp {
        // gamma = 0.9, rewards in {0, 1}: the floor is 0, so the true value
        // model sits at -margin.
        Mdp::new(
            2,
            0.9,
            vec![1],
            vec![MdpAction {
                id: "go".into(),
                reward: vec![0.0, 1.0],
                trans: vec![TransRow::One(1, 0.9), TransRow::Empty],
                available: vec![true, true],
            }],
        )
        .unwrap()
    }

    #[test]
    fn discounted_floor_is_minus_margin() {
        let g = true_value_model(&gridlike(), 1.0).unwrap();
        assert_eq!(g.reward(), &[-1.0, -1.0]);
    }

    #[test]
    fn undiscounted_floor_uses_horizon() {
        // gamma = 1, rewards -1, three states: floor = -(10 * 3) - margin.
        let mdp = Mdp::new(
            3,
            1.0,
            vec![2],
            vec![MdpAction {
                id: "fwd".into(),
                reward: vec![-1.0, -1.0, 0.0],
                trans: vec![TransRow::One(1, 1.0), TransRow::One(2, 1.0), TransRow::Empty],
                available: vec![true, true, true],
            }],
        )
        .unwrap();
        let g = true_value_model(&mdp, 1.0).unwrap();
        assert_eq!(g.reward(), &[-31.0, -31.0, -31.0]);
    }

    #[test]
    fn undiscounted_positive_rewards_rejected() {
        let mdp = Mdp::new(
            2,
            1.0,
            vec![1],
            vec![MdpAction {
                id: "go".into(),
                reward: vec![1.0, 0.0],
                trans: vec![TransRow::One(1, 1.0), TransRow::Empty],
                available: vec![true, true],
            }],
        )
        .unwrap();
        assert!(true_value_model(&mdp, 1.0).is_err());
    }

    #[test]
    fn action_models_open_exit_rows() {
        let ms = action_models(&gridlike());
        assert_eq!(ms.len(), 1);
        assert!(ms[0].available_at(1));
        assert!(ms[0].row(1).is_empty());
        assert_eq!(ms[0].reward()[1], 1.0);
    }

    #[test]
    fn margin_must_be_positive() {
        assert!(true_value_model(&gridlike(), 0.0).is_err());
    }
}
