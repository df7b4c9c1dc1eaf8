//! MDP representation, model construction and exact evaluation.

mod core;
mod evaluate;
mod interchange;
mod models;
mod subgoal;

pub use core::{Mdp, MdpAction, MDP_ROW_TOL};
pub use evaluate::{evaluate_option_model, evaluate_policy_model, SolveConfig, SolveMethod};
pub use interchange::{from_json_str, load_mdp, save_mdp, to_json_string};
pub use models::{action_models, true_value_model, true_value_model_with_horizon, DEFAULT_MARGIN};
pub use subgoal::SubgoalSpec;
