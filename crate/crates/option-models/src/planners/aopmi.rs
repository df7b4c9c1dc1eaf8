//! Two-level planning with fixed operators: construct an option model per
//! subgoal from primitive actions (intra-option), freeze them, then plan a
//! value function over the frozen options (inter-option).

use crate::error::Result;
use crate::mdp::{action_models, true_value_model, Mdp, SubgoalSpec, DEFAULT_MARGIN};
use crate::planners::oomi::multi_model_iterate;
use crate::planners::report::{ExperimentReport, PlannerConfig};
use crate::planners::value_iter::optimality_iterate_value;
use crate::algebra::ValueModel;

/// Runs the two stages and sums their iteration and backup counts.
///
/// Stage 1 solves each subgoal's option model over the primitive action
/// models only (sweeps run jointly with per-subgoal freezing, which is
/// equivalent to independent runs). Stage 2 keeps the primitive actions
/// alongside the frozen option models so the final value function is
/// optimal, not merely hierarchically optimal over the options.
pub fn aopmi(
    mdp: &Mdp,
    subgoals: &[SubgoalSpec],
    cfg: &PlannerConfig,
) -> Result<(ValueModel, ExperimentReport)> {
    let base = action_models(mdp);
    let floor = true_value_model(mdp, DEFAULT_MARGIN)?;
    let (options, stage1) = multi_model_iterate(&base, subgoals, &floor, cfg, false)?;

    let mut stage2_base = base;
    stage2_base.extend(options);
    let (value, stage2) = optimality_iterate_value(&stage2_base, &floor, cfg)?;

    Ok((value, stage1.stacked(stage2, mdp.n())))
}
