//! Building a domain instance and dispatching it to a planner.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::ValueModel;
use crate::domains::{
    hanoi_mdp, hanoi_start_index, hanoi_subgoals, nine_rooms_mdp_at, nine_rooms_subgoals,
    nine_rooms_width, GoalCorner, DEFAULT_HANOI_SUBGOAL_K, DEFAULT_NINE_ROOMS_SUBGOAL_K,
};
use crate::error::Result;
use crate::mdp::{action_models, true_value_model, Mdp, SubgoalSpec, DEFAULT_MARGIN};
use crate::planners::{aopmi, oomi, optimality_iterate_value, ExperimentReport};
use crate::runner::spec::{Algorithm, Domain, RunSpec, Variant};

/// The outcome of one run: counters from the planner plus the optimal-value
/// estimate (the floor-subgoal model's reward block).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub domain: String,
    pub variant: String,
    pub size: usize,
    pub algorithm: String,
    pub n: usize,
    pub eps: f64,
    pub iterations: usize,
    pub sweeps: usize,
    pub backups_total: u64,
    pub backups_per_state: f64,
    pub converged: bool,
    pub value_at_start: f64,
    pub start_state: usize,
    pub runtime_ms: f64,
    #[serde(skip)]
    pub value: Vec<f64>,
}

/// Builds the MDP for a spec.
pub fn build_mdp(spec: &RunSpec) -> Result<Mdp> {
    let stochastic = spec.variant == Variant::Stochastic;
    let p = spec.effective_slip();
    match spec.domain {
        Domain::Hanoi => hanoi_mdp(spec.size, stochastic, p),
        Domain::NineRooms => nine_rooms_mdp_at(spec.size, stochastic, p, spec.goal_corner),
    }
}

/// The domain's subgoal value models. The floor ("keep going forever")
/// subgoal leads the list for Hanoi by construction; for Nine Rooms it is
/// prepended here so option-option iteration always maintains the model
/// whose reward block is the optimal value function. The two-stage planner
/// receives only the genuine subgoals.
fn build_subgoals(spec: &RunSpec, mdp: &Mdp, with_floor: bool) -> Result<Vec<SubgoalSpec>> {
    match spec.domain {
        Domain::Hanoi => {
            let k = spec.subgoal_k.unwrap_or(DEFAULT_HANOI_SUBGOAL_K);
            let mut subgoals = hanoi_subgoals(mdp, k)?;
            if !with_floor {
                subgoals.remove(0);
            }
            Ok(subgoals)
        }
        Domain::NineRooms => {
            let k = spec.subgoal_k.unwrap_or(DEFAULT_NINE_ROOMS_SUBGOAL_K);
            let mut subgoals = if spec.size >= 2 {
                nine_rooms_subgoals(spec.size, k)?
            } else {
                Vec::new()
            };
            if with_floor {
                subgoals.insert(
                    0,
                    SubgoalSpec::new("true-value", true_value_model(mdp, DEFAULT_MARGIN)?),
                );
            }
            Ok(subgoals)
        }
    }
}

/// The conventional start state: all discs on the left peg, or the corner
/// cell diagonally opposite the goal.
pub fn start_state(spec: &RunSpec, n: usize) -> usize {
    match spec.domain {
        Domain::Hanoi => hanoi_start_index(spec.size),
        Domain::NineRooms => {
            let width = nine_rooms_width(spec.size);
            let opposite = match spec.goal_corner {
                GoalCorner::NorthWest => GoalCorner::SouthEast,
                GoalCorner::NorthEast => GoalCorner::SouthWest,
                GoalCorner::SouthWest => GoalCorner::NorthEast,
                GoalCorner::SouthEast => GoalCorner::NorthWest,
            };
            let cell = opposite.cell(width);
            debug_assert!(cell.index(width) < n);
            cell.index(width)
        }
    }
}

/// Runs one experiment end to end. Deterministic given the spec.
pub fn run(spec: &RunSpec) -> Result<RunReport> {
    let started = Instant::now();
    let mdp = build_mdp(spec)?;
    let floor = true_value_model(&mdp, DEFAULT_MARGIN)?;
    let (value, report): (ValueModel, ExperimentReport) = match spec.algorithm {
        Algorithm::Apmi => {
            let base = action_models(&mdp);
            optimality_iterate_value(&base, &floor, &spec.config)?
        }
        Algorithm::Aopmi => {
            let subgoals = build_subgoals(spec, &mdp, false)?;
            aopmi(&mdp, &subgoals, &spec.config)?
        }
        Algorithm::Oomi => {
            let base = action_models(&mdp);
            let subgoals = build_subgoals(spec, &mdp, true)?;
            let (models, report) = oomi(&base, &subgoals, &floor, &spec.config)?;
            (ValueModel::new(models[0].reward().to_vec()), report)
        }
    };
    let runtime_ms = started.elapsed().as_secs_f64() * 1e3;
    let start = start_state(spec, mdp.n());
    Ok(RunReport {
        domain: spec.domain.to_string(),
        variant: spec.variant.to_string(),
        size: spec.size,
        algorithm: spec.algorithm.to_string(),
        n: mdp.n(),
        eps: spec.config.eps,
        iterations: report.iterations,
        sweeps: report.sweeps,
        backups_total: report.backups_total,
        backups_per_state: report.backups_per_state,
        converged: report.converged,
        value_at_start: value.reward()[start],
        start_state: start,
        runtime_ms,
        value: value.into_reward(),
    })
}
