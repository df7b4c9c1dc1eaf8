//! Iteration and backup accounting.

use crate::algebra::TieRule;

/// Backup-counting convention. `Recompute` counts one backup per
/// recomputation of one state's row of one model, restricted to sweeps in
/// which that model actually changed by more than `eps`: frozen models,
/// rows outside initiation sets, and the final confirming sweep (the one
/// that detects no change) contribute nothing. This reproduces the
/// iterations == backups-per-state pattern of flat value iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CountMode {
    #[default]
    Recompute,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlannerConfig {
    /// Convergence threshold: max-norm over reward components and
    /// transition entries.
    pub eps: f64,
    /// Sweep budget before reporting non-convergence.
    pub max_iters: usize,
    pub tie: TieRule,
    pub count_mode: CountMode,
}

impl Default for PlannerConfig {
    fn default() -> PlannerConfig {
        PlannerConfig {
            eps: 1e-9,
            max_iters: 1_000_000,
            tie: TieRule::default(),
            count_mode: CountMode::Recompute,
        }
    }
}

impl PlannerConfig {
    pub fn with_eps(eps: f64) -> PlannerConfig {
        PlannerConfig {
            eps,
            ..PlannerConfig::default()
        }
    }
}

/// What a planning run did: counted iterations, total sweeps (including the
/// final no-change sweep), backup counts and per-sweep residuals.
///
/// `iterations` counts the sweeps in which something changed by more than
/// `eps`; the confirming sweep that detects convergence is performed and
/// recorded in `sweeps` and `per_iteration_residuals` but not counted.
#[derive(Clone, Debug, Default)]
pub struct ExperimentReport {
    pub iterations: usize,
    pub sweeps: usize,
    pub backups_total: u64,
    pub backups_per_state: f64,
    pub per_iteration_residuals: Vec<f64>,
    pub converged: bool,
    /// Per-subgoal convergence flags for the multi-model planners; empty
    /// for single-model runs.
    pub subgoal_converged: Vec<bool>,
}

impl ExperimentReport {
    pub(crate) fn finish(mut self, n: usize) -> ExperimentReport {
        self.backups_per_state = self.backups_total as f64 / n as f64;
        self
    }

    /// Merges two stage reports (iterations, sweeps and backups add up).
    pub fn stacked(self, other: ExperimentReport, n: usize) -> ExperimentReport {
        let mut residuals = self.per_iteration_residuals;
        residuals.extend(other.per_iteration_residuals);
        ExperimentReport {
            iterations: self.iterations + other.iterations,
            sweeps: self.sweeps + other.sweeps,
            backups_total: self.backups_total + other.backups_total,
            backups_per_state: 0.0,
            per_iteration_residuals: residuals,
            converged: self.converged && other.converged,
            subgoal_converged: {
                let mut flags = self.subgoal_converged;
                flags.extend(other.subgoal_converged);
                flags
            },
        }
        .finish(n)
    }
}
