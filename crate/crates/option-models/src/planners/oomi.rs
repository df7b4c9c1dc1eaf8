//! Option-option model iteration: simultaneous dynamic programming over one
//! option model per subgoal, where every current model is also a candidate
//! building block for every other (and for itself, allowing repeated
//! squaring).

use std::sync::Arc;

use crate::algebra::{ModelMatrix, ValueModel};
use crate::error::{Error, Result};
use crate::mdp::SubgoalSpec;
use crate::planners::report::{ExperimentReport, PlannerConfig};
use crate::planners::update::{sweep_model, Continuation, SweepResult};

/// Jointly iterates one model per subgoal. With `include_learned`, sweep k
/// maximizes over the base set plus the iteration-k snapshot of all subgoal
/// models (option-option iteration); without it, only the base set is
/// searched (independent intra-option runs that share sweep accounting).
///
/// Updates are Jacobi: every row update reads the previous sweep's models.
/// A subgoal's model freezes at the first sweep that changes none of its
/// entries by more than `eps`; frozen models stay available as candidates
/// but are no longer recomputed, and the discarded confirming sweep is not
/// counted in iterations or backups.
pub(crate) fn multi_model_iterate(
    base: &[ModelMatrix],
    subgoals: &[SubgoalSpec],
    floor: &ValueModel,
    cfg: &PlannerConfig,
    include_learned: bool,
) -> Result<(Vec<ModelMatrix>, ExperimentReport)> {
    if base.is_empty() {
        return Err(Error::EmptyModelSet);
    }
    if subgoals.is_empty() {
        return Err(Error::InvalidConfig("no subgoals".into()));
    }
    let n = base[0].n();
    for m in base {
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.n(),
            });
        }
    }
    for g in subgoals {
        g.validate(n)?;
    }
    if floor.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: floor.n(),
        });
    }
    if !include_learned {
        for s in 0..n {
            if !base.iter().any(|m| m.available_at(s)) {
                return Err(Error::NoCandidate { state: s });
            }
        }
    }

    let planned: Vec<Vec<usize>> = subgoals.iter().map(|g| g.planned_rows(n)).collect();
    let mut models: Vec<Arc<ModelMatrix>> =
        subgoals.iter().map(|_| Arc::new(floor.to_model())).collect();
    let mut frozen = vec![false; subgoals.len()];
    let mut report = ExperimentReport::default();

    loop {
        let mut updates: Vec<(usize, SweepResult)> = Vec::new();
        {
            let mut candidates: Vec<&ModelMatrix> = base.iter().collect();
            if include_learned {
                candidates.extend(models.iter().map(|m| m.as_ref()));
            }
            for (g, spec) in subgoals.iter().enumerate() {
                if frozen[g] {
                    continue;
                }
                let result = sweep_model(
                    &candidates,
                    &models[g],
                    &spec.g,
                    &planned[g],
                    &Continuation::Free,
                    &cfg.tie,
                );
                updates.push((g, result));
            }
        }

        report.sweeps += 1;
        let mut residual = 0.0f64;
        let mut changed_any = false;
        for (g, SweepResult { model, delta }) in updates {
            residual = residual.max(delta);
            if delta > cfg.eps {
                changed_any = true;
                report.backups_total += planned[g].len() as u64;
                models[g] = Arc::new(model);
            } else {
                // Converged: discard the no-change update and stop
                // recomputing this subgoal.
                frozen[g] = true;
            }
        }
        report.per_iteration_residuals.push(residual);
        if changed_any {
            report.iterations += 1;
        }
        if frozen.iter().all(|&f| f) {
            report.converged = true;
            break;
        }
        if report.sweeps >= cfg.max_iters {
            break;
        }
    }

    report.subgoal_converged = frozen;
    let models = models
        .into_iter()
        .map(|m| Arc::try_unwrap(m).unwrap_or_else(|a| (*a).clone()))
        .collect();
    Ok((models, report.finish(n)))
}

/// Option-option model iteration over the base set and all current subgoal
/// models, one model per subgoal, each initialized to the floor. If some
/// subgoal is the floor itself ("keep going forever"), its final reward
/// block is the hierarchically optimal value function — the optimal value
/// function whenever the base covers all primitive actions.
pub fn oomi(
    base: &[ModelMatrix],
    subgoals: &[SubgoalSpec],
    floor: &ValueModel,
    cfg: &PlannerConfig,
) -> Result<(Vec<ModelMatrix>, ExperimentReport)> {
    multi_model_iterate(base, subgoals, floor, cfg, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TransRow;
    use crate::mdp::{action_models, true_value_model, Mdp, MdpAction};
    use crate::planners::value_iter::optimality_iterate_value;

    fn tiny_mdp() -> Mdp {
        Mdp::new(
            3,
            0.5,
            vec![2],
            vec![
                MdpAction {
                    id: "a".into(),
                    reward: vec![-1.0, 0.0, 0.0],
                    trans: vec![
                        TransRow::from_dense(&[0.0, 0.5, 0.0]),
                        TransRow::from_dense(&[0.25, 0.0, 0.25]),
                        TransRow::Empty,
                    ],
                    available: vec![true, true, true],
                },
                MdpAction {
                    id: "b".into(),
                    reward: vec![0.5, -0.5, 0.0],
                    trans: vec![
                        TransRow::from_dense(&[0.25, 0.25, 0.0]),
                        TransRow::from_dense(&[0.0, 0.0, 0.5]),
                        TransRow::Empty,
                    ],
                    available: vec![true, true, true],
                },
            ],
        )
        .unwrap()
    }

    #[test]
    fn floor_subgoal_recovers_optimal_values() {
        let mdp = tiny_mdp();
        let base = action_models(&mdp);
        let floor = true_value_model(&mdp, 1.0).unwrap();
        let subgoals = vec![SubgoalSpec::new("floor", floor.clone())];
        let cfg = PlannerConfig::default();
        let (models, report) = oomi(&base, &subgoals, &floor, &cfg).unwrap();
        assert!(report.converged);
        let oracle = optimality_iterate_value(&base, &floor, &PlannerConfig::with_eps(1e-12))
            .unwrap()
            .0;
        for s in 0..3 {
            assert!((models[0].reward()[s] - oracle.reward()[s]).abs() < 10.0 * cfg.eps);
        }
    }

    #[test]
    fn extra_subgoals_do_not_disturb_the_floor_model() {
        let mdp = tiny_mdp();
        let base = action_models(&mdp);
        let floor = true_value_model(&mdp, 1.0).unwrap();
        let subgoals = vec![
            SubgoalSpec::new("floor", floor.clone()),
            SubgoalSpec::new("bonus", ValueModel::new(vec![0.0, 0.0, 100.0])),
        ];
        let cfg = PlannerConfig::default();
        let (models, report) = oomi(&base, &subgoals, &floor, &cfg).unwrap();
        assert!(report.converged);
        assert_eq!(report.subgoal_converged, vec![true, true]);
        let oracle = optimality_iterate_value(&base, &floor, &PlannerConfig::with_eps(1e-12))
            .unwrap()
            .0;
        for s in 0..3 {
            assert!((models[0].reward()[s] - oracle.reward()[s]).abs() < 10.0 * cfg.eps);
        }
    }

    #[test]
    fn initiation_sets_pin_unplanned_rows() {
        let mdp = tiny_mdp();
        let base = action_models(&mdp);
        let floor = true_value_model(&mdp, 1.0).unwrap();
        let subgoals = vec![SubgoalSpec::new(
            "restricted",
            ValueModel::new(vec![0.0, 0.0, 100.0]),
        )
        .with_initiation(vec![1])];
        let (models, _) = oomi(&base, &subgoals, &floor, &PlannerConfig::default()).unwrap();
        // Rows 0 and 2 stay at the floor initialization.
        assert_eq!(models[0].reward()[0], floor.reward()[0]);
        assert_eq!(models[0].reward()[2], floor.reward()[2]);
        assert!(models[0].row(0).is_empty());
        // Row 1 was planned.
        assert!(models[0].reward()[1] != floor.reward()[1]);
    }

    #[test]
    fn reports_partial_convergence_when_budget_runs_out() {
        let mdp = tiny_mdp();
        let base = action_models(&mdp);
        let floor = true_value_model(&mdp, 1.0).unwrap();
        let subgoals = vec![SubgoalSpec::new("floor", floor.clone())];
        let cfg = PlannerConfig {
            max_iters: 2,
            ..PlannerConfig::default()
        };
        let (_, report) = oomi(&base, &subgoals, &floor, &cfg).unwrap();
        assert!(!report.converged);
        assert_eq!(report.subgoal_converged, vec![false]);
        assert_eq!(report.sweeps, 2);
    }

    #[test]
    fn determinism_across_runs() {
        let mdp = tiny_mdp();
        let base = action_models(&mdp);
        let floor = true_value_model(&mdp, 1.0).unwrap();
        let subgoals = vec![
            SubgoalSpec::new("floor", floor.clone()),
            SubgoalSpec::new("bonus", ValueModel::new(vec![7.0, 0.0, 21.0])),
        ];
        let cfg = PlannerConfig::default();
        let (m1, r1) = oomi(&base, &subgoals, &floor, &cfg).unwrap();
        let (m2, r2) = oomi(&base, &subgoals, &floor, &cfg).unwrap();
        assert_eq!(r1.iterations, r2.iterations);
        assert_eq!(r1.backups_total, r2.backups_total);
        assert_eq!(r1.per_iteration_residuals, r2.per_iteration_residuals);
        for (a, b) in m1.iter().zip(m2.iter()) {
            assert_eq!(a.max_abs_diff(b), 0.0);
        }
    }
}
