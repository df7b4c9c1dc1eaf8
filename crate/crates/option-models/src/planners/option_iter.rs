//! Single-subgoal option-model optimality iteration, in the three flavours
//! of the model equations: both policy and termination free, termination
//! given, or policy given.

use crate::algebra::{expectation_model, ModelMatrix, PolicyWeights, Termination, ValueModel};
use crate::error::{Error, Result};
use crate::mdp::SubgoalSpec;
use crate::planners::report::{ExperimentReport, PlannerConfig};
use crate::planners::update::{sweep_model, Continuation, SweepResult};

fn check_base(base: &[ModelMatrix], g: &SubgoalSpec, floor: &ValueModel) -> Result<usize> {
    if base.is_empty() {
        return Err(Error::EmptyModelSet);
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
    g.validate(n)?;
    if floor.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: floor.n(),
        });
    }
    for s in 0..n {
        if !base.iter().any(|m| m.available_at(s)) {
            return Err(Error::NoCandidate { state: s });
        }
    }
    Ok(n)
}

fn iterate(
    candidates: &[&ModelMatrix],
    g: &SubgoalSpec,
    floor: &ValueModel,
    cont: Continuation<'_>,
    cfg: &PlannerConfig,
    n: usize,
) -> (ModelMatrix, ExperimentReport) {
    let rows = g.planned_rows(n);
    let mut model = floor.to_model();
    let mut report = ExperimentReport::default();
    loop {
        let SweepResult { model: next, delta } =
            sweep_model(candidates, &model, &g.g, &rows, &cont, &cfg.tie);
        report.sweeps += 1;
        report.per_iteration_residuals.push(delta);
        if delta > cfg.eps {
            report.iterations += 1;
            report.backups_total += rows.len() as u64;
            model = next;
        } else {
            report.converged = true;
            break;
        }
        if report.sweeps >= cfg.max_iters {
            break;
        }
    }
    (model, report.finish(n))
}

/// Iterates `M <- argmax over {compose(O, B) : O in base, B in {I, M}}`
/// of the composed value against `g`, from the floor model: the optimal
/// option model for the subgoal, jointly in policy and termination.
pub fn optimality_iterate_option(
    base: &[ModelMatrix],
    g: &SubgoalSpec,
    floor: &ValueModel,
    cfg: &PlannerConfig,
) -> Result<(ModelMatrix, ExperimentReport)> {
    let n = check_base(base, g, floor)?;
    let candidates: Vec<&ModelMatrix> = base.iter().collect();
    Ok(iterate(&candidates, g, floor, Continuation::Free, cfg, n))
}

/// As `optimality_iterate_option`, but the termination condition is given:
/// continuation is forced through `E_beta(I, M)`.
pub fn optimality_iterate_beta_option(
    base: &[ModelMatrix],
    beta: &Termination,
    g: &SubgoalSpec,
    floor: &ValueModel,
    cfg: &PlannerConfig,
) -> Result<(ModelMatrix, ExperimentReport)> {
    let n = check_base(base, g, floor)?;
    if beta.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: beta.n(),
        });
    }
    let candidates: Vec<&ModelMatrix> = base.iter().collect();
    Ok(iterate(
        &candidates,
        g,
        floor,
        Continuation::FixedBeta(beta),
        cfg,
        n,
    ))
}

/// As `optimality_iterate_option`, but the policy is given: the single
/// candidate is the expectation model of `pi` over the base, and the sweep
/// chooses per state between stopping and continuing. Only deterministic
/// termination is searched.
pub fn optimality_iterate_pi_option(
    base: &[ModelMatrix],
    pi: &PolicyWeights,
    g: &SubgoalSpec,
    floor: &ValueModel,
    cfg: &PlannerConfig,
) -> Result<(ModelMatrix, ExperimentReport)> {
    let n = check_base(base, g, floor)?;
    let expected = expectation_model(pi, base)?;
    let candidates = [&expected];
    Ok(iterate(&candidates, g, floor, Continuation::Free, cfg, n))
}
