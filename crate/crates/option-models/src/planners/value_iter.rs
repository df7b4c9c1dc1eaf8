//! Policy-model optimality iteration: generalized value iteration over an
//! arbitrary base set of models (Tables' row `<*, 0>`).

use crate::algebra::{ModelMatrix, ValueModel};
use crate::error::{Error, Result};
use crate::par;
use crate::planners::report::{ExperimentReport, PlannerConfig};

/// Iterates `V <- max_O compose(O, V)` from the floor `V0` until the
/// largest per-state change is at most `cfg.eps`. With the primitive action
/// models as the base this is plain value iteration; with option models it
/// converges to the hierarchically optimal policy model.
///
/// Non-convergence within `cfg.max_iters` is reported, not raised: the
/// returned report has `converged = false`.
pub fn optimality_iterate_value(
    base: &[ModelMatrix],
    floor: &ValueModel,
    cfg: &PlannerConfig,
) -> Result<(ValueModel, ExperimentReport)> {
    if base.is_empty() {
        return Err(Error::EmptyModelSet);
    }
    let n = floor.n();
    for m in base {
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.n(),
            });
        }
    }
    for s in 0..n {
        if !base.iter().any(|m| m.available_at(s)) {
            return Err(Error::NoCandidate { state: s });
        }
    }

    let rows: Vec<usize> = (0..n).collect();
    let mut v = floor.clone();
    let mut report = ExperimentReport::default();
    loop {
        let reward: Vec<f64> = par::map_rows(
            &rows,
            || (),
            |_, s| {
                let mut best = f64::NEG_INFINITY;
                for m in base {
                    if m.available_at(s) {
                        let q = m.reward()[s] + m.row(s).dot(v.reward());
                        if q > best {
                            best = q;
                        }
                    }
                }
                best
            },
        );
        let next = ValueModel::new(reward);
        let delta = next.max_abs_diff(&v);
        report.sweeps += 1;
        report.per_iteration_residuals.push(delta);
        if delta > cfg.eps {
            report.iterations += 1;
            report.backups_total += n as u64;
            v = next;
        } else {
            report.converged = true;
            break;
        }
        if report.sweeps >= cfg.max_iters {
            break;
        }
    }
    Ok((v, report.finish(n)))
}
