//! Oracle cross-checks: high-precision value iteration, exhaustive
//! enumeration over deterministic options on tiny MDPs, and a Monte-Carlo
//! spot check of option-model evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{PolicyWeights, Termination, TransRow, ValueModel};
use crate::error::Result;
use crate::mdp::{
    action_models, evaluate_option_model, true_value_model, Mdp, MdpAction, SolveConfig,
    DEFAULT_MARGIN,
};
use crate::planners::{optimality_iterate_option, optimality_iterate_value, PlannerConfig};
use crate::mdp::SubgoalSpec;
use crate::runner::run::{build_mdp, run, start_state};
use crate::runner::spec::RunSpec;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tol: f64,
    /// Max-norm gap between the run's value estimate and the high-precision
    /// value-iteration oracle.
    pub value_gap: f64,
    pub value_at_start: f64,
    pub oracle_at_start: f64,
    pub run_converged: bool,
    /// Worst gap between iterative option optimization and exhaustive
    /// enumeration on the built-in 3-state suite.
    pub enumeration_gap: f64,
    /// Monte-Carlo agreement of option-model evaluation within three
    /// standard errors.
    pub monte_carlo_ok: bool,
    pub passed: bool,
}

/// Recomputes the optimal value function by value iteration at `eps = 1e-12`
/// and compares the run's value estimate against it; also exercises the
/// built-in small-MDP oracles.
pub fn verify(spec: &RunSpec, tol: f64) -> Result<VerificationReport> {
    let report = run(spec)?;
    let mdp = build_mdp(spec)?;
    let oracle = value_iteration_oracle(&mdp, 1e-12)?;
    let value_gap = report
        .value
        .iter()
        .zip(oracle.reward().iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let start = start_state(spec, mdp.n());

    let enumeration_gap = builtin_enumeration_gap()?;
    let monte_carlo_ok = builtin_monte_carlo_check(spec.seed)?;

    let passed =
        report.converged && value_gap <= tol && enumeration_gap <= 1e-8 && monte_carlo_ok;
    Ok(VerificationReport {
        tol,
        value_gap,
        value_at_start: report.value_at_start,
        oracle_at_start: oracle.reward()[start],
        run_converged: report.converged,
        enumeration_gap,
        monte_carlo_ok,
        passed,
    })
}

/// Optimal values by plain value iteration over the primitive actions.
pub fn value_iteration_oracle(mdp: &Mdp, eps: f64) -> Result<ValueModel> {
    let base = action_models(mdp);
    let floor = true_value_model(mdp, DEFAULT_MARGIN)?;
    let cfg = PlannerConfig {
        eps,
        max_iters: 10_000_000,
        ..PlannerConfig::default()
    };
    let (v, report) = optimality_iterate_value(&base, &floor, &cfg)?;
    if !report.converged {
        return Err(crate::error::Error::Diverged {
            max_iters: cfg.max_iters,
            residual: *report.per_iteration_residuals.last().unwrap_or(&f64::NAN),
        });
    }
    Ok(v)
}

/// Best subgoal value per state over every deterministic (policy,
/// termination) pair, each evaluated exactly by a linear solve.
pub fn enumerate_option_optimum(mdp: &Mdp, g: &ValueModel) -> Result<Vec<f64>> {
    let base = action_models(mdp);
    let n = mdp.n();
    let num_actions = base.len();
    let mut best = vec![f64::NEG_INFINITY; n];
    let mut choice = vec![0usize; n];
    let total: u64 = (num_actions as u64).pow(n as u32);
    for mut code in 0..total {
        let mut valid = true;
        for s in 0..n {
            choice[s] = (code % num_actions as u64) as usize;
            code /= num_actions as u64;
            if !base[choice[s]].available_at(s) {
                valid = false;
            }
        }
        if !valid {
            continue;
        }
        let pi = PolicyWeights::deterministic(&choice);
        for beta_bits in 0..(1u32 << n) {
            let beta =
                Termination::new((0..n).map(|s| ((beta_bits >> s) & 1) as f64).collect())?;
            let m = evaluate_option_model(&base, &pi, &beta, &SolveConfig::direct())?;
            let v = m.compose_value(g)?;
            for s in 0..n {
                if v.reward()[s] > best[s] {
                    best[s] = v.reward()[s];
                }
            }
        }
    }
    Ok(best)
}

/// The built-in 3-state MDPs exercised by `verify`.
pub fn builtin_small_mdps() -> Vec<Mdp> {
    let mk = |rows_a: [&[f64]; 3], rows_b: [&[f64]; 3], ra: [f64; 3], rb: [f64; 3]| {
        Mdp::new(
            3,
            0.5,
            vec![2],
            vec![
                MdpAction {
                    id: "a".into(),
                    reward: ra.to_vec(),
                    trans: rows_a.iter().map(|r| TransRow::from_dense(r)).collect(),
                    available: vec![true, true, true],
                },
                MdpAction {
                    id: "b".into(),
                    reward: rb.to_vec(),
                    trans: rows_b.iter().map(|r| TransRow::from_dense(r)).collect(),
                    available: vec![true, true, true],
                },
            ],
        )
        .unwrap()
    };
    vec![
        mk(
            [&[0.0, 0.5, 0.0], &[0.25, 0.0, 0.25], &[0.0, 0.0, 0.0]],
            [&[0.25, 0.25, 0.0], &[0.0, 0.0, 0.5], &[0.0, 0.0, 0.0]],
            [-1.0, 0.0, 0.0],
            [0.5, -0.5, 0.0],
        ),
        mk(
            [&[0.5, 0.0, 0.0], &[0.0, 0.25, 0.25], &[0.0, 0.0, 0.0]],
            [&[0.0, 0.0, 0.5], &[0.5, 0.0, 0.0], &[0.0, 0.0, 0.0]],
            [1.0, -1.0, 0.0],
            [0.0, 1.0, 0.0],
        ),
    ]
}

fn builtin_enumeration_gap() -> Result<f64> {
    let mut worst = 0.0f64;
    let cfg = PlannerConfig::default();
    for mdp in builtin_small_mdps() {
        let base = action_models(&mdp);
        let floor = true_value_model(&mdp, DEFAULT_MARGIN)?;
        for g in [
            ValueModel::new(vec![0.0, 0.0, 100.0]),
            ValueModel::new(vec![50.0, 0.0, 0.0]),
        ] {
            let spec = SubgoalSpec::new("probe", g.clone());
            let (m, _) = optimality_iterate_option(&base, &spec, &floor, &cfg)?;
            let got = m.compose_value(&g)?;
            let oracle = enumerate_option_optimum(&mdp, &g)?;
            for s in 0..mdp.n() {
                worst = worst.max((got.reward()[s] - oracle[s]).abs());
            }
        }
    }
    Ok(worst)
}

/// Simulates one option on a built-in MDP and checks the exact option model
/// entrywise within three standard errors.
fn builtin_monte_carlo_check(seed: u64) -> Result<bool> {
    let mdp = builtin_small_mdps().into_iter().next().unwrap();
    let base = action_models(&mdp);
    let pi = PolicyWeights::deterministic(&[0, 1, 0]);
    let beta = Termination::new(vec![0.0, 1.0, 0.5])?;
    let exact = evaluate_option_model(&base, &pi, &beta, &SolveConfig::direct())?;
    let (est_r, se_r, est_p, se_p) =
        simulate_option(&mdp, &pi, &beta, 100_000, seed);
    for s in 0..mdp.n() {
        let dr = (est_r[s] - exact.reward()[s]).abs();
        if dr > 3.0 * se_r[s] + 1e-9 {
            return Ok(false);
        }
        let row = exact.row(s).to_dense(mdp.n());
        for j in 0..mdp.n() {
            let dp = (est_p[s][j] - row[j]).abs();
            if dp > 3.0 * se_p[s][j] + 1e-9 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rollout estimates of an option's reward vector and discounted terminal
/// distribution. Transitions are sampled from the undiscounted kernel
/// recovered from the stored rows; termination weight `gamma^tau` is
/// accumulated explicitly.
#[allow(clippy::type_complexity)]
pub fn simulate_option(
    mdp: &Mdp,
    pi: &PolicyWeights,
    beta: &Termination,
    rollouts: usize,
    seed: u64,
) -> (Vec<f64>, Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = mdp.n();
    let gamma = mdp.gamma();
    let cap = 400; // gamma^cap is far below the statistical noise
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut est_r = vec![0.0; n];
    let mut se_r = vec![0.0; n];
    let mut est_p = vec![vec![0.0; n]; n];
    let mut se_p = vec![vec![0.0; n]; n];
    for s0 in 0..n {
        let mut rs = Vec::with_capacity(rollouts);
        let mut ps: Vec<Vec<f64>> = Vec::with_capacity(rollouts);
        for _ in 0..rollouts {
            let mut s = s0;
            let mut disc = 1.0;
            let mut total = 0.0;
            let mut terminal: Option<(usize, f64)> = None;
            for _ in 0..cap {
                if mdp.is_exit(s) {
                    break;
                }
                // Sample the action, then the undiscounted next state.
                let support = pi.support(s);
                let mut u: f64 = rng.gen();
                let mut a = support[support.len() - 1].0;
                for &(o, w) in support {
                    if u < w {
                        a = o;
                        break;
                    }
                    u -= w;
                }
                let act = &mdp.actions()[a];
                total += disc * act.reward[s];
                let mut v: f64 = rng.gen::<f64>() * gamma;
                let mut next = s;
                for (j, p) in act.trans[s].iter() {
                    if v < p {
                        next = j;
                        break;
                    }
                    v -= p;
                }
                disc *= gamma;
                s = next;
                if rng.gen::<f64>() < beta.at(s) {
                    terminal = Some((s, disc));
                    break;
                }
            }
            rs.push(total);
            let mut p_row = vec![0.0; n];
            if let Some((t, w)) = terminal {
                p_row[t] = w;
            }
            ps.push(p_row);
        }
        let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
        let se = |xs: &[f64], m: f64| {
            let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>()
                / (xs.len() as f64 - 1.0);
            (var / xs.len() as f64).sqrt()
        };
        let mr = mean(&rs);
        est_r[s0] = mr;
        se_r[s0] = se(&rs, mr);
        for j in 0..n {
            let col: Vec<f64> = ps.iter().map(|row| row[j]).collect();
            let mp = mean(&col);
            est_p[s0][j] = mp;
            se_p[s0][j] = se(&col, mp);
        }
    }
    (est_r, se_r, est_p, se_p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::spec::{Algorithm, Domain, Variant};

    #[test]
    fn deterministic_run_verifies_within_tolerance() {
        let spec = RunSpec::new(Domain::Hanoi, 3, Variant::Deterministic, Algorithm::Oomi);
        let report = verify(&spec, 1e-6).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.value_gap <= 1e-6);
        assert!((report.value_at_start - report.oracle_at_start).abs() <= 1e-6);
    }

    #[test]
    fn monte_carlo_matches_exact_evaluation() {
        assert!(builtin_monte_carlo_check(12345).unwrap());
    }

    #[test]
    fn enumeration_gap_is_tiny_on_builtin_suite() {
        assert!(builtin_enumeration_gap().unwrap() <= 1e-8);
    }
}
