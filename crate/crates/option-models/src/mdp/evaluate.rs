//! Exact evaluation of policy and option models: the unique fixed points of
//! the expectation equations `V = E_pi(O) V` and `M = E_pi(O) E_beta(I, M)`.

use crate::algebra::{
    expectation_model, termination_model, ModelMatrix, PolicyWeights, Termination, TransRow,
    ValueModel,
};
use crate::error::{Error, Result};
use crate::linalg::solve_dense;

/// How to reach the fixed point: repeated substitution or one linear solve.
/// The two must agree within `10 * eps`; tests cross-check them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    Iterative,
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveConfig {
    pub eps: f64,
    pub max_iters: usize,
    pub method: SolveMethod,
}

impl Default for SolveConfig {
    fn default() -> SolveConfig {
        SolveConfig {
            eps: 1e-9,
            max_iters: 1_000_000,
            method: SolveMethod::Iterative,
        }
    }
}

impl SolveConfig {
    pub fn direct() -> SolveConfig {
        SolveConfig {
            method: SolveMethod::Direct,
            ..SolveConfig::default()
        }
    }
}

/// Evaluates the policy model: the value model `V` with
/// `V = compose(E_pi(base), V)`. Non-convergence within `max_iters` signals
/// an improper policy (reachable only when gamma = 1).
pub fn evaluate_policy_model(
    base: &[ModelMatrix],
    pi: &PolicyWeights,
    cfg: &SolveConfig,
) -> Result<ValueModel> {
    let expected = expectation_model(pi, base)?;
    match cfg.method {
        SolveMethod::Iterative => {
            let n = expected.n();
            let mut v = ValueModel::constant(n, 0.0);
            let mut residual = f64::INFINITY;
            for _ in 0..cfg.max_iters {
                let next = expected.compose_value(&v)?;
                residual = next.max_abs_diff(&v);
                v = next;
                if residual <= cfg.eps {
                    return Ok(v);
                }
            }
            Err(Error::Diverged {
                max_iters: cfg.max_iters,
                residual,
            })
        }
        SolveMethod::Direct => {
            let n = expected.n();
            // (I - P) V = R
            let mut a = vec![0.0; n * n];
            for s in 0..n {
                a[s * n + s] = 1.0;
                for (j, p) in expected.row(s).iter() {
                    a[s * n + j] -= p;
                }
            }
            let v = solve_dense(&a, expected.reward(), n, 1)?;
            Ok(ValueModel::new(v))
        }
    }
}

/// Evaluates the option model: the fixed point of
/// `M = compose(E_pi(base), E_beta(I, M))`.
pub fn evaluate_option_model(
    base: &[ModelMatrix],
    pi: &PolicyWeights,
    beta: &Termination,
    cfg: &SolveConfig,
) -> Result<ModelMatrix> {
    let expected = expectation_model(pi, base)?;
    let n = expected.n();
    if beta.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: beta.n(),
        });
    }
    match cfg.method {
        SolveMethod::Iterative => {
            let mut m = ModelMatrix::new(vec![0.0; n], vec![TransRow::Empty; n]);
            let mut residual = f64::INFINITY;
            for _ in 0..cfg.max_iters {
                let next = expected.compose(&termination_model(beta, &m)?)?;
                residual = next.max_abs_diff(&m);
                m = next;
                if residual <= cfg.eps {
                    return Ok(m);
                }
            }
            Err(Error::Diverged {
                max_iters: cfg.max_iters,
                residual,
            })
        }
        SolveMethod::Direct => {
            // Writing D for diag(1 - beta) and B for diag(beta):
            //   reward: (I - P D) r = R
            //   trans:  (I - P D) T = P B
            let mut a = vec![0.0; n * n];
            let mut rhs = vec![0.0; n * (n + 1)];
            for s in 0..n {
                a[s * n + s] = 1.0;
                rhs[s * (n + 1)] = expected.reward()[s];
                for (j, p) in expected.row(s).iter() {
                    a[s * n + j] -= p * (1.0 - beta.at(j));
                    rhs[s * (n + 1) + 1 + j] = p * beta.at(j);
                }
            }
            let x = solve_dense(&a, &rhs, n, n + 1)?;
            let mut reward = Vec::with_capacity(n);
            let mut trans = Vec::with_capacity(n);
            for s in 0..n {
                reward.push(x[s * (n + 1)]);
                trans.push(TransRow::from_dense(&x[s * (n + 1) + 1..(s + 1) * (n + 1)]));
            }
            Ok(ModelMatrix::new(reward, trans))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{apply, compose, Rasp};
    use crate::mdp::core::{Mdp, MdpAction};
    use crate::mdp::models::{action_models, true_value_model};

    fn two_state_chain() -> Mdp {
        Mdp::new(
            2,
            0.5,
            vec![1],
            vec![MdpAction {
                id: "step".into(),
                reward: vec![1.0, 0.0],
                trans: vec![TransRow::One(1, 0.5), TransRow::Empty],
                available: vec![true, true],
            }],
        )
        .unwrap()
    }

    // Two states, no exits, gamma = 0.5: both actions proper.
    fn looping_pair() -> Vec<ModelMatrix> {
        let swap = ModelMatrix::from_dense(
            vec![1.0, -1.0],
            vec![vec![0.0, 0.5], vec![0.5, 0.0]],
        );
        let stay = ModelMatrix::from_dense(
            vec![0.0, 2.0],
            vec![vec![0.5, 0.0], vec![0.0, 0.5]],
        );
        vec![swap, stay]
    }

    #[test]
    fn chain_value_solves_by_hand() {
        // V(0) = 1 + 0.5 V(1); V(1) = 0 (exit) -> V = [1, 0].
        let mdp = two_state_chain();
        let base = action_models(&mdp);
        let pi = PolicyWeights::deterministic(&[0, 0]);
        let v = evaluate_policy_model(&base, &pi, &SolveConfig::default()).unwrap();
        assert!((v.reward()[0] - 1.0).abs() < 1e-8);
        assert!(v.reward()[1].abs() < 1e-12);
    }

    #[test]
    fn iterative_and_direct_agree() {
        let base = looping_pair();
        let pi = PolicyWeights::new(vec![vec![(0, 0.3), (1, 0.7)], vec![(0, 1.0)]]);
        let cfg = SolveConfig::default();
        let it = evaluate_policy_model(&base, &pi, &cfg).unwrap();
        let di = evaluate_policy_model(&base, &pi, &SolveConfig::direct()).unwrap();
        assert!(it.max_abs_diff(&di) < 10.0 * cfg.eps);

        let beta = Termination::new(vec![0.25, 0.5]).unwrap();
        let mo_it = evaluate_option_model(&base, &pi, &beta, &cfg).unwrap();
        let mo_di = evaluate_option_model(&base, &pi, &beta, &SolveConfig::direct()).unwrap();
        assert!(mo_it.max_abs_diff(&mo_di) < 10.0 * cfg.eps);
    }

    #[test]
    fn policy_model_base_is_its_own_fixed_point() {
        // A base set containing a policy model (zero transitions): composing
        // the expectation with V returns the same rewards immediately.
        let base = looping_pair();
        let pi = PolicyWeights::deterministic(&[1, 1]);
        let v_pi = evaluate_policy_model(&base, &pi, &SolveConfig::default()).unwrap();
        let policy_model = v_pi.to_model();
        let again = evaluate_policy_model(
            &[policy_model],
            &PolicyWeights::deterministic(&[0, 0]),
            &SolveConfig::default(),
        )
        .unwrap();
        assert!(again.max_abs_diff(&v_pi) < 1e-9);
    }

    #[test]
    fn option_with_immediate_termination_is_one_step() {
        let base = looping_pair();
        let pi = PolicyWeights::deterministic(&[0, 1]);
        let beta = Termination::always(2);
        let m = evaluate_option_model(&base, &pi, &beta, &SolveConfig::default()).unwrap();
        let e = expectation_model(&pi, &base).unwrap();
        assert!(m.max_abs_diff(&e) < 1e-12);
    }

    #[test]
    fn option_that_never_stops_recovers_policy_value() {
        let base = looping_pair();
        let pi = PolicyWeights::deterministic(&[0, 0]);
        let cfg = SolveConfig::default();
        let m = evaluate_option_model(&base, &pi, &Termination::never(2), &cfg).unwrap();
        let v = evaluate_policy_model(&base, &pi, &cfg).unwrap();
        for s in 0..2 {
            assert!((m.reward()[s] - v.reward()[s]).abs() < 10.0 * cfg.eps);
            assert!(m.row(s).sum() < 10.0 * cfg.eps);
        }
    }

    #[test]
    fn chain_option_discounts_by_hitting_time() {
        // Deterministic step 0 -> 1, terminate at 1: the transition row from
        // state 0 is gamma^1 * indicator(1); from 1 the option takes the
        // exit step and is absorbed.
        let mdp = two_state_chain();
        let base = action_models(&mdp);
        let pi = PolicyWeights::deterministic(&[0, 0]);
        let beta = Termination::indicator(2, &[1]);
        let m = evaluate_option_model(&base, &pi, &beta, &SolveConfig::default()).unwrap();
        assert!((m.reward()[0] - 1.0).abs() < 1e-9);
        let row0 = m.row(0).to_dense(2);
        assert!((row0[1] - 0.5).abs() < 1e-9);
        assert!(row0[0].abs() < 1e-12);
        assert!(m.row(1).sum() < 1e-9);
    }

    #[test]
    fn divergence_reported_for_improper_policy() {
        // gamma = 1 self-loop with reward -1 never converges.
        let mdp = Mdp::new(
            2,
            1.0,
            vec![1],
            vec![
                MdpAction {
                    id: "loop".into(),
                    reward: vec![-1.0, 0.0],
                    trans: vec![TransRow::One(0, 1.0), TransRow::Empty],
                    available: vec![true, true],
                },
                MdpAction {
                    id: "exit".into(),
                    reward: vec![-1.0, 0.0],
                    trans: vec![TransRow::One(1, 1.0), TransRow::Empty],
                    available: vec![true, true],
                },
            ],
        )
        .unwrap();
        let base = action_models(&mdp);
        let pi = PolicyWeights::deterministic(&[0, 0]);
        let cfg = SolveConfig {
            max_iters: 500,
            ..SolveConfig::default()
        };
        assert!(matches!(
            evaluate_policy_model(&base, &pi, &cfg),
            Err(Error::Diverged { .. })
        ));
    }

    #[test]
    fn policy_models_dominate_terminating_options() {
        // sO Pi >= sO G- for the true value model G-.
        let base = looping_pair();
        let pi = PolicyWeights::deterministic(&[0, 1]);
        let cfg = SolveConfig::default();
        let v_pi = evaluate_policy_model(&base, &pi, &cfg).unwrap();
        let beta = Termination::new(vec![0.5, 0.25]).unwrap();
        let o = evaluate_option_model(&base, &pi, &beta, &cfg).unwrap();
        // A strict floor for this tiny MDP: min reward / (1 - gamma) - 1.
        let g_minus = ValueModel::constant(2, -1.0 / 0.5 - 1.0);
        let via_policy = compose(&o, &v_pi.to_model()).unwrap();
        let via_floor = compose(&o, &g_minus.to_model()).unwrap();
        for s in 0..2 {
            let x = Rasp::deterministic(2, s);
            let a = apply(&x, &via_policy).unwrap().reward;
            let b = apply(&x, &via_floor).unwrap().reward;
            assert!(a >= b - 1e-12, "state {s}: {a} < {b}");
        }
    }

    #[test]
    fn every_policy_beats_the_floor() {
        // Enumerate all deterministic policies of a 3-state MDP and check
        // V^pi > V^- everywhere.
        let mdp = Mdp::new(
            3,
            0.5,
            vec![2],
            vec![
                MdpAction {
                    id: "a".into(),
                    reward: vec![-1.0, 0.5, 0.0],
                    trans: vec![
                        TransRow::from_dense(&[0.25, 0.25, 0.0]),
                        TransRow::from_dense(&[0.0, 0.0, 0.5]),
                        TransRow::Empty,
                    ],
                    available: vec![true, true, true],
                },
                MdpAction {
                    id: "b".into(),
                    reward: vec![1.0, -0.5, 0.0],
                    trans: vec![
                        TransRow::from_dense(&[0.0, 0.5, 0.0]),
                        TransRow::from_dense(&[0.5, 0.0, 0.0]),
                        TransRow::Empty,
                    ],
                    available: vec![true, true, true],
                },
            ],
        )
        .unwrap();
        let base = action_models(&mdp);
        let floor = true_value_model(&mdp, 1.0).unwrap();
        for bits in 0..4u32 {
            let choice = vec![(bits & 1) as usize, ((bits >> 1) & 1) as usize, 0];
            let pi = PolicyWeights::deterministic(&choice);
            let v = evaluate_policy_model(&base, &pi, &SolveConfig::default()).unwrap();
            for s in 0..3 {
                assert!(v.reward()[s] > floor.reward()[s]);
            }
        }
    }
}
