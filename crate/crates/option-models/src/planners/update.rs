//! One Jacobi sweep of an option-model optimality equation.
//!
//! A sweep recomputes each planned row of a subgoal's model as the best
//! composition `O . B` over candidate models `O` and a continuation choice
//! `B`, scored against the subgoal value model: the objective for state `s`
//! is the reward of `s O (B G)`, i.e. `O.reward[s] + O.row(s) . u_B` with
//! `u_B` the reward column of `compose(B, G)`.
//!
//! Candidates are scanned in declaration order with termination (`B = I`)
//! before continuation (`B = M`); a later candidate replaces the incumbent
//! only when it improves by more than the tie threshold. All rows read the
//! previous sweep's snapshot, so updates are order-independent and may run
//! in parallel.

use crate::algebra::{compose_row, ModelMatrix, Scratch, Termination, TieRule, TransRow, ValueModel};
use crate::par;

/// The continuation structure of the equation being iterated.
pub(crate) enum Continuation<'a> {
    /// Optimal deterministic termination: `B` ranges over `{I, M}`.
    Free,
    /// A given termination condition: `B = E_beta(I, M)`.
    FixedBeta(&'a Termination),
}

pub(crate) struct SweepResult {
    pub model: ModelMatrix,
    /// Largest change over the planned rows (reward and transition entries).
    pub delta: f64,
}

/// Recomputes `rows` of `old` against `candidates`; other rows carry over.
pub(crate) fn sweep_model(
    candidates: &[&ModelMatrix],
    old: &ModelMatrix,
    goal: &ValueModel,
    rows: &[usize],
    cont: &Continuation<'_>,
    tie: &TieRule,
) -> SweepResult {
    let n = old.n();
    // Reward column of compose(B, G) for the continuation candidate.
    let u_cont: Vec<f64> = match cont {
        Continuation::Free => (0..n)
            .map(|j| old.reward()[j] + old.row(j).dot(goal.reward()))
            .collect(),
        Continuation::FixedBeta(beta) => (0..n)
            .map(|j| {
                let b = beta.at(j);
                b * goal.reward()[j]
                    + (1.0 - b) * (old.reward()[j] + old.row(j).dot(goal.reward()))
            })
            .collect(),
    };
    let u_stop = goal.reward();

    let updated: Vec<(f64, TransRow, f64)> = par::map_rows(
        rows,
        || Scratch::new(n),
        |scratch, s| {
            let mut best: Option<(usize, bool, f64)> = None; // (candidate, continue?, objective)
            for (oi, o) in candidates.iter().enumerate() {
                if !o.available_at(s) {
                    continue;
                }
                let base_reward = o.reward()[s];
                match cont {
                    Continuation::Free => {
                        let (d_stop, d_cont) = o.row(s).dot2(u_stop, &u_cont);
                        for (is_cont, obj) in
                            [(false, base_reward + d_stop), (true, base_reward + d_cont)]
                        {
                            match best {
                                None => best = Some((oi, is_cont, obj)),
                                Some((_, _, cur)) if obj > cur + tie.improve_eps => {
                                    best = Some((oi, is_cont, obj))
                                }
                                _ => {}
                            }
                        }
                    }
                    Continuation::FixedBeta(_) => {
                        let obj = base_reward + o.row(s).dot(&u_cont);
                        match best {
                            None => best = Some((oi, true, obj)),
                            Some((_, _, cur)) if obj > cur + tie.improve_eps => {
                                best = Some((oi, true, obj))
                            }
                            _ => {}
                        }
                    }
                }
            }
            let (oi, continues, _) = best.unwrap_or_else(|| {
                panic!("no candidate model available in state {s}")
            });
            let o = candidates[oi];
            let (reward, row) = if !continues {
                (o.reward()[s], o.row(s).clone())
            } else {
                match cont {
                    Continuation::Free => compose_row(o.reward()[s], o.row(s), old, scratch),
                    Continuation::FixedBeta(beta) => {
                        let mut reward = o.reward()[s];
                        for (j, p) in o.row(s).iter() {
                            let b = beta.at(j);
                            reward += p * (1.0 - b) * old.reward()[j];
                            scratch.add(j, p * b);
                            scratch.axpy(p * (1.0 - b), old.row(j));
                        }
                        (reward, scratch.drain())
                    }
                }
            };
            let delta = (reward - old.reward()[s])
                .abs()
                .max(row.max_abs_diff(old.row(s)));
            (reward, row, delta)
        },
    );

    let mut delta = 0.0f64;
    let model = if rows.len() == n {
        let mut reward = Vec::with_capacity(n);
        let mut trans = Vec::with_capacity(n);
        for (r, t, d) in updated {
            reward.push(r);
            trans.push(t);
            delta = delta.max(d);
        }
        ModelMatrix::new(reward, trans)
    } else {
        let mut reward = old.reward().to_vec();
        let mut trans = old.rows().to_vec();
        for (&s, (r, t, d)) in rows.iter().zip(updated) {
            reward[s] = r;
            trans[s] = t;
            delta = delta.max(d);
        }
        ModelMatrix::new(reward, trans)
    };
    SweepResult { model, delta }
}
