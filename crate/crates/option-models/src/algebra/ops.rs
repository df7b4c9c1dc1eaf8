//! The model operators: expectation, termination, max and argmax.

use crate::algebra::model::{ModelMatrix, ROW_SUM_TOL};
use crate::algebra::policy::PolicyWeights;
use crate::algebra::row::{Scratch, TransRow};
use crate::algebra::termination::Termination;
use crate::algebra::value::ValueModel;
use crate::error::{Error, Result};
use crate::par;

/// Tie-breaking rule for argmax selections.
///
/// A candidate replaces the incumbent only when it improves the composed
/// reward by more than `improve_eps`; otherwise the earliest candidate in
/// enumeration order wins. Candidates are enumerated with base models first
/// (in declaration order) and, in the planners, termination before
/// continuation. This keeps selections deterministic and free of oscillation
/// between equal-valued rows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TieRule {
    pub improve_eps: f64,
}

impl Default for TieRule {
    fn default() -> TieRule {
        TieRule {
            improve_eps: 1e-12,
        }
    }
}

/// Composes two models (Eq. `R1 + P1 R2`, `P1 P2`).
pub fn compose(m1: &ModelMatrix, m2: &ModelMatrix) -> Result<ModelMatrix> {
    m1.compose(m2)
}

/// The expectation model of a base set under per-state weights: row `s` is
/// the weight-averaged row of the base models.
pub fn expectation_model(weights: &PolicyWeights, models: &[ModelMatrix]) -> Result<ModelMatrix> {
    if models.is_empty() {
        return Err(Error::EmptyModelSet);
    }
    let n = models[0].n();
    for m in models {
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.n(),
            });
        }
    }
    if weights.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: weights.n(),
        });
    }
    weights.validate(models)?;

    let rows: Vec<usize> = (0..n).collect();
    let computed = par::map_rows(
        &rows,
        || Scratch::new(n),
        |scratch, s| {
            let mut reward = 0.0;
            for &(o, w) in weights.support(s) {
                reward += w * models[o].reward()[s];
                scratch.axpy(w, models[o].row(s));
            }
            (reward, scratch.drain())
        },
    );
    let mut reward = Vec::with_capacity(n);
    let mut trans = Vec::with_capacity(n);
    for (r, t) in computed {
        reward.push(r);
        trans.push(t);
    }
    Ok(ModelMatrix::new(reward, trans))
}

/// The termination model `E_beta(I, M)`: row `s` blends the identity row
/// (stop) with `M`'s row (continue) at probability `beta(s)`.
pub fn termination_model(beta: &Termination, m: &ModelMatrix) -> Result<ModelMatrix> {
    if beta.n() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            got: beta.n(),
        });
    }
    let n = m.n();
    let mut reward = Vec::with_capacity(n);
    let mut trans = Vec::with_capacity(n);
    let mut scratch = Scratch::new(n);
    for s in 0..n {
        let b = beta.at(s);
        if b == 0.0 {
            reward.push(m.reward()[s]);
            trans.push(m.row(s).clone());
        } else if b == 1.0 {
            reward.push(0.0);
            trans.push(TransRow::One(s as u32, 1.0));
        } else {
            reward.push((1.0 - b) * m.reward()[s]);
            scratch.add(s, b);
            scratch.axpy(1.0 - b, m.row(s));
            trans.push(scratch.drain());
        }
    }
    Ok(ModelMatrix::new(reward, trans))
}

/// Elementwise maximum over a nonempty set of value models.
pub fn max_value_model(vs: &[ValueModel]) -> Result<ValueModel> {
    let first = vs.first().ok_or(Error::EmptyModelSet)?;
    let n = first.n();
    for v in vs {
        if v.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.n(),
            });
        }
    }
    let reward = (0..n)
        .map(|s| vs.iter().map(|v| v.reward()[s]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    Ok(ValueModel::new(reward))
}

/// The argmax model over `ms` with respect to value model `v`: row `s` is
/// the row of the candidate maximizing `reward[s] + trans[s,.] . v`. Returns
/// the assembled model and the per-state selection.
///
/// Rasps are ordered by reward only, so the distribution component never
/// participates in the comparison.
pub fn argmax_model(
    ms: &[ModelMatrix],
    v: &ValueModel,
    tie: &TieRule,
) -> Result<(ModelMatrix, Vec<usize>)> {
    if ms.is_empty() {
        return Err(Error::EmptyModelSet);
    }
    let n = ms[0].n();
    for m in ms {
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.n(),
            });
        }
    }
    if v.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.n(),
        });
    }

    let mut selection = Vec::with_capacity(n);
    let mut reward = Vec::with_capacity(n);
    let mut trans = Vec::with_capacity(n);
    for s in 0..n {
        let mut best: Option<(usize, f64)> = None;
        for (o, m) in ms.iter().enumerate() {
            if !m.available_at(s) {
                continue;
            }
            let obj = m.reward()[s] + m.row(s).dot(v.reward());
            match best {
                None => best = Some((o, obj)),
                Some((_, cur)) if obj > cur + tie.improve_eps => best = Some((o, obj)),
                _ => {}
            }
        }
        let (o, _) = best.ok_or(Error::NoCandidate { state: s })?;
        selection.push(o);
        reward.push(ms[o].reward()[s]);
        trans.push(ms[o].row(s).clone());
    }
    Ok((ModelMatrix::new(reward, trans), selection))
}

/// Checks that every row of `m` is substochastic within `ROW_SUM_TOL`.
pub fn is_substochastic(m: &ModelMatrix) -> bool {
    (0..m.n()).all(|s| {
        m.row(s).iter().all(|(_, v)| v >= 0.0) && m.row(s).sum() <= 1.0 + ROW_SUM_TOL
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_models() -> Vec<ModelMatrix> {
        vec![
            ModelMatrix::from_dense(vec![1.0, 5.0], vec![vec![0.5, 0.0], vec![0.0, 0.5]]),
            ModelMatrix::from_dense(vec![3.0, 2.0], vec![vec![0.0, 1.0], vec![1.0, 0.0]]),
        ]
    }

    #[test]
    fn expectation_point_mass_recovers_model() {
        let models = two_models();
        let pi = PolicyWeights::deterministic(&[1, 1]);
        let e = expectation_model(&pi, &models).unwrap();
        assert_eq!(e.reward(), models[1].reward());
        assert_eq!(e.to_dense_trans(), models[1].to_dense_trans());
    }

    #[test]
    fn expectation_uniform_averages_rows() {
        let models = two_models();
        let pi = PolicyWeights::new(vec![vec![(0, 0.5), (1, 0.5)]; 2]);
        let e = expectation_model(&pi, &models).unwrap();
        assert_eq!(e.reward(), &[2.0, 3.5]);
        assert_eq!(
            e.to_dense_trans(),
            vec![vec![0.25, 0.5], vec![0.5, 0.25]]
        );
    }

    #[test]
    fn expectation_rejects_missing_model() {
        let models = two_models();
        let pi = PolicyWeights::new(vec![vec![(2, 1.0)], vec![(0, 1.0)]]);
        assert!(expectation_model(&pi, &models).is_err());
    }

    #[test]
    fn termination_boundaries() {
        let m = two_models().remove(0);
        let i = ModelMatrix::identity(2);
        let all = termination_model(&Termination::always(2), &m).unwrap();
        assert_eq!(all, i);
        let none = termination_model(&Termination::never(2), &m).unwrap();
        assert_eq!(none, m);
    }

    #[test]
    fn termination_blends_per_row() {
        // beta = [1, 0]: row 0 from the identity, row 1 from m.
        let m = two_models().remove(0);
        let t = termination_model(&Termination::new(vec![1.0, 0.0]).unwrap(), &m).unwrap();
        assert_eq!(t.reward(), &[0.0, 5.0]);
        assert_eq!(t.to_dense_trans(), vec![vec![1.0, 0.0], vec![0.0, 0.5]]);
    }

    #[test]
    fn termination_fractional_blend() {
        let m = ModelMatrix::from_dense(vec![4.0], vec![vec![0.8]]);
        let t = termination_model(&Termination::new(vec![0.25]).unwrap(), &m).unwrap();
        assert_eq!(t.reward(), &[0.75 * 4.0]);
        assert_eq!(t.to_dense_trans(), vec![vec![0.25 + 0.75 * 0.8]]);
    }

    #[test]
    fn max_value_model_elementwise() {
        let v1 = ValueModel::new(vec![1.0, 5.0]);
        let v2 = ValueModel::new(vec![3.0, 2.0]);
        let m = max_value_model(&[v1.clone(), v2]).unwrap();
        assert_eq!(m.reward(), &[3.0, 5.0]);
        let single = max_value_model(&[v1.clone()]).unwrap();
        assert_eq!(single, v1);
        assert!(max_value_model(&[]).is_err());
    }

    #[test]
    fn max_value_model_monotone_in_set() {
        let s = vec![ValueModel::new(vec![1.0, 2.0]), ValueModel::new(vec![0.0, 3.0])];
        let base = max_value_model(&s).unwrap();
        let mut extended = s.clone();
        extended.push(ValueModel::new(vec![5.0, -10.0]));
        let bigger = max_value_model(&extended).unwrap();
        for i in 0..2 {
            assert!(bigger.reward()[i] >= base.reward()[i]);
        }
    }

    #[test]
    fn argmax_singleton_selects_zero() {
        let ms = vec![two_models().remove(0)];
        let v = ValueModel::new(vec![0.0, 0.0]);
        let (m, sel) = argmax_model(&ms, &v, &TieRule::default()).unwrap();
        assert_eq!(sel, vec![0, 0]);
        assert_eq!(m.reward(), ms[0].reward());
    }

    #[test]
    fn argmax_on_value_models_compares_rewards() {
        // Value-model candidates have zero transitions, so the objective is
        // the reward column itself.
        let ms = vec![
            ValueModel::new(vec![1.0, 5.0]).to_model(),
            ValueModel::new(vec![3.0, 2.0]).to_model(),
        ];
        let v = ValueModel::new(vec![7.0, -7.0]);
        let (m, sel) = argmax_model(&ms, &v, &TieRule::default()).unwrap();
        assert_eq!(sel, vec![1, 0]);
        assert_eq!(m.reward(), &[3.0, 5.0]);
    }

    #[test]
    fn argmax_ties_keep_first_candidate() {
        let ms = vec![
            ModelMatrix::from_dense(vec![1.0], vec![vec![0.5]]),
            ModelMatrix::from_dense(vec![1.0], vec![vec![0.0]]),
        ];
        let v = ValueModel::new(vec![0.0]);
        let (_, sel) = argmax_model(&ms, &v, &TieRule::default()).unwrap();
        assert_eq!(sel, vec![0]);
    }

    #[test]
    fn argmax_respects_availability() {
        let ms = vec![
            ModelMatrix::from_dense(vec![9.0], vec![vec![0.0]]).with_availability(vec![false]),
            ModelMatrix::from_dense(vec![1.0], vec![vec![0.0]]),
        ];
        let v = ValueModel::new(vec![0.0]);
        let (_, sel) = argmax_model(&ms, &v, &TieRule::default()).unwrap();
        assert_eq!(sel, vec![1]);
        let none = vec![ms[0].clone()];
        assert!(argmax_model(&none, &v, &TieRule::default()).is_err());
    }
}
