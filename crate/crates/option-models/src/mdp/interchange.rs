//! MDP interchange format: a JSON document with sparse transition rows.
//!
//! Probabilities and rewards round-trip exactly for binary64: serialization
//! uses the shortest decimal representation that recovers the same bits.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::algebra::TransRow;
use crate::error::{Error, Result};
use crate::mdp::core::{Mdp, MdpAction};

#[derive(Serialize, Deserialize)]
struct MdpDoc {
    n: usize,
    gamma: f64,
    exit_states: Vec<usize>,
    actions: Vec<ActionDoc>,
}

#[derive(Serialize, Deserialize)]
struct ActionDoc {
    id: String,
    /// Sparse entries `(s, s', discounted probability)`.
    rows: Vec<(usize, usize, f64)>,
    /// Sparse rewards `(s, r)`; omitted states have reward 0.
    rewards: Vec<(usize, f64)>,
    /// States where the action is available.
    available: Vec<usize>,
}

fn to_doc(mdp: &Mdp) -> MdpDoc {
    MdpDoc {
        n: mdp.n(),
        gamma: mdp.gamma(),
        exit_states: mdp.exit_states().to_vec(),
        actions: mdp
            .actions()
            .iter()
            .map(|act| ActionDoc {
                id: act.id.clone(),
                rows: (0..mdp.n())
                    .flat_map(|s| act.trans[s].iter().map(move |(j, p)| (s, j, p)))
                    .collect(),
                rewards: act
                    .reward
                    .iter()
                    .enumerate()
                    .filter(|&(_, &r)| r != 0.0)
                    .map(|(s, &r)| (s, r))
                    .collect(),
                available: (0..mdp.n()).filter(|&s| act.available[s]).collect(),
            })
            .collect(),
    }
}

fn from_doc(doc: MdpDoc) -> Result<Mdp> {
    let n = doc.n;
    let mut actions = Vec::with_capacity(doc.actions.len());
    for act in doc.actions {
        let mut reward = vec![0.0; n];
        for (s, r) in act.rewards {
            if s >= n {
                return Err(Error::InvalidMdp(format!(
                    "reward state {s} out of range in action {}",
                    act.id
                )));
            }
            reward[s] = r;
        }
        let mut per_state: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
        for (s, j, p) in act.rows {
            if s >= n || j >= n {
                return Err(Error::InvalidMdp(format!(
                    "transition ({s}, {j}) out of range in action {}",
                    act.id
                )));
            }
            per_state[s].push((j as u32, p));
        }
        let mut trans = Vec::with_capacity(n);
        for (s, mut entries) in per_state.into_iter().enumerate() {
            entries.sort_unstable_by_key(|&(j, _)| j);
            if entries.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidMdp(format!(
                    "duplicate transition entries in row {s} of action {}",
                    act.id
                )));
            }
            trans.push(TransRow::from_sorted_pairs(&entries));
        }
        let mut available = vec![false; n];
        for s in act.available {
            if s >= n {
                return Err(Error::InvalidMdp(format!(
                    "available state {s} out of range in action {}",
                    act.id
                )));
            }
            available[s] = true;
        }
        actions.push(MdpAction {
            id: act.id,
            reward,
            trans,
            available,
        });
    }
    Mdp::new(n, doc.gamma, doc.exit_states, actions)
}

pub fn to_json_string(mdp: &Mdp) -> Result<String> {
    Ok(serde_json::to_string_pretty(&to_doc(mdp))?)
}

pub fn from_json_str(json: &str) -> Result<Mdp> {
    from_doc(serde_json::from_str(json)?)
}

pub fn save_mdp<W: Write>(mdp: &Mdp, mut writer: W) -> Result<()> {
    let doc = to_doc(mdp);
    serde_json::to_writer_pretty(&mut writer, &doc)?;
    writer.write_all(b"\n")?;
    Ok(())
}

pub fn load_mdp<R: Read>(reader: R) -> Result<Mdp> {
    from_doc(serde_json::from_reader(reader)?)
}
