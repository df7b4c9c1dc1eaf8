//! Small graph utilities over an MDP's transition support, used by tests
//! and the verification oracles.

use std::collections::VecDeque;

use crate::mdp::Mdp;

/// Breadth-first distances (in moves) from every state to `target`,
/// following any available action edge with nonzero probability.
/// Unreachable states get `u32::MAX`.
pub fn distances_to(mdp: &Mdp, target: usize) -> Vec<u32> {
    let n = mdp.n();
    let mut reverse: Vec<Vec<u32>> = vec![Vec::new(); n];
    for act in mdp.actions() {
        for s in 0..n {
            if act.available[s] {
                for (j, p) in act.trans[s].iter() {
                    if p > 0.0 {
                        reverse[j].push(s as u32);
                    }
                }
            }
        }
    }
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    dist[target] = 0;
    queue.push_back(target as u32);
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize];
        for &u in &reverse[v as usize] {
            if dist[u as usize] == u32::MAX {
                dist[u as usize] = d + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// True when every state can reach every other along action edges treated
/// as undirected.
pub fn is_connected(mdp: &Mdp) -> bool {
    let n = mdp.n();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for act in mdp.actions() {
        for s in 0..n {
            if act.available[s] {
                for (j, p) in act.trans[s].iter() {
                    if p > 0.0 && j != s {
                        adj[s].push(j as u32);
                        adj[j].push(s as u32);
                    }
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[0] = true;
    queue.push_back(0u32);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v as usize] {
            if !seen[u as usize] {
                seen[u as usize] = true;
                count += 1;
                queue.push_back(u);
            }
        }
    }
    count == n
}
