//! Compositional MDP planning with option models.
//!
//! Option models are temporal abstractions that jump directly from a start
//! state to a distribution over outcome states, carrying the reward earned
//! along the way. In homogeneous coordinates they compose by block-matrix
//! multiplication, which turns the classic Bellman equations into special
//! cases of a family of *model equations*: expectation and optimality
//! equations over policies, termination conditions, or both.
//!
//! The crate provides:
//!
//! - [`algebra`]: rasps, models and the expectation / termination / max /
//!   argmax operators;
//! - [`mdp`]: tabular MDPs with discounting folded into the transition
//!   matrices, action models, value floors, exact option-model evaluation
//!   and a JSON interchange format;
//! - [`planners`]: iterative solvers for the model optimality equations,
//!   including flat value iteration (APMI), two-level planning over frozen
//!   option models (AOPMI) and option-option model iteration (OOMI), with
//!   iteration and backup accounting;
//! - [`domains`]: the Tower of Hanoi and Nine Rooms benchmarks and their
//!   subgoal families;
//! - [`runner`]: an experiment harness with oracle verification and CSV /
//!   text tabulation.
//!
//! Planner sweeps recompute rows independently from an immutable snapshot.
//! With the default `parallel` feature the rows are mapped with rayon;
//! results are bit-identical to the sequential fallback
//! (`--no-default-features`).

pub mod algebra;
pub mod domains;
pub mod error;
mod linalg;
pub mod mdp;
mod par;
pub mod planners;
pub mod runner;

pub use error::{Error, Result};
