//! Iterative solvers for the model optimality equations, with iteration and
//! backup accounting.
//!
//! All planners initialize from a floor value model (strictly below every
//! proper policy's value), sweep until the largest change over reward and
//! transition entries is at most `eps`, and count only sweeps that changed
//! something: the confirming sweep that detects the fixed point is recorded
//! but not counted. Within a sweep, rows read the previous sweep's snapshot
//! (Jacobi updates), so sweeps are order-independent, parallelizable and
//! bit-deterministic.

mod aopmi;
mod oomi;
mod option_iter;
mod report;
mod update;
mod value_iter;

pub use aopmi::aopmi;
pub use oomi::oomi;
pub use option_iter::{
    optimality_iterate_beta_option, optimality_iterate_option, optimality_iterate_pi_option,
};
pub use report::{CountMode, ExperimentReport, PlannerConfig};
pub use value_iter::optimality_iterate_value;
