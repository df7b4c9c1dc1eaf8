//! The homogeneous-coordinate algebra of rasps and models.
//!
//! Rasps are `[r | p]` row vectors (a reward plus a discounted state
//! distribution); models are `[1 0; R P]` block matrices acting on them.
//! Composition is block multiplication, and the expectation / termination /
//! max / argmax operators defined here are the building blocks for every
//! model equation solved by the planners.
//!
//! All values are immutable after construction and all operations are pure,
//! so they are safe to share across threads. Rows are evaluated
//! independently; results are bit-identical to sequential left-to-right
//! evaluation.

mod model;
mod ops;
mod policy;
mod rasp;
mod row;
mod termination;
mod value;

pub use model::{compose_row, ModelMatrix, ROW_SUM_TOL};
pub use ops::{
    argmax_model, compose, expectation_model, is_substochastic, max_value_model,
    termination_model, TieRule,
};
pub use policy::PolicyWeights;
pub use rasp::{apply, Rasp};
pub use row::{RowIter, Scratch, TransRow};
pub use termination::Termination;
pub use value::ValueModel;
