//! Data-parallel row mapping with a sequential fallback.
//!
//! All planner sweeps update rows independently from an immutable snapshot,
//! so the results are bit-identical whether rows are mapped in parallel or
//! sequentially. Building with `--no-default-features` removes the rayon
//! dependency entirely and compiles the sequential path.

/// Maps `f` over the given row indices, threading a per-worker scratch value.
///
/// `init` creates the scratch (e.g. a dense accumulator sized to the state
/// count); `f` receives the scratch and one row index. Output order follows
/// `rows` regardless of scheduling.
#[cfg(feature = "parallel")]
pub fn map_rows<T, S, I, F>(rows: &[usize], init: I, f: F) -> Vec<T>
where
    T: Send,
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    rows.par_iter()
        .map_init(&init, |scratch, &s| f(scratch, s))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_rows<T, S, I, F>(rows: &[usize], init: I, f: F) -> Vec<T>
where
    T: Send,
    S: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize) -> T + Sync + Send,
{
    let mut scratch = init();
    rows.iter().map(|&s| f(&mut scratch, s)).collect()
}
