//! Experiment runner: build a domain, dispatch a planner, cross-check
//! against oracles and tabulate sweeps.

mod run;
mod spec;
mod table;
mod verify;

pub use run::{build_mdp, run, start_state, RunReport};
pub use spec::{Algorithm, Domain, RunSpec, Variant};
pub use table::{
    bench_table, csv_without_runtime, parse_bench_csv, render_csv, BenchRow, BenchTable,
    CSV_HEADER,
};
pub use verify::{
    builtin_small_mdps, enumerate_option_optimum, simulate_option, value_iteration_oracle,
    verify, VerificationReport,
};
