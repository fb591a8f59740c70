//! Bounds, sizes, parameter validation and Monte Carlo estimation.

mod bounds;
mod hash;
mod simulate;
mod sizes;

pub use bounds::{epsilon_bound, failure_bound, log2_lower, log2_upper, DecoderShape, FailureBound};
pub use hash::{hash_collision_check, HashCheck};
pub use simulate::{run_trial, simulate_failure, trial_seed, Simulation, TrialOutcome, TrialRecord};
pub use sizes::{check_table, key_sizes, kb, validate_params, KeySizes, ParamReport, TableCheck, TableRow, TABLE_ROWS};
