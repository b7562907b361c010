//! Exact simulation and coin-schedule compilation for perfect transfer of a
//! qudit coin state along a lackadaisical discrete-time quantum walk, and for
//! routing entangled multi-qudit coin states on `m`-axis lattices.
//!
//! * [`walk`]: walker state, conditional shift, per-site coins, fidelity
//! * [`coins`]: identity, increment powers and swaps
//! * [`schedule`]: closed-form transfer schedules
//! * [`oracle`]: flow-tracking reference schedules and lazy-walk path counts
//! * [`routing`]: tensor-product walks on `m` axes
//! * [`harness`]: validation trials and compiler-vs-oracle sweeps
//!
//! Batch work runs on rayon when the `parallel` feature (default) is on.

pub mod coins;
pub mod exec;
pub mod harness;
pub mod oracle;
pub mod routing;
pub mod schedule;
pub mod walk;

pub use coins::{CoinError, CoinOp};
pub use exec::Execution;
pub use harness::{sweep, validate, SweepGrid, SweepReport, ValidationReport};
pub use oracle::{count_paths_closed, count_paths_enum, track_flows, OracleError};
pub use routing::{
    entanglement_check, route, route_step, MultiWalkerState, RoutingError, RoutingPlan,
};
pub use schedule::{
    compile, compile_qubit, compile_qudit, compile_qutrit, Schedule, ScheduleError,
};
pub use walk::{CoinMap, Direction, WalkError, WalkerState};
