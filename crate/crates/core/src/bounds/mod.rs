//! Certified bounds on the full counting statistics: the regularity
//! functional, the exponential moment bound, tail bounds, the mean-heating
//! identity and the matrix inequalities they rest on.

mod first_law;
pub mod fuzz;
mod inequalities;
mod regularity;
mod tails;
mod theorem;

pub use first_law::{
    first_law_report, heat_from_coupling, verify_first_law, FirstLawReport, HeatFromCoupling,
    FIRST_LAW_TOL,
};
pub use inequalities::{
    check_gronwall_bound, check_trace_inequality, InequalityCheck, MAX_GRONWALL_POINTS,
};
pub use regularity::{
    compute_r, compute_r_refined, Regularity, RegularityReport, DEFAULT_S_POINTS,
};
pub use tails::{
    log_grid, optimal_strong_c, strong_tail_check, strong_tail_check_with, strong_tail_from_r,
    tail_bound_check, tail_probability, StrongTailOptimum, TailCheck, DEFAULT_C_GRID,
};
pub use theorem::{
    exponential_moment, exponential_moment_sweep, theorem_report, verify_theorem, MomentSweep,
    TheoremReport, BOUND_REL_TOL,
};
