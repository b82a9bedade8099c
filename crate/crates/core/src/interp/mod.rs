//! Monotonicity-preserving C¹ and C² interpolation of monotone data.

mod c1;
mod c2;
mod check;
mod dataset;
mod piecewise;

pub use c1::{c1_constraint_check, c1_feasible_solution, c1_interpolant, c1_s_bound, C1Solution};
pub use c2::{
    c2_constraint_check, c2_feasible_solution_appendix, c2_feasible_solution_remark, c2_interpolant, c2_s_bound,
    remark_eta_bound, remark_zeta_bound, C2Parameters, C2Solution,
};
pub use check::{Violation, ViolationKind};
pub use dataset::{random_monotone_dataset, MonotoneDataset};
pub use piecewise::{logistic, reference_table, ErrorProfile, KnotJump, PiecewiseCurve, SlopeSummary};
