//! k-center with centers restricted to two lines: feasibility deciders, radius
//! optimizer, reference oracles and instance I/O.

pub mod frontier;
pub mod geometry;
pub mod io;
pub mod optimizer;
pub mod oracle;
pub mod perpendicular;

pub use frontier::{decide_parallel, decide_parallel_with, FrontierSet, SweepOptions, SweepStats};
pub use geometry::{
    validate_instance, verify_cover, Center, FeasibilityResult, Instance, InstanceError, Interval, LineLayout, LineTag,
    Solution, WeightedPoint, VERIFY_EPS,
};
pub use optimizer::{decide, solve, solve_with, SolveOptions, SolveReport};
pub use perpendicular::{decide_corner, decide_perpendicular, decide_tjunction};
