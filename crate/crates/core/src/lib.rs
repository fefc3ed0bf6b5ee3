//! Lifetime maximization for barrier coverage of the unit interval by mobile,
//! battery-powered sensors.
//!
//! Sensor `i` starts at `x_i` with battery `b_i`, moves to `y_i` at cost
//! `a |y_i - x_i|` and then drains `r_i^alpha` per time unit while covering
//! `[y_i - r_i, y_i + r_i]`. Radii are either fixed per sensor (on or off) or
//! chosen freely. The solvers are generic over [`Scalar`] (`f32` or `f64`);
//! the aliases below fix the scalar to `f64`.

pub mod cli;
pub mod decision;
pub mod endpoint;
pub mod error;
pub mod extreme;
pub mod hardness;
pub mod io;
pub mod model;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod reach;
pub mod scalar;
pub mod search;
pub mod svg;

pub use decision::{compute_bounds, compute_fixed_bounds, decide, decide_fixed, decide_variable, DecisionOutcome, ReachProfile};
pub use endpoint::{
    bidirectional_battery_order, bidirectional_reach_order, reach_value, solve_endpoint, split_endpoints, EndpointSplit,
};
pub use error::{Error, Result};
pub use extreme::{
    dynamic_fixed_selection, solve_dynamic_fixed, solve_dynamic_variable, solve_static_fixed, static_fixed_selection,
    GreedySelection,
};
pub use hardness::{gen_3partition_bcvr, gen_block, gen_partition_bcfr, random_instance, Block, PartitionGadget, RandomParams, ThreePartitionGadget};
pub use model::{
    evaluate_lifetime, order_of, verify_solution, CoverageReport, MoveCost, OrderConstraint, ProblemInstance, RadiusKind,
    Sensor, Solution,
};
pub use reach::{attach_position, left_reach, optimal_travel, right_reach, sustaining_radius, Attachment, TravelOptimum};
pub use scalar::Scalar;
pub use search::{lifetime_upper_bound, maximize_constrained, maximize_exhaustive, SearchConfig};

pub type Instance = ProblemInstance<f64>;
pub type Deployment = Solution<f64>;
pub type Report = CoverageReport<f64>;
pub type Config = SearchConfig<f64>;

pub type Instance32 = ProblemInstance<f32>;
pub type Deployment32 = Solution<f32>;
pub type Report32 = CoverageReport<f32>;
pub type Config32 = SearchConfig<f32>;
