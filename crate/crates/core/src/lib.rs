//! Path planners that hide which transit point an agent covers.
//!
//! An observer who sees the agent's path (or its first `m` nodes), knows the
//! map and can re-run the planner should not be able to tell the true transit
//! point apart from at least `k - 1` other candidates that are pairwise at
//! least `ℓ` apart. The crate provides:
//!
//! * [`domain`]: grid maps, edge-list fixtures, distances and visibility;
//! * [`wrpt`]: optimal covering paths through a target set (A* with the
//!   tunnel heuristic, plus a uniform-cost oracle);
//! * [`partition`]: branch-and-bound partitioning of transit candidates;
//! * [`planners`]: Pbp, m-Pbp, Rbp, Cbp and the full-cover baseline;
//! * [`anonymity`]: definition-level verifiers and APR/MAC metrics;
//! * [`sample`]: seeded random maps and instances.
//!
//! Everything is generic over the edge-cost scalar ([`Scalar`]); the
//! `*64` aliases below fix it to `f64`.

pub mod anonymity;
pub mod domain;
pub mod partition;
pub mod planners;
pub mod sample;
mod scalar;
pub mod seed;
pub mod wrpt;

pub use scalar::Scalar;

pub use domain::{Horizon, NodeId};

pub type Domain64 = domain::Domain<f64>;
pub type Path64 = domain::Path<f64>;
pub type Fixture64 = domain::Fixture<f64>;
pub type Partition64 = partition::Partition<f64>;
pub type PlanResult64 = planners::PlanResult<f64>;
pub type PlannerConfig64 = planners::PlannerConfig<f64>;
pub type Planner64<'a> = planners::Planner<'a, f64>;

pub type Domain32 = domain::Domain<f32>;
pub type Path32 = domain::Path<f32>;
