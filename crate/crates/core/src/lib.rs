//! Scheduling of flexible manufacturing systems on place-timed Petri nets.
//!
//! A job-shop [`Instance`] is compiled into a [`PlaceTimedNet`]. The state
//! space is compressed into a basis reachability graph by splitting
//! transitions with a [`BasisPartition`], and schedules are found with a
//! generation-filtered beam search guided by a resource-workload estimate.

pub mod brg;
pub mod fixtures;
pub mod gen;
pub mod heuristic;
pub mod model;
pub mod petri;
pub mod search;
pub mod timing;

pub use brg::{BasisPartition, BrgError, Explainer, ExplanationVector};
pub use heuristic::{Heuristic, Rational};
pub use model::{parse_instance, Instance, ModelError, PlaceTimedNet};
pub use petri::{Marking, PetriError, PetriNet, PlaceId, TransitionId};
pub use search::{check_schedule, gfbs, oracle_optimal, BeamParams, Planner, SearchOutcome};
pub use timing::{Interval, ScheduleState, Time, TimeBound};
