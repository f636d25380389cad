//! Flip-sequence (anti-majority) dynamics for unfriendly 2-colorings of finite
//! graphs carrying an atomic vertex measure.
//!
//! A 2-coloring is *unfriendly* when every vertex has at least as many
//! differently colored neighbors as same-colored ones. Starting from any
//! coloring, the engine repeatedly walks a cyclic schedule of independent
//! vertex sets and flips every scheduled vertex whose same-colored neighbors
//! strictly outnumber the others. The measure-weighted count of monochromatic
//! edges is a potential that drops by at least the flipped mass each round,
//! and every quantity involved is tracked in exact rational arithmetic so the
//! drop inequalities can be asserted without tolerance.
//!
//! Module map:
//! - [`graph`], [`measure`], [`coloring`]: graphs, atomic measures and their
//!   edge cocycle, colorings.
//! - [`schedule`]: repetitive sequences of independent sets.
//! - [`dynamics`]: the flip engine, potentials and per-round verifiers.
//! - [`ball`]: geometric ball measures and growth profiles.
//! - [`oracle`]: exhaustive ground truth for small graphs.
//! - [`harness`]: generators, experiments, trace and report emission.

pub mod ball;
pub mod coloring;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod harness;
pub mod measure;
pub mod oracle;
pub mod schedule;

pub use ball::{ball_measure, epsilon_for_degree, growth_profile, BallMeasure};
pub use coloring::Coloring;
pub use dynamics::{
    cost, flip_round, is_unfriendly, potential_m, run, same_diff_counts, verify_round_claims,
    verify_telescoping, ClaimVariant, RoundRecord, RunStatus, RunTrace,
};
pub use error::{Error, Result};
pub use graph::{FiniteGraph, Vertex};
pub use measure::{cocycle, cocycle_bound_ok, VertexMeasure};
pub use schedule::{Schedule, ScheduleMode};
