//! Reference engine that recomputes flip decisions and potentials from
//! scratch every round. Used to cross-check the incremental engine.

use super::{check_run_inputs, drive, flip_set, potential_m, RunTrace};
use crate::coloring::Coloring;
use crate::error::Result;
use crate::graph::FiniteGraph;
use crate::measure::VertexMeasure;
use crate::schedule::Schedule;

pub fn run_naive(
    g: &FiniteGraph,
    mu: &VertexMeasure,
    schedule: &Schedule,
    c0: &Coloring,
    max_rounds: usize,
) -> Result<RunTrace> {
    check_run_inputs(g, mu, schedule, c0, max_rounds)?;
    let mut c = c0.clone();
    let (rounds, status, total_flips) = drive(mu, schedule, max_rounds, |class| {
        let flipped = flip_set(g, &c, class);
        let before = potential_m(g, mu, &c);
        c = c.with_flipped(&flipped);
        let after = potential_m(g, mu, &c);
        (flipped, before, after)
    });
    Ok(RunTrace {
        rounds,
        final_coloring: c,
        status,
        total_flips,
    })
}
