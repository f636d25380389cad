//! Frozen-boundary truncations: run the dynamics on a ball `B(x, R)` whose
//! outer sphere never flips, and watch whether the inner ball `B(x, r)`
//! settles. This is an empirical probe of infinite-graph behavior, not a
//! check of any proved statement.

use serde::Serialize;

use crate::coloring::Coloring;
use crate::dynamics::{run, RunStatus, RunTrace};
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Vertex};
use crate::measure::VertexMeasure;
use crate::schedule::Schedule;

pub const BOUNDARY_LABEL: &str = "experiment: frozen-boundary truncation, no theorem asserted";

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DistanceBin {
    pub distance: usize,
    pub vertices: usize,
    pub flipped_vertices: usize,
    pub total_flips: usize,
    pub max_flips: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BoundaryReport {
    pub label: &'static str,
    pub center: Vertex,
    pub interior_radius: usize,
    pub radius: usize,
    pub ball_vertices: usize,
    pub frozen_vertices: usize,
    pub rounds: usize,
    pub status: RunStatus,
    /// No vertex within the interior radius flipped during the final period
    /// of the run.
    pub interior_stable: bool,
    pub by_distance: Vec<DistanceBin>,
}

impl BoundaryReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("distance,vertices,flipped_vertices,total_flips,max_flips\n");
        for b in &self.by_distance {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                b.distance, b.vertices, b.flipped_vertices, b.total_flips, b.max_flips
            ));
        }
        out
    }
}

pub fn boundary_experiment(
    g: &FiniteGraph,
    center: Vertex,
    interior_radius: usize,
    radius: usize,
    max_rounds: usize,
) -> Result<(BoundaryReport, RunTrace)> {
    g.check_vertex(center)?;
    if interior_radius >= radius {
        return Err(Error::Config(format!(
            "interior radius {interior_radius} must be below ball radius {radius}"
        )));
    }
    let dist = g.distances_from(center);
    let ball: Vec<Vertex> = g
        .vertices()
        .filter(|&y| dist[y].is_some_and(|d| d <= radius))
        .collect();
    let (sub, map) = g.induced_subgraph(&ball)?;
    let sub_dist: Vec<usize> = map.iter().map(|&y| dist[y].expect("inside ball")).collect();
    let shell: Vec<Vertex> = (0..map.len()).filter(|&i| sub_dist[i] == radius).collect();

    let schedule = Schedule::frozen_boundary(&sub, &shell)?;
    let n = sub.vertex_count();
    let trace = run(
        &sub,
        &VertexMeasure::uniform(n),
        &schedule,
        &Coloring::zeros(n),
        max_rounds,
    )?;

    let counts = trace.flip_counts(n);
    let max_d = sub_dist.iter().copied().max().unwrap_or(0);
    let mut by_distance: Vec<DistanceBin> = (0..=max_d)
        .map(|distance| DistanceBin {
            distance,
            vertices: 0,
            flipped_vertices: 0,
            total_flips: 0,
            max_flips: 0,
        })
        .collect();
    for i in 0..n {
        let bin = &mut by_distance[sub_dist[i]];
        bin.vertices += 1;
        bin.total_flips += counts[i];
        bin.max_flips = bin.max_flips.max(counts[i]);
        if counts[i] > 0 {
            bin.flipped_vertices += 1;
        }
    }

    let period = schedule.period();
    let interior_stable = trace.converged()
        || (trace.rounds.len() >= period
            && trace.rounds[trace.rounds.len() - period..]
                .iter()
                .all(|r| r.flipped.iter().all(|&i| sub_dist[i] > interior_radius)));

    let report = BoundaryReport {
        label: BOUNDARY_LABEL,
        center,
        interior_radius,
        radius,
        ball_vertices: n,
        frozen_vertices: shell.len(),
        rounds: trace.rounds.len(),
        status: trace.status,
        interior_stable,
        by_distance,
    };
    Ok((report, trace))
}
