//! The flip sequence.
//!
//! Round `n` takes the scheduled independent set `X_n` and flips exactly those
//! `x ∈ X_n` whose same-colored neighbors strictly outnumber the differently
//! colored ones, all judged against the pre-round coloring. Ties never flip,
//! so every unfriendly coloring is a fixed point.
//!
//! The potential is `M(c) = Σ_x μ(x) · #{y ~ x : c(y) = c(x)}`, the measure of
//! the monochromatic subgraph counted from both endpoints.

mod engine;
mod naive;
mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Vertex};
use crate::measure::VertexMeasure;
use crate::schedule::Schedule;

pub use engine::{default_max_rounds, run, run_with, RunOptions};
pub use naive::run_naive;
pub use verify::{
    claim_precondition, verify_flip_counts, verify_round_claims, verify_telescoping,
    verify_trace_claims, ClaimVariant,
};

/// `(same, diff)`: neighbors of `x` sharing its color, and the rest.
pub fn same_diff_counts(g: &FiniteGraph, c: &Coloring, x: Vertex) -> (usize, usize) {
    let cx = c.get(x);
    let same = g.neighbors(x).iter().filter(|&&y| c.get(y) == cx).count();
    (same, g.degree(x) - same)
}

/// The set `B_n` of vertices of `class` that the flip rule flips under `c`,
/// in the order they appear in `class`. Independence of `class` is assumed.
pub fn flip_set(g: &FiniteGraph, c: &Coloring, class: &[Vertex]) -> Vec<Vertex> {
    class
        .iter()
        .copied()
        .filter(|&x| {
            let (same, diff) = same_diff_counts(g, c, x);
            diff < same
        })
        .collect()
}

/// One round of the flip rule on `class`, which must be independent in `g`.
/// Returns the next coloring and the flipped set.
pub fn flip_round(g: &FiniteGraph, c: &Coloring, class: &[Vertex]) -> Result<(Coloring, Vec<Vertex>)> {
    if c.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            found: c.len(),
        });
    }
    for &x in class {
        g.check_vertex(x)?;
    }
    if let Some((x, y)) = g.edge_within(class) {
        return Err(Error::NotIndependent(x, y));
    }
    let flipped = flip_set(g, c, class);
    Ok((c.with_flipped(&flipped), flipped))
}

/// `M(G_c)`: measure-weighted count of same-colored neighbors.
pub fn potential_m(g: &FiniteGraph, mu: &VertexMeasure, c: &Coloring) -> BigRational {
    let numerator = g.vertices().fold(BigInt::zero(), |acc, x| {
        let (same, _) = same_diff_counts(g, c, x);
        acc + &mu.numerators()[x] * same
    });
    BigRational::new(numerator, mu.denominator().clone())
}

/// Half the measure-weighted degree, `½ Σ_x μ(x) deg(x)`.
pub fn cost(g: &FiniteGraph, mu: &VertexMeasure) -> BigRational {
    let numerator = g
        .vertices()
        .fold(BigInt::zero(), |acc, x| acc + &mu.numerators()[x] * g.degree(x));
    BigRational::new(numerator, mu.denominator() * 2)
}

/// Number of edges whose endpoints share a color.
pub fn monochromatic_edges(g: &FiniteGraph, c: &Coloring) -> usize {
    g.edges().filter(|&(x, y)| c.get(x) == c.get(y)).count()
}

/// Outcome of an unfriendliness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfriendlyCheck {
    /// Vertices with strictly more same-colored than differently colored
    /// neighbors, ascending.
    pub violators: Vec<Vertex>,
}

impl UnfriendlyCheck {
    pub fn holds(&self) -> bool {
        self.violators.is_empty()
    }
}

pub fn is_unfriendly(g: &FiniteGraph, c: &Coloring) -> UnfriendlyCheck {
    let violators = g
        .vertices()
        .filter(|&x| {
            let (same, diff) = same_diff_counts(g, c, x);
            diff < same
        })
        .collect();
    UnfriendlyCheck { violators }
}

/// One round of a run: `B_n`, `μ(B_n)` and the potential before and after.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: usize,
    pub class_index: usize,
    pub flipped: Vec<Vertex>,
    pub flipped_mass: BigRational,
    pub potential_before: BigRational,
    pub potential_after: BigRational,
}

impl RoundRecord {
    pub fn potential_drop(&self) -> BigRational {
        &self.potential_before - &self.potential_after
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RunStatus {
    Converged,
    MaxRoundsExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    pub rounds: Vec<RoundRecord>,
    pub final_coloring: Coloring,
    pub status: RunStatus,
    pub total_flips: usize,
}

impl RunTrace {
    pub fn converged(&self) -> bool {
        self.status == RunStatus::Converged
    }

    /// `M(G_0)`.
    pub fn initial_potential(&self) -> BigRational {
        self.rounds
            .first()
            .map(|r| r.potential_before.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn final_potential(&self) -> BigRational {
        self.rounds
            .last()
            .map(|r| r.potential_after.clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// `Σ_n μ(B_n)`.
    pub fn flipped_mass_sum(&self) -> BigRational {
        self.rounds.iter().map(|r| &r.flipped_mass).sum()
    }

    /// Number of times each vertex flipped.
    pub fn flip_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for r in &self.rounds {
            for &x in &r.flipped {
                counts[x] += 1;
            }
        }
        counts
    }
}

/// Shared driver: applies `step` to successive classes, stopping once a full
/// period passes without a flip.
fn drive<F>(
    mu: &VertexMeasure,
    schedule: &Schedule,
    max_rounds: usize,
    mut step: F,
) -> (Vec<RoundRecord>, RunStatus, usize)
where
    F: FnMut(&[Vertex]) -> (Vec<Vertex>, BigRational, BigRational),
{
    let period = schedule.period();
    let mut rounds = Vec::new();
    let mut quiet = 0;
    let mut total_flips = 0;
    for n in 0..max_rounds {
        let (flipped, potential_before, potential_after) = step(schedule.nth_class(n));
        total_flips += flipped.len();
        quiet = if flipped.is_empty() { quiet + 1 } else { 0 };
        rounds.push(RoundRecord {
            round: n,
            class_index: schedule.class_index(n),
            flipped_mass: mu.mass(&flipped),
            flipped,
            potential_before,
            potential_after,
        });
        if quiet >= period {
            return (rounds, RunStatus::Converged, total_flips);
        }
    }
    (rounds, RunStatus::MaxRoundsExceeded, total_flips)
}

fn check_run_inputs(
    g: &FiniteGraph,
    mu: &VertexMeasure,
    schedule: &Schedule,
    c0: &Coloring,
    max_rounds: usize,
) -> Result<()> {
    let n = g.vertex_count();
    mu.check_len(n)?;
    if c0.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: c0.len(),
        });
    }
    for class in schedule.classes() {
        for &x in class {
            g.check_vertex(x)?;
        }
    }
    if max_rounds == 0 {
        return Err(Error::Config("max_rounds must be at least 1".into()));
    }
    Ok(())
}
