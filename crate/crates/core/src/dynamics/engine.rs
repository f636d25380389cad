//! Incremental engine: per-vertex same-color counters updated in O(deg) per
//! flip, with the potential numerator maintained alongside.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{check_run_inputs, drive, RunTrace};
use crate::coloring::Coloring;
use crate::error::Result;
use crate::graph::{FiniteGraph, Vertex};
use crate::measure::VertexMeasure;
use crate::schedule::{Schedule, ScheduleMode};

/// Classes smaller than this are decided sequentially even in parallel mode.
const PAR_THRESHOLD: usize = 4096;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_rounds: usize,
    /// Decide flips within a round on the rayon pool. Results are identical
    /// to the sequential path.
    pub parallel: bool,
}

/// `(|E| + 1) · period`. Every window of `period` rounds before convergence
/// contains a flip and each flip removes at least one monochromatic edge, so
/// cyclic runs converge within this many rounds.
pub fn default_max_rounds(g: &FiniteGraph, schedule: &Schedule) -> usize {
    (g.edge_count() + 1) * schedule.period()
}

pub fn run(
    g: &FiniteGraph,
    mu: &VertexMeasure,
    schedule: &Schedule,
    c0: &Coloring,
    max_rounds: usize,
) -> Result<RunTrace> {
    run_with(
        g,
        mu,
        schedule,
        c0,
        &RunOptions {
            max_rounds,
            parallel: false,
        },
    )
}

pub fn run_with(
    g: &FiniteGraph,
    mu: &VertexMeasure,
    schedule: &Schedule,
    c0: &Coloring,
    opts: &RunOptions,
) -> Result<RunTrace> {
    check_run_inputs(g, mu, schedule, c0, opts.max_rounds)?;
    let mut state = State::new(g, mu, c0.clone());
    let den = mu.denominator().clone();
    let (rounds, status, total_flips) = drive(mu, schedule, opts.max_rounds, |class| {
        let flipped = state.decide(class, opts.parallel);
        let before = BigRational::new(state.potential.clone(), den.clone());
        state.apply(&flipped);
        let after = BigRational::new(state.potential.clone(), den.clone());
        (flipped, before, after)
    });
    if schedule.mode() == ScheduleMode::Cyclic && opts.max_rounds >= default_max_rounds(g, schedule) {
        assert_eq!(
            status,
            super::RunStatus::Converged,
            "cyclic run exceeded its provable round bound"
        );
    }
    Ok(RunTrace {
        rounds,
        final_coloring: Coloring::from_raw(state.colors),
        status,
        total_flips,
    })
}

struct State<'a> {
    g: &'a FiniteGraph,
    weights: &'a [BigInt],
    colors: Vec<u8>,
    same: Vec<u32>,
    potential: BigInt,
}

impl<'a> State<'a> {
    fn new(g: &'a FiniteGraph, mu: &'a VertexMeasure, c0: Coloring) -> Self {
        let colors = c0.into_inner();
        let same: Vec<u32> = g
            .vertices()
            .map(|x| {
                let cx = colors[x];
                g.neighbors(x).iter().filter(|&&y| colors[y] == cx).count() as u32
            })
            .collect();
        let weights = mu.numerators();
        let potential = same
            .iter()
            .zip(weights)
            .fold(BigInt::zero(), |acc, (&s, w)| acc + w * s);
        State {
            g,
            weights,
            colors,
            same,
            potential,
        }
    }

    #[inline]
    fn wants_flip(&self, x: Vertex) -> bool {
        // diff < same  <=>  2·same > deg
        2 * self.same[x] as usize > self.g.degree(x)
    }

    fn decide(&self, class: &[Vertex], parallel: bool) -> Vec<Vertex> {
        if parallel && class.len() >= PAR_THRESHOLD {
            class.par_iter().copied().filter(|&x| self.wants_flip(x)).collect()
        } else {
            class.iter().copied().filter(|&x| self.wants_flip(x)).collect()
        }
    }

    /// Flips an independent set, so no two flipped vertices are adjacent and
    /// every neighbor read below still holds its pre-round color.
    fn apply(&mut self, flipped: &[Vertex]) {
        let mut gained = BigInt::zero();
        let mut lost = BigInt::zero();
        for &x in flipped {
            let deg = self.g.degree(x) as u32;
            let was_same = self.same[x];
            let now_same = deg - was_same;
            let cx = self.colors[x];
            // x itself: was_same -> now_same, and was_same > now_same.
            lost += &self.weights[x] * (was_same - now_same);
            for &y in self.g.neighbors(x) {
                if self.colors[y] == cx {
                    self.same[y] -= 1;
                    lost += &self.weights[y];
                } else {
                    self.same[y] += 1;
                    gained += &self.weights[y];
                }
            }
            self.same[x] = now_same;
            self.colors[x] = cx ^ 1;
        }
        self.potential += gained;
        self.potential -= lost;
    }
}
