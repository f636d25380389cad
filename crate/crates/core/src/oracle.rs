//! Exhaustive ground truth over all `2^n` colorings of a small graph.
//!
//! Each coloring gets three flags computed along separate routes:
//! - unfriendly: bitmask popcounts of same-colored neighborhoods;
//! - flip fixed point: the dynamics engine's flip rule applied to every
//!   singleton class;
//! - local max cut: a table of cut sizes for all colorings, compared against
//!   every single-vertex move.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::coloring::Coloring;
use crate::dynamics::flip_set;
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

pub const MAX_VERTICES: usize = 24;

pub const UNFRIENDLY: u8 = 1;
pub const FIXED_POINT: u8 = 2;
pub const LOCAL_MAX_CUT: u8 = 4;
const ALL: u8 = UNFRIENDLY | FIXED_POINT | LOCAL_MAX_CUT;

const CHUNK: usize = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringEnumeration {
    n: usize,
    /// Indexed by coloring mask: bit `x` is the color of vertex `x`.
    flags: Vec<u8>,
}

impl ColoringEnumeration {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn flags(&self, mask: u64) -> u8 {
        self.flags[mask as usize]
    }

    pub fn count(&self, flag: u8) -> usize {
        self.flags.iter().filter(|&&f| f & flag != 0).count()
    }

    /// True when the three flags coincide on every coloring.
    pub fn all_agree(&self) -> bool {
        self.flags.iter().all(|&f| f == 0 || f == ALL)
    }

    /// First coloring on which the flags disagree.
    pub fn first_disagreement(&self) -> Option<u64> {
        self.flags
            .iter()
            .position(|&f| f != 0 && f != ALL)
            .map(|m| m as u64)
    }

    pub fn masks_with(&self, flag: u8) -> impl Iterator<Item = u64> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter(move |(_, &f)| f & flag != 0)
            .map(|(m, _)| m as u64)
    }

    /// `mask,unfriendly,fixed_point,local_max_cut` rows, one per coloring.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("mask,unfriendly,fixed_point,local_max_cut\n");
        for (m, &f) in self.flags.iter().enumerate() {
            let bit = |b: u8| u8::from(f & b != 0);
            let _ = writeln!(
                out,
                "{m},{},{},{}",
                bit(UNFRIENDLY),
                bit(FIXED_POINT),
                bit(LOCAL_MAX_CUT)
            );
        }
        out
    }
}

fn check_size(g: &FiniteGraph) -> Result<()> {
    if g.vertex_count() > MAX_VERTICES {
        Err(Error::GraphTooLarge {
            n: g.vertex_count(),
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

fn adjacency_masks(g: &FiniteGraph) -> Vec<u32> {
    g.vertices()
        .map(|x| g.neighbors(x).iter().fold(0u32, |m, &y| m | (1 << y)))
        .collect()
}

/// `cut[mask]` = edges between the 1-side and the 0-side. Built by adding one
/// vertex at a time: moving `v` to the 1-side turns its `k` cut edges into
/// `deg(v) - k`.
fn cut_table(g: &FiniteGraph, adj: &[u32]) -> Vec<u16> {
    let n = g.vertex_count();
    let mut cut = vec![0u16; 1 << n];
    for mask in 1usize..(1 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let k = (adj[v] & rest as u32).count_ones() as u16;
        cut[mask] = cut[rest] + g.degree(v) as u16 - 2 * k;
    }
    cut
}

pub fn enumerate(g: &FiniteGraph) -> Result<ColoringEnumeration> {
    check_size(g)?;
    let n = g.vertex_count();
    let adj = adjacency_masks(g);
    let cut = cut_table(g, &adj);
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let singletons: Vec<[usize; 1]> = g.vertices().map(|x| [x]).collect();

    let mut flags = vec![0u8; 1 << n];
    flags
        .par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(chunk, out)| {
            let mut coloring = Coloring::zeros(n);
            for (i, slot) in out.iter_mut().enumerate() {
                let mask = chunk * CHUNK + i;
                let m = mask as u32;
                let mut f = 0;

                let unfriendly = (0..n).all(|x| {
                    let side = if m >> x & 1 == 1 { m } else { !m & full };
                    let same = (adj[x] & side).count_ones();
                    2 * same <= g.degree(x) as u32
                });
                if unfriendly {
                    f |= UNFRIENDLY;
                }

                for (x, c) in coloring.raw_mut().iter_mut().enumerate() {
                    *c = (m >> x & 1) as u8;
                }
                if singletons.iter().all(|s| flip_set(g, &coloring, s).is_empty()) {
                    f |= FIXED_POINT;
                }

                if (0..n).all(|x| cut[mask ^ (1 << x)] <= cut[mask]) {
                    f |= LOCAL_MAX_CUT;
                }
                *slot = f;
            }
        });
    Ok(ColoringEnumeration { n, flags })
}

/// Unfriendly colorings, flip fixed points and local max cuts coincide.
pub fn check_fixed_point_equivalence(g: &FiniteGraph) -> Result<bool> {
    Ok(enumerate(g)?.all_agree())
}

/// A coloring with the fewest monochromatic edges (a maximum cut), ties
/// broken by smallest mask, together with that count.
pub fn min_monochrome_coloring(g: &FiniteGraph) -> Result<(Coloring, usize)> {
    check_size(g)?;
    let adj = adjacency_masks(g);
    let cut = cut_table(g, &adj);
    let (best, &best_cut) = cut
        .iter()
        .enumerate()
        .max_by(|(ma, a), (mb, b)| a.cmp(b).then(mb.cmp(ma)))
        .expect("at least one coloring");
    Ok((
        Coloring::from_mask(g.vertex_count(), best as u64),
        g.edge_count() - best_cut as usize,
    ))
}
