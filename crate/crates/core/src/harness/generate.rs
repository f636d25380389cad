//! Deterministic graph generators.
//!
//! All randomness comes from a ChaCha8 stream (`rand_chacha::ChaCha8Rng`)
//! seeded with `seed_from_u64(seed)`. ChaCha8 output is specified bit-for-bit
//! and platform independent, so a spec and seed always give the same graph.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Vertex};

const REGULAR_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Grid { rows: usize, cols: usize },
    Torus { rows: usize, cols: usize },
    Cycle { n: usize },
    Path { n: usize },
    Complete { n: usize },
    RandomRegular { n: usize, d: usize },
    /// `d`-regular tree cut off at `depth`: the root has `d` children, every
    /// other internal vertex `d - 1`.
    RegularTreeTruncation { d: usize, depth: usize },
    /// `G(n, p)` with `p = mean_degree / (n - 1)`, scanning pairs in
    /// lexicographic order and skipping edges at a saturated endpoint.
    ErdosRenyiCapped { n: usize, mean_degree: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        GeneratorSpec { family, seed }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Grid { rows, cols } => write!(f, "grid:{rows}:{cols}"),
            Family::Torus { rows, cols } => write!(f, "torus:{rows}:{cols}"),
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::RandomRegular { n, d } => write!(f, "random_regular:{n}:{d}"),
            Family::RegularTreeTruncation { d, depth } => {
                write!(f, "regular_tree_truncation:{d}:{depth}")
            }
            Family::ErdosRenyiCapped { n, mean_degree, cap } => {
                write!(f, "erdos_renyi_capped:{n}:{mean_degree}:{cap}")
            }
        }
    }
}

/// Parses `family:p1:p2...`; `x` is accepted between two parameters too, as
/// in `torus:32x32`. `tree` and `er` are short names for the last two families.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split([':', 'x'])
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad generator parameter `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::Config(format!(
                    "`{name}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let family = match name {
            "grid" => {
                arity(2)?;
                Family::Grid { rows: params[0], cols: params[1] }
            }
            "torus" => {
                arity(2)?;
                Family::Torus { rows: params[0], cols: params[1] }
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle { n: params[0] }
            }
            "path" => {
                arity(1)?;
                Family::Path { n: params[0] }
            }
            "complete" => {
                arity(1)?;
                Family::Complete { n: params[0] }
            }
            "random_regular" => {
                arity(2)?;
                Family::RandomRegular { n: params[0], d: params[1] }
            }
            "regular_tree_truncation" | "tree" => {
                arity(2)?;
                Family::RegularTreeTruncation { d: params[0], depth: params[1] }
            }
            "erdos_renyi_capped" | "er" => {
                arity(3)?;
                Family::ErdosRenyiCapped {
                    n: params[0],
                    mean_degree: params[1],
                    cap: params[2],
                }
            }
            other => return Err(Error::Config(format!("unknown graph family `{other}`"))),
        };
        Ok(family)
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<FiniteGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.family {
        Family::Grid { rows, cols } => lattice(rows, cols, false),
        Family::Torus { rows, cols } => {
            if rows < 3 || cols < 3 {
                return Err(Error::Infeasible("torus sides must be at least 3".into()));
            }
            lattice(rows, cols, true)
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::Infeasible("cycle needs at least 3 vertices".into()));
            }
            FiniteGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Path { n } => FiniteGraph::from_edges(n, (1..n).map(|i| (i - 1, i))),
        Family::Complete { n } => {
            FiniteGraph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        }
        Family::RandomRegular { n, d } => random_regular(n, d, &mut rng),
        Family::RegularTreeTruncation { d, depth } => regular_tree(d, depth),
        Family::ErdosRenyiCapped { n, mean_degree, cap } => {
            erdos_renyi_capped(n, mean_degree, cap, &mut rng)
        }
    }
}

fn lattice(rows: usize, cols: usize, wrap: bool) -> Result<FiniteGraph> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            } else if wrap {
                edges.push((id(r, c), id(0, c)));
            }
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            } else if wrap {
                edges.push((id(r, c), id(r, 0)));
            }
        }
    }
    FiniteGraph::from_edges(rows * cols, edges)
}

/// Pairing model with per-pair rejection: shuffle the `n·d` stubs, pair them
/// consecutively, keep pairs that form new simple edges and re-pair the rest.
/// An attempt restarts when no admissible pair is left among the remaining
/// stubs.
fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<FiniteGraph> {
    if (n > 0 && d >= n) || (n * d) % 2 == 1 {
        return Err(Error::Infeasible(format!(
            "no simple {d}-regular graph on {n} vertices"
        )));
    }
    for _ in 0..REGULAR_ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, rng) {
            return FiniteGraph::from_edges(n, edges);
        }
    }
    Err(Error::Infeasible(format!(
        "pairing model failed {REGULAR_ATTEMPTS} times for n={n}, d={d}"
    )))
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(Vertex, Vertex)>> {
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(n * d / 2);
    let mut present: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(n * d / 2);
    let mut stubs: Vec<Vertex> = (0..n).flat_map(|x| std::iter::repeat_n(x, d)).collect();
    while !stubs.is_empty() {
        stubs.shuffle(rng);
        let mut leftover: BTreeMap<Vertex, usize> = BTreeMap::new();
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && present.insert((a, b)) {
                edges.push((a, b));
            } else {
                *leftover.entry(a).or_default() += 1;
                *leftover.entry(b).or_default() += 1;
            }
        }
        let open: Vec<Vertex> = leftover.keys().copied().collect();
        let admissible = open.iter().enumerate().any(|(i, &a)| {
            open[i + 1..].iter().any(|&b| !present.contains(&(a, b)))
        });
        if !open.is_empty() && !admissible {
            return None;
        }
        stubs = leftover
            .into_iter()
            .flat_map(|(x, k)| std::iter::repeat_n(x, k))
            .collect();
    }
    Some(edges)
}

fn regular_tree(d: usize, depth: usize) -> Result<FiniteGraph> {
    if d == 0 && depth > 0 {
        return Err(Error::Infeasible("a 0-regular tree has no edges to grow".into()));
    }
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    let mut next_id = 1;
    for level in 0..depth {
        let children = if level == 0 { d } else { d - 1 };
        let mut next = Vec::with_capacity(frontier.len() * children);
        for &parent in &frontier {
            for _ in 0..children {
                edges.push((parent, next_id));
                next.push(next_id);
                next_id += 1;
            }
        }
        frontier = next;
    }
    FiniteGraph::from_edges(next_id, edges)
}

fn erdos_renyi_capped(
    n: usize,
    mean_degree: usize,
    cap: usize,
    rng: &mut ChaCha8Rng,
) -> Result<FiniteGraph> {
    if n < 2 {
        return Ok(FiniteGraph::empty(n));
    }
    if mean_degree > n - 1 {
        return Err(Error::Infeasible(format!(
            "mean degree {mean_degree} exceeds n - 1 = {}",
            n - 1
        )));
    }
    let p = mean_degree as f64 / (n - 1) as f64;
    let mut degree = vec![0usize; n];
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let draw: f64 = rng.random();
            if draw < p && degree[i] < cap && degree[j] < cap {
                degree[i] += 1;
                degree[j] += 1;
                edges.push((i, j));
            }
        }
    }
    FiniteGraph::from_edges(n, edges)
}
