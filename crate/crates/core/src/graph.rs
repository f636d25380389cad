//! Immutable undirected simple graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted ascending and symmetric; there are no loops or
/// parallel edges. Construct through [`FiniteGraph::from_edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGraph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    max_degree: usize,
}

impl FiniteGraph {
    /// Builds the canonical graph on `n` vertices from unordered pairs.
    /// Duplicates and reversed copies of an edge collapse to one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            pairs.push((u, v));
            pairs.push((v, u));
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets: Vec<Vertex> = pairs.into_iter().map(|(_, v)| v).collect();
        let max_degree = (0..n).map(|x| offsets[x + 1] - offsets[x]).max().unwrap_or(0);
        Ok(FiniteGraph {
            offsets,
            targets,
            max_degree,
        })
    }

    pub fn empty(n: usize) -> Self {
        FiniteGraph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            max_degree: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    #[inline]
    pub fn neighbors(&self, x: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[x]..self.offsets[x + 1]]
    }

    #[inline]
    pub fn degree(&self, x: Vertex) -> usize {
        self.offsets[x + 1] - self.offsets[x]
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn has_edge(&self, x: Vertex, y: Vertex) -> bool {
        self.neighbors(x).binary_search(&y).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, x: Vertex) -> Result<()> {
        if x < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                id: x,
                n: self.vertex_count(),
            })
        }
    }

    /// Returns the first edge with both endpoints in `set`, if any.
    pub fn edge_within(&self, set: &[Vertex]) -> Option<(Vertex, Vertex)> {
        let mut member = vec![false; self.vertex_count()];
        for &x in set {
            member[x] = true;
        }
        set.iter().find_map(|&x| {
            self.neighbors(x)
                .iter()
                .find(|&&y| member[y])
                .map(|&y| (x.min(y), x.max(y)))
        })
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            let next = dist[x].map(|d| d + 1);
            for &y in self.neighbors(x) {
                if dist[y].is_none() {
                    dist[y] = next;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Connected-component label per vertex; labels are assigned in order of
    /// each component's smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for root in 0..n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = next;
            stack.push(root);
            while let Some(x) = stack.pop() {
                for &y in self.neighbors(x) {
                    if label[y] == usize::MAX {
                        label[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Subgraph induced on `keep` (sorted and deduplicated first). Returns the
    /// subgraph together with the map from new ids to original ids.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> Result<(FiniteGraph, Vec<Vertex>)> {
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if let Some(&bad) = kept.iter().find(|&&x| x >= self.vertex_count()) {
            return Err(Error::VertexOutOfRange {
                id: bad,
                n: self.vertex_count(),
            });
        }
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &x) in kept.iter().enumerate() {
            new_id[x] = i;
        }
        let edges = kept.iter().flat_map(|&x| {
            let new_id = &new_id;
            self.neighbors(x)
                .iter()
                .filter(move |&&y| x < y && new_id[y] != usize::MAX)
                .map(move |&y| (new_id[x], new_id[y]))
        });
        let sub = FiniteGraph::from_edges(kept.len(), edges.collect::<Vec<_>>())?;
        Ok((sub, kept))
    }

    /// Text form: header `n m`, then one `u v` line per edge with `u < v`,
    /// edges in lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edge_count() + 1));
        let _ = writeln!(out, "{} {}", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        Self::read_text(text.as_bytes())
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header `n m`"))?;
        let header = header?;
        let [n, m] = parse_pair(&header, hline)?;
        let mut edges = Vec::with_capacity(m);
        for (line_no, line) in lines {
            let [u, v] = parse_pair(&line?, line_no)?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::parse(
                hline,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        Self::from_edges(n, edges)
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<[usize; 2]> {
    let mut it = line.split_whitespace().map(|t| {
        t.parse::<usize>()
            .map_err(|e| Error::parse(line_no, format!("`{t}`: {e}")))
    });
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok([a?, b?]),
        _ => Err(Error::parse(line_no, "expected two integers")),
    }
}
