//! Repetitive sequences of independent sets.
//!
//! A [`Schedule`] is a finite list of independent vertex classes read
//! cyclically: round `n` uses `classes[n mod period]`, so in cyclic mode every
//! vertex is scheduled once per period and hence infinitely often.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleMode {
    /// Classes partition the vertex set.
    Cyclic,
    /// Classes partition the vertex set minus a frozen set that is never
    /// scheduled. Only for truncation experiments; this breaks repetitiveness.
    FrozenBoundary,
}

impl ScheduleMode {
    fn keyword(self) -> &'static str {
        match self {
            ScheduleMode::Cyclic => "cyclic",
            ScheduleMode::FrozenBoundary => "frozen",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    classes: Vec<Vec<Vertex>>,
    mode: ScheduleMode,
    frozen: Vec<Vertex>,
}

impl Schedule {
    /// Greedy proper coloring in ascending vertex order; the color classes, in
    /// color order, form a cyclic schedule with at most `d + 1` classes.
    pub fn greedy(g: &FiniteGraph) -> Self {
        Self::greedy_excluding(g, &vec![false; g.vertex_count()], ScheduleMode::Cyclic)
    }

    /// One singleton class per vertex, in the order given.
    pub fn singleton(g: &FiniteGraph, order: &[Vertex]) -> Result<Self> {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        if order.len() != n {
            return Err(Error::NotAPermutation(n));
        }
        for &x in order {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::NotAPermutation(n));
            }
        }
        let classes = if n == 0 {
            vec![Vec::new()]
        } else {
            order.iter().map(|&x| vec![x]).collect()
        };
        Ok(Schedule {
            classes,
            mode: ScheduleMode::Cyclic,
            frozen: Vec::new(),
        })
    }

    /// Greedy schedule on the vertices outside `frozen`; frozen vertices are
    /// never scheduled.
    pub fn frozen_boundary(g: &FiniteGraph, frozen: &[Vertex]) -> Result<Self> {
        let mut is_frozen = vec![false; g.vertex_count()];
        for &x in frozen {
            g.check_vertex(x)?;
            is_frozen[x] = true;
        }
        Ok(Self::greedy_excluding(
            g,
            &is_frozen,
            ScheduleMode::FrozenBoundary,
        ))
    }

    /// Validates explicit classes against `g`. In frozen-boundary mode the
    /// frozen set is whatever the classes leave out.
    pub fn from_classes(
        g: &FiniteGraph,
        classes: Vec<Vec<Vertex>>,
        mode: ScheduleMode,
    ) -> Result<Self> {
        let n = g.vertex_count();
        let mut count = vec![0usize; n];
        let mut classes = classes;
        for class in &mut classes {
            class.sort_unstable();
            for &x in class.iter() {
                g.check_vertex(x)?;
                count[x] += 1;
            }
            if let Some((x, y)) = g.edge_within(class) {
                return Err(Error::NotIndependent(x, y));
            }
        }
        if let Some(x) = (0..n).find(|&x| count[x] > 1) {
            return Err(Error::BadCovering(x));
        }
        if mode == ScheduleMode::Cyclic {
            if let Some(x) = (0..n).find(|&x| count[x] == 0) {
                return Err(Error::BadCovering(x));
            }
        }
        if classes.is_empty() {
            classes.push(Vec::new());
        }
        let frozen = (0..n).filter(|&x| count[x] == 0).collect();
        Ok(Schedule {
            classes,
            mode,
            frozen,
        })
    }

    fn greedy_excluding(g: &FiniteGraph, excluded: &[bool], mode: ScheduleMode) -> Self {
        let n = g.vertex_count();
        let mut color = vec![usize::MAX; n];
        let mut classes: Vec<Vec<Vertex>> = Vec::new();
        let mut taken = vec![false; g.max_degree() + 2];
        for x in (0..n).filter(|&x| !excluded[x]) {
            for &y in g.neighbors(x) {
                if color[y] != usize::MAX {
                    taken[color[y]] = true;
                }
            }
            let c = taken.iter().position(|&t| !t).expect("d + 2 slots");
            for &y in g.neighbors(x) {
                if color[y] != usize::MAX {
                    taken[color[y]] = false;
                }
            }
            color[x] = c;
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(x);
        }
        if classes.is_empty() {
            classes.push(Vec::new());
        }
        Schedule {
            classes,
            mode,
            frozen: (0..n).filter(|&x| excluded[x]).collect(),
        }
    }

    pub fn period(&self) -> usize {
        self.classes.len()
    }

    pub fn mode(&self) -> ScheduleMode {
        self.mode
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    pub fn frozen(&self) -> &[Vertex] {
        &self.frozen
    }

    pub fn class_index(&self, n: usize) -> usize {
        n % self.period()
    }

    /// The independent set `X_n`.
    pub fn nth_class(&self, n: usize) -> &[Vertex] {
        &self.classes[self.class_index(n)]
    }

    /// Header `period k mode cyclic|frozen`, then one line of sorted ids per class.
    pub fn to_text(&self) -> String {
        let mut out = format!("period {} mode {}\n", self.period(), self.mode.keyword());
        for class in &self.classes {
            let ids: Vec<String> = class.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", ids.join(" "));
        }
        out
    }

    pub fn parse_text(g: &FiniteGraph, text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let (period, mode) = match toks.as_slice() {
            ["period", k, "mode", m] => {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::parse(1, format!("bad period `{k}`")))?;
                let mode = match *m {
                    "cyclic" => ScheduleMode::Cyclic,
                    "frozen" => ScheduleMode::FrozenBoundary,
                    other => return Err(Error::parse(1, format!("unknown mode `{other}`"))),
                };
                (k, mode)
            }
            _ => return Err(Error::parse(1, "expected `period k mode cyclic|frozen`")),
        };
        let mut classes = Vec::with_capacity(period);
        for i in 0..period {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(i + 2, "missing class line"))?;
            let class = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(i + 2, format!("bad id `{t}`"))))
                .collect::<Result<Vec<Vertex>>>()?;
            classes.push(class);
        }
        Self::from_classes(g, classes, mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> FiniteGraph {
        FiniteGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn greedy_small_cases() {
        let edge = FiniteGraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(Schedule::greedy(&edge).classes(), &[vec![0], vec![1]]);
        let tri = cycle(3);
        assert_eq!(Schedule::greedy(&tri).classes(), &[vec![0], vec![1], vec![2]]);
        let c4 = cycle(4);
        assert_eq!(Schedule::greedy(&c4).classes(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn singleton_orders() {
        let g = FiniteGraph::empty(3);
        let id = Schedule::singleton(&g, &[0, 1, 2]).unwrap();
        assert_eq!(id.classes(), &[vec![0], vec![1], vec![2]]);
        let rev = Schedule::singleton(&g, &[2, 1, 0]).unwrap();
        assert_eq!(rev.classes(), &[vec![2], vec![1], vec![0]]);
        let one = Schedule::singleton(&FiniteGraph::empty(1), &[0]).unwrap();
        assert_eq!(one.classes(), &[vec![0]]);
        assert!(Schedule::singleton(&g, &[0, 0, 1]).is_err());
        assert!(Schedule::singleton(&g, &[0, 1]).is_err());
        assert!(Schedule::singleton(&g, &[0, 1, 3]).is_err());
    }

    #[test]
    fn nth_class_is_modular() {
        let s = Schedule::greedy(&cycle(4));
        assert_eq!(s.nth_class(5), s.classes()[1].as_slice());
        assert_eq!(s.nth_class(0), s.classes()[0].as_slice());
    }

    #[test]
    fn frozen_vertices_never_scheduled() {
        let g = cycle(6);
        let s = Schedule::frozen_boundary(&g, &[0, 3]).unwrap();
        assert_eq!(s.frozen(), &[0, 3]);
        for n in 0..3 * s.period() {
            assert!(!s.nth_class(n).contains(&0) && !s.nth_class(n).contains(&3));
        }
        let back = Schedule::parse_text(&g, &s.to_text()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn from_classes_validates() {
        let g = cycle(4);
        assert!(matches!(
            Schedule::from_classes(&g, vec![vec![0, 1], vec![2, 3]], ScheduleMode::Cyclic),
            Err(Error::NotIndependent(0, 1))
        ));
        assert!(matches!(
            Schedule::from_classes(&g, vec![vec![0, 2], vec![1]], ScheduleMode::Cyclic),
            Err(Error::BadCovering(3))
        ));
        assert!(matches!(
            Schedule::from_classes(&g, vec![vec![0, 2], vec![0]], ScheduleMode::FrozenBoundary),
            Err(Error::BadCovering(0))
        ));
    }

    #[test]
    fn text_format() {
        let s = Schedule::greedy(&cycle(4));
        assert_eq!(s.to_text(), "period 2 mode cyclic\n0 2\n1 3\n");
    }

    fn arb_graph() -> impl Strategy<Value = FiniteGraph> {
        (1usize..30).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..4 * n).prop_map(move |pairs| {
                FiniteGraph::from_edges(n, pairs.into_iter().filter(|(a, b)| a != b)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn greedy_is_independent_covering_and_small(g in arb_graph()) {
            let s = Schedule::greedy(&g);
            prop_assert!(s.period() <= g.max_degree() + 1);
            let mut hits = vec![0; g.vertex_count()];
            for class in s.classes() {
                for &x in class { hits[x] += 1; }
                for (x, y) in g.edges() {
                    prop_assert!(!(class.contains(&x) && class.contains(&y)));
                }
            }
            prop_assert!(hits.iter().all(|&h| h == 1));
            prop_assert_eq!(Schedule::parse_text(&g, &s.to_text()).unwrap(), s);
        }
    }
}
