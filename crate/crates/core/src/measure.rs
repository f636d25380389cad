//! Atomic vertex measures and their Radon-Nikodym cocycle.
//!
//! A measure is stored as strictly positive integer numerators over one shared
//! positive denominator, so sums over vertex sets are integer sums and only the
//! final value is reduced to lowest terms.

use std::fmt::Write as _;
use std::io::BufRead;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMeasure {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl VertexMeasure {
    /// The normalized counting measure, `1/n` on every vertex.
    pub fn uniform(n: usize) -> Self {
        VertexMeasure {
            numerators: vec![BigInt::one(); n],
            denominator: BigInt::from(n.max(1)),
        }
    }

    /// Builds a measure from explicit per-vertex weights. The weights are kept
    /// as given; call [`normalized`](Self::normalized) for a probability measure.
    pub fn from_weights(weights: &[BigRational]) -> Result<Self> {
        if let Some(x) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight(x));
        }
        let denominator = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let numerators = weights
            .iter()
            .map(|w| w.numer() * (&denominator / w.denom()))
            .collect();
        Ok(VertexMeasure {
            numerators,
            denominator,
        })
    }

    /// Measure with weight `numerators[x] / denominator`. Every numerator and
    /// the denominator must be strictly positive.
    pub fn from_numerators(numerators: Vec<BigInt>, denominator: BigInt) -> Result<Self> {
        if let Some(x) = numerators.iter().position(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight(x));
        }
        if !denominator.is_positive() {
            return Err(Error::Config("measure denominator must be positive".into()));
        }
        Ok(VertexMeasure {
            numerators,
            denominator,
        })
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn weight(&self, x: Vertex) -> BigRational {
        BigRational::new(self.numerators[x].clone(), self.denominator.clone())
    }

    pub fn weights(&self) -> impl Iterator<Item = BigRational> + '_ {
        (0..self.len()).map(|x| self.weight(x))
    }

    pub fn total(&self) -> BigRational {
        BigRational::new(self.numerator_sum(self.vertices()), self.denominator.clone())
    }

    /// Measure of a vertex set (vertices counted with multiplicity).
    pub fn mass<'a, I>(&self, set: I) -> BigRational
    where
        I: IntoIterator<Item = &'a Vertex>,
    {
        BigRational::new(
            self.numerator_sum(set.into_iter().copied()),
            self.denominator.clone(),
        )
    }

    pub fn normalized(&self) -> Self {
        let total = self.numerator_sum(self.vertices());
        if total.is_zero() {
            return self.clone();
        }
        VertexMeasure {
            numerators: self.numerators.clone(),
            denominator: total,
        }
        .reduced()
    }

    pub fn is_normalized(&self) -> bool {
        self.total().is_one()
    }

    /// Shared-denominator representation used by the incremental engine.
    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: n,
                found: self.len(),
            })
        }
    }

    fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.len()
    }

    fn numerator_sum<I: IntoIterator<Item = Vertex>>(&self, set: I) -> BigInt {
        set.into_iter()
            .fold(BigInt::zero(), |acc, x| acc + &self.numerators[x])
    }

    fn reduced(mut self) -> Self {
        let g = self
            .numerators
            .iter()
            .fold(self.denominator.clone(), |acc, w| acc.gcd(w));
        if !g.is_one() && !g.is_zero() {
            for w in &mut self.numerators {
                *w /= &g;
            }
            self.denominator /= &g;
        }
        self
    }

    /// One `numerator/denominator` line per vertex, lowest terms.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in self.weights() {
            let _ = writeln!(out, "{}/{}", w.numer(), w.denom());
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        Self::read_text(text.as_bytes())
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut weights = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            weights.push(parse_rational(t).map_err(|msg| Error::parse(i + 1, msg))?);
        }
        Self::from_weights(&weights)
    }
}

/// Parses `a/b` or a bare integer `a`.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(num, den))
}

/// The cocycle of an atomic measure: `ρ(x, y) = μ(y) / μ(x)`.
pub fn cocycle(mu: &VertexMeasure, x: Vertex, y: Vertex) -> Result<BigRational> {
    for id in [x, y] {
        if id >= mu.len() {
            return Err(Error::VertexOutOfRange { id, n: mu.len() });
        }
    }
    Ok(BigRational::new(
        mu.numerators[y].clone(),
        mu.numerators[x].clone(),
    ))
}

/// Checks `1 - 1/d <= ρ(x, y) <= 1 + 1/d` on every edge, `d` the maximum
/// degree. Returns the first violating edge in lexicographic edge order,
/// oriented as found.
pub fn cocycle_bound_ok(g: &FiniteGraph, mu: &VertexMeasure) -> Result<()> {
    mu.check_len(g.vertex_count())?;
    let d = BigInt::from(g.max_degree());
    let w = &mu.numerators;
    for (x, y) in g.edges() {
        for (a, b) in [(x, y), (y, x)] {
            // (d-1) w_a <= d w_b <= (d+1) w_a
            let lhs = &w[b] * &d;
            let lower = &w[a] * (&d - 1);
            let upper = &w[a] * (&d + 1);
            if lhs < lower || lhs > upper {
                return Err(Error::CocycleBound {
                    x: a,
                    y: b,
                    ratio: BigRational::new(w[b].clone(), w[a].clone()),
                    d: g.max_degree(),
                });
            }
        }
    }
    Ok(())
}

/// Checks that `ρ ≡ 1` on every edge, i.e. the measure is constant on each
/// connected component.
pub fn is_invariant(g: &FiniteGraph, mu: &VertexMeasure) -> Result<()> {
    mu.check_len(g.vertex_count())?;
    match g.edges().find(|&(x, y)| mu.numerators[x] != mu.numerators[y]) {
        None => Ok(()),
        Some((x, y)) => Err(Error::NotInvariant {
            x,
            y,
            ratio: BigRational::new(mu.numerators[y].clone(), mu.numerators[x].clone()),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn uniform_cocycle_is_one() {
        let g = FiniteGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let mu = VertexMeasure::uniform(4);
        for (x, y) in g.edges() {
            assert_eq!(cocycle(&mu, x, y).unwrap(), BigRational::one());
        }
        assert!(cocycle_bound_ok(&g, &mu).is_ok());
        assert!(is_invariant(&g, &mu).is_ok());
        assert!(mu.is_normalized());
    }

    #[test]
    fn direct_ratio() {
        let mu = VertexMeasure::from_weights(&[q(1, 3), q(1, 4)]).unwrap();
        assert_eq!(cocycle(&mu, 0, 1).unwrap(), q(3, 4));
        assert_eq!(cocycle(&mu, 1, 0).unwrap(), q(4, 3));
        assert!(cocycle(&mu, 0, 2).is_err());
    }

    #[test]
    fn gross_violation_on_a_single_edge() {
        let g = FiniteGraph::from_edges(2, [(0, 1)]).unwrap();
        let mu = VertexMeasure::from_weights(&[q(1, 10), q(9, 10)]).unwrap();
        match cocycle_bound_ok(&g, &mu) {
            Err(Error::CocycleBound { x, y, ratio, d }) => {
                assert_eq!((x, y, d), (0, 1, 1));
                assert_eq!(ratio, q(9, 1));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn bound_is_inclusive() {
        // d = 2 on a path: ratios 1/2 and 3/2 are the extremes allowed.
        let g = FiniteGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let ok = VertexMeasure::from_weights(&[q(2, 1), q(3, 1), q(2, 1)]).unwrap();
        assert!(cocycle_bound_ok(&g, &ok).is_ok());
        let bad = VertexMeasure::from_weights(&[q(2, 1), q(4, 1), q(2, 1)]).unwrap();
        assert!(cocycle_bound_ok(&g, &bad).is_err());
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(matches!(
            VertexMeasure::from_weights(&[q(1, 2), q(0, 1)]),
            Err(Error::NonPositiveWeight(1))
        ));
    }

    #[test]
    fn normalization_and_text() {
        let mu = VertexMeasure::from_weights(&[q(2, 1), q(6, 1), q(4, 1)]).unwrap();
        let n = mu.normalized();
        assert!(n.is_normalized());
        assert_eq!(n.to_text(), "1/6\n1/2\n1/3\n");
        assert_eq!(VertexMeasure::parse_text(&n.to_text()).unwrap(), n);
        assert_eq!(n.denominator(), &BigInt::from(6));
        assert!(VertexMeasure::parse_text("1/0\n").is_err());
        assert_eq!(
            VertexMeasure::parse_text("2\n4/2\n").unwrap().total(),
            q(4, 1)
        );
    }

    proptest! {
        #[test]
        fn cocycle_identities(ws in prop::collection::vec((1i64..1000, 1i64..1000), 3..12),
                              i in 0usize..100, j in 0usize..100, k in 0usize..100) {
            let weights: Vec<_> = ws.iter().map(|&(n, d)| q(n, d)).collect();
            let mu = VertexMeasure::from_weights(&weights).unwrap();
            let n = weights.len();
            let (x, y, z) = (i % n, j % n, k % n);
            let rxy = cocycle(&mu, x, y).unwrap();
            let ryx = cocycle(&mu, y, x).unwrap();
            prop_assert!((&rxy * &ryx).is_one());
            prop_assert_eq!(&rxy * cocycle(&mu, y, z).unwrap(), cocycle(&mu, x, z).unwrap());
            prop_assert_eq!(rxy, &weights[y] / &weights[x]);
            prop_assert_eq!(mu.total(), weights.iter().sum::<BigRational>());
        }
    }
}
