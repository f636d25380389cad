//! Geometric ball measures `μ_x(y) ∝ (1 + ε)^{-δ(x, y)}` and ball growth.
//!
//! Adjacent vertices differ in distance from the center by at most one, so
//! the cocycle of a ball measure lies in `[(1 + ε)^{-1}, 1 + ε]` on every edge
//! of the center's component. With `ε = 1/d` this sits inside
//! `[1 - 1/d, 1 + 1/d]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Vertex};
use crate::measure::VertexMeasure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallMeasure {
    center: Vertex,
    epsilon: BigRational,
    /// `ν_x(y) · (1 + ε)^{R}` with `R` the eccentricity of the center; zero
    /// off the center's component.
    scaled: Vec<BigInt>,
    /// `(1 + ε)^{R}`.
    scale: BigInt,
    scaled_total: BigInt,
}

/// `ε = 1/d` for degree bound `d ≥ 1`.
pub fn epsilon_for_degree(d: usize) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(BigRational::new(BigInt::one(), BigInt::from(d)))
}

/// Builds `μ_x = ν_x / K` on the component of `x`.
pub fn ball_measure(g: &FiniteGraph, x: Vertex, epsilon: &BigRational) -> Result<BallMeasure> {
    g.check_vertex(x)?;
    if !epsilon.is_positive() {
        return Err(Error::NonPositiveEpsilon(epsilon.clone()));
    }
    // 1 + ε = (q + p) / q, so (1 + ε)^{-δ} = q^δ / (q + p)^δ.
    let p = epsilon.numer();
    let q = epsilon.denom();
    let base = p + q;
    let dist = g.distances_from(x);
    let radius = dist.iter().flatten().copied().max().unwrap_or(0);

    let q_pow: Vec<BigInt> = powers(q, radius);
    let base_pow: Vec<BigInt> = powers(&base, radius);
    let scaled: Vec<BigInt> = dist
        .iter()
        .map(|d| match d {
            Some(d) => &q_pow[*d] * &base_pow[radius - d],
            None => BigInt::zero(),
        })
        .collect();
    let scaled_total = scaled.iter().sum();
    Ok(BallMeasure {
        center: x,
        epsilon: epsilon.clone(),
        scale: base.pow(radius),
        scaled,
        scaled_total,
    })
}

fn powers(b: &BigInt, up_to: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(up_to + 1);
    let mut acc = BigInt::one();
    for _ in 0..=up_to {
        out.push(acc.clone());
        acc *= b;
    }
    out
}

impl BallMeasure {
    pub fn center(&self) -> Vertex {
        self.center
    }

    pub fn epsilon(&self) -> &BigRational {
        &self.epsilon
    }

    /// `K = Σ_y (1 + ε)^{-δ(x, y)}` over the component of the center.
    pub fn normalizer(&self) -> BigRational {
        BigRational::new(self.scaled_total.clone(), self.scale.clone())
    }

    /// Unnormalized `ν_x(y)`.
    pub fn raw_weight(&self, y: Vertex) -> BigRational {
        BigRational::new(self.scaled[y].clone(), self.scale.clone())
    }

    /// `μ_x(y)`; zero off the center's component.
    pub fn weight(&self, y: Vertex) -> BigRational {
        BigRational::new(self.scaled[y].clone(), self.scaled_total.clone())
    }

    /// Vertices of the center's component, ascending.
    pub fn support(&self) -> Vec<Vertex> {
        (0..self.scaled.len())
            .filter(|&y| !self.scaled[y].is_zero())
            .collect()
    }

    /// The measure as a full-support [`VertexMeasure`]; fails unless the
    /// graph is connected.
    pub fn to_vertex_measure(&self) -> Result<VertexMeasure> {
        let support = self.support().len();
        if support != self.scaled.len() {
            return Err(Error::PartialSupport {
                support,
                n: self.scaled.len(),
            });
        }
        Ok(VertexMeasure::from_numerators(self.scaled.clone(), self.scaled_total.clone())?.normalized())
    }

    /// The center's component as its own graph, carrying the measure.
    /// Also returns the map from new ids to original ids.
    pub fn restrict(&self, g: &FiniteGraph) -> Result<(FiniteGraph, VertexMeasure, Vec<Vertex>)> {
        let (sub, map) = g.induced_subgraph(&self.support())?;
        let numerators = map.iter().map(|&y| self.scaled[y].clone()).collect();
        let mu = VertexMeasure::from_numerators(numerators, self.scaled_total.clone())?.normalized();
        Ok((sub, mu, map))
    }
}

/// `|B(x, r)|` for `r = 0..=r_max`.
pub fn growth_profile(g: &FiniteGraph, x: Vertex, r_max: usize) -> Result<Vec<usize>> {
    g.check_vertex(x)?;
    let mut at = vec![0usize; r_max + 1];
    for d in g.distances_from(x).into_iter().flatten() {
        if d <= r_max {
            at[d] += 1;
        }
    }
    let mut acc = 0;
    Ok(at
        .into_iter()
        .map(|k| {
            acc += k;
            acc
        })
        .collect())
}

/// `ln |B(x, r_max)| / r_max`, a crude exponential growth-rate estimate.
/// No verdict on subexponentiality is implied.
pub fn log_growth_rate(profile: &[usize]) -> Option<f64> {
    let r = profile.len().checked_sub(1).filter(|&r| r > 0)?;
    Some((profile[r] as f64).ln() / r as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::cocycle_bound_ok;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn path(n: usize) -> FiniteGraph {
        FiniteGraph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn grid(rows: usize, cols: usize) -> FiniteGraph {
        let id = |r: usize, c: usize| r * cols + c;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if r + 1 < rows {
                    edges.push((id(r, c), id(r + 1, c)));
                }
                if c + 1 < cols {
                    edges.push((id(r, c), id(r, c + 1)));
                }
            }
        }
        FiniteGraph::from_edges(rows * cols, edges).unwrap()
    }

    #[test]
    fn five_path_center() {
        let ball = ball_measure(&path(5), 2, &q(1, 2)).unwrap();
        assert_eq!(ball.normalizer(), q(29, 9));
        assert_eq!(ball.weight(2), q(9, 29));
        assert_eq!(ball.weight(0), q(4, 29));
        assert_eq!(ball.raw_weight(1), q(2, 3));
        let mu = ball.to_vertex_measure().unwrap();
        assert!(mu.is_normalized());
        assert_eq!(mu.weight(2), q(9, 29));
    }

    #[test]
    fn isolated_vertex() {
        let ball = ball_measure(&FiniteGraph::empty(1), 0, &q(1, 1)).unwrap();
        assert_eq!(ball.normalizer(), q(1, 1));
        assert_eq!(ball.weight(0), q(1, 1));
    }

    #[test]
    fn disconnected_support() {
        let g = FiniteGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let ball = ball_measure(&g, 3, &q(1, 1)).unwrap();
        assert_eq!(ball.support(), vec![2, 3]);
        assert_eq!(ball.weight(0), q(0, 1));
        assert_eq!(ball.weight(2) + ball.weight(3), q(1, 1));
        assert!(matches!(ball.to_vertex_measure(), Err(Error::PartialSupport { support: 2, n: 4 })));
        let (sub, mu, map) = ball.restrict(&g).unwrap();
        assert_eq!(map, vec![2, 3]);
        assert_eq!(sub.edge_count(), 1);
        assert!(mu.is_normalized());
    }

    #[test]
    fn grid_ball_respects_bound() {
        let g = grid(50, 50);
        let eps = epsilon_for_degree(g.max_degree()).unwrap();
        assert_eq!(eps, q(1, 4));
        let ball = ball_measure(&g, 25 * 50 + 25, &eps).unwrap();
        let mu = ball.to_vertex_measure().unwrap();
        assert!(mu.is_normalized());
        assert!(cocycle_bound_ok(&g, &mu).is_ok());
        for (x, y) in g.edges() {
            let r = mu.weight(y) / mu.weight(x);
            assert!(r >= q(4, 5) && r <= q(5, 4));
        }
    }

    #[test]
    fn epsilon_edge_cases() {
        assert_eq!(epsilon_for_degree(1).unwrap(), q(1, 1));
        assert!(matches!(epsilon_for_degree(0), Err(Error::ZeroDegree)));
        assert!(ball_measure(&path(2), 0, &q(0, 1)).is_err());
        assert!(ball_measure(&path(2), 0, &q(-1, 2)).is_err());
    }

    #[test]
    fn growth_examples() {
        assert_eq!(growth_profile(&path(5), 2, 2).unwrap(), vec![1, 3, 5]);
        assert_eq!(growth_profile(&path(5), 2, 0).unwrap(), vec![1]);
        assert!(growth_profile(&path(5), 7, 2).is_err());
        let rate = log_growth_rate(&[1, 3, 5]).unwrap();
        assert!((rate - 5f64.ln() / 2.0).abs() < 1e-12);
        assert_eq!(log_growth_rate(&[1]), None);
    }
}
