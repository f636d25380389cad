//! Experiment configuration, execution and the summary report.

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::generate::{generate, GeneratorSpec};
use super::trace::approx;
use crate::ball::{ball_measure, epsilon_for_degree};
use crate::coloring::Coloring;
use crate::dynamics::{
    cost, default_max_rounds, is_unfriendly, monochromatic_edges, run_with, verify_flip_counts,
    verify_telescoping, verify_trace_claims, ClaimVariant, RunOptions, RunStatus, RunTrace,
};
use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Vertex};
use crate::measure::{cocycle_bound_ok, is_invariant, VertexMeasure};
use crate::oracle;
use crate::schedule::{Schedule, ScheduleMode};

#[derive(Clone, Debug)]
pub enum GraphSource {
    File(PathBuf),
    Generated(GeneratorSpec),
    Given(FiniteGraph),
}

#[derive(Clone, Debug)]
pub enum MeasureSource {
    Uniform,
    File(PathBuf),
    /// Ball measure at `center`; `epsilon` defaults to `1/d`.
    Ball {
        center: Vertex,
        epsilon: Option<BigRational>,
    },
    Given(VertexMeasure),
}

#[derive(Clone, Debug)]
pub enum Permutation {
    Identity,
    Reverse,
    Seeded(u64),
    Explicit(Vec<Vertex>),
}

#[derive(Clone, Debug)]
pub enum ScheduleKind {
    Greedy,
    Singleton(Permutation),
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub enum InitialColoring {
    Zeros,
    File(PathBuf),
    Given(Coloring),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyToggles {
    pub claims: bool,
    pub telescope: bool,
    pub unfriendly: bool,
    pub oracle: bool,
}

impl VerifyToggles {
    pub fn all() -> Self {
        VerifyToggles {
            claims: true,
            telescope: true,
            unfriendly: true,
            oracle: true,
        }
    }

    /// Comma-separated subset of `claims,telescope,unfriendly,oracle`; `all`
    /// and `none` are accepted too.
    pub fn parse(s: &str) -> Result<Self> {
        let mut t = VerifyToggles::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            match item {
                "claims" => t.claims = true,
                "telescope" => t.telescope = true,
                "unfriendly" => t.unfriendly = true,
                "oracle" => t.oracle = true,
                "all" => t = VerifyToggles::all(),
                "none" => t = VerifyToggles::default(),
                other => return Err(Error::Config(format!("unknown verifier `{other}`"))),
            }
        }
        Ok(t)
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    pub measure: MeasureSource,
    pub schedule: ScheduleKind,
    pub c0: InitialColoring,
    pub max_rounds: Option<usize>,
    pub verify: VerifyToggles,
    pub parallel: bool,
}

impl ExperimentConfig {
    pub fn new(graph: GraphSource) -> Self {
        ExperimentConfig {
            graph,
            measure: MeasureSource::Uniform,
            schedule: ScheduleKind::Greedy,
            c0: InitialColoring::Zeros,
            max_rounds: None,
            verify: VerifyToggles::default(),
            parallel: false,
        }
    }

    /// Loads files, builds the measure and schedule, and validates the
    /// combination.
    pub fn resolve(&self) -> Result<Experiment> {
        let graph = match &self.graph {
            GraphSource::File(p) => FiniteGraph::read_text(BufReader::new(File::open(p)?))?,
            GraphSource::Generated(spec) => generate(spec)?,
            GraphSource::Given(g) => g.clone(),
        };
        let n = graph.vertex_count();
        let measure = match &self.measure {
            MeasureSource::Uniform => VertexMeasure::uniform(n),
            MeasureSource::File(p) => VertexMeasure::read_text(BufReader::new(File::open(p)?))?,
            MeasureSource::Ball { center, epsilon } => {
                let eps = match epsilon {
                    Some(e) => e.clone(),
                    None => epsilon_for_degree(graph.max_degree())?,
                };
                ball_measure(&graph, *center, &eps)?.to_vertex_measure()?
            }
            MeasureSource::Given(mu) => mu.clone(),
        };
        measure.check_len(n)?;
        let schedule = match &self.schedule {
            ScheduleKind::Greedy => Schedule::greedy(&graph),
            ScheduleKind::Singleton(perm) => {
                let order: Vec<Vertex> = match perm {
                    Permutation::Identity => (0..n).collect(),
                    Permutation::Reverse => (0..n).rev().collect(),
                    Permutation::Seeded(seed) => {
                        let mut order: Vec<Vertex> = (0..n).collect();
                        order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
                        order
                    }
                    Permutation::Explicit(v) => v.clone(),
                };
                Schedule::singleton(&graph, &order)?
            }
            ScheduleKind::File(p) => Schedule::parse_text(&graph, &std::fs::read_to_string(p)?)?,
        };
        let c0 = match &self.c0 {
            InitialColoring::Zeros => Coloring::zeros(n),
            InitialColoring::File(p) => Coloring::read_text(BufReader::new(File::open(p)?))?,
            InitialColoring::Given(c) => c.clone(),
        };
        if c0.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: c0.len(),
            });
        }
        if self.verify.oracle && n > oracle::MAX_VERTICES {
            return Err(Error::Config(format!(
                "oracle cross-check needs at most {} vertices, graph has {n}",
                oracle::MAX_VERTICES
            )));
        }
        let max_rounds = match (self.max_rounds, schedule.mode()) {
            (Some(m), _) => m,
            (None, ScheduleMode::Cyclic) => default_max_rounds(&graph, &schedule),
            (None, ScheduleMode::FrozenBoundary) => {
                return Err(Error::Config(
                    "frozen-boundary schedules need an explicit round budget".into(),
                ))
            }
        };
        Ok(Experiment {
            graph,
            measure,
            schedule,
            c0,
            max_rounds,
            verify: self.verify,
            parallel: self.parallel,
        })
    }
}

/// A fully materialized experiment.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub graph: FiniteGraph,
    pub measure: VertexMeasure,
    pub schedule: Schedule,
    pub c0: Coloring,
    pub max_rounds: usize,
    pub verify: VerifyToggles,
    pub parallel: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Summary {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub schedule_mode: ScheduleMode,
    pub period: usize,
    pub status: RunStatus,
    pub converged: bool,
    pub rounds: usize,
    pub total_flips: usize,
    pub flipped_mass_sum: String,
    pub flipped_mass_sum_approx: f64,
    pub cost: String,
    pub initial_potential: String,
    pub final_potential: String,
    pub final_monochromatic_edges: usize,
    pub claim_variant: Option<ClaimVariant>,
    /// Unfriendliness of the final coloring, recomputed from scratch whenever
    /// the run converged.
    pub final_unfriendly: Option<bool>,
    pub checks: Vec<CheckOutcome>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub summary: Summary,
    pub trace: RunTrace,
}

/// Which claim family the measure supports, if any.
pub fn claim_variant_for(g: &FiniteGraph, mu: &VertexMeasure) -> Option<ClaimVariant> {
    if is_invariant(g, mu).is_ok() {
        Some(ClaimVariant::Invariant)
    } else if cocycle_bound_ok(g, mu).is_ok() {
        Some(ClaimVariant::Quasi)
    } else {
        None
    }
}

/// Runs the dynamics and every enabled verifier. The first failing check
/// aborts with an [`Error::Verification`] naming the round and exact values.
pub fn run_experiment(exp: &Experiment) -> Result<Report> {
    let g = &exp.graph;
    let mu = &exp.measure;
    let trace = run_with(
        g,
        mu,
        &exp.schedule,
        &exp.c0,
        &RunOptions {
            max_rounds: exp.max_rounds,
            parallel: exp.parallel,
        },
    )?;
    let variant = claim_variant_for(g, mu);
    let mut checks = Vec::new();

    if exp.verify.claims || exp.verify.telescope {
        let variant = match variant {
            Some(v) => v,
            // Surfaces the offending edge.
            None => return Err(cocycle_bound_ok(g, mu).expect_err("no variant applies")),
        };
        if exp.verify.claims {
            if let Some(n) = verify_trace_claims(g, mu, &trace, variant)? {
                let r = &trace.rounds[n];
                return Err(Error::Verification(format!(
                    "{variant:?} round claim failed at round {n}: M before {} - M after {} = {} < {} x mu(B_n) = {}",
                    r.potential_before,
                    r.potential_after,
                    r.potential_drop(),
                    if variant == ClaimVariant::Invariant { 2 } else { 1 },
                    r.flipped_mass
                )));
            }
            if let Some(x) = verify_flip_counts(&trace, mu) {
                return Err(Error::Verification(format!(
                    "vertex {x} flipped {} times, more than M(G_0)/mu(x) = {}",
                    trace.flip_counts(g.vertex_count())[x],
                    trace.initial_potential() / mu.weight(x)
                )));
            }
            checks.push(CheckOutcome {
                name: "claims",
                passed: true,
                detail: format!("{} rounds, {variant:?} drop inequality exact", trace.rounds.len()),
            });
        }
        if exp.verify.telescope {
            let bound = match variant {
                ClaimVariant::Invariant => cost(g, mu),
                ClaimVariant::Quasi => trace.initial_potential(),
            };
            if !verify_telescoping(&trace, g, mu, variant)? {
                return Err(Error::Verification(format!(
                    "telescoping failed: sum mu(B_n) = {} > {bound}",
                    trace.flipped_mass_sum()
                )));
            }
            checks.push(CheckOutcome {
                name: "telescope",
                passed: true,
                detail: format!("sum mu(B_n) = {} <= {bound}", trace.flipped_mass_sum()),
            });
        }
    }

    let final_unfriendly = trace
        .converged()
        .then(|| is_unfriendly(g, &trace.final_coloring));
    if exp.verify.unfriendly {
        match &final_unfriendly {
            Some(check) if !check.holds() => {
                return Err(Error::Verification(format!(
                    "converged coloring is not unfriendly; violators {:?}",
                    check.violators
                )))
            }
            Some(_) => checks.push(CheckOutcome {
                name: "unfriendly",
                passed: true,
                detail: "no violators".into(),
            }),
            None => checks.push(CheckOutcome {
                name: "unfriendly",
                passed: false,
                detail: "skipped: run did not converge within its budget".into(),
            }),
        }
    }

    let final_mono = monochromatic_edges(g, &trace.final_coloring);
    if exp.verify.oracle {
        let table = oracle::enumerate(g)?;
        let (_, min_mono) = oracle::min_monochrome_coloring(g)?;
        if !table.all_agree() {
            return Err(Error::Verification(format!(
                "oracle flags disagree on coloring mask {:?}",
                table.first_disagreement()
            )));
        }
        if trace.converged() {
            let mask = trace.final_coloring.to_mask();
            if table.flags(mask) & oracle::UNFRIENDLY == 0 {
                return Err(Error::Verification(format!(
                    "final coloring {mask:#b} missing from the oracle's unfriendly set"
                )));
            }
        }
        if final_mono < min_mono {
            return Err(Error::Verification(format!(
                "final monochromatic edge count {final_mono} below oracle minimum {min_mono}"
            )));
        }
        checks.push(CheckOutcome {
            name: "oracle",
            passed: true,
            detail: format!(
                "{} unfriendly colorings of {}, minimum monochromatic edges {min_mono}",
                table.count(oracle::UNFRIENDLY),
                1u64 << g.vertex_count()
            ),
        });
    }

    let sum = trace.flipped_mass_sum();
    let summary = Summary {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        max_degree: g.max_degree(),
        schedule_mode: exp.schedule.mode(),
        period: exp.schedule.period(),
        status: trace.status,
        converged: trace.converged(),
        rounds: trace.rounds.len(),
        total_flips: trace.total_flips,
        flipped_mass_sum_approx: approx(&sum),
        flipped_mass_sum: sum.to_string(),
        cost: cost(g, mu).to_string(),
        initial_potential: trace.initial_potential().to_string(),
        final_potential: trace.final_potential().to_string(),
        final_monochromatic_edges: final_mono,
        claim_variant: variant,
        final_unfriendly: final_unfriendly.map(|c| c.holds()),
        checks,
        violations: Vec::new(),
    };
    Ok(Report { summary, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::Family;

    fn gen(family: &str) -> GraphSource {
        GraphSource::Generated(GeneratorSpec::new(family.parse().unwrap(), 0))
    }

    #[test]
    fn torus_uniform_greedy() {
        let mut cfg = ExperimentConfig::new(gen("torus:32:32"));
        cfg.verify = VerifyToggles::parse("claims,telescope,unfriendly").unwrap();
        let report = run_experiment(&cfg.resolve().unwrap()).unwrap();
        let s = &report.summary;
        assert!(s.converged);
        assert!(s.total_flips <= 2048);
        assert_eq!(s.final_unfriendly, Some(true));
        assert_eq!(s.claim_variant, Some(ClaimVariant::Invariant));
        assert_eq!(s.checks.len(), 3);
    }

    #[test]
    fn grid_ball_quasi() {
        let mut cfg = ExperimentConfig::new(gen("grid:20:20"));
        cfg.measure = MeasureSource::Ball {
            center: 10 * 20 + 10,
            epsilon: None,
        };
        cfg.verify = VerifyToggles::parse("claims,telescope,unfriendly").unwrap();
        let report = run_experiment(&cfg.resolve().unwrap()).unwrap();
        assert_eq!(report.summary.claim_variant, Some(ClaimVariant::Quasi));
        assert!(report.summary.converged);
    }

    #[test]
    fn already_unfriendly_start() {
        let g = generate(&GeneratorSpec::new(Family::Cycle { n: 6 }, 0)).unwrap();
        let mut cfg = ExperimentConfig::new(GraphSource::Given(g));
        cfg.c0 = InitialColoring::Given(Coloring::new(vec![0, 1, 0, 1, 0, 1]).unwrap());
        cfg.verify = VerifyToggles::all();
        let exp = cfg.resolve().unwrap();
        let report = run_experiment(&exp).unwrap();
        assert_eq!(report.summary.total_flips, 0);
        assert_eq!(report.summary.rounds, exp.schedule.period());
    }

    #[test]
    fn unbounded_measure_fails_claims() {
        let g = generate(&GeneratorSpec::new(Family::Path { n: 2 }, 0)).unwrap();
        let mu = VertexMeasure::from_numerators(vec![1.into(), 9.into()], 10.into()).unwrap();
        let mut cfg = ExperimentConfig::new(GraphSource::Given(g));
        cfg.measure = MeasureSource::Given(mu);
        cfg.verify = VerifyToggles::parse("claims").unwrap();
        let err = run_experiment(&cfg.resolve().unwrap()).unwrap_err();
        assert!(err.is_verification_failure());
    }

    #[test]
    fn config_errors() {
        let mut cfg = ExperimentConfig::new(gen("grid:5:5"));
        cfg.verify.oracle = true;
        assert!(matches!(cfg.resolve(), Err(Error::Config(_))));
        assert!(VerifyToggles::parse("claims,bogus").is_err());
        assert_eq!(VerifyToggles::parse("all").unwrap(), VerifyToggles::all());
        let mut cfg = ExperimentConfig::new(gen("path:3"));
        cfg.schedule = ScheduleKind::Singleton(Permutation::Explicit(vec![0, 0, 1]));
        assert!(cfg.resolve().is_err());
    }

    #[test]
    fn seeded_singleton_is_a_permutation() {
        let mut cfg = ExperimentConfig::new(gen("cycle:9"));
        cfg.schedule = ScheduleKind::Singleton(Permutation::Seeded(4));
        let exp = cfg.resolve().unwrap();
        let mut seen: Vec<_> = exp.schedule.classes().iter().map(|c| c[0]).collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..9).collect::<Vec<_>>());
    }
}
