//! Generators, experiment drivers and report emission.

pub mod boundary;
pub mod experiment;
pub mod generate;
pub mod trace;

pub use boundary::{boundary_experiment, BoundaryReport};
pub use experiment::{run_experiment, ExperimentConfig, Report, Summary, VerifyToggles};
pub use generate::{generate, Family, GeneratorSpec};
pub use trace::{summary_csv, trace_jsonl, write_trace_jsonl};

/// `r,ball_size` rows.
pub fn growth_csv(profile: &[usize]) -> String {
    let mut out = String::from("r,ball_size\n");
    for (r, size) in profile.iter().enumerate() {
        out.push_str(&format!("{r},{size}\n"));
    }
    out
}
