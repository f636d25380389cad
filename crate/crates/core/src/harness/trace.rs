//! Trace emission: one JSON object per round, plus a CSV summary for plots.
//!
//! Rationals are written exactly as `a/b` (or `a` for integers) in the JSON
//! lines; the CSV carries `f64` approximations of the same values.

use std::fmt::Write as _;
use std::io::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::dynamics::{RoundRecord, RunTrace};
use crate::error::Result;
use crate::graph::Vertex;

#[derive(Serialize)]
struct TraceLine<'a> {
    n: usize,
    class_index: usize,
    flipped: &'a [Vertex],
    flipped_mass: String,
    potential_before: String,
    potential_after: String,
}

impl<'a> From<&'a RoundRecord> for TraceLine<'a> {
    fn from(r: &'a RoundRecord) -> Self {
        TraceLine {
            n: r.round,
            class_index: r.class_index,
            flipped: &r.flipped,
            flipped_mass: r.flipped_mass.to_string(),
            potential_before: r.potential_before.to_string(),
            potential_after: r.potential_after.to_string(),
        }
    }
}

pub fn write_trace_jsonl<W: Write>(trace: &RunTrace, mut w: W) -> Result<()> {
    for record in &trace.rounds {
        serde_json::to_writer(&mut w, &TraceLine::from(record)).map_err(std::io::Error::from)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn trace_jsonl(trace: &RunTrace) -> String {
    let mut buf = Vec::new();
    write_trace_jsonl(trace, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Decimal approximation for plotting. Never used in a comparison.
pub fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn summary_csv(trace: &RunTrace) -> String {
    let mut out =
        String::from("n,class_index,flips,flipped_mass,potential_before,potential_after\n");
    for r in &trace.rounds {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.round,
            r.class_index,
            r.flipped.len(),
            approx(&r.flipped_mass),
            approx(&r.potential_before),
            approx(&r.potential_after)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{default_max_rounds, run};
    use crate::{Coloring, FiniteGraph, Schedule, VertexMeasure};

    #[test]
    fn four_cycle_trace() {
        let g = FiniteGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let s = Schedule::greedy(&g);
        let t = run(&g, &VertexMeasure::uniform(4), &s, &Coloring::zeros(4), default_max_rounds(&g, &s)).unwrap();
        let text = trace_jsonl(&t);
        let first = text.lines().next().unwrap();
        assert_eq!(
            first,
            r#"{"n":0,"class_index":0,"flipped":[0,2],"flipped_mass":"1/2","potential_before":"2","potential_after":"0"}"#
        );
        assert_eq!(text.lines().count(), t.rounds.len());
        let csv = summary_csv(&t);
        assert_eq!(csv.lines().nth(1).unwrap(), "0,0,2,0.5,2,0");
    }
}
