//! Benchmark harness and command-line front end for `dcqaoa`: single
//! solves with JSON reports, parameter sweeps and baseline comparisons as
//! CSV, and the default random-graph suite.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

pub mod cli;
pub mod compare;
pub mod report;
pub mod suite;
pub mod sweep;

/// Whether runtimes are measured or reported as zero. Suppressing them
/// makes repeated runs byte-identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Timing {
    Measured,
    Suppressed,
}

impl Timing {
    pub fn seconds(self, since: Instant) -> f64 {
        match self {
            Timing::Measured => since.elapsed().as_secs_f64(),
            Timing::Suppressed => 0.0,
        }
    }
}

pub fn write_csv<W: Write, R: Serialize>(out: W, rows: &[R]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
