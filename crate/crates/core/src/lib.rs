//! Divide-and-conquer QAOA for unweighted graph MaxCut.
//!
//! Large graphs are split along short path separators ([`partition`]), the
//! pieces are solved with a simulated QAOA circuit ([`qaoa`]), and the
//! sampled sub-solutions are merged back into parent distributions
//! ([`qsr`]) by the recursive driver in [`dc`].

pub mod baselines;
pub mod dc;
pub mod error;
pub mod graph;
pub mod partition;
pub mod qaoa;
pub mod qsr;
pub mod seed;
pub mod solution;

pub use dc::{dc_qaoa, DcConfig, DcRun};
pub use error::{Error, Result};
pub use graph::{Graph, Node};
pub use qsr::QsrScheme;
pub use solution::{Count, CutAssignment, RatioMode, SolutionMap};
