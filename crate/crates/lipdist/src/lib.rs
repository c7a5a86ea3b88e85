//! Lipschitz distance between finite metric spaces.
//!
//! Two finite metric spaces are compared through bijections: the dilation of
//! a bijection is the largest factor by which it stretches a pair distance,
//! and its Lipschitz cost is `|ln dil(f)| + |ln dil(f⁻¹)|`. The Lipschitz
//! distance `d_L` is the minimum cost over all bijections — zero exactly for
//! isometric spaces, infinite when the cardinalities differ.
//!
//! The crate has four layers:
//!
//! * [`space`] — validated finite metric spaces, bijections, dilation, and
//!   Lipschitz cost;
//! * [`construct`] — two explicit families of spaces built from dyadic
//!   blocks (shrinking intervals on the line, pulse curves in the plane)
//!   together with their reference bi-Lipschitz maps;
//! * [`solver`] — an exact branch-and-bound minimizer for `d_L` with a
//!   factorial-enumeration oracle, a sound spectrum lower bound, a local
//!   search upper bound, and pairwise separation certificates;
//! * [`experiments`] — reproducible desk-scale studies of the families:
//!   bounded-diameter certificates, pairwise separation gaps, closed-form
//!   geometry fixtures, and the shrinking-slope projection table.
//!
//! File formats and table emission live in [`io`]; the `lipdist` binary is a
//! thin command-line front end. The `examples/` directory walks through each
//! capability; start with `metric_basics`.
//!
//! All logarithms are natural, all arithmetic is `f64`, and every search and
//! experiment is deterministic given its seeds.

pub mod construct;
pub mod error;
pub mod experiments;
pub mod io;
pub mod solver;
pub mod space;

pub use construct::{
    canonical_interval_map, interval_space, projection_map, pulse_height, pulse_space,
    DiscretizationParams, Family, SignVector,
};
pub use error::{Error, Result};
pub use experiments::{
    geometry_fixture_suite, interval_separation_experiment, pulse_separation_experiment,
    shrinking_slope_experiment, EnumerationMode, ExperimentConfig, FixtureReport,
    SeparationExperiment, SlopeSweep,
};
pub use solver::{
    certify_separation, exact_distance, local_search_upper_bound, naive_distance,
    spectrum_lower_bound, LipschitzResult, PairEntry, SearchBudget, SeparationReport, SolveStatus,
};
pub use space::{
    DistortionReport, FiniteMetricSpace, MetricViolation, PointMap, Provenance, ValidationReport,
};
