//! Local optima networks of NK landscapes.
//!
//! The pipeline: [`nk::NkInstance`] → [`basin::enumerate_basins`] (one
//! best-improvement hill climb per solution) → [`lon::build_lon`] (basin
//! transition probabilities) → [`mllon::build_mllon`] (layers joined by
//! mirror and basin-overlap edges) → [`mllon::flatten`] →
//! [`metrics::compute_report`].

pub mod artifact;
pub mod basin;
pub mod commands;
pub mod error;
pub mod graph;
pub mod lon;
pub mod metrics;
pub mod mllon;
pub mod neighborhood;
pub mod nk;

pub use basin::{enumerate_basins, enumerate_basins_with, hill_climb, BasinMap, EnumerateOptions, Provenance};
pub use error::{Error, Result};
pub use graph::{Digraph, GraphNode};
pub use lon::{build_lon, Lon};
pub use metrics::{compute_report, MetricsReport};
pub use mllon::{build_mllon, flatten, jaccard_overlap, Mllon, MllonConfig};
pub use neighborhood::{move_probability, neighbors, OperatorKind};
pub use nk::{NkInstance, Solution};
