//! Landscape metrics over a weighted directed graph (a LON or a flattened
//! multi-layer LON).
//!
//! Conventions: hop distances for `l_mean`; `1 - w` edge lengths for the
//! distance to the global optima; squared disparity; correlations and means
//! that have no data are `None` rather than 0.

mod clouds;
mod clustering;
mod descriptive;
mod paths;
mod strength;

pub use clouds::{cumulative_distribution, local_point_clouds, LocalClouds, PointCloud};
pub use clustering::{local_weighted_clustering, random_clustering_baseline, weighted_clustering};
pub use descriptive::{descriptive_stats, pearson, Descriptive};
pub use paths::{distances_to, path_to_global_optima, shortest_path_stats, GlobalOptimaDistance, PathStats};
pub use strength::{node_strengths, strength_disparity_degree, NodeStrength, StrengthStats};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Digraph;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub nv: usize,
    pub ne: usize,
    pub knn: Option<f64>,
    pub fnn: Option<f64>,
    pub wcc_mean: f64,
    pub wcc_rand: Option<f64>,
    pub l_mean: Option<f64>,
    pub l_reachable_fraction: Option<f64>,
    pub st_mean: Option<f64>,
    pub y2_mean: Option<f64>,
    pub zout_mean: Option<f64>,
    pub l_go_mean: Option<f64>,
    pub l_go_reach_fraction: f64,
}

impl MetricsReport {
    pub const FIELDS: [&'static str; 13] = [
        "nv",
        "ne",
        "knn",
        "fnn",
        "wcc_mean",
        "wcc_rand",
        "l_mean",
        "l_reachable_fraction",
        "st_mean",
        "y2_mean",
        "zout_mean",
        "l_go_mean",
        "l_go_reach_fraction",
    ];

    /// Values in [`Self::FIELDS`] order; `None` marks an undefined value.
    pub fn values(&self) -> [Option<f64>; 13] {
        [
            Some(self.nv as f64),
            Some(self.ne as f64),
            self.knn,
            self.fnn,
            Some(self.wcc_mean),
            self.wcc_rand,
            self.l_mean,
            self.l_reachable_fraction,
            self.st_mean,
            self.y2_mean,
            self.zout_mean,
            self.l_go_mean,
            Some(self.l_go_reach_fraction),
        ]
    }
}

/// Selects which expensive metrics to compute.
#[derive(Clone, Copy, Debug)]
pub struct MetricsOptions {
    /// All-pairs hop distances; quadratic in the node count.
    pub path_lengths: bool,
}

impl Default for MetricsOptions {
    fn default() -> Self {
        Self { path_lengths: true }
    }
}

pub fn compute_report(g: &Digraph) -> Result<MetricsReport> {
    compute_report_with(g, &MetricsOptions::default())
}

pub fn compute_report_with(g: &Digraph, opts: &MetricsOptions) -> Result<MetricsReport> {
    let desc = descriptive_stats(g)?;
    let mean_degree = 2.0 * g.ne() as f64 / g.nv() as f64;
    let wcc_rand = (g.nv() >= 2).then(|| random_clustering_baseline(g.nv(), mean_degree)).transpose()?;
    let paths = opts.path_lengths.then(|| shortest_path_stats(g));
    let go = g.global_nodes();
    let to_go = if go.is_empty() {
        GlobalOptimaDistance { l_go_mean: None, reach_fraction: 0.0 }
    } else {
        path_to_global_optima(g, &go)?
    };
    let st = strength_disparity_degree(g);
    Ok(MetricsReport {
        nv: desc.nv,
        ne: desc.ne,
        knn: desc.knn,
        fnn: desc.fnn,
        wcc_mean: weighted_clustering(g),
        wcc_rand,
        l_mean: paths.and_then(|p| p.l_mean),
        l_reachable_fraction: paths.map(|p| p.reachable_fraction),
        st_mean: st.st_mean,
        y2_mean: st.y2_mean,
        zout_mean: st.zout_mean,
        l_go_mean: to_go.l_go_mean,
        l_go_reach_fraction: to_go.reach_fraction,
    })
}
