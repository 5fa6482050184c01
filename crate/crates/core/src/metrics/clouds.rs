//! Raw point clouds for the local (per-node) views.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointCloud {
    pub x_label: &'static str,
    pub y_label: &'static str,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalClouds {
    /// `(c, P(st >= c))` over the distinct strength values `c`, ascending.
    pub cumulative_strength: PointCloud,
    /// `(st_i, |B_i|)` per node.
    pub strength_vs_basin: PointCloud,
    /// `(f_i, |B_i|)` per node.
    pub fitness_vs_basin: PointCloud,
}

pub fn cumulative_distribution(values: &[f64]) -> Vec<(f64, f64)> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut out = Vec::new();
    for (pos, &c) in sorted.iter().enumerate() {
        if pos == 0 || sorted[pos - 1] != c {
            out.push((c, (sorted.len() - pos) as f64 / n));
        }
    }
    out
}

pub fn local_point_clouds(g: &Digraph) -> Result<LocalClouds> {
    let strength: Vec<f64> = (0..g.nv()).map(|i| g.out_weights(i).iter().sum()).collect();
    let mut by_basin = Vec::with_capacity(g.nv());
    let mut by_fitness = Vec::with_capacity(g.nv());
    for (i, node) in g.nodes().iter().enumerate() {
        let (Some(basin), Some(fitness)) = (node.basin_size, node.fitness) else {
            return Err(Error::InvalidArgument(format!("node {i} lacks fitness or basin size")));
        };
        by_basin.push((strength[i], basin as f64));
        by_fitness.push((fitness, basin as f64));
    }
    Ok(LocalClouds {
        cumulative_strength: PointCloud {
            x_label: "strength",
            y_label: "cumulative_probability",
            points: cumulative_distribution(&strength),
        },
        strength_vs_basin: PointCloud { x_label: "strength", y_label: "basin_size", points: by_basin },
        fitness_vs_basin: PointCloud { x_label: "fitness", y_label: "basin_size", points: by_fitness },
    })
}
