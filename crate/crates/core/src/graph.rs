//! Weighted directed graph in compressed sparse row form, the common input
//! of every metric.

use crate::error::{Error, Result};
use crate::lon::Lon;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphNode {
    pub layer: u32,
    /// Identifier within the layer.
    pub id: u32,
    pub solution: Option<u64>,
    pub fitness: Option<f64>,
    pub basin_size: Option<u64>,
    pub is_global: bool,
}

impl GraphNode {
    /// A node without landscape attributes.
    pub fn bare(id: u32) -> Self {
        Self { layer: 0, id, solution: None, fitness: None, basin_size: None, is_global: false }
    }

    pub fn with_fitness(id: u32, fitness: f64) -> Self {
        Self { fitness: Some(fitness), ..Self::bare(id) }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Digraph {
    nodes: Vec<GraphNode>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
}

impl Digraph {
    /// Builds a graph from `(src, dst, weight)` triples. Self-loops and
    /// repeated pairs are rejected; weights must be finite and positive.
    pub fn new(nodes: Vec<GraphNode>, mut edges: Vec<(u32, u32, f64)>) -> Result<Self> {
        let nv = nodes.len();
        edges.sort_unstable_by_key(|&(s, d, _)| (s, d));
        for w in edges.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::InvalidArgument(format!("duplicate edge {} -> {}", w[0].0, w[0].1)));
            }
        }
        let mut offsets = vec![0usize; nv + 1];
        for &(s, d, w) in &edges {
            if s as usize >= nv || d as usize >= nv {
                return Err(Error::InvalidArgument(format!("edge {s} -> {d} references a missing node")));
            }
            if s == d {
                return Err(Error::InvalidArgument(format!("self-loop on node {s}")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeight { src: s as usize, dst: d as usize, weight: w });
            }
            offsets[s as usize + 1] += 1;
        }
        for i in 0..nv {
            offsets[i + 1] += offsets[i];
        }
        let (targets, weights) = edges.into_iter().map(|(_, d, w)| (d, w)).unzip();
        Ok(Self { nodes, offsets, targets, weights })
    }

    pub fn from_lon(lon: &Lon) -> Self {
        let nodes = lon
            .nodes
            .iter()
            .map(|n| GraphNode {
                layer: 0,
                id: n.id,
                solution: Some(n.solution),
                fitness: Some(n.fitness),
                basin_size: Some(n.basin_size),
                is_global: n.is_global,
            })
            .collect();
        let edges = lon.edges.iter().map(|e| (e.src, e.dst, e.weight)).collect();
        Self::new(nodes, edges).expect("LON edges are valid by construction")
    }

    pub fn nv(&self) -> usize {
        self.nodes.len()
    }

    pub fn ne(&self) -> usize {
        self.targets.len()
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &GraphNode {
        &self.nodes[i]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn out_targets(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn out_weights(&self, i: usize) -> &[f64] {
        &self.weights[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn out_edges(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.out_targets(i).iter().map(|&t| t as usize).zip(self.out_weights(i).iter().copied())
    }

    /// All edges as `(src, dst, weight)`, sorted by `(src, dst)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nv()).flat_map(move |i| self.out_edges(i).map(move |(j, w)| (i, j, w)))
    }

    /// Weight of `i -> j`, if present.
    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.out_targets(i).binary_search(&(j as u32)).ok().map(|pos| self.out_weights(i)[pos])
    }

    /// The same graph with every edge reversed.
    pub fn reversed(&self) -> Digraph {
        let edges = self.edges().map(|(i, j, w)| (j as u32, i as u32, w)).collect();
        Digraph::new(self.nodes.clone(), edges).expect("reversal preserves validity")
    }

    pub fn global_nodes(&self) -> Vec<usize> {
        (0..self.nv()).filter(|&i| self.nodes[i].is_global).collect()
    }
}
