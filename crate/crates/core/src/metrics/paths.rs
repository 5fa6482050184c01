//! Hop-count path lengths and weighted distances to the global optima.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Digraph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathStats {
    /// Mean hop distance over ordered reachable pairs `i != j`.
    pub l_mean: Option<f64>,
    /// Reachable ordered pairs over `nv (nv - 1)`.
    pub reachable_fraction: f64,
}

/// BFS from up to 64 sources at once, one bit per source. Returns the sum of
/// hop distances and the number of reached `(source, target)` pairs.
fn bfs_batch(g: &Digraph, sources: std::ops::Range<usize>) -> (u64, u64) {
    let nv = g.nv();
    let mut visited = vec![0u64; nv];
    let mut frontier = vec![0u64; nv];
    let mut next = vec![0u64; nv];
    let mut active = Vec::new();
    let mut touched = Vec::new();
    for (bit, s) in sources.enumerate() {
        visited[s] |= 1 << bit;
        frontier[s] |= 1 << bit;
        active.push(s);
    }
    let (mut total, mut pairs) = (0u64, 0u64);
    let mut level = 0u64;
    while !active.is_empty() {
        level += 1;
        for &u in &active {
            let bits = frontier[u];
            for &v in g.out_targets(u) {
                let v = v as usize;
                if next[v] == 0 {
                    touched.push(v);
                }
                next[v] |= bits;
            }
            frontier[u] = 0;
        }
        active.clear();
        for &v in &touched {
            let fresh = next[v] & !visited[v];
            next[v] = 0;
            if fresh != 0 {
                visited[v] |= fresh;
                frontier[v] = fresh;
                let count = u64::from(fresh.count_ones());
                total += level * count;
                pairs += count;
                active.push(v);
            }
        }
        touched.clear();
    }
    (total, pairs)
}

pub fn shortest_path_stats(g: &Digraph) -> PathStats {
    let nv = g.nv();
    if nv < 2 {
        return PathStats { l_mean: None, reachable_fraction: 0.0 };
    }
    let batches: Vec<_> = (0..nv).step_by(64).map(|s| s..(s + 64).min(nv)).collect();
    let (total, pairs) =
        batches.into_par_iter().map(|r| bfs_batch(g, r)).reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    PathStats {
        l_mean: (pairs > 0).then(|| total as f64 / pairs as f64),
        reachable_fraction: pairs as f64 / (nv as f64 * (nv - 1) as f64),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GlobalOptimaDistance {
    /// Mean distance to the nearest global optimum over nodes that reach one.
    pub l_go_mean: Option<f64>,
    pub reach_fraction: f64,
}

#[derive(Clone, Copy, PartialEq)]
struct Queued {
    dist: f64,
    node: usize,
}

impl Eq for Queued {}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Distance from every node to its nearest node in `targets`, using edge
/// length `1 - w`. `None` where no target is reachable.
pub fn distances_to(g: &Digraph, targets: &[usize]) -> Result<Vec<Option<f64>>> {
    if targets.is_empty() {
        return Err(Error::InvalidArgument("no global optimum nodes given".into()));
    }
    for (i, j, w) in g.edges() {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::InvalidWeight { src: i, dst: j, weight: w });
        }
    }
    let rev = g.reversed();
    let mut dist: Vec<Option<f64>> = vec![None; g.nv()];
    let mut heap = BinaryHeap::new();
    for &t in targets {
        if t >= g.nv() {
            return Err(Error::InvalidArgument(format!("target node {t} out of range")));
        }
        dist[t] = Some(0.0);
        heap.push(Queued { dist: 0.0, node: t });
    }
    while let Some(Queued { dist: d, node: u }) = heap.pop() {
        if dist[u].is_some_and(|best| d > best) {
            continue;
        }
        // `rev` holds v -> u for every original edge u <- v.
        for (v, w) in rev.out_edges(u) {
            let candidate = d + (1.0 - w);
            if dist[v].is_none_or(|best| candidate < best) {
                dist[v] = Some(candidate);
                heap.push(Queued { dist: candidate, node: v });
            }
        }
    }
    Ok(dist)
}

pub fn path_to_global_optima(g: &Digraph, go_nodes: &[usize]) -> Result<GlobalOptimaDistance> {
    let dist = distances_to(g, go_nodes)?;
    let reached: Vec<f64> = dist.into_iter().flatten().collect();
    Ok(GlobalOptimaDistance {
        l_go_mean: (!reached.is_empty()).then(|| reached.iter().sum::<f64>() / reached.len() as f64),
        reach_fraction: reached.len() as f64 / g.nv() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphNode;

    fn graph(nv: u32, edges: &[(u32, u32, f64)]) -> Digraph {
        Digraph::new((0..nv).map(GraphNode::bare).collect(), edges.to_vec()).unwrap()
    }

    #[test]
    fn complete_digraph() {
        let n = 70u32;
        let edges: Vec<_> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j, 0.5))).collect();
        let s = shortest_path_stats(&graph(n, &edges));
        assert_eq!(s.l_mean, Some(1.0));
        assert_eq!(s.reachable_fraction, 1.0);
    }

    #[test]
    fn disconnected_pair() {
        let s = shortest_path_stats(&graph(2, &[]));
        assert_eq!(s.l_mean, None);
        assert_eq!(s.reachable_fraction, 0.0);
    }

    #[test]
    fn four_cycle() {
        let s = shortest_path_stats(&graph(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]));
        assert_eq!(s.l_mean, Some(2.0));
        assert_eq!(s.reachable_fraction, 1.0);
    }

    #[test]
    fn long_cycle_across_batches() {
        let n = 150u32;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
        let s = shortest_path_stats(&graph(n, &edges));
        // Mean of 1..n-1.
        assert_eq!(s.l_mean, Some(n as f64 / 2.0));
    }

    #[test]
    fn hand_dijkstra() {
        // A=0, B=1, GO=2.
        let g = graph(3, &[(0, 1, 0.25), (1, 2, 0.5), (0, 2, 0.1)]);
        let d = distances_to(&g, &[2]).unwrap();
        assert_eq!(d[2], Some(0.0));
        assert_eq!(d[1], Some(0.5));
        assert!((d[0].unwrap() - 0.9).abs() < 1e-15);
        let r = path_to_global_optima(&g, &[2]).unwrap();
        assert_eq!(r.reach_fraction, 1.0);
        assert!((r.l_go_mean.unwrap() - 1.4 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn unit_weight_chain_is_free() {
        let g = graph(2, &[(0, 1, 1.0)]);
        assert_eq!(distances_to(&g, &[1]).unwrap(), vec![Some(0.0), Some(0.0)]);
    }

    #[test]
    fn unreachable_nodes_are_excluded() {
        let g = graph(3, &[(0, 1, 0.5)]);
        let r = path_to_global_optima(&g, &[1]).unwrap();
        assert_eq!(r.l_go_mean, Some(0.25));
        assert!((r.reach_fraction - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_heavy_edges_and_empty_targets() {
        let g = graph(2, &[(0, 1, 1.5)]);
        assert!(matches!(distances_to(&g, &[1]), Err(Error::InvalidWeight { .. })));
        let g = graph(2, &[(0, 1, 0.5)]);
        assert!(distances_to(&g, &[]).is_err());
    }
}
