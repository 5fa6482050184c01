//! Barrat weighted clustering on the symmetrized graph.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Undirected view: `i ~ j` iff either direction exists, with weight
/// `(w_ij + w_ji) / 2` (a missing direction counts as 0).
pub(crate) struct Symmetrized {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
}

impl Symmetrized {
    pub(crate) fn new(g: &Digraph) -> Self {
        let nv = g.nv();
        let mut pairs: Vec<(u32, u32, f64)> = Vec::with_capacity(2 * g.ne());
        for (i, j, w) in g.edges() {
            pairs.push((i as u32, j as u32, w / 2.0));
            pairs.push((j as u32, i as u32, w / 2.0));
        }
        pairs.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then(a.2.total_cmp(&b.2)));
        let mut offsets = vec![0usize; nv + 1];
        let mut targets = Vec::with_capacity(pairs.len());
        let mut weights: Vec<f64> = Vec::with_capacity(pairs.len());
        let mut last: Option<(u32, u32)> = None;
        for (i, j, w) in pairs {
            if last == Some((i, j)) {
                *weights.last_mut().unwrap() += w;
            } else {
                offsets[i as usize + 1] += 1;
                targets.push(j);
                weights.push(w);
                last = Some((i, j));
            }
        }
        for i in 0..nv {
            offsets[i + 1] += offsets[i];
        }
        Self { offsets, targets, weights }
    }

    fn neighbors(&self, i: usize) -> (&[u32], &[f64]) {
        let r = self.offsets[i]..self.offsets[i + 1];
        (&self.targets[r.clone()], &self.weights[r])
    }
}

/// Per-node Barrat coefficient
/// `c_i = 1/(s_i (k_i - 1)) Σ_{j,h} (w_ij + w_ih)/2 · a_ij a_ih a_jh`,
/// with 0 for nodes of degree below 2.
pub fn local_weighted_clustering(g: &Digraph) -> Vec<f64> {
    let sym = Symmetrized::new(g);
    let nv = g.nv();
    (0..nv)
        .into_par_iter()
        .map_init(
            || vec![f64::NAN; nv],
            |mark, i| {
                let (nbrs, ws) = sym.neighbors(i);
                let k = nbrs.len();
                if k < 2 {
                    return 0.0;
                }
                for (&j, &w) in nbrs.iter().zip(ws) {
                    mark[j as usize] = w;
                }
                let strength: f64 = ws.iter().sum();
                // Each unordered closed pair {j, h} appears twice in the
                // ordered sum, so it contributes w_ij + w_ih once here.
                let mut closed = 0.0;
                for (&j, &w_ij) in nbrs.iter().zip(ws) {
                    let (second, _) = sym.neighbors(j as usize);
                    for &h in second {
                        if h > j && !mark[h as usize].is_nan() {
                            closed += w_ij + mark[h as usize];
                        }
                    }
                }
                for &j in nbrs {
                    mark[j as usize] = f64::NAN;
                }
                closed / (strength * (k - 1) as f64)
            },
        )
        .collect()
}

pub fn weighted_clustering(g: &Digraph) -> f64 {
    if g.nv() == 0 {
        return 0.0;
    }
    local_weighted_clustering(g).iter().sum::<f64>() / g.nv() as f64
}

/// Expected clustering of an Erdős–Rényi graph with `nv` nodes and the given
/// mean degree: `mean_degree / (nv - 1)`, clamped to `[0, 1]`.
pub fn random_clustering_baseline(nv: usize, mean_degree: f64) -> Result<f64> {
    if nv < 2 {
        return Err(Error::InvalidArgument(format!("random baseline needs nv >= 2, got {nv}")));
    }
    Ok((mean_degree / (nv - 1) as f64).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphNode;

    fn graph(nv: u32, edges: &[(u32, u32, f64)]) -> Digraph {
        Digraph::new((0..nv).map(GraphNode::bare).collect(), edges.to_vec()).unwrap()
    }

    fn both_ways(edges: &[(u32, u32, f64)]) -> Vec<(u32, u32, f64)> {
        edges.iter().flat_map(|&(a, b, w)| [(a, b, w), (b, a, w)]).collect()
    }

    #[test]
    fn triangle_is_one() {
        let g = graph(3, &both_ways(&[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]));
        assert_eq!(weighted_clustering(&g), 1.0);
    }

    #[test]
    fn path_is_zero() {
        let g = graph(3, &both_ways(&[(0, 1, 1.0), (1, 2, 1.0)]));
        assert_eq!(weighted_clustering(&g), 0.0);
    }

    #[test]
    fn triangle_with_pendant() {
        // Triangle 0-1-2 plus pendant 3 on node 0, symmetric weights.
        let g = graph(4, &both_ways(&[(0, 1, 0.5), (0, 2, 0.25), (1, 2, 1.0), (0, 3, 0.75)]));
        let c = local_weighted_clustering(&g);
        // Node 0: s = 1.5, k = 3, one closed pair {1,2}: (0.5 + 0.25) / (1.5 * 2).
        assert!((c[0] - 0.25).abs() < 1e-15);
        assert_eq!(c[1], 1.0);
        assert_eq!(c[2], 1.0);
        assert_eq!(c[3], 0.0);
        assert!((weighted_clustering(&g) - 2.25 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn one_directional_edges_are_symmetrized() {
        let g = graph(3, &[(0, 1, 0.4), (1, 2, 0.4), (2, 0, 0.4)]);
        assert!((weighted_clustering(&g) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_baseline() {
        assert_eq!(random_clustering_baseline(2, 1.0).unwrap(), 1.0);
        assert_eq!(random_clustering_baseline(11, 2.0).unwrap(), 0.2);
        assert_eq!(random_clustering_baseline(3, 9.0).unwrap(), 1.0);
        assert!(random_clustering_baseline(1, 0.0).is_err());
        let r = random_clustering_baseline(32, 2.0 * 370.0 / 32.0).unwrap();
        assert!((r - 0.75).abs() < 0.01);
    }
}
