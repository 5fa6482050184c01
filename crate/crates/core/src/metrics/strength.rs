//! Out-strength, disparity and out-degree.

use crate::graph::Digraph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeStrength {
    pub strength: f64,
    /// `Σ_j (w_ij / st_i)^2`; `None` for nodes without out-edges.
    pub disparity: Option<f64>,
    pub out_degree: usize,
}

pub fn node_strengths(g: &Digraph) -> Vec<NodeStrength> {
    (0..g.nv())
        .map(|i| {
            let ws = g.out_weights(i);
            let strength: f64 = ws.iter().sum();
            let disparity = (!ws.is_empty()).then(|| ws.iter().map(|w| (w / strength).powi(2)).sum());
            NodeStrength { strength, disparity, out_degree: ws.len() }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrengthStats {
    pub st_mean: Option<f64>,
    pub y2_mean: Option<f64>,
    pub zout_mean: Option<f64>,
}

/// Means over nodes with at least one out-edge.
pub fn strength_disparity_degree(g: &Digraph) -> StrengthStats {
    let nodes: Vec<NodeStrength> = node_strengths(g).into_iter().filter(|n| n.out_degree > 0).collect();
    if nodes.is_empty() {
        return StrengthStats { st_mean: None, y2_mean: None, zout_mean: None };
    }
    let count = nodes.len() as f64;
    StrengthStats {
        st_mean: Some(nodes.iter().map(|n| n.strength).sum::<f64>() / count),
        y2_mean: Some(nodes.iter().filter_map(|n| n.disparity).sum::<f64>() / count),
        zout_mean: Some(nodes.iter().map(|n| n.out_degree as f64).sum::<f64>() / count),
    }
}
