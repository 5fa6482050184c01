//! Multi-layer local optima networks.
//!
//! One layer per operator. Transition weights between supra-nodes
//! `(layer, optimum)`:
//!
//! | pair                          | weight                     |
//! |-------------------------------|----------------------------|
//! | same layer, same optimum      | `p_sl` (node data only)    |
//! | same layer, other optimum     | the layer's LON weight     |
//! | other layer, same optimum     | `p_co_mirror`              |
//! | other layer, other optimum    | `p_co_diff · Jaccard(B_i, B_j)` |
//!
//! Inter-layer edges are added on top of the layer weights without
//! renormalizing them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basin::{BasinMap, Provenance};
use crate::error::{Error, Result};
use crate::graph::{Digraph, GraphNode};
use crate::lon::Lon;
use crate::neighborhood::OperatorKind;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MllonConfig {
    pub p_sl: f64,
    pub p_co_mirror: f64,
    pub p_co_diff: f64,
}

impl Default for MllonConfig {
    fn default() -> Self {
        Self { p_sl: 0.0, p_co_mirror: 1.0, p_co_diff: 0.0 }
    }
}

impl MllonConfig {
    pub fn validate(&self) -> Result<()> {
        let unit = 0.0..=1.0;
        if !unit.contains(&self.p_sl) {
            return Err(Error::InvalidParameter(format!("p_sl = {} outside [0, 1]", self.p_sl)));
        }
        if !(self.p_co_mirror > 0.0 && self.p_co_mirror <= 1.0) {
            return Err(Error::InvalidParameter(format!("p_co_mirror = {} outside (0, 1]", self.p_co_mirror)));
        }
        if !unit.contains(&self.p_co_diff) {
            return Err(Error::InvalidParameter(format!("p_co_diff = {} outside [0, 1]", self.p_co_diff)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupraNode {
    pub layer: u32,
    pub id: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Intra,
    Mirror,
    Overlap,
}

impl EdgeKind {
    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::Intra => "intra",
            EdgeKind::Mirror => "mirror",
            EdgeKind::Overlap => "overlap",
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EdgeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "intra" => Ok(EdgeKind::Intra),
            "mirror" => Ok(EdgeKind::Mirror),
            "overlap" => Ok(EdgeKind::Overlap),
            other => Err(Error::InvalidArgument(format!("unknown edge kind `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupraEdge {
    pub src: SupraNode,
    pub dst: SupraNode,
    pub weight: f64,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mllon {
    pub provenance: Provenance,
    pub config: MllonConfig,
    /// Layer `L` is `layers[L]`.
    pub layers: Vec<Lon>,
    pub mirror_edges: Vec<SupraEdge>,
    pub overlap_edges: Vec<SupraEdge>,
}

impl Mllon {
    /// A one-layer network; flattening it gives back the layer itself.
    pub fn from_layer(lon: Lon, config: MllonConfig) -> Self {
        Self {
            provenance: lon.provenance,
            config,
            layers: vec![lon],
            mirror_edges: Vec::new(),
            overlap_edges: Vec::new(),
        }
    }

    /// Supra-nodes in layer-major, then identifier order.
    pub fn supra_nodes(&self) -> impl Iterator<Item = SupraNode> + '_ {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(l, lon)| (0..lon.nv() as u32).map(move |id| SupraNode { layer: l as u32, id }))
    }

    pub fn num_supra_nodes(&self) -> usize {
        self.layers.iter().map(Lon::nv).sum()
    }

    /// Position of a supra-node in the flattened graph.
    pub fn flat_index(&self, node: SupraNode) -> usize {
        self.layers[..node.layer as usize].iter().map(Lon::nv).sum::<usize>() + node.id as usize
    }

    /// Every edge of the network: intra-layer edges layer by layer, then
    /// mirror edges, then overlap edges.
    pub fn supra_edges(&self) -> impl Iterator<Item = SupraEdge> + '_ {
        let intra = self.layers.iter().enumerate().flat_map(|(l, lon)| {
            let layer = l as u32;
            lon.edges.iter().map(move |e| SupraEdge {
                src: SupraNode { layer, id: e.src },
                dst: SupraNode { layer, id: e.dst },
                weight: e.weight,
                kind: EdgeKind::Intra,
            })
        });
        intra.chain(self.mirror_edges.iter().copied()).chain(self.overlap_edges.iter().copied())
    }

    pub fn num_supra_edges(&self) -> usize {
        self.layers.iter().map(Lon::ne).sum::<usize>() + self.mirror_edges.len() + self.overlap_edges.len()
    }
}

/// `|B_i ∩ B_j| / |B_i ∪ B_j|` for basin `i` of `a` and basin `j` of `b`.
pub fn jaccard_overlap(a: &BasinMap, i: u32, b: &BasinMap, j: u32) -> Result<f64> {
    if a.n() != b.n() || a.assignment.len() != b.assignment.len() {
        return Err(Error::InvalidArgument(format!("basin maps cover different spaces (n = {} vs {})", a.n(), b.n())));
    }
    if i as usize >= a.num_optima() || j as usize >= b.num_optima() {
        return Err(Error::InvalidArgument(format!("basin identifier out of range ({i}, {j})")));
    }
    let (mut inter, mut union) = (0u64, 0u64);
    for (&x, &y) in a.assignment.iter().zip(&b.assignment) {
        let (in_a, in_b) = (x == i, y == j);
        inter += u64::from(in_a && in_b);
        union += u64::from(in_a || in_b);
    }
    Ok(if union == 0 { 0.0 } else { inter as f64 / union as f64 })
}

/// Assembles the multi-layer network from per-operator layers, each given
/// with the basin map it was built from.
pub fn build_mllon(layers: &[(OperatorKind, &BasinMap, &Lon)], cfg: MllonConfig) -> Result<Mllon> {
    cfg.validate()?;
    if layers.len() < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 layers, got {}", layers.len())));
    }
    let provenance = layers[0].1.provenance;
    for (idx, &(op, bm, lon)) in layers.iter().enumerate() {
        if bm.operator != op || lon.operator != op {
            return Err(Error::InvalidArgument(format!("layer {idx} mixes operators")));
        }
        if bm.provenance != provenance || lon.provenance != provenance {
            return Err(Error::InvalidArgument(format!("layer {idx} comes from a different instance")));
        }
        if lon.nv() != bm.num_optima() {
            return Err(Error::InvalidArgument(format!("layer {idx}: LON and basin map disagree")));
        }
        if layers[..idx].iter().any(|&(other, _, _)| other == op) {
            return Err(Error::InvalidArgument(format!("operator {op} appears twice")));
        }
    }

    let mut mirror_edges = Vec::new();
    let mut overlap_edges = Vec::new();
    for a in 0..layers.len() {
        for b in a + 1..layers.len() {
            let (la, lb) = (a as u32, b as u32);
            let (bm_a, bm_b) = (layers[a].1, layers[b].1);

            // Optima are sorted by encoding in both layers.
            for (i, o) in bm_a.optima.iter().enumerate() {
                if let Ok(j) = bm_b.optima.binary_search_by_key(&o.solution, |p| p.solution) {
                    push_pair(&mut mirror_edges, la, i as u32, lb, j as u32, cfg.p_co_mirror, EdgeKind::Mirror);
                }
            }

            if cfg.p_co_diff > 0.0 {
                let mut inter: HashMap<(u32, u32), u64> = HashMap::new();
                for (&x, &y) in bm_a.assignment.iter().zip(&bm_b.assignment) {
                    *inter.entry((x, y)).or_default() += 1;
                }
                let mut pairs: Vec<_> = inter.into_iter().collect();
                pairs.sort_unstable_by_key(|&(key, _)| key);
                for ((i, j), common) in pairs {
                    if bm_a.optima[i as usize].solution == bm_b.optima[j as usize].solution {
                        continue;
                    }
                    let union = bm_a.basin_sizes[i as usize] + bm_b.basin_sizes[j as usize] - common;
                    let weight = cfg.p_co_diff * (common as f64 / union as f64);
                    push_pair(&mut overlap_edges, la, i, lb, j, weight, EdgeKind::Overlap);
                }
            }
        }
    }

    Ok(Mllon {
        provenance,
        config: cfg,
        layers: layers.iter().map(|&(_, _, lon)| lon.clone()).collect(),
        mirror_edges,
        overlap_edges,
    })
}

fn push_pair(out: &mut Vec<SupraEdge>, la: u32, i: u32, lb: u32, j: u32, weight: f64, kind: EdgeKind) {
    let x = SupraNode { layer: la, id: i };
    let y = SupraNode { layer: lb, id: j };
    out.push(SupraEdge { src: x, dst: y, weight, kind });
    out.push(SupraEdge { src: y, dst: x, weight, kind });
}

/// The flattened network: one node per supra-node, every edge kept.
pub fn flatten(m: &Mllon) -> Digraph {
    let nodes: Vec<GraphNode> = m
        .layers
        .iter()
        .enumerate()
        .flat_map(|(l, lon)| {
            lon.nodes.iter().map(move |n| GraphNode {
                layer: l as u32,
                id: n.id,
                solution: Some(n.solution),
                fitness: Some(n.fitness),
                basin_size: Some(n.basin_size),
                is_global: n.is_global,
            })
        })
        .collect();
    let offsets: Vec<usize> = m
        .layers
        .iter()
        .scan(0usize, |acc, lon| {
            let start = *acc;
            *acc += lon.nv();
            Some(start)
        })
        .collect();
    let index = |node: SupraNode| (offsets[node.layer as usize] + node.id as usize) as u32;
    let edges = m.supra_edges().map(|e| (index(e.src), index(e.dst), e.weight)).collect();
    Digraph::new(nodes, edges).expect("supra edges are distinct by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basin::{enumerate_basins, Optimum};
    use crate::lon::build_lon;
    use crate::nk::NkInstance;

    fn layers_of(inst: &NkInstance) -> Vec<(OperatorKind, BasinMap, Lon)> {
        OperatorKind::ALL
            .iter()
            .map(|&op| {
                let bm = enumerate_basins(inst, op).unwrap();
                let lon = build_lon(inst, op, &bm).unwrap();
                (op, bm, lon)
            })
            .collect()
    }

    fn borrowed(v: &[(OperatorKind, BasinMap, Lon)]) -> Vec<(OperatorKind, &BasinMap, &Lon)> {
        v.iter().map(|(op, bm, lon)| (*op, bm, lon)).collect()
    }

    fn hand_map(assignment: Vec<u32>, optima: Vec<u64>) -> BasinMap {
        let mut basin_sizes = vec![0u64; optima.len()];
        for &a in &assignment {
            basin_sizes[a as usize] += 1;
        }
        BasinMap {
            provenance: Provenance { n: 3, k: 0, seed: 0 },
            operator: OperatorKind::BitFlip,
            assignment,
            optima: optima.into_iter().map(|solution| Optimum { solution, fitness: 0.0 }).collect(),
            basin_sizes,
            global_optima: vec![],
        }
    }

    #[test]
    fn jaccard_examples() {
        // Basin 0 of `a` is {0,1,2}; basin 1 of `b` is {2,3}.
        let a = hand_map(vec![0, 0, 0, 1, 1, 1, 1, 1], vec![0, 3]);
        let b = hand_map(vec![0, 0, 1, 1, 0, 0, 0, 0], vec![0, 2]);
        assert_eq!(jaccard_overlap(&a, 0, &b, 1).unwrap(), 0.25);
        assert_eq!(jaccard_overlap(&a, 0, &a, 0).unwrap(), 1.0);
        assert_eq!(jaccard_overlap(&a, 0, &a, 1).unwrap(), 0.0);

        let mut small = hand_map(vec![0, 0, 0, 0], vec![0]);
        small.provenance.n = 2;
        assert!(jaccard_overlap(&a, 0, &small, 0).is_err());
    }

    #[test]
    fn separable_instance_has_mirrored_global_optimum() {
        let inst = NkInstance::from_parts(6, 0, 0, vec![vec![]; 6], vec![vec![0.1, 0.6]; 6]).unwrap();
        let layers = layers_of(&inst);
        let m = build_mllon(&borrowed(&layers), MllonConfig::default()).unwrap();
        assert_eq!(m.layers[0].nv(), 1);
        assert!(m.overlap_edges.is_empty());
        let go = m.layers[0].nodes[0].solution;
        assert!(m
            .mirror_edges
            .iter()
            .any(|e| e.weight == 1.0 && m.layers[e.src.layer as usize].nodes[e.src.id as usize].solution == go));
    }

    #[test]
    fn overlap_weights_scale_jaccard() {
        let inst = NkInstance::generate(4, 1, 3).unwrap();
        let layers = layers_of(&inst);
        let cfg = MllonConfig { p_co_diff: 0.5, ..MllonConfig::default() };
        let m = build_mllon(&borrowed(&layers), cfg).unwrap();
        assert!(!m.overlap_edges.is_empty());
        for e in &m.overlap_edges {
            let (a, b) = if e.src.layer == 0 { (e.src, e.dst) } else { (e.dst, e.src) };
            let j = jaccard_overlap(&layers[0].1, a.id, &layers[1].1, b.id).unwrap();
            assert_eq!(e.weight, 0.5 * j);
            assert!(e.weight > 0.0 && e.weight <= 0.5);
        }
    }

    #[test]
    fn flatten_counts_and_order() {
        let inst = NkInstance::generate(8, 3, 21).unwrap();
        let layers = layers_of(&inst);
        let m = build_mllon(&borrowed(&layers), MllonConfig::default()).unwrap();
        let g = flatten(&m);
        let nv: usize = layers.iter().map(|l| l.2.nv()).sum();
        let ne: usize = layers.iter().map(|l| l.2.ne()).sum();
        assert_eq!(g.nv(), nv);
        assert_eq!(g.ne(), ne + m.mirror_edges.len());
        assert_eq!(m.mirror_edges.len() % 2, 0);
        for e in &m.mirror_edges {
            let (s, d) = (m.flat_index(e.src), m.flat_index(e.dst));
            assert_eq!(g.weight(s, d), Some(1.0));
            assert_eq!(g.weight(d, s), Some(1.0));
        }
        let layer_of: Vec<u32> = g.nodes().iter().map(|n| n.layer).collect();
        assert!(layer_of.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn single_layer_flattens_to_itself() {
        let inst = NkInstance::generate(7, 2, 4).unwrap();
        let layers = layers_of(&inst);
        let lon = layers[0].2.clone();
        let g = flatten(&Mllon::from_layer(lon.clone(), MllonConfig::default()));
        assert_eq!(g, Digraph::from_lon(&lon));
    }

    #[test]
    fn build_rejects_bad_inputs() {
        let inst = NkInstance::generate(5, 1, 8).unwrap();
        let layers = layers_of(&inst);
        let b = borrowed(&layers);
        assert!(build_mllon(&b[..1], MllonConfig::default()).is_err());
        assert!(build_mllon(&[b[0], b[0]], MllonConfig::default()).is_err());
        let other = layers_of(&NkInstance::generate(5, 1, 9).unwrap());
        let ob = borrowed(&other);
        assert!(build_mllon(&[b[0], ob[1]], MllonConfig::default()).is_err());
        let bad = MllonConfig { p_co_mirror: 0.0, ..MllonConfig::default() };
        assert!(build_mllon(&b, bad).is_err());
    }
}
