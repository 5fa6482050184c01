//! Single-layer local optima networks.
//!
//! `w_ij = (1/|B_i|) Σ_{s∈B_i} Σ_{s'∈B_j} p(s→s')`. Both operators give every
//! member of a basin the same neighborhood size (bit-flip: `n`; 1-swap: the
//! basin never leaves one Hamming-weight class), so each weight is an exact
//! neighbor count divided by `|Nh| · |B_i|`, rounded once.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basin::{BasinMap, Provenance};
use crate::error::{Error, Result};
use crate::neighborhood::{for_each_neighbor, neighborhood_size, OperatorKind};
use crate::nk::NkInstance;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LonNode {
    pub id: u32,
    pub solution: u64,
    pub fitness: f64,
    pub basin_size: u64,
    pub is_global: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub src: u32,
    pub dst: u32,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lon {
    pub provenance: Provenance,
    pub operator: OperatorKind,
    pub nodes: Vec<LonNode>,
    /// Inter-basin transitions with positive weight, sorted by `(src, dst)`.
    pub edges: Vec<Edge>,
    /// Probability mass that stays inside each basin; not part of the edge set.
    pub self_mass: Vec<f64>,
}

impl Lon {
    pub fn nv(&self) -> usize {
        self.nodes.len()
    }

    pub fn ne(&self) -> usize {
        self.edges.len()
    }

    pub fn global_optima(&self) -> Vec<u32> {
        self.nodes.iter().filter(|n| n.is_global).map(|n| n.id).collect()
    }

    /// `self_mass[i] + Σ_j w_ij` for every node.
    pub fn total_mass(&self) -> Vec<f64> {
        let mut total = self.self_mass.clone();
        for e in &self.edges {
            total[e.src as usize] += e.weight;
        }
        total
    }
}

pub fn build_lon(inst: &NkInstance, op: OperatorKind, bm: &BasinMap) -> Result<Lon> {
    if bm.operator != op {
        return Err(Error::InvalidArgument(format!("basin map was built with {}, requested {op}", bm.operator)));
    }
    if bm.provenance != Provenance::of(inst) {
        return Err(Error::InvalidArgument("basin map does not belong to this instance".into()));
    }
    let n = inst.n();
    let nv = bm.num_optima();
    let members = bm.members();

    let rows: Vec<(f64, Vec<Edge>)> = (0..nv as u32)
        .into_par_iter()
        .map_init(
            || (vec![0u64; nv], Vec::<u32>::new()),
            |(counts, touched), i| {
                let basin = members.basin(i);
                let degree = neighborhood_size(basin[0], n, op);
                let mut self_count = 0u64;
                for &s in basin {
                    debug_assert_eq!(neighborhood_size(s, n, op), degree);
                    for_each_neighbor(s, n, op, |t| {
                        let j = bm.assignment[t as usize];
                        if j == i {
                            self_count += 1;
                        } else {
                            if counts[j as usize] == 0 {
                                touched.push(j);
                            }
                            counts[j as usize] += 1;
                        }
                    });
                }
                if degree == 0 {
                    return (0.0, Vec::new());
                }
                let total = (degree as u64 * basin.len() as u64) as f64;
                touched.sort_unstable();
                let edges = touched
                    .drain(..)
                    .map(|j| {
                        let weight = counts[j as usize] as f64 / total;
                        counts[j as usize] = 0;
                        Edge { src: i, dst: j, weight }
                    })
                    .collect();
                (self_count as f64 / total, edges)
            },
        )
        .collect();

    let mut self_mass = Vec::with_capacity(nv);
    let mut edges = Vec::new();
    for (mass, row) in rows {
        self_mass.push(mass);
        edges.extend(row);
    }
    let nodes = bm
        .optima
        .iter()
        .enumerate()
        .map(|(id, o)| LonNode {
            id: id as u32,
            solution: o.solution,
            fitness: o.fitness,
            basin_size: bm.basin_sizes[id],
            is_global: bm.is_global(id as u32),
        })
        .collect();

    Ok(Lon { provenance: bm.provenance, operator: op, nodes, edges, self_mass })
}
