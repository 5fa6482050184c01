//! Exhaustive best-improvement hill climbing and basins of attraction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::neighborhood::{for_each_neighbor, OperatorKind};
use crate::nk::{NkInstance, Solution};

/// Largest `n` enumerated without an explicit override.
pub const CAPACITY_LIMIT: usize = 28;
/// Hard ceiling even with the override; identifiers and indices are 32-bit.
pub const HARD_LIMIT: usize = 32;

/// Identifies the instance an artifact was derived from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
}

impl Provenance {
    pub fn of(inst: &NkInstance) -> Self {
        Self { n: inst.n(), k: inst.k(), seed: inst.seed() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub solution: u64,
    pub fitness: f64,
}

/// The hill-climbing map over the whole search space.
#[derive(Clone, Debug, PartialEq)]
pub struct BasinMap {
    pub provenance: Provenance,
    pub operator: OperatorKind,
    /// Optimum identifier for every integer-encoded solution.
    pub assignment: Vec<u32>,
    /// Local optima, in ascending order of their encoding; the index is the identifier.
    pub optima: Vec<Optimum>,
    pub basin_sizes: Vec<u64>,
    /// Identifiers of optima with the maximal fitness over the whole space.
    pub global_optima: Vec<u32>,
}

impl BasinMap {
    pub fn n(&self) -> usize {
        self.provenance.n
    }

    pub fn num_optima(&self) -> usize {
        self.optima.len()
    }

    /// Solutions of every basin, grouped by identifier, each group ascending.
    pub fn members(&self) -> BasinMembers {
        let mut offsets = vec![0usize; self.optima.len() + 1];
        for &id in &self.assignment {
            offsets[id as usize + 1] += 1;
        }
        for i in 0..self.optima.len() {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut solutions = vec![0u64; self.assignment.len()];
        for (s, &id) in self.assignment.iter().enumerate() {
            solutions[cursor[id as usize]] = s as u64;
            cursor[id as usize] += 1;
        }
        BasinMembers { offsets, solutions }
    }

    pub fn is_global(&self, id: u32) -> bool {
        self.global_optima.binary_search(&id).is_ok()
    }
}

/// Basin membership in compressed row form.
pub struct BasinMembers {
    offsets: Vec<usize>,
    solutions: Vec<u64>,
}

impl BasinMembers {
    pub fn basin(&self, id: u32) -> &[u64] {
        let id = id as usize;
        &self.solutions[self.offsets[id]..self.offsets[id + 1]]
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    /// Worker threads; 0 uses the ambient rayon pool.
    pub workers: usize,
    /// Lift [`CAPACITY_LIMIT`] up to [`HARD_LIMIT`].
    pub allow_large: bool,
}

pub(crate) fn check_capacity(n: usize, allow_large: bool) -> Result<()> {
    let limit = if allow_large { HARD_LIMIT } else { CAPACITY_LIMIT };
    if n > limit {
        return Err(Error::Capacity { n, limit });
    }
    Ok(())
}

/// Best neighbor of `s`, ties broken by smallest encoding, if it is strictly
/// fitter than `s`.
#[inline]
fn improving_move(s: u64, n: usize, op: OperatorKind, fitness: impl Fn(u64) -> f64) -> Option<u64> {
    let mut best: Option<(u64, f64)> = None;
    for_each_neighbor(s, n, op, |t| {
        let ft = fitness(t);
        match best {
            Some((b, fb)) if ft < fb || (ft == fb && t > b) => {}
            _ => best = Some((t, ft)),
        }
    });
    match best {
        Some((t, ft)) if fitness(s) < ft => Some(t),
        _ => None,
    }
}

/// Climbs from `s0` to the local optimum it reaches.
pub fn hill_climb(inst: &NkInstance, op: OperatorKind, s0: &Solution) -> Result<Solution> {
    if s0.len() != inst.n() {
        return Err(Error::InvalidArgument(format!("solution has {} bits, instance has n = {}", s0.len(), inst.n())));
    }
    let n = inst.n();
    let mut s = s0.bits();
    while let Some(t) = improving_move(s, n, op, |x| inst.fitness_of(x)) {
        s = t;
    }
    Ok(Solution::new_unchecked(n, s))
}

pub fn enumerate_basins(inst: &NkInstance, op: OperatorKind) -> Result<BasinMap> {
    enumerate_basins_with(inst, op, &EnumerateOptions::default())
}

pub fn enumerate_basins_with(inst: &NkInstance, op: OperatorKind, opts: &EnumerateOptions) -> Result<BasinMap> {
    check_capacity(inst.n(), opts.allow_large)?;
    if opts.workers == 0 {
        return Ok(enumerate(inst, op));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start {} workers: {e}", opts.workers)))?;
    Ok(pool.install(|| enumerate(inst, op)))
}

fn enumerate(inst: &NkInstance, op: OperatorKind) -> BasinMap {
    let n = inst.n();
    let size = 1usize << n;
    let fitness = inst.fitness_table();

    let next: Vec<u32> = (0..size as u64)
        .into_par_iter()
        .map(|s| improving_move(s, n, op, |x| fitness[x as usize]).unwrap_or(s) as u32)
        .collect();

    // Resolve each start to its fixed point; fitness strictly increases along
    // every chain, so the walk terminates.
    const UNRESOLVED: u32 = u32::MAX;
    let mut target = vec![UNRESOLVED; size];
    let mut path = Vec::new();
    for start in 0..size {
        let mut s = start;
        while target[s] == UNRESOLVED && next[s] as usize != s {
            path.push(s);
            s = next[s] as usize;
        }
        let root = if target[s] == UNRESOLVED { s as u32 } else { target[s] };
        target[s] = root;
        for p in path.drain(..) {
            target[p] = root;
        }
    }

    let optima_encodings: Vec<u32> = (0..size as u32).filter(|&s| next[s as usize] == s).collect();
    let mut id_of = vec![0u32; size];
    for (id, &s) in optima_encodings.iter().enumerate() {
        id_of[s as usize] = id as u32;
    }
    let assignment: Vec<u32> = target.iter().map(|&t| id_of[t as usize]).collect();
    let mut basin_sizes = vec![0u64; optima_encodings.len()];
    for &id in &assignment {
        basin_sizes[id as usize] += 1;
    }
    let optima: Vec<Optimum> =
        optima_encodings.iter().map(|&s| Optimum { solution: s as u64, fitness: fitness[s as usize] }).collect();

    let best = fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let global_optima = optima.iter().enumerate().filter(|(_, o)| o.fitness == best).map(|(id, _)| id as u32).collect();

    BasinMap { provenance: Provenance::of(inst), operator: op, assignment, optima, basin_sizes, global_optima }
}
