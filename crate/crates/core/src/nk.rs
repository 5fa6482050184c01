//! NK landscapes under the random neighborhood model.
//!
//! Fitness is the mean of `n` sub-function lookups. The lookup index for
//! variable `i` packs its own bit as the least significant bit, followed by
//! the bits at `links[i]` in stored order:
//!
//! ```text
//! index = s[i] | s[links[i][0]] << 1 | s[links[i][1]] << 2 | ...
//! ```
//!
//! Instances are generated from a ChaCha8 stream: variable `i` draws from
//! stream `i` of the generator seeded with the instance seed, first its `k`
//! links and then its `2^(k+1)` table entries.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for which a solution fits in the integer encoding.
pub const MAX_BITS: usize = 64;

/// A fixed-length bit string. Bit `i` is the coefficient of `2^i` in the
/// integer encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    bits: u64,
    len: u32,
}

impl Solution {
    pub fn new(len: usize, bits: u64) -> Result<Self> {
        if len == 0 || len > MAX_BITS {
            return Err(Error::InvalidArgument(format!("solution length {len} outside 1..={MAX_BITS}")));
        }
        if len < 64 && bits >> len != 0 {
            return Err(Error::InvalidArgument(format!("encoding {bits} does not fit in {len} bits")));
        }
        Ok(Self { bits, len: len as u32 })
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        let value = bits.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i));
        Self::new(bits.len(), value)
    }

    pub(crate) fn new_unchecked(len: usize, bits: u64) -> Self {
        Self { bits, len: len as u32 }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    /// Number of one-bits.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

/// An NK landscape instance. Immutable once built.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NkInstance {
    n: usize,
    k: usize,
    seed: u64,
    links: Vec<Vec<usize>>,
    tables: Vec<Vec<f64>>,
}

impl NkInstance {
    /// Draws a random-neighborhood instance. Deterministic in `(n, k, seed)`.
    pub fn generate(n: usize, k: usize, seed: u64) -> Result<Self> {
        if n == 0 || n > MAX_BITS {
            return Err(Error::InvalidParameter(format!("n = {n} outside 1..={MAX_BITS}")));
        }
        if k >= n {
            return Err(Error::InvalidParameter(format!("k = {k} must be at most n - 1 = {}", n - 1)));
        }
        let (links, tables) = (0..n)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                let links: Vec<usize> =
                    index::sample(&mut rng, n - 1, k).into_iter().map(|j| if j >= i { j + 1 } else { j }).collect();
                let table: Vec<f64> = (0..1usize << (k + 1)).map(|_| rng.gen::<f64>()).collect();
                (links, table)
            })
            .unzip();
        Ok(Self { n, k, seed, links, tables })
    }

    /// Builds an instance from explicit links and tables, checking every
    /// structural invariant.
    pub fn from_parts(n: usize, k: usize, seed: u64, links: Vec<Vec<usize>>, tables: Vec<Vec<f64>>) -> Result<Self> {
        let inst = Self { n, k, seed, links, tables };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let (n, k) = (self.n, self.k);
        if n == 0 || n > MAX_BITS {
            return Err(Error::InvalidParameter(format!("n = {n} outside 1..={MAX_BITS}")));
        }
        if k >= n {
            return Err(Error::InvalidParameter(format!("k = {k} must be at most n - 1")));
        }
        if self.links.len() != n || self.tables.len() != n {
            return Err(Error::InvalidParameter(format!(
                "expected {n} link lists and tables, found {} and {}",
                self.links.len(),
                self.tables.len()
            )));
        }
        for (i, links) in self.links.iter().enumerate() {
            if links.len() != k {
                return Err(Error::InvalidParameter(format!("links[{i}] has {} entries, expected {k}", links.len())));
            }
            for (a, &j) in links.iter().enumerate() {
                if j >= n || j == i || links[..a].contains(&j) {
                    return Err(Error::InvalidParameter(format!("links[{i}] contains invalid index {j}")));
                }
            }
        }
        for (i, table) in self.tables.iter().enumerate() {
            if table.len() != 1 << (k + 1) {
                return Err(Error::InvalidParameter(format!(
                    "tables[{i}] has {} entries, expected {}",
                    table.len(),
                    1usize << (k + 1)
                )));
            }
            if let Some(v) = table.iter().find(|v| !(0.0..1.0).contains(*v)) {
                return Err(Error::InvalidParameter(format!("tables[{i}] entry {v} outside [0, 1)")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn links(&self) -> &[Vec<usize>] {
        &self.links
    }

    pub fn tables(&self) -> &[Vec<f64>] {
        &self.tables
    }

    /// Number of solutions, `2^n`.
    pub fn space_size(&self) -> u64 {
        1u64 << self.n
    }

    pub fn fitness(&self, s: &Solution) -> Result<f64> {
        if s.len() != self.n {
            return Err(Error::InvalidArgument(format!("solution has {} bits, instance has n = {}", s.len(), self.n)));
        }
        Ok(self.fitness_of(s.bits()))
    }

    /// Fitness of an integer-encoded solution. The caller guarantees the
    /// encoding fits in `n` bits.
    pub fn fitness_of(&self, bits: u64) -> f64 {
        let mut total = 0.0;
        for (i, (links, table)) in self.links.iter().zip(&self.tables).enumerate() {
            let mut idx = ((bits >> i) & 1) as usize;
            for (pos, &j) in links.iter().enumerate() {
                idx |= (((bits >> j) & 1) as usize) << (pos + 1);
            }
            total += table[idx];
        }
        total / self.n as f64
    }

    /// Fitness of every solution, indexed by integer encoding.
    pub fn fitness_table(&self) -> Vec<f64> {
        (0..self.space_size()).into_par_iter().map(|s| self.fitness_of(s)).collect()
    }
}
