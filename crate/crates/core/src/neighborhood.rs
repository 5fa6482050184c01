//! Bit-flip and 1-swap neighborhoods.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::nk::Solution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    /// Flip a single bit; `n` neighbors.
    BitFlip,
    /// Exchange a one-bit with a zero-bit; `ones * zeros` neighbors.
    #[serde(rename = "swap")]
    OneSwap,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 2] = [OperatorKind::BitFlip, OperatorKind::OneSwap];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::BitFlip => "bitflip",
            OperatorKind::OneSwap => "swap",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bitflip" | "bit-flip" | "bf" => Ok(OperatorKind::BitFlip),
            "swap" | "oneswap" | "1-swap" | "sw" => Ok(OperatorKind::OneSwap),
            other => Err(Error::InvalidArgument(format!("unknown operator `{other}`"))),
        }
    }
}

/// Size of the neighborhood of an `n`-bit solution.
#[inline]
pub fn neighborhood_size(bits: u64, n: usize, op: OperatorKind) -> usize {
    match op {
        OperatorKind::BitFlip => n,
        OperatorKind::OneSwap => {
            let ones = bits.count_ones() as usize;
            ones * (n - ones)
        }
    }
}

/// Calls `f` once per neighbor of an `n`-bit solution. Order is not sorted;
/// use [`neighbors`] when order matters.
#[inline]
pub fn for_each_neighbor(bits: u64, n: usize, op: OperatorKind, mut f: impl FnMut(u64)) {
    match op {
        OperatorKind::BitFlip => {
            for i in 0..n {
                f(bits ^ (1 << i));
            }
        }
        OperatorKind::OneSwap => {
            let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let zeros = !bits & mask;
            let mut ones_left = bits;
            while ones_left != 0 {
                let one = ones_left & ones_left.wrapping_neg();
                ones_left ^= one;
                let mut zeros_left = zeros;
                while zeros_left != 0 {
                    let zero = zeros_left & zeros_left.wrapping_neg();
                    zeros_left ^= zero;
                    f(bits ^ one ^ zero);
                }
            }
        }
    }
}

/// All neighbors of `s` in ascending integer encoding.
pub fn neighbors(s: &Solution, op: OperatorKind) -> Vec<Solution> {
    let n = s.len();
    let mut out = Vec::with_capacity(neighborhood_size(s.bits(), n, op));
    for_each_neighbor(s.bits(), n, op, |t| out.push(Solution::new_unchecked(n, t)));
    out.sort_unstable();
    out
}

/// `p(s -> s')`: uniform over the neighborhood of `s`, zero elsewhere.
pub fn move_probability(s: &Solution, s_prime: &Solution, op: OperatorKind) -> f64 {
    if s.len() != s_prime.len() || s == s_prime {
        return 0.0;
    }
    let diff = s.bits() ^ s_prime.bits();
    let adjacent = match op {
        OperatorKind::BitFlip => diff.count_ones() == 1,
        OperatorKind::OneSwap => diff.count_ones() == 2 && (s.bits() & diff).count_ones() == 1,
    };
    if adjacent {
        1.0 / neighborhood_size(s.bits(), s.len(), op) as f64
    } else {
        0.0
    }
}
