//! Dominant integral weights of `sl_r` in normalized partition form.
//!
//! A weight is stored as `r` weakly decreasing non-negative integers with the
//! last part zero; two partitions differing by a constant shift name the same
//! `sl_r` weight, and construction normalizes. The level is the pairing with
//! the highest root, which in this form is simply the first part.
//!
//! The pairing against `x_{r-1} = (1/r)(r-1, -1, ..., -1)` and the derived
//! per-node perturbation interval `[l*(x)/level - 1/2, 1/2 - l(x)/level]`
//! are exact rationals; no floating point is used anywhere.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rat::{rat_int, Rat};
use crate::{Error, Result};

/// A dominant integral weight of `sl_r`, normalized so the last part is zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Weight {
    parts: Vec<u32>,
}

impl Weight {
    /// Builds a weight from weakly decreasing parts, normalizing so the last
    /// part is zero. The rank is the number of parts and must be at least 2.
    pub fn new(parts: &[u32]) -> Result<Weight> {
        if parts.len() < 2 {
            return Err(Error::BadWeight(format!(
                "rank must be at least 2, got {} parts",
                parts.len()
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadWeight(format!(
                "parts must be weakly decreasing, got {parts:?}"
            )));
        }
        let last = *parts.last().unwrap();
        Ok(Weight {
            parts: parts.iter().map(|p| p - last).collect(),
        })
    }

    pub fn zero(rank: usize) -> Weight {
        Weight {
            parts: vec![0; rank],
        }
    }

    /// Parses the comma-separated part form, e.g. `"2,1,0"`.
    pub fn parse(s: &str) -> Result<Weight> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::BadWeight(format!("bad part {p:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        Weight::new(&parts)
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Level: the pairing with the highest root, `l_1 - l_r = l_1`.
    pub fn level(&self) -> u32 {
        self.parts[0]
    }

    /// Total size `|l|`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts[0] == 0
    }

    /// The dual weight, `l*_i = l_1 - l_{r+1-i}`.
    pub fn dual(&self) -> Weight {
        let top = self.parts[0];
        Weight {
            parts: self.parts.iter().rev().map(|&p| top - p).collect(),
        }
    }

    pub fn is_self_dual(&self) -> bool {
        *self == self.dual()
    }

    /// Pairing with `x_{r-1}`: `l_1 - |l|/r`.
    pub fn x_pairing(&self) -> Rat {
        rat_int(self.parts[0] as i64) - Rat::new((self.size() as i64).into(), (self.rank() as i64).into())
    }

    /// True iff `|l|` is divisible by the rank.
    pub fn in_root_lattice(&self) -> bool {
        self.size() % self.rank() as u64 == 0
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// The two admissible per-node perturbation values for a weight at a level,
/// ordered `low <= high`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonPair {
    pub low: Rat,
    pub high: Rat,
}

/// `{l*(x_{r-1})/level - 1/2, 1/2 - l(x_{r-1})/level}`.
pub fn epsilon_pair(w: &Weight, level: u32) -> Result<EpsilonPair> {
    check_level(w, level)?;
    if level == 0 {
        return Err(Error::BadInput("epsilon pair requires level >= 1".into()));
    }
    let l = rat_int(level as i64);
    let half = Rat::new(1.into(), 2.into());
    let low = w.dual().x_pairing() / l.clone() - half.clone();
    let high = half - w.x_pairing() / l;
    debug_assert!(low <= high);
    Ok(EpsilonPair { low, high })
}

/// Midpoint of the two admissible values: `(l* - l)(x_{r-1}) / (2 level)`.
pub fn epsilon_midpoint(w: &Weight, level: u32) -> Result<Rat> {
    if level == 0 {
        // The zero weight at level zero has midpoint zero by continuity; any
        // other weight is a level violation.
        return if w.is_zero() {
            Ok(Rat::zero())
        } else {
            Err(Error::LevelViolation {
                level: w.level(),
                max: level,
            })
        };
    }
    check_level(w, level)?;
    let num = w.dual().x_pairing() - w.x_pairing();
    Ok(num / rat_int(2 * level as i64))
}

pub fn check_level(w: &Weight, level: u32) -> Result<()> {
    if w.level() > level {
        Err(Error::LevelViolation {
            level: w.level(),
            max: level,
        })
    } else {
        Ok(())
    }
}

/// All weights of `sl_rank` with level at most `level`, in lexicographic
/// order on parts. Every decomposition table uses this order.
pub fn level_weights(rank: usize, level: u32) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut parts = vec![0u32; rank];
    enumerate(&mut parts, 0, level, &mut out);
    out.sort();
    out
}

fn enumerate(parts: &mut Vec<u32>, pos: usize, max: u32, out: &mut Vec<Weight>) {
    if pos + 1 == parts.len() {
        // Last part is pinned to zero by normalization.
        out.push(Weight {
            parts: parts.clone(),
        });
        return;
    }
    let hi = if pos == 0 { max } else { parts[pos - 1] };
    for v in 0..=hi {
        parts[pos] = v;
        enumerate(parts, pos + 1, max, out);
    }
    parts[pos] = 0;
}
