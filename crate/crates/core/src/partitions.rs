//! Integer partitions: the index set for characteristic numbers, basis
//! manifolds and rank counts.
//!
//! A partition `ω = (i_1 ≥ i_2 ≥ ... ≥ i_k)` of weight `d = Σ i_j` indexes
//! everything downstream: monomials in Chern classes, products of complex
//! projective spaces, and the graded pieces of the spectra rank tables.
//! The canonical enumeration order is reverse-lexicographic: `(d)` first,
//! `(1,...,1)` last.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    NonPositivePart,
    #[error("partition parts must be weakly decreasing")]
    NotSorted,
    #[error("invalid partition literal {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// A partition of a nonnegative integer: weakly decreasing positive parts.
///
/// The weight is cached at construction; partitions are immutable values
/// and are used as map keys throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    weight: u32,
}

impl Partition {
    /// The empty partition of weight 0.
    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            weight: 0,
        }
    }

    /// Builds a partition from parts that must already be weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::NonPositivePart);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotSorted);
        }
        let weight = parts.iter().sum();
        Ok(Partition { parts, weight })
    }

    /// Builds a partition from parts in any order, sorting them descending.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::NonPositivePart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Ok(Partition { parts, weight })
    }

    /// `(n)`: the single-part partition, or the empty partition for `n = 0`.
    pub fn single(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition {
                parts: vec![n],
                weight: n,
            }
        }
    }

    /// `(1,1,...,1)` of weight `d`.
    pub fn ones(d: u32) -> Self {
        Partition {
            parts: vec![1; d as usize],
            weight: d,
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of parts, written `l(ω)`.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, or 0 for the empty partition.
    pub fn max_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Transpose of the Young diagram. An involution that preserves weight
    /// and swaps length with largest part.
    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.max_part() as usize);
        for k in 1..=self.max_part() {
            let count = self.parts.iter().take_while(|&&p| p >= k).count();
            parts.push(count as u32);
        }
        Partition {
            parts,
            weight: self.weight,
        }
    }

    /// Multiplicity of each distinct part, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// Canonical total order: by weight, then reverse-lexicographic on parts,
/// matching the order produced by [`enumerate`]. `(d)` is the least
/// partition of weight `d` and `(1,...,1)` the greatest.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Parses the bracket form `[2,1]`; the empty partition is `[]`.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PartitionError::Parse {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| err("expected bracketed form like [2,1]"))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let p: u32 = piece
                .trim()
                .parse()
                .map_err(|_| err("parts must be positive integers"))?;
            parts.push(p);
        }
        Partition::new(parts).map_err(|e| match e {
            PartitionError::Parse { .. } => unreachable!(),
            PartitionError::NonPositivePart => err("parts must be positive"),
            PartitionError::NotSorted => err("parts must be weakly decreasing"),
        })
    }
}

/// All partitions of `d` in reverse-lexicographic order: `(d)` first,
/// `(1,...,1)` last. `enumerate(0)` is the singleton list of the empty
/// partition.
pub fn enumerate(d: u32) -> Vec<Partition> {
    let mut out = Vec::with_capacity(count_partitions(d) as usize);
    let mut stack = Vec::new();
    rec_enumerate(d, d, &mut stack, &mut out);
    out
}

fn rec_enumerate(remaining: u32, max: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: stack.clone(),
            weight: stack.iter().sum(),
        });
        return;
    }
    for first in (1..=remaining.min(max)).rev() {
        stack.push(first);
        rec_enumerate(remaining - first, first, stack, out);
        stack.pop();
    }
}

/// p(d): the number of partitions of `d`.
pub fn count_partitions(d: u32) -> u64 {
    count_constrained(d, None, None)
}

/// Number of partitions of `d` whose largest part lies in the window
/// `min_max_part ≤ max part ≤ max_part` (each bound optional).
/// Contradictory constraints yield 0. The empty partition has largest
/// part 0, so it is counted only when `min_max_part` is absent or 0.
pub fn count_constrained(d: u32, max_part: Option<u32>, min_max_part: Option<u32>) -> u64 {
    let cap = max_part.unwrap_or(d).min(d);
    let floor = min_max_part.unwrap_or(0);
    if floor > cap {
        return if d == 0 && floor == 0 { 1 } else { 0 };
    }
    // partitions with max part ≤ cap, minus those with max part < floor
    let le_cap = count_with_parts_at_most(d, cap);
    if floor == 0 {
        le_cap
    } else {
        le_cap - count_with_parts_at_most(d, floor - 1)
    }
}

/// Partitions of `d` with all parts ≤ m, by the standard two-variable
/// recurrence. The empty partition counts for `d = 0`.
fn count_with_parts_at_most(d: u32, m: u32) -> u64 {
    let d = d as usize;
    let m = m as usize;
    // table[q] = number of partitions of q with parts ≤ current bound
    let mut table = vec![0u64; d + 1];
    table[0] = 1;
    for part in 1..=m.min(d) {
        for q in part..=d {
            table[q] += table[q - part];
        }
    }
    table[d]
}
