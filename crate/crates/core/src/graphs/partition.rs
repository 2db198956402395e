use std::collections::BTreeSet;
use std::fmt;

use super::GraphError;

/// A weakly decreasing sequence of non-negative integers.
///
/// Zero parts are allowed so that degree sequences of graphs with isolated
/// vertices can be represented; they do not affect the conjugate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, GraphError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(GraphError::NotPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary values into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_i` with 1-based indexing; 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// `λ'_k = #{i : λ_i ≥ k}` with 1-based `k`.
    pub fn conjugate_part(&self, k: usize) -> usize {
        self.parts.iter().take_while(|&&p| p >= k).count()
    }

    pub fn conjugate(&self) -> Partition {
        let top = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (1..=top).map(|k| self.conjugate_part(k)).collect(),
        }
    }

    /// Side of the Durfee square: the largest `s` with `λ_s ≥ s`.
    pub fn durfee(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p > i)
            .count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Degree sequences of all threshold graphs on `n` vertices.
///
/// Enumerates creation sequences (each step adds an isolated or a dominating
/// vertex) and deduplicates by degree sequence.
pub fn threshold_sequences(n: usize) -> Vec<Partition> {
    if n == 0 {
        return Vec::new();
    }
    let mut seen = BTreeSet::new();
    for code in 0u64..(1u64 << (n - 1)) {
        let mut degrees = vec![0usize];
        for step in 0..n - 1 {
            if code >> step & 1 == 1 {
                for d in degrees.iter_mut() {
                    *d += 1;
                }
                degrees.push(degrees.len());
            } else {
                degrees.push(0);
            }
        }
        seen.insert(Partition::from_unsorted(degrees));
    }
    seen.into_iter().rev().collect()
}

/// Degree sequences of connected threshold graphs on `n ≥ 1` vertices.
pub fn connected_threshold_sequences(n: usize) -> Vec<Partition> {
    threshold_sequences(n)
        .into_iter()
        .filter(|p| n == 1 || p.part(1) == n - 1)
        .collect()
}

/// First `r ∈ [n]` violating the Durfee-square identities of a threshold
/// sequence: either `r ≤ s < λ'_r = 1 + λ_r`, or `r > s ≥ λ'_r = λ_{r+1}`.
pub fn durfee_identity_violation(lambda: &Partition) -> Option<usize> {
    let s = lambda.durfee();
    (1..=lambda.len()).find(|&r| {
        let c = lambda.conjugate_part(r);
        let ok = if r <= s {
            s < c && c == 1 + lambda.part(r)
        } else {
            s >= c && c == lambda.part(r + 1)
        };
        !ok
    })
}
