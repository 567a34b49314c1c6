//! Integer partitions in both the parts view `(λ_1 ≥ λ_2 ≥ ...)` and the
//! multiplicity view `⟨1^{β_1} 2^{β_2} ... q^{β_q}⟩`.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::{factorial, ExactInt};

/// A partition of `q`, stored as its non-increasing list of positive parts.
///
/// Ordering is lexicographic on the parts, so `(1,1) < (2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Single-row partition `⟨q⟩`.
    pub fn single(q: u32) -> Self {
        if q == 0 {
            Self::empty()
        } else {
            Self { parts: vec![q] }
        }
    }

    /// Builds a partition from its multiplicity vector, where `beta[i - 1]`
    /// is the number of parts equal to `i`.
    pub fn from_multiplicities(beta: &[u32]) -> Self {
        let mut parts = Vec::with_capacity(beta.iter().sum::<u32>() as usize);
        for (i, &m) in beta.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, m as usize));
        }
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn q(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts, `k(λ)`.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicity of the part `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&x| x == i).count() as u32
    }

    /// Dense multiplicity vector of length `q`: element `i - 1` is `β_i`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut beta = vec![0u32; self.q() as usize];
        for &x in &self.parts {
            beta[x as usize - 1] += 1;
        }
        beta
    }

    /// `(part, multiplicity)` pairs for the distinct parts, largest first.
    pub fn grouped(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &x in &self.parts {
            match out.last_mut() {
                Some((part, m)) if *part == x => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    pub fn all_parts_divisible_by(&self, n: u32) -> bool {
        self.parts.iter().all(|&x| x.is_multiple_of(n))
    }

    pub fn scaled(&self, factor: u32) -> Self {
        Self {
            parts: self.parts.iter().map(|&x| x * factor).collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `q`, in reverse-lexicographic order of parts
/// (`(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`).
///
/// With `divisor = Some(n)` only partitions whose parts are all multiples
/// of `n` are returned; the list is empty when `n` does not divide `q`.
pub fn partitions_of(q: u32, divisor: Option<u32>) -> Vec<Partition> {
    match divisor {
        Some(0) => Vec::new(),
        Some(n) if !q.is_multiple_of(n) => Vec::new(),
        Some(n) => partitions_of(q / n, None)
            .into_iter()
            .map(|p| p.scaled(n))
            .collect(),
        None => {
            let mut out = Vec::new();
            let mut current = Vec::new();
            descend(q, q, &mut current, &mut out);
            out
        }
    }
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

/// `z_λ = Π β_i! · i^{β_i}`, the centralizer order of cycle type `λ`.
pub fn z_of(lambda: &Partition) -> ExactInt {
    lambda
        .grouped()
        .into_iter()
        .fold(ExactInt::one(), |acc, (part, m)| {
            acc * factorial(m as u64) * ExactInt::from(part).pow(m)
        })
}

/// `λ! = Π (i!)^{β_i}`, the product of the factorials of the parts.
pub fn factorial_of_partition(lambda: &Partition) -> ExactInt {
    lambda
        .parts
        .iter()
        .fold(ExactInt::one(), |acc, &x| acc * factorial(x as u64))
}
