//! Codes: subgroups of `(Z/p^{a_1}) x ... x (Z/p^{a_r})`, their weights,
//! minimal bases and the exhaustive profile oracle.

mod ambient;
mod basis;
mod code;
mod oracle;

use std::fmt;

pub use ambient::{Ambient, CodeElement};
pub use basis::{minimal_basis, minimal_basis_with, FpSpan, MinimalBasis};
pub use code::MixedCode;
pub use oracle::{brute_force_min_profile, brute_force_min_profile_with, OracleReport};

/// `sum_j (a_j - e_j)` where `e_j` is the valuation of coordinate `j`.
pub fn weight(y: &CodeElement, ambient: &Ambient) -> u32 {
    ambient
        .valuations(y)
        .iter()
        .zip(ambient.exponents())
        .map(|(e, a)| a - e)
        .sum()
}

/// Any map from code elements to the non-negative integers. Greedy bases
/// and the oracle both work for an arbitrary choice.
pub trait WeightFunction: Sync {
    fn weight(&self, y: &CodeElement) -> u32;
}

impl<F> WeightFunction for F
where
    F: Fn(&CodeElement) -> u32 + Sync,
{
    fn weight(&self, y: &CodeElement) -> u32 {
        self(y)
    }
}

/// The p-adic Hamming weight of an ambient.
#[derive(Clone, Copy, Debug)]
pub struct HammingWeight<'a>(pub &'a Ambient);

impl WeightFunction for HammingWeight<'_> {
    fn weight(&self, y: &CodeElement) -> u32 {
        weight(y, self.0)
    }
}

/// Nondecreasing weights of a basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightProfile(pub Vec<u32>);

impl WeightProfile {
    pub fn from_unsorted(mut weights: Vec<u32>) -> Self {
        weights.sort_unstable();
        WeightProfile(weights)
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate-wise order on profiles of equal length.
    pub fn precedes(&self, other: &WeightProfile) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn all_equal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for WeightProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
