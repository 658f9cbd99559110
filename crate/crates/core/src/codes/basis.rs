use super::{CodeElement, HammingWeight, MixedCode, WeightFunction, WeightProfile};
use crate::error::Result;
use crate::exactmath::{mul_mod, unit_inverse};
use crate::guards::DEFAULT_ELEMENT_GUARD;

/// Span of vectors over `F_p`, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct FpSpan {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl FpSpan {
    pub fn new(p: u64) -> Self {
        FpSpan {
            p,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let f = v[*pivot];
            if f == 0 {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                *x = (*x + mul_mod(p - f, *r, p)) % p;
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent of the span; reports whether it was.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = unit_inverse(v[pivot], p, 1).expect("nonzero residue mod p is a unit");
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[pivot];
            if f == 0 {
                continue;
            }
            for (x, n) in row.iter_mut().zip(&v) {
                *x = (*x + mul_mod(p - f, *n, p)) % p;
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalBasis {
    pub basis: Vec<CodeElement>,
    pub profile: WeightProfile,
}

/// Greedy minimal basis for the Hamming weight.
pub fn minimal_basis(code: &MixedCode) -> Result<MinimalBasis> {
    minimal_basis_with(code, &HammingWeight(code.ambient()), DEFAULT_ELEMENT_GUARD)
}

/// Greedy minimal basis for an arbitrary weight function.
///
/// Candidates are scanned by increasing weight, ties broken by the
/// lexicographically smaller coordinate vector, and kept when their image
/// in `X/pX` is independent of the images already kept.
pub fn minimal_basis_with(
    code: &MixedCode,
    weight: &dyn WeightFunction,
    guard: u64,
) -> Result<MinimalBasis> {
    let t = code.rank();
    let mut candidates: Vec<(u32, CodeElement)> = code
        .elements(guard)?
        .into_iter()
        .map(|y| (weight.weight(&y), y))
        .collect();
    candidates.sort();

    let mut span = FpSpan::new(code.ambient().p());
    let mut basis = Vec::with_capacity(t);
    let mut weights = Vec::with_capacity(t);
    for (w, y) in candidates {
        if basis.len() == t {
            break;
        }
        let image = code
            .nakayama_image(&y)
            .expect("enumerated element is a member");
        if span.insert(&image) {
            basis.push(y);
            weights.push(w);
        }
    }
    debug_assert_eq!(basis.len(), t);
    Ok(MinimalBasis {
        basis,
        profile: WeightProfile(weights),
    })
}
