//! Code equivalence under coordinate permutations (within equal moduli)
//! and unit scalings of single coordinates.
//!
//! Coordinates are 0-based throughout.

use std::cmp::Ordering;
use std::collections::HashSet;

use itertools::Itertools;
use num_bigint::BigInt;

use crate::codes::{Ambient, CodeElement, MixedCode};
use crate::error::{Error, Result};
use crate::exactmath::{mul_mod, unit_inverse};
use crate::guards::Guards;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryOp {
    /// Swap coordinates `i` and `j`; requires equal moduli.
    Permute(usize, usize),
    /// Multiply coordinate `index` by the unit `c`.
    Scale { index: usize, c: u64 },
}

impl ElementaryOp {
    pub fn permute(ambient: &Ambient, i: usize, j: usize) -> Result<Self> {
        let op = ElementaryOp::Permute(i, j);
        op.validate(ambient)?;
        Ok(op)
    }

    pub fn scale(ambient: &Ambient, index: usize, c: u64) -> Result<Self> {
        let op = ElementaryOp::Scale { index, c };
        op.validate(ambient)?;
        Ok(op)
    }

    pub fn validate(&self, ambient: &Ambient) -> Result<()> {
        let r = ambient.len();
        match *self {
            ElementaryOp::Permute(i, j) => {
                if i >= r || j >= r {
                    return Err(Error::InvalidOp(format!(
                        "coordinate out of range in swap ({i},{j})"
                    )));
                }
                let n = ambient.moduli();
                if n[i] != n[j] {
                    return Err(Error::InvalidOp(format!(
                        "cannot swap coordinates {i} and {j} with moduli {} and {}",
                        n[i], n[j]
                    )));
                }
            }
            ElementaryOp::Scale { index, c } => {
                if index >= r {
                    return Err(Error::InvalidOp(format!("coordinate {index} out of range")));
                }
                if c % ambient.p() == 0 {
                    return Err(Error::InvalidOp(format!(
                        "scalar {c} is not prime to {}",
                        ambient.p()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self, ambient: &Ambient) -> Result<Self> {
        self.validate(ambient)?;
        Ok(match *self {
            op @ ElementaryOp::Permute(..) => op,
            ElementaryOp::Scale { index, c } => {
                let inv = unit_inverse(c, ambient.p(), ambient.exponents()[index])?;
                ElementaryOp::Scale { index, c: inv }
            }
        })
    }

    /// Image of a single element; the op must be valid for `ambient`.
    pub fn apply_to_element(&self, ambient: &Ambient, y: &CodeElement) -> CodeElement {
        let mut z = y.0.clone();
        match *self {
            ElementaryOp::Permute(i, j) => z.swap(i, j),
            ElementaryOp::Scale { index, c } => {
                let n = ambient.moduli()[index];
                z[index] = mul_mod(c % n, z[index], n);
            }
        }
        CodeElement(z)
    }
}

pub fn apply(op: &ElementaryOp, code: &MixedCode) -> Result<MixedCode> {
    let amb = code.ambient();
    op.validate(amb)?;
    let gens = code
        .generators()
        .iter()
        .map(|g| op.apply_to_element(amb, g))
        .collect();
    MixedCode::new(amb.clone(), gens)
}

pub fn apply_all(ops: &[ElementaryOp], code: &MixedCode) -> Result<MixedCode> {
    ops.iter().try_fold(code.clone(), |x, op| apply(op, &x))
}

/// Order of the group generated by the elementary ops: block permutations
/// times unit scalings.
pub fn group_order(ambient: &Ambient) -> BigInt {
    let p = BigInt::from(ambient.p());
    let units: BigInt = ambient
        .exponents()
        .iter()
        .map(|&a| p.pow(a - 1) * (&p - 1u32))
        .product();
    let perms: BigInt = ambient
        .exponents()
        .iter()
        .counts()
        .values()
        .map(|&k| (1..=k).map(BigInt::from).product::<BigInt>())
        .product();
    units * perms
}

/// Group elements acting on encoded elements, with scalings normalized at
/// coordinate 0: multiplying a code by an integer unit leaves it fixed.
struct OrbitAction {
    perms: Vec<Vec<usize>>,
    scalings: Vec<Vec<u64>>,
}

impl OrbitAction {
    fn new(ambient: &Ambient, guard: u64) -> Result<Self> {
        let order = group_order(ambient);
        if order > BigInt::from(guard) {
            return Err(Error::guard("equivalence group order", order, guard));
        }
        let r = ambient.len();
        let blocks: Vec<Vec<usize>> = ambient
            .exponents()
            .iter()
            .enumerate()
            .map(|(j, &a)| (a, j))
            .into_group_map()
            .into_iter()
            .sorted()
            .map(|(_, idx)| idx)
            .collect();
        let perms = blocks
            .iter()
            .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
            .multi_cartesian_product()
            .map(|choice| {
                let mut perm = vec![0; r];
                for (block, image) in blocks.iter().zip(&choice) {
                    for (&from, &to) in block.iter().zip(image) {
                        perm[from] = to;
                    }
                }
                perm
            })
            .collect();
        let p = ambient.p();
        let scalings = ambient
            .moduli()
            .iter()
            .enumerate()
            .map(|(j, &n)| {
                if j == 0 {
                    vec![1]
                } else {
                    (1..n).filter(|c| c % p != 0).collect()
                }
            })
            .multi_cartesian_product()
            .collect();
        Ok(OrbitAction { perms, scalings })
    }

    fn transform(&self, ambient: &Ambient, perm: &[usize], s: &[u64], y: &CodeElement) -> u64 {
        let n = ambient.moduli();
        let mut z = vec![0u64; y.0.len()];
        for (j, &c) in y.0.iter().enumerate() {
            z[perm[j]] = mul_mod(s[j], c, n[j]);
        }
        ambient.index_of(&CodeElement(z))
    }
}

/// Lexicographically least sorted element list over the orbit, as
/// ambient indices.
fn canonical_fingerprint(code: &MixedCode, guards: &Guards) -> Result<Vec<u64>> {
    let amb = code.ambient();
    let action = OrbitAction::new(amb, guards.orbit)?;
    let elements = code.elements(guards.elements)?;
    let mut best: Option<Vec<u64>> = None;
    let mut image = Vec::with_capacity(elements.len());
    for perm in &action.perms {
        for s in &action.scalings {
            image.clear();
            image.extend(elements.iter().map(|y| action.transform(amb, perm, s, y)));
            image.sort_unstable();
            if best
                .as_ref()
                .is_none_or(|b| image.as_slice().cmp(b.as_slice()) == Ordering::Less)
            {
                best = Some(image.clone());
            }
        }
    }
    Ok(best.expect("the group contains the identity"))
}

/// Deterministic generators for a code given by its sorted element list:
/// each element not yet in the span is adjoined.
fn code_from_indices(ambient: &Ambient, indices: &[u64]) -> MixedCode {
    let mut span: HashSet<CodeElement> = HashSet::from([ambient.zero()]);
    let mut gens = Vec::new();
    for &i in indices {
        let y = ambient.element_at(i);
        if span.contains(&y) {
            continue;
        }
        let mut grown: Vec<CodeElement> = Vec::new();
        for s in &span {
            let mut x = ambient.add(s, &y);
            while !span.contains(&x) {
                grown.push(x.clone());
                x = ambient.add(&x, &y);
            }
        }
        span.extend(grown);
        gens.push(y);
    }
    MixedCode::new(ambient.clone(), gens).expect("indices decode into the ambient")
}

pub fn canonical_form(code: &MixedCode) -> Result<MixedCode> {
    canonical_form_with(code, &Guards::default())
}

pub fn canonical_form_with(code: &MixedCode, guards: &Guards) -> Result<MixedCode> {
    let fp = canonical_fingerprint(code, guards)?;
    Ok(code_from_indices(code.ambient(), &fp))
}

pub fn are_equivalent(x: &MixedCode, y: &MixedCode) -> Result<bool> {
    are_equivalent_with(x, y, &Guards::default())
}

pub fn are_equivalent_with(x: &MixedCode, y: &MixedCode, guards: &Guards) -> Result<bool> {
    if x.ambient() != y.ambient() {
        return Err(Error::Dimension(format!(
            "codes over {} and {} cannot be compared",
            x.ambient(),
            y.ambient()
        )));
    }
    if x.order() != y.order() || x.invariant_factors() != y.invariant_factors() {
        return Ok(false);
    }
    Ok(canonical_fingerprint(x, guards)? == canonical_fingerprint(y, guards)?)
}

/// Whether the code is equivalent to the one generated by `(1, ..., 1)`:
/// exactly when it is cyclic with a generator whose entries are all units.
pub fn is_equivalent_to_all_ones(code: &MixedCode) -> bool {
    let p = code.ambient().p();
    code.rank() == 1 && code.summand_basis()[0].0.iter().all(|&c| c % p != 0)
}

/// All distinct codes in the orbit, by sorted element list.
pub fn orbit(code: &MixedCode, guards: &Guards) -> Result<Vec<MixedCode>> {
    let amb = code.ambient();
    let action = OrbitAction::new(amb, guards.orbit)?;
    let elements = code.elements(guards.elements)?;
    let n0 = amb.moduli()[0];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for perm in &action.perms {
        for s in &action.scalings {
            // Coordinate 0 was normalized away; restore its full unit range.
            for c0 in (1..n0).filter(|c| c % amb.p() != 0) {
                let mut s_full = s.clone();
                s_full[0] = c0;
                let mut image: Vec<u64> = elements
                    .iter()
                    .map(|y| action.transform(amb, perm, &s_full, y))
                    .collect();
                image.sort_unstable();
                seen.insert(image);
            }
        }
    }
    Ok(seen
        .into_iter()
        .sorted()
        .map(|fp| code_from_indices(amb, &fp))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::minimal_basis;

    fn amb(p: u64, a: &[u32]) -> Ambient {
        Ambient::new(p, a.to_vec()).unwrap()
    }

    fn code(p: u64, a: &[u32], gens: &[&[i64]]) -> MixedCode {
        let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
        MixedCode::from_int_rows(amb(p, a), &rows).unwrap()
    }

    #[test]
    fn op_examples() {
        let x = code(2, &[1, 1, 1], &[&[1, 1, 0]]);
        let op = ElementaryOp::permute(x.ambient(), 0, 2).unwrap();
        assert_eq!(apply(&op, &x).unwrap(), code(2, &[1, 1, 1], &[&[0, 1, 1]]));

        let y = code(3, &[1, 1], &[&[1, 2]]);
        let op = ElementaryOp::scale(y.ambient(), 1, 2).unwrap();
        assert_eq!(apply(&op, &y).unwrap(), code(3, &[1, 1], &[&[1, 1]]));

        let id = ElementaryOp::scale(y.ambient(), 0, 1).unwrap();
        assert_eq!(apply(&id, &y).unwrap(), y);
    }

    #[test]
    fn invalid_ops() {
        let a = amb(2, &[1, 2]);
        assert!(matches!(
            ElementaryOp::permute(&a, 0, 1),
            Err(Error::InvalidOp(_))
        ));
        assert!(matches!(
            ElementaryOp::scale(&a, 1, 2),
            Err(Error::InvalidOp(_))
        ));
        assert!(ElementaryOp::scale(&a, 5, 1).is_err());
    }

    #[test]
    fn inverse_restores_fingerprint() {
        let x = code(3, &[1, 2, 2], &[&[1, 3, 2], &[0, 1, 4]]);
        let ops = [
            ElementaryOp::scale(x.ambient(), 2, 5).unwrap(),
            ElementaryOp::permute(x.ambient(), 1, 2).unwrap(),
            ElementaryOp::scale(x.ambient(), 0, 2).unwrap(),
        ];
        let y = apply_all(&ops, &x).unwrap();
        let inv: Vec<ElementaryOp> = ops
            .iter()
            .rev()
            .map(|op| op.inverse(x.ambient()).unwrap())
            .collect();
        let back = apply_all(&inv, &y).unwrap();
        assert_eq!(back.fingerprint().unwrap(), x.fingerprint().unwrap());
    }

    #[test]
    fn canonical_examples() {
        let x = code(2, &[1, 1, 1], &[&[0, 1, 1]]);
        let y = code(2, &[1, 1, 1], &[&[1, 1, 0]]);
        assert_eq!(canonical_form(&x).unwrap(), canonical_form(&y).unwrap());

        let u = code(3, &[1, 1], &[&[1, 2]]);
        let v = code(3, &[1, 1], &[&[1, 1]]);
        assert_eq!(canonical_form(&u).unwrap(), canonical_form(&v).unwrap());

        let z = MixedCode::zero(amb(2, &[1, 2]));
        assert_eq!(canonical_form(&z).unwrap(), z);
    }

    #[test]
    fn canonical_form_is_idempotent_and_deterministic() {
        let x = code(3, &[1, 2, 2], &[&[1, 3, 2], &[0, 3, 6]]);
        let c = canonical_form(&x).unwrap();
        let cc = canonical_form(&c).unwrap();
        assert_eq!(c.generators(), cc.generators());
        assert_eq!(c, cc);
    }

    #[test]
    fn equivalence_examples() {
        let x = code(2, &[1, 1], &[&[1, 0]]);
        assert!(are_equivalent(&x, &x).unwrap());
        assert!(!are_equivalent(&x, &code(2, &[1, 1], &[&[1, 1]])).unwrap());
        assert!(are_equivalent(
            &code(3, &[1, 1, 1], &[&[1, 1, 1]]),
            &code(3, &[1, 1, 1], &[&[1, 1, 2]])
        )
        .unwrap());
        assert!(are_equivalent(&x, &code(2, &[1, 1, 1], &[&[1, 0, 0]])).is_err());
    }

    #[test]
    fn all_ones_recognition_matches_canonical_route() {
        for (p, a) in [(2u64, vec![1, 1, 2]), (3, vec![1, 2]), (5, vec![1, 1, 1])] {
            let ambient = amb(p, &a);
            let ones =
                MixedCode::new(ambient.clone(), vec![CodeElement(vec![1; a.len()])]).unwrap();
            let canon_ones = canonical_form(&ones).unwrap();
            for y in ambient.elements(1 << 12).unwrap() {
                let x = MixedCode::new(ambient.clone(), vec![y]).unwrap();
                let by_canon = canonical_form(&x).unwrap() == canon_ones;
                assert_eq!(is_equivalent_to_all_ones(&x), by_canon, "{x:?}");
            }
        }
    }

    #[test]
    fn group_order_and_orbit_size() {
        let a = amb(3, &[1, 1, 2]);
        // 2! * 2 * 2 * 6
        assert_eq!(group_order(&a), BigInt::from(48));
        let x = code(3, &[1, 1, 2], &[&[1, 0, 3]]);
        let orb = orbit(&x, &Guards::default()).unwrap();
        assert_eq!(BigInt::from(48) % orb.len(), BigInt::from(0));
        let profile = minimal_basis(&x).unwrap().profile;
        let canon = canonical_form(&x).unwrap();
        for y in &orb {
            assert_eq!(minimal_basis(y).unwrap().profile, profile);
            assert_eq!(canonical_form(y).unwrap(), canon);
        }
    }

    #[test]
    fn orbit_guard() {
        let a = amb(2, &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let x = MixedCode::full(a);
        let g = Guards {
            orbit: 1000,
            ..Guards::default()
        };
        assert!(matches!(
            canonical_form_with(&x, &g),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
