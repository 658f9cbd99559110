//! Annihilator duality between subgroups `C` of `mu` and codes `X(mu/C)`.
//!
//! `mu_{p^{a_j}}` is identified with `Z/p^{a_j}` and characters pair with
//! subgroup elements through
//! `<m, tau> = sum_j m_j tau_j p^{a - a_j} mod p^a`, `a = max a_j`.
//! The pairing is perfect and symmetric, so both directions of the
//! correspondence are the same kernel computation.

use num_bigint::BigInt;

use crate::codes::{Ambient, CodeElement, MixedCode};
use crate::error::{Error, Result};
use crate::exactmath::smith_normal_form;
use crate::Matrix;

/// A subgroup `C` of `mu`, in exponent coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSubgroup {
    group: MixedCode,
}

impl CentralSubgroup {
    pub fn new(ambient: Ambient, generators: Vec<CodeElement>) -> Result<Self> {
        Ok(CentralSubgroup {
            group: MixedCode::new(ambient, generators)?,
        })
    }

    pub fn from_group(group: MixedCode) -> Self {
        CentralSubgroup { group }
    }

    pub fn trivial(ambient: Ambient) -> Self {
        CentralSubgroup::from_group(MixedCode::zero(ambient))
    }

    /// All of `mu`.
    pub fn whole(ambient: Ambient) -> Self {
        CentralSubgroup::from_group(MixedCode::full(ambient))
    }

    pub fn ambient(&self) -> &Ambient {
        self.group.ambient()
    }

    pub fn generators(&self) -> &[CodeElement] {
        self.group.generators()
    }

    /// The subgroup as an abstract finite abelian group.
    pub fn group(&self) -> &MixedCode {
        &self.group
    }

    pub fn order(&self) -> BigInt {
        self.group.order()
    }
}

/// Character lattice rows in `Z^r` (a generating set, possibly redundant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    pub rows: Vec<Vec<BigInt>>,
}

impl IntegerLattice {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Self {
        IntegerLattice { rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IntegerLattice {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        }
    }
}

/// `<m, tau>` in `Z/p^a`.
pub fn pairing(ambient: &Ambient, m: &CodeElement, tau: &CodeElement) -> u64 {
    let a = ambient.max_exponent();
    let modulus = ambient.pairing_modulus() as u128;
    let p = ambient.p() as u128;
    let total = m
        .coords()
        .iter()
        .zip(tau.coords())
        .zip(ambient.exponents())
        .fold(0u128, |acc, ((&x, &y), &aj)| {
            let scale = p.pow(a - aj);
            let term = (x as u128 * y as u128) % modulus * scale % modulus;
            (acc + term) % modulus
        });
    total as u64
}

/// Generators of `{m : <m, tau> = 0 for all tau in the span of taus}`,
/// via the left kernel of `[P^T; p^a I]` where `P_ij = tau_ij p^{a - a_j}`.
fn annihilating_generators(ambient: &Ambient, taus: &[CodeElement]) -> Vec<CodeElement> {
    let r = ambient.len();
    let k = taus.len();
    let a = ambient.max_exponent();
    let modulus = BigInt::from(ambient.pairing_modulus());
    let p = BigInt::from(ambient.p());

    let mut system = Matrix::zeros(r + k, k);
    for (i, tau) in taus.iter().enumerate() {
        for (j, (&t, &aj)) in tau.coords().iter().zip(ambient.exponents()).enumerate() {
            system[(j, i)] = BigInt::from(t) * p.pow(a - aj);
        }
        system[(r + i, i)] = modulus.clone();
    }
    let snf = smith_normal_form(&system);
    let rank = snf.rank();
    (rank..r + k)
        .map(|row| {
            let m: Vec<BigInt> = snf.u.row(row)[..r].to_vec();
            ambient.element(&m).expect("length matches ambient")
        })
        .filter(|y| !y.is_zero())
        .collect()
}

/// `Code(C)`: the characters of `mu` vanishing on `C`.
pub fn annihilator(c: &CentralSubgroup) -> MixedCode {
    let amb = c.ambient().clone();
    let gens = annihilating_generators(&amb, c.generators());
    MixedCode::new(amb, gens).expect("kernel vectors lie in the ambient")
}

/// The subgroup `C` with `Code(C)` equal to the given code.
pub fn annihilator_dual(code: &MixedCode) -> CentralSubgroup {
    let amb = code.ambient().clone();
    let gens = annihilating_generators(&amb, code.generators());
    CentralSubgroup::new(amb, gens).expect("kernel vectors lie in the ambient")
}

/// Reduces a character lattice of `G_m^r / C~` to its code in `X(mu)`.
pub fn project_integer_lattice(lattice: &IntegerLattice, ambient: &Ambient) -> Result<MixedCode> {
    let gens = lattice
        .rows
        .iter()
        .map(|row| {
            if row.len() != ambient.len() {
                return Err(Error::Dimension(format!(
                    "lattice row of length {} for {} coordinates",
                    row.len(),
                    ambient.len()
                )));
            }
            ambient.element(row)
        })
        .collect::<Result<Vec<_>>>()?;
    MixedCode::new(ambient.clone(), gens)
}
