use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactmath::{is_prime, mul_mod, padic_valuation, reduce_mod, Int};

/// Largest coordinate modulus accepted, so residue products fit in `u128`
/// and sums in `u64` comfortably.
const MAX_MODULUS: u64 = 1 << 62;

/// `(Z/p^{a_1}) x ... x (Z/p^{a_r})`, housing both the codes and, in
/// exponent coordinates, the subgroups of `mu`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambient {
    p: u64,
    exponents: Vec<u32>,
    moduli: Vec<u64>,
}

impl Ambient {
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidAmbient(format!("{p} is not prime")));
        }
        if exponents.is_empty() {
            return Err(Error::InvalidAmbient("no coordinates".into()));
        }
        let mut moduli = Vec::with_capacity(exponents.len());
        for &a in &exponents {
            if a == 0 {
                return Err(Error::InvalidAmbient("exponents must be at least 1".into()));
            }
            match p.checked_pow(a) {
                Some(n) if n <= MAX_MODULUS => moduli.push(n),
                _ => {
                    return Err(Error::InvalidAmbient(format!(
                        "modulus {p}^{a} is too large"
                    )))
                }
            }
        }
        Ok(Ambient {
            p,
            exponents,
            moduli,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of coordinates `r`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max_exponent(&self) -> u32 {
        *self
            .exponents
            .iter()
            .max()
            .expect("ambient has coordinates")
    }

    pub fn exponent_sum(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// `p^{max a_j}`, the modulus of the character pairing.
    pub fn pairing_modulus(&self) -> u64 {
        self.p.pow(self.max_exponent())
    }

    pub fn order(&self) -> BigInt {
        self.moduli
            .iter()
            .fold(BigInt::one(), |acc, &n| acc * BigInt::from(n))
    }

    /// `|ambient|` when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.moduli
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }

    /// Coordinates with equal moduli may be permuted.
    pub fn is_sorted(&self) -> bool {
        self.exponents.windows(2).all(|w| w[0] <= w[1])
    }

    /// Reduces each integer coordinate into its modulus.
    pub fn element<T: Int>(&self, coords: &[T]) -> Result<CodeElement> {
        if coords.len() != self.len() {
            return Err(Error::Dimension(format!(
                "vector of length {} in an ambient with {} coordinates",
                coords.len(),
                self.len()
            )));
        }
        Ok(CodeElement(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(x, &n)| reduce_mod(x, n))
                .collect(),
        ))
    }

    /// Accepts already reduced residues only.
    pub fn checked_element(&self, coords: Vec<u64>) -> Result<CodeElement> {
        let y = CodeElement(coords);
        if self.contains(&y) {
            Ok(y)
        } else {
            Err(Error::NotInAmbient(y.to_string()))
        }
    }

    pub fn contains(&self, y: &CodeElement) -> bool {
        y.0.len() == self.len() && y.0.iter().zip(&self.moduli).all(|(&c, &n)| c < n)
    }

    pub fn zero(&self) -> CodeElement {
        CodeElement(vec![0; self.len()])
    }

    pub fn unit_vector(&self, j: usize) -> CodeElement {
        let mut v = vec![0; self.len()];
        v[j] = 1;
        CodeElement(v)
    }

    pub fn add(&self, x: &CodeElement, y: &CodeElement) -> CodeElement {
        CodeElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.moduli)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        )
    }

    pub fn neg(&self, x: &CodeElement) -> CodeElement {
        CodeElement(
            x.0.iter()
                .zip(&self.moduli)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        )
    }

    /// `c * x` for an integer scalar reduced into each coordinate.
    pub fn scale(&self, c: u64, x: &CodeElement) -> CodeElement {
        CodeElement(
            x.0.iter()
                .zip(&self.moduli)
                .map(|(&a, &n)| mul_mod(c % n, a, n))
                .collect(),
        )
    }

    /// Valuation of each coordinate, capped at the coordinate exponent.
    pub fn valuations(&self, y: &CodeElement) -> Vec<u32> {
        y.0.iter()
            .zip(&self.exponents)
            .map(|(&m, &a)| padic_valuation(m, self.p, a))
            .collect()
    }

    /// Position of `y` in lexicographic order of the ambient.
    pub fn index_of(&self, y: &CodeElement) -> u64 {
        y.0.iter()
            .zip(&self.moduli)
            .fold(0u64, |acc, (&c, &n)| acc * n + c)
    }

    pub fn element_at(&self, mut index: u64) -> CodeElement {
        let mut coords = vec![0; self.len()];
        for (c, &n) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = index % n;
            index /= n;
        }
        CodeElement(coords)
    }

    /// All ambient elements in lexicographic order.
    pub fn elements(&self, guard: u64) -> Result<Vec<CodeElement>> {
        let size = match self.order_u64() {
            Some(s) if s <= guard => s,
            _ => return Err(Error::guard("ambient elements", self.order(), guard)),
        };
        Ok((0..size).map(|i| self.element_at(i)).collect())
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A vector of residues, coordinate `j` reduced mod `p^{a_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeElement(pub Vec<u64>);

impl CodeElement {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Indices of nonzero coordinates.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, _)| j)
            .collect()
    }

    pub fn to_ints(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }
}

impl fmt::Display for CodeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
