//! Exact integer and residue arithmetic: p-adic valuations, unit inverses
//! modulo prime powers and Smith normal form.

mod matrix;
mod snf;

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Signed, ToPrimitive};

pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfResult};

use crate::error::{Error, Result};

/// Signed integer scalar usable in exact matrix reductions.
///
/// Implemented for `i64`, `i128` and `BigInt`. The fixed-width types can
/// overflow on large inputs; the code structure machinery uses `BigInt`.
pub trait Int:
    num_integer::Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
    fn from_u64_exact(x: u64) -> Self {
        Self::from_u64(x).expect("value does not fit the scalar type")
    }
}

impl<T> Int for T where
    T: num_integer::Integer
        + Signed
        + Clone
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

/// A residue `value mod p^exponent`; the prime lives in the surrounding context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    pub value: u64,
    pub exponent: u32,
}

impl Residue {
    pub fn new(value: u64, p: u64, exponent: u32) -> Self {
        Residue {
            value: value % p.pow(exponent),
            exponent,
        }
    }

    pub fn valuation(self, p: u64) -> u32 {
        padic_valuation(self.value, p, self.exponent)
    }

    pub fn inverse(self, p: u64) -> Result<Residue> {
        Ok(Residue {
            value: unit_inverse(self.value, p, self.exponent)?,
            exponent: self.exponent,
        })
    }
}

/// Largest `e <= a` with `p^e | m`, for `m` a residue mod `p^a`.
/// The valuation of zero is capped at `a`.
pub fn padic_valuation(m: u64, p: u64, a: u32) -> u32 {
    let mut m = m % p.pow(a);
    if m == 0 {
        return a;
    }
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    e
}

/// Inverse of `u` modulo `p^a`.
pub fn unit_inverse(u: u64, p: u64, a: u32) -> Result<u64> {
    let modulus = p.pow(a);
    let u = u % modulus;
    if u.is_multiple_of(p) {
        return Err(Error::NotAUnit { value: u, modulus });
    }
    if modulus == 1 {
        return Ok(0);
    }
    let (mut r0, mut r1) = (modulus as i128, u as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    Ok(s0.rem_euclid(modulus as i128) as u64)
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Least non-negative representative of an arbitrary integer modulo `m`.
pub fn reduce_mod<T: Int>(x: &T, m: u64) -> u64 {
    let m_t = T::from_u64_exact(m);
    x.mod_floor(&m_t)
        .to_u64()
        .expect("reduced residue fits in u64")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
