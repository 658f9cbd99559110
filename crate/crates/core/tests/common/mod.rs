#![allow(dead_code)]

use mixcode::codes::{Ambient, CodeElement, MixedCode};
use mixcode::equivalence::ElementaryOp;
use mixcode::{Integer, Matrix};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// `p` in {2, 3, 5}, up to three summands, exponents at most 2 and order at most 625.
pub fn random_ambient(rng: &mut impl Rng) -> Ambient {
    loop {
        let p = *[2u64, 3, 5].choose(rng).unwrap();
        let r = rng.gen_range(1..=3);
        let mut a: Vec<u32> = (0..r).map(|_| rng.gen_range(1..=2)).collect();
        a.sort_unstable();
        let amb = Ambient::new(p, a).unwrap();
        if amb.order_u64().is_some_and(|n| n <= 625) {
            return amb;
        }
    }
}

pub fn random_element(rng: &mut impl Rng, amb: &Ambient) -> CodeElement {
    CodeElement(amb.moduli().iter().map(|&n| rng.gen_range(0..n)).collect())
}

pub fn random_code(rng: &mut impl Rng, amb: &Ambient) -> MixedCode {
    let k = rng.gen_range(0..=3);
    let gens = (0..k).map(|_| random_element(rng, amb)).collect();
    MixedCode::new(amb.clone(), gens).unwrap()
}

pub fn random_unit(rng: &mut impl Rng, p: u64, n: u64) -> u64 {
    loop {
        let c = rng.gen_range(1..n);
        if c % p != 0 {
            return c;
        }
    }
}

/// Up to ten permutations of equal-modulus coordinates and unit scalings.
pub fn random_ops(rng: &mut impl Rng, amb: &Ambient) -> Vec<ElementaryOp> {
    let r = amb.len();
    let len = rng.gen_range(0..=10);
    (0..len)
        .map(|_| {
            let i = rng.gen_range(0..r);
            let partners: Vec<usize> = (0..r)
                .filter(|&j| j != i && amb.moduli()[j] == amb.moduli()[i])
                .collect();
            match partners.choose(rng) {
                Some(&j) if rng.gen_bool(0.5) => ElementaryOp::permute(amb, i, j).unwrap(),
                _ => {
                    let c = random_unit(rng, amb.p(), amb.moduli()[i]);
                    ElementaryOp::scale(amb, i, c).unwrap()
                }
            }
        })
        .collect()
}

/// Rows of `U [I; R]` for a random unimodular `U`, so the map is onto.
pub fn random_map(rng: &mut impl Rng, amb: &Ambient) -> Matrix {
    let r = amb.len();
    let n = r + rng.gen_range(0..=2);
    let mut f = Matrix::zeros(n, r);
    for i in 0..n {
        for j in 0..r {
            f[(i, j)] = if i < r {
                Integer::from((i == j) as i64)
            } else {
                Integer::from(rng.gen_range(-3i64..=3))
            };
        }
    }
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            f.add_row_multiple(a, b, &Integer::from(rng.gen_range(-2i64..=2)));
        }
    }
    f
}

pub fn random_basis(rng: &mut impl Rng, amb: &Ambient) -> Vec<CodeElement> {
    loop {
        let y: Vec<CodeElement> = (0..amb.len()).map(|_| random_element(rng, amb)).collect();
        if MixedCode::new(amb.clone(), y.clone()).unwrap().order() == amb.order() {
            return y;
        }
    }
}
