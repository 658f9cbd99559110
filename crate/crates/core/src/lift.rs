//! Integer lifts: a Z-basis of `Z^n` adapted to a surjection onto a finite
//! abelian p-group, and the `{-1, 0, 1}` lift of sign-pattern elements.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::codes::{Ambient, CodeElement, MixedCode};
use crate::error::{Error, Result};
use crate::exactmath::{mul_mod, reduce_mod, smith_normal_form, unit_inverse};
use crate::Matrix;

/// Rows `x_1, ..., x_n` of a unimodular matrix with `f(x_1) = c y_1`,
/// `f(x_i) = y_i` for `i <= t` and `f(x_j) = 0` beyond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftWitness {
    pub x: Matrix,
    pub c: BigInt,
    pub images: Vec<CodeElement>,
}

impl LiftWitness {
    /// Rechecks every claimed property against `f` and `y`.
    pub fn verify(&self, target: &Ambient, f: &Matrix, y: &[CodeElement]) -> bool {
        let n = f.nrows();
        if self.x.nrows() != n || self.x.ncols() != n {
            return false;
        }
        let det = self.x.determinant();
        if det != BigInt::one() && det != -BigInt::one() {
            return false;
        }
        if reduce_mod(&self.c, target.p()) == 0 {
            return false;
        }
        let c = reduce_mod(&self.c, target.pairing_modulus());
        (0..n).all(|i| {
            let image = apply_map(target, f, self.x.row(i));
            let expected = match i {
                0 => target.scale(c, &y[0]),
                i if i < y.len() => y[i].clone(),
                _ => target.zero(),
            };
            image == expected && self.images.get(i) == Some(&image)
        })
    }
}

/// `f(x)` where row `k` of `f` is the image of the `k`-th unit vector.
pub fn apply_map(target: &Ambient, f: &Matrix, x: &[BigInt]) -> CodeElement {
    target
        .element(&f.left_mul_vec(x))
        .expect("map columns match the target")
}

/// Lifts a basis `y` of `M = Z/p^{d_1} + ... + Z/p^{d_t}` along a
/// surjection `f: Z^n -> M` (an `n x t` matrix of images).
///
/// The kernel of `f` is split off by Smith reduction; `y` is expressed in
/// the resulting basis of `M` by a matrix `A`; after scaling `y_1` by
/// `c = det(A)^{-1}`, `A` lies in `SL_t(Z/p^e)` and is written as a product
/// of transvections, which lift to `SL_t(Z)` verbatim.
pub fn lift_basis(target: &Ambient, f: &Matrix, y: &[CodeElement]) -> Result<LiftWitness> {
    let n = f.nrows();
    let t = target.len();
    if f.ncols() != t {
        return Err(Error::Dimension(format!(
            "map has {} columns for a target with {t} summands",
            f.ncols()
        )));
    }
    let images = (0..n)
        .map(|k| target.element(f.row(k)))
        .collect::<Result<Vec<_>>>()?;
    if MixedCode::new(target.clone(), images)?.order() != target.order() {
        return Err(Error::NotSurjective);
    }
    for yi in y {
        if !target.contains(yi) {
            return Err(Error::NotInAmbient(yi.to_string()));
        }
    }
    if y.len() != t || MixedCode::new(target.clone(), y.to_vec())?.order() != target.order() {
        return Err(Error::NotABasis(format!(
            "{} elements do not form a basis of {target}",
            y.len()
        )));
    }

    // Kernel lattice of f: projection of the left kernel of [F; diag(p^d)].
    let moduli: Vec<BigInt> = target.moduli().iter().map(|&m| BigInt::from(m)).collect();
    let stacked = f.vstack(&Matrix::diagonal(&moduli));
    let snf = smith_normal_form(&stacked);
    let rank = snf.rank();
    let kernel_rows: Vec<Vec<BigInt>> = (rank..n + t).map(|i| snf.u.row(i)[..n].to_vec()).collect();
    let kernel = Matrix::from_rows_with_cols(&kernel_rows, n);

    // Z^n = (+) Z e_i with ker f = (+) delta_i Z e_i.
    let ksnf = smith_normal_form(&kernel);
    let deltas = ksnf.diagonal();
    let e = &ksnf.v_inv;
    let (nontrivial, trivial): (Vec<usize>, Vec<usize>) =
        (0..n).partition(|&i| !deltas[i].is_one());
    debug_assert_eq!(nontrivial.len(), t);

    let e_images: Vec<CodeElement> = nontrivial
        .iter()
        .map(|&i| apply_map(target, f, e.row(i)))
        .collect();
    let m_basis = MixedCode::new(target.clone(), e_images)?;
    let a_rows: Vec<Vec<BigInt>> = y
        .iter()
        .map(|yi| m_basis.generator_coefficients(yi).expect("y lies in M"))
        .collect();
    let a = Matrix::from_rows(&a_rows);

    let p = target.p();
    let e_max = target.max_exponent();
    let modulus = target.pairing_modulus();
    let det = reduce_mod(&a.determinant(), modulus);
    let c = unit_inverse(det, p, e_max)?;

    let mut residues: Vec<Vec<u64>> = a_rows
        .iter()
        .map(|row| row.iter().map(|v| reduce_mod(v, modulus)).collect())
        .collect();
    for v in residues[0].iter_mut() {
        *v = mul_mod(*v, c, modulus);
    }
    let b = lift_special_linear(&residues, p, e_max);

    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let e_nt: Vec<&[BigInt]> = nontrivial.iter().map(|&i| e.row(i)).collect();
    for i in 0..t {
        let mut x = vec![BigInt::zero(); n];
        for (j, ej) in e_nt.iter().enumerate() {
            let coef = &b[(i, j)];
            if coef.is_zero() {
                continue;
            }
            for (xk, ek) in x.iter_mut().zip(ej.iter()) {
                *xk += coef * ek;
            }
        }
        rows.push(x);
    }
    rows.extend(trivial.iter().map(|&i| e.row(i).to_vec()));
    let x = Matrix::from_rows_with_cols(&rows, n);
    let images = rows.iter().map(|r| apply_map(target, f, r)).collect();
    Ok(LiftWitness {
        x,
        c: BigInt::from(c),
        images,
    })
}

/// An integer matrix of determinant 1 congruent to `a` modulo `p^e`,
/// given `det a = 1 mod p^e`.
fn lift_special_linear(a: &[Vec<u64>], p: u64, e: u32) -> Matrix {
    let modulus = p.pow(e);
    let t = a.len();
    let mut m: Vec<Vec<u64>> = a.to_vec();
    // Each entry is (target, source, factor): row[target] += factor * row[source].
    let mut ops: Vec<(usize, usize, i128)> = Vec::new();
    let mut add = |m: &mut Vec<Vec<u64>>, target: usize, source: usize, factor: i128| {
        let f = factor.rem_euclid(modulus as i128) as u64;
        if f == 0 {
            return;
        }
        let src = m[source].clone();
        for (x, s) in m[target].iter_mut().zip(src) {
            *x = (*x + mul_mod(f, s, modulus)) % modulus;
        }
        ops.push((target, source, factor));
    };
    let inv = |x: u64| unit_inverse(x, p, e).expect("unit");

    for j in 0..t {
        if m[j][j].is_multiple_of(p) {
            let i = (j + 1..t)
                .find(|&i| !m[i][j].is_multiple_of(p))
                .expect("matrix is invertible modulo p");
            add(&mut m, j, i, 1);
        }
        let u_inv = inv(m[j][j]);
        for k in 0..t {
            if k != j && m[k][j] != 0 {
                let f = mul_mod(m[k][j], u_inv, modulus);
                add(&mut m, k, j, -(f as i128));
            }
        }
    }
    // diag(u, v) -> diag(1, uv) by four transvections.
    for i in 0..t.saturating_sub(1) {
        let (u, v) = (m[i][i], m[i + 1][i + 1]);
        if u == 1 {
            continue;
        }
        let w = mul_mod((1 + modulus - u) % modulus, inv(u), modulus);
        let z = mul_mod(mul_mod(w, v, modulus), inv(mul_mod(u, v, modulus)), modulus);
        add(&mut m, i + 1, i, 1);
        add(&mut m, i, i + 1, w as i128);
        add(&mut m, i + 1, i, -(u as i128));
        add(&mut m, i, i + 1, -(z as i128));
    }
    debug_assert!((0..t).all(|i| (0..t).all(|j| m[i][j] == u64::from(i == j))));

    // ops_k ... ops_1 a = I, so a = ops_1^{-1} ... ops_k^{-1}.
    let mut b = Matrix::identity(t);
    for &(target, source, factor) in &ops {
        b.add_col_multiple(source, target, &BigInt::from(-factor));
    }
    b
}

/// The `{-1, 0, 1}` vector reducing to `y`; residue 1 lifts to 1 even
/// when the modulus is 2.
pub fn sign_lift(y: &CodeElement, ambient: &Ambient) -> Result<Vec<i64>> {
    y.coords()
        .iter()
        .zip(ambient.moduli())
        .enumerate()
        .map(|(j, (&c, &n))| match c {
            0 => Ok(0),
            1 => Ok(1),
            c if c == n - 1 => Ok(-1),
            _ => Err(Error::NotSignRepresentable {
                element: y.to_string(),
                index: j,
            }),
        })
        .collect()
}

/// Rank over Q of the sign lifts equals the number of elements.
pub fn verify_sign_lifts_independent(ys: &[CodeElement], ambient: &Ambient) -> Result<bool> {
    let rows: Vec<Vec<BigInt>> = ys
        .iter()
        .map(|y| sign_lift(y, ambient).map(|v| v.into_iter().map(BigInt::from).collect()))
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Ok(true);
    }
    let m = Matrix::from_rows_with_cols(&rows, ambient.len());
    Ok(m.rank() == ys.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn amb(p: u64, a: &[u32]) -> Ambient {
        Ambient::new(p, a.to_vec()).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    fn to_i64_rows(m: &Matrix) -> Vec<Vec<i64>> {
        m.to_rows()
            .into_iter()
            .map(|r| r.iter().map(|v| v.to_i64().unwrap()).collect())
            .collect()
    }

    fn el(v: &[u64]) -> CodeElement {
        CodeElement(v.to_vec())
    }

    #[test]
    fn trivial_lifts() {
        let m = amb(2, &[1]);
        let f = mat(&[&[1]]);
        let w = lift_basis(&m, &f, &[el(&[1])]).unwrap();
        assert_eq!(to_i64_rows(&w.x), vec![vec![1]]);
        assert_eq!(w.c, BigInt::from(1));

        let f = mat(&[&[1], &[0]]);
        let w = lift_basis(&m, &f, &[el(&[1])]).unwrap();
        assert!(w.verify(&m, &f, &[el(&[1])]));
        assert_eq!(w.c, BigInt::from(1));
        assert_eq!(w.images[1], el(&[0]));
    }

    #[test]
    fn klein_four_example() {
        let m = amb(2, &[1, 1]);
        let f = mat(&[&[1, 0], &[0, 1]]);
        let y = [el(&[1, 1]), el(&[0, 1])];
        let w = lift_basis(&m, &f, &y).unwrap();
        assert!(w.verify(&m, &f, &y));
        assert_eq!(w.c, BigInt::from(1));
        assert_eq!(to_i64_rows(&w.x), vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn determinant_correction() {
        // y = (2) in Z/5 needs c = 3 so that c y_1 = 1.
        let m = amb(5, &[1]);
        let f = mat(&[&[1], &[1]]);
        let y = [el(&[2])];
        let w = lift_basis(&m, &f, &y).unwrap();
        assert!(w.verify(&m, &f, &y));
        assert_eq!(w.c, BigInt::from(3));
    }

    #[test]
    fn mixed_target() {
        let m = amb(3, &[1, 2]);
        let f = mat(&[&[1, 2], &[2, 5], &[0, 3], &[1, 1]]);
        let y = [el(&[2, 4]), el(&[1, 7])];
        let w = lift_basis(&m, &f, &y).unwrap();
        assert!(w.verify(&m, &f, &y));
    }

    #[test]
    fn lift_errors() {
        let m = amb(2, &[1, 1]);
        assert_eq!(
            lift_basis(&m, &mat(&[&[1, 1]]), &[el(&[1, 1]), el(&[0, 1])]),
            Err(Error::NotSurjective)
        );
        let f = mat(&[&[1, 0], &[0, 1]]);
        assert!(matches!(
            lift_basis(&m, &f, &[el(&[1, 1]), el(&[1, 1])]),
            Err(Error::NotABasis(_))
        ));
        assert!(matches!(
            lift_basis(&m, &f, &[el(&[1, 1])]),
            Err(Error::NotABasis(_))
        ));
    }

    #[test]
    fn special_linear_lift() {
        // det = 53 = 8 mod 9, and 8 is its own inverse.
        let mut a = vec![vec![2, 3, 0], vec![1, 1, 5], vec![4, 0, 7]];
        for v in a[0].iter_mut() {
            *v = *v * 8 % 9;
        }
        let b = lift_special_linear(&a, 3, 2);
        assert_eq!(b.determinant(), BigInt::one());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(reduce_mod(&b[(i, j)], 9), a[i][j]);
            }
        }
    }

    #[test]
    fn sign_lift_examples() {
        let a5 = amb(5, &[1, 1, 1]);
        assert_eq!(sign_lift(&el(&[1, 1, 1]), &a5).unwrap(), vec![1, 1, 1]);
        assert_eq!(sign_lift(&el(&[1, 4, 0]), &a5).unwrap(), vec![1, -1, 0]);
        let a2 = amb(2, &[1, 1, 1]);
        assert_eq!(sign_lift(&el(&[1, 1, 1]), &a2).unwrap(), vec![1, 1, 1]);
        assert!(matches!(
            sign_lift(&el(&[2, 0, 0]), &a5),
            Err(Error::NotSignRepresentable { index: 0, .. })
        ));
    }

    #[test]
    fn sign_lift_reduces_back() {
        let a = amb(3, &[1, 2, 2]);
        for y in a.elements(1 << 10).unwrap() {
            if let Ok(x) = sign_lift(&y, &a) {
                assert_eq!(a.element(&x).unwrap(), y);
            }
        }
    }

    #[test]
    fn independence_examples() {
        assert!(
            verify_sign_lifts_independent(&[el(&[1, 0]), el(&[0, 1])], &amb(2, &[1, 1])).unwrap()
        );
        assert!(verify_sign_lifts_independent(
            &[el(&[1, 1, 0]), el(&[0, 1, 1])],
            &amb(3, &[1, 1, 1])
        )
        .unwrap());
        assert!(verify_sign_lifts_independent(&[el(&[0, 2])], &amb(3, &[1, 1])).unwrap());
        assert!(
            !verify_sign_lifts_independent(&[el(&[1, 1]), el(&[1, 1])], &amb(3, &[1, 1])).unwrap()
        );
    }
}
