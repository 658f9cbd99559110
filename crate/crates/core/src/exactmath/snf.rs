//! Smith normal form by unimodular row and column elimination.
//!
//! Along with `U` and `V` the reduction tracks their inverses, which the
//! code structure computations need to map coordinates back into the ambient.

use super::{Int, IntMatrix};

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// non-negative entries `d_1 | d_2 | ...` (zeros last).
#[derive(Clone, Debug)]
pub struct SnfResult<T> {
    pub u: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub v_inv: IntMatrix<T>,
}

impl<T: Int> SnfResult<T> {
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<T> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<T> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }
}

struct Reducer<T> {
    d: IntMatrix<T>,
    u: IntMatrix<T>,
    u_inv: IntMatrix<T>,
    v: IntMatrix<T>,
    v_inv: IntMatrix<T>,
}

impl<T: Int> Reducer<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[target] += f * row[source]
    fn add_row(&mut self, target: usize, source: usize, f: &T) {
        self.d.add_row_multiple(target, source, f);
        self.u.add_row_multiple(target, source, f);
        self.u_inv.add_col_multiple(source, target, &-f.clone());
    }

    /// col[target] += f * col[source]
    fn add_col(&mut self, target: usize, source: usize, f: &T) {
        self.d.add_col_multiple(target, source, f);
        self.v.add_col_multiple(target, source, f);
        self.v_inv.add_row_multiple(source, target, &-f.clone());
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn smallest_nonzero(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in k..self.d.nrows() {
            for j in k..self.d.ncols() {
                let x = self.d[(i, j)].abs();
                if x.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                    best = Some((i, j, x));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Brings a pivot to `(k, k)` that divides every entry of the trailing
    /// block and clears row and column `k`. Returns false once the trailing
    /// block is zero.
    fn reduce_step(&mut self, k: usize) -> bool {
        let (m, n) = (self.d.nrows(), self.d.ncols());
        loop {
            let Some((i, j)) = self.smallest_nonzero(k) else {
                return false;
            };
            self.swap_rows(k, i);
            self.swap_cols(k, j);

            let mut clean = true;
            for i in k + 1..m {
                if self.d[(i, k)].is_zero() {
                    continue;
                }
                let q = self.d[(i, k)].clone() / self.d[(k, k)].clone();
                self.add_row(i, k, &-q);
                clean &= self.d[(i, k)].is_zero();
            }
            for j in k + 1..n {
                if self.d[(k, j)].is_zero() {
                    continue;
                }
                let q = self.d[(k, j)].clone() / self.d[(k, k)].clone();
                self.add_col(j, k, &-q);
                clean &= self.d[(k, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let pivot = self.d[(k, k)].clone();
            let offender =
                (k + 1..m).find(|&i| (k + 1..n).any(|j| !self.d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => self.add_row(k, i, &T::one()),
                None => {
                    if self.d[(k, k)].is_negative() {
                        self.negate_row(k);
                    }
                    return true;
                }
            }
        }
    }
}

pub fn smith_normal_form<T: Int>(a: &IntMatrix<T>) -> SnfResult<T> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut r = Reducer {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    for k in 0..m.min(n) {
        if !r.reduce_step(k) {
            break;
        }
    }
    SnfResult {
        u: r.u,
        d: r.d,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
    }
}
