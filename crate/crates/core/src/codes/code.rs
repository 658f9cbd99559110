use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::{Ambient, CodeElement};
use crate::error::{Error, Result};
use crate::exactmath::{reduce_mod, smith_normal_form};
use crate::guards::DEFAULT_ELEMENT_GUARD;
use crate::Matrix;

/// A subgroup of an [`Ambient`], given by generators.
///
/// Construction runs two Smith reductions that fix an explicit isomorphism
/// `X = Z/delta_1 + ... + Z/delta_r` (with `delta_i = 1` for trivial
/// summands). Membership, summand coordinates and the image in `X/pX` are
/// then linear algebra; no element enumeration is needed until
/// [`MixedCode::elements`] is called.
#[derive(Clone)]
pub struct MixedCode {
    ambient: Ambient,
    generators: Vec<CodeElement>,
    structure: Structure,
    fingerprint: OnceLock<Vec<CodeElement>>,
}

#[derive(Clone, Debug)]
struct Structure {
    /// `U`, `V` from `U [G; diag(n)] V = diag(d)`.
    lattice_u: Matrix,
    lattice_v: Matrix,
    lattice_v_inv: Matrix,
    lattice_diag: Vec<BigInt>,
    /// `V_R` from the reduction of the modulus relations in lattice coordinates.
    coord_v: Matrix,
    /// All `r` invariant factors, ascending by divisibility.
    factors: Vec<BigInt>,
    /// Index of the first factor > 1.
    first_nontrivial: usize,
    /// One generator per nontrivial cyclic summand.
    basis: Vec<CodeElement>,
}

impl MixedCode {
    pub fn new(ambient: Ambient, generators: Vec<CodeElement>) -> Result<Self> {
        for g in &generators {
            if !ambient.contains(g) {
                return Err(Error::NotInAmbient(g.to_string()));
            }
        }
        let structure = Structure::compute(&ambient, &generators);
        Ok(MixedCode {
            ambient,
            generators,
            structure,
            fingerprint: OnceLock::new(),
        })
    }

    /// Generators given as arbitrary integer vectors, reduced into the ambient.
    pub fn from_int_rows(ambient: Ambient, rows: &[Vec<i64>]) -> Result<Self> {
        let gens = rows
            .iter()
            .map(|r| ambient.element(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient, gens)
    }

    pub fn zero(ambient: Ambient) -> Self {
        Self::new(ambient, Vec::new()).expect("empty generator set is valid")
    }

    pub fn full(ambient: Ambient) -> Self {
        let gens = (0..ambient.len()).map(|j| ambient.unit_vector(j)).collect();
        Self::new(ambient, gens).expect("unit vectors lie in the ambient")
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[CodeElement] {
        &self.generators
    }

    /// Number of cyclic summands, `dim_{F_p} X/pX`.
    pub fn rank(&self) -> usize {
        self.structure.basis.len()
    }

    /// `(p^{d_1}, ..., p^{d_t})`, each `d_i >= 1`.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.structure.factors[self.structure.first_nontrivial..]
    }

    pub fn invariant_exponents(&self) -> Vec<u32> {
        let p = BigInt::from(self.ambient.p());
        self.invariant_factors()
            .iter()
            .map(|f| {
                let mut f = f.clone();
                let mut d = 0;
                while f > BigInt::one() {
                    f /= &p;
                    d += 1;
                }
                d
            })
            .collect()
    }

    /// A generator of each cyclic summand, in the order of
    /// [`MixedCode::invariant_factors`].
    pub fn summand_basis(&self) -> &[CodeElement] {
        &self.structure.basis
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors().iter().product()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, y: &CodeElement) -> bool {
        self.ambient.contains(y) && self.structure.lattice_coefficients(y).is_some()
    }

    /// Whether every element of `other` lies in `self`.
    pub fn contains_code(&self, other: &MixedCode) -> bool {
        self.ambient == other.ambient && other.generators.iter().all(|g| self.contains(g))
    }

    /// Coordinates of `y` in the cyclic decomposition, each reduced modulo
    /// its invariant factor. `None` if `y` is not in the code.
    pub fn coordinates(&self, y: &CodeElement) -> Option<Vec<BigInt>> {
        let s = &self.structure;
        let c = s.lattice_coefficients(y)?;
        let mapped = s.coord_v.left_mul_vec(&c);
        Some(
            mapped
                .into_iter()
                .zip(&s.factors)
                .skip(s.first_nontrivial)
                .map(|(x, f)| x.mod_floor(f))
                .collect(),
        )
    }

    /// Image of `y` in `X/pX = F_p^t`.
    pub fn nakayama_image(&self, y: &CodeElement) -> Option<Vec<u64>> {
        let p = self.ambient.p();
        Some(
            self.coordinates(y)?
                .iter()
                .map(|x| reduce_mod(x, p))
                .collect(),
        )
    }

    /// Integer coefficients `c` with `y = sum c_k g_k` over the given
    /// generators, if `y` is in the code.
    pub fn generator_coefficients(&self, y: &CodeElement) -> Option<Vec<BigInt>> {
        let s = &self.structure;
        let w = s.lattice_coefficients(y)?;
        let k = self.generators.len();
        let r = self.ambient.len();
        let mut padded = w;
        padded.resize(k + r, BigInt::zero());
        let z = s.lattice_u.left_mul_vec(&padded);
        Some(z[..k].to_vec())
    }

    /// A Z-basis (rows) of the preimage of the code in `Z^r`.
    pub fn lattice_basis(&self) -> Matrix {
        let s = &self.structure;
        let r = self.ambient.len();
        Matrix::from_fn(r, r, |i, j| &s.lattice_diag[i] * &s.lattice_v_inv[(i, j)])
    }

    /// All elements in lexicographic order, refusing codes larger than `guard`.
    pub fn elements(&self, guard: u64) -> Result<Vec<CodeElement>> {
        if let Some(fp) = self.fingerprint.get() {
            return Ok(fp.clone());
        }
        self.check_size(guard)?;
        Ok(self.fingerprint.get_or_init(|| self.enumerate()).clone())
    }

    /// The sorted element list under the default guard, cached.
    pub fn fingerprint(&self) -> Result<&[CodeElement]> {
        if self.fingerprint.get().is_none() {
            self.check_size(DEFAULT_ELEMENT_GUARD)?;
        }
        Ok(self.fingerprint.get_or_init(|| self.enumerate()))
    }

    fn check_size(&self, guard: u64) -> Result<()> {
        match self.order_u64() {
            Some(n) if n <= guard => Ok(()),
            _ => Err(Error::guard("code elements", self.order(), guard)),
        }
    }

    fn enumerate(&self) -> Vec<CodeElement> {
        let amb = &self.ambient;
        let orders: Vec<u64> = self
            .invariant_factors()
            .iter()
            .map(|f| f.to_u64().expect("guarded order fits u64"))
            .collect();
        let mut out = vec![amb.zero()];
        for (b, &ord) in self.structure.basis.iter().zip(&orders) {
            let mut next = Vec::with_capacity(out.len() * ord as usize);
            let mut multiple = amb.zero();
            for _ in 0..ord {
                next.extend(out.iter().map(|x| amb.add(x, &multiple)));
                multiple = amb.add(&multiple, b);
            }
            out = next;
        }
        out.sort();
        out
    }

    /// The code generated by `self` and `other`.
    pub fn sum(&self, other: &MixedCode) -> Result<MixedCode> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("codes live in different ambients".into()));
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        MixedCode::new(self.ambient.clone(), gens)
    }

    /// Same code with the generators replaced by the cyclic summand basis.
    pub fn with_summand_generators(&self) -> MixedCode {
        MixedCode::new(self.ambient.clone(), self.structure.basis.clone())
            .expect("summand basis lies in the ambient")
    }
}

impl Structure {
    fn compute(ambient: &Ambient, generators: &[CodeElement]) -> Self {
        let r = ambient.len();
        let moduli: Vec<BigInt> = ambient.moduli().iter().map(|&n| BigInt::from(n)).collect();

        let gens = Matrix::from_rows_with_cols(
            &generators
                .iter()
                .map(CodeElement::to_ints)
                .collect::<Vec<_>>(),
            r,
        );
        let stacked = gens.vstack(&Matrix::diagonal(&moduli));
        let snf = smith_normal_form(&stacked);
        let lattice_diag = snf.diagonal();
        debug_assert_eq!(lattice_diag.len(), r);
        debug_assert!(lattice_diag.iter().all(|d| !d.is_zero()));

        // Relations n_j e_j written in the lattice basis d_i * row_i(V^{-1}).
        let relations = Matrix::from_fn(r, r, |j, i| {
            let num = &moduli[j] * &snf.v[(j, i)];
            debug_assert!(num.is_multiple_of(&lattice_diag[i]));
            num / &lattice_diag[i]
        });
        let rel = smith_normal_form(&relations);
        let factors = rel.diagonal();
        let first_nontrivial = factors
            .iter()
            .position(|f| !f.is_one())
            .unwrap_or(factors.len());

        let basis = (first_nontrivial..r)
            .map(|i| {
                let coeffs: Vec<BigInt> = (0..r)
                    .map(|l| &rel.v_inv[(i, l)] * &lattice_diag[l])
                    .collect();
                let vector = snf.v_inv.left_mul_vec(&coeffs);
                ambient.element(&vector).expect("length matches ambient")
            })
            .collect();

        Structure {
            lattice_u: snf.u,
            lattice_v: snf.v,
            lattice_v_inv: snf.v_inv,
            lattice_diag,
            coord_v: rel.v,
            factors,
            first_nontrivial,
            basis,
        }
    }

    /// Coefficients of `y` (any integer lift) in the lattice basis, or
    /// `None` when `y` is not in the code.
    fn lattice_coefficients(&self, y: &CodeElement) -> Option<Vec<BigInt>> {
        let yv = self.lattice_v.left_mul_vec(&y.to_ints());
        yv.into_iter()
            .zip(&self.lattice_diag)
            .map(|(x, d)| {
                let (q, rem) = x.div_rem(d);
                rem.is_zero().then_some(q)
            })
            .collect()
    }
}

impl PartialEq for MixedCode {
    /// Equality as subgroups, decided by mutual membership of generators.
    fn eq(&self, other: &Self) -> bool {
        self.contains_code(other) && other.contains_code(self)
    }
}

impl Eq for MixedCode {}

impl fmt::Debug for MixedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "<{}> in {}", gens.join(", "), self.ambient)
    }
}
