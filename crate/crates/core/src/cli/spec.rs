//! Problem specification documents.
//!
//! ```json
//! {
//!   "p": 2,
//!   "exponents": [1, 1, 1],
//!   "code_generators": [[1, 1, 1]],
//!   "options": { "ed_bar": "75", "guards": { "elements": 4096 } }
//! }
//! ```
//!
//! Integers may be JSON numbers or decimal strings. At most one of
//! `code_generators`, `subgroup_generators` and `lattice_rows` may appear.
//! `lift` additionally reads `map_rows` (images of the unit vectors) and
//! `basis`. Unknown keys are ignored, so reports can be read back.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use crate::codes::{Ambient, CodeElement, MixedCode};
use crate::duality::{annihilator, project_integer_lattice, CentralSubgroup, IntegerLattice};
use crate::error::{Error, Result};
use crate::Matrix;

/// An integer written as a JSON number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLit(pub BigInt);

impl<'de> Deserialize<'de> for IntLit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntLit;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<IntLit, E> {
                Ok(IntLit(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<IntLit, E> {
                Ok(IntLit(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<IntLit, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(IntLit)
                    .map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

type Rows = Vec<Vec<IntLit>>;

#[derive(Clone, Debug, Default, Deserialize)]
pub struct RawGuards {
    pub elements: Option<IntLit>,
    pub oracle: Option<IntLit>,
    pub orbit: Option<IntLit>,
    pub census: Option<IntLit>,
    pub search: Option<IntLit>,
}

#[derive(Clone, Debug, Default, Deserialize)]
pub struct RawOptions {
    pub ed_bar: Option<IntLit>,
    pub ed_bar_p: Option<IntLit>,
    pub guards: Option<RawGuards>,
    pub up_to_equivalence: Option<bool>,
    pub rank: Option<IntLit>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RawSpec {
    pub p: IntLit,
    pub exponents: Vec<IntLit>,
    pub code_generators: Option<Rows>,
    pub subgroup_generators: Option<Rows>,
    pub lattice_rows: Option<Rows>,
    pub map_rows: Option<Rows>,
    pub basis: Option<Rows>,
    #[serde(default)]
    pub options: RawOptions,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Code(Vec<Vec<BigInt>>),
    Subgroup(Vec<Vec<BigInt>>),
    Lattice(Vec<Vec<BigInt>>),
}

/// A validated specification.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub ambient: Ambient,
    pub block: Option<Block>,
    pub map_rows: Option<Vec<Vec<BigInt>>>,
    pub basis: Option<Vec<Vec<BigInt>>>,
    pub options: RawOptions,
}

pub fn small(x: &IntLit, what: &str) -> Result<u64> {
    x.0.to_u64()
        .ok_or_else(|| Error::Dimension(format!("{what} = {} is out of range", x.0)))
}

fn rows(r: Rows) -> Vec<Vec<BigInt>> {
    r.into_iter()
        .map(|row| row.into_iter().map(|x| x.0).collect())
        .collect()
}

fn check_lengths(rows: &[Vec<BigInt>], len: usize, what: &str) -> Result<()> {
    match rows.iter().find(|r| r.len() != len) {
        Some(r) => Err(Error::Dimension(format!(
            "{what} row of length {} where {len} is expected",
            r.len()
        ))),
        None => Ok(()),
    }
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn from_raw(raw: RawSpec) -> Result<Self> {
        let p = small(&raw.p, "p")?;
        let exponents = raw
            .exponents
            .iter()
            .map(|a| {
                small(a, "exponent").and_then(|a| {
                    u32::try_from(a)
                        .map_err(|_| Error::InvalidAmbient(format!("exponent {a} too large")))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        let ambient = Ambient::new(p, exponents)?;
        let r = ambient.len();
        let blocks: Vec<Block> = [
            raw.code_generators.map(|g| Block::Code(rows(g))),
            raw.subgroup_generators.map(|g| Block::Subgroup(rows(g))),
            raw.lattice_rows.map(|g| Block::Lattice(rows(g))),
        ]
        .into_iter()
        .flatten()
        .collect();
        if blocks.len() > 1 {
            return Err(Error::InvalidSpec(
                "at most one of code_generators, subgroup_generators, lattice_rows".into(),
            ));
        }
        let block = blocks.into_iter().next();
        if let Some(Block::Code(g) | Block::Subgroup(g) | Block::Lattice(g)) = &block {
            check_lengths(g, r, "generator")?;
        }
        let map_rows = raw.map_rows.map(rows);
        if let Some(m) = &map_rows {
            check_lengths(m, r, "map")?;
        }
        let basis = raw.basis.map(rows);
        if let Some(b) = &basis {
            check_lengths(b, r, "basis")?;
        }
        Ok(ProblemSpec {
            ambient,
            block,
            map_rows,
            basis,
            options: raw.options,
        })
    }

    fn elements(&self, rows: &[Vec<BigInt>]) -> Result<Vec<CodeElement>> {
        rows.iter().map(|r| self.ambient.element(r)).collect()
    }

    /// The code described by the generator block.
    pub fn code(&self) -> Result<MixedCode> {
        match &self.block {
            Some(Block::Code(g)) => MixedCode::new(self.ambient.clone(), self.elements(g)?),
            Some(Block::Subgroup(g)) => Ok(annihilator(&self.subgroup_of(g)?)),
            Some(Block::Lattice(g)) => {
                project_integer_lattice(&IntegerLattice::new(g.clone()), &self.ambient)
            }
            None => Err(Error::InvalidSpec("spec has no generator block".into())),
        }
    }

    fn subgroup_of(&self, g: &[Vec<BigInt>]) -> Result<CentralSubgroup> {
        CentralSubgroup::new(self.ambient.clone(), self.elements(g)?)
    }

    /// The subgroup `C`, for specs given by `subgroup_generators`.
    pub fn subgroup(&self) -> Result<CentralSubgroup> {
        match &self.block {
            Some(Block::Subgroup(g)) => self.subgroup_of(g),
            _ => Err(Error::InvalidSpec("spec has no subgroup_generators".into())),
        }
    }

    /// Residue vectors of whichever generator block is present.
    pub fn block_elements(&self) -> Result<Vec<CodeElement>> {
        match &self.block {
            Some(Block::Code(g) | Block::Subgroup(g) | Block::Lattice(g)) => self.elements(g),
            None => Err(Error::InvalidSpec("spec has no generator block".into())),
        }
    }

    pub fn map_matrix(&self) -> Result<Matrix> {
        let m = self
            .map_rows
            .as_ref()
            .ok_or_else(|| Error::InvalidSpec("spec has no map_rows".into()))?;
        if m.is_empty() {
            return Err(Error::NotSurjective);
        }
        Ok(Matrix::from_rows_with_cols(m, self.ambient.len()))
    }

    pub fn basis_elements(&self) -> Result<Vec<CodeElement>> {
        let b = self
            .basis
            .as_ref()
            .ok_or_else(|| Error::InvalidSpec("spec has no basis".into()))?;
        self.elements(b)
    }
}
