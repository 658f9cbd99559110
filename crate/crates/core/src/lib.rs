//! Exact computations with codes over mixed prime-power moduli.
//!
//! ```
//! use mixcode::bounds::{theorem2_exact, GroupSpec};
//! use mixcode::codes::{minimal_basis, Ambient, MixedCode};
//!
//! let amb = Ambient::new(5, vec![1, 1, 1])?;
//! let code = MixedCode::from_int_rows(amb, &[vec![1, 1, 1]])?;
//! assert_eq!(minimal_basis(&code)?.profile.weights(), &[3]);
//!
//! let report = theorem2_exact(&GroupSpec::from_code(code))?;
//! assert_eq!(report.status.as_str(), "EXACT_THM2");
//! assert_eq!(report.lower_ed_p, 52.into());
//! # Ok::<(), mixcode::Error>(())
//! ```

pub mod bounds;
pub mod census;
pub mod cli;
pub mod codes;
pub mod duality;
pub mod equivalence;
pub mod error;
pub mod exactmath;
pub mod guards;
pub mod lift;

pub use error::{Error, Result};

/// Arbitrary-precision integer used by all structure computations.
pub type Integer = num_bigint::BigInt;
/// Exact rational used in census statistics.
pub type Rational = num_rational::BigRational;
/// Integer matrix over [`Integer`].
pub type Matrix = exactmath::IntMatrix<Integer>;
/// Smith normal form over [`Integer`].
pub type Snf = exactmath::SnfResult<Integer>;
