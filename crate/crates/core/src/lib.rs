//! An exact-arithmetic engine for graded algebras and commutative
//! differential graded algebras. Everything is computed degreewise up
//! to a truncation degree, over the rationals or a prime field, with no
//! floating point anywhere.
//!
//! The layers, bottom up:
//!
//! * [`field`] / [`linalg`] — exact scalars (`Q`, `F_p`) and exact
//!   linear algebra (reduced row echelon form, kernels, solves, sparse
//!   incremental echelons).
//! * [`algebra`] — presented graded algebras: free graded-commutative
//!   with Koszul signs, free noncommutative (tensor) algebras, exterior
//!   and divided-power generators, monomial bases, homogeneous ideal
//!   quotients, Hilbert series, and the element expression grammar.
//! * [`cdga`] — differentials given on generators, `d^2` validation,
//!   degreewise cohomology with representatives, cup products, quotient
//!   CDGAs and presentation comparison.
//! * [`amalgam`] — pushouts of augmented graded algebras computed via
//!   free-product word bases and two-sided relation closure.
//! * [`koszul`] — bigraded Koszul complexes over quotient polynomial
//!   rings and their cohomology (Tor slices).
//! * [`scenarios`] — declarative presets with expected-value tables and
//!   cross-checked verdicts.
//! * [`specfile`] / [`report`] — the versioned spec-file format and the
//!   machine-readable report emitted by the CLI.

pub mod algebra;
pub mod amalgam;
pub mod cdga;
pub mod error;
pub mod field;
pub mod koszul;
pub mod linalg;
pub mod report;
pub mod scenarios;
pub mod specfile;

pub use error::{Error, Result};

/// Concrete instantiations over the rationals.
pub type QAlgebra = algebra::Algebra<field::Rationals>;
pub type QElement = algebra::Element<field::Rationals>;
pub type QMatrix = linalg::Matrix<field::Rationals>;

/// Concrete instantiations over a prime field.
pub type FpAlgebra = algebra::Algebra<field::PrimeField>;
pub type FpElement = algebra::Element<field::PrimeField>;
pub type FpMatrix = linalg::Matrix<field::PrimeField>;

/// Engine version stamped into reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");