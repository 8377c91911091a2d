//! Gradient-span spaces, radicals and nonlinear preserver checks for
//! polynomials over exact fields, with the Cullis determinant of rectangular
//! matrices as the worked family.
//!
//! Everything is exact: scalars live in `GF(p)`, `GF(p^m)` with `p^m <= 64`,
//! or the rationals. The crate is `no_std` and only needs `alloc`.
//!
//! Vectors of `F^n` are plain `Vec<Scalar>`. Matrices of shape `n x k` are
//! identified with `F^{nk}` by row-major flattening everywhere (see
//! [`cullis::CullisContext::flatten`]).

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cullis;
pub mod error;
pub mod field;
pub mod gradspace;
pub mod linalg;
pub mod poly;
pub mod preserver;
pub mod radical;

pub use error::{Error, PairWitness, Refusal, Result};
pub use field::{ArithOp, FieldKind, FieldSpec, Scalar};
pub use linalg::{Matrix, QuotientContext, Side, Subspace};
pub use poly::{Degree, Homogeneity, Monomial, MultiPoly, UniPoly};

/// Default seed for every pseudorandom stream in the crate.
pub const DEFAULT_SEED: u64 = 0x5EED_1A7E;

/// Default cap on |F|^n point enumerations for zero-function tests and
/// exhaustive gradient sampling.
pub const DEFAULT_EVAL_CAP: u128 = 1_000_000;

/// Default cap on evaluated `(x, y, λ)` triples for exhaustive pair checks.
pub const DEFAULT_PAIR_CAP: u128 = 10_000_000;
