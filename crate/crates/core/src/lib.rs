//! Exact computation of Kac polynomials of quivers and of the stabilized
//! coefficients of `A_{d+nδ}(q)` as `n` grows.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! algorithms; file formats, the command line and parallel drivers live in
//! the `kacstab` companion crate.
//!
//! - [`quiver`]: quivers, dimension vectors, Euler/Cartan forms, roots,
//!   condition (★), characters and derived quivers.
//! - [`series`]: exact polynomials, truncated power series, bivariate series,
//!   rational functions with `(1-q^k)` denominators and partitions.
//! - [`hua`]: Kac polynomials from Hua's generating function.
//! - [`stabilize`]: pairing bounds, HN codimensions, limit series and sweeps.
//! - [`nakajima`]: Crawley–Boevey sweeps and Hilbert-scheme identities.
//! - [`oracle`]: thin-representation counts, finite-field censuses and
//!   interpolation.

#![no_std]

extern crate alloc;

pub mod error;
pub mod hua;
pub mod nakajima;
pub mod oracle;
pub mod quiver;
pub mod series;
pub mod stabilize;

pub use error::{Error, ErrorKind, Result};
pub use quiver::{Character, DimVector, Form, Quiver, RootType};
pub use series::{Partition, QPolynomial, RationalQ, TruncatedSeries};

/// Exact integers used for every polynomial and series coefficient.
pub type Int = num_bigint::BigInt;
/// Exact rationals used for truncated series coefficients.
pub type Rational = num_rational::BigRational;
