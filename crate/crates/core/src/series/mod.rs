//! Exact algebra used by every formula in the crate: polynomials in `q`,
//! truncated power series, bivariate series, rational functions with
//! cyclotomic-style denominators, and partitions.

pub mod bivariate;
pub mod partition;
pub mod poly;
pub mod ratq;
pub mod truncated;

pub use bivariate::{bivariate_product, BinomialFactor, BivariateSeries};
pub use partition::{partition_pairing, partitions_of, Partition};
pub use poly::{phi, phi_dim, q_binomial, QPolynomial};
pub use ratq::RationalQ;
pub use truncated::{
    inverse_phi, p_exact, partition_gf, partitions_exact_parts_gf, TruncatedSeries,
};
