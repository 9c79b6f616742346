//! Exact computation of Whitney numbers, characteristic polynomials, subspace
//! distributions and agreement numbers for restriction geometries over finite
//! fields, with a focus on higher-weight Dowling lattices `H(q,n,d)`.
//!
//! Every count is an exact [`num_bigint::BigInt`]; polynomials carry exact
//! rational coefficients. Closed formulas in [`hwdl`] are paired with
//! brute-force oracles in [`lattice`] and [`distributions`] so each can be
//! checked against the other.

pub mod agreement;
pub mod distributions;
mod error;
pub mod exactmath;
pub mod gfq;
pub mod hwdl;
pub mod lattice;
pub mod polyfit;
pub mod subspaces;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::UniPolyQ;
pub use gfq::Field;
pub use lattice::RestrictionGeometry;
pub use subspaces::{AtomSet, Subspace};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
