//! Exact computations for the symmetric group acting on tensor powers of a
//! super vector space over a field of positive characteristic.

pub mod bounds;
pub mod brauer;
pub mod combinatorics;
pub mod commutant;
pub mod error;
pub mod exact;
pub mod latticesat;
pub mod limits;
pub mod superspace;

pub use error::{Error, Result};
pub use limits::Limits;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type SparseIntMatrix = exact::SparseMatrix<BigInt>;
pub type RationalMatrix = exact::SparseMatrix<BigRational>;
pub use exact::SparseFpMatrix;
