//! Exact linear algebra over prime fields and the integers.

pub mod bareiss;
pub mod elim;
pub mod field;
pub mod lattice;
pub mod matrix;

use num_bigint::BigInt;

pub use elim::{Echelon, IncrementalEchelon};
pub use field::{certification_primes, is_prime, Field, FpScalar, PrimeField, Rationals};
pub use lattice::{hnf_rows, lattice_index_log_p, p_saturate, LatticeBasis};
pub use matrix::{SparseFpMatrix, SparseMatrix, SparseRow};

use crate::error::Result;
use crate::limits::Limits;

pub fn rank_mod_p(m: &SparseFpMatrix) -> usize {
    elim::rank(&m.field(), m.matrix())
}

/// Basis of the right kernel, as residue vectors.
pub fn kernel_basis_mod_p(m: &SparseFpMatrix) -> Vec<Vec<u32>> {
    elim::kernel_basis(&m.field(), m.matrix())
}

/// Basis of the left kernel, as residue vectors.
pub fn left_kernel_basis_mod_p(m: &SparseFpMatrix) -> Vec<Vec<u32>> {
    elim::left_kernel_basis(&m.field(), m.matrix())
}

/// Rank over the rationals. Ranks modulo two large primes are compared first;
/// only if they disagree is the matrix eliminated over the integers.
pub fn rank_char0(m: &SparseMatrix<BigInt>) -> usize {
    let [q1, q2] = certification_primes();
    let r1 = elim::rank(&q1, &m.reduce(&q1));
    let r2 = elim::rank(&q2, &m.reduce(&q2));
    if r1 == r2 {
        r1
    } else {
        bareiss::rank(m.to_dense())
    }
}

pub fn hnf_row_basis(m: &SparseMatrix<BigInt>, limits: &Limits) -> Result<LatticeBasis> {
    hnf_rows(m.ncols(), m.rows().to_vec(), limits)
}
