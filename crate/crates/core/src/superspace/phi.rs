use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::algebra::GroupAlgebraElement;
use super::block::{act_codes, multinomial, BlockEndoSpace, WeightBlock};
use super::perm::{factorial, Permutation};
use super::word::Alphabet;
use crate::combinatorics::{enumerate_compositions, BiComposition, Composition};
use crate::error::{check_limit, Result};
use crate::exact::{self, Field, PrimeField, SparseFpMatrix, SparseMatrix, SparseRow};
use crate::limits::Limits;

pub(crate) fn check_tensor_size(m: usize, n: usize, r: usize, limits: &Limits) -> Result<()> {
    check_limit("r", r as u128, limits.max_r as u128)?;
    check_limit("(m+n)^r", ((m + n) as u128).saturating_pow(r as u32), limits.max_words)
}

/// Whether the block of this weight can be dropped without changing the
/// kernel of the action: blocks whose even and odd parts are sorted
/// decreasingly represent every weight up to relabelling, and a side with a
/// free slot next to a part of size two or more is covered by the block that
/// splits that part.
pub fn is_essential_weight(w: &BiComposition) -> bool {
    fn side_ok(c: &Composition) -> bool {
        let parts = c.parts();
        let sorted = parts.windows(2).all(|w| w[0] >= w[1]);
        sorted && (!parts.contains(&0) || parts.iter().all(|&x| x <= 1))
    }
    side_ok(&w.even) && side_ok(&w.odd)
}

/// Weights of the blocks that determine the kernel of the action.
pub fn essential_weights(m: usize, n: usize, r: usize) -> Vec<BiComposition> {
    let mut out = Vec::new();
    for a in (0..=r as u32).rev() {
        for even in enumerate_compositions(m, a) {
            for odd in enumerate_compositions(n, r as u32 - a) {
                let w = BiComposition { even: even.clone(), odd };
                if is_essential_weight(&w) {
                    out.push(w);
                }
            }
        }
    }
    out
}

pub fn essential_blocks(m: usize, n: usize, r: usize) -> Result<Vec<WeightBlock>> {
    let alphabet = Alphabet::new(m, n)?;
    essential_weights(m, n, r).into_iter().map(|w| WeightBlock::new(alphabet, w)).collect()
}

/// Row `rank(σ)` holds the flattened block matrices of `σ`.
fn action_rows<T: Clone>(space: &BlockEndoSpace, r: usize, plus: T, minus: T) -> Vec<SparseRow<T>> {
    let mut buf = vec![0u8; r];
    Permutation::all(r)
        .map(|sigma| {
            let mut row: SparseRow<T> = Vec::new();
            for (b, block) in space.blocks().iter().enumerate() {
                for j in 0..block.dim() {
                    let neg = act_codes(block.alphabet(), sigma.images(), block.word_codes(j), &mut buf);
                    let i = block.index_of_codes(&buf).expect("action preserves weight");
                    row.push((space.coord(b, i, j) as u32, if neg { minus.clone() } else { plus.clone() }));
                }
            }
            row.sort_unstable_by_key(|(c, _)| *c);
            row
        })
        .collect()
}

/// The `r! × Σ (dim B)²` matrix whose row for `σ` lists `Φ(σ)` blockwise.
pub fn phi_action_matrix<T: Clone + Zero + One + Neg<Output = T>>(
    m: usize,
    n: usize,
    r: usize,
    limits: &Limits,
) -> Result<SparseMatrix<T>> {
    check_tensor_size(m, n, r, limits)?;
    let space = BlockEndoSpace::new(super::block::weight_blocks(m, n, r)?);
    phi_action_matrix_on(&space, limits)
}

/// The action matrix restricted to the given blocks.
pub fn phi_action_matrix_on<T: Clone + Zero + One + Neg<Output = T>>(
    space: &BlockEndoSpace,
    limits: &Limits,
) -> Result<SparseMatrix<T>> {
    let r = space.blocks().first().map_or(0, WeightBlock::degree);
    check_limit("r", r as u128, limits.max_r as u128)?;
    Ok(SparseMatrix::from_sorted_rows(space.dim(), action_rows(space, r, T::one(), -T::one())))
}

fn fp_action_matrix(space: &BlockEndoSpace, r: usize, field: PrimeField) -> SparseFpMatrix {
    let rows = action_rows(space, r, field.one(), field.neg(&field.one()));
    SparseFpMatrix::new(field, SparseMatrix::from_sorted_rows(space.dim(), rows))
}

pub fn phi_action_matrix_mod_p(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<SparseFpMatrix> {
    check_tensor_size(m, n, r, limits)?;
    let field = PrimeField::new(p)?;
    let space = BlockEndoSpace::new(super::block::weight_blocks(m, n, r)?);
    Ok(fp_action_matrix(&space, r, field))
}

/// Dimension of the image of the group algebra; `p = 0` means the rationals.
pub fn phi_rank(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<usize> {
    check_tensor_size(m, n, r, limits)?;
    let space = BlockEndoSpace::new(essential_blocks(m, n, r)?);
    if p == 0 {
        let int: SparseMatrix<BigInt> = phi_action_matrix_on(&space, limits)?;
        return Ok(exact::rank_char0(&int));
    }
    let field = PrimeField::new(p)?;
    Ok(exact::rank_mod_p(&fp_action_matrix(&space, r, field)))
}

/// Dimension of the kernel of the action of the group algebra.
pub fn phi_kernel_dim(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<usize> {
    Ok(factorial(r) - phi_rank(m, n, r, p, limits)?)
}

/// Basis of the kernel of the action over `F_p`.
pub fn phi_kernel_basis(
    m: usize,
    n: usize,
    r: usize,
    p: u64,
    limits: &Limits,
) -> Result<Vec<GroupAlgebraElement<u32>>> {
    check_tensor_size(m, n, r, limits)?;
    let field = PrimeField::new(p)?;
    let space = BlockEndoSpace::new(essential_blocks(m, n, r)?);
    let a = fp_action_matrix(&space, r, field);
    exact::left_kernel_basis_mod_p(&a).into_iter().map(|v| GroupAlgebraElement::new(r, v)).collect()
}

/// `Φ(x)` in the block coordinates of `space`, as a sparse vector.
pub fn phi_image<T: Clone + Zero + Neg<Output = T>>(
    x: &GroupAlgebraElement<T>,
    space: &BlockEndoSpace,
) -> SparseRow<T> {
    let r = x.degree();
    let mut dense = vec![T::zero(); space.dim()];
    let mut buf = vec![0u8; r];
    for (rank, c) in x.support() {
        let sigma = Permutation::unrank(r, rank).expect("rank in range");
        for (b, block) in space.blocks().iter().enumerate() {
            for j in 0..block.dim() {
                let neg = act_codes(block.alphabet(), sigma.images(), block.word_codes(j), &mut buf);
                let i = block.index_of_codes(&buf).expect("action preserves weight");
                let slot = &mut dense[space.coord(b, i, j)];
                *slot = if neg { slot.clone() + -c.clone() } else { slot.clone() + c.clone() };
            }
        }
    }
    dense.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k as u32, v)).collect()
}

/// Total number of words in the essential blocks, a lower bound on the
/// enumeration work of the faithfulness test.
pub(crate) fn essential_word_count(m: usize, n: usize, r: usize) -> u128 {
    essential_weights(m, n, r).iter().map(|w| multinomial(&w.concatenated()) as u128).sum()
}
