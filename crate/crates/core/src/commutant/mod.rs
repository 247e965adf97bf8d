//! Equivariant endomorphisms of tensor superspace, as the commutant of the
//! divided powers of the simple root vectors of `gl(m|n)`.

mod centralizer;
mod generator;

use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{check_limit, Result};
use crate::exact::{self, elim, PrimeField, SparseMatrix, SparseRow};
use crate::limits::Limits;
use crate::superspace::{check_tensor_size, weight_blocks, BlockEndoSpace, WeightBlock};

pub use centralizer::{double_centralizer_dim, first_commutant};
pub use generator::{GeneratorKind, LieGenerator};

/// The matrix of `g^(k)` on `V^⊗r`, rows and columns indexed by words in
/// lexicographic order of their letter codes.
pub fn divided_power_action<T>(g: &LieGenerator, k: usize, r: usize, limits: &Limits) -> Result<SparseMatrix<T>>
where
    T: Clone + Zero + One + Neg<Output = T>,
{
    g.check_power(k)?;
    check_tensor_size(g.m, g.n, r, limits)?;
    let size = g.m + g.n;
    let dim = size.pow(r as u32);
    let mut word = vec![0u8; r];
    let mut triplets = Vec::new();
    for col in 0..dim {
        decode(col, size, &mut word);
        g.apply_divided(k, &word, |image, negative| {
            let row = encode(image, size);
            triplets.push((row, col, if negative { -T::one() } else { T::one() }));
        });
    }
    Ok(SparseMatrix::from_triplets(dim, dim, triplets))
}

fn decode(mut index: usize, size: usize, out: &mut [u8]) {
    for c in out.iter_mut().rev() {
        *c = (index % size) as u8;
        index /= size;
    }
}

fn encode(word: &[u8], size: usize) -> usize {
    word.iter().fold(0, |acc, &c| acc * size + c as usize)
}

fn check_endo_size(m: usize, n: usize, r: usize, limits: &Limits) -> Result<()> {
    check_limit("r", r as u128, limits.endo_max_r as u128)?;
    check_limit("sum of squared block sizes", endo_coordinate_count(m, n, r), limits.endo_max_coords)
}

/// `Σ_B (dim B)²`, the number of block-diagonal coordinates, saturating.
pub fn endo_coordinate_count(m: usize, n: usize, r: usize) -> u128 {
    // Pairs of words of equal weight, adding one letter at a time: a letter
    // used c times picks its c positions in both words.
    let mut pairs = vec![0u128; r + 1];
    pairs[0] = 1;
    for _ in 0..m + n {
        let mut next = vec![0u128; r + 1];
        for (a, &count) in pairs.iter().enumerate() {
            for c in 0..=r - a {
                let b = binomial((a + c) as u128, c as u128);
                next[a + c] = next[a + c].saturating_add(count.saturating_mul(b.saturating_mul(b)));
            }
        }
        pairs = next;
    }
    pairs[r]
}

/// Index of each block by its letter counts.
fn block_index(blocks: &[WeightBlock]) -> FxHashMap<Vec<u32>, usize> {
    blocks.iter().enumerate().map(|(i, b)| (b.counts().to_vec(), i)).collect()
}

/// The linear equations `g^(k) X = X g^(k)` on block-diagonal `X`, one row
/// per matrix entry of the commutator that is not identically zero. Each
/// weight shift is handled per (source, target) block pair.
fn commutation_rows(space: &BlockEndoSpace, generators: &[LieGenerator]) -> Vec<SparseRow<i64>> {
    let blocks = space.blocks();
    let index = block_index(blocks);
    let r = blocks.first().map_or(0, WeightBlock::degree);
    let mut rows = Vec::new();
    for g in generators {
        let (from, to) = (g.source() as usize, g.target() as usize);
        for k in 1..=g.max_power(r) {
            for (b, src) in blocks.iter().enumerate() {
                if (src.counts()[from] as usize) < k {
                    continue;
                }
                let mut counts = src.counts().to_vec();
                counts[from] -= k as u32;
                counts[to] += k as u32;
                let t = index[&counts];
                let dst = &blocks[t];
                // Column j of the generator block: images of source word j.
                let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); src.dim()];
                let mut by_row: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dst.dim()];
                for (j, col) in cols.iter_mut().enumerate() {
                    g.apply_divided(k, src.word_codes(j), |image, negative| {
                        let i = dst.index_of_codes(image).expect("shift lands in the target block");
                        let s = if negative { -1 } else { 1 };
                        col.push((i as u32, s));
                        by_row[i].push((j as u32, s));
                    });
                }
                // (G X_src - X_dst G)[i][j]
                for (i, row_i) in by_row.iter().enumerate() {
                    for (j, col_j) in cols.iter().enumerate() {
                        if row_i.is_empty() && col_j.is_empty() {
                            continue;
                        }
                        let mut eq: SparseRow<i64> = Vec::with_capacity(row_i.len() + col_j.len());
                        eq.extend(row_i.iter().map(|&(l, s)| (space.coord(b, l as usize, j) as u32, s)));
                        eq.extend(col_j.iter().map(|&(l, s)| (space.coord(t, i, l as usize) as u32, -s)));
                        eq.sort_unstable_by_key(|e| e.0);
                        rows.push(eq);
                    }
                }
            }
        }
    }
    rows
}

/// Rank of integer rows over `F_p`, or over the rationals when `p = 0`.
fn rank_in_characteristic(ncols: usize, rows: Vec<SparseRow<i64>>, p: u64) -> Result<usize> {
    if p == 0 {
        let rows = rows.into_iter().map(|row| row.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect()).collect();
        return Ok(exact::rank_char0(&SparseMatrix::from_rows(ncols, rows)));
    }
    let field = PrimeField::new(p)?;
    Ok(elim::rank_of_rows(&field, ncols, reduce_rows(&field, rows)))
}

fn reduce_rows(field: &PrimeField, rows: Vec<SparseRow<i64>>) -> Vec<SparseRow<u32>> {
    rows.into_iter()
        .map(|row| row.into_iter().map(|(c, v)| (c, field.reduce_i64(v))).filter(|(_, v)| *v != 0).collect())
        .collect()
}

/// `dim End_{GL(m|n)}(V^⊗r)` over `F_p`, or over the rationals for `p = 0`.
pub fn endo_dim(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<usize> {
    check_endo_size(m, n, r, limits)?;
    let space = BlockEndoSpace::new(weight_blocks(m, n, r)?);
    let rows = commutation_rows(&space, &LieGenerator::simple(m, n));
    let rank = rank_in_characteristic(space.dim(), rows, p)?;
    Ok(space.dim() - rank)
}

/// An explicit basis of the commutant over `F_p`, in block coordinates.
#[derive(Clone, Debug)]
pub struct EndoBasis {
    pub space: BlockEndoSpace,
    pub field: PrimeField,
    pub elements: Vec<Vec<u32>>,
}

impl EndoBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The basis as the rows of a matrix over `F_p`.
    pub fn to_rows(&self) -> Vec<SparseRow<u32>> {
        self.elements
            .iter()
            .map(|v| v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(c, x)| (c as u32, *x)).collect())
            .collect()
    }
}

pub fn endo_basis(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<EndoBasis> {
    check_endo_size(m, n, r, limits)?;
    let field = PrimeField::new(p)?;
    let space = BlockEndoSpace::new(weight_blocks(m, n, r)?);
    let rows = reduce_rows(&field, commutation_rows(&space, &LieGenerator::simple(m, n)));
    let elements = elim::echelon(&field, space.dim(), rows).kernel_basis(&field);
    Ok(EndoBasis { space, field, elements })
}
