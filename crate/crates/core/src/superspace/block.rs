use std::ops::Neg;

use num_traits::{One, Zero};

use super::perm::Permutation;
use super::word::{Alphabet, SuperWord};
use crate::combinatorics::{enumerate_bicompositions, BiComposition};
use crate::error::{Error, Result};
use crate::exact::SparseMatrix;

/// Number of odd pairs `k < l` that `sigma` inverts, mod 2.
pub fn sign_exponent(sigma: &Permutation, w: &SuperWord) -> Result<u8> {
    check_degree(sigma, w.len())?;
    let odd: Vec<bool> = w.letters().iter().map(|l| l.is_odd()).collect();
    Ok(odd_inversions(sigma.images(), |k| odd[k]))
}

fn odd_inversions(images: &[u8], is_odd: impl Fn(usize) -> bool) -> u8 {
    let r = images.len();
    let mut parity = 0u8;
    for k in 0..r {
        if !is_odd(k) {
            continue;
        }
        for l in k + 1..r {
            if is_odd(l) && images[k] > images[l] {
                parity ^= 1;
            }
        }
    }
    parity
}

fn check_degree(sigma: &Permutation, r: usize) -> Result<()> {
    if sigma.degree() != r {
        return Err(Error::InvalidArgument(format!("permutation of degree {} on a word of length {r}", sigma.degree())));
    }
    Ok(())
}

/// The letter in position `j` moves to position `sigma(j)`; the sign comes
/// from the odd letters that pass each other.
pub fn act(sigma: &Permutation, w: &SuperWord) -> Result<(SuperWord, i8)> {
    let e = sign_exponent(sigma, w)?;
    let mut out = w.letters().to_vec();
    for (j, &l) in w.letters().iter().enumerate() {
        out[sigma.apply(j)] = l;
    }
    Ok((SuperWord::new(out), if e == 1 { -1 } else { 1 }))
}

/// Action on letter codes; returns whether the sign is negative.
#[inline]
pub(crate) fn act_codes(alphabet: Alphabet, images: &[u8], w: &[u8], out: &mut [u8]) -> bool {
    for (j, &c) in w.iter().enumerate() {
        out[images[j] as usize] = c;
    }
    odd_inversions(images, |k| alphabet.is_odd(w[k])) == 1
}

/// `(Σ counts)! / Π counts!`.
pub fn multinomial(counts: &[u32]) -> u64 {
    let mut total = 0u128;
    let mut acc = 1u128;
    for &c in counts {
        for i in 1..=c as u128 {
            total += 1;
            acc = acc * total / i;
        }
    }
    u64::try_from(acc).expect("multinomial exceeds u64")
}

/// All words of one weight, in lexicographic order of their letters.
#[derive(Clone, Debug)]
pub struct WeightBlock {
    alphabet: Alphabet,
    r: usize,
    weight: BiComposition,
    counts: Vec<u32>,
    letters: Vec<u8>,
}

impl WeightBlock {
    pub fn new(alphabet: Alphabet, weight: BiComposition) -> Result<Self> {
        if weight.even.len() != alphabet.m as usize || weight.odd.len() != alphabet.n as usize {
            return Err(Error::InvalidArgument(format!("weight {weight} does not fit {}|{}", alphabet.m, alphabet.n)));
        }
        let counts = weight.concatenated();
        let r = weight.size() as usize;
        let mut word: Vec<u8> =
            counts.iter().enumerate().flat_map(|(c, &k)| std::iter::repeat_n(c as u8, k as usize)).collect();
        let dim = multinomial(&counts) as usize;
        let mut letters = Vec::with_capacity(dim * r);
        loop {
            letters.extend_from_slice(&word);
            if !next_multiset_permutation(&mut word) {
                break;
            }
        }
        debug_assert_eq!(letters.len(), dim * r);
        Ok(WeightBlock { alphabet, r, weight, counts, letters })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn weight(&self) -> &BiComposition {
        &self.weight
    }

    /// Occurrences of each letter code.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn dim(&self) -> usize {
        self.letters.len().checked_div(self.r).unwrap_or(1)
    }

    pub fn word_codes(&self, i: usize) -> &[u8] {
        &self.letters[i * self.r..(i + 1) * self.r]
    }

    pub fn word(&self, i: usize) -> SuperWord {
        SuperWord::from_codes(self.alphabet, self.word_codes(i))
    }

    pub fn words(&self) -> impl Iterator<Item = SuperWord> + '_ {
        (0..self.dim()).map(|i| self.word(i))
    }

    /// Position of a word in this block, by multiset-permutation ranking.
    pub fn index_of_codes(&self, w: &[u8]) -> Option<usize> {
        if w.len() != self.r {
            return None;
        }
        let mut left: Vec<u128> = self.counts.iter().map(|&c| c as u128).collect();
        let mut rest = self.r as u128;
        let mut arrangements = multinomial(&self.counts) as u128;
        let mut index = 0u128;
        for &c in w {
            let c = c as usize;
            if c >= left.len() || left[c] == 0 {
                return None;
            }
            for &k in &left[..c] {
                index += arrangements * k / rest;
            }
            arrangements = arrangements * left[c] / rest;
            left[c] -= 1;
            rest -= 1;
        }
        Some(index as usize)
    }

    pub fn index_of(&self, w: &SuperWord) -> Option<usize> {
        self.index_of_codes(&w.codes(self.alphabet).ok()?)
    }
}

fn next_multiset_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One block per weight of total size `r`, in decreasing lexicographic order
/// of weights.
pub fn weight_blocks(m: usize, n: usize, r: usize) -> Result<Vec<WeightBlock>> {
    let alphabet = Alphabet::new(m, n)?;
    enumerate_bicompositions(m, n, r as u32).into_iter().map(|w| WeightBlock::new(alphabet, w)).collect()
}

/// A signed permutation matrix: column `j` has its single entry in row
/// `target[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutationMatrix {
    target: Vec<u32>,
    negative: Vec<bool>,
}

impl SignedPermutationMatrix {
    pub fn identity(dim: usize) -> Self {
        SignedPermutationMatrix { target: (0..dim as u32).collect(), negative: vec![false; dim] }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// `(row, sign)` of the entry in column `j`.
    pub fn entry(&self, j: usize) -> (usize, i8) {
        (self.target[j] as usize, if self.negative[j] { -1 } else { 1 })
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &SignedPermutationMatrix) -> SignedPermutationMatrix {
        assert_eq!(self.dim(), other.dim());
        let (target, negative) = (0..other.dim())
            .map(|j| {
                let mid = other.target[j] as usize;
                (self.target[mid], self.negative[mid] ^ other.negative[j])
            })
            .unzip();
        SignedPermutationMatrix { target, negative }
    }

    pub fn to_matrix<T: Clone + Zero + One + Neg<Output = T>>(&self) -> SparseMatrix<T> {
        SparseMatrix::from_triplets(
            self.dim(),
            self.dim(),
            (0..self.dim()).map(|j| {
                let (i, s) = self.entry(j);
                (i, j, if s < 0 { -T::one() } else { T::one() })
            }),
        )
    }
}

/// The matrix of `sigma` on one block.
pub fn phi_matrix_block(sigma: &Permutation, block: &WeightBlock) -> Result<SignedPermutationMatrix> {
    check_degree(sigma, block.degree())?;
    let dim = block.dim();
    let mut target = Vec::with_capacity(dim);
    let mut negative = Vec::with_capacity(dim);
    let mut buf = vec![0u8; block.degree()];
    for j in 0..dim {
        let neg = act_codes(block.alphabet, sigma.images(), block.word_codes(j), &mut buf);
        target.push(block.index_of_codes(&buf).expect("action preserves weight") as u32);
        negative.push(neg);
    }
    Ok(SignedPermutationMatrix { target, negative })
}

/// Block-diagonal endomorphisms, flattened: coordinate `(i, j)` of block `b`
/// sits at `offset(b) + i·dim_b + j`.
#[derive(Clone, Debug)]
pub struct BlockEndoSpace {
    blocks: Vec<WeightBlock>,
    offsets: Vec<usize>,
    total: usize,
}

impl BlockEndoSpace {
    pub fn new(blocks: Vec<WeightBlock>) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut total = 0;
        for b in &blocks {
            offsets.push(total);
            total += b.dim() * b.dim();
        }
        BlockEndoSpace { blocks, offsets, total }
    }

    pub fn blocks(&self) -> &[WeightBlock] {
        &self.blocks
    }

    pub fn offset(&self, b: usize) -> usize {
        self.offsets[b]
    }

    pub fn coord(&self, b: usize, i: usize, j: usize) -> usize {
        self.offsets[b] + i * self.blocks[b].dim() + j
    }

    /// Total number of coordinates.
    pub fn dim(&self) -> usize {
        self.total
    }

    /// Inverse of [`Self::coord`].
    pub fn locate(&self, coord: usize) -> (usize, usize, usize) {
        let b = self.offsets.partition_point(|&o| o <= coord) - 1;
        let d = self.blocks[b].dim();
        let local = coord - self.offsets[b];
        (b, local / d, local % d)
    }

    pub fn block_of_weight(&self, weight: &BiComposition) -> Option<usize> {
        self.blocks.iter().position(|b| b.weight() == weight)
    }
}
