//! The commutant of the commutant of the symmetric group action.

use rustc_hash::FxHashMap;

use super::{block_index, decode, encode, rank_in_characteristic};
use crate::error::{check_limit, Error, Result};
use crate::exact::{SparseMatrix, SparseRow};
use crate::limits::Limits;
use crate::superspace::{act_codes, weight_blocks, Alphabet, BlockEndoSpace, Permutation};

fn check_centralizer_size(m: usize, n: usize, r: usize, limits: &Limits) -> Result<()> {
    check_limit("r", r as u128, limits.centralizer_max_r as u128)?;
    check_limit("(m+n)^r", ((m + n) as u128).saturating_pow(r as u32), limits.centralizer_max_words)
}

/// A basis of all endomorphisms of `V^⊗r` commuting with every `Φ(σ)`, as
/// integer matrices on the full word basis (valid over `F_p`).
///
/// Conjugation by `Φ(σ)` permutes the matrix units `E_{u,w}` up to sign, so
/// the fixed space is spanned by signed orbit sums. An orbit contributes
/// nothing when some element maps a unit to its own negative, unless `p = 2`.
pub fn first_commutant(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<Vec<SparseMatrix<i64>>> {
    check_centralizer_size(m, n, r, limits)?;
    let alphabet = Alphabet::new(m, n)?;
    let size = m + n;
    let dim = size.pow(r as u32);
    let perms: Vec<Permutation> = Permutation::all(r).collect();
    let pair_letters = size * size;
    let mut out = Vec::new();
    // Orbits of pairs of words are multisets of column pairs (u_i, w_i);
    // walk them as nondecreasing sequences.
    let mut columns = vec![0usize; r];
    let (mut u, mut w) = (vec![0u8; r], vec![0u8; r]);
    let (mut su, mut sw) = (vec![0u8; r], vec![0u8; r]);
    loop {
        for (i, &c) in columns.iter().enumerate() {
            u[i] = (c / size) as u8;
            w[i] = (c % size) as u8;
        }
        let mut orbit: FxHashMap<(u32, u32), bool> = FxHashMap::default();
        let mut consistent = true;
        for s in &perms {
            let negative = act_codes(alphabet, s.images(), &u, &mut su) ^ act_codes(alphabet, s.images(), &w, &mut sw);
            let key = (encode(&su, size) as u32, encode(&sw, size) as u32);
            if let Some(&seen) = orbit.get(&key) {
                if seen != negative && p != 2 {
                    consistent = false;
                    break;
                }
            } else {
                orbit.insert(key, negative);
            }
        }
        if consistent {
            let triplets = orbit.into_iter().map(|((i, j), neg)| (i as usize, j as usize, if neg { -1 } else { 1 }));
            out.push(SparseMatrix::from_triplets(dim, dim, triplets));
        }
        let Some(i) = (0..r).rev().find(|&i| columns[i] + 1 < pair_letters) else {
            break;
        };
        let next = columns[i] + 1;
        columns[i..].fill(next);
    }
    Ok(out)
}

/// Dimension of the commutant, inside block-diagonal endomorphisms, of
/// [`first_commutant`]. Over `F_p`, or over the rationals for `p = 0`.
pub fn double_centralizer_dim(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<usize> {
    if p != 0 && !crate::exact::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let first = first_commutant(m, n, r, p, limits)?;
    let space = BlockEndoSpace::new(weight_blocks(m, n, r)?);
    let blocks = space.blocks();
    let size = m + n;
    let dim = size.pow(r as u32);
    // Block and position of every word.
    let index = block_index(blocks);
    let mut block_of = vec![0u32; dim];
    let mut local_of = vec![0u32; dim];
    let mut word = vec![0u8; r];
    let mut counts = vec![0u32; size];
    for g in 0..dim {
        decode(g, size, &mut word);
        counts.fill(0);
        for &c in &word {
            counts[c as usize] += 1;
        }
        let b = index[&counts];
        block_of[g] = b as u32;
        local_of[g] = blocks[b].index_of_codes(&word).expect("word lies in its weight block") as u32;
    }
    let members: Vec<Vec<u32>> =
        blocks.iter().map(|b| (0..b.dim()).map(|i| encode(b.word_codes(i), size) as u32).collect()).collect();

    let mut rows: Vec<SparseRow<i64>> = Vec::new();
    let mut equations: FxHashMap<(u32, u32), Vec<(u32, i64)>> = FxHashMap::default();
    for c in &first {
        equations.clear();
        for (u, w, &s) in c.entries() {
            // (Y c)[x, w] picks up Y[x, u] c[u, w].
            let bu = block_of[u] as usize;
            for &x in &members[bu] {
                let coord = space.coord(bu, local_of[x as usize] as usize, local_of[u] as usize);
                equations.entry((x, w as u32)).or_default().push((coord as u32, s));
            }
            // (c Y)[u, z] picks up c[u, w] Y[w, z].
            let bw = block_of[w] as usize;
            for &z in &members[bw] {
                let coord = space.coord(bw, local_of[w] as usize, local_of[z as usize] as usize);
                equations.entry((u as u32, z)).or_default().push((coord as u32, -s));
            }
        }
        for (_, mut eq) in equations.drain() {
            eq.sort_unstable_by_key(|e| e.0);
            let mut merged: SparseRow<i64> = Vec::with_capacity(eq.len());
            for (col, v) in eq {
                match merged.last_mut() {
                    Some(last) if last.0 == col => last.1 += v,
                    _ => merged.push((col, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            if !merged.is_empty() {
                rows.push(merged);
            }
        }
    }
    let rank = rank_in_characteristic(space.dim(), rows, p)?;
    Ok(space.dim() - rank)
}
