//! Faithfulness of the tensor power through the centre of the group algebra.
//!
//! The group algebra of `S_r` is split symmetric over every prime field, so
//! each nonzero two-sided ideal contains a nonzero central element. The
//! action is therefore faithful exactly when the class sums act linearly
//! independently. A class sum commutes with the action, and every weight
//! block is generated by its sorted word `w`, so it suffices to record the
//! coefficients of `C·w` for each class sum `C`. Those coefficients are
//! constant up to sign along orbits of the stabiliser `H` of `w`, so one row
//! per orbit (a contingency table of letter counts) is enough.
//!
//! A row sums signed cycle types over a coset of `H`. Seen as a transition
//! system on the letters, the permutation picks, at each letter, a bijection
//! from the positions holding it in `w` to the positions receiving it. The
//! bijections of all letters but the most frequent one are enumerated; the
//! remaining letter only sees loops through itself, and the signed sum over
//! its bijections depends on nothing but the loop lengths.

use num_integer::binomial;
use rustc_hash::FxHashMap;

use super::perm::factorial;
use super::phi::{essential_weights, essential_word_count};
use crate::combinatorics::{enumerate_partitions, BiComposition};
use crate::error::{check_limit, Error, Result};
use crate::exact::{Field, IncrementalEchelon, PrimeField, Rationals};
use crate::limits::Limits;

/// Largest degree handled by the packed cycle-type table.
pub const MAX_FAITHFUL_DEGREE: usize = 16;

/// Outcome of the faithfulness test at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulnessCheck {
    pub r: usize,
    pub faithful: bool,
    /// Dimension of the image of the centre.
    pub central_rank: usize,
    /// Number of conjugacy classes of `S_r`.
    pub classes: usize,
    pub blocks_examined: usize,
}

/// Cycle types packed as mixed-radix counts of cycles of each length `>= 2`.
struct ClassTable {
    weight: [u32; MAX_FAITHFUL_DEGREE + 1],
    table: Vec<u16>,
    /// Whether each class consists of odd permutations.
    odd: Vec<bool>,
}

impl ClassTable {
    fn new(r: usize) -> Self {
        let mut weight = [0u32; MAX_FAITHFUL_DEGREE + 1];
        let mut size = 1u32;
        for len in 2..=r {
            weight[len] = size;
            size *= (r / len) as u32 + 1;
        }
        let partitions = enumerate_partitions(r as u32);
        let mut table = vec![u16::MAX; size as usize];
        for (idx, lambda) in partitions.iter().enumerate() {
            let key: u32 = lambda.parts().iter().map(|&x| weight[x as usize]).sum();
            table[key as usize] = idx as u16;
        }
        let odd = partitions.iter().map(|l| (r - l.len()) % 2 == 1).collect();
        ClassTable { weight, table, odd }
    }

    fn classes(&self) -> usize {
        self.odd.len()
    }

    #[inline]
    fn class(&self, key: u32) -> usize {
        self.table[key as usize] as usize
    }

    /// Key of the cycles through positions not yet `seen`.
    #[inline]
    fn key_of_rest(&self, images: &[u8], r: usize, mut seen: u32) -> u32 {
        let mut key = 0u32;
        for start in 0..r {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            loop {
                seen |= 1 << i;
                i = images[i] as usize;
                len += 1;
                if i == start {
                    break;
                }
            }
            key += self.weight[len];
        }
        key
    }
}

/// Row space of the recorded vectors, with a kernel basis kept alongside so
/// that membership is a handful of dot products.
struct SpanTracker<F: Field> {
    field: F,
    echelon: IncrementalEchelon<F>,
    annihilator: Vec<Vec<F::Elem>>,
}

impl<F: Field> SpanTracker<F> {
    fn new(field: F, width: usize) -> Self {
        let echelon = IncrementalEchelon::new(field.clone(), width);
        let annihilator = echelon.orthogonal_complement();
        SpanTracker { field, echelon, annihilator }
    }

    fn is_full(&self) -> bool {
        self.annihilator.is_empty()
    }

    fn add(&mut self, row: &[i64]) {
        if self.is_full() || row.iter().all(|&x| x == 0) {
            return;
        }
        let f = &self.field;
        let v: Vec<F::Elem> = row.iter().map(|&x| f.from_i64(x)).collect();
        let inside = self.annihilator.iter().all(|k| {
            let dot = k.iter().zip(&v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
            f.is_zero(&dot)
        });
        if !inside {
            self.echelon.insert(v);
            self.annihilator = self.echelon.orthogonal_complement();
        }
    }
}

/// Signed sums over the ways of closing loops through one letter, as
/// `(partial cycle key, coefficient)` pairs, memoised on the sorted lengths.
#[derive(Default)]
struct LoopSums {
    memo: FxHashMap<(u128, bool), Vec<(u32, i64)>>,
}

impl LoopSums {
    fn get(&mut self, classes: &ClassTable, lengths: &[u8], odd: bool) -> &[(u32, i64)] {
        let packed = lengths.iter().fold(0u128, |acc, &l| acc << 5 | l as u128);
        self.memo.entry((packed, odd)).or_insert_with(|| loop_sums(classes, lengths, odd))
    }
}

/// `Σ_τ sign(τ)^odd · [cycle type]` over permutations `τ` of the loops, where
/// a cycle of `τ` is as long as its loops together. `lengths` is sorted.
fn loop_sums(classes: &ClassTable, lengths: &[u8], odd: bool) -> Vec<(u32, i64)> {
    let mut items: Vec<(usize, usize)> = Vec::new();
    for &l in lengths {
        match items.last_mut() {
            Some((len, k)) if *len == l as usize => *k += 1,
            _ => items.push((l as usize, 1)),
        }
    }
    let mut out = FxHashMap::default();
    split_cycles(classes, &mut items, 0, 1, odd, &mut out);
    let mut out: Vec<(u32, i64)> = out.into_iter().filter(|&(_, c)| c != 0).collect();
    out.sort_unstable();
    out
}

/// Removes the cycle through the first remaining loop in every possible way.
fn split_cycles(
    classes: &ClassTable,
    items: &mut [(usize, usize)],
    key: u32,
    coeff: i64,
    odd: bool,
    out: &mut FxHashMap<u32, i64>,
) {
    let Some(first) = items.iter().position(|&(_, k)| k > 0) else {
        *out.entry(key).or_default() += coeff;
        return;
    };
    items[first].1 -= 1;
    let mut take = vec![0; items.len()];
    let head = Cycle { length: items[first].0, size: 1, ways: coeff };
    let mut walk = Companions { classes, take: &mut take, key, odd, out };
    walk.choose(items, 0, head);
    items[first].1 += 1;
}

#[derive(Clone, Copy)]
struct Cycle {
    length: usize,
    size: usize,
    ways: i64,
}

/// Chooses how many loops of each length join the current cycle.
struct Companions<'a> {
    classes: &'a ClassTable,
    take: &'a mut [usize],
    key: u32,
    odd: bool,
    out: &'a mut FxHashMap<u32, i64>,
}

impl Companions<'_> {
    fn choose(&mut self, items: &mut [(usize, usize)], idx: usize, cycle: Cycle) {
        if idx == items.len() {
            // (size - 1)! cyclic orders, each of sign (-1)^(size - 1).
            let mut ways = cycle.ways * factorial(cycle.size - 1) as i64;
            if self.odd && cycle.size.is_multiple_of(2) {
                ways = -ways;
            }
            for (item, &t) in items.iter_mut().zip(self.take.iter()) {
                item.1 -= t;
            }
            let key = self.key + self.classes.weight[cycle.length];
            split_cycles(self.classes, items, key, ways, self.odd, self.out);
            for (item, &t) in items.iter_mut().zip(self.take.iter()) {
                item.1 += t;
            }
            return;
        }
        let (len, avail) = items[idx];
        for t in 0..=avail {
            self.take[idx] = t;
            let next = Cycle {
                length: cycle.length + t * len,
                size: cycle.size + t,
                ways: cycle.ways * binomial(avail as i64, t as i64),
            };
            self.choose(items, idx + 1, next);
        }
        self.take[idx] = 0;
    }
}

fn odd_permutation(images: &[u8]) -> bool {
    let mut seen = 0u32;
    let mut cycles = 0;
    for start in 0..images.len() {
        if seen >> start & 1 == 0 {
            cycles += 1;
            let mut i = start;
            while seen >> i & 1 == 0 {
                seen |= 1 << i;
                i = images[i] as usize;
            }
        }
    }
    (images.len() - cycles) % 2 == 1
}

/// One weight block's stabiliser structure: letters present, with their
/// multiplicity and parity, in sorted order.
struct BlockShape {
    counts: Vec<usize>,
    odd: Vec<bool>,
    r: usize,
}

impl BlockShape {
    fn new(weight: &BiComposition, m: usize) -> Self {
        let all = weight.concatenated();
        let (counts, odd) =
            all.iter().enumerate().filter(|(_, &c)| c > 0).map(|(x, &c)| (c as usize, x >= m)).unzip();
        BlockShape { counts, odd, r: weight.size() as usize }
    }

    fn dim(&self) -> u64 {
        super::block::multinomial(&self.counts.iter().map(|&c| c as u32).collect::<Vec<_>>())
    }

    fn starts(&self) -> Vec<usize> {
        self.counts
            .iter()
            .scan(0, |acc, &c| {
                let s = *acc;
                *acc += c;
                Some(s)
            })
            .collect()
    }

    /// Calls `visit` with every table `t[y][x]`: how many of the positions of
    /// letter `y` in the sorted word receive letter `x`.
    fn for_each_table(&self, visit: &mut impl FnMut(&[usize]) -> bool) {
        let k = self.counts.len();
        let mut t = vec![0usize; k * k];
        let mut col_left = self.counts.clone();
        fn fill(
            shape: &BlockShape,
            cell: usize,
            row_left: usize,
            t: &mut [usize],
            col_left: &mut [usize],
            visit: &mut impl FnMut(&[usize]) -> bool,
        ) -> bool {
            let k = shape.counts.len();
            let (y, x) = (cell / k, cell % k);
            if x == k - 1 {
                // Last cell of the row takes what is left.
                if row_left > col_left[x] {
                    return true;
                }
                t[cell] = row_left;
                col_left[x] -= row_left;
                let go_on = if y == k - 1 {
                    visit(t)
                } else {
                    fill(shape, cell + 1, shape.counts[y + 1], t, col_left, visit)
                };
                col_left[x] += row_left;
                return go_on;
            }
            for v in (0..=row_left.min(col_left[x])).rev() {
                t[cell] = v;
                col_left[x] -= v;
                let go_on = fill(shape, cell + 1, row_left - v, t, col_left, visit);
                col_left[x] += v;
                if !go_on {
                    return false;
                }
            }
            true
        }
        if k > 0 {
            fill(self, 0, self.counts[0], &mut t, &mut col_left, visit);
        }
    }

    /// Two positions of one letter that receive one letter of the other
    /// parity can be swapped on both sides, which negates the row.
    fn row_vanishes(&self, t: &[usize]) -> bool {
        let k = self.counts.len();
        (0..k * k).any(|cell| t[cell] >= 2 && self.odd[cell / k] != self.odd[cell % k])
    }
}

/// Sums `±1` into `acc[class(σ)]` over all `σ` taking the sorted word to the
/// word described by `t`, signed by the odd letters' bijections.
fn accumulate_fiber(
    shape: &BlockShape,
    starts: &[usize],
    t: &[usize],
    classes: &ClassTable,
    loops: &mut LoopSums,
    acc: &mut [i64],
) {
    let k = shape.counts.len();
    let r = shape.r;
    // The target word: in the range of letter y, letters x ascending.
    let mut targets: Vec<Vec<u8>> = vec![Vec::new(); k];
    for y in 0..k {
        let mut pos = starts[y];
        for (x, target) in targets.iter_mut().enumerate() {
            for _ in 0..t[y * k + x] {
                target.push(pos as u8);
                pos += 1;
            }
        }
    }
    let mut images = [0u8; MAX_FAITHFUL_DEGREE];
    for x in 0..k {
        images[starts[x]..starts[x] + shape.counts[x]].copy_from_slice(&targets[x]);
    }
    let last = (0..k).max_by_key(|&x| shape.counts[x]).expect("nonempty block");
    let (first_in, width, last_odd) = (starts[last], shape.counts[last], shape.odd[last]);
    let inside = first_in..first_in + width;
    let last_mask = ((1u32 << width) - 1) << first_in;
    let out_slots = &targets[last];
    let levels: Vec<(usize, usize, bool)> = (0..k)
        .filter(|&x| x != last && shape.counts[x] > 1)
        .map(|x| (starts[x], shape.counts[x], shape.odd[x]))
        .collect();
    let mut negative = false;
    let mut lengths = [0u8; MAX_FAITHFUL_DEGREE];
    let mut ends = [0u8; MAX_FAITHFUL_DEGREE];
    permute_levels(&levels, &mut images, &mut negative, &mut |img, neg| {
        // Walk from each position receiving the last letter to the next
        // position holding it.
        let mut seen = last_mask;
        for (j, &q) in out_slots.iter().enumerate() {
            let mut pos = q as usize;
            let mut len = 1u8;
            while !inside.contains(&pos) {
                seen |= 1 << pos;
                pos = img[pos] as usize;
                len += 1;
            }
            ends[j] = (pos - first_in) as u8;
            lengths[pos - first_in] = len;
        }
        let rest = classes.key_of_rest(img, r, seen);
        let negative = neg ^ (last_odd && odd_permutation(&ends[..width]));
        let lens = &mut lengths[..width];
        lens.sort_unstable_by(|a, b| b.cmp(a));
        for &(key, c) in loops.get(classes, lens, last_odd) {
            acc[classes.class(rest + key)] += if negative { -c } else { c };
        }
    });
}

/// Heap's algorithm on each level's slice, nested; `negative` flips with
/// every swap inside an odd slice.
fn permute_levels(
    levels: &[(usize, usize, bool)],
    images: &mut [u8; MAX_FAITHFUL_DEGREE],
    negative: &mut bool,
    visit: &mut impl FnMut(&[u8], bool),
) {
    let Some((&(s, len, odd), rest)) = levels.split_first() else {
        visit(images, *negative);
        return;
    };
    let mut c = [0usize; MAX_FAITHFUL_DEGREE];
    permute_levels(rest, images, negative, visit);
    let mut i = 1;
    while i < len {
        if c[i] < i {
            if i % 2 == 0 {
                images.swap(s, s + i);
            } else {
                images.swap(s + c[i], s + i);
            }
            if odd {
                *negative = !*negative;
            }
            permute_levels(rest, images, negative, visit);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Swapping the even and odd letters tensors a block with the sign
/// representation, which multiplies each class sum by its sign. Returns the
/// weights still to be examined and whether each one stands for its swap too.
fn pair_twisted(m: usize, n: usize, weights: Vec<BiComposition>) -> Vec<(BiComposition, bool)> {
    if m != n {
        return weights.into_iter().map(|w| (w, false)).collect();
    }
    let key = |w: &BiComposition| (w.even.parts().to_vec(), w.odd.parts().to_vec());
    weights
        .into_iter()
        .filter_map(|w| {
            let (own, twin) = (key(&w), (w.odd.parts().to_vec(), w.even.parts().to_vec()));
            match own.cmp(&twin) {
                std::cmp::Ordering::Less => Some((w, true)),
                std::cmp::Ordering::Equal => Some((w, false)),
                std::cmp::Ordering::Greater => None,
            }
        })
        .collect()
}

fn run<F: Field>(field: F, m: usize, n: usize, r: usize) -> FaithfulnessCheck {
    let classes = ClassTable::new(r);
    let mut tracker = SpanTracker::new(field, classes.classes());
    let mut shapes: Vec<(BlockShape, bool)> = pair_twisted(m, n, essential_weights(m, n, r))
        .into_iter()
        .map(|(w, twinned)| (BlockShape::new(&w, m), twinned))
        .collect();
    // Cheap blocks first: faithful cases usually finish early.
    shapes.sort_by_cached_key(|(s, _)| s.dim());
    let mut loops = LoopSums::default();
    let mut blocks_examined = 0;
    let mut acc = vec![0i64; classes.classes()];
    let mut twisted = vec![0i64; classes.classes()];
    for (shape, twinned) in &shapes {
        if tracker.is_full() {
            break;
        }
        blocks_examined += 1 + *twinned as usize;
        let starts = shape.starts();
        shape.for_each_table(&mut |t| {
            if shape.row_vanishes(t) {
                return true;
            }
            acc.iter_mut().for_each(|a| *a = 0);
            accumulate_fiber(shape, &starts, t, &classes, &mut loops, &mut acc);
            tracker.add(&acc);
            if *twinned {
                for ((tw, &a), &odd) in twisted.iter_mut().zip(&acc).zip(&classes.odd) {
                    *tw = if odd { -a } else { a };
                }
                tracker.add(&twisted);
            }
            !tracker.is_full()
        });
    }
    FaithfulnessCheck {
        r,
        faithful: tracker.is_full(),
        central_rank: tracker.echelon.rank(),
        classes: classes.classes(),
        blocks_examined,
    }
}

/// Decides whether the group algebra of `S_r` acts faithfully on the `r`-th
/// tensor power in characteristic `p` (`0` for the rationals).
pub fn faithfulness(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<FaithfulnessCheck> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    check_limit("r", r as u128, limits.faithful_max_r.min(MAX_FAITHFUL_DEGREE) as u128)?;
    check_limit("faithfulness work", essential_word_count(m, n, r), limits.faithful_max_work)?;
    Ok(if p == 0 { run(Rationals, m, n, r) } else { run(PrimeField::new(p)?, m, n, r) })
}

pub fn is_faithful(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<bool> {
    Ok(faithfulness(m, n, r, p, limits)?.faithful)
}

/// Largest `r <= r_max` at which the action is faithful. Faithfulness fails
/// from some degree on, so the scan stops at the first failure.
pub fn max_faithful_r(m: usize, n: usize, p: u64, r_max: usize, limits: &Limits) -> Result<usize> {
    for r in 1..=r_max {
        if !is_faithful(m, n, r, p, limits)? {
            return Ok(r - 1);
        }
    }
    Err(Error::ThresholdBeyondLimit { r_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superspace::{act, Permutation, SuperWord};

    /// Signed cycle-type counts of `σ·w = ±u` by brute force over all of `S_r`.
    fn brute_rows(m: usize, n: usize, weight: &BiComposition) -> Vec<Vec<i64>> {
        let alphabet = crate::superspace::Alphabet::new(m, n).unwrap();
        let block = crate::superspace::WeightBlock::new(alphabet, weight.clone()).unwrap();
        let r = block.degree();
        let classes = ClassTable::new(r);
        let w: SuperWord = block.word(0);
        let mut rows = vec![vec![0i64; classes.classes()]; block.dim()];
        for sigma in Permutation::all(r) {
            let (u, sign) = act(&sigma, &w).unwrap();
            let key = classes.key_of_rest(sigma.images(), r, 0);
            rows[block.index_of(&u).unwrap()][classes.class(key)] += sign as i64;
        }
        rows
    }

    fn fast_rows(m: usize, weight: &BiComposition) -> Vec<Vec<i64>> {
        let shape = BlockShape::new(weight, m);
        let classes = ClassTable::new(shape.r);
        let starts = shape.starts();
        let mut loops = LoopSums::default();
        let mut rows = Vec::new();
        shape.for_each_table(&mut |t| {
            let mut acc = vec![0i64; classes.classes()];
            accumulate_fiber(&shape, &starts, t, &classes, &mut loops, &mut acc);
            if shape.row_vanishes(t) {
                assert!(acc.iter().all(|&a| a == 0), "row for {t:?} should vanish");
            }
            rows.push(acc);
            true
        });
        rows
    }

    /// Nonzero rows up to sign, as a sorted set.
    fn sorted(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        rows.retain(|r| r.iter().any(|&x| x != 0));
        for row in &mut rows {
            if row.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
        rows.sort();
        rows.dedup();
        rows
    }

    #[test]
    fn orbit_rows_match_brute_force() {
        let cases = [
            (2, 1, vec![2, 1], vec![2]),
            (1, 1, vec![3], vec![3]),
            (2, 2, vec![2, 1], vec![1, 1]),
            (1, 2, vec![2], vec![2, 2]),
            (2, 1, vec![3, 1], vec![2]),
            (1, 1, vec![1], vec![5]),
            (2, 0, vec![4, 2], vec![]),
            (0, 2, vec![], vec![3, 3]),
        ];
        for (m, n, even, odd) in cases {
            let w = BiComposition::new(even, odd);
            assert_eq!(sorted(fast_rows(m, &w)), sorted(brute_rows(m, n, &w)), "weight {w}");
        }
    }

    #[test]
    fn loop_sums_count_permutations() {
        let classes = ClassTable::new(6);
        let total: i64 = loop_sums(&classes, &[2, 1, 1, 1, 1], false).iter().map(|&(_, c)| c).sum();
        assert_eq!(total, 120);
        // The signed sum over S_c of a nonempty set is zero for c >= 2.
        let signed: i64 = loop_sums(&classes, &[1, 1, 1], true).iter().map(|&(_, c)| c).sum();
        assert_eq!(signed, 0);
    }

    #[test]
    fn thresholds_at_small_sizes() {
        let limits = Limits::default();
        assert_eq!(max_faithful_r(1, 1, 3, 10, &limits).unwrap(), 3);
        assert_eq!(max_faithful_r(2, 1, 3, 10, &limits).unwrap(), 4);
        assert_eq!(max_faithful_r(2, 1, 5, 10, &limits).unwrap(), 5);
        assert_eq!(max_faithful_r(1, 1, 2, 10, &limits).unwrap(), 2);
    }

    #[test]
    fn classical_threshold_without_odd_letters() {
        // Only the skew symmetrizer of degree m + 1 can die, and does.
        let limits = Limits::default();
        assert_eq!(max_faithful_r(2, 0, 3, 8, &limits).unwrap(), 2);
        assert_eq!(max_faithful_r(0, 2, 5, 8, &limits).unwrap(), 2);
    }
}
