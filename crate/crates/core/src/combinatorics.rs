//! Partitions, compositions and bi-compositions, hook partitions and their
//! p-regularisations, and the partition witnesses used by the threshold bounds.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part counted from 1; zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1, "parts are indexed from 1");
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|j| self.0.iter().filter(|&&x| x >= j).count() as u32).collect())
    }

    /// No part is repeated `p` or more times.
    pub fn is_p_regular(&self, p: u32) -> bool {
        if p == 0 {
            return true;
        }
        let mut run = 0;
        let mut prev = 0;
        for &x in &self.0 {
            run = if x == prev { run + 1 } else { 1 };
            prev = x;
            if run >= p {
                return false;
            }
        }
        true
    }

    /// Length of the hook through cell `(i, j)`, both indexed from 1.
    fn hook_length(&self, conj: &Partition, i: usize, j: usize) -> u32 {
        let arm = self.part(i) - j as u32;
        let leg = conj.part(j) - i as u32;
        arm + leg + 1
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::default());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad part {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Fixed-length list of nonnegative parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiComposition {
    pub even: Composition,
    pub odd: Composition,
}

impl BiComposition {
    pub fn new(even: Vec<u32>, odd: Vec<u32>) -> Self {
        BiComposition { even: Composition(even), odd: Composition(odd) }
    }

    pub fn size(&self) -> u32 {
        self.even.size() + self.odd.size()
    }

    /// Even parts followed by odd parts.
    pub fn concatenated(&self) -> Vec<u32> {
        self.even.0.iter().chain(&self.odd.0).copied().collect()
    }
}

impl fmt::Display for BiComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |c: &Composition| c.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.even), join(&self.odd))
    }
}

/// All compositions of `r` with `k` parts, lexicographically decreasing.
pub fn enumerate_compositions(k: usize, r: u32) -> Vec<Composition> {
    fn go(k: usize, r: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if prefix.len() + 1 == k {
            prefix.push(r);
            out.push(Composition(prefix.clone()));
            prefix.pop();
            return;
        }
        for x in (0..=r).rev() {
            prefix.push(x);
            go(k, r - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if r == 0 {
            out.push(Composition(Vec::new()));
        }
        return out;
    }
    go(k, r, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All bi-compositions of total size `r` with `m` even and `n` odd parts,
/// lexicographically decreasing in the concatenated part list.
pub fn enumerate_bicompositions(m: usize, n: usize, r: u32) -> Vec<BiComposition> {
    enumerate_compositions(m + n, r)
        .into_iter()
        .map(|c| {
            let (even, odd) = c.0.split_at(m);
            BiComposition::new(even.to_vec(), odd.to_vec())
        })
        .collect()
}

/// All partitions of `r`, lexicographically decreasing.
pub fn enumerate_partitions(r: u32) -> Vec<Partition> {
    fn go(r: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if r == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for x in (1..=max.min(r)).rev() {
            prefix.push(x);
            go(r - x, x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(r, r, &mut Vec::new(), &mut out);
    out
}

/// The hook `(r - i, 1^i)`.
pub fn hook(r: u32, i: u32) -> Result<Partition> {
    if i >= r {
        return Err(Error::InvalidArgument(format!("hook leg {i} must be below {r}")));
    }
    let mut parts = vec![r - i];
    parts.extend(std::iter::repeat_n(1, i as usize));
    Ok(Partition(parts))
}

/// James' regularisation: every cell slides as far up its ladder as it can.
/// Cell `(i, j)` lies on ladder `i + (p - 1)(j - 1)`; `p = 0` is the identity.
pub fn p_regularize(lambda: &Partition, p: u32) -> Partition {
    if p == 0 {
        return lambda.clone();
    }
    let step = p as usize - 1;
    let mut per_ladder: BTreeMap<usize, usize> = BTreeMap::new();
    for (i0, &len) in lambda.0.iter().enumerate() {
        for j0 in 0..len as usize {
            *per_ladder.entry(i0 + 1 + step * j0).or_default() += 1;
        }
    }
    let mut rows: Vec<u32> = Vec::new();
    for (&ladder, &count) in &per_ladder {
        // Positions on the ladder from the top: column j has row ladder - step*(j-1).
        let top_col = (ladder - 1).checked_div(step).map_or(1, |c| c + 1);
        for col in (1..=top_col).rev().take(count) {
            let row = ladder - step * (col - 1);
            if rows.len() < row {
                rows.resize(row, 0);
            }
            rows[row - 1] += 1;
        }
    }
    let out = Partition::from_unsorted(rows.clone());
    debug_assert_eq!(out.0, rows, "ladder filling must produce a partition");
    out
}

/// Whether the hooks of legs `i > j` have the same p-regularisation. This is
/// the case exactly when `p` divides `r`, `i = (p - 1) r / p` and `j = i - 1`.
pub fn hook_regularization_collision(r: u32, p: u32, i: u32, j: u32) -> Result<bool> {
    if !(j < i && i < r) {
        return Err(Error::InvalidArgument(format!("need j < i < r, got r={r} i={i} j={j}")));
    }
    if p == 0 {
        return Ok(false);
    }
    Ok(r.is_multiple_of(p) && i == (p - 1) * (r / p) && j + 1 == i)
}

/// Consecutive differences and the last part are all below `p`.
pub fn is_p_restricted(lambda: &Partition, p: u32) -> bool {
    let parts = &lambda.0;
    parts.windows(2).all(|w| w[0] - w[1] < p) && parts.last().is_none_or(|&x| x < p)
}

/// The partition `(s^{m+1+a(p-s)}, b^{p-s})` where `n - s + 1 = a s + b`, `0 <= b < s`.
pub fn witness_partition(m: u32, n: u32, s: u32, p: u32) -> Result<Partition> {
    if s == 0 || s > (p.saturating_sub(1)).min(n + 1) {
        return Err(Error::InvalidArgument(format!(
            "s={s} must lie in 1..={} for m={m} n={n} p={p}",
            (p.saturating_sub(1)).min(n + 1)
        )));
    }
    let rest = n + 1 - s;
    let (a, b) = (rest / s, rest % s);
    let mut parts = vec![s; (m + 1 + a * (p - s)) as usize];
    if b > 0 {
        parts.extend(std::iter::repeat_n(b, (p - s) as usize));
    }
    Ok(Partition(parts))
}

/// Recursion `a_0 = m + 1`, `a_j = a_{j-1} + p - b_{j-1}`, `b_j = alpha_{a_j}`,
/// stopping before `a_j` would pass the last nonzero part.
pub fn claim1_sequence(alpha: &Partition, m: u32, p: u32) -> Result<(Vec<u32>, Vec<u32>)> {
    let h = alpha.len() as u32;
    if h <= m {
        return Err(Error::InvalidArgument(format!("{alpha} needs more than {m} parts")));
    }
    let mut a = vec![m + 1];
    let mut b = vec![alpha.part(m as usize + 1)];
    loop {
        let (last_a, last_b) = (*a.last().unwrap(), *b.last().unwrap());
        if last_b >= p {
            return Err(Error::InvalidArgument(format!(
                "{alpha}: part {last_b} at position {last_a} is not below p={p}"
            )));
        }
        let next = last_a + p - last_b;
        if next > h {
            break;
        }
        a.push(next);
        b.push(alpha.part(next as usize));
    }
    Ok((a, b))
}

/// Number of standard tableaux of shape `lambda`, by the hook length formula.
pub fn hook_dim(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let mut num: BigUint = (1..=lambda.size()).map(BigUint::from).product();
    let mut den = BigUint::one();
    for (i0, &len) in lambda.0.iter().enumerate() {
        for j in 1..=len as usize {
            den *= lambda.hook_length(&conj, i0 + 1, j);
        }
    }
    num /= den;
    num
}

/// Characteristic-zero dimension of the general linear supergroup invariants:
/// sum of `(f^lambda)^2` over partitions of `r` fitting in the `(m, n)` hook.
pub fn dim_endo_char0(m: u32, n: u32, r: u32) -> BigUint {
    enumerate_partitions(r)
        .iter()
        .filter(|l| l.part(m as usize + 1) <= n)
        .map(|l| {
            let f = hook_dim(l);
            &f * &f
        })
        .fold(BigUint::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn bicompositions_order_and_count() {
        let got: Vec<String> = enumerate_bicompositions(1, 1, 2).iter().map(|b| b.to_string()).collect();
        assert_eq!(got, ["(2|0)", "(1|1)", "(0|2)"]);
        let got: Vec<String> = enumerate_bicompositions(2, 1, 1).iter().map(|b| b.to_string()).collect();
        assert_eq!(got, ["(1,0|0)", "(0,1|0)", "(0,0|1)"]);
        assert_eq!(enumerate_bicompositions(2, 1, 5).len(), 21);
        assert_eq!(enumerate_bicompositions(0, 0, 0).len(), 1);
        assert!(enumerate_bicompositions(0, 0, 1).is_empty());
    }

    #[test]
    fn partitions_in_decreasing_order() {
        let got: Vec<String> = enumerate_partitions(4).iter().map(|p| p.to_string()).collect();
        assert_eq!(got, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        assert_eq!(enumerate_partitions(25).len(), 1958);
    }

    #[test]
    fn hooks() {
        assert_eq!(hook(5, 0).unwrap(), part("5"));
        assert_eq!(hook(5, 2).unwrap(), part("3,1,1"));
        assert_eq!(hook(3, 2).unwrap(), part("1,1,1"));
        assert!(hook(3, 3).is_err());
    }

    #[test]
    fn regularize_columns() {
        assert_eq!(p_regularize(&part("1,1,1,1,1,1"), 3), part("3,3"));
        assert_eq!(p_regularize(&part("1,1,1,1,1"), 3), part("3,2"));
        assert_eq!(p_regularize(&part("2,1,1"), 0), part("2,1,1"));
        assert_eq!(p_regularize(&part("4,2,1"), 3), part("4,2,1"));
        assert_eq!(p_regularize(&part("1,1"), 2), part("2"));
    }

    #[test]
    fn collision_examples() {
        assert!(hook_regularization_collision(6, 3, 4, 3).unwrap());
        assert!(!hook_regularization_collision(6, 3, 4, 2).unwrap());
        for i in 1..5 {
            for j in 0..i {
                assert!(!hook_regularization_collision(5, 3, i, j).unwrap());
            }
        }
    }

    #[test]
    fn restricted() {
        assert!(is_p_restricted(&part("2,2,1"), 3));
        assert!(!is_p_restricted(&part("3"), 3));
        assert!(!is_p_restricted(&part("5,1"), 3));
    }

    #[test]
    fn witnesses() {
        let (m, n, p) = (4, 3, 5);
        assert_eq!(witness_partition(m, n, 1, p).unwrap(), Partition(vec![1; (m + 1 + (p - 1) * n) as usize]));
        assert_eq!(witness_partition(m, n, n + 1, p).unwrap(), Partition(vec![n + 1; (m + 1) as usize]));
        assert!(witness_partition(m, n, 0, p).is_err());
        assert!(witness_partition(m, n, 5, p).is_err());
    }

    #[test]
    fn claim1_examples() {
        let mut parts = vec![3; 10];
        parts.extend([1, 1, 1]);
        let alpha = Partition::new(parts).unwrap();
        assert_eq!(claim1_sequence(&alpha, 7, 5).unwrap(), (vec![8, 10, 12], vec![3, 3, 1]));

        let m = 4;
        let alpha = Partition(vec![1; m as usize + 2]);
        assert_eq!(claim1_sequence(&alpha, m, 3).unwrap(), (vec![m + 1], vec![1]));
        let alpha = Partition(vec![1; 12]);
        assert_eq!(claim1_sequence(&alpha, 2, 3).unwrap(), (vec![3, 5, 7, 9, 11], vec![1; 5]));

        let alpha = part("4,2,2");
        assert_eq!(claim1_sequence(&alpha, 2, 5).unwrap(), (vec![3], vec![2]));
        assert!(claim1_sequence(&part("2,2"), 2, 5).is_err());
        assert!(claim1_sequence(&part("3,3"), 1, 3).is_err());
    }

    /// Counts standard tableaux by removing corners.
    fn count_tableaux(parts: &mut Vec<u32>) -> u64 {
        if parts.iter().all(|&x| x == 0) {
            return 1;
        }
        let mut total = 0;
        for i in 0..parts.len() {
            let below = parts.get(i + 1).copied().unwrap_or(0);
            if parts[i] > below {
                parts[i] -= 1;
                total += count_tableaux(parts);
                parts[i] += 1;
            }
        }
        total
    }

    #[test]
    fn hook_dims_match_tableau_count() {
        assert_eq!(hook_dim(&part("5")), BigUint::from(1u32));
        assert_eq!(hook_dim(&part("3,2")), BigUint::from(5u32));
        assert_eq!(hook_dim(&part("3,1,1")), BigUint::from(6u32));
        for r in 1..=9 {
            for l in enumerate_partitions(r) {
                assert_eq!(hook_dim(&l), BigUint::from(count_tableaux(&mut l.parts().to_vec())), "{l}");
            }
        }
    }

    #[test]
    fn char0_endo_dims() {
        assert_eq!(dim_endo_char0(2, 1, 5), BigUint::from(120u32));
        assert_eq!(dim_endo_char0(1, 1, 5), BigUint::from(70u32));
        assert_eq!(dim_endo_char0(4, 0, 4), BigUint::from(24u32));
        assert_eq!(dim_endo_char0(3, 2, 3), BigUint::from(6u32));
    }

    #[test]
    fn partition_parse_and_display() {
        assert_eq!(part("3,1,1").to_string(), "3,1,1");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("3,x".parse::<Partition>().is_err());
        assert_eq!(part("4,2,1").conjugate(), part("3,2,1,1"));
    }
}
