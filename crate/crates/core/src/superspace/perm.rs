use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0, .., r-1}`, stored by images. Ranked by Lehmer code, so
/// rank order is lexicographic order of the image list and the identity has
/// rank 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

/// Largest degree whose factorial fits the rank type.
pub const MAX_DEGREE: usize = 20;

pub fn factorial(r: usize) -> usize {
    (1..=r).product()
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Permutation((0..r as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let r = images.len();
        if r > MAX_DEGREE {
            return Err(Error::InvalidArgument(format!("degree {r} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; r];
        for &i in &images {
            if (i as usize) >= r || std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    /// The transposition of `i` and `j`.
    pub fn transposition(r: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(r);
        p.0.swap(i, j);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree());
        Permutation(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation(inv)
    }

    pub fn is_odd(&self) -> bool {
        let inversions: usize = (0..self.degree())
            .map(|k| (k + 1..self.degree()).filter(|&l| self.0[k] > self.0[l]).count())
            .sum();
        inversions % 2 == 1
    }

    pub fn sign(&self) -> i8 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    /// Cycle lengths, decreasing.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn rank(&self) -> usize {
        let r = self.degree();
        let mut rank = 0;
        for k in 0..r {
            let smaller = (k + 1..r).filter(|&l| self.0[l] < self.0[k]).count();
            rank = rank * (r - k) + smaller;
        }
        rank
    }

    pub fn unrank(r: usize, mut rank: usize) -> Result<Self> {
        if r > MAX_DEGREE || rank >= factorial(r) {
            return Err(Error::InvalidArgument(format!("rank {rank} out of range for degree {r}")));
        }
        let mut digits = vec![0usize; r];
        for k in (0..r).rev() {
            let base = r - k;
            digits[k] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u8> = (0..r as u8).collect();
        Ok(Permutation(digits.into_iter().map(|d| pool.remove(d)).collect()))
    }

    /// Every permutation of degree `r`, in rank order.
    pub fn all(r: usize) -> impl Iterator<Item = Permutation> {
        let mut next = Some(Self::identity(r));
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut v = cur.0.clone();
            if next_lexicographic(&mut v) {
                next = Some(Permutation(v));
            }
            Some(cur)
        })
    }
}

fn next_lexicographic(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// One-line notation with 1-based images: `[2,1,3]`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
