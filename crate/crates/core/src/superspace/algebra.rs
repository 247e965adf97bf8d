use std::fmt::{self, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::perm::{factorial, Permutation, MAX_DEGREE};
use crate::error::{Error, Result};

/// An element of the group algebra of `S_r`, one coefficient per permutation
/// in Lehmer rank order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement<T> {
    r: usize,
    coeffs: Vec<T>,
}

impl<T: Clone + Zero> GroupAlgebraElement<T> {
    pub fn new(r: usize, coeffs: Vec<T>) -> Result<Self> {
        if r > MAX_DEGREE || coeffs.len() != factorial(r) {
            return Err(Error::InvalidArgument(format!(
                "degree {r} needs {} coefficients, got {}",
                factorial(r),
                coeffs.len()
            )));
        }
        Ok(GroupAlgebraElement { r, coeffs })
    }

    pub fn zero(r: usize) -> Self {
        GroupAlgebraElement { r, coeffs: vec![T::zero(); factorial(r)] }
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, sigma: &Permutation) -> &T {
        &self.coeffs[sigma.rank()]
    }

    pub fn set(&mut self, sigma: &Permutation, value: T) {
        self.coeffs[sigma.rank()] = value;
    }

    /// Nonzero coefficients with their ranks.
    pub fn support(&self) -> impl Iterator<Item = (usize, &T)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn map<U: Clone + Zero>(&self, f: impl FnMut(&T) -> U) -> GroupAlgebraElement<U> {
        GroupAlgebraElement { r: self.r, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One> GroupAlgebraElement<T> {
    pub fn basis(sigma: &Permutation) -> Self {
        let mut x = Self::zero(sigma.degree());
        x.set(sigma, T::one());
        x
    }

    pub fn identity(r: usize) -> Self {
        Self::basis(&Permutation::identity(r))
    }
}

/// `Σ sign(σ) σ`.
pub fn skew_symmetrizer<T: Clone + Zero + One + Neg<Output = T>>(r: usize) -> GroupAlgebraElement<T> {
    let coeffs = Permutation::all(r).map(|s| if s.is_odd() { -T::one() } else { T::one() }).collect();
    GroupAlgebraElement { r, coeffs }
}

/// Nonzero coefficients as `rank:coefficient` lines.
impl<T: Clone + Zero + Display> Display for GroupAlgebraElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (rank, c) in self.support() {
            writeln!(f, "{rank}:{c}")?;
        }
        Ok(())
    }
}

impl<T: Clone + Zero + FromStr> GroupAlgebraElement<T> {
    /// Reads `rank:coefficient` lines; absent ranks are zero, blank lines and
    /// `#` comments are skipped.
    pub fn parse(r: usize, text: &str) -> Result<Self> {
        let mut x = Self::zero(r);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (rank, coeff) =
                line.split_once(':').ok_or_else(|| Error::Parse(format!("expected rank:coefficient, got {line:?}")))?;
            let rank: usize = rank.trim().parse().map_err(|_| Error::Parse(format!("bad rank in {line:?}")))?;
            let coeff: T = coeff.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient in {line:?}")))?;
            if rank >= x.coeffs.len() {
                return Err(Error::Parse(format!("rank {rank} out of range for degree {r}")));
            }
            x.coeffs[rank] = coeff;
        }
        Ok(x)
    }
}
