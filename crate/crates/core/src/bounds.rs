//! Closed forms for the injectivity threshold and related bounds.

use std::fmt;

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::exact::is_prime;

/// An exact half-integer, stored as its double.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub fn from_doubled(twice: i64) -> Self {
        HalfInteger(twice)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn ceil(self) -> i64 {
        -(-self.0).div_euclid(2)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Superspace sizes and characteristic, normalised so that `m >= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThresholdParams {
    pub m: u64,
    pub n: u64,
    pub p: u64,
}

impl ThresholdParams {
    /// Swaps the sizes if needed; `p` must be zero or prime.
    pub fn new(m: u64, n: u64, p: u64) -> Result<Self> {
        if p != 0 && !is_prime(p) {
            return Err(Error::InvalidArgument(format!("characteristic {p} is neither 0 nor prime")));
        }
        Ok(ThresholdParams { m: m.max(n), n: m.min(n), p })
    }

    /// `(p + n - m) / 2`.
    pub fn d(&self) -> HalfInteger {
        HalfInteger(self.p as i64 + self.n as i64 - self.m as i64)
    }
}

fn check_odd_range(m: u64, n: u64, p: u64) -> Result<()> {
    if n == 0 || m < n {
        return Err(Error::InvalidArgument(format!("need m >= n >= 1, got m={m} n={n}")));
    }
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("need an odd prime, got p={p}")));
    }
    Ok(())
}

/// `s(m+1) + (p-s)(n+1-s) - 1`.
pub fn t_s(m: u64, n: u64, p: u64, s: u64) -> Result<i64> {
    check_odd_range(m, n, p)?;
    if s == 0 {
        return Err(Error::InvalidArgument("s must be positive".into()));
    }
    let (m, n, p, s) = (m as i64, n as i64, p as i64, s as i64);
    Ok(s * (m + 1) + (p - s) * (n + 1 - s) - 1)
}

/// Minimum of [`t_s`] over `1 <= s <= min(p/2, n+1)`.
pub fn t_p(m: u64, n: u64, p: u64) -> Result<i64> {
    check_odd_range(m, n, p)?;
    (1..=(p / 2).min(n + 1)).map(|s| t_s(m, n, p, s)).try_fold(i64::MAX, |acc, t| Ok(acc.min(t?)))
}

/// Largest `r` for which the group algebra acts faithfully on the `r`-th
/// tensor power of the `m|n` superspace in characteristic `p`.
pub fn r_p_closed(m: u64, n: u64, p: u64) -> Result<u64> {
    let t = ThresholdParams::new(m, n, p)?;
    let (m, n, p) = (t.m, t.n, t.p);
    if n == 0 {
        return Ok(m);
    }
    match p {
        0 => return Ok(m + n + m * n),
        2 => return Ok(m + n),
        _ => {}
    }
    let k = t.d().doubled();
    Ok(if k < 4 {
        m + (p - 1) * n
    } else if k > 2 * n as i64 {
        m + n + m * n
    } else {
        // ceil((n+1)p - 1 - k^2/4)
        (n + 1) * p - 1 - (k * k / 4) as u64
    })
}

/// `m + n + min(mn, (p-2)m, (p-2)n)`.
pub fn upper_bound(m: u64, n: u64, p: u64) -> Result<u64> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("need an odd prime, got p={p}")));
    }
    Ok(m + n + (m * n).min((p - 2) * m).min((p - 2) * n))
}

/// `C(2r-2, r-1)`.
pub fn dim_endo_11(r: u64) -> Result<u128> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    Ok(binomial(2 * r as u128 - 2, r as u128 - 1))
}

/// Necessary condition for the group algebra to surject onto the invariants.
pub fn surjectivity_possible(m: u64, n: u64, p: u64) -> Result<bool> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("need an odd prime, got p={p}")));
    }
    Ok(m * n == 0 || m + n < p)
}

/// Above this `r` the Brauer algebra action on `k^{m|2n}` is not injective.
pub fn brauer_noninjective_threshold(m: u64, n: u64, p: u64) -> Result<u64> {
    if p == 2 {
        if m % 2 == 1 {
            return Err(Error::InvalidArgument(format!("odd m={m} is unsupported in characteristic 2")));
        }
        return Ok(m / 2 + n);
    }
    Ok((m + n + m * n).min(r_p_closed(m, 2 * n, p)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_s_values() {
        for (m, n, p) in [(4, 2, 5), (7, 7, 5), (3, 1, 3)] {
            assert_eq!(t_s(m, n, p, 1).unwrap(), (m + (p - 1) * n) as i64);
            assert_eq!(t_s(m, n, p, n + 1).unwrap(), (m + n + m * n) as i64);
        }
        assert_eq!(t_s(7, 7, 5, 2).unwrap(), 33);
        assert!(t_s(1, 2, 5, 1).is_err());
        assert!(t_s(2, 1, 4, 1).is_err());
    }

    #[test]
    fn t_p_values() {
        assert_eq!(t_p(7, 7, 5).unwrap(), 33);
        assert_eq!(t_p(4, 1, 5).unwrap(), 8);
        assert_eq!(t_p(3, 2, 3).unwrap(), 7);
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(r_p_closed(7, 7, 5).unwrap(), 33);
        assert_eq!(r_p_closed(3, 3, 7).unwrap(), 15);
        assert_eq!(r_p_closed(2, 1, 3).unwrap(), 4);
        assert_eq!(r_p_closed(1, 2, 3).unwrap(), 4);
        assert_eq!(r_p_closed(5, 0, 3).unwrap(), 5);
        assert_eq!(r_p_closed(1, 1, 0).unwrap(), 3);
        assert_eq!(r_p_closed(3, 2, 2).unwrap(), 5);
        assert!(r_p_closed(3, 2, 4).is_err());
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(upper_bound(7, 7, 5).unwrap(), 35);
        assert_eq!(upper_bound(4, 0, 5).unwrap(), 4);
        assert_eq!(upper_bound(1, 1, 3).unwrap(), 3);
    }

    #[test]
    fn gl11_dims() {
        assert_eq!(dim_endo_11(1).unwrap(), 1);
        assert_eq!(dim_endo_11(3).unwrap(), 6);
        assert_eq!(dim_endo_11(5).unwrap(), 70);
    }

    #[test]
    fn surjectivity_condition() {
        assert!(!surjectivity_possible(2, 1, 3).unwrap());
        assert!(surjectivity_possible(1, 1, 3).unwrap());
        assert!(surjectivity_possible(4, 0, 3).unwrap());
    }

    #[test]
    fn brauer_thresholds() {
        assert_eq!(brauer_noninjective_threshold(2, 1, 3).unwrap(), 5);
        assert_eq!(brauer_noninjective_threshold(2, 0, 2).unwrap(), 1);
        assert_eq!(brauer_noninjective_threshold(1, 1, 5).unwrap(), 3);
        assert!(brauer_noninjective_threshold(3, 0, 2).is_err());
    }

    #[test]
    fn half_integers() {
        let d = ThresholdParams::new(7, 7, 5).unwrap().d();
        assert_eq!(d.to_string(), "5/2");
        assert_eq!((d.floor(), d.ceil()), (2, 3));
        let d = HalfInteger::from_doubled(-3);
        assert_eq!((d.floor(), d.ceil()), (-2, -1));
    }
}
