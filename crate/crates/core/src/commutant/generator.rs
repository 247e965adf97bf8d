use std::fmt;

use crate::error::{Error, Result};

/// Which simple root vector. Indices are 0-based letter codes: even letters
/// are `0..m`, odd letters `m..m+n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `E_{i,i+1}` for consecutive letters of equal parity.
    EvenRaise(usize),
    /// `E_{i+1,i}` for consecutive letters of equal parity.
    EvenLower(usize),
    /// `E_{m,1'}`: the first odd letter to the last even letter.
    OddRaise,
    /// `E_{1',m}`
    OddLower,
}

/// A simple root vector of `gl(m|n)` acting on `V_{m|n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LieGenerator {
    pub kind: GeneratorKind,
    pub m: usize,
    pub n: usize,
}

impl LieGenerator {
    pub fn new(kind: GeneratorKind, m: usize, n: usize) -> Result<Self> {
        let ok = match kind {
            GeneratorKind::EvenRaise(i) | GeneratorKind::EvenLower(i) => i + 1 < m || (i >= m && i + 1 < m + n),
            GeneratorKind::OddRaise | GeneratorKind::OddLower => m > 0 && n > 0,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!("{kind:?} is not a generator of gl({m}|{n})")));
        }
        Ok(LieGenerator { kind, m, n })
    }

    /// Every simple raising and lowering operator.
    pub fn simple(m: usize, n: usize) -> Vec<LieGenerator> {
        let mut out = Vec::new();
        for i in (0..m.saturating_sub(1)).chain(m..(m + n).saturating_sub(1)) {
            out.push(LieGenerator { kind: GeneratorKind::EvenRaise(i), m, n });
            out.push(LieGenerator { kind: GeneratorKind::EvenLower(i), m, n });
        }
        if m > 0 && n > 0 {
            out.push(LieGenerator { kind: GeneratorKind::OddRaise, m, n });
            out.push(LieGenerator { kind: GeneratorKind::OddLower, m, n });
        }
        out
    }

    pub fn is_odd(&self) -> bool {
        matches!(self.kind, GeneratorKind::OddRaise | GeneratorKind::OddLower)
    }

    /// The letter this generator consumes.
    pub fn source(&self) -> u8 {
        (match self.kind {
            GeneratorKind::EvenRaise(i) => i + 1,
            GeneratorKind::EvenLower(i) => i,
            GeneratorKind::OddRaise => self.m,
            GeneratorKind::OddLower => self.m - 1,
        }) as u8
    }

    /// The letter it produces.
    pub fn target(&self) -> u8 {
        (match self.kind {
            GeneratorKind::EvenRaise(i) => i,
            GeneratorKind::EvenLower(i) => i + 1,
            GeneratorKind::OddRaise => self.m - 1,
            GeneratorKind::OddLower => self.m,
        }) as u8
    }

    /// Largest divided power that can act nontrivially on degree `r`.
    pub fn max_power(&self, r: usize) -> usize {
        if self.is_odd() {
            r.min(1)
        } else {
            r
        }
    }

    pub(crate) fn check_power(&self, k: usize) -> Result<()> {
        if k == 0 || (self.is_odd() && k > 1) {
            return Err(Error::InvalidArgument(format!("divided power {k} of {self}")));
        }
        Ok(())
    }

    /// Calls `f(image, negative)` for every term of `g^(k)` applied to a
    /// word: one term per `k`-subset of the slots holding the source letter.
    /// An odd generator picks up a sign for each odd letter before its slot.
    pub(crate) fn apply_divided(&self, k: usize, word: &[u8], mut f: impl FnMut(&[u8], bool)) {
        let (from, to) = (self.source(), self.target());
        let slots: Vec<usize> = (0..word.len()).filter(|&i| word[i] == from).collect();
        if k > slots.len() {
            return;
        }
        let odd_letter = |c: u8| c as usize >= self.m;
        let mut image = word.to_vec();
        let mut chosen: Vec<usize> = (0..k).collect();
        loop {
            let mut negative = false;
            for &c in &chosen {
                let slot = slots[c];
                image[slot] = to;
                if self.is_odd() {
                    negative ^= word[..slot].iter().filter(|&&c| odd_letter(c)).count() % 2 == 1;
                }
            }
            f(&image, negative);
            for &c in &chosen {
                image[slots[c]] = from;
            }
            if !next_combination(&mut chosen, slots.len()) {
                break;
            }
        }
    }
}

/// Advances a sorted `k`-subset of `0..n` in lexicographic order.
fn next_combination(chosen: &mut [usize], n: usize) -> bool {
    let k = chosen.len();
    let Some(i) = (0..k).rev().find(|&i| chosen[i] < n - k + i) else {
        return false;
    };
    chosen[i] += 1;
    for j in i + 1..k {
        chosen[j] = chosen[j - 1] + 1;
    }
    true
}

impl fmt::Display for LieGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |c: u8| {
            let c = c as usize;
            if c < self.m {
                format!("{}", c + 1)
            } else {
                format!("{}'", c - self.m + 1)
            }
        };
        write!(f, "E_({},{})", name(self.target()), name(self.source()))
    }
}
