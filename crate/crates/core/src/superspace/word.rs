use std::fmt;
use std::str::FromStr;

use crate::combinatorics::BiComposition;
use crate::error::{Error, Result};

/// A basis vector of the superspace. Indices start at 1; every even letter
/// sorts before every odd one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Even(u8),
    Odd(u8),
}

impl Letter {
    pub fn is_odd(self) -> bool {
        matches!(self, Letter::Odd(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Even(i) => write!(f, "{i}"),
            Letter::Odd(j) => write!(f, "{j}'"),
        }
    }
}

/// Sizes of the even and odd parts; translates letters to dense codes
/// `0..m` (even) and `m..m+n` (odd).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    pub m: u8,
    pub n: u8,
}

impl Alphabet {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m + n > 64 {
            return Err(Error::InvalidArgument(format!("alphabet {m}|{n} is too large")));
        }
        Ok(Alphabet { m: m as u8, n: n as u8 })
    }

    pub fn size(self) -> usize {
        (self.m + self.n) as usize
    }

    pub fn code(self, l: Letter) -> Result<u8> {
        match l {
            Letter::Even(i) if 1 <= i && i <= self.m => Ok(i - 1),
            Letter::Odd(j) if 1 <= j && j <= self.n => Ok(self.m + j - 1),
            _ => Err(Error::InvalidArgument(format!("letter {l} outside {}|{}", self.m, self.n))),
        }
    }

    pub fn letter(self, code: u8) -> Letter {
        if code < self.m {
            Letter::Even(code + 1)
        } else {
            Letter::Odd(code - self.m + 1)
        }
    }

    #[inline]
    pub fn is_odd(self, code: u8) -> bool {
        code >= self.m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperWord(pub Vec<Letter>);

impl SuperWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        SuperWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of odd letters modulo 2.
    pub fn parity(&self) -> u8 {
        (self.0.iter().filter(|l| l.is_odd()).count() % 2) as u8
    }

    pub fn weight(&self, alphabet: Alphabet) -> Result<BiComposition> {
        let mut counts = vec![0u32; alphabet.size()];
        for &l in &self.0 {
            counts[alphabet.code(l)? as usize] += 1;
        }
        let odd = counts.split_off(alphabet.m as usize);
        Ok(BiComposition::new(counts, odd))
    }

    pub fn codes(&self, alphabet: Alphabet) -> Result<Vec<u8>> {
        self.0.iter().map(|&l| alphabet.code(l)).collect()
    }

    pub fn from_codes(alphabet: Alphabet, codes: &[u8]) -> Self {
        SuperWord(codes.iter().map(|&c| alphabet.letter(c)).collect())
    }
}

impl fmt::Display for SuperWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Space-separated letters, odd ones primed: `1 2' 1`.
impl FromStr for SuperWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|t| {
                let (digits, odd) = match t.strip_suffix('\'') {
                    Some(d) => (d, true),
                    None => (t, false),
                };
                let i: u8 = digits.parse().map_err(|_| Error::Parse(format!("bad letter {t:?}")))?;
                if i == 0 {
                    return Err(Error::Parse(format!("letters are numbered from 1, got {t:?}")));
                }
                Ok(if odd { Letter::Odd(i) } else { Letter::Even(i) })
            })
            .collect::<Result<Vec<_>>>()
            .map(SuperWord)
    }
}
