use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{check_limit, Error, Result};
use crate::limits::Limits;
use crate::superspace::Permutation;

/// A perfect matching on `2r` nodes. Nodes `0..r` are the top row (outputs),
/// `r..2r` the bottom row (inputs).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrauerDiagram {
    partner: Vec<u8>,
}

impl BrauerDiagram {
    pub fn from_partners(partner: Vec<u8>) -> Result<Self> {
        let size = partner.len();
        if size % 2 == 1 {
            return Err(Error::InvalidArgument("a diagram has an even number of nodes".into()));
        }
        for (i, &j) in partner.iter().enumerate() {
            let j = j as usize;
            if j >= size || j == i || partner[j] as usize != i {
                return Err(Error::InvalidArgument(format!("node {i} is not matched consistently")));
            }
        }
        Ok(BrauerDiagram { partner })
    }

    pub fn identity(r: usize) -> Self {
        Self::from_permutation(&Permutation::identity(r))
    }

    /// Input slot `j` is joined to output slot `sigma(j)`.
    pub fn from_permutation(sigma: &Permutation) -> Self {
        let r = sigma.degree();
        let mut partner = vec![0u8; 2 * r];
        for j in 0..r {
            let i = sigma.apply(j);
            partner[i] = (r + j) as u8;
            partner[r + j] = i as u8;
        }
        BrauerDiagram { partner }
    }

    /// `e_i`: a cap on inputs `i, i+1` and a cup on outputs `i, i+1`.
    pub fn contraction(r: usize, i: usize) -> Result<Self> {
        if i + 1 >= r {
            return Err(Error::InvalidArgument(format!("no contraction e_{i} on {r} strands")));
        }
        let mut d = Self::identity(r);
        d.partner[i] = (i + 1) as u8;
        d.partner[i + 1] = i as u8;
        d.partner[r + i] = (r + i + 1) as u8;
        d.partner[r + i + 1] = (r + i) as u8;
        Ok(d)
    }

    pub fn strands(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, node: usize) -> usize {
        self.partner[node] as usize
    }

    pub fn is_top(&self, node: usize) -> bool {
        node < self.strands()
    }

    /// The permutation when every pair joins the two rows.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let r = self.strands();
        let images: Option<Vec<u8>> = (0..r)
            .map(|j| {
                let i = self.partner(r + j);
                (i < r).then_some(i as u8)
            })
            .collect();
        Permutation::from_images(images?).ok()
    }

    /// Pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len()).filter(|&a| a < self.partner(a)).map(|a| (a, self.partner(a))).collect()
    }

    /// Caps (both ends in the bottom row) as input slot pairs.
    pub fn caps(&self) -> Vec<(usize, usize)> {
        let r = self.strands();
        self.pairs().into_iter().filter(|&(a, _)| a >= r).map(|(a, b)| (a - r, b - r)).collect()
    }

    /// Cups (both ends in the top row) as output slot pairs.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        let r = self.strands();
        self.pairs().into_iter().filter(|&(_, b)| b < r).collect()
    }

    /// Writes `self = top · E_k · bottom` with permutations `top`, `bottom`
    /// and `E_k` the diagram with `k` caps and cups on slots `(0,1), (2,3), …`
    /// and straight strands after them. Returns `(top, k, bottom)`.
    pub fn factor(&self) -> (Permutation, usize, Permutation) {
        let r = self.strands();
        let caps = self.caps();
        let cups = self.cups();
        let k = caps.len();
        let mut bottom = vec![0u8; r];
        let mut top = vec![0u8; r];
        for (t, &(a, b)) in caps.iter().enumerate() {
            bottom[a] = (2 * t) as u8;
            bottom[b] = (2 * t + 1) as u8;
        }
        for (t, &(a, b)) in cups.iter().enumerate() {
            top[2 * t] = a as u8;
            top[2 * t + 1] = b as u8;
        }
        let mut middle = 2 * k;
        for j in 0..r {
            let i = self.partner(r + j);
            if i < r {
                bottom[j] = middle as u8;
                top[middle] = i as u8;
                middle += 1;
            }
        }
        let top = Permutation::from_images(top).expect("cups and strands fill the top row");
        let bottom = Permutation::from_images(bottom).expect("caps and strands fill the bottom row");
        (top, k, bottom)
    }

    /// `self` stacked on top of `other` (apply `other` first). Returns the
    /// resulting diagram and the number of closed loops, each worth `δ`.
    pub fn multiply(&self, other: &BrauerDiagram) -> Result<(BrauerDiagram, u32)> {
        let r = self.strands();
        if other.strands() != r {
            return Err(Error::InvalidArgument(format!("{r} strands against {}", other.strands())));
        }
        // Middle row: bottom of `self` = top of `other`, indexed 0..r.
        let mut seen = vec![false; r];
        let mut partner = vec![0u8; 2 * r];
        // Follows a path that just entered the middle row at `m`, coming from
        // `self` when `from_upper`. Returns the outer end as a node of the product.
        let walk = |mut m: usize, mut from_upper: bool, seen: &mut Vec<bool>| -> usize {
            loop {
                seen[m] = true;
                if from_upper {
                    let next = other.partner(m);
                    if next >= r {
                        return next;
                    }
                    m = next;
                } else {
                    let next = self.partner(r + m);
                    if next < r {
                        return next;
                    }
                    m = next - r;
                }
                from_upper = !from_upper;
            }
        };
        for start in 0..2 * r {
            let end = if start < r {
                let next = self.partner(start);
                if next < r {
                    next
                } else {
                    walk(next - r, true, &mut seen)
                }
            } else {
                let next = other.partner(start);
                if next >= r {
                    next
                } else {
                    walk(next, false, &mut seen)
                }
            };
            partner[start] = end as u8;
        }
        let mut loops = 0;
        for m in 0..r {
            if !seen[m] {
                loops += 1;
                let mut cur = m;
                loop {
                    seen[cur] = true;
                    let down = other.partner(cur);
                    seen[down] = true;
                    let up = self.partner(r + down) - r;
                    if up == m {
                        break;
                    }
                    cur = up;
                }
            }
        }
        Ok((BrauerDiagram { partner }, loops))
    }
}

/// `(2r-1)!!`
pub fn diagram_count(r: usize) -> u128 {
    (1..=r as u128).map(|i| 2 * i - 1).product()
}

const CACHED_STRANDS: usize = 5;

/// All diagrams on `r` strands: the lowest unmatched node is paired with
/// each later free node in turn.
pub fn enumerate_diagrams(r: usize, limits: &Limits) -> Result<Vec<BrauerDiagram>> {
    check_limit("r", r as u128, limits.brauer_max_r as u128)?;
    static CACHE: OnceLock<Vec<Vec<BrauerDiagram>>> = OnceLock::new();
    if r <= CACHED_STRANDS {
        let cache = CACHE.get_or_init(|| (0..=CACHED_STRANDS).map(build_diagrams).collect());
        return Ok(cache[r].clone());
    }
    Ok(build_diagrams(r))
}

fn build_diagrams(r: usize) -> Vec<BrauerDiagram> {
    fn go(partner: &mut Vec<u8>, free: &mut Vec<bool>, out: &mut Vec<BrauerDiagram>) {
        let Some(a) = free.iter().position(|&f| f) else {
            out.push(BrauerDiagram { partner: partner.clone() });
            return;
        };
        free[a] = false;
        for b in a + 1..free.len() {
            if free[b] {
                free[b] = false;
                partner[a] = b as u8;
                partner[b] = a as u8;
                go(partner, free, out);
                free[b] = true;
            }
        }
        free[a] = true;
    }
    let mut out = Vec::new();
    go(&mut vec![0; 2 * r], &mut vec![true; 2 * r], &mut out);
    out
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.strands();
        let name = |node: usize| if node < r { format!("{}", node + 1) } else { format!("{}'", node - r + 1) };
        for (a, b) in self.pairs() {
            write!(f, "({},{})", name(a), name(b))?;
        }
        Ok(())
    }
}

impl FromStr for BrauerDiagram {
    type Err = Error;

    /// Reads pair lists such as `(1,1')(2,2')`; pairs may come in any order.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed diagram `{s}`"));
        let mut nodes: Vec<(usize, bool)> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let (a, b) = inner[..close].split_once(',').ok_or_else(bad)?;
            for label in [a, b] {
                let label = label.trim();
                let (digits, bottom) = match label.strip_suffix('\'') {
                    Some(d) => (d, true),
                    None => (label, false),
                };
                let k: usize = digits.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                nodes.push((k - 1, bottom));
            }
            rest = inner[close + 1..].trim_start();
        }
        let r = nodes.len() / 2;
        let index = |(k, bottom): (usize, bool)| if bottom { r + k } else { k };
        if nodes.iter().any(|&(k, _)| k >= r) {
            return Err(bad());
        }
        let mut partner = vec![u8::MAX; 2 * r];
        for pair in nodes.chunks(2) {
            let (a, b) = (index(pair[0]), index(pair[1]));
            if partner[a] != u8::MAX || partner[b] != u8::MAX {
                return Err(bad());
            }
            partner[a] = b as u8;
            partner[b] = a as u8;
        }
        BrauerDiagram::from_partners(partner)
    }
}
