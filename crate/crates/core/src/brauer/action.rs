use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::diagram::{enumerate_diagrams, BrauerDiagram};
use crate::error::{check_limit, Result};
use crate::exact::{self, elim, hnf_rows, lattice, p_saturate, PrimeField, SparseMatrix, SparseRow};
use crate::limits::Limits;
use crate::superspace::{act_codes, Alphabet, Permutation};

/// `k^{m|2n}` with an even supersymmetric form. Letter codes `0..m` are
/// even, `m..m+2n` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormedSuperspace {
    pub m: usize,
    pub n: usize,
    /// `gram[a][b] = ⟨a, b⟩`.
    gram: Vec<Vec<i8>>,
    /// Inverse Gram matrix; the copairing is `Σ inverse[a][b] a ⊗ b`.
    inverse: Vec<Vec<i8>>,
    /// Sign the through strands with the odd-crossing rule. Only switched
    /// off to check that the compatibility test notices.
    koszul: bool,
}

impl FormedSuperspace {
    /// Orthonormal even part, odd part in symplectic pairs
    /// `⟨f_{2i-1}, f_{2i}⟩ = 1 = -⟨f_{2i}, f_{2i-1}⟩`.
    pub fn standard(m: usize, n: usize) -> Self {
        let mut w = Self::zero(m, n);
        for a in 0..m {
            w.gram[a][a] = 1;
            w.inverse[a][a] = 1;
        }
        w.fill_symplectic();
        w
    }

    /// Even part in hyperbolic pairs `⟨x_i, y_i⟩ = ⟨y_i, x_i⟩ = 1`, plus one
    /// orthonormal vector when `m` is odd. Over `F_2` this is the split form.
    pub fn split(m: usize, n: usize) -> Self {
        let mut w = Self::zero(m, n);
        for i in 0..m / 2 {
            let (x, y) = (2 * i, 2 * i + 1);
            for (a, b) in [(x, y), (y, x)] {
                w.gram[a][b] = 1;
                w.inverse[a][b] = 1;
            }
        }
        if m % 2 == 1 {
            w.gram[m - 1][m - 1] = 1;
            w.inverse[m - 1][m - 1] = 1;
        }
        w.fill_symplectic();
        w
    }

    fn zero(m: usize, n: usize) -> Self {
        let size = m + 2 * n;
        FormedSuperspace { m, n, gram: vec![vec![0; size]; size], inverse: vec![vec![0; size]; size], koszul: true }
    }

    fn fill_symplectic(&mut self) {
        for i in 0..self.n {
            let (f, g) = (self.m + 2 * i, self.m + 2 * i + 1);
            self.gram[f][g] = 1;
            self.gram[g][f] = -1;
            self.inverse[f][g] = -1;
            self.inverse[g][f] = 1;
        }
    }

    /// The same space with the odd-crossing signs dropped.
    pub fn without_koszul_signs(mut self) -> Self {
        self.koszul = false;
        self
    }

    pub fn dim(&self) -> usize {
        self.m + 2 * self.n
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.m, 2 * self.n).expect("sizes fit the alphabet")
    }

    pub fn form(&self, a: usize, b: usize) -> i8 {
        self.gram[a][b]
    }

    /// The value of a closed loop, the superdimension `m - 2n`.
    pub fn delta(&self) -> i64 {
        self.m as i64 - 2 * self.n as i64
    }

    /// Signed image of a word under a permutation of slots.
    fn permute(&self, sigma: &Permutation, w: &[u8], out: &mut [u8]) -> bool {
        let negative = act_codes(self.alphabet(), sigma.images(), w, out);
        self.koszul && negative
    }
}

fn encode(word: &[u8], size: usize) -> usize {
    word.iter().fold(0, |acc, &c| acc * size + c as usize)
}

fn decode(mut index: usize, size: usize, out: &mut [u8]) {
    for c in out.iter_mut().rev() {
        *c = (index % size) as u8;
        index /= size;
    }
}

/// Calls `f(output index, coefficient)` for each nonzero entry in the column
/// of `d` at input word `w`.
fn diagram_column(d: &BrauerDiagram, space: &FormedSuperspace, factors: &Factored, w: &[u8], mut f: impl FnMut(usize, i8)) {
    let r = d.strands();
    let size = space.dim();
    let mut mid = vec![0u8; r];
    let mut sign: i8 = if space.permute(&factors.bottom, w, &mut mid) { -1 } else { 1 };
    // Caps contract adjacent pairs with the form.
    for t in 0..factors.k {
        sign *= space.form(mid[2 * t] as usize, mid[2 * t + 1] as usize);
        if sign == 0 {
            return;
        }
    }
    // Cups expand with the copairing; every row of the inverse Gram matrix
    // has a single entry, so choices are indexed by the first letter.
    let mut out = vec![0u8; r];
    let choices = size.pow(factors.k as u32);
    'choice: for choice in 0..choices {
        let mut c = choice;
        let mut coeff = sign;
        for t in 0..factors.k {
            let a = c % size;
            c /= size;
            let Some(b) = (0..size).find(|&b| space.inverse[a][b] != 0) else {
                continue 'choice;
            };
            coeff *= space.inverse[a][b];
            mid[2 * t] = a as u8;
            mid[2 * t + 1] = b as u8;
        }
        if space.permute(&factors.top, &mid, &mut out) {
            coeff = -coeff;
        }
        f(encode(&out, size), coeff);
    }
}

struct Factored {
    top: Permutation,
    k: usize,
    bottom: Permutation,
}

fn check_brauer_size(space: &FormedSuperspace, r: usize, limits: &Limits) -> Result<()> {
    check_limit("r", r as u128, limits.brauer_max_r as u128)?;
    check_limit("(m+2n)^r", (space.dim() as u128).saturating_pow(r as u32), limits.max_words)
}

/// The matrix of `d` on `W^⊗r`: through strands act by the signed slot
/// permutation, caps contract with the form, cups insert the copairing.
/// Computed from the factorization `top · E_k · bottom`.
pub fn diagram_action<T>(d: &BrauerDiagram, space: &FormedSuperspace, limits: &Limits) -> Result<SparseMatrix<T>>
where
    T: Clone + Zero + One + Neg<Output = T>,
{
    let r = d.strands();
    check_brauer_size(space, r, limits)?;
    let (top, k, bottom) = d.factor();
    let factors = Factored { top, k, bottom };
    let size = space.dim();
    let dim = size.pow(r as u32);
    let mut w = vec![0u8; r];
    let mut triplets = Vec::new();
    for col in 0..dim {
        decode(col, size, &mut w);
        diagram_column(d, space, &factors, &w, |row, c| {
            triplets.push((row, col, if c < 0 { -T::one() } else { T::one() }));
        });
    }
    Ok(SparseMatrix::from_triplets(dim, dim, triplets))
}

/// One row per diagram: its action flattened as `row · dim + col`.
fn action_rows(space: &FormedSuperspace, r: usize, limits: &Limits) -> Result<(usize, Vec<SparseRow<i64>>)> {
    check_brauer_size(space, r, limits)?;
    let dim = space.dim().pow(r as u32);
    let mut rows = Vec::new();
    for d in enumerate_diagrams(r, limits)? {
        let a: SparseMatrix<i64> = diagram_action(&d, space, limits)?;
        let mut row: SparseRow<i64> = a.entries().map(|(i, j, v)| ((i * dim + j) as u32, *v)).collect();
        row.sort_unstable_by_key(|e| e.0);
        rows.push(row);
    }
    Ok((dim * dim, rows))
}

/// The form used for kernel computations: orthonormal in odd characteristic,
/// split over `F_2`, where an orthonormal basis only gives a square form.
pub fn form_for_characteristic(m: usize, n: usize, p: u64) -> FormedSuperspace {
    if p == 2 {
        FormedSuperspace::split(m, n)
    } else {
        FormedSuperspace::standard(m, n)
    }
}

/// Dimension of the kernel of `B_r(m - 2n) → End(W^⊗r)` over `F_p`, or over
/// the rationals for `p = 0`.
pub fn brauer_kernel_dim(r: usize, m: usize, n: usize, p: u64, limits: &Limits) -> Result<usize> {
    let space = form_for_characteristic(m, n, p);
    let (ncols, rows) = action_rows(&space, r, limits)?;
    let count = rows.len();
    let rank = if p == 0 {
        let rows = rows.into_iter().map(|row| row.into_iter().map(|(c, v)| (c, BigInt::from(v))).collect()).collect();
        exact::rank_char0(&SparseMatrix::from_rows(ncols, rows))
    } else {
        let field = PrimeField::new(p)?;
        let rows = rows
            .into_iter()
            .map(|row| row.into_iter().map(|(c, v)| (c, field.reduce_i64(v))).filter(|e| e.1 != 0).collect())
            .collect();
        elim::rank_of_rows(&field, ncols, rows)
    };
    Ok(count - rank)
}

/// Outcome of the `O(2)` computation in characteristic two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct O2Check {
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
    pub saturated_iso: bool,
}

/// `B_2(2) → End_{O(2)}(V^⊗2)` over `F_2`, for `V = span(x, y)` with
/// `⟨x, y⟩ = 1` and `O(2)` the torus (`x` of weight 1, `y` of weight -1)
/// extended by the flip `x ↔ y`.
pub fn o2_char2_check() -> Result<O2Check> {
    let limits = Limits::default();
    let space = FormedSuperspace::split(2, 0);
    let field = PrimeField::new(2)?;
    let r = 2;
    let (ncols, rows) = action_rows(&space, r, &limits)?;
    let dim = 4;

    // Invariant endomorphisms: weight preserving and commuting with the flip.
    let weight = |word: usize| -> i32 {
        let mut w = [0u8; 2];
        decode(word, 2, &mut w);
        w.iter().map(|&c| if c == 0 { 1 } else { -1 }).sum()
    };
    let flip = |word: usize| word ^ 0b11;
    let mut equations: Vec<SparseRow<u32>> = Vec::new();
    for u in 0..dim {
        for w in 0..dim {
            if weight(u) != weight(w) {
                equations.push(vec![((u * dim + w) as u32, 1)]);
            }
            // (F X - X F)[u][w] = X[F u][w] - X[u][F w]
            let (a, b) = ((flip(u) * dim + w) as u32, (u * dim + flip(w)) as u32);
            if a != b {
                let mut eq = vec![(a, 1), (b, 1)];
                eq.sort_unstable();
                equations.push(eq);
            }
        }
    }
    let invariant_dim = ncols - elim::rank_of_rows(&field, ncols, equations.clone());

    let reduce = |rows: &[SparseRow<i64>]| -> Vec<SparseRow<u32>> {
        rows.iter().map(|row| row.iter().map(|&(c, v)| (c, field.reduce_i64(v))).filter(|e| e.1 != 0).collect()).collect()
    };
    let image_rank = elim::rank_of_rows(&field, ncols, reduce(&rows));
    let kernel_dim = rows.len() - image_rank;
    let cokernel_dim = invariant_dim - image_rank;

    let int_rows: Vec<SparseRow<BigInt>> =
        rows.iter().map(|row| row.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()).collect();
    let image = hnf_rows(ncols, int_rows, &limits)?;
    let saturated = p_saturate(&image, 2, &limits)?;
    let saturated_rank = lattice::rank_mod(&saturated, &field);
    // Every saturated element must still be invariant mod 2.
    let inside = saturated.rows().iter().all(|row| {
        let mut x = vec![0u32; ncols];
        for (c, v) in row {
            x[*c as usize] = exact::Field::from_int(&field, v);
        }
        equations.iter().all(|eq| eq.iter().map(|(c, v)| v * x[*c as usize]).sum::<u32>() % 2 == 0)
    });
    Ok(O2Check { kernel_dim, cokernel_dim, saturated_iso: inside && saturated_rank == invariant_dim })
}
