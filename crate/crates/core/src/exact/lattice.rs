use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::elim;
use super::field::{Field, PrimeField};
use super::matrix::{read_mm, write_mm, SparseMatrix, SparseRow};
use super::bareiss;
use crate::error::{check_limit, Error, Result};
use crate::limits::Limits;

/// A sublattice of `Z^D` stored as its row Hermite normal form: pivot columns
/// strictly increase, pivots are positive and entries above a pivot lie in
/// `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient_dim: usize,
    rows: Vec<SparseRow<BigInt>>,
}

impl LatticeBasis {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<BigInt>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0 as usize).collect()
    }

    pub fn to_matrix(&self) -> SparseMatrix<BigInt> {
        SparseMatrix::from_rows(self.ambient_dim, self.rows.clone())
    }

    /// Integer coordinates of `v` in this basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &SparseRow<BigInt>) -> Option<Vec<BigInt>> {
        let mut residual: BTreeMap<u32, BigInt> = v.iter().cloned().collect();
        let mut coords = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let (pc, piv) = &row[0];
            // Anything left of this pivot can no longer be cleared.
            if residual.range(..*pc).next().is_some() {
                return None;
            }
            let lead = residual.get(pc).cloned().unwrap_or_default();
            let (q, rem) = lead.div_rem(piv);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (c, x) in row {
                    let e = residual.entry(*c).or_default();
                    *e -= &q * x;
                    if e.is_zero() {
                        residual.remove(c);
                    }
                }
            }
            coords.push(q);
        }
        residual.is_empty().then_some(coords)
    }

    pub fn contains(&self, v: &SparseRow<BigInt>) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &LatticeBasis) -> bool {
        other.ambient_dim == self.ambient_dim && other.rows.iter().all(|r| self.contains(r))
    }

    /// Writes `ambient_dim=D` followed by the basis rows as a MatrixMarket matrix.
    pub fn write_matrix_market<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "ambient_dim={}", self.ambient_dim)?;
        let entries = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v)));
        write_mm(out, self.rows.len(), self.ambient_dim, entries)
    }

    /// Reads the format of [`LatticeBasis::write_matrix_market`] and re-normalises the rows.
    pub fn read_matrix_market<R: BufRead>(mut input: R) -> Result<Self> {
        let mut first = String::new();
        input.read_line(&mut first)?;
        let dim = first
            .trim()
            .strip_prefix("ambient_dim=")
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("expected `ambient_dim=D`, found `{}`", first.trim())))?;
        let (nrows, ncols, triplets) = read_mm::<R, BigInt>(input)?;
        if ncols != dim {
            return Err(Error::Parse(format!("ambient_dim={dim} but matrix has {ncols} columns")));
        }
        let m = SparseMatrix::from_triplets(nrows, ncols, triplets);
        hnf_rows(dim, m.into_rows(), &Limits::unbounded())
    }
}

/// Row Hermite normal form of the lattice spanned by the given rows.
pub fn hnf_rows(ambient_dim: usize, rows: Vec<SparseRow<BigInt>>, limits: &Limits) -> Result<LatticeBasis> {
    check_limit("lattice ambient dimension", ambient_dim as u128, limits.hnf_max_cols as u128)?;
    let mut pending: BTreeMap<u32, Vec<SparseRow<BigInt>>> = BTreeMap::new();
    for row in rows {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        if let Some(&(c, _)) = row.first() {
            pending.entry(c).or_default().push(row);
        }
    }
    let mut basis: Vec<SparseRow<BigInt>> = Vec::new();
    while let Some((c, mut group)) = pending.pop_first() {
        // Euclid on the leading entries until one row remains.
        while group.len() > 1 {
            let k = (0..group.len())
                .min_by(|&i, &j| group[i][0].1.abs().cmp(&group[j][0].1.abs()).then(i.cmp(&j)))
                .unwrap();
            let pivot = group.swap_remove(k);
            let mut kept = vec![];
            for row in group {
                let q = row[0].1.div_floor(&pivot[0].1);
                let reduced = axpy(&row, &(-q), &pivot);
                match reduced.first() {
                    Some(&(lc, _)) if lc == c => kept.push(reduced),
                    Some(&(lc, _)) => pending.entry(lc).or_default().push(reduced),
                    None => {}
                }
            }
            kept.push(pivot);
            group = kept;
        }
        let mut pivot = group.pop().unwrap();
        if pivot[0].1.is_negative() {
            for (_, v) in pivot.iter_mut() {
                *v = -std::mem::take(v);
            }
        }
        for row in basis.iter_mut() {
            if let Ok(k) = row.binary_search_by_key(&c, |(col, _)| *col) {
                let q = row[k].1.div_floor(&pivot[0].1);
                if !q.is_zero() {
                    *row = axpy(row, &(-q), &pivot);
                }
            }
        }
        basis.push(pivot);
        check_limit("lattice rank", basis.len() as u128, limits.hnf_max_rank as u128)?;
    }
    Ok(LatticeBasis { ambient_dim, rows: basis })
}

/// `a + f * b`
fn axpy(a: &SparseRow<BigInt>, f: &BigInt, b: &SparseRow<BigInt>) -> SparseRow<BigInt> {
    if f.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(u32::MAX, |e| e.0);
        let cb = b.get(j).map_or(u32::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + f * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Smallest lattice containing `l` that is pure at `p` in `Z^D`.
pub fn p_saturate(l: &LatticeBasis, p: u64, limits: &Limits) -> Result<LatticeBasis> {
    let field = PrimeField::new(p)?;
    let pz = BigInt::from(p);
    let mut current = l.clone();
    loop {
        let reduced = current.to_matrix().reduce(&field);
        let relations = elim::left_kernel_basis(&field, &reduced);
        if relations.is_empty() {
            return Ok(current);
        }
        let mut rows = current.rows.clone();
        for rel in relations {
            let mut acc: SparseRow<BigInt> = Vec::new();
            for (coef, row) in rel.iter().zip(current.rows.iter()) {
                if *coef != 0 {
                    acc = axpy(&acc, &BigInt::from(*coef), row);
                }
            }
            for (_, v) in acc.iter_mut() {
                let (q, rem) = v.div_rem(&pz);
                assert!(rem.is_zero(), "relation mod p did not lift to a multiple of p");
                *v = q;
            }
            rows.push(acc);
        }
        current = hnf_rows(current.ambient_dim, rows, limits)?;
    }
}

/// The exponent `e` with `[big : small] = p^e`.
pub fn lattice_index_log_p(big: &LatticeBasis, small: &LatticeBasis, p: u64) -> Result<u32> {
    if !primal_check::miller_rabin(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if big.ambient_dim != small.ambient_dim || big.rank() != small.rank() {
        return Err(Error::NotASublattice);
    }
    let mut transition = Vec::with_capacity(small.rank());
    for row in &small.rows {
        transition.push(big.coordinates(row).ok_or(Error::NotASublattice)?);
    }
    let mut index = bareiss::determinant(transition).abs();
    let original = index.clone();
    let pz = BigInt::from(p);
    let mut e = 0;
    while !index.is_one() {
        let (q, rem) = index.div_rem(&pz);
        if !rem.is_zero() {
            return Err(Error::IndexNotPPower { index: original.to_string(), p });
        }
        index = q;
        e += 1;
    }
    Ok(e)
}

/// Rank over `F_p` of the basis rows reduced mod `p`.
pub fn rank_mod(l: &LatticeBasis, field: &PrimeField) -> usize {
    let rows = l
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .filter_map(|(c, v)| {
                    let u = field.from_int(v);
                    (u != 0).then_some((*c, u))
                })
                .collect()
        })
        .collect();
    elim::rank_of_rows(field, l.ambient_dim, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(dim: usize, rows: &[&[i64]]) -> LatticeBasis {
        let m = SparseMatrix::<BigInt>::from_dense(
            &rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>(),
        );
        hnf_rows(dim, m.into_rows(), &Limits::default()).unwrap()
    }

    fn dense(l: &LatticeBasis) -> Vec<Vec<i64>> {
        l.to_matrix()
            .to_dense()
            .into_iter()
            .map(|r| r.into_iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn hnf_keeps_diagonal_rows() {
        assert_eq!(dense(&lat(2, &[&[2, 0], &[0, 3]])), vec![vec![2, 0], vec![0, 3]]);
    }

    #[test]
    fn hnf_drops_dependent_row() {
        assert_eq!(dense(&lat(2, &[&[2, 4], &[1, 2]])), vec![vec![1, 2]]);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        assert_eq!(dense(&lat(2, &[&[1, 5], &[0, 3]])), vec![vec![1, 2], vec![0, 3]]);
        assert_eq!(dense(&lat(2, &[&[-1, -5], &[0, -3]])), vec![vec![1, 2], vec![0, 3]]);
    }

    #[test]
    fn saturate_one_dimensional() {
        // 12 = 3 * 4 at p = 2 becomes 3.
        let l = lat(1, &[&[12]]);
        assert_eq!(dense(&p_saturate(&l, 2, &Limits::default()).unwrap()), vec![vec![3]]);
        assert_eq!(dense(&p_saturate(&l, 3, &Limits::default()).unwrap()), vec![vec![4]]);
        assert_eq!(dense(&p_saturate(&l, 5, &Limits::default()).unwrap()), vec![vec![12]]);
    }

    #[test]
    fn saturate_divides_content() {
        let l = lat(2, &[&[3, 3]]);
        assert_eq!(dense(&p_saturate(&l, 3, &Limits::default()).unwrap()), vec![vec![1, 1]]);
    }

    #[test]
    fn saturate_leaves_unimodular_alone() {
        let l = lat(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(p_saturate(&l, 3, &Limits::default()).unwrap(), l);
    }

    #[test]
    fn index_of_coordinate_sublattice() {
        let big = lat(2, &[&[1, 0], &[0, 1]]);
        let small = lat(2, &[&[3, 0], &[0, 1]]);
        assert_eq!(lattice_index_log_p(&big, &small, 3).unwrap(), 1);
        assert_eq!(lattice_index_log_p(&big, &big, 3).unwrap(), 0);
        assert!(matches!(lattice_index_log_p(&big, &small, 2), Err(Error::IndexNotPPower { .. })));
        assert!(matches!(lattice_index_log_p(&small, &big, 3), Err(Error::NotASublattice)));
    }

    #[test]
    fn membership() {
        let l = lat(3, &[&[2, 1, 0], &[0, 3, 1]]);
        assert!(l.contains(&vec![(0, BigInt::from(2)), (1, BigInt::from(4)), (2, BigInt::from(1))]));
        assert!(!l.contains(&vec![(0, BigInt::from(1))]));
        assert!(!l.contains(&vec![(2, BigInt::from(1))]));
    }

    #[test]
    fn serialization_round_trip() {
        let l = lat(3, &[&[2, 1, 0], &[0, 3, 1]]);
        let mut buf = Vec::new();
        l.write_matrix_market(&mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("ambient_dim=3\n%%MatrixMarket"));
        assert_eq!(LatticeBasis::read_matrix_market(&buf[..]).unwrap(), l);
    }

    #[test]
    fn column_limit_enforced() {
        let limits = Limits { hnf_max_cols: 2, ..Limits::default() };
        assert!(matches!(hnf_rows(3, vec![], &limits), Err(Error::SizeLimit { .. })));
    }
}
