use std::fmt::Display;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::{Field, PrimeField};
use crate::error::{Error, Result};

/// A sparse row: strictly increasing column indices paired with nonzero values.
pub type SparseRow<T> = Vec<(u32, T)>;

/// Row-major sparse matrix; stored values are never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow<T>>,
}

impl<T: Clone + Zero> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self
    where
        T: num_traits::One,
    {
        let rows = (0..n).map(|i| vec![(i as u32, T::one())]).collect();
        SparseMatrix { nrows: n, ncols: n, rows }
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed and zeros dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut buckets: Vec<Vec<(u32, T)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) outside {nrows}x{ncols}");
            buckets[r].push((c as u32, v));
        }
        let rows = buckets.into_iter().map(normalize_row).collect();
        SparseMatrix { nrows, ncols, rows }
    }

    /// Builds from rows given as `(col, value)` lists in any order.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<(u32, T)>>) -> Self {
        let nrows = rows.len();
        let rows: Vec<SparseRow<T>> = rows.into_iter().map(normalize_row).collect();
        for row in &rows {
            if let Some(&(c, _)) = row.last() {
                assert!((c as usize) < ncols, "column {c} outside width {ncols}");
            }
        }
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(dense: &[Vec<T>]) -> Self {
        let ncols = dense.first().map_or(0, Vec::len);
        let rows = dense
            .iter()
            .map(|row| {
                assert_eq!(row.len(), ncols);
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c as u32, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { nrows: dense.len(), ncols, rows }
    }

    /// Applies `f` entrywise, dropping entries that become zero.
    pub fn map<U: Clone + Zero>(&self, mut f: impl FnMut(&T) -> U) -> SparseMatrix<U> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, v)| {
                        let u = f(v);
                        (!u.is_zero()).then_some((*c, u))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(mut self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.ncols, "column counts differ");
        self.rows.extend(other.rows.iter().cloned());
        self.nrows += other.nrows;
        self
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }
}

impl<T: Clone> SparseMatrix<T> {
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &SparseRow<T> {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseRow<T>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseRow<T>> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> T
    where
        T: Zero,
    {
        let row = &self.rows[r];
        match row.binary_search_by_key(&(c as u32), |(col, _)| *col) {
            Ok(k) => row[k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseRow<T>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c as usize].push((r as u32, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows: cols }
    }

    /// Builds from rows that are already sorted and free of zeros.
    pub fn from_sorted_rows(ncols: usize, rows: Vec<SparseRow<T>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)));
        SparseMatrix { nrows: rows.len(), ncols, rows }
    }
}

fn normalize_row<T: Clone + Zero>(mut row: Vec<(u32, T)>) -> SparseRow<T> {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow<T> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = lv.clone() + v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl SparseMatrix<BigInt> {
    /// Reduces every entry into the given field.
    pub fn reduce<F: Field>(&self, field: &F) -> SparseMatrix<F::Elem> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, v)| {
                        let u = field.from_int(v);
                        (!field.is_zero(&u)).then_some((*c, u))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| row.iter().map(|(c, x)| x * &v[*c as usize]).sum())
            .collect()
    }

    /// Writes the matrix in MatrixMarket coordinate format with 1-based indices.
    pub fn write_matrix_market<W: Write>(&self, out: &mut W) -> Result<()> {
        write_mm(out, self.nrows, self.ncols, self.entries())
    }

    pub fn read_matrix_market<R: BufRead>(input: R) -> Result<Self> {
        let (nrows, ncols, triplets) = read_mm::<R, BigInt>(input)?;
        Ok(SparseMatrix::from_triplets(nrows, ncols, triplets))
    }
}

pub(crate) fn write_mm<'a, W: Write, T: Display + 'a>(
    out: &mut W,
    nrows: usize,
    ncols: usize,
    entries: impl Iterator<Item = (usize, usize, &'a T)>,
) -> Result<()> {
    let entries: Vec<_> = entries.collect();
    writeln!(out, "%%MatrixMarket matrix coordinate integer general")?;
    writeln!(out, "{nrows} {ncols} {}", entries.len())?;
    for (r, c, v) in entries {
        writeln!(out, "{} {} {v}", r + 1, c + 1)?;
    }
    Ok(())
}

type Triplets<T> = Vec<(usize, usize, T)>;

pub(crate) fn read_mm<R: BufRead, T: FromStr>(input: R) -> Result<(usize, usize, Triplets<T>)> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))??;
    if !header.starts_with("%%MatrixMarket matrix coordinate integer") {
        return Err(Error::Parse(format!("unsupported header `{header}`")));
    }
    let mut size: Option<(usize, usize, usize)> = None;
    let mut triplets = Vec::new();
    for line in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad index `{s}`")));
        match size {
            None => {
                if fields.len() != 3 {
                    return Err(Error::Parse(format!("bad size line `{line}`")));
                }
                size = Some((parse(fields[0])?, parse(fields[1])?, parse(fields[2])?));
            }
            Some((nrows, ncols, _)) => {
                if fields.len() != 3 {
                    return Err(Error::Parse(format!("bad entry line `{line}`")));
                }
                let (r, c) = (parse(fields[0])?, parse(fields[1])?);
                if r == 0 || c == 0 || r > nrows || c > ncols {
                    return Err(Error::Parse(format!("index out of range in `{line}`")));
                }
                let v = fields[2].parse::<T>().map_err(|_| Error::Parse(format!("bad value `{}`", fields[2])))?;
                triplets.push((r - 1, c - 1, v));
            }
        }
    }
    let (nrows, ncols, nnz) = size.ok_or_else(|| Error::Parse("missing size line".into()))?;
    if triplets.len() != nnz {
        return Err(Error::Parse(format!("expected {nnz} entries, found {}", triplets.len())));
    }
    Ok((nrows, ncols, triplets))
}

/// A sparse matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseFpMatrix {
    field: PrimeField,
    matrix: SparseMatrix<u32>,
}

impl SparseFpMatrix {
    pub fn new(field: PrimeField, matrix: SparseMatrix<u32>) -> Self {
        let p = field.modulus() as u32;
        assert!(matrix.entries().all(|(_, _, v)| *v != 0 && *v < p), "entries must be nonzero residues");
        SparseFpMatrix { field, matrix }
    }

    pub fn from_int(m: &SparseMatrix<BigInt>, field: PrimeField) -> Self {
        SparseFpMatrix { field, matrix: m.reduce(&field) }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn matrix(&self) -> &SparseMatrix<u32> {
        &self.matrix
    }

    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn transpose(&self) -> Self {
        SparseFpMatrix { field: self.field, matrix: self.matrix.transpose() }
    }

    pub fn write_matrix_market<W: Write>(&self, out: &mut W) -> Result<()> {
        write_mm(out, self.nrows(), self.ncols(), self.matrix.entries())
    }
}
