//! Sparse Gaussian elimination over a field.
//!
//! Pivots are chosen column-first: the live column with the fewest entries
//! (lowest index on ties), then the shortest row containing it (lowest index on
//! ties). Once the remaining active block is dense enough it is finished with
//! ordinary dense elimination.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Field;
use super::matrix::{SparseMatrix, SparseRow};

/// Forward-eliminated rows, in pivot order. Each stored row has a one at its
/// pivot column and no entries in the pivot columns of earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    ncols: usize,
    pivots: Vec<(u32, SparseRow<E>)>,
}

impl<E: Clone> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivots.iter().map(|(c, _)| *c as usize).collect();
        cols.sort_unstable();
        cols
    }

    pub fn pivot_rows(&self) -> &[(u32, SparseRow<E>)] {
        &self.pivots
    }

    /// Basis of the right kernel, one dense vector per non-pivot column.
    pub fn kernel_basis<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut is_pivot = vec![false; self.ncols];
        for (c, _) in &self.pivots {
            is_pivot[*c as usize] = true;
        }
        (0..self.ncols)
            .filter(|c| !is_pivot[*c])
            .map(|free| {
                let mut x = vec![field.zero(); self.ncols];
                x[free] = field.one();
                for (pc, row) in self.pivots.iter().rev() {
                    let mut acc = field.zero();
                    for (j, v) in row {
                        if j != pc && !field.is_zero(&x[*j as usize]) {
                            acc = field.sub_mul(&acc, v, &x[*j as usize]);
                        }
                    }
                    x[*pc as usize] = acc;
                }
                x
            })
            .collect()
    }
}

/// Rank of `m` over `field`.
pub fn rank<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> usize {
    rank_of_rows(field, m.ncols(), m.rows().to_vec())
}

/// Rank of the matrix with the given rows, consuming them.
pub fn rank_of_rows<F: Field>(field: &F, ncols: usize, rows: Vec<SparseRow<F::Elem>>) -> usize {
    let mut m = Markowitz::new(field, ncols, rows, false);
    m.eliminate();
    m.rank
}

/// Forward elimination keeping the pivot rows.
pub fn echelon<F: Field>(field: &F, ncols: usize, rows: Vec<SparseRow<F::Elem>>) -> Echelon<F::Elem> {
    let mut m = Markowitz::new(field, ncols, rows, true);
    m.eliminate();
    Echelon { ncols, pivots: m.pivots }
}

/// Basis of `{x : m x = 0}`.
pub fn kernel_basis<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    echelon(field, m.ncols(), m.rows().to_vec()).kernel_basis(field)
}

/// Basis of `{y : y m = 0}`.
pub fn left_kernel_basis<F: Field>(field: &F, m: &SparseMatrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let t = m.transpose();
    echelon(field, t.ncols(), t.into_rows()).kernel_basis(field)
}

const DENSE_MIN_COUNT: u32 = 6;
const DENSE_MAX_CELLS: usize = 60_000_000;

struct Markowitz<'a, F: Field> {
    field: &'a F,
    ncols: usize,
    keep: bool,
    rows: Vec<SparseRow<F::Elem>>,
    alive: Vec<bool>,
    alive_rows: usize,
    col_rows: Vec<Vec<u32>>,
    col_cnt: Vec<u32>,
    col_done: Vec<bool>,
    active_cols: usize,
    nnz: usize,
    heap: BinaryHeap<Reverse<(u32, u32)>>,
    stamp: Vec<u32>,
    epoch: u32,
    pivots: Vec<(u32, SparseRow<F::Elem>)>,
    rank: usize,
}

impl<'a, F: Field> Markowitz<'a, F> {
    fn new(field: &'a F, ncols: usize, mut rows: Vec<SparseRow<F::Elem>>, keep: bool) -> Self {
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
        let mut col_cnt = vec![0u32; ncols];
        let mut nnz = 0;
        let mut alive = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter_mut().enumerate() {
            row.retain(|(_, v)| !field.is_zero(v));
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0), "row not sorted");
            for (c, _) in row.iter() {
                col_rows[*c as usize].push(i as u32);
                col_cnt[*c as usize] += 1;
            }
            nnz += row.len();
            alive.push(!row.is_empty());
        }
        let alive_rows = alive.iter().filter(|a| **a).count();
        let mut heap = BinaryHeap::new();
        let mut active_cols = 0;
        for (c, &cnt) in col_cnt.iter().enumerate() {
            if cnt > 0 {
                heap.push(Reverse((cnt, c as u32)));
                active_cols += 1;
            }
        }
        Markowitz {
            field,
            ncols,
            keep,
            rows,
            alive,
            alive_rows,
            col_rows,
            col_cnt,
            col_done: vec![false; ncols],
            active_cols,
            nnz,
            heap,
            stamp: vec![0; ncols],
            epoch: 0,
            pivots: Vec::new(),
            rank: 0,
        }
    }

    fn eliminate(&mut self) {
        while let Some(Reverse((cnt, c))) = self.heap.pop() {
            let cu = c as usize;
            if self.col_done[cu] || self.col_cnt[cu] != cnt || cnt == 0 {
                continue;
            }
            if cnt >= DENSE_MIN_COUNT && self.dense_is_worthwhile() {
                self.finish_dense();
                break;
            }
            self.pivot_on(cu);
        }
    }

    fn dense_is_worthwhile(&self) -> bool {
        let cells = self.alive_rows.saturating_mul(self.active_cols);
        cells <= DENSE_MAX_CELLS && self.nnz.saturating_mul(8) >= cells
    }

    fn contains(&self, row: usize, col: u32) -> bool {
        self.rows[row].binary_search_by_key(&col, |(c, _)| *c).is_ok()
    }

    fn pivot_on(&mut self, c: usize) {
        let mut cand: Vec<u32> = std::mem::take(&mut self.col_rows[c]);
        cand.sort_unstable();
        cand.dedup();
        cand.retain(|&i| self.alive[i as usize] && self.contains(i as usize, c as u32));
        debug_assert_eq!(cand.len() as u32, self.col_cnt[c]);
        let &piv = cand
            .iter()
            .min_by_key(|&&i| (self.rows[i as usize].len(), i))
            .expect("column count positive");
        let piv = piv as usize;

        let mut prow = std::mem::take(&mut self.rows[piv]);
        let k = prow.binary_search_by_key(&(c as u32), |(col, _)| *col).unwrap();
        let inv = self.field.inv(&prow[k].1);
        if inv != self.field.one() {
            for (_, v) in prow.iter_mut() {
                *v = self.field.mul(v, &inv);
            }
        }
        self.alive[piv] = false;
        self.alive_rows -= 1;
        self.nnz -= prow.len();

        self.epoch += 1;
        let mut touched: Vec<u32> = Vec::new();
        for (j, _) in &prow {
            let ju = *j as usize;
            if ju != c {
                self.col_cnt[ju] -= 1;
                if self.stamp[ju] != self.epoch {
                    self.stamp[ju] = self.epoch;
                    touched.push(*j);
                }
            }
        }

        for &i in &cand {
            let i = i as usize;
            if i == piv {
                continue;
            }
            let row = std::mem::take(&mut self.rows[i]);
            let new_row = self.eliminate_row(i, row, &prow, c as u32, &mut touched);
            if new_row.is_empty() {
                self.alive[i] = false;
                self.alive_rows -= 1;
            }
            self.rows[i] = new_row;
        }

        self.col_cnt[c] = 0;
        self.col_done[c] = true;
        self.active_cols -= 1;
        for j in touched {
            let ju = j as usize;
            if !self.col_done[ju] {
                if self.col_cnt[ju] > 0 {
                    self.heap.push(Reverse((self.col_cnt[ju], j)));
                } else if !self.col_rows[ju].is_empty() {
                    self.col_rows[ju].clear();
                }
            }
        }
        for j in prow.iter().map(|(j, _)| *j as usize) {
            if j != c && !self.col_done[j] && self.col_cnt[j] == 0 {
                self.col_done[j] = true;
                self.active_cols -= 1;
            }
        }
        self.rank += 1;
        if self.keep {
            self.pivots.push((c as u32, prow));
        }
    }

    /// `row - row[c] * prow`, updating column bookkeeping.
    fn eliminate_row(
        &mut self,
        i: usize,
        row: SparseRow<F::Elem>,
        prow: &SparseRow<F::Elem>,
        c: u32,
        touched: &mut Vec<u32>,
    ) -> SparseRow<F::Elem> {
        let field = self.field;
        let factor = row[row.binary_search_by_key(&c, |(col, _)| *col).unwrap()].1.clone();
        let old_len = row.len();
        let mut out: SparseRow<F::Elem> = Vec::with_capacity(row.len() + prow.len());
        let mut a = row.into_iter().peekable();
        let mut b = prow.iter().peekable();
        loop {
            let take = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => 0,
                (None, Some(_)) => 1,
                (Some((ca, _)), Some((cb, _))) => match ca.cmp(cb) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Equal => 2,
                },
            };
            match take {
                0 => out.push(a.next().unwrap()),
                1 => {
                    let (cb, vb) = b.next().unwrap();
                    let v = field.neg(&field.mul(&factor, vb));
                    let cu = *cb as usize;
                    self.col_cnt[cu] += 1;
                    self.col_rows[cu].push(i as u32);
                    if self.stamp[cu] != self.epoch {
                        self.stamp[cu] = self.epoch;
                        touched.push(*cb);
                    }
                    out.push((*cb, v));
                }
                _ => {
                    let (ca, va) = a.next().unwrap();
                    let (_, vb) = b.next().unwrap();
                    if ca == c {
                        continue;
                    }
                    let v = field.sub_mul(&va, &factor, vb);
                    if field.is_zero(&v) {
                        let cu = ca as usize;
                        self.col_cnt[cu] -= 1;
                        if self.stamp[cu] != self.epoch {
                            self.stamp[cu] = self.epoch;
                            touched.push(ca);
                        }
                    } else {
                        out.push((ca, v));
                    }
                }
            }
        }
        self.nnz = self.nnz + out.len() - old_len;
        out
    }

    fn finish_dense(&mut self) {
        let field = self.field;
        let cols: Vec<u32> = (0..self.ncols as u32)
            .filter(|&c| !self.col_done[c as usize] && self.col_cnt[c as usize] > 0)
            .collect();
        let mut pos = vec![u32::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c as usize] = k as u32;
        }
        let width = cols.len();
        let mut basis: Vec<(usize, Vec<F::Elem>)> = Vec::new();
        for i in 0..self.rows.len() {
            if !self.alive[i] {
                continue;
            }
            let mut dense = vec![field.zero(); width];
            for (c, v) in std::mem::take(&mut self.rows[i]) {
                dense[pos[c as usize] as usize] = v;
            }
            for (pc, prow) in &basis {
                let f = dense[*pc].clone();
                if !field.is_zero(&f) {
                    for (d, p) in dense.iter_mut().zip(prow.iter()).skip(*pc) {
                        if !field.is_zero(p) {
                            *d = field.sub_mul(d, &f, p);
                        }
                    }
                }
            }
            if let Some(pc) = dense.iter().position(|v| !field.is_zero(v)) {
                let inv = field.inv(&dense[pc]);
                for d in dense.iter_mut().skip(pc) {
                    *d = field.mul(d, &inv);
                }
                basis.push((pc, dense));
                if basis.len() == width {
                    break;
                }
            }
        }
        self.rank += basis.len();
        if self.keep {
            for (pc, dense) in basis {
                let row: SparseRow<F::Elem> = dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !field.is_zero(v))
                    .map(|(k, v)| (cols[k], v))
                    .collect();
                self.pivots.push((cols[pc], row));
            }
        }
    }
}

/// Dense echelon form grown one row at a time; each insertion reports whether
/// the row was independent of the previous ones.
#[derive(Clone, Debug)]
pub struct IncrementalEchelon<F: Field> {
    field: F,
    width: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> IncrementalEchelon<F> {
    pub fn new(field: F, width: usize) -> Self {
        IncrementalEchelon { field, width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    /// Reduces `v` against the current rows in place.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        let field = &self.field;
        for (pc, row) in &self.rows {
            let f = v[*pc].clone();
            if !field.is_zero(&f) {
                for (d, p) in v.iter_mut().zip(row.iter()).skip(*pc) {
                    if !field.is_zero(p) {
                        *d = field.sub_mul(d, &f, p);
                    }
                }
            }
        }
    }

    pub fn insert(&mut self, mut v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        let field = &self.field;
        match v.iter().position(|x| !field.is_zero(x)) {
            None => false,
            Some(pc) => {
                let inv = field.inv(&v[pc]);
                for d in v.iter_mut().skip(pc) {
                    *d = field.mul(d, &inv);
                }
                self.rows.push((pc, v));
                true
            }
        }
    }

    /// Basis of the vectors orthogonal to every inserted row.
    pub fn orthogonal_complement(&self) -> Vec<Vec<F::Elem>> {
        let rows = self
            .rows
            .iter()
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !self.field.is_zero(v))
                    .map(|(c, v)| (c as u32, v.clone()))
                    .collect()
            })
            .collect();
        echelon(&self.field, self.width, rows).kernel_basis(&self.field)
    }
}
