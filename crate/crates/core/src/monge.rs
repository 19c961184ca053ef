//! Column minima of Monge matrices.
//!
//! Matrices here are *convex Monge* in the sense
//! `M[i][j] + M[i'][j'] >= M[i][j'] + M[i'][j]` for `i < i'`, `j < j'`,
//! so column argmins move weakly upward as the column index grows.
//! Entries are extended integers: [`INF`] stands for `+inf` and is only ever
//! produced by adding a finite value to a row offset that is itself `INF`.

use std::cell::Cell;

use crate::graph::INF;

/// Anything that can evaluate entries of a `rows x cols` matrix in O(1).
pub trait MatrixOracle {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> i64;
}

/// Matrix given by a closure.
pub struct FnMatrix<F> {
    rows: usize,
    cols: usize,
    f: F,
}

impl<F: Fn(usize, usize) -> i64> FnMatrix<F> {
    pub fn new(rows: usize, cols: usize, f: F) -> Self {
        Self { rows, cols, f }
    }
}

impl<F: Fn(usize, usize) -> i64> MatrixOracle for FnMatrix<F> {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn entry(&self, i: usize, j: usize) -> i64 {
        (self.f)(i, j)
    }
}

/// Dense row-major matrix, mostly for tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl DenseMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }
}

impl MatrixOracle for DenseMatrix {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn entry(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }
}

/// Wraps an oracle and counts evaluator calls.
pub struct Counted<'a, M: ?Sized> {
    inner: &'a M,
    calls: Cell<u64>,
}

impl<'a, M: MatrixOracle + ?Sized> Counted<'a, M> {
    pub fn new(inner: &'a M) -> Self {
        Self {
            inner,
            calls: Cell::new(0),
        }
    }
    pub fn calls(&self) -> u64 {
        self.calls.get()
    }
}

impl<M: MatrixOracle + ?Sized> MatrixOracle for Counted<'_, M> {
    fn rows(&self) -> usize {
        self.inner.rows()
    }
    fn cols(&self) -> usize {
        self.inner.cols()
    }
    fn entry(&self, i: usize, j: usize) -> i64 {
        self.calls.set(self.calls.get() + 1);
        self.inner.entry(i, j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnMin {
    pub value: i64,
    pub row: usize,
}

/// Column minima of a convex Monge (hence totally monotone) matrix with
/// O(rows + cols) evaluations. Ties go to the smallest row index.
///
/// Garbage in, garbage out if the matrix is not totally monotone.
pub fn smawk_column_minima<M: MatrixOracle + ?Sized>(m: &M) -> Vec<ColumnMin> {
    let (rows, cols) = (m.rows(), m.cols());
    if cols == 0 {
        return Vec::new();
    }
    assert!(rows > 0, "column minima of a matrix without rows");
    // Reversing the rows turns the matrix into an ordinary Monge matrix whose
    // argmins are non-decreasing; a later reversed row is an earlier real one,
    // so "later row wins ties" gives the smallest real index.
    let row_ids: Vec<usize> = (0..rows).rev().collect();
    let col_ids: Vec<usize> = (0..cols).collect();
    smawk_rec(m, &row_ids, &col_ids)
        .into_iter()
        .map(|(p, value)| ColumnMin {
            value,
            row: row_ids[p],
        })
        .collect()
}

/// `rows`/`cols` are global indices. Returns, per entry of `cols`, the
/// position in `rows` of its minimum and the minimum; later rows in `rows`
/// win ties.
fn smawk_rec<M: MatrixOracle + ?Sized>(m: &M, rows: &[usize], cols: &[usize]) -> Vec<(usize, i64)> {
    if cols.is_empty() {
        return Vec::new();
    }
    // positions into `rows` surviving the reduction, with the entry of each
    // at its own stack column once known
    let mut stack: Vec<usize> = Vec::with_capacity(cols.len().min(rows.len()));
    if rows.len() <= cols.len() {
        stack.extend(0..rows.len());
    } else {
        let mut top_val: Vec<Option<i64>> = Vec::with_capacity(cols.len());
        for (p, &r) in rows.iter().enumerate() {
            while let Some(&top) = stack.last() {
                let s = stack.len() - 1;
                let c = cols[s];
                let tv = *top_val[s].get_or_insert_with(|| m.entry(rows[top], c));
                if tv >= m.entry(r, c) {
                    stack.pop();
                    top_val.pop();
                } else {
                    break;
                }
            }
            if stack.len() < cols.len() {
                stack.push(p);
                top_val.push(None);
            }
        }
    }
    let kept: Vec<usize> = stack.iter().map(|&p| rows[p]).collect();
    let mut result = vec![(0usize, 0i64); cols.len()];
    if cols.len() == 1 {
        let (p, v) = best_row(m, &kept, 0, kept.len() - 1, cols[0]);
        result[0] = (stack[p], v);
        return result;
    }
    let odd: Vec<usize> = cols.iter().skip(1).step_by(2).copied().collect();
    let odd_res = smawk_rec(m, &kept, &odd);
    // fill even columns between the argmins of their odd neighbours
    let mut start = 0;
    for k in (0..cols.len()).step_by(2) {
        let end = if k + 1 < cols.len() { odd_res[k / 2].0 } else { kept.len() - 1 };
        let (p, v) = best_row(m, &kept, start, end, cols[k]);
        result[k] = (stack[p], v);
        if k + 1 < cols.len() {
            let (q, w) = odd_res[k / 2];
            result[k + 1] = (stack[q], w);
        }
        start = end;
    }
    result
}

/// Position in `rows[lo..=hi]` minimising column `c` and the minimum, later
/// rows winning ties.
fn best_row<M: MatrixOracle + ?Sized>(m: &M, rows: &[usize], lo: usize, hi: usize, c: usize) -> (usize, i64) {
    let mut best = lo;
    let mut val = m.entry(rows[lo], c);
    for p in lo + 1..=hi {
        let v = m.entry(rows[p], c);
        if v <= val {
            val = v;
            best = p;
        }
    }
    (best, val)
}

/// Exhaustive O(rows * cols) scan; smallest row wins ties.
pub fn brute_force_column_minima<M: MatrixOracle + ?Sized>(m: &M) -> Vec<ColumnMin> {
    (0..m.cols())
        .map(|j| {
            let mut best = ColumnMin {
                value: m.entry(0, j),
                row: 0,
            };
            for i in 1..m.rows() {
                let v = m.entry(i, j);
                if v < best.value {
                    best = ColumnMin { value: v, row: i };
                }
            }
            best
        })
        .collect()
}

/// Shape of the valid region of a staircase matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Staircase {
    /// `(i, j)` valid iff `i <= j`.
    Upper,
    /// `(i, j)` valid iff `i >= j`.
    Lower,
}

impl Staircase {
    #[inline]
    pub fn valid(self, i: usize, j: usize) -> bool {
        match self {
            Staircase::Upper => i <= j,
            Staircase::Lower => i >= j,
        }
    }
}

/// Column minima over the valid entries of a triangular staircase matrix
/// whose fully valid rectangular blocks are convex Monge. Columns with no
/// valid entry report `None`. Ties go to the smallest row.
///
/// The valid region is split recursively into fully valid rectangles, each
/// solved with SMAWK: O((rows + cols) log(rows + cols)) evaluations.
pub fn staircase_column_minima<M: MatrixOracle + ?Sized>(m: &M, shape: Staircase) -> Vec<Option<ColumnMin>> {
    let mut out = vec![None; m.cols()];
    staircase_rec(m, shape, 0, m.rows(), 0, m.cols(), &mut out);
    out
}

fn staircase_rec<M: MatrixOracle + ?Sized>(
    m: &M,
    shape: Staircase,
    r0: usize,
    r1: usize,
    c0: usize,
    c1: usize,
    out: &mut [Option<ColumnMin>],
) {
    if r0 >= r1 || c0 >= c1 {
        return;
    }
    // corners decide: the block is empty, full, or mixed
    let (any, all) = match shape {
        Staircase::Upper => (r0 <= c1 - 1, r1 - 1 <= c0),
        Staircase::Lower => (r1 - 1 >= c0, r0 >= c1 - 1),
    };
    if !any {
        return;
    }
    if all {
        let block = FnMatrix::new(r1 - r0, c1 - c0, |i, j| m.entry(r0 + i, c0 + j));
        for (j, cm) in smawk_column_minima(&block).into_iter().enumerate() {
            let cand = ColumnMin {
                value: cm.value,
                row: cm.row + r0,
            };
            let slot = &mut out[c0 + j];
            if slot.is_none_or(|s| cand.value < s.value || (cand.value == s.value && cand.row < s.row)) {
                *slot = Some(cand);
            }
        }
        return;
    }
    if r1 - r0 >= c1 - c0 {
        let mid = r0 + (r1 - r0) / 2;
        staircase_rec(m, shape, r0, mid, c0, c1, out);
        staircase_rec(m, shape, mid, r1, c0, c1, out);
    } else {
        let mid = c0 + (c1 - c0) / 2;
        staircase_rec(m, shape, r0, r1, c0, mid, out);
        staircase_rec(m, shape, r0, r1, mid, c1, out);
    }
}

/// Masked exhaustive scan; the reference for [`staircase_column_minima`].
pub fn brute_force_staircase_minima<M: MatrixOracle + ?Sized>(m: &M, shape: Staircase) -> Vec<Option<ColumnMin>> {
    (0..m.cols())
        .map(|j| {
            let mut best: Option<ColumnMin> = None;
            for i in 0..m.rows() {
                if !shape.valid(i, j) {
                    continue;
                }
                let v = m.entry(i, j);
                if best.is_none_or(|b| v < b.value) {
                    best = Some(ColumnMin { value: v, row: i });
                }
            }
            best
        })
        .collect()
}

/// Quadrangle inequality on all adjacent 2x2 submatrices (which implies it
/// for all quadruples). `INF` entries are treated as +inf: an infinite
/// left-hand side always satisfies the inequality, an infinite right-hand
/// side against a finite left-hand side violates it.
pub fn is_convex_monge<M: MatrixOracle + ?Sized>(m: &M) -> bool {
    let inf = |v: i64| v >= INF / 2;
    for i in 0..m.rows().saturating_sub(1) {
        for j in 0..m.cols().saturating_sub(1) {
            let (a, b, c, d) = (m.entry(i, j), m.entry(i + 1, j + 1), m.entry(i, j + 1), m.entry(i + 1, j));
            if inf(a) || inf(b) {
                continue;
            }
            if inf(c) || inf(d) {
                return false;
            }
            if (a as i128) + (b as i128) < (c as i128) + (d as i128) {
                return false;
            }
        }
    }
    true
}

/// [`is_convex_monge`] restricted to the valid entries of a staircase. An
/// adjacent 2x2 block is checked only when all four entries are valid, which
/// suffices because every rectangle spanned by a valid quadruple is valid.
pub fn is_convex_monge_staircase<M: MatrixOracle + ?Sized>(m: &M, shape: Staircase) -> bool {
    let inf = |v: i64| v >= INF / 2;
    for i in 0..m.rows().saturating_sub(1) {
        for j in 0..m.cols().saturating_sub(1) {
            if !(shape.valid(i, j) && shape.valid(i + 1, j + 1) && shape.valid(i, j + 1) && shape.valid(i + 1, j)) {
                continue;
            }
            let (a, b, c, d) = (m.entry(i, j), m.entry(i + 1, j + 1), m.entry(i, j + 1), m.entry(i + 1, j));
            if inf(a) || inf(b) {
                continue;
            }
            if inf(c) || inf(d) || (a as i128) + (b as i128) < (c as i128) + (d as i128) {
                return false;
            }
        }
    }
    true
}
