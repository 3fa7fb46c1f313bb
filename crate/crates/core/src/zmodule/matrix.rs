use std::fmt;
use std::ops::{Index, IndexMut};

use super::int::Int;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn scalar(n: usize, c: impl Into<Int>) -> Self {
        let c = c.into();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    /// Builds from row vectors; all rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<Int>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            data: vals.iter().map(|&v| Int::from(v)).collect(),
        }
    }

    /// Convenience for literals: `IntMatrix::lit(&[&[1, 2], &[3, 4]])`.
    pub fn lit(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Int::from(v)).collect())
            .collect();
        Self::from_rows(&rows, cols)
    }

    pub fn from_columns(cols: &[Vec<Int>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[Int]) -> Self {
        IntMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Int> {
        self.row(i).to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols,
            other.rows,
            "matrix shape mismatch {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    out[(i, j)] += &prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Int::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix add shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.shape(), other.shape(), "matrix sub shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&Int::from(-1))
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(a.rows + b.rows, a.cols + b.cols);
        out.set_block(0, 0, a);
        out.set_block(a.rows, a.cols, b);
        out
    }

    /// Assembles a matrix from a grid of blocks; `None` entries are zero.
    pub fn blocks(
        row_sizes: &[usize],
        col_sizes: &[usize],
        f: impl Fn(usize, usize) -> Option<IntMatrix>,
    ) -> IntMatrix {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = f(bi, bj) {
                    assert_eq!(b.shape(), (rs, cs), "block ({bi},{bj}) has wrong shape");
                    out.set_block(r0, c0, &b);
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &IntMatrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<Int>> = idx.iter().map(|&i| self.row_vec(i)).collect();
        IntMatrix::from_rows(&rows, self.cols)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)];
            if v.is_zero() {
                continue;
            }
            let p = v * c;
            self[(dst, j)] += &p;
        }
    }

    /// col[dst] += c * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)];
            if v.is_zero() {
                continue;
            }
            let p = v * c;
            self[(i, dst)] += &p;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Applies the unimodular 2x2 transform `[a b; c d]` to rows `i`, `k`:
    /// `(row_i, row_k) <- (a row_i + b row_k, c row_i + d row_k)`.
    pub fn rows_transform(&mut self, i: usize, k: usize, t: [&Int; 4]) {
        let [a, b, c, d] = t;
        for j in 0..self.cols {
            let x = self[(i, j)].clone();
            let y = self[(k, j)].clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self[(i, j)] = a * &x + b * &y;
            self[(k, j)] = c * &x + d * &y;
        }
    }

    /// Applies `[a b; c d]` to columns `i`, `k`:
    /// `(col_i, col_k) <- (a col_i + b col_k, c col_i + d col_k)`.
    pub fn cols_transform(&mut self, i: usize, k: usize, t: [&Int; 4]) {
        let [a, b, c, d] = t;
        for r in 0..self.rows {
            let x = self[(r, i)].clone();
            let y = self[(r, k)].clone();
            if x.is_zero() && y.is_zero() {
                continue;
            }
            self[(r, i)] = a * &x + b * &y;
            self[(r, k)] = c * &x + d * &y;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = 1i64;
        let mut prev = Int::one();
        for k in 0..n {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                    return Int::zero();
                };
                m.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn entries(&self) -> &[Int] {
        &self.data
    }

    pub fn max_abs(&self) -> Int {
        self.data.iter().map(Int::abs).max().unwrap_or_default()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Bracket-row notation, e.g. `[[1,2],[3,4]]`; an empty matrix prints `[]`.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}{}", self.rows, self.cols, self)
    }
}

pub fn vec_is_zero(v: &[Int]) -> bool {
    v.iter().all(Int::is_zero)
}

pub fn vec_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_add(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_neg(a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| -x).collect()
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(IntMatrix::lit(&[&[2, 4], &[6, 8]]).det(), Int::from(-8));
        assert_eq!(IntMatrix::identity(3).det(), Int::one());
        assert_eq!(IntMatrix::lit(&[&[0, 1], &[1, 0]]).det(), Int::from(-1));
        assert_eq!(IntMatrix::lit(&[&[1, 2], &[2, 4]]).det(), Int::zero());
    }

    #[test]
    fn display_brackets() {
        assert_eq!(
            IntMatrix::lit(&[&[1, -2], &[3, 4]]).to_string(),
            "[[1,-2],[3,4]]"
        );
        assert_eq!(IntMatrix::zeros(0, 3).to_string(), "[]");
    }
}
