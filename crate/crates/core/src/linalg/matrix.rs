use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Subspace;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// Dense row-major matrix over [`Rational`]. Zero-sized shapes are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Rational) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diag(entries: &[Rational]) -> Mat {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Row-major constructor; panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Mat {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Mat { rows, cols, data }
    }

    /// Row-major integer constructor, mostly for fixtures.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Mat {
        Mat::from_vec(rows, cols, data.iter().map(|&x| Rational::from(x)).collect())
    }

    /// Builds from a list of rows, rejecting ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Mat> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Mat { rows: n, cols, data })
    }

    /// Builds a `rows × k` matrix from `k` column vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Mat {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and the
    /// negated low-order coefficients in the last column.
    pub fn companion(mu: &Poly) -> Mat {
        let r = mu.degree().unwrap_or(0);
        let mut m = Mat::zeros(r, r);
        for i in 1..r {
            m[(i, i - 1)] = Rational::one();
        }
        for i in 0..r {
            m[(i, r - 1)] = -mu.coeff(i);
        }
        m
    }

    /// `n × n` nilpotent Jordan block (ones on the superdiagonal).
    pub fn jordan_block(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 1..n {
            m[(i - 1, i)] = Rational::one();
        }
        m
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let rows = blocks.iter().map(Mat::rows).sum();
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut m = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Concatenates matrices with equal row counts left to right.
    pub fn hstack(parts: &[&Mat], rows: usize) -> Mat {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Mat::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            m.set_block(0, c0, p);
            c0 += p.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Columns `start..end` as a matrix.
    pub fn column_range(&self, start: usize, end: usize) -> Mat {
        self.block(0, start, self.rows, end - start)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert!(self.is_square(), "pow needs a square matrix");
        let mut result = Mat::identity(self.rows);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Reduced row-echelon form. Pivots are taken in the leftmost available
    /// column, using the first row at or below the current one with a
    /// nonzero entry.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let x = &f * &m[(r, j)];
                    m[(i, j)] -= x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space `{x : self·x = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let Rref { reduced, pivots, .. } = self.rref();
        let mut vectors = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&reduced[(r, free)];
            }
            vectors.push(v);
        }
        Subspace::from_spanning(&Mat::from_columns(self.cols, &vectors))
    }

    /// Basis of the column space.
    pub fn image_basis(&self) -> Subspace {
        Subspace::from_spanning(self)
    }

    /// One particular solution `X` of `self·X = rhs`, with free variables set
    /// to zero.
    pub fn solve(&self, rhs: &Mat) -> Result<Mat> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} equations but right-hand side has {} rows",
                self.rows, rhs.rows
            )));
        }
        let aug = Mat::hstack(&[self, rhs], self.rows);
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Mat::zeros(self.cols, rhs.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = reduced[(r, self.cols + j)].clone();
            }
        }
        Ok(x)
    }

    pub fn solve_vec(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        let b = Mat::from_columns(self.rows, &[rhs.to_vec()]);
        Ok(self.solve(&b)?.column(0))
    }

    pub fn inverse(&self) -> Result<Mat> {
        self.require_square()?;
        if self.rank() != self.rows {
            return Err(Error::Singular);
        }
        self.solve(&Mat::identity(self.rows))
    }

    /// Characteristic polynomial `det(λI − A)` by the Faddeev–LeVerrier
    /// recurrence `M_k = A·M_{k−1} + c_{n−k+1}·I`, `c_{n−k} = −tr(A·M_k)/k`.
    pub fn char_poly(&self) -> Result<Poly> {
        self.require_square()?;
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Mat::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self * &next;
            coeffs[n - k] = -(am.trace() / Rational::from(k));
            m = next;
        }
        Ok(Poly::new(coeffs))
    }

    /// `f(A)` by Horner's scheme.
    pub fn eval_poly(&self, f: &Poly) -> Result<Mat> {
        self.require_square()?;
        let n = self.rows;
        let mut acc = Mat::zeros(n, n);
        for c in f.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }

    /// Matrix of `A` restricted to the invariant subspace `w`, in the
    /// coordinates of `w`'s basis: the unique `R` with `A·B = B·R`.
    pub fn restrict(&self, w: &Subspace) -> Result<Mat> {
        self.require_square()?;
        if w.ambient_dim() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "restrict: subspace of dimension-{} space, matrix is {}x{}",
                w.ambient_dim(),
                self.rows,
                self.cols
            )));
        }
        let image = self * w.basis();
        w.basis().solve(&image).map_err(|e| match e {
            Error::NoSolution => Error::NotInvariant,
            other => other,
        })
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{:?}", self.to_rows())
    }
}

impl fmt::Display for Mat {
    /// Right-aligned columns, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| text[i * self.cols + j].chars().count()).max().unwrap_or(0))
            .collect();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>w$}", text[i * self.cols + j], w = widths[j]))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        Mat::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(rows: usize, cols: usize, d: &[i64]) -> Mat {
        Mat::from_i64(rows, cols, d)
    }

    #[test]
    fn rref_examples() {
        let r = Mat::identity(3).rref();
        assert_eq!((r.reduced, r.pivots, r.rank), (Mat::identity(3), vec![0, 1, 2], 3));
        let r = m(2, 2, &[1, 2, 2, 4]).rref();
        assert_eq!((r.reduced, r.pivots, r.rank), (m(2, 2, &[1, 2, 0, 0]), vec![0], 1));
        let r = Mat::zeros(2, 3).rref();
        assert_eq!((r.reduced, r.pivots, r.rank), (Mat::zeros(2, 3), vec![], 0));
    }

    #[test]
    fn kernel_examples() {
        let k = m(2, 2, &[0, 1, 0, 0]).kernel_basis();
        assert_eq!(k.basis(), &m(2, 1, &[1, 0]));
        assert_eq!(Mat::identity(3).kernel_basis().dim(), 0);
        let k = m(2, 2, &[1, 1, 1, 1]).kernel_basis();
        assert_eq!(k.basis(), &m(2, 1, &[1, -1]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(m(2, 2, &[0, 1, 0, 0]).image_basis().basis(), &m(2, 1, &[1, 0]));
        assert_eq!(Mat::zeros(3, 3).image_basis().dim(), 0);
        assert_eq!(m(2, 2, &[1, 1, 1, 1]).image_basis().basis(), &m(2, 1, &[1, 1]));
    }

    #[test]
    fn solve_examples() {
        let b = m(3, 1, &[4, -1, 2]);
        assert_eq!(Mat::identity(3).solve(&b).unwrap(), b);
        let n = m(2, 2, &[0, 1, 0, 0]);
        assert_eq!(n.solve(&m(2, 1, &[1, 0])).unwrap(), m(2, 1, &[0, 1]));
        assert_eq!(n.solve(&m(2, 1, &[0, 1])), Err(Error::NoSolution));
        // Free variables are zero.
        assert_eq!(m(1, 2, &[1, 1]).solve(&m(1, 1, &[3])).unwrap(), m(2, 1, &[3, 0]));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(m(2, 2, &[0, -1, 1, 0]).char_poly().unwrap(), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(Mat::zeros(2, 2).char_poly().unwrap(), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(m(2, 2, &[1, 1, 0, 1]).char_poly().unwrap(), Poly::from_ints(&[1, -2, 1]));
        assert_eq!(Mat::zeros(0, 0).char_poly().unwrap(), Poly::one());
        assert!(Mat::zeros(2, 3).char_poly().is_err());
    }

    #[test]
    fn eval_poly_examples() {
        let a = m(2, 2, &[3, 1, 4, 1]);
        assert_eq!(a.eval_poly(&Poly::one()).unwrap(), Mat::identity(2));
        assert_eq!(a.eval_poly(&Poly::lambda()).unwrap(), a);
        assert_eq!(a.eval_poly(&Poly::zero()).unwrap(), Mat::zeros(2, 2));
        let rot = m(2, 2, &[0, -1, 1, 0]);
        assert!(rot.eval_poly(&Poly::from_ints(&[1, 0, 1])).unwrap().is_zero());
        assert_eq!(a.eval_poly(&Poly::constant(rat(5))).unwrap(), Mat::scalar(2, &rat(5)));
    }

    #[test]
    fn restrict_examples() {
        let j = m(2, 2, &[1, 1, 0, 1]);
        let e1 = Subspace::from_spanning(&m(2, 1, &[1, 0]));
        let e2 = Subspace::from_spanning(&m(2, 1, &[0, 1]));
        assert_eq!(j.restrict(&e1).unwrap(), m(1, 1, &[1]));
        assert_eq!(j.restrict(&e2), Err(Error::NotInvariant));
        assert_eq!(m(2, 2, &[2, 0, 0, 3]).restrict(&e2).unwrap(), m(1, 1, &[3]));
    }

    #[test]
    fn companion_and_blocks() {
        let c = Mat::companion(&Poly::from_ints(&[1, 0, 1]));
        assert_eq!(c, m(2, 2, &[0, -1, 1, 0]));
        assert_eq!(c.char_poly().unwrap(), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(Mat::jordan_block(2), m(2, 2, &[0, 1, 0, 0]));
        let bd = Mat::block_diag(&[m(1, 1, &[2]), m(1, 1, &[3])]);
        assert_eq!(bd, m(2, 2, &[2, 0, 0, 3]));
    }

    #[test]
    fn inverse_and_ragged() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        assert_eq!(&a * &a.inverse().unwrap(), Mat::identity(2));
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).inverse(), Err(Error::Singular));
        let ragged = Mat::from_rows(vec![vec![rat(1), rat(2)], vec![rat(3)]]);
        assert!(matches!(ragged, Err(Error::RaggedRows { row: 1, .. })));
    }
}
