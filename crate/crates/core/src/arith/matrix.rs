//! Dense exact matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ArithError, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ArithError::Ragged);
        }
        Ok(Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Result<Self, ArithError> {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::ShapeMismatch);
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, ArithError> {
        if v.len() != self.cols {
            return Err(ArithError::ShapeMismatch);
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect())
    }

    /// `v^T * self`, i.e. the combination of rows with coefficients `v`.
    pub fn left_mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, ArithError> {
        self.transpose().mul_vec(v)
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let data = rows.iter().flat_map(|&i| self.row(i).to_vec()).collect();
        Matrix { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, ArithError> {
        if self.rows != other.rows {
            return Err(ArithError::ShapeMismatch);
        }
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Self::from_rows(self.field, rows).map(|mut m| {
            m.cols = self.cols + other.cols;
            m
        })
    }

    /// `self * diag(d)`: scales column `j` by `d[j]`.
    pub fn scale_columns(&self, d: &[Scalar]) -> Matrix {
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, dj) in d.iter().enumerate() {
                out.set(i, j, self.get(i, j) * dj);
            }
        }
        out
    }

    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
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
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().pivots.len()
    }

    /// Determinant by Bareiss' fraction-free elimination.
    pub fn det(&self) -> Result<Scalar, ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::NonSquare);
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        let mut m = self.clone();
        let mut prev = self.field.one();
        let mut negate = false;
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(p) => {
                        m.swap_rows(k, p);
                        negate = !negate;
                    }
                    None => return Ok(self.field.zero()),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(m.get(i, j) * &pivot) - &(m.get(i, k) * m.get(k, j));
                    m.set(i, j, num.div(&prev)?);
                }
                m.set(i, k, self.field.zero());
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    /// Rows form a basis of the right kernel `{v : self * v = 0}`.
    ///
    /// Over `Q` each row is scaled to coprime integers.
    pub fn kernel_basis(&self) -> Matrix {
        let Echelon { matrix: e, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -e.get(r, fc);
            }
            rows.push(clear_denominators(v));
        }
        let mut out = Self::zeros(self.field, rows.len(), self.cols);
        out.data = rows.into_iter().flatten().collect();
        out
    }

    /// Square-matrix inverse, if it exists.
    pub fn inverse(&self) -> Result<Matrix, ArithError> {
        if self.rows != self.cols {
            return Err(ArithError::NonSquare);
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n))?;
        let Echelon { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ArithError::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(matrix.select_columns(&cols))
    }

    /// Solves `self * x = b` for some `x`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let col = Matrix { field: self.field, rows: self.rows, cols: 1, data: b.to_vec() };
        let aug = self.hstack(&col).ok()?;
        let Echelon { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }
}

/// Scales a rational vector to coprime integers (same direction); prime-field
/// vectors are returned unchanged.
pub fn clear_denominators(v: Vec<Scalar>) -> Vec<Scalar> {
    if v.first().map(Scalar::field) != Some(Field::Rational) {
        return v;
    }
    let lcm = v.iter().fold(BigInt::one(), |l, s| l.lcm(s.as_rational().expect("rational").denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|s| {
            let q = s.as_rational().unwrap();
            q.numer() * (&lcm / q.denom())
        })
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    if g.is_zero() {
        return v;
    }
    ints.iter().map(|a| Field::Rational.from_bigint(&(a / &g))).collect()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
