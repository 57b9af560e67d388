//! Dense rational matrices with exact determinants, solves, and rank.
//!
//! Determinants go through cofactor expansion for very small matrices and
//! fraction-free Bareiss elimination above that, which keeps intermediate
//! integers polynomially sized.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{denominator_lcm, Int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    NonSquare { rows: usize, cols: usize },
    SingularMatrix,
    DimensionMismatch,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NonSquare { rows, cols } => {
                write!(f, "matrix is not square ({rows}x{cols})")
            }
            MatrixError::SingularMatrix => write!(f, "matrix is singular"),
            MatrixError::DimensionMismatch => write!(f, "matrix dimensions do not match"),
        }
    }
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Self::new(r, c, data)
    }

    pub fn column(values: &[Rational]) -> Self {
        Self::new(values.len(), 1, values.to_vec())
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn col_vec(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        out
    }

    /// New matrix formed by the given rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &r in indices {
            data.extend(self.row(r).iter().cloned());
        }
        Self::new(indices.len(), self.cols, data)
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                *out.get_mut(r, c) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "vector length must equal column count");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Denominator-cleared integer copy: row `i` is multiplied by the least
    /// common denominator of its entries (and of the paired right-hand side
    /// when given), which changes neither determinant vanishing, ranks, nor
    /// solution points.
    fn integer_rows(&self, rhs: Option<&[Rational]>) -> (Vec<Vec<Int>>, Vec<Int>, Vec<Int>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut rhs_out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut l = denominator_lcm(self.row(r));
            if let Some(rhs) = rhs {
                l = num_integer::lcm(l, rhs[r].denom().clone());
            }
            rows.push(
                self.row(r)
                    .iter()
                    .map(|q| q.numer() * (&l / q.denom()))
                    .collect::<Vec<Int>>(),
            );
            if let Some(rhs) = rhs {
                rhs_out.push(rhs[r].numer() * (&l / rhs[r].denom()));
            }
            scales.push(l);
        }
        (rows, rhs_out, scales)
    }

    /// Exact determinant. Cofactor expansion up to 4x4, fraction-free
    /// elimination beyond; both run on the denominator-cleared integer copy.
    pub fn det(&self) -> Result<Rational, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let (rows, _, scales) = self.integer_rows(None);
        let det = int_det(rows);
        let scale = scales.into_iter().fold(Int::one(), |acc, s| acc * s);
        Ok(Rational::new(det, scale))
    }

    /// Exact solution `X` of `self * X = rhs` for a nonsingular square matrix.
    pub fn solve(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if rhs.rows != self.rows {
            return Err(MatrixError::DimensionMismatch);
        }
        let n = self.rows;
        let mut out = RationalMatrix::zeros(n, rhs.cols);
        for c in 0..rhs.cols {
            let column = rhs.col_vec(c);
            let (rows, rhs_int, _) = self.integer_rows(Some(&column));
            let (nums, den) =
                int_cramer(&rows, &rhs_int).ok_or(MatrixError::SingularMatrix)?;
            for (j, num) in nums.into_iter().enumerate() {
                *out.get_mut(j, c) = Rational::new(num, den.clone());
            }
        }
        Ok(out)
    }

    /// Convenience single-column solve.
    pub fn solve_vec(&self, rhs: &[Rational]) -> Result<Vec<Rational>, MatrixError> {
        Ok(self.solve(&RationalMatrix::column(rhs))?.col_vec(0))
    }

    /// Exact rank via rational Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot_row);
            let pivot = m[rank][col].clone();
            for r in rank + 1..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] / &pivot;
                let (head, tail) = m.split_at_mut(rank + 1);
                let pivot_row = &head[rank];
                let row = &mut tail[r - rank - 1];
                for c in col..self.cols {
                    let delta = &factor * &pivot_row[c];
                    row[c] -= delta;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Determinant of an integer matrix: direct cofactor expansion up to 4x4,
/// Bareiss fraction-free elimination beyond.
pub(crate) fn int_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    match n {
        0 => return Int::one(),
        1 => return m[0][0].clone(),
        2 => return &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        3 | 4 => {
            let idx: Vec<usize> = (0..n).collect();
            return int_det_cofactor(&m, &idx, &idx);
        }
        _ => {}
    }
    let mut sign = 1i8;
    let mut prev = Int::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Int::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                m[i][j] = num / &prev;
            }
            m[i][k] = Int::zero();
        }
        prev = m[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}

fn int_det_cofactor(m: &[Vec<Int>], rows: &[usize], cols: &[usize]) -> Int {
    debug_assert_eq!(rows.len(), cols.len());
    if rows.len() == 1 {
        return m[rows[0]][cols[0]].clone();
    }
    let mut acc = Int::zero();
    for (k, &c) in cols.iter().enumerate() {
        let pivot = &m[rows[0]][c];
        if pivot.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
        let term = pivot * int_det_cofactor(m, &rows[1..], &sub_cols);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Cramer solution of an integer square system: numerators plus the shared
/// denominator (the determinant, sign-normalized positive). `None` when
/// singular.
pub(crate) fn int_cramer(rows: &[Vec<Int>], rhs: &[Int]) -> Option<(Vec<Int>, Int)> {
    let n = rows.len();
    let det = int_det(rows.to_vec());
    if det.is_zero() {
        return None;
    }
    let mut nums = Vec::with_capacity(n);
    for j in 0..n {
        let mut replaced = rows.to_vec();
        for (r, row) in replaced.iter_mut().enumerate() {
            row[j] = rhs[r].clone();
        }
        nums.push(int_det(replaced));
    }
    if det.is_negative() {
        Some((nums.into_iter().map(|v| -v).collect(), -det))
    } else {
        Some((nums, det))
    }
}
