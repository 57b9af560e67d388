//! Inequality systems `Ax <= b` and row bases.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::matrix::{MatrixError, RationalMatrix};
use crate::rational::{denominator_lcm, norm1, norm2_sq, Rational};

/// An exact system `Ax <= b` over `d` variables with `m` rows.
///
/// Rows are never all-zero; dimensions are at least one. The feasible set may
/// be empty or unbounded; nothing else is assumed at this level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySystem {
    a: RationalMatrix,
    b: Vec<Rational>,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemError {
    EmptySystem,
    ZeroRow(usize),
    DimensionMismatch,
}

impl fmt::Display for SystemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemError::EmptySystem => write!(f, "system must have at least one row and column"),
            SystemError::ZeroRow(i) => write!(f, "row {i} of A is all zeros"),
            SystemError::DimensionMismatch => write!(f, "A and b dimensions do not match"),
        }
    }
}

impl InequalitySystem {
    pub fn new(a: RationalMatrix, b: Vec<Rational>) -> Result<Self, SystemError> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(SystemError::EmptySystem);
        }
        if a.rows() != b.len() {
            return Err(SystemError::DimensionMismatch);
        }
        if let Some(i) = (0..a.rows()).find(|&i| a.row(i).iter().all(Zero::is_zero)) {
            return Err(SystemError::ZeroRow(i));
        }
        Ok(Self { a, b, labels: None })
    }

    pub fn from_int_rows(rows: &[&[i64]], rhs: &[i64]) -> Self {
        let a = RationalMatrix::from_rows(
            &rows
                .iter()
                .map(|r| crate::rational::to_rationals(r))
                .collect::<Vec<_>>(),
        );
        Self::new(a, crate::rational::to_rationals(rhs)).expect("valid fixture system")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.m());
        self.labels = Some(labels);
        self
    }

    /// Ambient dimension `d`.
    pub fn d(&self) -> usize {
        self.a.cols()
    }

    /// Row count `m`.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        self.a.row(i)
    }

    pub fn rhs(&self, i: usize) -> &Rational {
        &self.b[i]
    }

    pub fn row_norm1(&self, i: usize) -> Rational {
        norm1(self.a.row(i))
    }

    pub fn row_norm2_sq(&self, i: usize) -> Rational {
        norm2_sq(self.a.row(i))
    }

    /// `A_i x - b_i`; negative means strictly satisfied.
    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        crate::rational::dot(self.a.row(i), x) - &self.b[i]
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        (0..self.m()).all(|i| !self.slack(i, x).is_positive())
    }

    pub fn is_strictly_feasible(&self, x: &[Rational]) -> bool {
        (0..self.m()).all(|i| self.slack(i, x).is_negative())
    }

    pub fn tight_rows(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.slack(i, x).is_zero()).collect()
    }

    /// Subsystem on the given rows, preserving their order.
    pub fn sub_system(&self, rows: &[usize]) -> InequalitySystem {
        let a = self.a.select_rows(rows);
        let b = rows.iter().map(|&i| self.b[i].clone()).collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| rows.iter().map(|&i| l[i].clone()).collect());
        InequalitySystem { a, b, labels }
    }

    /// Appends one row, returning the extended system.
    pub fn with_row(&self, row: Vec<Rational>, rhs: Rational, label: Option<String>) -> Self {
        assert_eq!(row.len(), self.d());
        assert!(row.iter().any(|v| !v.is_zero()), "appended row is all zeros");
        let mut rows: Vec<Vec<Rational>> = (0..self.m()).map(|i| self.row(i).to_vec()).collect();
        rows.push(row);
        let mut b = self.b.clone();
        b.push(rhs);
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.clone();
            l.push(label.unwrap_or_default());
            l
        });
        InequalitySystem {
            a: RationalMatrix::from_rows(&rows),
            b,
            labels,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.a.entries().iter().chain(self.b.iter()).all(|q| q.denom().is_one())
    }

    /// Multiplies each row by the least common denominator of its entries
    /// (including the right-hand side). The feasible set is unchanged; the
    /// per-row factors are returned alongside the integral system.
    pub fn scale_to_integrality(&self) -> (InequalitySystem, Vec<Rational>) {
        let mut rows = Vec::with_capacity(self.m());
        let mut b = Vec::with_capacity(self.m());
        let mut factors = Vec::with_capacity(self.m());
        for i in 0..self.m() {
            let mut all: Vec<Rational> = self.row(i).to_vec();
            all.push(self.b[i].clone());
            let l = Rational::from_integer(denominator_lcm(&all));
            rows.push(self.row(i).iter().map(|v| v * &l).collect::<Vec<_>>());
            b.push(&self.b[i] * &l);
            factors.push(l);
        }
        let scaled = InequalitySystem {
            a: RationalMatrix::from_rows(&rows),
            b,
            labels: self.labels.clone(),
        };
        (scaled, factors)
    }
}

/// A set of `d` row indices whose submatrix `A_I` is nonsingular.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Basis {
    indices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisError {
    WrongSize { expected: usize, got: usize },
    OutOfRange(usize),
    Singular,
}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisError::WrongSize { expected, got } => {
                write!(f, "basis must have {expected} rows, got {got}")
            }
            BasisError::OutOfRange(i) => write!(f, "row index {i} out of range"),
            BasisError::Singular => write!(f, "basis rows are linearly dependent"),
        }
    }
}

impl Basis {
    /// Validates size, range, and nonsingularity against the system.
    pub fn new(system: &InequalitySystem, mut indices: Vec<usize>) -> Result<Self, BasisError> {
        indices.sort_unstable();
        indices.dedup();
        if indices.len() != system.d() {
            return Err(BasisError::WrongSize {
                expected: system.d(),
                got: indices.len(),
            });
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= system.m()) {
            return Err(BasisError::OutOfRange(i));
        }
        let sub = system.a().select_rows(&indices);
        match sub.det() {
            Ok(det) if !det.is_zero() => Ok(Self { indices }),
            _ => Err(BasisError::Singular),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, row: usize) -> bool {
        self.indices.binary_search(&row).is_ok()
    }

    /// The basic solution `A_I^{-1} b_I`.
    pub fn basic_solution(&self, system: &InequalitySystem) -> Result<Vec<Rational>, MatrixError> {
        let sub = system.a().select_rows(&self.indices);
        let rhs: Vec<Rational> = self.indices.iter().map(|&i| system.b()[i].clone()).collect();
        sub.solve_vec(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn triangle() -> InequalitySystem {
        InequalitySystem::from_int_rows(&[&[-1, 0], &[0, -1], &[1, 1]], &[0, 0, 1])
    }

    #[test]
    fn scaling_examples() {
        let s = triangle();
        let (scaled, factors) = s.scale_to_integrality();
        assert_eq!(scaled, s);
        assert!(factors.iter().all(|f| f == &rat(1)));

        let a = RationalMatrix::from_rows(&[alloc::vec![ratio(1, 2), ratio(1, 3)]]);
        let s = InequalitySystem::new(a, alloc::vec![ratio(1, 6)]).unwrap();
        let (scaled, factors) = s.scale_to_integrality();
        assert_eq!(scaled.row(0), &[rat(3), rat(2)]);
        assert_eq!(scaled.rhs(0), &rat(1));
        assert_eq!(factors, alloc::vec![rat(6)]);

        // Rows are scaled independently.
        let a = RationalMatrix::from_rows(&[
            alloc::vec![ratio(1, 2), rat(0)],
            alloc::vec![rat(1), ratio(1, 5)],
        ]);
        let s = InequalitySystem::new(a, alloc::vec![rat(1), rat(2)]).unwrap();
        let (scaled, factors) = s.scale_to_integrality();
        assert_eq!(factors, alloc::vec![rat(2), rat(5)]);
        assert!(scaled.is_integral());
    }

    #[test]
    fn basis_validation() {
        let s = triangle();
        let b = Basis::new(&s, alloc::vec![0, 1]).unwrap();
        assert_eq!(b.basic_solution(&s).unwrap(), alloc::vec![rat(0), rat(0)]);
        assert_eq!(
            Basis::new(&s, alloc::vec![0]).unwrap_err(),
            BasisError::WrongSize { expected: 2, got: 1 }
        );
        let square =
            InequalitySystem::from_int_rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[1, 1, 1, 1]);
        assert_eq!(
            Basis::new(&square, alloc::vec![0, 1]).unwrap_err(),
            BasisError::Singular
        );
    }

    #[test]
    fn zero_row_rejected() {
        let a = RationalMatrix::zeros(1, 2);
        assert_eq!(
            InequalitySystem::new(a, alloc::vec![rat(1)]).unwrap_err(),
            SystemError::ZeroRow(0)
        );
    }
}
