//! Dense matrices over arbitrary-precision rationals.
//!
//! Everything here is exact. Elimination always finishes in reduced row
//! echelon form, which is unique, so the bases handed out by [`nullspace`]
//! and [`SpanSolver`] do not depend on the pivot rule.
//!
//! [`nullspace`]: RationalMatrix::nullspace

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from integer rows. All rows must have the same length.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| BigRational::from_integer(rows[i][j].into()))
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigRational>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigRational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> BigRational {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| &self[(i, i)]).sum()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "row count mismatch in hcat");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn pow(&self, exp: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = Self::identity(self.rows);
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Reduced row echelon form together with the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce_in_place(self.cols);
        (m, pivots)
    }

    /// Gauss-Jordan elimination restricted to the first `pivot_cols` columns;
    /// the remaining columns ride along. Returns the pivot columns.
    fn reduce_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            // smallest bit-size pivot keeps numerators and denominators short
            let Some(p) = (r..self.rows)
                .filter(|&i| !self[(i, c)].is_zero())
                .min_by_key(|&i| bit_size(&self[(i, c)]))
            else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(i, j)] - &factor * &self[(r, j)];
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
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
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column of the reduced
    /// echelon form, with a 1 in that free position.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// `det(I - z M)` as a polynomial in `z`, lowest degree first.
    ///
    /// Uses the Faddeev-LeVerrier recurrence for the characteristic
    /// polynomial `det(lambda I - M)` and reverses its coefficients.
    pub fn det_one_minus_z(&self) -> Result<Vec<BigRational>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        // charpoly[i] is the coefficient of lambda^i
        let mut charpoly = vec![BigRational::zero(); n + 1];
        charpoly[n] = BigRational::one();
        let mut acc = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &acc;
            for i in 0..n {
                next[(i, i)] += &charpoly[n - k + 1];
            }
            let am = self * &next;
            charpoly[n - k] = -am.trace() / BigRational::from_integer(BigInt::from(k));
            acc = next;
        }
        // det(I - zM) = z^n charpoly(1/z)
        charpoly.reverse();
        Ok(charpoly)
    }
}

fn bit_size(q: &BigRational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
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

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solves `columns * c = target` for many targets against one factorization.
///
/// Stores the row operations `E` with `E * columns = rref(columns)`, so each
/// solve is a single matrix-vector product.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    transform: RationalMatrix,
    pivots: Vec<usize>,
    cols: usize,
}

impl SpanSolver {
    pub fn new(columns: &RationalMatrix) -> Self {
        let rows = columns.rows();
        let mut augmented = columns.hcat(&RationalMatrix::identity(rows));
        let pivots = augmented.reduce_in_place(columns.cols());
        let transform = RationalMatrix::from_fn(rows, rows, |i, j| augmented[(i, columns.cols() + j)].clone());
        Self {
            transform,
            pivots,
            cols: columns.cols(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Exact coefficients, or `None` when `target` is outside the column span.
    /// Free variables are set to zero.
    pub fn solve(&self, target: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
        if target.len() != self.transform.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.transform.rows(),
                found: target.len(),
            });
        }
        let reduced = self.transform.mul_vec(target);
        if reduced[self.pivots.len()..].iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        let mut coeffs = vec![BigRational::zero(); self.cols];
        for (row, &p) in self.pivots.iter().enumerate() {
            coeffs[p] = reduced[row].clone();
        }
        Ok(Some(coeffs))
    }
}

/// Solves `columns * c = target`; `Ok(None)` means "not in span".
pub fn solve_in_span(columns: &RationalMatrix, target: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    SpanSolver::new(columns).solve(target)
}

/// Exact integer value of `q`, if it is one.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

pub(crate) fn sign_to_rational(sign: i8) -> BigRational {
    BigRational::from_integer(BigInt::from(sign))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qi(n: i64) -> BigRational {
        q(n, 1)
    }

    #[test]
    fn rank_of_zero_and_identity() {
        assert_eq!(RationalMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn rank_of_triangle_coboundary() {
        // rows: edges 01, 02, 12; columns: vertices 0, 1, 2
        let d0 = RationalMatrix::from_i64_rows(&[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]);
        assert_eq!(d0.rank(), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(RationalMatrix::identity(3).nullspace().is_empty());
        let basis = RationalMatrix::from_i64_rows(&[vec![1, 1]]).nullspace();
        assert_eq!(basis, vec![vec![qi(-1), qi(1)]]);
        // zero map from 4-dim space: whole space is the kernel
        assert_eq!(RationalMatrix::zeros(0, 4).nullspace().len(), 4);
    }

    #[test]
    fn solve_examples() {
        let id = RationalMatrix::identity(2);
        assert_eq!(solve_in_span(&id, &[qi(3), q(-1, 2)]).unwrap(), Some(vec![qi(3), q(-1, 2)]));
        let col = RationalMatrix::from_i64_rows(&[vec![1], vec![1]]);
        assert_eq!(solve_in_span(&col, &[qi(2), qi(2)]).unwrap(), Some(vec![qi(2)]));
        let col = RationalMatrix::from_i64_rows(&[vec![1], vec![0]]);
        assert_eq!(solve_in_span(&col, &[qi(0), qi(1)]).unwrap(), None);
        assert!(matches!(
            solve_in_span(&col, &[qi(0)]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn det_one_minus_z_examples() {
        let one = RationalMatrix::from_i64_rows(&[vec![1]]);
        assert_eq!(one.det_one_minus_z().unwrap(), vec![qi(1), qi(-1)]);
        let minus = RationalMatrix::from_i64_rows(&[vec![-1]]);
        assert_eq!(minus.det_one_minus_z().unwrap(), vec![qi(1), qi(1)]);
        // direct 2x2: det [[1, -z], [-z, 1]] = 1 - z^2
        let swap = RationalMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.det_one_minus_z().unwrap(), vec![qi(1), qi(0), qi(-1)]);
        assert!(RationalMatrix::zeros(2, 3).det_one_minus_z().is_err());
        assert_eq!(RationalMatrix::zeros(0, 0).det_one_minus_z().unwrap(), vec![qi(1)]);
    }

    #[test]
    fn det_one_minus_z_matches_direct_expansion_on_rational_3x3() {
        // det(I - zM) at z = 1 equals det(I - M), computed by cofactor expansion.
        let m = RationalMatrix::from_fn(3, 3, |i, j| q((i * 3 + j) as i64 - 4, (j + 1) as i64));
        let poly = m.det_one_minus_z().unwrap();
        let at_one: BigRational = poly.iter().sum();
        let a = RationalMatrix::from_fn(3, 3, |i, j| {
            let delta = if i == j { qi(1) } else { qi(0) };
            delta - &m[(i, j)]
        });
        let det = &a[(0, 0)] * (&a[(1, 1)] * &a[(2, 2)] - &a[(1, 2)] * &a[(2, 1)])
            - &a[(0, 1)] * (&a[(1, 0)] * &a[(2, 2)] - &a[(1, 2)] * &a[(2, 0)])
            + &a[(0, 2)] * (&a[(1, 0)] * &a[(2, 1)] - &a[(1, 1)] * &a[(2, 0)]);
        assert_eq!(at_one, det);
    }
}
