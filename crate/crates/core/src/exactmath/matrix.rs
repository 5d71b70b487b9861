use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{format_rational, Rational};
use crate::error::{Error, Result};

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of [`RatMatrix::solve_linear`]: one solution, flagged when the
/// system has infinitely many.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Rational>,
    pub unique: bool,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::SizeMismatch(c, bad.len()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Product computed over the integers after clearing row denominators
    /// of `self` and column denominators of `rhs`.
    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(self.cols, rhs.rows));
        }
        let (row_scales, left) = self.integral_rows();
        let (col_scales, right) = rhs.transpose().integral_rows();
        let data: Vec<Rational> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|i| {
                let (a, left_scale) = (&left[i], &row_scales[i]);
                right.iter().zip(&col_scales).map(move |(b, right_scale)| {
                    let mut acc = BigInt::zero();
                    for (x, y) in a.iter().zip(b) {
                        if !x.is_zero() && !y.is_zero() {
                            acc += x * y;
                        }
                    }
                    Rational::new(acc, left_scale * right_scale)
                })
            })
            .collect();
        Ok(RatMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Columns `idx` in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> RatMatrix {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    /// First `k` rows.
    pub fn top_rows(&self, k: usize) -> RatMatrix {
        RatMatrix {
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut rows: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = gauss_jordan(&mut rows, self.cols);
        let m = RatMatrix::from_rows(rows).unwrap_or_else(|_| RatMatrix::zeros(self.rows, self.cols));
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.pivot_columns().len()
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        // A = S⁻¹ B with B integral and S diagonal, so A⁻¹ = B⁻¹ S
        let (scales, b) = self.integral_rows();
        let (adj, det) = integer_inverse(b).ok_or(Error::Singular)?;
        let data = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                Rational::new(adj[i][j].clone() * &scales[j], det.clone())
            })
            .collect();
        Ok(RatMatrix { rows: n, cols: n, data })
    }

    /// Rows scaled by the lcm of their denominators, with the scale factors.
    fn integral_rows(&self) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let ints = row
                    .iter()
                    .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                    .collect();
                (l, ints)
            })
            .unzip()
    }

    /// Pivot columns of the row-echelon form, i.e. the lexicographically
    /// first maximal set of independent columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let (_, mut rows) = self.integral_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pivot = pivot_row[c].clone();
            tail.par_iter_mut().for_each(|row| {
                let factor = row[c].clone();
                for (x, q) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                    *x = (&pivot * &*x - &factor * q) / &prev;
                }
            });
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Exact solution of `A x = b` for square `A`.
    ///
    /// Consistent singular systems return one solution (free variables set to
    /// zero) with `unique = false`; inconsistent ones are an error.
    pub fn solve_linear(&self, b: &[Rational]) -> Result<Solution> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        if b.len() != self.rows {
            return Err(Error::SizeMismatch(self.rows, b.len()));
        }
        let n = self.cols;
        let mut rows: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = gauss_jordan(&mut rows, n);
        if rows[pivots.len()..].iter().any(|r| !r[n].is_zero()) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![Rational::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rows[r][n].clone();
        }
        Ok(Solution {
            x,
            unique: pivots.len() == n,
        })
    }

    /// Moore–Penrose pseudo-inverse of a symmetric matrix, exactly.
    ///
    /// With `P` the pivot columns and `C = A[:, P]`: when the principal block
    /// `A[P, P]` is invertible (always the case for positive semidefinite
    /// `A`), `A = C A[P,P]⁻¹ Cᵀ` and `A⁺ = C K⁻¹ A[P,P] K⁻¹ Cᵀ` with
    /// `K = Cᵀ C`. Otherwise the general full-rank factorization `A = F H`
    /// is used: `A⁺ = Hᵀ (H Hᵀ)⁻¹ (Fᵀ F)⁻¹ Fᵀ`.
    pub fn pseudo_inverse(&self) -> Result<RatMatrix> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let pivots = self.pivot_columns();
        let rank = pivots.len();
        if rank == 0 {
            return Ok(RatMatrix::zeros(self.rows, self.cols));
        }
        if rank == self.rows {
            return self.inverse();
        }
        let c = self.select_columns(&pivots);
        let ct = c.transpose();
        let block = RatMatrix::from_fn(rank, rank, |i, j| self[(pivots[i], pivots[j])].clone());
        if block.rank() == rank {
            let k_inv = ct.mul(&c)?.inverse()?;
            let left = c.mul(&k_inv)?;
            return left.mul(&block)?.mul(&left.transpose());
        }
        let (r, _) = self.rref();
        let h = r.top_rows(rank);
        let ht = h.transpose();
        let ftf_inv = ct.mul(&c)?.inverse()?;
        let hht_inv = h.mul(&ht)?.inverse()?;
        ht.mul(&hht_inv)?.mul(&ftf_inv)?.mul(&ct)
    }
}

/// Fraction-free Gauss–Jordan on an integer matrix: returns `(X, δ)` with
/// `A⁻¹ = X / δ`, or `None` if `A` is singular. Every division is exact.
fn integer_inverse(a: Vec<Vec<BigInt>>) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
    let n = a.len();
    let mut rows: Vec<Vec<BigInt>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !rows[i][k].is_zero())?;
        rows.swap(k, p);
        let pivot_row = rows[k].clone();
        let pivot = pivot_row[k].clone();
        rows.par_iter_mut()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .for_each(|(_, row)| {
                let factor = row[k].clone();
                for (x, q) in row.iter_mut().zip(pivot_row.iter()) {
                    *x = (&pivot * &*x - &factor * q) / &prev;
                }
            });
        prev = pivot;
    }
    // left block is now δ·I with δ = ±det A
    let det = rows[0][0].clone();
    Some((rows.into_iter().map(|r| r[n..].to_vec()).collect(), det))
}

/// In-place Gauss–Jordan on the first `cols` columns; returns pivot columns.
/// Pivot rows end up first, normalized to a leading one.
fn gauss_jordan(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
        let pivot_row = &*pivot_row;
        before.par_iter_mut().chain(after.par_iter_mut()).for_each(|row| {
            let factor = row[c].clone();
            if factor.is_zero() {
                return;
            }
            for (x, p) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        });
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{}\n{self}", self.rows, self.cols)
    }
}
