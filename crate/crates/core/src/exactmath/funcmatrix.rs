use std::ops::Index;

use rayon::prelude::*;

use super::{RatFuncQ, RatMatrix};
use crate::error::{Error, Result};

/// Dense matrix of rational functions in `d`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFuncMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFuncQ>,
}

impl RatFuncMatrix {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> RatFuncQ) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        RatFuncMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RatFuncQ::one() } else { RatFuncQ::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, rhs: &RatFuncMatrix) -> Result<RatFuncMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::SizeMismatch(self.cols, rhs.rows));
        }
        let data = (0..self.rows * rhs.cols)
            .into_par_iter()
            .map(|k| {
                let (i, j) = (k / rhs.cols, k % rhs.cols);
                (0..self.cols)
                    .filter(|&l| !self[(i, l)].is_zero() && !rhs[(l, j)].is_zero())
                    .map(|l| &self[(i, l)] * &rhs[(l, j)])
                    .fold(RatFuncQ::zero(), |acc, t| &acc + &t)
            })
            .collect();
        Ok(RatFuncMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Substitutes an integer for `d` in every entry.
    pub fn eval_int(&self, d: i64) -> Result<RatMatrix> {
        let rows = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].eval_int(d)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        RatMatrix::from_rows(rows)
    }
}

impl Index<(usize, usize)> for RatFuncMatrix {
    type Output = RatFuncQ;
    fn index(&self, (i, j): (usize, usize)) -> &RatFuncQ {
        &self.data[i * self.cols + j]
    }
}
