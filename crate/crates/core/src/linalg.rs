//! Exact linear algebra over the rationals.
//!
//! Ranks and determinants use fraction-free (Bareiss) elimination on
//! integer matrices obtained by clearing row denominators; reduced row
//! echelon forms, kernels and solves work over the rationals directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rational::{common_denominator, Rational};

pub type Row = Vec<Rational>;

/// Reduced row echelon form of a row space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub cols: usize,
    /// Nonzero rows, pivot entries equal to one.
    pub rows: Vec<Row>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn empty(cols: usize) -> Self {
        Rref {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Columns that carry no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Subtracts row multiples so that `v` vanishes in every pivot column.
    pub fn reduce(&self, v: &[Rational]) -> Row {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Basis of the space of vectors `x` with `row · x = 0` for every row.
    pub fn kernel(&self) -> Vec<Row> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = -row[f].clone();
                }
                x
            })
            .collect()
    }
}

/// Row-reduces `rows` (each of length `cols`).
pub fn rref(rows: Vec<Row>, cols: usize, exec: Execution) -> Rref {
    let mut m: Vec<Row> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[r].clone();
        let (before, rest) = m.split_at_mut(r);
        let after = &mut rest[1..];
        let eliminate = |row: &mut Row| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        };
        par::for_each_mut(exec, before, eliminate);
        par::for_each_mut(exec, after, eliminate);
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Rref {
        cols,
        rows: m,
        pivots,
    }
}

/// Clears denominators row by row.
fn integer_rows(rows: &[Row]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let den = common_denominator(r);
            r.iter()
                .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Fraction-free elimination; returns the rank and, for square input, the
/// determinant up to the row scalings applied by [`integer_rows`].
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt, bool) {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut negate = false;
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            negate = !negate;
        }
        for i in rank + 1..n {
            for j in c + 1..cols {
                let v = &a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j];
                a[i][j] = v.div_floor(&prev);
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    (rank, prev, negate)
}

pub fn rank(rows: &[Row], cols: usize) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    bareiss(integer_rows(rows), cols).0
}

pub fn determinant(m: &[Row]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = Rational::one();
    for r in m {
        scale *= Rational::from_integer(common_denominator(r));
    }
    let (rank, last, negate) = bareiss(integer_rows(m), n);
    if rank < n {
        return Rational::zero();
    }
    let det = Rational::from_integer(last) / scale;
    if negate {
        -det
    } else {
        det
    }
}

/// Solves the square system `m · x = b`.
pub fn solve(m: &[Row], b: &[Rational]) -> Result<Row> {
    let n = m.len();
    let augmented: Vec<Row> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            assert_eq!(r.len(), n, "solve needs a square system");
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let red = rref(augmented, n + 1, Execution::Sequential);
    if red.pivots.len() < n || red.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
        return Err(Error::Singular(format!("{n}×{n} system has rank below {n}")));
    }
    Ok(red.rows.iter().map(|r| r[n].clone()).collect())
}

/// `Bᵀ · M · B` for basis vectors given as rows of `b`.
pub fn gram(m: &[Row], b: &[Row]) -> Vec<Row> {
    let mb: Vec<Row> = b
        .iter()
        .map(|v| {
            (0..m.len())
                .map(|i| m[i].iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
                .collect()
        })
        .collect();
    b.iter()
        .map(|u| {
            mb.iter()
                .map(|w| u.iter().zip(w).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
                .collect()
        })
        .collect()
}

/// Whether a symmetric matrix is positive definite: symmetric elimination
/// without pivoting must meet only positive pivots.
#[allow(clippy::needless_range_loop)]
pub fn is_positive_definite(m: &[Row]) -> bool {
    let n = m.len();
    let mut a: Vec<Row> = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    true
}

pub fn transpose(m: &[Row], cols: usize) -> Vec<Row> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}
