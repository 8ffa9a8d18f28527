//! Exact rational scalars and small dense exact linear algebra.
//!
//! Every incidence decision in this crate reduces to a rank or nullspace
//! computation on a small matrix with rational entries. Both are done with
//! fraction-free (Bareiss-style) integer elimination after clearing row
//! denominators, so no rounding ever occurs and intermediate entries stay
//! polynomially bounded.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact arbitrary-precision fraction: always reduced, denominator positive,
/// zero represented as 0/1. Serializes as `"p/q"` (or `"p"` when q = 1).
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    /// The rows do not span the space required for a unique nullspace vector.
    #[error("matrix is rank-deficient: rows do not span a hyperplane")]
    RankDeficient,
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    /// Builds a matrix from row-major entries. Panics if `entries.len() != rows * cols`
    /// or the matrix is empty.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must be nonempty");
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        Self { rows, cols, entries }
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        assert!(!rows.is_empty(), "matrix must have at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let entries = rows.iter().flat_map(|r| r.iter().cloned()).collect();
        Self::new(rows.len(), cols, entries)
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        Self::new(n, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix::new(self.cols, self.rows, entries)
    }

    /// Matrix-vector product over the rationals.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c) * &v[c])
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    /// Matrix product over the rationals.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must match");
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                entries.push(acc);
            }
        }
        Matrix::new(self.rows, other.cols, entries)
    }

    /// Clears denominators row by row: each row is scaled by the lcm of its
    /// entry denominators and reduced by its content, preserving rank and
    /// nullspace direction.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row: Vec<&Rational> = (0..self.cols).map(|c| self.get(r, c)).collect();
                scale_row_to_integers(&row)
            })
            .collect()
    }
}

fn scale_row_to_integers(row: &[&Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut content = BigInt::zero();
    for v in &out {
        content = content.gcd(v);
    }
    if !content.is_zero() && !content.is_one() {
        for v in &mut out {
            *v /= &content;
        }
    }
    out
}

/// Exact division used by the fraction-free updates; the divisor is always a
/// previous pivot and divides exactly by Sylvester's determinant identity.
fn exact_div(value: BigInt, divisor: &BigInt) -> BigInt {
    debug_assert!(!divisor.is_zero());
    debug_assert!(
        (&value % divisor).is_zero(),
        "fraction-free elimination produced a non-exact division"
    );
    value / divisor
}

/// Rank of a matrix of integer rows via one-step Bareiss elimination with
/// row pivoting and column skipping.
pub(crate) fn bigint_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut col = 0;
    while rank < nrows && col < ncols {
        let pivot = (rank..nrows).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else {
            col += 1;
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let lead = &top[rank];
        for row in rest.iter_mut() {
            for c in col + 1..ncols {
                let t = &lead[col] * &row[c] - &row[col] * &lead[c];
                row[c] = exact_div(t, &prev);
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// Determinant of a square matrix of integer rows via Bareiss elimination.
pub(crate) fn bigint_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n));
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let lead = &top[k];
        for row in rest.iter_mut() {
            for c in k + 1..n {
                let t = &lead[k] * &row[c] - &row[k] * &lead[c];
                row[c] = exact_div(t, &prev);
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

/// Nullspace of a stack of d integer rows with d+1 columns, by the cofactor
/// rule h_i = (−1)^i · det(M with column i deleted). Returns `None` when the
/// rows have rank < d (every cofactor vanishes).
pub(crate) fn bigint_cofactor_nullspace(rows: &[Vec<BigInt>]) -> Option<Vec<BigInt>> {
    let d = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == d + 1));
    let mut h = Vec::with_capacity(d + 1);
    let mut any_nonzero = false;
    for skip in 0..=d {
        let minor: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|row| {
                row.iter().enumerate().filter(|(c, _)| *c != skip).map(|(_, v)| v.clone()).collect()
            })
            .collect();
        let mut det = bigint_det(minor);
        if skip % 2 == 1 {
            det = -det;
        }
        any_nonzero |= !det.is_zero();
        h.push(det);
    }
    any_nonzero.then_some(h)
}

/// Exact rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    bigint_rank(&m.integer_rows())
}

/// For a matrix with d rows and d+1 columns of rank d, returns a nonzero
/// rational vector h with m·h = 0 (unique up to scale, returned unnormalized).
pub fn nullspace_vector(m: &Matrix) -> Result<Vec<Rational>, LinAlgError> {
    assert_eq!(m.cols, m.rows + 1, "nullspace_vector expects d rows and d+1 columns");
    let h = bigint_cofactor_nullspace(&m.integer_rows()).ok_or(LinAlgError::RankDeficient)?;
    Ok(h.into_iter().map(Rational::from_integer).collect())
}
