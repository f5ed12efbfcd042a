//! Exact rational vectors and small dense matrices.
//!
//! Everything here works over [`BigRational`] so that half-integer and
//! `1/(l+1)` coordinates stay exact. The matrices involved are at most
//! 9 x 9, so plain Gauss-Jordan elimination is all that is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RationalVector = Vec<Rational>;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Vector from integer coordinates.
pub fn ivec(coords: &[i64]) -> RationalVector {
    coords.iter().map(|&c| int(c)).collect()
}

/// Vector from `(num, den)` pairs.
pub fn qvec(coords: &[(i64, i64)]) -> RationalVector {
    coords.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn zeros(len: usize) -> RationalVector {
    vec![Rational::zero(); len]
}

/// The `i`-th standard basis vector of length `len`.
pub fn unit(len: usize, i: usize) -> RationalVector {
    let mut v = zeros(len);
    v[i] = Rational::one();
    v
}

fn check_len(u: &[Rational], v: &[Rational]) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            actual: v.len(),
        });
    }
    Ok(())
}

/// Exact Euclidean inner product in the orthonormal basis.
pub fn inner(u: &[Rational], v: &[Rational]) -> Result<Rational> {
    check_len(u, v)?;
    Ok(u.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

pub fn add(u: &[Rational], v: &[Rational]) -> Result<RationalVector> {
    check_len(u, v)?;
    Ok(u.iter().zip(v).map(|(a, b)| a + b).collect())
}

pub fn sub(u: &[Rational], v: &[Rational]) -> Result<RationalVector> {
    check_len(u, v)?;
    Ok(u.iter().zip(v).map(|(a, b)| a - b).collect())
}

pub fn scale(s: &Rational, v: &[Rational]) -> RationalVector {
    v.iter().map(|a| s * a).collect()
}

pub fn norm_sq(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, a| acc + a * a)
}

/// Sum of `coeffs[j] * vectors[j]`; all vectors must share a length.
pub fn combination(coeffs: &[Rational], vectors: &[RationalVector]) -> Result<RationalVector> {
    if coeffs.len() != vectors.len() {
        return Err(Error::DimensionMismatch {
            expected: vectors.len(),
            actual: coeffs.len(),
        });
    }
    let len = vectors.first().map_or(0, Vec::len);
    let mut out = zeros(len);
    for (c, v) in coeffs.iter().zip(vectors) {
        check_len(&out, v)?;
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    Ok(out)
}

/// Least common multiple of all denominators; the smallest positive integer
/// that clears every coordinate.
pub fn denominator_lcm<'a, I>(vectors: I) -> BigInt
where
    I: IntoIterator<Item = &'a RationalVector>,
{
    vectors
        .into_iter()
        .flat_map(|v| v.iter())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Gram matrix `G[i][j] = <v_i, v_j>`.
pub fn gram(vectors: &[RationalVector]) -> Result<Vec<RationalVector>> {
    vectors
        .iter()
        .map(|u| vectors.iter().map(|v| inner(u, v)).collect())
        .collect()
}

/// Inverse of a square rational matrix, or `None` when singular.
pub fn invert(matrix: &[RationalVector]) -> Option<Vec<RationalVector>> {
    let n = matrix.len();
    let mut aug: Vec<RationalVector> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "invert requires a square matrix");
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col].clone();
            let pivot_row = aug[col].clone();
            for (x, y) in aug[r].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank over the rationals of an integer matrix given by rows.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<RationalVector> = rows.iter().map(|r| ivec(r)).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for r in (rank + 1)..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot_row[col];
            for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

/// `Ax` for an integer matrix and integer vector.
pub fn int_mat_vec(matrix: &[Vec<i64>], x: &[i64]) -> Result<Vec<i64>> {
    matrix
        .iter()
        .map(|row| {
            if row.len() != x.len() {
                return Err(Error::DimensionMismatch {
                    expected: row.len(),
                    actual: x.len(),
                });
            }
            Ok(row.iter().zip(x).map(|(a, b)| a * b).sum())
        })
        .collect()
}

/// Converts an exact rational known to be integral.
pub fn to_integer(x: &Rational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}
