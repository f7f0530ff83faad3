//! Dense exact linear algebra: Pfaffians, determinants and the α-invariant.
//!
//! The α-invariant of a real super vector space `V = V_0 ⊕ V_1` (each of
//! dimension `2n`) with an odd operator `Q` is computed from the blocks of
//! `Q = (0 Q01; Q10 0)` in a basis where `Q²` is skew on `V_0`:
//! `α = Pf(Q01ᵗ · Q10⁻¹)`. When `Q` is diagonal over `C` with
//! `Q u_i = (1+i) d_i v_i`, `Q v_i = (1+i) c_i u_i`, this collapses to
//! `∏ c_i / d_i`; both routes are exposed so they can be checked against
//! each other.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex;
use thiserror::Error;

use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactNumError {
    #[error("Pfaffian undefined for odd dimension {0}")]
    OddDimension(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("Q does not act isomorphically: the even-to-odd block is singular")]
    QNotIsomorphism,
    #[error("basis not adapted: Q01^t * Q10^-1 is not skew-symmetric")]
    BasisNotAdapted,
    #[error("Q not invertible on V_0: d[{0}] = 0")]
    ZeroEigenvalue(usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, ExactNumError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(ExactNumError::LengthMismatch(row.len(), ncols));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: nrows, cols: ncols, data })
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * k.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, ExactNumError> {
        if self.cols != rhs.rows {
            return Err(ExactNumError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self[(i, k)].clone() * rhs[(k, j)].clone()
            })
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, ExactNumError> {
        if self.cols != v.len() {
            return Err(ExactNumError::LengthMismatch(self.cols, v.len()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(r + other.rows, c + other.cols, |i, j| {
            if i < r && j < c {
                self[(i, j)].clone()
            } else if i >= r && j >= c {
                other[(i - r, j - c)].clone()
            } else {
                T::zero()
            }
        })
    }

    /// First `(i, j)` with `M[i][j] != -M[j][i]`, if any.
    fn skew_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in i..self.cols {
                if self[(i, j)] != -self[(j, i)].clone() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && self.skew_violation().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Row echelon reduction; returns the reduced matrix, its rank and the
    /// product of pivots times the permutation sign (the determinant when
    /// square and of full rank).
    fn echelon(&self) -> (Self, usize, T) {
        let mut m = self.clone();
        let mut det = T::one();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            // partial pivoting
            let pivot = (rank..m.rows)
                .filter(|&r| !m[(r, col)].is_zero())
                .max_by(|&a, &b| {
                    m[(a, col)]
                        .abs()
                        .partial_cmp(&m[(b, col)].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(pivot) = pivot else { continue };
            if pivot != rank {
                for j in 0..m.cols {
                    m.data.swap(pivot * m.cols + j, rank * m.cols + j);
                }
                det = -det;
            }
            let p = m[(rank, col)].clone();
            det = det * p.clone();
            for r in rank + 1..m.rows {
                let factor = m[(r, col)].clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let delta = factor.clone() * m[(rank, j)].clone();
                    m[(r, j)] = m[(r, j)].clone() - delta;
                }
            }
            rank += 1;
        }
        (m, rank, det)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1
    }

    pub fn determinant(&self) -> Result<T, ExactNumError> {
        if !self.is_square() {
            return Err(ExactNumError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let (_, rank, det) = self.echelon();
        Ok(if rank < self.rows { T::zero() } else { det })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, ExactNumError> {
        if !self.is_square() {
            return Err(ExactNumError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (mut m, _, _) = aug.echelon();
        for i in 0..n {
            if m[(i, i)].is_zero() {
                return Err(ExactNumError::Singular);
            }
        }
        for i in (0..n).rev() {
            let p = m[(i, i)].clone();
            for j in 0..2 * n {
                m[(i, j)] = m[(i, j)].clone() / p.clone();
            }
            for r in 0..i {
                let factor = m[(r, i)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..2 * n {
                    let delta = factor.clone() * m[(i, j)].clone();
                    m[(r, j)] = m[(r, j)].clone() - delta;
                }
            }
        }
        Ok(Self::from_fn(n, n, |i, j| m[(i, j + n)].clone()))
    }

    /// Solves `self · x = b` exactly. The system may be overdetermined; it must
    /// be consistent and `self` must have full column rank.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>, ExactNumError> {
        if b.len() != self.rows {
            return Err(ExactNumError::LengthMismatch(self.rows, b.len()));
        }
        let n = self.cols;
        let aug = Self::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (m, rank, _) = aug.echelon();
        // pivot columns of a full-column-rank system are 0..n in order
        for i in 0..n.min(m.rows) {
            if m[(i, i)].is_zero() {
                return Err(ExactNumError::Singular);
            }
        }
        if n > m.rows || rank > n {
            // rank > n means the right-hand side column carried a pivot
            return Err(ExactNumError::Singular);
        }
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let tail = (i + 1..n).fold(T::zero(), |acc, j| acc + m[(i, j)].clone() * x[j].clone());
            x[i] = (m[(i, n)].clone() - tail) / m[(i, i)].clone();
        }
        Ok(x)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (k, x) in self.row(i).iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Square matrix with `M[i][j] = -M[j][i]` (checked on construction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix<T>(Matrix<T>);

impl<T: Scalar> SkewMatrix<T> {
    pub fn new(m: Matrix<T>) -> Result<Self, ExactNumError> {
        if !m.is_square() {
            return Err(ExactNumError::NotSquare { rows: m.rows, cols: m.cols });
        }
        if let Some((i, j)) = m.skew_violation() {
            return Err(ExactNumError::NotSkew(i, j));
        }
        Ok(SkewMatrix(m))
    }

    /// Builds the skew matrix whose strict upper triangle is read row by row
    /// from `upper`.
    pub fn from_upper(size: usize, upper: &[T]) -> Result<Self, ExactNumError> {
        let expected = size * size.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(ExactNumError::LengthMismatch(upper.len(), expected));
        }
        let mut m = Matrix::zeros(size, size);
        let mut it = upper.iter();
        for i in 0..size {
            for j in i + 1..size {
                let x = it.next().expect("length checked").clone();
                m[(j, i)] = -x.clone();
                m[(i, j)] = x;
            }
        }
        Ok(SkewMatrix(m))
    }

    pub fn size(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.0
    }

    /// `Pᵗ M P`, again skew.
    pub fn congruence(&self, p: &Matrix<T>) -> Result<Self, ExactNumError> {
        let m = p.transpose().mul(&self.0)?.mul(p)?;
        Ok(SkewMatrix(m))
    }
}

/// Pfaffian by expansion along the first remaining row, memoized over the set
/// of remaining indices.
///
/// Normalized so that `Pf([[0, 1], [-1, 0]]) = 1`.
pub fn pfaffian<T: Scalar>(m: &SkewMatrix<T>) -> Result<T, ExactNumError> {
    let n = m.size();
    if n % 2 == 1 {
        return Err(ExactNumError::OddDimension(n));
    }
    if n == 0 {
        return Ok(T::one());
    }
    assert!(n <= 64, "pfaffian supports at most 64x64 matrices");
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = HashMap::new();
    Ok(pfaffian_rec(m.matrix(), full, &mut memo))
}

fn pfaffian_rec<T: Scalar>(m: &Matrix<T>, remaining: u64, memo: &mut HashMap<u64, T>) -> T {
    if remaining == 0 {
        return T::one();
    }
    if let Some(v) = memo.get(&remaining) {
        return v.clone();
    }
    let first = remaining.trailing_zeros() as usize;
    let rest = remaining & !(1u64 << first);
    let mut acc = T::zero();
    let mut bits = rest;
    let mut position = 0usize;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let entry = &m[(first, j)];
        if !entry.is_zero() {
            let minor = pfaffian_rec(m, rest & !(1u64 << j), memo);
            let term = entry.clone() * minor;
            acc = if position.is_multiple_of(2) { acc + term } else { acc - term };
        }
        position += 1;
    }
    memo.insert(remaining, acc.clone());
    acc
}

/// Blocks of an odd operator `Q = (0 Q01; Q10 0)` on `V_0 ⊕ V_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaInput<T> {
    /// Odd-to-even block.
    pub q01: Matrix<T>,
    /// Even-to-odd block.
    pub q10: Matrix<T>,
}

impl<T: Scalar> AlphaInput<T> {
    pub fn new(q01: Matrix<T>, q10: Matrix<T>) -> Result<Self, ExactNumError> {
        for m in [&q01, &q10] {
            if !m.is_square() {
                return Err(ExactNumError::NotSquare { rows: m.rows, cols: m.cols });
            }
        }
        if q01.rows != q10.rows {
            return Err(ExactNumError::LengthMismatch(q01.rows, q10.rows));
        }
        Ok(AlphaInput { q01, q10 })
    }

    pub fn size(&self) -> usize {
        self.q01.rows
    }

    /// Direct sum of two modules, block by block.
    pub fn direct_sum(&self, other: &Self) -> Self {
        AlphaInput {
            q01: self.q01.direct_sum(&other.q01),
            q10: self.q10.direct_sum(&other.q10),
        }
    }
}

/// `α(V, ω) = Pf(Q01ᵗ · Q10⁻¹)`.
pub fn alpha_pfaffian<T: Scalar>(input: &AlphaInput<T>) -> Result<T, ExactNumError> {
    let inv = input.q10.inverse().map_err(|_| ExactNumError::QNotIsomorphism)?;
    let product = input.q01.transpose().mul(&inv)?;
    let skew = SkewMatrix::new(product).map_err(|_| ExactNumError::BasisNotAdapted)?;
    pfaffian(&skew)
}

/// `α(V, ω) = ∏ c_i / d_i` for the diagonal complex model.
pub fn alpha_diagonal<T: Scalar>(c: &[T], d: &[T]) -> Result<T, ExactNumError> {
    if c.len() != d.len() {
        return Err(ExactNumError::LengthMismatch(c.len(), d.len()));
    }
    if let Some(i) = d.iter().position(|x| x.is_zero()) {
        return Err(ExactNumError::ZeroEigenvalue(i));
    }
    Ok(c.iter()
        .zip(d)
        .fold(T::one(), |acc, (ci, di)| acc * ci.clone() / di.clone()))
}

/// Standard realification: the entry `a + b·i` becomes the block `[[a, -b], [b, a]]`.
pub fn realify<T: Scalar>(m: &Matrix<Complex<T>>) -> Matrix<T> {
    Matrix::from_fn(2 * m.rows, 2 * m.cols, |i, j| {
        let z = &m[(i / 2, j / 2)];
        match (i % 2, j % 2) {
            (0, 0) | (1, 1) => z.re.clone(),
            (0, 1) => -z.im.clone(),
            _ => z.im.clone(),
        }
    })
}

/// Conjugate transpose of a complex matrix.
pub fn conjugate_transpose<T: Scalar>(m: &Matrix<Complex<T>>) -> Matrix<Complex<T>> {
    Matrix::from_fn(m.cols, m.rows, |i, j| {
        let z = &m[(j, i)];
        Complex::new(z.re.clone(), -z.im.clone())
    })
}

/// Realified blocks of the diagonal model `Q u_i = (1+i) d_i v_i`,
/// `Q v_i = (1+i) c_i u_i` on `C^{n|n}`.
pub fn diagonal_model<T: Scalar>(c: &[T], d: &[T]) -> Result<AlphaInput<T>, ExactNumError> {
    if c.len() != d.len() {
        return Err(ExactNumError::LengthMismatch(c.len(), d.len()));
    }
    let one_plus_i = |x: &T| Complex::new(x.clone(), x.clone());
    let n = c.len();
    let diag = |v: &[T]| {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                one_plus_i(&v[i])
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    };
    AlphaInput::new(realify(&diag(c)), realify(&diag(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat, Rational};

    fn skew(size: usize, upper: &[i64]) -> SkewMatrix<Rational> {
        let v: Vec<_> = upper.iter().map(|&x| int(x)).collect();
        SkewMatrix::from_upper(size, &v).unwrap()
    }

    #[test]
    fn pfaffian_normalization() {
        assert_eq!(pfaffian(&skew(2, &[1])).unwrap(), int(1));
    }

    #[test]
    fn pfaffian_direct_sum_of_blocks() {
        // blocks [[0,2],[-2,0]] and [[0,3],[-3,0]]
        let m = skew(4, &[2, 0, 0, 0, 0, 3]);
        assert_eq!(pfaffian(&m).unwrap(), int(6));
    }

    #[test]
    fn pfaffian_four_by_four_formula() {
        // a12 a34 - a13 a24 + a14 a23
        let m = skew(4, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(pfaffian(&m).unwrap(), int(6 - 2 * 5 + 3 * 4));
    }

    #[test]
    fn pfaffian_rejects_odd_size() {
        let m = skew(3, &[1, 2, 3]);
        assert_eq!(pfaffian(&m), Err(ExactNumError::OddDimension(3)));
        assert!(ExactNumError::OddDimension(3)
            .to_string()
            .starts_with("Pfaffian undefined for odd dimension"));
    }

    #[test]
    fn pfaffian_of_empty_matrix_is_one() {
        let m = SkewMatrix::<Rational>::new(Matrix::zeros(0, 0)).unwrap();
        assert_eq!(pfaffian(&m).unwrap(), int(1));
    }

    #[test]
    fn skew_construction_is_checked() {
        let m = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        assert_eq!(SkewMatrix::new(m), Err(ExactNumError::NotSkew(0, 1)));
        let d = Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]]).unwrap();
        assert!(SkewMatrix::new(d).is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![int(1), int(3), int(1)],
            vec![int(0), int(1), int(4)],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(3));
        let singular = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert_eq!(singular.determinant().unwrap(), int(0));
        assert_eq!(singular.inverse(), Err(ExactNumError::Singular));
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn solve_overdetermined_consistent() {
        // columns (1,0,-1) and (0,1,-1); target 2*(1,0,-1) + 3*(0,1,-1)
        let a = Matrix::from_rows(vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
            vec![int(-1), int(-1)],
        ])
        .unwrap();
        let x = a.solve(&[int(2), int(3), int(-5)]).unwrap();
        assert_eq!(x, vec![int(2), int(3)]);
        assert!(a.solve(&[int(2), int(3), int(0)]).is_err());
    }

    #[test]
    fn realify_examples() {
        let i = Matrix::from_rows(vec![vec![Complex::new(int(0), int(1))]]).unwrap();
        let expected = Matrix::from_rows(vec![vec![int(0), int(-1)], vec![int(1), int(0)]]).unwrap();
        assert_eq!(realify(&i), expected);

        let one_plus_i = Matrix::from_rows(vec![vec![Complex::new(int(1), int(1))]]).unwrap();
        let expected = Matrix::from_rows(vec![vec![int(1), int(-1)], vec![int(1), int(1)]]).unwrap();
        assert_eq!(realify(&one_plus_i), expected);

        let id: Matrix<Complex<Rational>> = Matrix::from_fn(3, 3, |a, b| {
            Complex::new(if a == b { int(1) } else { int(0) }, int(0))
        });
        assert_eq!(realify(&id), Matrix::identity(6));
    }

    #[test]
    fn alpha_of_regular_q1_module() {
        let input = diagonal_model(&[int(1)], &[int(1)]).unwrap();
        assert_eq!(input.size(), 2);
        assert_eq!(alpha_pfaffian(&input).unwrap(), int(1));
    }

    #[test]
    fn alpha_pfaffian_matches_diagonal_examples() {
        let c = [int(1), int(2)];
        let d = [int(1), int(1)];
        assert_eq!(alpha_pfaffian(&diagonal_model(&c, &d).unwrap()).unwrap(), int(2));
        assert_eq!(alpha_diagonal(&c, &d).unwrap(), int(2));
        let input = diagonal_model(&[int(3)], &[int(3)]).unwrap();
        assert_eq!(alpha_pfaffian(&input).unwrap(), int(1));
    }

    #[test]
    fn alpha_diagonal_examples() {
        assert_eq!(alpha_diagonal(&[int(1), int(1)], &[int(1), int(1)]).unwrap(), int(1));
        assert_eq!(alpha_diagonal(&[int(2), int(3)], &[int(1), int(1)]).unwrap(), int(6));
        // equal-rank tangent pairs (a_i + a_j)/(a_i - a_j) and its reciprocal
        let (ai, aj) = (rat(5, 2), int(-7));
        let c = [ai.clone() + aj.clone(), ai.clone() - aj.clone()];
        let d = [ai.clone() - aj.clone(), ai + aj];
        assert_eq!(alpha_diagonal(&c, &d).unwrap(), int(1));
        assert_eq!(
            alpha_diagonal(&[int(1)], &[int(0)]),
            Err(ExactNumError::ZeroEigenvalue(0))
        );
    }

    #[test]
    fn alpha_pfaffian_errors() {
        let q = Matrix::identity(2).scale(&int(3));
        let input = AlphaInput::new(q.clone(), q).unwrap();
        assert_eq!(alpha_pfaffian(&input), Err(ExactNumError::BasisNotAdapted));

        let singular = AlphaInput::<Rational>::new(Matrix::identity(2), Matrix::zeros(2, 2)).unwrap();
        assert_eq!(alpha_pfaffian(&singular), Err(ExactNumError::QNotIsomorphism));
    }

    #[test]
    fn f64_instantiation_runs() {
        let m = crate::SkewMatrixF64::from_upper(4, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert!((pfaffian(&m).unwrap() - 8.0).abs() < 1e-12);
        let det = m.matrix().determinant().unwrap();
        assert!((det - 64.0).abs() < 1e-9);
    }
}
