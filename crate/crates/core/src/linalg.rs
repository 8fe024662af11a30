//! Dense exact linear algebra over any [`Field`].
//!
//! Subspaces are stored by the reduced row echelon form of a basis, so two
//! subspaces are equal exactly when their stored bases are equal.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<S> {
    pub matrix: Matrix<S>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<S: Field> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is needed for the
    /// zero-row case.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[S]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Field>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Matrix<T>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c)
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() + b)
            .collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn sub(&self, rhs: &Matrix<S>) -> Result<Self> {
        self.check_same_shape(rhs)?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.clone() - b)
            .collect();
        Ok(Matrix { data, ..*self })
    }

    fn check_same_shape(&self, rhs: &Matrix<S>) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(())
    }

    /// Row vector times matrix: `v · M`.
    pub fn left_apply(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = vec![S::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = &self[(i, j)];
                if !m.is_zero() {
                    *o = o.clone() + x.clone() * m;
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: `M · v`.
    pub fn apply(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b)
            })
            .collect())
    }

    /// Gauss–Jordan elimination. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].clone() * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].clone() - f.clone() * &m[(r, j)];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
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
        self.rref().rank
    }

    /// Right null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace<S> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut basis = Vec::new();
        let mut next_pivot = 0;
        for free in 0..self.cols {
            if next_pivot < pivots.len() && pivots[next_pivot] == free {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (row, &p) in pivots.iter().enumerate() {
                if p < free {
                    v[p] = -matrix[(row, free)].clone();
                }
            }
            basis.push(v);
        }
        Subspace::span(self.cols, basis).expect("kernel vectors have ambient length")
    }

    pub fn inverse(&self) -> Result<Matrix<S>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = S::one();
        }
        let red = aug.rref();
        if red.pivots.iter().copied().take(n).ne(0..n) || red.rank < n {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red.matrix[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Display> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.chunks(self.cols.max(1)))
            .finish()
    }
}

/// Linear subspace of `S^ambient`, stored as an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Matrix<S>,
}

impl<S: Field> Subspace<S> {
    pub fn span(ambient: usize, vectors: Vec<Vec<S>>) -> Result<Self> {
        let m = Matrix::from_rows(vectors, ambient)?;
        Ok(Self::from_matrix_rows(&m))
    }

    pub fn from_matrix_rows(m: &Matrix<S>) -> Self {
        let red = m.rref();
        let rows = (0..red.rank).map(|i| red.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient: m.cols,
            basis: Matrix::from_rows(rows, m.cols).unwrap(),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[S]> {
        self.basis.row_vectors()
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis_vectors()
            .map(|row| row.iter().position(|x| !x.is_zero()).unwrap())
            .collect()
    }

    fn check_ambient(&self, n: usize) -> Result<()> {
        if self.ambient != n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: n,
            });
        }
        Ok(())
    }

    /// Normal form of `v` modulo the subspace: pivot coordinates cleared.
    pub fn reduce(&self, v: &[S]) -> Result<Vec<S>> {
        self.check_ambient(v.len())?;
        let mut out = v.to_vec();
        for (row, p) in self.basis_vectors().zip(self.pivots()) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o = o.clone() - f.clone() * b;
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[S]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(S::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        for v in other.basis_vectors() {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace<S>) -> Result<Self> {
        self.check_ambient(other.ambient)?;
        let rows = self
            .basis_vectors()
            .chain(other.basis_vectors())
            .map(<[S]>::to_vec)
            .collect();
        Subspace::span(self.ambient, rows)
    }

    /// Vectors pairing to zero with every vector of the subspace under the
    /// standard dot product.
    pub fn annihilator(&self) -> Self {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel()
    }

    pub fn intersection(&self, other: &Subspace<S>) -> Result<Self> {
        self.check_ambient(other.ambient)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `dim self − dim sub`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace<S>) -> Result<usize> {
        if !self.contains_subspace(sub)? {
            return Err(Error::Precondition(
                "quotient by a space that is not a subspace".into(),
            ));
        }
        Ok(self.dim() - sub.dim())
    }

    /// Vectors extending a basis of `sub` to a basis of `self`, chosen
    /// greedily from this subspace's RREF basis.
    pub fn complement_of(&self, sub: &Subspace<S>) -> Result<Vec<Vec<S>>> {
        if !self.contains_subspace(sub)? {
            return Err(Error::Precondition(
                "complement of a space that is not a subspace".into(),
            ));
        }
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.basis_vectors() {
            if !acc.contains(v)? {
                out.push(v.to_vec());
                acc = acc.sum(&Subspace::span(self.ambient, vec![v.to_vec()])?)?;
            }
        }
        Ok(out)
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Subspace<T> {
        Subspace::from_matrix_rows(&self.basis.map(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|j| q((i == j) as i64)).collect()
    }

    #[test]
    fn rref_examples() {
        let r = mat(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r.matrix, mat(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);

        let id = Matrix::<Rational>::identity(3);
        assert_eq!(id.rref().matrix, id);
        assert_eq!(id.rank(), 3);

        let r = mat(&[&[0, 1], &[1, 0], &[1, 1]]).rref();
        assert_eq!(r.matrix, mat(&[&[1, 0], &[0, 1], &[0, 0]]));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::<Rational>::zeros(2, 3).kernel().dim(), 3);
        let k = mat(&[&[1, 1]]).kernel();
        assert_eq!(k, Subspace::span(2, vec![vec![q(1), q(-1)]]).unwrap());
    }

    #[test]
    fn subspace_examples() {
        let s = Subspace::span(3, vec![e(3, 0)])
            .unwrap()
            .sum(&Subspace::span(3, vec![e(3, 1)]).unwrap())
            .unwrap();
        assert_eq!(s, Subspace::span(3, vec![e(3, 0), e(3, 1)]).unwrap());

        let u = Subspace::span(3, vec![vec![q(1), q(1), q(0)], e(3, 2)]).unwrap();
        let w = Subspace::span(3, vec![e(3, 1), e(3, 2)]).unwrap();
        assert_eq!(
            u.intersection(&w).unwrap(),
            Subspace::span(3, vec![e(3, 2)]).unwrap()
        );
        assert_eq!(
            u.quotient_dim(&Subspace::span(3, vec![e(3, 2)]).unwrap()),
            Ok(1)
        );
        assert!(u.quotient_dim(&w).is_err());
        assert!(u.sum(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn inverse_and_singular() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
    }
}
