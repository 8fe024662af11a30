//! Finite-dimensional algebras given by structure constants.
//!
//! Conventions used throughout the crate:
//! * vectors are coordinate rows, `x = Σ x_i e_i`;
//! * `constant(i, j, k)` (0-based) is `c_{ij}^k` in `e_i e_j = Σ_k c_{ij}^k e_k`;
//! * a change of basis is a matrix whose rows are the new basis vectors
//!   written in old coordinates.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{Field, Rational, RationalFunction, Var};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Algebra<S> {
    name: String,
    dim: usize,
    table: Vec<S>,
}

pub type QAlgebra = Algebra<Rational>;
pub type SymAlgebra = Algebra<RationalFunction>;

/// The descending chain `A¹ ⊇ A² ⊇ …` with `A^k = Σ_{i+j=k} A^i A^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerChain<S> {
    /// `spaces[k - 1]` is `A^k`; ends with the zero space when nilpotent.
    pub spaces: Vec<Subspace<S>>,
    /// Smallest `N` with `A^N = 0`, or `None` when the chain stabilizes
    /// at a nonzero space.
    pub nil_index: Option<usize>,
}

impl<S> PowerChain<S> {
    pub fn dims(&self) -> Vec<usize>
    where
        S: Field,
    {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nil_index.is_some()
    }
}

impl<S: Field> Algebra<S> {
    /// The algebra with zero product.
    pub fn zero(name: impl Into<String>, dim: usize) -> Self {
        Algebra {
            name: name.into(),
            dim,
            table: vec![S::zero(); dim * dim * dim],
        }
    }

    /// Builds an algebra from products `e_i e_j = value · e_k` given with
    /// 1-based labels, as multiplication tables are usually written.
    /// Repeated `(i, j, k)` entries accumulate.
    pub fn from_products(
        name: impl Into<String>,
        dim: usize,
        products: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Result<Self> {
        let mut alg = Self::zero(name, dim);
        for (i, j, k, v) in products {
            for idx in [i, j, k] {
                if idx == 0 || idx > dim {
                    return Err(Error::Malformed(format!(
                        "basis label {idx} outside 1..={dim}"
                    )));
                }
            }
            let slot = alg.index(i - 1, j - 1, k - 1);
            alg.table[slot] = alg.table[slot].clone() + v;
        }
        Ok(alg)
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_{ij}^k`, 0-based.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.table[self.index(i, j, k)]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, value: S) {
        let slot = self.index(i, j, k);
        self.table[slot] = value;
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[S] {
        let start = self.index(i, j, 0);
        &self.table[start..start + self.dim]
    }

    pub fn constants(&self) -> &[S] {
        &self.table
    }

    /// Nonzero constants as `(i, j, k, value)`, 0-based.
    pub fn nonzero_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> {
        let n = self.dim;
        self.table
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / (n * n), (idx / n) % n, idx % n, v))
    }

    pub fn is_zero_product(&self) -> bool {
        self.table.iter().all(S::is_zero)
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Algebra<T> {
        Algebra {
            name: self.name.clone(),
            dim: self.dim,
            table: self.table.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Field>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Algebra<T>> {
        Ok(Algebra {
            name: self.name.clone(),
            dim: self.dim,
            table: self.table.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn check_len(&self, v: &[S]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear product of two coordinate vectors.
    pub fn multiply(&self, x: &[S], y: &[S]) -> Result<Vec<S>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let n = self.dim;
        let mut out = vec![S::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xi.clone() * yj;
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !c.is_zero() {
                        *o = o.clone() + coeff.clone() * c;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        unit(self.dim, i)
    }

    /// `Ann(A) = {x : xA = Ax = 0}`.
    pub fn annihilator(&self) -> Subspace<S> {
        let n = self.dim;
        // Unknown x; rows: coordinate k of x·e_j and of e_j·x.
        let mut rows = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.constant(i, j, k).clone()).collect());
                rows.push((0..n).map(|i| self.constant(j, i, k).clone()).collect());
            }
        }
        system(rows, n).kernel()
    }

    /// Span of all products `uw` with `u ∈ U`, `w ∈ W`.
    pub fn product_subspace(&self, u: &Subspace<S>, w: &Subspace<S>) -> Result<Subspace<S>> {
        let mut products = Vec::new();
        for a in u.basis_vectors() {
            for b in w.basis_vectors() {
                products.push(self.multiply(a, b)?);
            }
        }
        Subspace::span(self.dim, products)
    }

    pub fn power_chain(&self) -> PowerChain<S> {
        let mut spaces = vec![Subspace::full(self.dim)];
        if self.dim == 0 {
            return PowerChain {
                spaces,
                nil_index: Some(1),
            };
        }
        loop {
            let k = spaces.len() + 1;
            let mut next = Subspace::zero(self.dim);
            for i in 1..k {
                let prod = self
                    .product_subspace(&spaces[i - 1], &spaces[k - i - 1])
                    .expect("same ambient dimension");
                next = next.sum(&prod).expect("same ambient dimension");
            }
            if next.is_zero() {
                spaces.push(next);
                return PowerChain {
                    spaces,
                    nil_index: Some(k),
                };
            }
            if &next == spaces.last().unwrap() {
                return PowerChain {
                    spaces,
                    nil_index: None,
                };
            }
            spaces.push(next);
        }
    }

    /// Constants in the basis given by the rows of `p`.
    pub fn change_basis(&self, p: &Matrix<S>) -> Result<Algebra<S>> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.rows().max(p.cols()),
            });
        }
        let inv = p.inverse()?;
        let mut out = Algebra::zero(self.name.clone(), self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let w = self.multiply(p.row(i), p.row(j))?;
                let v = inv.left_apply(&w)?;
                for (k, x) in v.into_iter().enumerate() {
                    out.set_constant(i, j, k, x);
                }
            }
        }
        Ok(out)
    }

    /// `A ⊕ F^k` with the new coordinates multiplying to zero.
    pub fn direct_sum(&self, k: usize) -> Algebra<S> {
        let n = self.dim;
        let mut out = Algebra::zero(self.name.clone(), n + k);
        for (i, j, l, v) in self.nonzero_constants() {
            out.set_constant(i, j, l, v.clone());
        }
        out
    }

    /// Drops the last coordinates, keeping the constants among the first
    /// `dim` basis vectors.
    pub fn truncate(&self, dim: usize) -> Result<Algebra<S>> {
        if dim > self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: dim,
            });
        }
        let mut out = Algebra::zero(self.name.clone(), dim);
        for (i, j, k, v) in self.nonzero_constants() {
            if i < dim && j < dim && k < dim {
                out.set_constant(i, j, k, v.clone());
            }
        }
        Ok(out)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Whether the subalgebra generated by `v` is everything.
    pub fn is_generated_by(&self, v: &[S]) -> Result<bool> {
        self.check_len(v)?;
        let mut span = Subspace::span(self.dim, vec![v.to_vec()])?;
        loop {
            let next = span.sum(&self.product_subspace(&span, &span)?)?;
            if next == span {
                return Ok(span.dim() == self.dim);
            }
            span = next;
        }
    }
}

impl Algebra<RationalFunction> {
    /// Free symbols occurring in the constants.
    pub fn parameters(&self) -> BTreeSet<Var> {
        self.table.iter().flat_map(RationalFunction::vars).collect()
    }

    pub fn specialize(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Self> {
        self.try_map(|c| c.substitute(assignment))
    }

    pub fn specialize_alpha(&self, alpha: &Rational) -> Result<Self> {
        self.specialize(&BTreeMap::from([(Var::ALPHA, alpha.clone())]))
    }

    /// The same algebra over ℚ, when no constant involves a symbol.
    pub fn to_rational(&self) -> Option<QAlgebra> {
        let table = self
            .table
            .iter()
            .map(RationalFunction::as_rational)
            .collect::<Option<Vec<_>>>()?;
        Some(Algebra {
            name: self.name.clone(),
            dim: self.dim,
            table,
        })
    }
}

impl Algebra<Rational> {
    pub fn to_symbolic(&self) -> SymAlgebra {
        self.map(|q| RationalFunction::constant(q.clone()))
    }
}

pub(crate) fn unit<S: Field>(n: usize, i: usize) -> Vec<S> {
    (0..n)
        .map(|j| if i == j { S::one() } else { S::zero() })
        .collect()
}

pub(crate) fn system<S: Field>(rows: Vec<Vec<S>>, cols: usize) -> Matrix<S> {
    Matrix::from_rows(rows, cols).expect("rows built with the declared width")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    fn alg(name: &str, dim: usize, products: &[(usize, usize, usize, i64)]) -> QAlgebra {
        Algebra::from_products(
            name,
            dim,
            products.iter().map(|&(i, j, k, v)| (i, j, k, q(v))),
        )
        .unwrap()
    }

    fn r2() -> QAlgebra {
        alg("R2s_1", 2, &[(1, 1, 2, 1)])
    }

    fn span(n: usize, idx: &[usize]) -> Subspace<Rational> {
        Subspace::span(n, idx.iter().map(|&i| unit(n, i)).collect()).unwrap()
    }

    fn r4_9() -> QAlgebra {
        alg(
            "R4_9",
            4,
            &[
                (1, 1, 2, 1),
                (1, 2, 3, 1),
                (1, 3, 4, 1),
                (2, 1, 3, 1),
                (2, 2, 4, 1),
                (3, 1, 4, 1),
            ],
        )
    }

    #[test]
    fn multiply_examples() {
        let a = r2();
        assert_eq!(a.multiply(&unit(2, 0), &unit(2, 0)).unwrap(), unit(2, 1));
        assert_eq!(
            a.multiply(&[q(0), q(0)], &[q(3), q(4)]).unwrap(),
            vec![q(0), q(0)]
        );
        let r45 = alg("R4_5", 4, &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 1, 3, -1)]);
        assert_eq!(
            r45.multiply(&unit(4, 1), &unit(4, 0)).unwrap(),
            vec![q(0), q(0), q(-1), q(0)]
        );
        assert!(a.multiply(&unit(3, 0), &unit(2, 0)).is_err());
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(r2().annihilator(), span(2, &[1]));
        assert_eq!(
            Algebra::<Rational>::zero("zero3", 3).annihilator(),
            Subspace::full(3)
        );
        let r42 = alg(
            "R4_2",
            4,
            &[(1, 1, 2, 1), (1, 2, 4, 1), (2, 1, 4, 1), (3, 3, 4, 1)],
        );
        assert_eq!(r42.annihilator(), span(4, &[3]));
    }

    #[test]
    fn power_chain_examples() {
        let z = Algebra::<Rational>::zero("zero3", 3).power_chain();
        assert_eq!(z.nil_index, Some(2));

        let c = r4_9().power_chain();
        assert_eq!(c.dims(), vec![4, 3, 2, 1, 0]);
        assert_eq!(c.spaces[1], span(4, &[1, 2, 3]));
        assert_eq!(c.spaces[2], span(4, &[2, 3]));
        assert_eq!(c.spaces[3], span(4, &[3]));
        assert_eq!(c.nil_index, Some(5));

        let r3s2 = alg("R3s_2", 3, &[(1, 1, 3, 1), (2, 2, 3, 1)]);
        assert_eq!(r3s2.power_chain().nil_index, Some(3));
    }

    #[test]
    fn non_nilpotent_chain_stabilizes() {
        // e1 e1 = e1 is idempotent.
        let a = alg("idem", 1, &[(1, 1, 1, 1)]);
        assert_eq!(a.power_chain().nil_index, None);
    }

    #[test]
    fn change_basis_examples() {
        let a = r2();
        assert_eq!(a.change_basis(&Matrix::identity(2)).unwrap(), a);
        let b = a.change_basis(&Matrix::diagonal(vec![q(2), q(4)])).unwrap();
        assert_eq!(b, a);
        let c = a.change_basis(&Matrix::diagonal(vec![q(1), q(2)])).unwrap();
        assert_eq!(c.constant(0, 0, 1), &"1/2".parse::<Rational>().unwrap());
        assert_eq!(a.change_basis(&Matrix::zeros(2, 2)), Err(Error::Singular));
    }

    #[test]
    fn direct_sum_examples() {
        let r3s1 = r2().direct_sum(1);
        assert_eq!(r3s1, alg("R2s_1", 3, &[(1, 1, 2, 1)]));
        assert_eq!(
            Algebra::<Rational>::zero("z", 1).direct_sum(1),
            Algebra::zero("z", 2)
        );
        assert_eq!(r3s1.annihilator(), span(3, &[1, 2]));
        assert_eq!(r3s1.truncate(2).unwrap(), r2());
    }

    #[test]
    fn one_generated() {
        assert!(r4_9().is_generated_by(&unit(4, 0)).unwrap());
        assert!(!r2().direct_sum(1).is_generated_by(&unit(3, 0)).unwrap());
    }
}
