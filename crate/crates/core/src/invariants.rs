//! Isomorphism invariants and a brute-force isomorphism search over small
//! prime fields.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, QAlgebra};
use crate::error::{Error, Result};
use crate::identity::Identity;
use crate::linalg::Matrix;
use crate::scalar::{Field, FromRational, Rational};

/// Derivations act on coordinate rows: `D(e_i) = Σ_k D_{ik} e_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct Derivations<S> {
    pub dim: usize,
    pub basis: Vec<Matrix<S>>,
}

pub fn derivation_algebra<S: Field>(alg: &Algebra<S>) -> Derivations<S> {
    let n = alg.dim();
    let var = |i: usize, k: usize| i * n + k;
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![S::zero(); n * n];
                let mut bump = |idx: usize, c: &S, sign: bool| {
                    if !c.is_zero() {
                        let cur = row[idx].clone();
                        row[idx] = if sign { cur + c } else { cur - c };
                    }
                };
                for l in 0..n {
                    bump(var(l, k), alg.constant(i, j, l), true);
                    bump(var(i, l), alg.constant(l, j, k), false);
                    bump(var(j, l), alg.constant(i, l, k), false);
                }
                rows.push(row);
            }
        }
    }
    let kernel = Matrix::from_rows(rows, n * n)
        .expect("rows of length n²")
        .kernel();
    let basis: Vec<Matrix<S>> = kernel
        .basis_vectors()
        .map(|v| Matrix::new(n, n, v.to_vec()).expect("n² entries"))
        .collect();
    Derivations {
        dim: basis.len(),
        basis,
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct InvariantVector {
    pub dim: usize,
    pub dim_a2: usize,
    pub dim_a3: usize,
    /// Least `k` with `A^k = 0`; `None` when the power chain stabilises
    /// above zero.
    pub nil_index: Option<usize>,
    pub dim_ann: usize,
    pub dim_der: usize,
    pub commutative: bool,
    pub associative: bool,
    pub right_alternative: bool,
}

impl InvariantVector {
    pub const FIELDS: [&'static str; 9] = [
        "dim",
        "dim_A2",
        "dim_A3",
        "nil_index",
        "dim_ann",
        "dim_der",
        "commutative",
        "associative",
        "right_alternative",
    ];

    fn values(&self) -> [String; 9] {
        [
            self.dim.to_string(),
            self.dim_a2.to_string(),
            self.dim_a3.to_string(),
            self.nil_index.map_or("inf".into(), |k| k.to_string()),
            self.dim_ann.to_string(),
            self.dim_der.to_string(),
            self.commutative.to_string(),
            self.associative.to_string(),
            self.right_alternative.to_string(),
        ]
    }

    /// Names of the entries that differ, in field order.
    pub fn separating(&self, other: &InvariantVector) -> Vec<&'static str> {
        let (a, b) = (self.values(), other.values());
        Self::FIELDS
            .iter()
            .zip(a.iter().zip(&b))
            .filter(|(_, (x, y))| x != y)
            .map(|(f, _)| *f)
            .collect()
    }
}

impl std::fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = Self::FIELDS
            .iter()
            .zip(self.values())
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn invariant_vector<S: FromRational>(alg: &Algebra<S>) -> InvariantVector {
    let chain = alg.power_chain();
    let dims = chain.dims();
    let at = |k: usize| dims.get(k - 1).copied().unwrap_or(0);
    InvariantVector {
        dim: alg.dim(),
        dim_a2: at(2),
        dim_a3: at(3),
        nil_index: chain.nil_index,
        dim_ann: alg.annihilator().dim(),
        dim_der: derivation_algebra(alg).dim,
        commutative: alg.is_commutative(),
        associative: Identity::associative().check(alg).holds(),
        right_alternative: Identity::right_alternative().check(alg).holds(),
    }
}

/// Outcome of the exhaustive search over `GL_n(F_p)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum FfEvidence {
    /// Rows are the images of the new basis vectors, entries in `0..p`.
    IsoWitness(Vec<Vec<u32>>),
    /// No `P` exists; `group_order` is `|GL_n(F_p)|`.
    NoneFoundModP { group_order: u64 },
}

impl FfEvidence {
    pub fn is_witness(&self) -> bool {
        matches!(self, FfEvidence::IsoWitness(_))
    }
}

pub const MAX_FF_DIM: usize = 4;

pub fn gl_order(n: usize, p: u32) -> u64 {
    let q = (p as u64).pow(n as u32);
    (0..n).map(|i| q - (p as u64).pow(i as u32)).product()
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn reduce_table(alg: &QAlgebra, p: u32) -> Result<Vec<u32>> {
    alg.constants()
        .iter()
        .map(|c| {
            c.mod_prime(p).ok_or_else(|| {
                Error::Unsupported(format!(
                    "{} has constant {c} whose denominator is divisible by {p}",
                    alg.name()
                ))
            })
        })
        .collect()
}

struct Search {
    n: usize,
    p: u32,
    a: Vec<u32>,
    b: Vec<u32>,
    /// Constraints `(i, j)` checkable once rows `depth..n` are assigned.
    checks: Vec<Vec<(usize, usize)>>,
}

impl Search {
    fn a_product(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let (n, p) = (self.n, self.p as u64);
        let mut out = vec![0u64; n];
        for (i, &xi) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
                let w = (xi as u64 * yj as u64) % p;
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * self.a[(i * n + j) * n + k] as u64;
                }
            }
        }
        out.into_iter().map(|v| (v % p) as u32).collect()
    }

    fn holds(&self, rows: &[Vec<u32>], i: usize, j: usize) -> bool {
        let (n, p) = (self.n, self.p as u64);
        let lhs = self.a_product(&rows[i], &rows[j]);
        let mut rhs = vec![0u64; n];
        for (k, row) in rows.iter().enumerate().take(n) {
            let c = self.b[(i * n + j) * n + k] as u64;
            if c != 0 {
                for (r, x) in rhs.iter_mut().zip(row) {
                    *r += c * *x as u64;
                }
            }
        }
        lhs.iter().zip(rhs).all(|(l, r)| *l as u64 == r % p)
    }

    fn independent(&self, rows: &[Vec<u32>], from: usize) -> bool {
        let p = self.p as u64;
        let mut m: Vec<Vec<u64>> = rows[from..]
            .iter()
            .map(|r| r.iter().map(|&x| x as u64).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = crate::scalar::fp::inverse_mod(m[rank][col] as u32, self.p) as u64;
            for x in m[rank].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..m.len() {
                if r != rank && m[r][col] != 0 {
                    let f = m[r][col];
                    let pivot = m[rank].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
            rank += 1;
        }
        rank == m.len()
    }

    fn vector(&self, mut code: u64) -> Vec<u32> {
        let mut v = vec![0u32; self.n];
        for x in v.iter_mut().rev() {
            *x = (code % self.p as u64) as u32;
            code /= self.p as u64;
        }
        v
    }

    /// Assigns rows from the last one down; returns the smallest witness
    /// (row-major lexicographic) below this partial assignment.
    fn dfs(&self, rows: &mut Vec<Vec<u32>>, depth: usize) -> Option<Vec<Vec<u32>>> {
        if !self.independent(rows, depth) {
            return None;
        }
        if !self.checks[depth]
            .iter()
            .all(|&(i, j)| self.holds(rows, i, j))
        {
            return None;
        }
        if depth == 0 {
            return Some(rows.clone());
        }
        let row = depth - 1;
        let total = (self.p as u64).pow(self.n as u32);
        let mut best: Option<Vec<Vec<u32>>> = None;
        for code in 1..total {
            rows[row] = self.vector(code);
            if let Some(w) = self.dfs(rows, row) {
                if best.as_ref().is_none_or(|b| w < *b) {
                    best = Some(w);
                }
            }
        }
        rows[row] = vec![0; self.n];
        best
    }
}

/// Searches `GL_n(F_p)` exhaustively for `P` with
/// `change_basis(A mod p, P) = B mod p`. Evidence about the question over
/// the rationals, not proof in either direction.
pub fn ff_iso_evidence(a: &QAlgebra, b: &QAlgebra, p: u32) -> Result<FfEvidence> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.dim(),
        });
    }
    if n > MAX_FF_DIM {
        return Err(Error::Unsupported(format!(
            "exhaustive search in dimension {n} (at most {MAX_FF_DIM})"
        )));
    }
    if !is_prime(p) || p > 97 {
        return Err(Error::Unsupported(format!("search over F_{p}")));
    }
    let search = {
        let a_tab = reduce_table(a, p)?;
        let b_tab = reduce_table(b, p)?;
        let mut checks = vec![Vec::new(); n + 1];
        for i in 0..n {
            for j in 0..n {
                let lowest_k = (0..n)
                    .find(|&k| b_tab[(i * n + j) * n + k] != 0)
                    .unwrap_or(n);
                checks[i.min(j).min(lowest_k)].push((i, j));
            }
        }
        Search {
            n,
            p,
            a: a_tab,
            b: b_tab,
            checks,
        }
    };
    if n == 0 {
        return Ok(FfEvidence::IsoWitness(Vec::new()));
    }
    let total = (p as u64).pow(n as u32);
    let best = (1..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut rows = vec![vec![0; n]; n];
            rows[n - 1] = search.vector(code);
            search.dfs(&mut rows, n - 1)
        })
        .min();
    Ok(match best {
        Some(w) => FfEvidence::IsoWitness(w),
        None => FfEvidence::NoneFoundModP {
            group_order: gl_order(n, p),
        },
    })
}

/// Lifts a witness to a rational matrix with entries in `0..p`.
pub fn witness_matrix(rows: &[Vec<u32>]) -> Matrix<Rational> {
    let n = rows.len();
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from(x as i64)).collect())
            .collect(),
        n,
    )
    .expect("square witness")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    fn alg(name: &str, products: &[(usize, usize, usize, i64)]) -> QAlgebra {
        Algebra::from_products(
            name,
            4,
            products.iter().map(|&(i, j, k, v)| (i, j, k, q(v))),
        )
        .unwrap()
    }

    fn r4_1() -> QAlgebra {
        alg("R4_1", &[(1, 1, 2, 1), (1, 2, 3, 1), (2, 1, 3, 1)])
    }

    fn r4_9() -> QAlgebra {
        alg(
            "R4_9",
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
    fn derivation_dimensions() {
        assert_eq!(derivation_algebra(&r4_1()).dim, 6);
        let r48 = alg(
            "R4_8",
            &[
                (1, 1, 4, 1),
                (2, 1, 3, 1),
                (2, 2, 3, 1),
                (2, 3, 4, 1),
                (3, 2, 4, 1),
            ],
        );
        assert_eq!(derivation_algebra(&r48).dim, 3);
        assert_eq!(
            derivation_algebra(&Algebra::<Rational>::zero("z", 3)).dim,
            9
        );
        let r2 = Algebra::from_products("R2s_1", 2, [(1, 1, 2, q(1))]).unwrap();
        assert_eq!(derivation_algebra(&r2).dim, 2);
    }

    #[test]
    fn derivations_satisfy_leibniz() {
        let a = r4_9();
        for d in derivation_algebra(&a).basis {
            for i in 0..4 {
                for j in 0..4 {
                    let ei = a.basis_vector(i);
                    let ej = a.basis_vector(j);
                    let lhs = d.left_apply(&a.multiply(&ei, &ej).unwrap()).unwrap();
                    let r1 = a.multiply(&d.left_apply(&ei).unwrap(), &ej).unwrap();
                    let r2 = a.multiply(&ei, &d.left_apply(&ej).unwrap()).unwrap();
                    let rhs: Vec<Rational> = r1.into_iter().zip(r2).map(|(x, y)| x + y).collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn invariant_vector_examples() {
        let v = invariant_vector(&r4_9());
        assert_eq!(
            (v.dim, v.dim_a2, v.dim_a3, v.nil_index, v.dim_ann, v.dim_der),
            (4, 3, 2, Some(5), 1, 4)
        );
        assert!(v.commutative && v.associative && v.right_alternative);

        let z = invariant_vector(&Algebra::<Rational>::zero("zero4", 4));
        assert_eq!(
            (z.dim, z.dim_a2, z.dim_a3, z.nil_index, z.dim_ann, z.dim_der),
            (4, 0, 0, Some(2), 4, 16)
        );
        assert!(z.commutative && z.associative && z.right_alternative);

        let r45 = alg("R4_5", &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 1, 3, -1)]);
        assert!(!invariant_vector(&r45).associative);
        assert_eq!(v.separating(&v), Vec::<&str>::new());
        assert!(v.separating(&z).contains(&"dim_A2"));
    }

    #[test]
    fn ff_identity_witness() {
        let a = r4_1();
        match ff_iso_evidence(&a, &a, 2).unwrap() {
            FfEvidence::IsoWitness(w) => assert_eq!(witness_matrix(&w), Matrix::identity(4)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ff_finds_change_of_basis() {
        let a = r4_1();
        let p = Matrix::from_rows(
            vec![
                vec![q(1), q(2), q(0), q(1)],
                vec![q(0), q(1), q(1), q(0)],
                vec![q(0), q(0), q(1), q(-1)],
                vec![q(0), q(0), q(0), q(1)],
            ],
            4,
        )
        .unwrap();
        let b = a.change_basis(&p).unwrap();
        match ff_iso_evidence(&a, &b, 3).unwrap() {
            FfEvidence::IsoWitness(w) => {
                let reduced = a.change_basis(&witness_matrix(&w)).unwrap();
                for (x, y) in reduced.constants().iter().zip(b.constants()) {
                    assert_eq!(x.mod_prime(3), y.mod_prime(3));
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ff_separates_r4_5_and_r4_6() {
        let r45 = alg("R4_5", &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 1, 3, -1)]);
        let r46 = alg(
            "R4_6",
            &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 1, 3, -1), (2, 2, 4, 1)],
        );
        assert_eq!(
            ff_iso_evidence(&r45, &r46, 2).unwrap(),
            FfEvidence::NoneFoundModP { group_order: 20160 }
        );
    }

    #[test]
    fn ff_rejects_bad_input() {
        let half =
            Algebra::from_products("h", 4, [(1, 1, 2, Rational::new(1, 2).unwrap())]).unwrap();
        assert!(matches!(
            ff_iso_evidence(&half, &r4_1(), 2),
            Err(Error::Unsupported(_))
        ));
        assert!(ff_iso_evidence(&r4_1(), &r4_1(), 4).is_err());
        assert_eq!(gl_order(4, 3), 24261120);
    }
}
