//! Independent oracle: naive structure-constant arithmetic over
//! `BigRational`, written without the library's linear algebra.

#![allow(dead_code, clippy::needless_range_loop)]

pub mod laws;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use extalg::algebra::QAlgebra;
use extalg::scalar::Rational;

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `c[(i*n + j)*n + k]` is the coefficient of `e_k` in `e_i e_j`.
#[derive(Clone, PartialEq, Debug)]
pub struct Table {
    pub n: usize,
    pub c: Vec<Q>,
}

impl Table {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[(i * self.n + j) * self.n + k]
    }
}

/// Products `e_i e_j = v e_k`, 1-based.
pub fn table(n: usize, products: &[(usize, usize, usize, i64)]) -> Table {
    let mut c = vec![Q::zero(); n * n * n];
    for &(i, j, k, v) in products {
        c[((i - 1) * n + j - 1) * n + k - 1] += q(v);
    }
    Table { n, c }
}

pub fn from_library(alg: &QAlgebra) -> Table {
    Table {
        n: alg.dim(),
        c: alg.constants().iter().map(|x| x.as_big().clone()).collect(),
    }
}

pub fn to_library(t: &Table) -> Vec<Rational> {
    t.c.iter().cloned().map(Rational::from).collect()
}

/// The four-dimensional tables, indexed 1..=9.
pub fn r4(index: usize) -> Table {
    let products: &[(usize, usize, usize, i64)] = match index {
        1 => &[(1, 1, 2, 1), (1, 2, 3, 1), (2, 1, 3, 1)],
        2 => &[(1, 1, 2, 1), (1, 2, 4, 1), (2, 1, 4, 1), (3, 3, 4, 1)],
        3 => &[
            (1, 1, 2, 1),
            (1, 2, 4, 1),
            (2, 1, 4, 1),
            (3, 1, 4, 1),
            (3, 3, 4, 1),
        ],
        4 => &[(1, 1, 2, 1), (1, 2, 4, 1), (2, 1, 4, 1), (3, 1, 4, 1)],
        5 => &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 1, 3, -1)],
        6 => &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 1, 3, -1), (2, 2, 4, 1)],
        7 => &[(2, 1, 3, 1), (2, 2, 3, 1), (2, 3, 4, 1), (3, 2, 4, 1)],
        8 => &[
            (1, 1, 4, 1),
            (2, 1, 3, 1),
            (2, 2, 3, 1),
            (2, 3, 4, 1),
            (3, 2, 4, 1),
        ],
        9 => &[
            (1, 1, 2, 1),
            (1, 2, 3, 1),
            (1, 3, 4, 1),
            (2, 1, 3, 1),
            (2, 2, 4, 1),
            (3, 1, 4, 1),
        ],
        _ => panic!("no table {index}"),
    };
    table(4, products)
}

pub fn r2s_1() -> Table {
    table(2, &[(1, 1, 2, 1)])
}

pub fn r3s_1() -> Table {
    table(3, &[(1, 1, 2, 1)])
}

pub fn r3s_2() -> Table {
    table(3, &[(1, 1, 3, 1), (2, 2, 3, 1)])
}

pub fn r3s_3() -> Table {
    table(3, &[(1, 2, 3, 1), (2, 1, 3, -1)])
}

pub fn r3s_4(alpha: i64) -> Table {
    table(3, &[(1, 1, 3, alpha), (2, 1, 3, 1), (2, 2, 3, 1)])
}

pub fn r3_1() -> Table {
    table(3, &[(1, 1, 2, 1), (1, 2, 3, 1), (2, 1, 3, 1)])
}

pub fn n2(alpha: i64) -> Table {
    table(
        4,
        &[(1, 1, 3, 1), (1, 2, 4, 1), (2, 1, 3, -alpha), (2, 2, 4, -1)],
    )
}

pub fn n3(alpha: i64) -> Table {
    table(
        4,
        &[
            (1, 1, 4, 1),
            (1, 2, 4, alpha),
            (2, 1, 4, -alpha),
            (2, 2, 4, 1),
            (3, 3, 4, 1),
        ],
    )
}

pub fn mul(t: &Table, x: &[Q], y: &[Q]) -> Vec<Q> {
    let n = t.n;
    let mut out = vec![Q::zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let xy = &x[i] * &y[j];
            for k in 0..n {
                out[k] += &xy * t.get(i, j, k);
            }
        }
    }
    out
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    (0..n)
        .map(|k| if k == i { Q::one() } else { Q::zero() })
        .collect()
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Rank by plain Gauss elimination.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &pivot;
                for c in col..cols {
                    let d = &f * &rows[r][c];
                    rows[i][c] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Equations `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` in the unknowns
/// `d[a*n + b]` with `D(e_a) = Σ_b d[a*n+b] e_b`.
pub fn der_dim(t: &Table) -> usize {
    let n = t.n;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut row = vec![Q::zero(); n * n];
                // D(e_i e_j)_m = Σ_l c_ij^l d[l][m]
                for l in 0..n {
                    row[l * n + m] += t.get(i, j, l);
                }
                // (D e_i) e_j: Σ_b d[i][b] c_bj^m
                for b in 0..n {
                    row[i * n + b] -= t.get(b, j, m);
                }
                // e_i (D e_j): Σ_b d[j][b] c_ib^m
                for b in 0..n {
                    row[j * n + b] -= t.get(i, b, m);
                }
                rows.push(row);
            }
        }
    }
    n * n - rank(rows)
}

/// Dimension of `{x : xA = Ax = 0}`.
pub fn ann_dim(t: &Table) -> usize {
    let n = t.n;
    let mut rows = Vec::new();
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|i| t.get(i, j, k).clone()).collect());
            rows.push((0..n).map(|i| t.get(j, i, k).clone()).collect());
        }
    }
    n - rank(rows)
}

/// Cocycles for right alternativity:
/// `θ(xy,z) − θ(x,yz) + θ(xz,y) − θ(x,zy) = 0` on basis triples.
pub fn z2_dim_ra(t: &Table) -> usize {
    let n = t.n;
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut row = vec![Q::zero(); n * n];
                for l in 0..n {
                    row[l * n + z] += t.get(x, y, l);
                    row[x * n + l] -= t.get(y, z, l);
                    row[l * n + y] += t.get(x, z, l);
                    row[x * n + l] -= t.get(z, y, l);
                }
                rows.push(row);
            }
        }
    }
    n * n - rank(rows)
}

pub fn b2_dim(t: &Table) -> usize {
    let n = t.n;
    let rows = (0..n)
        .map(|k| {
            (0..n * n)
                .map(|ij| t.get(ij / n, ij % n, k).clone())
                .collect()
        })
        .collect();
    rank(rows)
}

pub fn associator(t: &Table, x: usize, y: usize, z: usize) -> Vec<Q> {
    let n = t.n;
    let (ex, ey, ez) = (unit(n, x), unit(n, y), unit(n, z));
    sub(
        &mul(t, &mul(t, &ex, &ey), &ez),
        &mul(t, &ex, &mul(t, &ey, &ez)),
    )
}

pub fn is_assoc(t: &Table) -> bool {
    let n = t.n;
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| associator(t, x, y, z).iter().all(Q::is_zero))))
}

/// `(x, y, z) + (x, z, y) = 0` on basis triples.
pub fn is_ra(t: &Table) -> bool {
    let n = t.n;
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                add(&associator(t, x, y, z), &associator(t, x, z, y))
                    .iter()
                    .all(Q::is_zero)
            })
        })
    })
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend(unit(n, i));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let pivot = a[col][col].clone();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] / &pivot;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in 0..2 * n {
                    let d = &f * &a[col][c];
                    a[i][c] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// New basis `E_i = Σ_m p[i][m] e_m`; returns the table in the `E_i`.
pub fn change_basis(t: &Table, p: &[Vec<Q>]) -> Table {
    let n = t.n;
    let inv = inverse(p).expect("invertible basis change");
    let mut c = vec![Q::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let w = mul(t, &p[i], &p[j]);
            // coordinates of w in the E basis: w = Σ_k v_k E_k, so v = w·inv
            for k in 0..n {
                let mut v = Q::zero();
                for m in 0..n {
                    v += &w[m] * &inv[m][k];
                }
                c[(i * n + j) * n + k] = v;
            }
        }
    }
    Table { n, c }
}

/// Dimensions of `A^1, A^2, …` down to zero, with `A^k = Σ A^i A^{k−i}`.
pub fn power_dims(t: &Table) -> Vec<usize> {
    let n = t.n;
    let mut powers: Vec<Vec<Vec<Q>>> = vec![(0..n).map(|i| unit(n, i)).collect()];
    let mut dims = vec![n];
    while *dims.last().unwrap() > 0 && dims.len() <= n + 1 {
        let k = powers.len() + 1;
        let mut span = Vec::new();
        for i in 1..k {
            for u in &powers[i - 1] {
                for w in &powers[k - i - 1] {
                    span.push(mul(t, u, w));
                }
            }
        }
        let basis = independent(span, n);
        dims.push(basis.len());
        powers.push(basis);
    }
    dims
}

fn independent(vectors: Vec<Vec<Q>>, n: usize) -> Vec<Vec<Q>> {
    let mut kept: Vec<Vec<Q>> = Vec::new();
    for v in vectors {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if rank(trial) > kept.len() {
            kept.push(v);
        }
    }
    debug_assert!(kept.len() <= n);
    kept
}
