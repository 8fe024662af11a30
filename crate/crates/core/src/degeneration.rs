//! Degenerations certified by parametric bases, and bounded searches for
//! bases satisfying closed-set conditions.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{QAlgebra, SymAlgebra};
use crate::error::{Error, Result};
use crate::identity::{check_closed_set, parse_scalar, ClosedSetCondition};
use crate::linalg::Matrix;
use crate::rng::{small_rational, task_rng};
use crate::scalar::{Rational, RationalFunction, Var};

/// Basis `E_i^t` given by the rows of a matrix over `ℚ(t)` or `ℚ(t, α)`.
#[derive(Clone, PartialEq, Debug)]
pub struct ParametricBasis {
    matrix: Matrix<RationalFunction>,
}

impl ParametricBasis {
    pub fn new(matrix: Matrix<RationalFunction>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        if !matrix.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(ParametricBasis { matrix })
    }

    pub fn identity(n: usize) -> Self {
        ParametricBasis {
            matrix: Matrix::identity(n),
        }
    }

    pub fn parse(rows: &[Vec<&str>]) -> Result<Self> {
        let n = rows.len();
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| parse_scalar(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(Matrix::from_rows(entries, n)?)
    }

    pub fn matrix(&self) -> &Matrix<RationalFunction> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn has_alpha(&self) -> bool {
        self.matrix
            .entries()
            .iter()
            .any(|e| e.contains_var(Var::ALPHA))
    }

    pub fn specialize_alpha(&self, alpha: &Rational) -> Result<Self> {
        let at = BTreeMap::from([(Var::ALPHA, alpha.clone())]);
        Self::new(self.matrix.try_map(|e| e.substitute(&at))?)
    }
}

/// Constants of `A` in the basis `E^t`.
pub fn apply_parametric_basis(alg: &SymAlgebra, basis: &ParametricBasis) -> Result<SymAlgebra> {
    alg.change_basis(basis.matrix())
}

/// 0-based `(i, j, k)` of a structure constant.
pub type ConstantIndex = (usize, usize, usize);

fn one_based((i, j, k): ConstantIndex) -> String {
    format!("c({},{},{})", i + 1, j + 1, k + 1)
}

#[derive(Clone, PartialEq, Debug)]
pub struct PoleReport {
    /// Constants `c_{ij}^k(t)` without a limit at `t = 0`.
    pub poles: Vec<(ConstantIndex, RationalFunction)>,
}

impl fmt::Display for PoleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .poles
            .iter()
            .map(|(idx, c)| format!("{} = {c}", one_based(*idx)))
            .collect();
        write!(f, "pole at t=0: {}", parts.join(", "))
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum DegenerationLimit {
    Limit(SymAlgebra),
    Poles(PoleReport),
}

/// `lim_{t→0}` of the constants of `A` in the basis `E^t`.
pub fn degeneration_limit(alg: &SymAlgebra, basis: &ParametricBasis) -> Result<DegenerationLimit> {
    let moved = apply_parametric_basis(alg, basis)?;
    let n = alg.dim();
    let mut limit = SymAlgebra::zero(alg.name(), n);
    let mut poles = Vec::new();
    for (i, j, k, c) in moved.nonzero_constants() {
        match c.limit_at_t_zero() {
            Ok(v) => limit.set_constant(i, j, k, v),
            Err(Error::Pole(_)) => poles.push(((i, j, k), c.clone())),
            Err(e) => return Err(e),
        }
    }
    Ok(if poles.is_empty() {
        DegenerationLimit::Limit(limit)
    } else {
        DegenerationLimit::Poles(PoleReport { poles })
    })
}

/// A catalogued degeneration `source → target` with its parametric basis.
#[derive(Clone, PartialEq, Debug)]
pub struct DegenerationRow {
    pub name: String,
    pub source: String,
    pub target: String,
    pub basis: ParametricBasis,
    pub alpha_samples: Vec<Rational>,
    pub excluded_alpha: Vec<Rational>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub enum VerificationMode {
    /// Exact over `ℚ(t)`, or over `ℚ(t, α)` for every admissible `α`.
    Symbolic,
    /// Exact at each listed value of `α`.
    Sampled(Vec<String>),
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Mismatch {
    /// `None` for the symbolic attempt.
    pub alpha: Option<String>,
    pub constant: String,
    pub limit: String,
    pub expected: String,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub enum RowVerdict {
    Verified(VerificationMode),
    Failed(Vec<Mismatch>),
}

impl RowVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, RowVerdict::Verified(_))
    }
}

fn compare(
    source: &SymAlgebra,
    target: &SymAlgebra,
    basis: &ParametricBasis,
    alpha: Option<&Rational>,
) -> Result<Vec<Mismatch>> {
    if source.dim() != target.dim() || source.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            found: target.dim().max(basis.dim()),
        });
    }
    let tag = alpha.map(Rational::to_string);
    let limit = match degeneration_limit(source, basis)? {
        DegenerationLimit::Limit(l) => l,
        DegenerationLimit::Poles(report) => {
            return Ok(report
                .poles
                .into_iter()
                .map(|(idx, c)| Mismatch {
                    alpha: tag.clone(),
                    constant: one_based(idx),
                    limit: format!("pole ({c})"),
                    expected: target.constant(idx.0, idx.1, idx.2).to_string(),
                })
                .collect());
        }
    };
    let n = source.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (l, e) = (limit.constant(i, j, k), target.constant(i, j, k));
                if l != e {
                    out.push(Mismatch {
                        alpha: tag.clone(),
                        constant: one_based((i, j, k)),
                        limit: l.to_string(),
                        expected: e.to_string(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Verifies a row symbolically, falling back to the row's `α` samples
/// when the symbolic comparison fails and `α` occurs anywhere.
pub fn verify_degeneration_row(
    row: &DegenerationRow,
    source: &SymAlgebra,
    target: &SymAlgebra,
) -> Result<RowVerdict> {
    let symbolic = compare(source, target, &row.basis, None)?;
    if symbolic.is_empty() {
        return Ok(RowVerdict::Verified(VerificationMode::Symbolic));
    }
    let parametric = row.basis.has_alpha()
        || source.parameters().contains(&Var::ALPHA)
        || target.parameters().contains(&Var::ALPHA);
    if !parametric {
        return Ok(RowVerdict::Failed(symbolic));
    }
    let samples: Vec<&Rational> = row
        .alpha_samples
        .iter()
        .filter(|a| !row.excluded_alpha.contains(a))
        .collect();
    if samples.is_empty() {
        return Ok(RowVerdict::Failed(symbolic));
    }
    let mut diffs = Vec::new();
    for alpha in &samples {
        let basis = row.basis.specialize_alpha(alpha)?;
        diffs.extend(compare(
            &source.specialize_alpha(alpha)?,
            &target.specialize_alpha(alpha)?,
            &basis,
            Some(alpha),
        )?);
    }
    Ok(if diffs.is_empty() {
        RowVerdict::Verified(VerificationMode::Sampled(
            samples.iter().map(|a| a.to_string()).collect(),
        ))
    } else {
        RowVerdict::Failed(diffs)
    })
}

#[derive(Clone, PartialEq, Debug)]
pub enum BasisSearch {
    BasisFound {
        trial: usize,
        basis: Matrix<Rational>,
    },
    /// Evidence only: no trial basis satisfied the conditions.
    NoBasisFound { trials: usize, seed: u64 },
}

impl BasisSearch {
    pub fn found(&self) -> bool {
        matches!(self, BasisSearch::BasisFound { .. })
    }
}

/// Trial 0 is the stored basis; trial `i > 0` draws a matrix with entries
/// `k/d`, `|k| ≤ 3`, `d ∈ {1, 2}` from stream `i` under `seed`. Singular
/// draws use up their trial.
pub fn closed_set_basis_search(
    alg: &QAlgebra,
    conditions: &[ClosedSetCondition],
    trials: usize,
    seed: u64,
) -> Result<BasisSearch> {
    let n = alg.dim();
    let found = (0..trials.max(1)).into_par_iter().find_map_first(|trial| {
        let p = if trial == 0 {
            Matrix::identity(n)
        } else {
            let mut rng = task_rng(seed, trial as u64);
            let entries = (0..n * n).map(|_| small_rational(&mut rng, 3, 2)).collect();
            Matrix::new(n, n, entries).expect("n² entries")
        };
        let moved = match alg.change_basis(&p) {
            Ok(m) => m,
            Err(Error::Singular) => return None,
            Err(e) => return Some(Err(e)),
        };
        match check_closed_set(&moved, conditions) {
            Ok(true) => Some(Ok(BasisSearch::BasisFound { trial, basis: p })),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.unwrap_or(Ok(BasisSearch::NoBasisFound { trials, seed }))
}
