//! Second cohomology with values in a line, central extensions, and the
//! action of automorphisms on cocycles.
//!
//! A bilinear form `θ` is stored as the matrix `θ_{ij} = θ(e_i, e_j)`, and
//! flattened to a vector with index `i·n + j` whenever subspaces of forms
//! are needed. Automorphisms are matrices whose column `j` holds the
//! coordinates of `φ(e_j)`, so `φ` acts on forms by `θ ↦ φᵀθφ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use rayon::prelude::*;

use crate::algebra::{Algebra, QAlgebra};
use crate::error::{Error, Result};
use crate::identity::{parse_scalar, Identity, IdentityCheck};
use crate::linalg::{Matrix, Subspace};
use crate::rng::{small_rational, task_rng};
use crate::scalar::{Field, FromRational, Rational, RationalFunction, Var};

#[derive(Clone, PartialEq, Debug)]
pub struct BilinearForm<S> {
    matrix: Matrix<S>,
}

impl<S: Field> BilinearForm<S> {
    pub fn new(matrix: Matrix<S>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        Ok(BilinearForm { matrix })
    }

    pub fn zero(n: usize) -> Self {
        BilinearForm {
            matrix: Matrix::zeros(n, n),
        }
    }

    /// `Δ_ij` with 0-based indices.
    pub fn delta(n: usize, i: usize, j: usize) -> Self {
        let mut f = Self::zero(n);
        f.matrix[(i, j)] = S::one();
        f
    }

    pub fn from_vector(n: usize, v: &[S]) -> Result<Self> {
        Ok(BilinearForm {
            matrix: Matrix::new(n, n, v.to_vec())?,
        })
    }

    pub fn to_vector(&self) -> Vec<S> {
        self.matrix.entries().to_vec()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &S {
        &self.matrix[(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn evaluate(&self, x: &[S], y: &[S]) -> Result<S> {
        let my = self.matrix.apply(y)?;
        if x.len() != my.len() {
            return Err(Error::DimensionMismatch {
                expected: my.len(),
                found: x.len(),
            });
        }
        Ok(x.iter()
            .zip(&my)
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(BilinearForm {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        BilinearForm {
            matrix: self.matrix.scale(c),
        }
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> BilinearForm<T> {
        BilinearForm {
            matrix: self.matrix.map(f),
        }
    }

    pub fn try_map<T: Field>(&self, f: impl Fn(&S) -> Result<T>) -> Result<BilinearForm<T>> {
        Ok(BilinearForm {
            matrix: self.matrix.try_map(f)?,
        })
    }
}

impl BilinearForm<RationalFunction> {
    /// Parses Δ-notation such as `a*D11 + D21 - 1/2*D22` (1-based indices,
    /// one digit each) on an `n`-dimensional algebra.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let f = parse_scalar(text)?;
        let mut deltas = BTreeMap::new();
        for v in f.vars() {
            if let Some((i, j)) = delta_indices(&v.name()) {
                if i >= n || j >= n {
                    return Err(Error::Malformed(format!(
                        "`{}` in `{text}` exceeds dimension {n}",
                        v.name()
                    )));
                }
                deltas.insert(v, (i, j));
            }
        }
        let zeros: BTreeMap<Var, Rational> =
            deltas.keys().map(|v| (*v, Rational::zero())).collect();
        let constant = f.substitute(&zeros)?;
        if !constant.is_zero() {
            return Err(Error::Malformed(format!(
                "`{text}` has a term without a D_ij factor"
            )));
        }
        let mut form = Self::zero(n);
        let mut rebuilt = RationalFunction::zero();
        for (v, &(i, j)) in &deltas {
            let mut at = zeros.clone();
            at.insert(*v, Rational::one());
            let c = f.substitute(&at)?;
            rebuilt = rebuilt + c.clone() * RationalFunction::var(*v);
            form.matrix[(i, j)] = c;
        }
        if rebuilt != f {
            return Err(Error::Malformed(format!(
                "`{text}` is not linear in the D_ij"
            )));
        }
        Ok(form)
    }

    pub fn to_rational(&self) -> Option<BilinearForm<Rational>> {
        self.try_map(|c| c.as_rational().ok_or(Error::Singular))
            .ok()
    }
}

impl BilinearForm<Rational> {
    pub fn parse_rational(text: &str, n: usize) -> Result<Self> {
        BilinearForm::parse(text, n)?
            .to_rational()
            .ok_or_else(|| Error::Malformed(format!("`{text}` has symbolic coefficients")))
    }
}

fn delta_indices(name: &str) -> Option<(usize, usize)> {
    let digits = name.strip_prefix('D')?.as_bytes();
    match digits {
        [a @ b'1'..=b'9', b @ b'1'..=b'9'] => Some(((a - b'1') as usize, (b - b'1') as usize)),
        _ => None,
    }
}

impl<S: Field> fmt::Display for BilinearForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let mut first = true;
        for i in 0..n {
            for j in 0..n {
                let c = &self.matrix[(i, j)];
                if c.is_zero() {
                    continue;
                }
                let text = c.to_string();
                let (neg, body) = match text.strip_prefix('-') {
                    Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                    _ => (false, text),
                };
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if neg { "-" } else { "+" })?;
                }
                first = false;
                if body != "1" {
                    if body.contains(['+', '-']) {
                        write!(f, "({body})*")?;
                    } else {
                        write!(f, "{body}*")?;
                    }
                }
                write!(f, "D{}{}", i + 1, j + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct CohomologyReport<S> {
    pub z2: Subspace<S>,
    pub b2: Subspace<S>,
    pub h2_dim: usize,
    pub h2_representatives: Vec<BilinearForm<S>>,
}

impl<S: Field> CohomologyReport<S> {
    /// Whether `[θ] = [ϑ]` in `H²`.
    pub fn same_class(&self, theta: &BilinearForm<S>, other: &BilinearForm<S>) -> Result<bool> {
        let diff: Vec<S> = theta
            .to_vector()
            .into_iter()
            .zip(other.to_vector())
            .map(|(a, b)| a - b)
            .collect();
        self.b2.contains(&diff)
    }
}

/// `B²(A)`: the forms `θ(x, y) = f(xy)` for linear `f`.
pub fn coboundaries<S: Field>(alg: &Algebra<S>) -> Subspace<S> {
    let n = alg.dim();
    let rows = (0..n)
        .map(|k| {
            let mut v = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    v.push(alg.constant(i, j, k).clone());
                }
            }
            v
        })
        .collect();
    Subspace::span(n * n, rows).expect("forms of length n²")
}

/// `Z²(A)` for the variety defined by `identity`.
pub fn cocycles<S: FromRational>(alg: &Algebra<S>, identity: &Identity) -> Result<Subspace<S>> {
    Ok(identity.cocycle_constraints(alg)?.kernel())
}

pub fn is_cocycle<S: FromRational>(
    alg: &Algebra<S>,
    identity: &Identity,
    theta: &BilinearForm<S>,
) -> Result<bool> {
    check_size(alg.dim(), theta.dim())?;
    let m = identity.cocycle_constraints(alg)?;
    Ok(m.apply(&theta.to_vector())?.iter().all(S::is_zero))
}

pub fn cohomology<S: FromRational>(
    alg: &Algebra<S>,
    identity: &Identity,
) -> Result<CohomologyReport<S>> {
    if let IdentityCheck::Counterexample { args, value } = identity.check(alg) {
        return Err(Error::Precondition(format!(
            "{} fails `{identity}` at basis tuple {:?} with value {:?}",
            alg.name(),
            args.iter().map(|a| a + 1).collect::<Vec<_>>(),
            value
        )));
    }
    let n = alg.dim();
    let z2 = cocycles(alg, identity)?;
    let b2 = coboundaries(alg);
    let reps = z2.complement_of(&b2)?;
    Ok(CohomologyReport {
        h2_dim: z2.dim() - b2.dim(),
        h2_representatives: reps
            .iter()
            .map(|v| BilinearForm::from_vector(n, v))
            .collect::<Result<_>>()?,
        z2,
        b2,
    })
}

/// `A_θ = A ⊕ V` with product `xy + θ(x, y)`; the coordinate `n + r`
/// carries `thetas[r]`.
pub fn central_extension<S: FromRational>(
    alg: &Algebra<S>,
    identity: &Identity,
    thetas: &[BilinearForm<S>],
) -> Result<Algebra<S>> {
    if thetas.is_empty() {
        return Err(Error::Precondition("no cocycles given".into()));
    }
    let n = alg.dim();
    for theta in thetas {
        if !is_cocycle(alg, identity, theta)? {
            return Err(Error::Cocycle {
                form: theta.to_string(),
            });
        }
    }
    let mut out = alg.direct_sum(thetas.len());
    for (r, theta) in thetas.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                out.set_constant(i, j, n + r, theta.entry(i, j).clone());
            }
        }
    }
    Ok(out.with_name(format!("{}_ext", alg.name())))
}

/// `Ann(θ) = {x : θ(x, A) + θ(A, x) = 0}`.
pub fn cocycle_annihilator<S: Field>(theta: &BilinearForm<S>) -> Subspace<S> {
    let n = theta.dim();
    let m = theta.matrix();
    let rows = (0..n)
        .map(|j| m.column(j))
        .chain((0..n).map(|j| m.row(j).to_vec()))
        .collect();
    Matrix::from_rows(rows, n)
        .expect("rows of length n")
        .kernel()
}

/// `φθ = φᵀ θ φ`.
pub fn act_on_cocycle<S: Field>(
    phi: &Matrix<S>,
    theta: &BilinearForm<S>,
) -> Result<BilinearForm<S>> {
    check_size(theta.dim(), phi.rows())?;
    check_size(theta.dim(), phi.cols())?;
    BilinearForm::new(phi.transpose().mul(theta.matrix())?.mul(phi)?)
}

/// Whether `φ` is invertible and `φ(e_i e_j) = φ(e_i) φ(e_j)` for all `i, j`.
pub fn verify_automorphism<S: Field>(alg: &Algebra<S>, phi: &Matrix<S>) -> bool {
    if phi.rows() != alg.dim() || phi.cols() != alg.dim() {
        return false;
    }
    match alg.change_basis(&phi.transpose()) {
        Ok(image) => image.constants() == alg.constants(),
        Err(_) => false,
    }
}

fn check_size(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A family of automorphisms: a matrix of expressions in free parameters,
/// valid wherever every side-condition expression is nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct AutomorphismShape {
    params: Vec<Var>,
    matrix: Matrix<RationalFunction>,
    nonzero: Vec<RationalFunction>,
}

impl AutomorphismShape {
    pub fn new(
        params: Vec<Var>,
        matrix: Matrix<RationalFunction>,
        nonzero: Vec<RationalFunction>,
    ) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let declared: BTreeSet<Var> = params.iter().copied().collect();
        for e in matrix.entries().iter().chain(&nonzero) {
            if let Some(v) = e.vars().into_iter().find(|v| !declared.contains(v)) {
                return Err(Error::Malformed(format!(
                    "automorphism entry `{e}` uses undeclared parameter `{}`",
                    v.name()
                )));
            }
        }
        Ok(AutomorphismShape {
            params,
            matrix,
            nonzero,
        })
    }

    pub fn parse(params: &[&str], rows: &[Vec<&str>], nonzero: &[&str]) -> Result<Self> {
        let n = rows.len();
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| parse_scalar(e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            params.iter().map(|p| Var::named(p)).collect(),
            Matrix::from_rows(entries, n)?,
            nonzero
                .iter()
                .map(|e| parse_scalar(e))
                .collect::<Result<_>>()?,
        )
    }

    pub fn params(&self) -> &[Var] {
        &self.params
    }

    pub fn matrix(&self) -> &Matrix<RationalFunction> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The member at `values`, or `None` when a side condition vanishes or
    /// the matrix is singular there.
    pub fn specialize(&self, values: &[Rational]) -> Result<Option<Matrix<Rational>>> {
        check_size(self.params.len(), values.len())?;
        let at: BTreeMap<Var, Rational> = self
            .params
            .iter()
            .copied()
            .zip(values.iter().cloned())
            .collect();
        for c in &self.nonzero {
            match c.evaluate(&at) {
                Ok(v) if !v.is_zero() => {}
                _ => return Ok(None),
            }
        }
        let m = match self.matrix.try_map(|e| e.evaluate(&at)) {
            Ok(m) => m,
            Err(Error::Pole(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok(m.is_invertible().then_some(m))
    }

    /// Checks the whole family at once over the field of rational functions
    /// in the parameters.
    pub fn verify_symbolic(&self, alg: &QAlgebra) -> bool {
        verify_automorphism(&alg.to_symbolic(), &self.matrix)
    }

    fn sample(&self, seed: u64, index: u64) -> Result<Matrix<Rational>> {
        let mut rng = task_rng(seed, index);
        for _ in 0..1000 {
            let values: Vec<Rational> = self
                .params
                .iter()
                .map(|_| {
                    let bound = rng.gen_range(1..=7);
                    small_rational(&mut rng, bound, 3)
                })
                .collect();
            if let Some(m) = self.specialize(&values)? {
                return Ok(m);
            }
        }
        Err(Error::BadShape {
            sample: index as usize,
            msg: "no admissible parameter values found".into(),
        })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum OrbitEvidence {
    /// No sampled automorphism maps one line to the other. Evidence only.
    NoEquivalenceFound { samples: usize },
    /// `W₂ = λ · φW₁` modulo `B²`.
    EquivalenceWitness {
        sample: usize,
        phi: Matrix<Rational>,
        lambda: Rational,
    },
}

impl OrbitEvidence {
    pub fn found_equivalence(&self) -> bool {
        matches!(self, OrbitEvidence::EquivalenceWitness { .. })
    }
}

/// The `λ` with `target = λ · source` modulo `b2`, if any.
pub fn projective_ratio(
    b2: &Subspace<Rational>,
    source: &BilinearForm<Rational>,
    target: &BilinearForm<Rational>,
) -> Result<Option<Rational>> {
    let s = b2.reduce(&source.to_vector())?;
    let t = b2.reduce(&target.to_vector())?;
    let Some(pivot) = s.iter().position(|x| !x.is_zero()) else {
        return Ok(t.iter().all(Rational::is_zero).then(Rational::one));
    };
    let lambda = t[pivot].clone() / s[pivot].clone();
    if lambda.is_zero() {
        return Ok(None);
    }
    let proportional = s.iter().zip(&t).all(|(a, b)| a.clone() * &lambda == *b);
    Ok(proportional.then_some(lambda))
}

/// Samples members of `shape` (the identity first) looking for `φ` with
/// `⟨[φW₁]⟩ = ⟨[W₂]⟩`. Sample `i` draws from its own stream under `seed`.
pub fn orbit_distinctness_evidence(
    alg: &QAlgebra,
    shape: &AutomorphismShape,
    w1: &BilinearForm<Rational>,
    w2: &BilinearForm<Rational>,
    samples: usize,
    seed: u64,
) -> Result<OrbitEvidence> {
    check_size(alg.dim(), shape.dim())?;
    check_size(alg.dim(), w1.dim())?;
    check_size(alg.dim(), w2.dim())?;
    let b2 = coboundaries(alg);
    let found = (0..samples).into_par_iter().find_map_first(|i| {
        let attempt =
            || -> Result<Option<OrbitEvidence>> {
                let phi = if i == 0 {
                    Matrix::identity(alg.dim())
                } else {
                    shape.sample(seed, i as u64)?
                };
                if !verify_automorphism(alg, &phi) {
                    return Err(Error::BadShape {
                        sample: i,
                        msg: format!("sampled matrix is not an automorphism of {}", alg.name()),
                    });
                }
                let image = act_on_cocycle(&phi, w1)?;
                Ok(projective_ratio(&b2, &image, w2)?.map(|lambda| {
                    OrbitEvidence::EquivalenceWitness {
                        sample: i,
                        phi,
                        lambda,
                    }
                }))
            };
        attempt().transpose()
    });
    match found {
        Some(r) => r,
        None => Ok(OrbitEvidence::NoEquivalenceFound { samples }),
    }
}

/// Coordinates of `target` along `basis`, modulo `sub`. Fails if `target`
/// leaves `span(basis) + sub`.
fn decompose_mod(
    basis: &[Vec<Rational>],
    sub: &Subspace<Rational>,
    target: &[RationalFunction],
) -> Result<Vec<RationalFunction>> {
    let width = target.len();
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .cloned()
        .chain(sub.basis_vectors().map(<[Rational]>::to_vec))
        .collect();
    let m = Matrix::from_rows(rows.clone(), width)?;
    let red = m.rref();
    if red.rank != rows.len() {
        return Err(Error::Precondition(
            "cocycle basis is not independent modulo coboundaries".into(),
        ));
    }
    let square = Matrix::from_rows(
        rows.iter()
            .map(|r| red.pivots.iter().map(|&p| r[p].clone()).collect())
            .collect(),
        rows.len(),
    )?;
    let inv = square.inverse()?.map(|q| RationalFunction::from(q.clone()));
    let picked: Vec<RationalFunction> = red.pivots.iter().map(|&p| target[p].clone()).collect();
    let coeffs = inv.left_apply(&picked)?;
    for (col, value) in target.iter().enumerate() {
        let rebuilt = rows
            .iter()
            .zip(&coeffs)
            .fold(RationalFunction::zero(), |acc, (r, c)| {
                if r[col].is_zero() {
                    acc
                } else {
                    acc + c.clone() * &RationalFunction::from(r[col].clone())
                }
            });
        if rebuilt != *value {
            return Err(Error::Precondition(format!(
                "transformed cocycle leaves the span of the given classes at D{}{}",
                col / basis_dim(width) + 1,
                col % basis_dim(width) + 1
            )));
        }
    }
    Ok(coeffs.into_iter().take(basis.len()).collect())
}

fn basis_dim(width: usize) -> usize {
    (1..=width).find(|n| n * n == width).unwrap_or(1)
}

/// Names of the coefficients of the generic cocycle: `a1, a2, …`.
pub fn action_variable(i: usize) -> Var {
    Var::named(&format!("a{}", i + 1))
}

/// The coefficients `α*ᵢ` of `φ(Σ αᵢ∇ᵢ)` along the `∇ᵢ`, as rational
/// functions of the `αᵢ` (named `a1, a2, …`) and the shape's parameters.
pub fn action_coefficients(
    alg: &QAlgebra,
    shape: &AutomorphismShape,
    nablas: &[BilinearForm<Rational>],
) -> Result<Vec<RationalFunction>> {
    let n = alg.dim();
    check_size(n, shape.dim())?;
    let mut generic = BilinearForm::<RationalFunction>::zero(n);
    for (i, nabla) in nablas.iter().enumerate() {
        check_size(n, nabla.dim())?;
        let term = nabla
            .map(|q| RationalFunction::from(q.clone()))
            .scale(&RationalFunction::var(action_variable(i)));
        generic = generic.add(&term)?;
    }
    let image = act_on_cocycle(shape.matrix(), &generic)?;
    let basis: Vec<Vec<Rational>> = nablas.iter().map(BilinearForm::to_vector).collect();
    decompose_mod(&basis, &coboundaries(alg), &image.to_vector())
}

/// One recomputed action coefficient next to the stated formula.
#[derive(Clone, PartialEq, Debug)]
pub struct FormulaComparison {
    pub index: usize,
    pub recomputed: RationalFunction,
    pub stated: RationalFunction,
}

impl FormulaComparison {
    pub fn matches(&self) -> bool {
        self.recomputed == self.stated
    }
}

pub fn compare_action_formulas(
    alg: &QAlgebra,
    shape: &AutomorphismShape,
    nablas: &[BilinearForm<Rational>],
    stated: &[RationalFunction],
) -> Result<Vec<FormulaComparison>> {
    check_size(nablas.len(), stated.len())?;
    let recomputed = action_coefficients(alg, shape, nablas)?;
    Ok(recomputed
        .into_iter()
        .zip(stated)
        .enumerate()
        .map(|(index, (recomputed, stated))| FormulaComparison {
            index,
            recomputed,
            stated: stated.clone(),
        })
        .collect())
}

/// A stated expansion of `φθ` checked against `φᵀθφ` modulo `B²`.
#[derive(Clone, PartialEq, Debug)]
pub struct ExpansionCheck {
    pub recomputed: BilinearForm<RationalFunction>,
    pub stated: BilinearForm<RationalFunction>,
    /// Nonzero entries `(i, j, value)` of `recomputed − stated` reduced
    /// modulo `B²`, 0-based.
    pub discrepancies: Vec<(usize, usize, RationalFunction)>,
}

impl ExpansionCheck {
    pub fn matches(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn check_expansion(
    alg: &QAlgebra,
    shape: &AutomorphismShape,
    theta: &BilinearForm<Rational>,
    stated: &BilinearForm<RationalFunction>,
) -> Result<ExpansionCheck> {
    let n = alg.dim();
    check_size(n, stated.dim())?;
    let theta = theta.map(|q| RationalFunction::from(q.clone()));
    let recomputed = act_on_cocycle(shape.matrix(), &theta)?;
    let diff: Vec<RationalFunction> = recomputed
        .to_vector()
        .into_iter()
        .zip(stated.to_vector())
        .map(|(a, b)| a - b)
        .collect();
    let b2 = coboundaries(alg).map(|q| RationalFunction::from(q.clone()));
    let reduced = b2.reduce(&diff)?;
    let discrepancies = reduced
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(idx, v)| (idx / n, idx % n, v))
        .collect();
    Ok(ExpansionCheck {
        recomputed,
        stated: stated.clone(),
        discrepancies,
    })
}
