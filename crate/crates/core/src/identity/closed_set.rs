use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::{FromRational, Rational};

/// One term `coeff · c_{ij}^k` of a linear relation; labels are 1-based.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinearTerm {
    pub coeff: Rational,
    pub index: [usize; 3],
}

/// A polynomial condition on structure constants in a fixed basis.
///
/// With `A_i = span{e_i, …, e_n}`, `PowerInclusion { p, q, r }` states
/// `A_p A_q ⊆ A_r`, i.e. `c_{ij}^k = 0` for `i ≥ p`, `j ≥ q`, `k < r`.
/// `r = n + 1` expresses `A_p A_q = 0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosedSetCondition {
    PowerInclusion {
        p: usize,
        q: usize,
        r: usize,
    },
    /// `Σ coeff · c_{ij}^k = 0`.
    LinearRelation {
        terms: Vec<LinearTerm>,
    },
}

impl ClosedSetCondition {
    /// `c_{lhs} = c_{rhs}`.
    pub fn equal(lhs: [usize; 3], rhs: [usize; 3]) -> Self {
        ClosedSetCondition::LinearRelation {
            terms: vec![
                LinearTerm {
                    coeff: Rational::from(1),
                    index: lhs,
                },
                LinearTerm {
                    coeff: Rational::from(-1),
                    index: rhs,
                },
            ],
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        let bad = |what: String| Err(Error::Malformed(format!("condition {self}: {what}")));
        match self {
            ClosedSetCondition::PowerInclusion { p, q, r } => {
                if !(1..=n).contains(p) || !(1..=n).contains(q) || !(1..=n + 1).contains(r) {
                    return bad(format!("index outside the dimension {n}"));
                }
            }
            ClosedSetCondition::LinearRelation { terms } => {
                if terms
                    .iter()
                    .flat_map(|t| t.index)
                    .any(|i| !(1..=n).contains(&i))
                {
                    return bad(format!("index outside the dimension {n}"));
                }
            }
        }
        Ok(())
    }

    pub fn holds<S: FromRational>(&self, alg: &Algebra<S>) -> Result<bool> {
        let n = alg.dim();
        self.validate(n)?;
        Ok(match self {
            ClosedSetCondition::PowerInclusion { p, q, r } => (p - 1..n)
                .all(|i| (q - 1..n).all(|j| (0..r - 1).all(|k| alg.constant(i, j, k).is_zero()))),
            ClosedSetCondition::LinearRelation { terms } => terms
                .iter()
                .fold(S::zero(), |acc, t| {
                    let [i, j, k] = t.index;
                    acc + S::from_rational(&t.coeff) * alg.constant(i - 1, j - 1, k - 1)
                })
                .is_zero(),
        })
    }
}

impl fmt::Display for ClosedSetCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedSetCondition::PowerInclusion { p, q, r } => {
                write!(f, "A{p}*A{q} <= A{r}")
            }
            ClosedSetCondition::LinearRelation { terms } => {
                for (n, t) in terms.iter().enumerate() {
                    let [i, j, k] = t.index;
                    if n > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{}*c({i},{j},{k})", t.coeff)?;
                }
                f.write_str(" = 0")
            }
        }
    }
}

/// True iff every condition holds for the constants in the stored basis.
pub fn check_closed_set<S: FromRational>(
    alg: &Algebra<S>,
    conditions: &[ClosedSetCondition],
) -> Result<bool> {
    for c in conditions {
        if !c.holds(alg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QAlgebra;

    fn alg(name: &str, products: &[(usize, usize, usize, i64)]) -> QAlgebra {
        Algebra::from_products(
            name,
            4,
            products
                .iter()
                .map(|&(i, j, k, v)| (i, j, k, Rational::from(v))),
        )
        .unwrap()
    }

    fn r8_set() -> Vec<ClosedSetCondition> {
        vec![
            ClosedSetCondition::PowerInclusion { p: 1, q: 1, r: 3 },
            ClosedSetCondition::PowerInclusion { p: 3, q: 3, r: 5 },
            ClosedSetCondition::equal([1, 3, 4], [3, 1, 4]),
            ClosedSetCondition::equal([2, 3, 4], [3, 2, 4]),
        ]
    }

    #[test]
    fn r4_8_satisfies_its_set() {
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
        assert!(check_closed_set(&r48, &r8_set()).unwrap());
    }

    #[test]
    fn r4_5_violates_symmetry_condition() {
        let r45 = alg("R4_5", &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 1, 3, -1)]);
        assert!(!check_closed_set(&r45, &r8_set()).unwrap());
        assert!(!r8_set()[2].holds(&r45).unwrap());
    }

    #[test]
    fn zero_algebra_satisfies_all() {
        let z = Algebra::<Rational>::zero("zero4", 4);
        assert!(check_closed_set(&z, &r8_set()).unwrap());
        let bad = ClosedSetCondition::PowerInclusion { p: 5, q: 1, r: 1 };
        assert!(bad.holds(&z).is_err());
    }

    #[test]
    fn json_shape() {
        let c: ClosedSetCondition = serde_json::from_str(
            r#"{"kind":"linear_relation","terms":[{"coeff":"1","index":[1,3,4]},{"coeff":"-1","index":[3,1,4]}]}"#,
        )
        .unwrap();
        assert_eq!(c, ClosedSetCondition::equal([1, 3, 4], [3, 1, 4]));
    }
}
