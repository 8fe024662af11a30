use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Poly, Rational, Var};
use crate::error::{Error, Result};

/// Quotient of two polynomials, kept in canonical form: coprime numerator
/// and denominator, monic denominator, zero represented as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Builds `num/den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Malformed("zero denominator".into()));
        }
        Ok(Self::canonical(num, den))
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        RationalFunction::from(Poly::var(v))
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    pub fn alpha() -> Self {
        Self::var(Var::ALPHA)
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Poly::one(),
            };
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero denominator");
            return RationalFunction {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().map(|(_, c)| c.clone()).unwrap();
        let inv = lc.inv().unwrap();
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// Re-canonicalizes; values built through this type's API are always
    /// canonical already, so this is the identity on them.
    pub fn simplify(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_constant().then_some(&self.num)
    }

    /// Limit as `t → 0`, defined when `t` does not divide the denominator.
    /// The result may still depend on the other variables.
    pub fn limit_at_t_zero(&self) -> Result<RationalFunction> {
        let at_zero = BTreeMap::from([(Var::T, Rational::zero())]);
        let den = self.den.substitute(&at_zero);
        if den.is_zero() {
            return Err(Error::Pole(format!("{self} has a pole at t = 0")));
        }
        Ok(Self::canonical(self.num.substitute(&at_zero), den))
    }

    /// Substitutes rationals for some variables.
    pub fn substitute(&self, assignment: &BTreeMap<Var, Rational>) -> Result<RationalFunction> {
        let den = self.den.substitute(assignment);
        if den.is_zero() {
            return Err(Error::Pole(format!(
                "denominator of {self} vanishes at {}",
                fmt_assignment(assignment)
            )));
        }
        Ok(Self::canonical(self.num.substitute(assignment), den))
    }

    /// Exact value at an assignment covering every variable.
    pub fn evaluate(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Rational> {
        if let Some(v) = self
            .vars()
            .into_iter()
            .find(|v| !assignment.contains_key(v))
        {
            return Err(Error::Precondition(format!(
                "assignment does not cover variable `{v}` of {self}"
            )));
        }
        let value = self.substitute(assignment)?;
        Ok(value.as_rational().expect("all variables assigned"))
    }

    pub fn pow(&self, exp: i32) -> Result<RationalFunction> {
        let base = if exp < 0 {
            self.inv()
                .ok_or_else(|| Error::Pole("negative power of zero".into()))?
        } else {
            self.clone()
        };
        let e = exp.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }
}

fn fmt_assignment(assignment: &BTreeMap<Var, Rational>) -> String {
    assignment
        .iter()
        .map(|(v, q)| format!("{v}={q}"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }
}

impl From<Rational> for RationalFunction {
    fn from(q: Rational) -> Self {
        RationalFunction::constant(q)
    }
}

impl From<i64> for RationalFunction {
    fn from(v: i64) -> Self {
        RationalFunction::constant(Rational::from(v))
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn one() -> Self {
        RationalFunction {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::canonical(self.den.clone(), self.num.clone()))
    }

    fn from_i64(v: i64) -> Self {
        RationalFunction::from(v)
    }
}

impl<'b> Add<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'b RationalFunction) -> RationalFunction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'b> Sub<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'b RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'b> Mul<&'b RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'b RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return RationalFunction {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        // Cross-cancel before multiplying to keep degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RationalFunction::canonical(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

fn needs_parens(p: &Poly) -> bool {
    p.num_terms() > 1 || p.terms().any(|(_, c)| c.is_negative() || !c.is_integer())
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) || self.den.total_degree() > 0 && self.den.num_terms() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
