use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, Rational};

static VAR_NAMES: LazyLock<RwLock<Vec<String>>> =
    LazyLock::new(|| RwLock::new(vec!["t".to_string(), "a".to_string()]));

/// Interned polynomial variable.
///
/// `t` (the degeneration parameter) and `a` (the family parameter α) are
/// interned first, so they come first in the monomial order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u16);

impl Var {
    pub const T: Var = Var(0);
    pub const ALPHA: Var = Var(1);

    pub fn named(name: &str) -> Var {
        if let Some(i) = VAR_NAMES.read().unwrap().iter().position(|n| n == name) {
            return Var(i as u16);
        }
        let mut names = VAR_NAMES.write().unwrap();
        if let Some(i) = names.iter().position(|n| n == name) {
            return Var(i as u16);
        }
        names.push(name.to_string());
        Var((names.len() - 1) as u16)
    }

    pub fn name(self) -> String {
        VAR_NAMES.read().unwrap()[self.0 as usize].clone()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Power product, stored as `(variable, exponent)` pairs sorted by variable
/// with no zero exponents. Ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    // The monomial carrying the earlier variable is larger.
                    return if a.0 < b.0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Rational::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map_or(0, |(m, _)| m.degree())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Scale so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().unwrap()),
            _ => self.clone(),
        }
    }

    /// Substitutes values for some variables.
    pub fn substitute(&self, assignment: &BTreeMap<Var, Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, e) in &m.0 {
                match assignment.get(&v) {
                    Some(val) => coeff = coeff * val.pow(e as i32).unwrap(),
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }

    /// Coefficients as a polynomial in `v`: entry `d` is the coefficient of
    /// `v^d`, itself free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    fn leading_in(&self, v: Var) -> Poly {
        self.coefficients_in(v).pop().unwrap_or_default()
    }

    /// Multivariate division by leading terms; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let (lm, lc) = divisor.leading().expect("division by zero polynomial");
        let lc_inv = lc.inv().unwrap();
        let mut quotient = Poly::zero();
        let mut remainder = Poly::zero();
        let mut rest = self.clone();
        while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
            match m.div(lm) {
                Some(q) => {
                    let coeff = c * &lc_inv;
                    rest = &rest - &divisor.mul_term(&q, &coeff);
                    quotient.add_term(q, coeff);
                }
                None => {
                    rest.terms.remove(&m);
                    remainder.add_term(m, c);
                }
            }
        }
        (quotient, remainder)
    }

    /// Quotient of an exact division, or `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if let Some(c) = divisor.as_constant() {
            return c.inv().map(|inv| self.scale(&inv));
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self == other {
            return self.monic();
        }
        let main = *self
            .vars()
            .union(&other.vars())
            .next()
            .expect("non-constant polynomial has a variable");
        let ca = self.content_in(main);
        let cb = other.content_in(main);
        let content = ca.gcd(&cb);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        let g = primitive_prs(pa, pb, main);
        (&content * &g).monic()
    }

    /// GCD of the coefficients with respect to `v`.
    fn content_in(&self, v: Var) -> Poly {
        self.coefficients_in(v)
            .into_iter()
            .filter(|c| !c.is_zero())
            .fold(Poly::zero(), |acc, c| {
                if acc.is_constant() && !acc.is_zero() {
                    acc
                } else {
                    acc.gcd(&c)
                }
            })
    }

    fn primitive_part_in(&self, v: Var) -> Poly {
        let c = self.content_in(v);
        self.div_exact(&c)
            .expect("content divides")
            .integer_primitive()
    }

    /// The rational multiple with coprime integer coefficients and a
    /// positive leading coefficient. Keeps remainder sequences from
    /// growing huge numerators and denominators.
    fn integer_primitive(&self) -> Poly {
        let Some((_, lead)) = self.leading() else {
            return Poly::zero();
        };
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self.terms.values().fold(BigInt::zero(), |acc, c| {
            acc.gcd(&(c.numer() * &den / c.denom()))
        });
        let mut scale = Rational::new(den, num).expect("nonzero polynomial");
        if lead.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Evaluate at a full assignment.
    pub fn evaluate(&self, assignment: &BTreeMap<Var, Rational>) -> Option<Rational> {
        self.substitute(assignment).as_constant()
    }
}

/// Euclid on primitive parts, treating `a` and `b` as univariate in `v`.
fn primitive_prs(a: Poly, b: Poly, v: Var) -> Poly {
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    if b.degree_in(v) == 0 {
        // b is free of v and primitive, so it is a unit.
        return Poly::one();
    }
    a = a.integer_primitive();
    b = b.integer_primitive();
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b.primitive_part_in(v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one();
        }
        a = b;
        b = r.primitive_part_in(v);
    }
}

fn pseudo_remainder(a: &Poly, b: &Poly, v: Var) -> Poly {
    let d = b.degree_in(v);
    let lc_b = b.leading_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= d {
        let shift = r.degree_in(v) - d;
        let lc_r = r.leading_in(v);
        let shifted = &(&lc_r * &Poly::term(Rational::one(), Monomial::var(v, shift))) * b;
        r = &(&lc_b * &r) - &shifted;
    }
    r
}

impl<'b> Add<&'b Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &'b Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'b> Sub<&'b Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &'b Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str("-")?,
                (_, false) => f.write_str("+")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Poly {
        Poly::var(Var::T)
    }

    fn a() -> Poly {
        Poly::var(Var::ALPHA)
    }

    fn c(v: i64) -> Poly {
        Poly::constant(Rational::from(v))
    }

    #[test]
    fn graded_lex_order() {
        let t2 = Monomial::var(Var::T, 2);
        let ta = Monomial::var(Var::T, 1).mul(&Monomial::var(Var::ALPHA, 1));
        let a2 = Monomial::var(Var::ALPHA, 2);
        let t3 = Monomial::var(Var::T, 3);
        assert!(t2 > ta && ta > a2);
        assert!(t3 > t2);
        assert!(Monomial::var(Var::ALPHA, 1) > Monomial::one());
    }

    #[test]
    fn exact_division() {
        let p = &(&t() - &c(1)) * &(&t() + &a());
        let q = p.div_exact(&(&t() + &a())).unwrap();
        assert_eq!(q, &t() - &c(1));
        assert!(p.div_exact(&(&t() + &c(2))).is_none());
    }

    #[test]
    fn bivariate_gcd() {
        let f = &(&t() - &c(1)) * &(&t() - &a());
        let g = &(&t() - &a()).pow(2) * &(&a() + &c(3));
        assert_eq!(f.gcd(&g), &t() - &a());
        assert_eq!(c(6).gcd(&t()), Poly::one());
        assert_eq!(t().gcd(&a()), Poly::one());
    }

    #[test]
    fn gcd_with_multivariate_content() {
        let x = Poly::var(Var::named("x"));
        let f = &(&a() * &t()) * &(&x + &c(1));
        let g = &(&a() * &a()) * &(&x + &c(1));
        assert_eq!(f.gcd(&g), (&a() * &(&x + &c(1))).monic());
    }

    #[test]
    fn display() {
        let p = &(&t() * &t()) - &(&c(3) * &a());
        assert_eq!(p.to_string(), "t^2-3*a");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
