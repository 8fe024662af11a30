//! Multilinear polynomial identities: parsing, evaluation on algebras, and
//! the linear conditions an identity imposes on a 2-cocycle.
//!
//! Identity grammar (whitespace ignored):
//!
//! ```text
//! identity := side ['=' side]
//! side     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [coeff ['*']] word
//! coeff    := integer ['/' integer]
//! word     := atom ['*' atom]
//! atom     := letter | '(' word ')'
//! ```
//!
//! A product of more than two factors must be bracketed, so `x*y*z` is
//! rejected while `(x*y)*z` is accepted.

mod closed_set;
pub mod expr;

use std::collections::BTreeMap;
use std::fmt;

pub use closed_set::{check_closed_set, ClosedSetCondition, LinearTerm};
pub use expr::{parse_rational, parse_scalar};

use crate::algebra::{unit, Algebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, FromRational, Rational};

/// Nonassociative monomial: a binary tree whose leaves index variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Word {
    Var(usize),
    Mul(Box<Word>, Box<Word>),
}

impl Word {
    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            Word::Var(v) => out.push(*v),
            Word::Mul(a, b) => {
                a.leaves(out);
                b.leaves(out);
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Word::Var(_) => 1,
            Word::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    fn render(&self, vars: &[char], top: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Var(v) => write!(f, "{}", vars[*v]),
            Word::Mul(a, b) => {
                if !top {
                    f.write_str("(")?;
                }
                a.render(vars, false, f)?;
                f.write_str("*")?;
                b.render(vars, false, f)?;
                if !top {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }

    fn evaluate<S: Field>(&self, alg: &Algebra<S>, args: &[usize]) -> Vec<S> {
        match self {
            Word::Var(v) => unit(alg.dim(), args[*v]),
            Word::Mul(a, b) => {
                let x = a.evaluate(alg, args);
                let y = b.evaluate(alg, args);
                alg.multiply(&x, &y).expect("vectors of algebra dimension")
            }
        }
    }
}

/// A multilinear identity `Σ coeff · word = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Identity {
    vars: Vec<char>,
    terms: Vec<(Rational, Word)>,
}

/// Outcome of evaluating an identity on every tuple of basis vectors.
#[derive(Clone, PartialEq, Debug)]
pub enum IdentityCheck<S> {
    Holds,
    /// 0-based basis indices, one per variable, and the nonzero value.
    Counterexample {
        args: Vec<usize>,
        value: Vec<S>,
    },
}

impl<S> IdentityCheck<S> {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds)
    }
}

/// Names accepted by [`Identity::named`].
pub const NAMED_IDENTITIES: &[(&str, &str)] = &[
    ("right-alternative", "(x*y)*z - x*(y*z) + (x*z)*y - x*(z*y)"),
    ("associative", "(x*y)*z - x*(y*z)"),
    ("anticommutative", "x*y + y*x"),
    ("commutative", "x*y - y*x"),
    (
        "minus-one-one-cyclic",
        "(x*y)*z - x*(y*z) + (y*z)*x - y*(z*x) + (z*x)*y - z*(x*y)",
    ),
    ("xyz-zero-left", "(x*y)*z"),
    ("xyz-zero-right", "x*(y*z)"),
];

impl Identity {
    /// Parses with the variables inferred from the text (sorted).
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_inner(text, None)
    }

    /// Parses against an explicit variable list; every monomial must use
    /// each declared variable exactly once.
    pub fn parse_with_vars(text: &str, vars: &[char]) -> Result<Self> {
        Self::parse_inner(text, Some(vars))
    }

    pub fn named(name: &str) -> Result<Self> {
        NAMED_IDENTITIES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| Self::parse(text).expect("built-in identities parse"))
            .ok_or_else(|| Error::UnknownName {
                kind: "identity",
                name: name.to_string(),
                available: NAMED_IDENTITIES
                    .iter()
                    .map(|(n, _)| *n)
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    pub fn right_alternative() -> Self {
        Self::named("right-alternative").unwrap()
    }

    pub fn associative() -> Self {
        Self::named("associative").unwrap()
    }

    fn parse_inner(text: &str, declared: Option<&[char]>) -> Result<Self> {
        let mut p = WordParser {
            src: text.as_bytes(),
            pos: 0,
        };
        let mut raw = p.side()?;
        if p.eat(b'=') {
            let rhs = p.side()?;
            raw.extend(rhs.into_iter().map(|(c, w)| (-c, w)));
        }
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "unexpected trailing input"));
        }

        let vars: Vec<char> = match declared {
            Some(v) => v.to_vec(),
            None => {
                let mut v: Vec<char> = raw.iter().flat_map(|(_, w)| w.letters()).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        };

        let mut merged: BTreeMap<Word, Rational> = BTreeMap::new();
        for (coeff, word) in raw {
            let word = word.index(&vars).ok_or_else(|| Error::Multilinearity {
                monomial: word.to_string(),
                vars: format!("{vars:?}"),
            })?;
            let mut leaves = Vec::new();
            word.leaves(&mut leaves);
            leaves.sort_unstable();
            if leaves.iter().copied().ne(0..vars.len()) {
                let mut shown = String::new();
                let _ = fmt::write(&mut shown, format_args!("{}", DisplayWord(&word, &vars)));
                return Err(Error::Multilinearity {
                    monomial: shown,
                    vars: format!("{vars:?}"),
                });
            }
            let entry = merged.entry(word).or_insert_with(Rational::zero);
            *entry = entry.clone() + coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (c, w))
            .collect();
        Ok(Identity { vars, terms })
    }

    pub fn vars(&self) -> &[char] {
        &self.vars
    }

    pub fn terms(&self) -> &[(Rational, Word)] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.vars.len()
    }

    /// Evaluates the identity on every tuple of basis vectors. By
    /// multilinearity this decides whether it holds on the whole algebra.
    pub fn check<S: FromRational>(&self, alg: &Algebra<S>) -> IdentityCheck<S> {
        let n = alg.dim();
        let d = self.degree();
        if self.terms.is_empty() || n == 0 {
            return IdentityCheck::Holds;
        }
        let coeffs: Vec<S> = self
            .terms
            .iter()
            .map(|(c, _)| S::from_rational(c))
            .collect();
        let mut args = vec![0usize; d];
        loop {
            let mut value = vec![S::zero(); n];
            for ((_, word), coeff) in self.terms.iter().zip(&coeffs) {
                for (v, w) in value.iter_mut().zip(word.evaluate(alg, &args)) {
                    if !w.is_zero() {
                        *v = v.clone() + coeff.clone() * &w;
                    }
                }
            }
            if value.iter().any(|v| !v.is_zero()) {
                return IdentityCheck::Counterexample { args, value };
            }
            if !advance(&mut args, n) {
                return IdentityCheck::Holds;
            }
        }
    }

    /// Linear system on the `n²` entries `θ_{ij}` (index `i·n + j`) whose
    /// kernel is the space of cocycles with values in a line: every bracket
    /// `(uv)w` becomes `θ(uv, w)` and every `u(vw)` becomes `θ(u, vw)`.
    pub fn cocycle_constraints<S: FromRational>(&self, alg: &Algebra<S>) -> Result<Matrix<S>> {
        if self.degree() != 3 {
            return Err(Error::Unsupported(format!(
                "cocycle constraints for an identity of degree {}",
                self.degree()
            )));
        }
        let n = alg.dim();
        let mut rows = Vec::with_capacity(n * n * n);
        let mut args = vec![0usize; 3];
        loop {
            let mut row = vec![S::zero(); n * n];
            for (coeff, word) in &self.terms {
                let coeff = S::from_rational(coeff);
                let Word::Mul(left, right) = word else {
                    unreachable!("degree-3 words are products");
                };
                match (left.as_ref(), right.as_ref()) {
                    (Word::Mul(u, v), Word::Var(w)) => {
                        let (u, v, w) = (args[u.var()], args[v.var()], args[*w]);
                        for k in 0..n {
                            let c = alg.constant(u, v, k);
                            if !c.is_zero() {
                                let slot = &mut row[k * n + w];
                                *slot = slot.clone() + coeff.clone() * c;
                            }
                        }
                    }
                    (Word::Var(u), Word::Mul(v, w)) => {
                        let (u, v, w) = (args[*u], args[v.var()], args[w.var()]);
                        for k in 0..n {
                            let c = alg.constant(v, w, k);
                            if !c.is_zero() {
                                let slot = &mut row[u * n + k];
                                *slot = slot.clone() + coeff.clone() * c;
                            }
                        }
                    }
                    _ => unreachable!("multilinear degree-3 words have one of two shapes"),
                }
            }
            rows.push(row);
            if !advance(&mut args, n) {
                break;
            }
        }
        Matrix::from_rows(rows, n * n)
    }
}

impl Word {
    fn var(&self) -> usize {
        match self {
            Word::Var(v) => *v,
            Word::Mul(..) => panic!("expected a variable"),
        }
    }
}

/// Odometer over `{0..n}^len`; returns false after the last tuple.
fn advance(args: &mut [usize], n: usize) -> bool {
    for a in args.iter_mut().rev() {
        *a += 1;
        if *a < n {
            return true;
        }
        *a = 0;
    }
    false
}

struct DisplayWord<'a>(&'a Word, &'a [char]);

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.render(self.1, true, f)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, w)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (i, c.is_negative()) {
                (0, true) | (_, true) => f.write_str(if i == 0 { "-" } else { " - " })?,
                (0, false) => {}
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            w.render(&self.vars, false, f)?;
        }
        Ok(())
    }
}

/// Word over letters, before variables are indexed.
#[derive(Clone, Debug)]
enum RawWord {
    Letter(char),
    Mul(Box<RawWord>, Box<RawWord>),
}

impl RawWord {
    fn letters(&self) -> Vec<char> {
        match self {
            RawWord::Letter(c) => vec![*c],
            RawWord::Mul(a, b) => {
                let mut v = a.letters();
                v.extend(b.letters());
                v
            }
        }
    }

    fn index(&self, vars: &[char]) -> Option<Word> {
        Some(match self {
            RawWord::Letter(c) => Word::Var(vars.iter().position(|v| v == c)?),
            RawWord::Mul(a, b) => Word::Mul(Box::new(a.index(vars)?), Box::new(b.index(vars)?)),
        })
    }
}

impl fmt::Display for RawWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawWord::Letter(c) => write!(f, "{c}"),
            RawWord::Mul(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn side(&mut self) -> Result<Vec<(Rational, RawWord)>> {
        let mut terms = Vec::new();
        let mut sign = if self.eat(b'-') {
            -Rational::one()
        } else {
            self.eat(b'+');
            Rational::one()
        };
        loop {
            let coeff = self.coefficient()?;
            let word = self.word()?;
            terms.push((sign * coeff, word));
            sign = if self.eat(b'+') {
                Rational::one()
            } else if self.eat(b'-') {
                -Rational::one()
            } else {
                return Ok(terms);
            };
        }
    }

    fn integer(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let at = self.pos;
        let Some(num) = self.integer() else {
            return Ok(Rational::one());
        };
        let mut text = num;
        if self.eat(b'/') {
            let den = self
                .integer()
                .ok_or_else(|| Error::parse(self.pos, "expected a denominator"))?;
            text = format!("{text}/{den}");
        }
        let c: Rational = text.parse().map_err(|e| Error::parse(at, e))?;
        self.eat(b'*');
        Ok(c)
    }

    fn word(&mut self) -> Result<RawWord> {
        let left = self.atom()?;
        if self.eat(b'*') {
            let right = self.atom()?;
            if self.peek() == Some(b'*') {
                return Err(Error::parse(
                    self.pos,
                    "products of more than two factors need parentheses",
                ));
            }
            return Ok(RawWord::Mul(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn atom(&mut self) -> Result<RawWord> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(b')') {
                    return Err(Error::parse(self.pos, "expected `)`"));
                }
                Ok(w)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                if self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric())
                {
                    return Err(Error::parse(self.pos, "variables are single letters"));
                }
                Ok(RawWord::Letter(c as char))
            }
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected `{}`", c as char),
            )),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::QAlgebra;

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

    fn r4_5() -> QAlgebra {
        alg("R4_5", 4, &[(1, 2, 3, 1), (1, 3, 4, 1), (2, 1, 3, -1)])
    }

    #[test]
    fn parses_right_alternative() {
        let i = Identity::parse("(x*y)*z - x*(y*z) + (x*z)*y - x*(z*y)").unwrap();
        assert_eq!(i.terms().len(), 4);
        assert_eq!(i.vars(), &['x', 'y', 'z']);
        let from_equation = Identity::parse("(x*y)*z - x*(y*z) = -(x*z)*y + x*(z*y)").unwrap();
        assert_eq!(i, from_equation);
    }

    #[test]
    fn parses_associativity() {
        let i = Identity::parse("(x*y)*z - x*(y*z)").unwrap();
        assert_eq!(i.terms().len(), 2);
        assert_eq!(i, Identity::associative());
    }

    #[test]
    fn multilinearity_errors() {
        assert!(matches!(
            Identity::parse_with_vars("x*y", &['x', 'y', 'z']),
            Err(Error::Multilinearity { .. })
        ));
        assert!(matches!(
            Identity::parse("(x*y)*y"),
            Err(Error::Multilinearity { .. })
        ));
        assert!(matches!(Identity::parse("x*y*z"), Err(Error::Parse { .. })));
        assert!(matches!(Identity::parse("(x*y"), Err(Error::Parse { .. })));
    }

    #[test]
    fn like_terms_merge() {
        let i = Identity::parse("(x*y)*z + 2*(x*y)*z - 3(x*y)*z").unwrap();
        assert!(i.terms().is_empty());
        assert!(i.check(&r4_5()).holds());
        let j = Identity::parse("1/2*x*y + 1/2 y*x").unwrap();
        assert_eq!(j.terms().len(), 2);
    }

    #[test]
    fn r4_5_checks() {
        assert!(Identity::right_alternative().check(&r4_5()).holds());
        match Identity::associative().check(&r4_5()) {
            IdentityCheck::Counterexample { args, value } => {
                assert_eq!(args, vec![0, 0, 1]);
                assert_eq!(value, vec![q(0), q(0), q(0), q(-1)]);
            }
            IdentityCheck::Holds => panic!("R4_5 is not associative"),
        }
    }

    #[test]
    fn zero_algebra_satisfies_everything() {
        let z = Algebra::<Rational>::zero("zero3", 3);
        for (name, _) in NAMED_IDENTITIES {
            assert!(Identity::named(name).unwrap().check(&z).holds(), "{name}");
        }
        assert!(Identity::named("jordan").is_err());
    }

    #[test]
    fn zero_algebra_has_no_cocycle_conditions() {
        let z = Algebra::<Rational>::zero("zero2", 2);
        let m = Identity::right_alternative()
            .cocycle_constraints(&z)
            .unwrap();
        assert!(m.is_zero());
        assert_eq!(m.kernel().dim(), 4);
        assert!(Identity::named("commutative")
            .unwrap()
            .cocycle_constraints(&z)
            .is_err());
    }

    #[test]
    fn display_is_parseable() {
        let i = Identity::right_alternative();
        assert_eq!(Identity::parse(&i.to_string()).unwrap(), i);
    }
}
