//! Property laws as plain functions, so both the property suite and the
//! acceptance run can drive them. Each runs [`CASES`] random cases.

#![allow(dead_code)]

use std::path::Path;
use std::sync::LazyLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use extalg::algebra::QAlgebra;
use extalg::catalog::Catalog;
use extalg::cohomology::{
    act_on_cocycle, central_extension, coboundaries, cocycle_annihilator, cocycles, is_cocycle,
    verify_automorphism, BilinearForm,
};
use extalg::identity::{check_closed_set, Identity};
use extalg::invariants::invariant_vector;
use extalg::linalg::{Matrix, Subspace};
use extalg::scalar::{Field, Poly, Rational, RationalFunction, Var};

pub const CASES: u32 = 200;

static CATALOG: LazyLock<Catalog> =
    LazyLock::new(|| Catalog::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog")).unwrap());

/// Every rational instance in the catalog.
static INSTANCES: LazyLock<Vec<(String, QAlgebra)>> = LazyLock::new(|| {
    CATALOG
        .entries
        .iter()
        .flat_map(|e| {
            e.instances()
                .unwrap()
                .into_iter()
                .map(move |(a, q)| (format!("{}({a:?})", e.name), q))
        })
        .collect()
});

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    TestRunner::new(Config::with_cases(CASES))
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn small() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(k, d)| Rational::new(k, d).unwrap())
}

fn nonzero() -> impl Strategy<Value = Rational> {
    small().prop_filter("nonzero", |q| !q.is_zero())
}

fn square(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec(small(), n * n)
        .prop_map(move |v| Matrix::new(n, n, v).unwrap())
        .prop_filter("invertible", Matrix::is_invertible)
}

/// A catalog instance moved to a random basis: still right alternative.
fn algebra() -> impl Strategy<Value = (String, QAlgebra)> {
    (0..INSTANCES.len()).prop_flat_map(|i| {
        let (name, q) = INSTANCES[i].clone();
        square(q.dim()).prop_map(move |p| (name.clone(), q.change_basis(&p).unwrap()))
    })
}

fn coefficients() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small(), 16)
}

/// Combination of the basis of `space` with the leading `coeffs`.
fn combine(space: &Subspace<Rational>, coeffs: &[Rational]) -> BilinearForm<Rational> {
    let width = space.ambient_dim();
    let n = (1..=width).find(|n| n * n == width).unwrap();
    let mut v = vec![Rational::zero(); width];
    for (row, c) in space.basis_vectors().zip(coeffs) {
        for (x, y) in v.iter_mut().zip(row) {
            *x = x.clone() + c.clone() * y;
        }
    }
    BilinearForm::from_vector(n, &v).unwrap()
}

fn ra() -> Identity {
    Identity::right_alternative()
}

pub fn coboundaries_are_cocycles() -> Result<(), String> {
    run(algebra(), |(name, a)| {
        let z2 = cocycles(&a, &ra()).unwrap();
        prop_assert!(z2.contains_subspace(&coboundaries(&a)).unwrap(), "{}", name);
        Ok(())
    })
}

pub fn cocycle_iff_extension_is_right_alternative() -> Result<(), String> {
    let raw = proptest::collection::vec(small(), 16);
    run(
        (algebra(), any::<bool>(), coefficients(), raw),
        |((name, a), pick, coeffs, raw)| {
            let n = a.dim();
            let theta = if pick {
                combine(&cocycles(&a, &ra()).unwrap(), &coeffs)
            } else {
                BilinearForm::from_vector(n, &raw[..n * n]).unwrap()
            };
            let cocycle = is_cocycle(&a, &ra(), &theta).unwrap();
            let mut ext = a.direct_sum(1);
            for i in 0..n {
                for j in 0..n {
                    ext.set_constant(i, j, n, theta.entry(i, j).clone());
                }
            }
            prop_assert_eq!(cocycle, ra().check(&ext).holds(), "{}", name);
            prop_assert_eq!(
                cocycle,
                super::is_ra(&super::from_library(&ext)),
                "{}",
                name
            );
            if pick {
                prop_assert!(cocycle, "{}", name);
            }
            Ok(())
        },
    )
}

pub fn extension_annihilator_splits() -> Result<(), String> {
    run((algebra(), coefficients()), |((name, a), coeffs)| {
        let n = a.dim();
        let theta = combine(&cocycles(&a, &ra()).unwrap(), &coeffs);
        let ext = central_extension(&a, &ra(), std::slice::from_ref(&theta)).unwrap();
        let inner = cocycle_annihilator(&theta)
            .intersection(&a.annihilator())
            .unwrap();
        let mut expected: Vec<Vec<Rational>> = inner
            .basis_vectors()
            .map(|v| {
                let mut w = v.to_vec();
                w.push(Rational::zero());
                w
            })
            .collect();
        let mut new = vec![Rational::zero(); n + 1];
        new[n] = Rational::one();
        expected.push(new);
        prop_assert_eq!(
            ext.annihilator(),
            Subspace::span(n + 1, expected).unwrap(),
            "{}",
            name
        );
        Ok(())
    })
}

pub fn automorphisms_preserve_cocycles_and_coboundaries() -> Result<(), String> {
    let records = CATALOG.automorphisms.len();
    if records == 0 {
        return Err("no automorphism records in the catalog".into());
    }
    let params = proptest::collection::vec(nonzero(), 8);
    run(
        (0..records, params, coefficients()),
        |(record, params, coeffs)| {
            let rec = &CATALOG.automorphisms[record];
            let entry = CATALOG.entry(&rec.algebra).unwrap();
            let a = match &rec.alpha {
                Some(alpha) => entry.at_alpha(alpha).unwrap(),
                None => entry.algebra.to_rational().unwrap(),
            };
            let k = rec.shape.params().len();
            let phi = rec.shape.specialize(&params[..k]).unwrap();
            prop_assume!(phi.is_some());
            let phi = phi.unwrap();
            prop_assert!(verify_automorphism(&a, &phi), "{}", rec.name);
            let theta = combine(&cocycles(&a, &ra()).unwrap(), &coeffs);
            let moved = act_on_cocycle(&phi, &theta).unwrap();
            prop_assert!(is_cocycle(&a, &ra(), &moved).unwrap(), "{}", rec.name);
            let b2 = coboundaries(&a);
            for v in b2.basis_vectors() {
                let b = BilinearForm::from_vector(a.dim(), v).unwrap();
                let moved = act_on_cocycle(&phi, &b).unwrap();
                prop_assert!(b2.contains(&moved.to_vector()).unwrap(), "{}", rec.name);
            }
            Ok(())
        },
    )
}

pub fn invariant_vector_is_basis_free() -> Result<(), String> {
    let entries = proptest::collection::vec(-2i64..=2, 6);
    run(
        (0..INSTANCES.len(), entries.clone(), entries, nonzero()),
        |(i, upper, lower, scale)| {
            let (name, a) = &INSTANCES[i];
            let n = a.dim();
            // Unipotent upper times unipotent lower, with the first row
            // scaled: small entries and always invertible.
            let (mut u, mut l) = (upper.into_iter(), lower.into_iter());
            let mut up = Vec::with_capacity(n * n);
            let mut low = Vec::with_capacity(n * n);
            for r in 0..n {
                for c in 0..n {
                    up.push(if c > r {
                        Rational::from(u.next().unwrap())
                    } else if c == r && r == 0 {
                        scale.clone()
                    } else if c == r {
                        Rational::one()
                    } else {
                        Rational::zero()
                    });
                    low.push(if c < r {
                        Rational::from(l.next().unwrap())
                    } else if c == r {
                        Rational::one()
                    } else {
                        Rational::zero()
                    });
                }
            }
            let p = Matrix::new(n, n, up)
                .unwrap()
                .mul(&Matrix::new(n, n, low).unwrap())
                .unwrap();
            let b = a.change_basis(&p).unwrap();
            prop_assert_eq!(invariant_vector(a), invariant_vector(&b), "{}", name);
            Ok(())
        },
    )
}

/// Upper triangular moves: `E_i` is a combination of `e_i, …, e_n`.
pub fn borel_moves_keep_the_closed_set() -> Result<(), String> {
    let rec = CATALOG.closed_set("R4_8_set").map_err(|e| e.to_string())?;
    let a = CATALOG
        .entry("R4_8")
        .unwrap()
        .algebra
        .to_rational()
        .unwrap();
    let diag = proptest::collection::vec(nonzero(), 4);
    let upper = proptest::collection::vec(small(), 6);
    run((diag, upper), |(diag, upper)| {
        let mut entries = vec![Rational::zero(); 16];
        let mut it = upper.into_iter();
        for r in 0..4 {
            entries[r * 4 + r] = diag[r].clone();
            for c in r + 1..4 {
                entries[r * 4 + c] = it.next().unwrap();
            }
        }
        let moved = a
            .change_basis(&Matrix::new(4, 4, entries).unwrap())
            .unwrap();
        prop_assert!(check_closed_set(&moved, &rec.conditions).unwrap());
        Ok(())
    })
}

pub fn rational_field_laws() -> Result<(), String> {
    run((small(), small(), small()), |(a, b, c)| {
        prop_assert_eq!(
            (a.clone() + b.clone()) + c.clone(),
            a.clone() + (b.clone() + c.clone())
        );
        prop_assert_eq!(
            (a.clone() * b.clone()) * c.clone(),
            a.clone() * (b.clone() * c.clone())
        );
        prop_assert_eq!(
            a.clone() * (b.clone() + c.clone()),
            a.clone() * b.clone() + a.clone() * c.clone()
        );
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() - a.clone(), Rational::zero());
        match a.inv() {
            Some(inv) => prop_assert_eq!(a * inv, Rational::one()),
            None => prop_assert!(a.is_zero()),
        }
        Ok(())
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((small(), 0u32..3, 0u32..2), 0..4).prop_map(|terms| {
        let t = Poly::var(Var::T);
        let a = Poly::var(Var::ALPHA);
        terms.into_iter().fold(Poly::zero(), |acc, (c, i, j)| {
            &acc + &(&t.pow(i) * &a.pow(j)).scale(&c)
        })
    })
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(), poly().prop_filter("nonzero", |p| !p.is_zero()))
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

pub fn rational_function_field_laws() -> Result<(), String> {
    run(
        (ratfunc(), ratfunc(), ratfunc(), nonzero(), nonzero()),
        |(a, b, c, t, x)| {
            prop_assert_eq!(
                (a.clone() + b.clone()) + c.clone(),
                a.clone() + (b.clone() + c.clone())
            );
            prop_assert_eq!(
                (a.clone() * b.clone()) * c.clone(),
                a.clone() * (b.clone() * c.clone())
            );
            prop_assert_eq!(
                a.clone() * (b.clone() + c.clone()),
                a.clone() * b.clone() + a.clone() * c.clone()
            );
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            if let Some(inv) = a.inv() {
                prop_assert_eq!(a.clone() * inv, RationalFunction::one());
            }
            // Evaluation is a ring map wherever everything is defined.
            let at = [(Var::T, t), (Var::ALPHA, x)].into_iter().collect();
            if let (Ok(ea), Ok(eb)) = (a.evaluate(&at), b.evaluate(&at)) {
                prop_assert_eq!(
                    (a.clone() * b.clone()).evaluate(&at).unwrap(),
                    ea.clone() * eb.clone()
                );
                prop_assert_eq!((a + b).evaluate(&at).unwrap(), ea + eb);
            }
            Ok(())
        },
    )
}

pub type Law = fn() -> Result<(), String>;

/// The cocycle-algebra laws, by name.
pub const COCYCLE_LAWS: [(&str, Law); 5] = [
    ("B2 in Z2", coboundaries_are_cocycles),
    (
        "cocycle iff extension right alternative",
        cocycle_iff_extension_is_right_alternative,
    ),
    ("Ann of extension splits", extension_annihilator_splits),
    (
        "automorphisms preserve Z2 and B2",
        automorphisms_preserve_cocycles_and_coboundaries,
    ),
    (
        "invariant vector is basis free",
        invariant_vector_is_basis_free,
    ),
];
