//! Catalog data and library results against the naive oracle.

mod common;

use std::path::Path;

use extalg::catalog::Catalog;
use extalg::cohomology::{central_extension, cohomology, BilinearForm};
use extalg::identity::Identity;
use extalg::invariants::{derivation_algebra, invariant_vector};
use extalg::scalar::{Rational, Var};

use common::Table;

fn catalog() -> Catalog {
    Catalog::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog")).unwrap()
}

/// Hand-typed tables for every non-parametric entry, and parametric ones
/// at an integer `α`.
fn oracle_table(name: &str, alpha: Option<i64>) -> Option<Table> {
    Some(match name {
        "N2" => common::table(2, &[]),
        "R2s_1" => common::r2s_1(),
        "R3s_1" => common::r3s_1(),
        "R3s_2" => common::r3s_2(),
        "R3s_3" => common::r3s_3(),
        "R3s_4" => common::r3s_4(alpha?),
        "R3_1" => common::r3_1(),
        "N2_alpha" => common::n2(alpha?),
        "N3_alpha" => common::n3(alpha?),
        _ => common::r4(name.strip_prefix("R4_")?.parse().ok()?),
    })
}

fn alpha_int(a: &Option<Rational>) -> Option<i64> {
    a.as_ref()
        .map(|q| q.to_string().parse().expect("integer sample"))
}

#[test]
fn catalog_tables_match_hand_typed_tables() {
    let cat = catalog();
    let mut seen = 0;
    for e in &cat.entries {
        for (alpha, q) in e.instances().unwrap() {
            let t =
                oracle_table(&e.name, alpha_int(&alpha)).unwrap_or_else(|| panic!("{}", e.name));
            assert_eq!(common::from_library(&q), t, "{} at {alpha:?}", e.name);
            seen += 1;
        }
    }
    assert!(seen >= 18);
}

#[test]
fn invariants_agree_with_oracle() {
    let cat = catalog();
    for e in &cat.entries {
        for (alpha, q) in e.instances().unwrap() {
            let t = common::from_library(&q);
            let v = invariant_vector(&q);
            let tag = format!("{} at {alpha:?}", e.name);
            assert_eq!(v.dim_der, common::der_dim(&t), "{tag}");
            assert_eq!(v.dim_ann, common::ann_dim(&t), "{tag}");
            assert_eq!(v.associative, common::is_assoc(&t), "{tag}");
            assert_eq!(v.right_alternative, common::is_ra(&t), "{tag}");
            let dims = common::power_dims(&t);
            assert_eq!(q.power_chain().dims(), dims, "{tag}");
            assert_eq!(v.nil_index, Some(dims.len()), "{tag}");
        }
    }
}

#[test]
fn derivation_dimensions_of_the_four_dimensional_list() {
    let computed: Vec<usize> = (1..=9).map(|i| common::der_dim(&common::r4(i))).collect();
    assert_eq!(computed, vec![6, 5, 4, 5, 5, 4, 4, 3, 4]);
    let cat = catalog();
    for i in 1..=9 {
        let q = cat
            .entry(&format!("R4_{i}"))
            .unwrap()
            .algebra
            .to_rational()
            .unwrap();
        assert_eq!(derivation_algebra(&q).dim, computed[i - 1], "R4_{i}");
    }
}

#[test]
fn cohomology_goldens_agree_with_oracle() {
    let cat = catalog();
    let ra = Identity::right_alternative();
    assert_eq!(cat.cohomology.len(), 6);
    for g in &cat.cohomology {
        let entry = cat.entry(&g.algebra).unwrap();
        let alphas: Vec<Option<Rational>> = if g.alphas.is_empty() {
            vec![None]
        } else {
            g.alphas.iter().cloned().map(Some).collect()
        };
        for alpha in alphas {
            let q = match &alpha {
                Some(a) => entry.at_alpha(a).unwrap(),
                None => entry.algebra.to_rational().unwrap(),
            };
            let t = oracle_table(&g.algebra, alpha_int(&alpha)).unwrap();
            let (z, b) = (common::z2_dim_ra(&t), common::b2_dim(&t));
            let rep = cohomology(&q, &ra).unwrap();
            let tag = format!("{} at {alpha:?}", g.algebra);
            assert_eq!(rep.z2.dim(), z, "{tag}");
            assert_eq!(rep.b2.dim(), b, "{tag}");
            assert_eq!(rep.h2_dim, z - b, "{tag}");
            assert_eq!(g.h2_dim, z - b, "{tag}");
            assert_eq!(g.z2.len(), z, "{tag}");
            assert_eq!(g.b2.len(), b, "{tag}");
        }
    }
}

#[test]
fn stated_h2_dimensions() {
    let dims: Vec<usize> = [
        common::r3s_1(),
        common::r3s_2(),
        common::r3s_3(),
        common::r3s_4(2),
        common::r3s_4(3),
        common::r3s_4(0),
        common::r3_1(),
    ]
    .iter()
    .map(|t| common::z2_dim_ra(t) - common::b2_dim(t))
    .collect();
    assert_eq!(dims, vec![4, 3, 5, 3, 3, 4, 1]);
}

/// `A ⊕ V` with the forms written into the new coordinates.
fn oracle_extension(base: &Table, forms: &[Vec<Rational>]) -> Table {
    let n = base.n;
    let m = n + forms.len();
    let mut out = common::table(m, &[]);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.c[(i * m + j) * m + k] = base.get(i, j, k).clone();
            }
            for (r, f) in forms.iter().enumerate() {
                out.c[(i * m + j) * m + n + r] = f[i * n + j].as_big().clone();
            }
        }
    }
    out
}

#[test]
fn extensions_agree_with_oracle() {
    let cat = catalog();
    let ra = Identity::right_alternative();
    for x in &cat.extensions {
        let base = cat.entry(&x.base).unwrap();
        let symbolic = base.is_parametric()
            || x.cocycles
                .iter()
                .any(|c| c.to_vector().iter().any(|f| f.contains_var(Var::ALPHA)));
        let alpha = x.alpha.clone().or(symbolic.then(|| Rational::from(2)));
        let q = match (&alpha, base.is_parametric()) {
            (Some(a), true) => base.at_alpha(a).unwrap(),
            _ => base.algebra.to_rational().unwrap(),
        };
        let forms: Vec<BilinearForm<Rational>> = x
            .cocycles
            .iter()
            .map(|c| {
                c.try_map(|f| f.evaluate(&alpha.iter().map(|a| (Var::ALPHA, a.clone())).collect()))
                    .unwrap()
            })
            .collect();
        let ext = central_extension(&q, &ra, &forms).unwrap();
        let vectors: Vec<Vec<Rational>> = forms.iter().map(BilinearForm::to_vector).collect();
        let oracle = oracle_extension(&common::from_library(&q), &vectors);
        assert_eq!(common::from_library(&ext), oracle, "{}", x.name);
        assert!(common::is_ra(&oracle), "{}", x.name);
        if x.relabel.is_none() {
            let expected = oracle_table(&x.result, alpha_int(&alpha)).unwrap();
            assert_eq!(oracle, expected, "{}", x.name);
        }
    }
}
