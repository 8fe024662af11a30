//! The machine-readable catalog: algebras, cohomology tables, extension
//! records, automorphism shapes, degeneration rows and closed sets.
//!
//! Layout under the catalog root, each directory read in file-name order:
//!
//! ```text
//! algebras/*.json  cocycles/*.json  automorphisms/*.json
//! degenerations/*.json  closed_sets/*.json
//! ```
//!
//! See `docs/format.md` for the schema.

mod files;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use crate::algebra::{Algebra, QAlgebra, SymAlgebra};
use crate::cohomology::{AutomorphismShape, BilinearForm};
use crate::degeneration::DegenerationRow;
use crate::error::{Error, Result};
use crate::identity::ClosedSetCondition;
use crate::scalar::{Field, Rational, RationalFunction, Var};

pub use files::ENV_CATALOG;

pub const KNOWN_TAGS: &[&str] = &[
    "nilpotent",
    "pure",
    "non-pure",
    "associative",
    "non-associative",
    "commutative",
    "non-commutative",
    "one-generated",
    "right-alternative",
    "classified",
];

#[derive(Clone, PartialEq, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: SymAlgebra,
    pub tags: BTreeSet<String>,
    pub provenance: String,
    pub excluded_alpha: Vec<Rational>,
    pub alpha_samples: Vec<Rational>,
    /// Expected dimension of the derivation algebra, when tabulated.
    pub der_dim: Option<usize>,
}

impl CatalogEntry {
    pub fn from_rational(name: &str, algebra: QAlgebra, provenance: &str) -> Self {
        CatalogEntry {
            name: name.to_string(),
            algebra: algebra.to_symbolic().with_name(name),
            tags: BTreeSet::new(),
            provenance: provenance.to_string(),
            excluded_alpha: Vec::new(),
            alpha_samples: Vec::new(),
            der_dim: None,
        }
    }

    pub fn is_parametric(&self) -> bool {
        self.algebra.parameters().contains(&Var::ALPHA)
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.contains(tag)
    }

    /// Rational instances: the algebra itself, or one per admissible sample
    /// of `α`.
    pub fn instances(&self) -> Result<Vec<(Option<Rational>, QAlgebra)>> {
        if !self.is_parametric() {
            let q = self.algebra.to_rational().ok_or_else(|| {
                Error::Malformed(format!("{} has symbolic constants other than α", self.name))
            })?;
            return Ok(vec![(None, q)]);
        }
        self.alpha_samples
            .iter()
            .filter(|a| !self.excluded_alpha.contains(a))
            .map(|a| Ok((Some(a.clone()), self.at_alpha(a)?)))
            .collect()
    }

    pub fn at_alpha(&self, alpha: &Rational) -> Result<QAlgebra> {
        if self.excluded_alpha.contains(alpha) {
            return Err(Error::Precondition(format!(
                "α = {alpha} is excluded for {}",
                self.name
            )));
        }
        self.algebra
            .specialize_alpha(alpha)?
            .to_rational()
            .ok_or_else(|| Error::Malformed(format!("{} has symbols other than α", self.name)))
    }
}

/// `e_i e_j = e_{i+j}` for `i + j ≤ n`.
pub fn generate_rn(n: usize) -> QAlgebra {
    let mut alg = Algebra::zero(format!("onegen{n}"), n);
    for i in 1..=n {
        for j in 1..=n - i {
            alg.set_constant(i - 1, j - 1, i + j - 1, Rational::one());
        }
    }
    alg
}

#[derive(Clone, PartialEq, Debug)]
pub struct ExtensionRecord {
    pub name: String,
    pub base: String,
    pub cocycles: Vec<BilinearForm<RationalFunction>>,
    pub result: String,
    /// Value of `α` for parametric base and result.
    pub alpha: Option<Rational>,
    /// `relabel[i]` is the 1-based index of the basis vector of the
    /// extension that becomes `e_{i+1}`.
    pub relabel: Option<Vec<usize>>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct CohomologyGolden {
    pub algebra: String,
    /// Values of `α` at which the golden applies; empty when the algebra
    /// has no parameter.
    pub alphas: Vec<Rational>,
    pub z2: Vec<BilinearForm<RationalFunction>>,
    pub b2: Vec<BilinearForm<RationalFunction>>,
    pub h2: Vec<BilinearForm<RationalFunction>>,
    pub h2_dim: usize,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Root {
    pub name: String,
    pub power: u32,
    /// Expression in `a1, a2, …` whose `power`-th root is `value`.
    pub of: RationalFunction,
    pub value: Rational,
}

/// A stated parameter choice moving `Σ αᵢ∇ᵢ` to a representative.
#[derive(Clone, PartialEq, Debug)]
pub struct Reduction {
    pub label: String,
    pub alphas: Vec<Rational>,
    pub roots: Vec<Root>,
    /// Parameter expressions in the `aᵢ` and root names, in shape order.
    pub params: Vec<RationalFunction>,
    pub representative: BilinearForm<Rational>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Expansion {
    pub cocycle: BilinearForm<Rational>,
    pub stated: BilinearForm<RationalFunction>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct AutomorphismRecord {
    pub name: String,
    pub algebra: String,
    pub alpha: Option<Rational>,
    pub shape: AutomorphismShape,
    pub nablas: Vec<BilinearForm<Rational>>,
    pub action: Vec<RationalFunction>,
    pub expansions: Vec<Expansion>,
    pub reductions: Vec<Reduction>,
    pub orbits: Vec<(String, BilinearForm<Rational>)>,
    pub orbit_samples: usize,
}

#[derive(Clone, PartialEq, Debug)]
pub struct ClosedSetRecord {
    pub name: String,
    pub conditions: Vec<ClosedSetCondition>,
    pub holds_for: Vec<String>,
    pub excludes: Vec<String>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, PartialEq, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub extensions: Vec<ExtensionRecord>,
    pub cohomology: Vec<CohomologyGolden>,
    pub automorphisms: Vec<AutomorphismRecord>,
    pub degenerations: Vec<DegenerationRow>,
    pub closed_sets: Vec<ClosedSetRecord>,
}

impl Catalog {
    /// Reads a catalog directory, or a single algebras file.
    pub fn load(path: impl AsRef<Path>) -> Result<Catalog> {
        files::load(path.as_ref())
    }

    /// The catalog under `$EXTALG_CATALOG`, else the one shipped with the
    /// crate.
    pub fn load_default() -> Result<Catalog> {
        Self::load(default_catalog_dir())
    }

    /// Resolves a catalog name, or a generated `zero<n>` / `onegen<n>`.
    pub fn entry(&self, name: &str) -> Result<CatalogEntry> {
        if let Some(e) = self.entries.iter().find(|e| e.name == name) {
            return Ok(e.clone());
        }
        let generated = |prefix: &str| {
            name.strip_prefix(prefix)
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|n| (1..=16).contains(n))
        };
        if let Some(n) = generated("zero") {
            return Ok(CatalogEntry::from_rational(
                name,
                Algebra::zero(name, n),
                "algebra with zero product",
            ));
        }
        if let Some(n) = generated("onegen") {
            return Ok(CatalogEntry::from_rational(
                name,
                generate_rn(n),
                "one-generated algebra e_i e_j = e_{i+j}",
            ));
        }
        Err(Error::UnknownName {
            kind: "algebra",
            name: name.to_string(),
            available: self.available_names(),
        })
    }

    pub fn algebra(&self, name: &str) -> Result<SymAlgebra> {
        Ok(self.entry(name)?.algebra)
    }

    fn available_names(&self) -> String {
        let mut names: Vec<String> = self.entries.iter().map(|e| e.name.clone()).collect();
        names.push("zero<n>".into());
        names.push("onegen<n>".into());
        names.join(", ")
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn degeneration(&self, name: &str) -> Result<&DegenerationRow> {
        self.degenerations
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownName {
                kind: "degeneration row",
                name: name.to_string(),
                available: self
                    .degenerations
                    .iter()
                    .map(|r| r.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    pub fn closed_set(&self, name: &str) -> Result<&ClosedSetRecord> {
        self.closed_sets
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Error::UnknownName {
                kind: "closed set",
                name: name.to_string(),
                available: self
                    .closed_sets
                    .iter()
                    .map(|r| r.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    /// Name-grouped counts by dimension, for summaries.
    pub fn counts_by_dim(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.algebra.dim()).or_insert(0) += 1;
        }
        out
    }
}

pub fn default_catalog_dir() -> PathBuf {
    std::env::var_os(ENV_CATALOG)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog"))
}

/// Algebra entries of a catalog directory or algebras file.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    Ok(Catalog::load(path)?.entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::Identity;

    #[test]
    fn rn_examples() {
        let r4 = generate_rn(4);
        assert_eq!(r4.constant(0, 0, 1), &Rational::one());
        assert_eq!(r4.constant(1, 1, 3), &Rational::one());
        assert_eq!(r4.constant(0, 3, 3), &Rational::zero());
        assert!(generate_rn(1).is_zero_product());
        let r5 = generate_rn(5);
        assert!(Identity::associative().check(&r5).holds());
        assert!(r5.is_commutative());
    }

    #[test]
    fn generated_names() {
        let cat = Catalog::default();
        assert_eq!(cat.entry("zero3").unwrap().algebra.dim(), 3);
        assert_eq!(
            cat.entry("onegen4").unwrap().algebra,
            generate_rn(4).to_symbolic()
        );
        match cat.entry("R4_99") {
            Err(Error::UnknownName { available, .. }) => assert!(available.contains("zero<n>")),
            other => panic!("{other:?}"),
        }
        assert!(cat.entry("zero0").is_err());
    }

    #[test]
    fn shipped_catalog_loads() {
        let cat = Catalog::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog")).unwrap();
        assert_eq!(cat.entries.len(), 18);
        assert_eq!(
            cat.counts_by_dim(),
            BTreeMap::from([(2, 2), (3, 5), (4, 11)])
        );
        assert_eq!(cat.extensions.len(), 15);
        assert_eq!(cat.cohomology.len(), 6);
        assert_eq!(cat.automorphisms.len(), 3);
        assert_eq!(cat.degenerations.len(), 6);
        assert_eq!(cat.closed_sets.len(), 1);
        for e in &cat.entries {
            for (_, q) in e.instances().unwrap() {
                assert!(
                    Identity::right_alternative().check(&q).holds(),
                    "{}",
                    e.name
                );
            }
        }
    }
}
