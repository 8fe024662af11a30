use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use super::{
    AutomorphismRecord, Catalog, CatalogEntry, ClosedSetRecord, CohomologyGolden, Expansion,
    ExtensionRecord, Reduction, Root, KNOWN_TAGS,
};
use crate::algebra::Algebra;
use crate::cohomology::{AutomorphismShape, BilinearForm};
use crate::degeneration::{DegenerationRow, ParametricBasis};
use crate::error::{Error, Result};
use crate::identity::{parse_rational, parse_scalar, ClosedSetCondition};
use crate::scalar::{Rational, RationalFunction, Var};

pub const ENV_CATALOG: &str = "EXTALG_CATALOG";

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    #[serde(default)]
    algebras: Vec<RawAlgebra>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    name: String,
    dim: usize,
    #[serde(default)]
    constants: Vec<RawConstant>,
    #[serde(default)]
    tags: Vec<String>,
    #[serde(default)]
    provenance: String,
    #[serde(default)]
    excluded_alpha: Vec<String>,
    #[serde(default)]
    alpha_samples: Vec<String>,
    #[serde(default)]
    der_dim: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstant {
    i: usize,
    j: usize,
    k: usize,
    value: String,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CocycleFile {
    #[serde(default)]
    cohomology: Vec<RawGolden>,
    #[serde(default)]
    extensions: Vec<RawExtension>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGolden {
    algebra: String,
    #[serde(default)]
    alphas: Vec<String>,
    z2: Vec<String>,
    b2: Vec<String>,
    h2: Vec<String>,
    h2_dim: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    name: String,
    base: String,
    cocycles: Vec<String>,
    result: String,
    #[serde(default)]
    alpha: Option<String>,
    #[serde(default)]
    relabel: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAutomorphisms {
    name: String,
    algebra: String,
    #[serde(default)]
    alpha: Option<String>,
    params: Vec<String>,
    matrix: Vec<Vec<String>>,
    #[serde(default)]
    nonzero: Vec<String>,
    nablas: Vec<String>,
    #[serde(default)]
    action: Vec<String>,
    #[serde(default)]
    expansions: Vec<RawExpansion>,
    #[serde(default)]
    reductions: Vec<RawReduction>,
    #[serde(default)]
    orbits: Vec<RawOrbit>,
    #[serde(default = "default_orbit_samples")]
    orbit_samples: usize,
}

fn default_orbit_samples() -> usize {
    1000
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpansion {
    cocycle: String,
    stated: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReduction {
    label: String,
    alphas: Vec<String>,
    #[serde(default)]
    roots: Vec<RawRoot>,
    params: BTreeMap<String, String>,
    representative: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRoot {
    name: String,
    power: u32,
    of: String,
    value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbit {
    name: String,
    cocycle: String,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct DegenerationFile {
    #[serde(default)]
    rows: Vec<RawRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    name: String,
    source: String,
    target: String,
    basis: Vec<Vec<String>>,
    #[serde(default)]
    alpha_samples: Vec<String>,
    #[serde(default)]
    excluded_alpha: Vec<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ClosedSetFile {
    #[serde(default)]
    sets: Vec<RawClosedSet>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClosedSet {
    name: String,
    conditions: Vec<ClosedSetCondition>,
    #[serde(default)]
    holds_for: Vec<String>,
    #[serde(default)]
    excludes: Vec<String>,
    #[serde(default = "default_trials")]
    trials: usize,
    #[serde(default = "default_seed")]
    seed: u64,
}

fn default_trials() -> usize {
    10_000
}

fn default_seed() -> u64 {
    1
}

fn read_json<T: DeserializeOwned + Default>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    if text.trim().is_empty() {
        return Ok(T::default());
    }
    serde_json::from_str(&text).map_err(|e| Error::catalog(path.display(), e))
}

/// JSON files of `dir/sub`, sorted by name; a missing directory is empty.
fn json_files(dir: &Path, sub: &str) -> Result<Vec<PathBuf>> {
    let path = dir.join(sub);
    if !path.is_dir() {
        return Ok(Vec::new());
    }
    let mut out: Vec<PathBuf> = fs::read_dir(&path)
        .map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    Ok(out)
}

pub(super) fn load(path: &Path) -> Result<Catalog> {
    if path.is_file() {
        let mut cat = Catalog::default();
        add_algebras(&mut cat, path)?;
        return Ok(cat);
    }
    if !path.is_dir() {
        return Err(Error::Io {
            path: path.display().to_string(),
            msg: "no such catalog file or directory".into(),
        });
    }
    let mut cat = Catalog::default();
    for file in json_files(path, "algebras")? {
        add_algebras(&mut cat, &file)?;
    }
    for file in json_files(path, "cocycles")? {
        let raw: CocycleFile = read_json(&file)?;
        let ctx = Ctx {
            cat: &cat,
            file: &file,
        };
        let goldens = raw
            .cohomology
            .into_iter()
            .map(|g| ctx.golden(g))
            .collect::<Result<Vec<_>>>()?;
        let extensions = raw
            .extensions
            .into_iter()
            .map(|x| ctx.extension(x))
            .collect::<Result<Vec<_>>>()?;
        cat.cohomology.extend(goldens);
        cat.extensions.extend(extensions);
    }
    for file in json_files(path, "automorphisms")? {
        let raw: Option<RawAutomorphisms> = read_json(&file)?;
        if let Some(raw) = raw {
            let rec = Ctx {
                cat: &cat,
                file: &file,
            }
            .automorphisms(raw)?;
            cat.automorphisms.push(rec);
        }
    }
    for file in json_files(path, "degenerations")? {
        let raw: DegenerationFile = read_json(&file)?;
        let ctx = Ctx {
            cat: &cat,
            file: &file,
        };
        let rows = raw
            .rows
            .into_iter()
            .map(|r| ctx.row(r))
            .collect::<Result<Vec<_>>>()?;
        cat.degenerations.extend(rows);
    }
    for file in json_files(path, "closed_sets")? {
        let raw: ClosedSetFile = read_json(&file)?;
        let ctx = Ctx {
            cat: &cat,
            file: &file,
        };
        let sets = raw
            .sets
            .into_iter()
            .map(|s| ctx.closed_set(s))
            .collect::<Result<Vec<_>>>()?;
        cat.closed_sets.extend(sets);
    }
    Ok(cat)
}

fn add_algebras(cat: &mut Catalog, file: &Path) -> Result<()> {
    let raw: AlgebraFile = read_json(file)?;
    for a in raw.algebras {
        let entry = Ctx { cat, file }.algebra(a)?;
        if cat.entries.iter().any(|e| e.name == entry.name) {
            return Err(Error::catalog(
                file.display(),
                format!("duplicate algebra name `{}`", entry.name),
            ));
        }
        cat.entries.push(entry);
    }
    Ok(())
}

struct Ctx<'a> {
    cat: &'a Catalog,
    file: &'a Path,
}

impl Ctx<'_> {
    fn err(&self, what: &str, e: impl std::fmt::Display) -> Error {
        Error::catalog(self.file.display(), format!("{what}: {e}"))
    }

    fn rationals(&self, what: &str, items: &[String]) -> Result<Vec<Rational>> {
        items
            .iter()
            .map(|s| parse_rational(s).map_err(|e| self.err(what, e)))
            .collect()
    }

    fn alpha(&self, what: &str, text: Option<&str>) -> Result<Option<Rational>> {
        text.map(|t| parse_rational(t).map_err(|e| self.err(what, e)))
            .transpose()
    }

    fn dim_of(&self, what: &str, name: &str) -> Result<usize> {
        self.cat
            .entry(name)
            .map(|e| e.algebra.dim())
            .map_err(|e| self.err(what, e))
    }

    fn forms(
        &self,
        what: &str,
        items: &[String],
        n: usize,
    ) -> Result<Vec<BilinearForm<RationalFunction>>> {
        items
            .iter()
            .map(|s| BilinearForm::parse(s, n).map_err(|e| self.err(what, e)))
            .collect()
    }

    fn rational_form(&self, what: &str, text: &str, n: usize) -> Result<BilinearForm<Rational>> {
        BilinearForm::parse_rational(text, n).map_err(|e| self.err(what, e))
    }

    fn algebra(&self, raw: RawAlgebra) -> Result<CatalogEntry> {
        let what = format!("algebra `{}`", raw.name);
        let n = raw.dim;
        let mut alg = Algebra::<RationalFunction>::zero(raw.name.as_str(), n);
        for c in &raw.constants {
            let at = format!("{what}, constant ({},{},{})", c.i, c.j, c.k);
            if ![c.i, c.j, c.k].iter().all(|x| (1..=n).contains(x)) {
                return Err(self.err(&at, format!("index outside 1..={n}")));
            }
            let value = parse_scalar(&c.value).map_err(|e| self.err(&at, e))?;
            if let Some(v) = value.vars().into_iter().find(|v| *v != Var::ALPHA) {
                return Err(self.err(&at, format!("unknown symbol `{}`", v.name())));
            }
            alg.set_constant(c.i - 1, c.j - 1, c.k - 1, value);
        }
        for tag in &raw.tags {
            if !KNOWN_TAGS.contains(&tag.as_str()) {
                return Err(self.err(&what, format!("unknown tag `{tag}`")));
            }
        }
        Ok(CatalogEntry {
            name: raw.name.clone(),
            algebra: alg,
            tags: raw.tags.into_iter().collect::<BTreeSet<_>>(),
            provenance: raw.provenance,
            excluded_alpha: self.rationals(&what, &raw.excluded_alpha)?,
            alpha_samples: self.rationals(&what, &raw.alpha_samples)?,
            der_dim: raw.der_dim,
        })
    }

    fn golden(&self, raw: RawGolden) -> Result<CohomologyGolden> {
        let what = format!("cohomology of `{}`", raw.algebra);
        let n = self.dim_of(&what, &raw.algebra)?;
        Ok(CohomologyGolden {
            alphas: self.rationals(&what, &raw.alphas)?,
            z2: self.forms(&what, &raw.z2, n)?,
            b2: self.forms(&what, &raw.b2, n)?,
            h2: self.forms(&what, &raw.h2, n)?,
            h2_dim: raw.h2_dim,
            algebra: raw.algebra,
        })
    }

    fn extension(&self, raw: RawExtension) -> Result<ExtensionRecord> {
        let what = format!("extension `{}`", raw.name);
        let n = self.dim_of(&what, &raw.base)?;
        let m = self.dim_of(&what, &raw.result)?;
        if m != n + raw.cocycles.len() {
            return Err(self.err(
                &what,
                format!(
                    "{} cocycles on dimension {n} cannot give dimension {m}",
                    raw.cocycles.len()
                ),
            ));
        }
        if let Some(p) = &raw.relabel {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (1..=m).collect::<Vec<_>>() {
                return Err(self.err(&what, "relabel is not a permutation"));
            }
        }
        Ok(ExtensionRecord {
            alpha: self.alpha(&what, raw.alpha.as_deref())?,
            cocycles: self.forms(&what, &raw.cocycles, n)?,
            name: raw.name,
            base: raw.base,
            result: raw.result,
            relabel: raw.relabel,
        })
    }

    fn automorphisms(&self, raw: RawAutomorphisms) -> Result<AutomorphismRecord> {
        let what = format!("automorphisms `{}`", raw.name);
        let n = self.dim_of(&what, &raw.algebra)?;
        let params: Vec<&str> = raw.params.iter().map(String::as_str).collect();
        let rows: Vec<Vec<&str>> = raw
            .matrix
            .iter()
            .map(|r| r.iter().map(String::as_str).collect())
            .collect();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(self.err(&what, format!("matrix must be {n}×{n}")));
        }
        let nonzero: Vec<&str> = raw.nonzero.iter().map(String::as_str).collect();
        let shape =
            AutomorphismShape::parse(&params, &rows, &nonzero).map_err(|e| self.err(&what, e))?;
        let nablas = raw
            .nablas
            .iter()
            .map(|s| self.rational_form(&what, s, n))
            .collect::<Result<Vec<_>>>()?;
        if !raw.action.is_empty() && raw.action.len() != nablas.len() {
            return Err(self.err(&what, "one action formula per nabla is required"));
        }
        let action = raw
            .action
            .iter()
            .map(|s| parse_scalar(s).map_err(|e| self.err(&what, e)))
            .collect::<Result<Vec<_>>>()?;
        let expansions = raw
            .expansions
            .iter()
            .map(|x| {
                Ok(Expansion {
                    cocycle: self.rational_form(&what, &x.cocycle, n)?,
                    stated: BilinearForm::parse(&x.stated, n).map_err(|e| self.err(&what, e))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let reductions = raw
            .reductions
            .into_iter()
            .map(|r| self.reduction(&what, r, &raw.params, nablas.len(), n))
            .collect::<Result<Vec<_>>>()?;
        let orbits = raw
            .orbits
            .iter()
            .map(|o| Ok((o.name.clone(), self.rational_form(&what, &o.cocycle, n)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(AutomorphismRecord {
            alpha: self.alpha(&what, raw.alpha.as_deref())?,
            name: raw.name,
            algebra: raw.algebra,
            shape,
            nablas,
            action,
            expansions,
            reductions,
            orbits,
            orbit_samples: raw.orbit_samples,
        })
    }

    fn reduction(
        &self,
        what: &str,
        raw: RawReduction,
        params: &[String],
        m: usize,
        n: usize,
    ) -> Result<Reduction> {
        let what = format!("{what}, reduction `{}`", raw.label);
        let alphas = self.rationals(&what, &raw.alphas)?;
        if alphas.len() != m {
            return Err(self.err(&what, format!("expected {m} values a1..a{m}")));
        }
        let roots = raw
            .roots
            .iter()
            .map(|r| {
                Ok(Root {
                    name: r.name.clone(),
                    power: r.power,
                    of: parse_scalar(&r.of).map_err(|e| self.err(&what, e))?,
                    value: parse_rational(&r.value).map_err(|e| self.err(&what, e))?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let values = params
            .iter()
            .map(|p| {
                let text = raw
                    .params
                    .get(p)
                    .ok_or_else(|| self.err(&what, format!("missing parameter `{p}`")))?;
                parse_scalar(text).map_err(|e| self.err(&what, e))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Reduction {
            label: raw.label,
            alphas,
            roots,
            params: values,
            representative: self.rational_form(&what, &raw.representative, n)?,
        })
    }

    fn row(&self, raw: RawRow) -> Result<DegenerationRow> {
        let what = format!("degeneration `{}`", raw.name);
        let n = self.dim_of(&what, &raw.source)?;
        if self.dim_of(&what, &raw.target)? != n {
            return Err(self.err(&what, "source and target dimensions differ"));
        }
        let rows: Vec<Vec<&str>> = raw
            .basis
            .iter()
            .map(|r| r.iter().map(String::as_str).collect())
            .collect();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(self.err(&what, format!("basis must be {n}×{n}")));
        }
        let basis = ParametricBasis::parse(&rows).map_err(|e| self.err(&what, e))?;
        Ok(DegenerationRow {
            alpha_samples: self.rationals(&what, &raw.alpha_samples)?,
            excluded_alpha: self.rationals(&what, &raw.excluded_alpha)?,
            name: raw.name,
            source: raw.source,
            target: raw.target,
            basis,
        })
    }

    fn closed_set(&self, raw: RawClosedSet) -> Result<ClosedSetRecord> {
        let what = format!("closed set `{}`", raw.name);
        for name in raw.holds_for.iter().chain(&raw.excludes) {
            self.dim_of(&what, name)?;
        }
        Ok(ClosedSetRecord {
            name: raw.name,
            conditions: raw.conditions,
            holds_for: raw.holds_for,
            excludes: raw.excludes,
            trials: raw.trials,
            seed: raw.seed,
        })
    }
}
