//! The full catalog check suite and its report.
//!
//! Sections run in a fixed order and list their checks in catalog order,
//! whatever the thread count, so a report is a pure function of the
//! catalog and the options.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::QAlgebra;
use crate::catalog::{
    generate_rn, AutomorphismRecord, Catalog, CatalogEntry, ClosedSetRecord, CohomologyGolden,
    ExtensionRecord, Reduction,
};
use crate::cohomology::{
    act_on_cocycle, central_extension, check_expansion, coboundaries, cohomology,
    compare_action_formulas, orbit_distinctness_evidence, projective_ratio, verify_automorphism,
    BilinearForm, OrbitEvidence,
};
use crate::degeneration::{
    closed_set_basis_search, verify_degeneration_row, BasisSearch, DegenerationRow, RowVerdict,
    VerificationMode,
};
use crate::error::{Error, Result};
use crate::identity::{check_closed_set, Identity, IdentityCheck};
use crate::invariants::{derivation_algebra, ff_iso_evidence, invariant_vector, FfEvidence};
use crate::linalg::Subspace;
use crate::scalar::{Field, Rational, RationalFunction, Var};

pub const SCHEMA: u32 = 1;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerifyOptions {
    /// Overrides the seeds stored in the catalog.
    pub seed: Option<u64>,
    /// Overrides the per-record automorphism sample counts.
    pub orbit_samples: Option<usize>,
    /// Overrides the per-record closed-set trial budgets.
    pub trials: Option<usize>,
    /// Primes tried in order when invariant vectors tie.
    pub primes: Vec<u32>,
    /// Largest `n` for the one-generated family checks.
    pub family_max: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: None,
            orbit_samples: None,
            trials: None,
            primes: vec![2, 3],
            family_max: 6,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Bounded search came back empty. Consistent with the claim, not proof.
    Evidence,
    /// A stated formula or parameter choice disagrees with recomputation.
    Flagged,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Evidence => "EVIDENCE",
            Status::Flagged => "FLAGGED",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(id: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status,
            detail: detail.into(),
        }
    }

    fn pass_if(id: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Check::new(id, status, detail)
    }

    fn error(id: impl Into<String>, e: &Error) -> Self {
        Check::new(id, Status::Fail, format!("error: {e}"))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Section {
    pub name: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub seed: Option<u64>,
    pub summary: BTreeMap<Status, usize>,
    pub sections: Vec<Section>,
}

impl Report {
    /// No check failed. Evidence and flagged discrepancies do not count as
    /// failures.
    pub fn passed(&self) -> bool {
        self.checks().all(|c| c.status != Status::Fail)
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.sections.iter().flat_map(|s| s.checks.iter())
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed.map_or("catalog".into(), |s| s.to_string());
        writeln!(
            f,
            "verification report (schema {}, seed {seed})",
            self.schema
        )?;
        for section in &self.sections {
            writeln!(f, "\n[{}]", section.name)?;
            for c in &section.checks {
                write!(f, "  {:<9} {}", c.status.label(), c.id)?;
                if !c.detail.is_empty() {
                    write!(f, ": {}", c.detail)?;
                }
                writeln!(f)?;
            }
        }
        let mut line = String::new();
        for (status, count) in &self.summary {
            if !line.is_empty() {
                line.push_str(", ");
            }
            let _ = write!(line, "{count} {}", status.label().to_lowercase());
        }
        if line.is_empty() {
            line.push_str("no checks");
        }
        writeln!(f, "\nsummary: {line}")
    }
}

/// Runs every check the catalog supports. Library errors become failed
/// checks, never an `Err`.
pub fn verify_catalog(cat: &Catalog, opts: &VerifyOptions) -> Report {
    let mut sections = Vec::new();
    if !cat.entries.is_empty() {
        sections.push(section("identities", identity_checks(cat)));
        sections.push(section("nilpotency", nilpotency_checks(cat)));
    }
    if !cat.cohomology.is_empty() {
        sections.push(section("cohomology", cohomology_checks(cat)));
    }
    if !cat.extensions.is_empty() {
        sections.push(section("extensions", extension_checks(cat)));
    }
    if cat.entries.iter().any(|e| e.der_dim.is_some()) {
        sections.push(section("derivations", derivation_checks(cat)));
    }
    if !cat.degenerations.is_empty() {
        sections.push(section("degenerations", degeneration_checks(cat)));
    }
    if !cat.closed_sets.is_empty() {
        sections.push(section("closed-sets", closed_set_checks(cat, opts)));
    }
    if !cat.automorphisms.is_empty() {
        sections.push(section("orbits", orbit_checks(cat, opts)));
    }
    if !cat.entries.is_empty() {
        sections.push(section("one-generated", family_checks(cat, opts)));
    }
    if cat
        .entries
        .iter()
        .filter(|e| e.has_tag("classified"))
        .count()
        > 1
    {
        sections.push(section("distinctness", distinctness_checks(cat, opts)));
    }
    let mut summary = BTreeMap::new();
    for c in sections.iter().flat_map(|s: &Section| s.checks.iter()) {
        *summary.entry(c.status).or_insert(0) += 1;
    }
    Report {
        schema: SCHEMA,
        seed: opts.seed,
        summary,
        sections,
    }
}

fn section(name: &str, checks: Vec<Check>) -> Section {
    Section {
        name: name.to_string(),
        checks,
    }
}

/// `name` or `name(a=α)`.
fn label(name: &str, alpha: Option<&Rational>) -> String {
    match alpha {
        Some(a) => format!("{name}(a={a})"),
        None => name.to_string(),
    }
}

fn instances(entry: &CatalogEntry) -> Result<Vec<(String, QAlgebra)>> {
    Ok(entry
        .instances()?
        .into_iter()
        .map(|(a, q)| (label(&entry.name, a.as_ref()), q))
        .collect())
}

/// Fans `f` out over the entries and concatenates in catalog order.
fn per_entry<T: Sync>(items: &[T], f: impl Fn(&T) -> Vec<Check> + Sync + Send) -> Vec<Check> {
    items.par_iter().map(&f).collect::<Vec<_>>().concat()
}

fn named(name: &str) -> Identity {
    Identity::named(name).expect("built-in identity")
}

fn identity_check(id: String, identity: &Identity, alg: &QAlgebra, expect: bool) -> Check {
    match identity.check(alg) {
        IdentityCheck::Holds => Check::pass_if(id, expect, "holds"),
        IdentityCheck::Counterexample { args, value } => {
            let args: Vec<String> = args.iter().map(|a| format!("e{}", a + 1)).collect();
            let value = value.iter().map(|v| v.to_string()).collect::<Vec<_>>();
            Check::pass_if(
                id,
                !expect,
                format!(
                    "fails at ({}) with value ({})",
                    args.join(","),
                    value.join(",")
                ),
            )
        }
    }
}

fn identity_checks(cat: &Catalog) -> Vec<Check> {
    let ra = Identity::right_alternative();
    let assoc = Identity::associative();
    let cyclic = named("minus-one-one-cyclic");
    let left = named("xyz-zero-left");
    let right = named("xyz-zero-right");
    per_entry(&cat.entries, |entry| {
        let insts = match instances(entry) {
            Ok(v) => v,
            Err(e) => return vec![Check::error(&entry.name, &e)],
        };
        let mut out = Vec::new();
        for (name, alg) in &insts {
            out.push(identity_check(
                format!("{name}: right-alternative"),
                &ra,
                alg,
                true,
            ));
            for (tag, expect) in [("associative", true), ("non-associative", false)] {
                if entry.has_tag(tag) {
                    out.push(identity_check(
                        format!("{name}: {tag}"),
                        &assoc,
                        alg,
                        expect,
                    ));
                }
            }
            for (tag, expect) in [("commutative", true), ("non-commutative", false)] {
                if entry.has_tag(tag) {
                    out.push(Check::pass_if(
                        format!("{name}: {tag}"),
                        alg.is_commutative() == expect,
                        format!("commutative = {}", alg.is_commutative()),
                    ));
                }
            }
            if entry.has_tag("classified") {
                out.push(identity_check(
                    format!("{name}: (-1,1)"),
                    &cyclic,
                    alg,
                    true,
                ));
            }
            let zero_xyz = left.check(alg).holds() && right.check(alg).holds();
            for (tag, expect) in [("non-pure", true), ("pure", false)] {
                if entry.has_tag(tag) {
                    out.push(Check::pass_if(
                        format!("{name}: {tag}"),
                        zero_xyz == expect,
                        format!("(xy)z = x(yz) = 0 is {zero_xyz}"),
                    ));
                }
            }
            if entry.has_tag("one-generated") {
                out.push(match alg.is_generated_by(&alg.basis_vector(0)) {
                    Ok(g) => Check::pass_if(
                        format!("{name}: one-generated"),
                        g,
                        format!("e1 generates = {g}"),
                    ),
                    Err(e) => Check::error(format!("{name}: one-generated"), &e),
                });
            }
        }
        out
    })
}

fn nilpotency_checks(cat: &Catalog) -> Vec<Check> {
    per_entry(&cat.entries, |entry| {
        let insts = match instances(entry) {
            Ok(v) => v,
            Err(e) => return vec![Check::error(&entry.name, &e)],
        };
        let mut out = Vec::new();
        for (name, alg) in &insts {
            let chain = alg.power_chain();
            let dims = chain.dims();
            let dims = dims
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push(match chain.nil_index {
                Some(k) => Check::pass_if(
                    format!("{name}: nilpotent"),
                    k <= 5,
                    format!("nil index {k}, chain dims ({dims})"),
                ),
                None => Check::new(
                    format!("{name}: nilpotent"),
                    Status::Fail,
                    format!("power chain stabilises, dims ({dims})"),
                ),
            });
            let n = alg.dim();
            let last = alg.basis_vector(n - 1);
            out.push(match alg.annihilator().contains(&last) {
                Ok(ok) => Check::pass_if(
                    format!("{name}: e{n} in Ann"),
                    ok,
                    format!("dim Ann = {}", alg.annihilator().dim()),
                ),
                Err(e) => Check::error(format!("{name}: e{n} in Ann"), &e),
            });
        }
        out
    })
}

fn specialize_forms(
    forms: &[BilinearForm<RationalFunction>],
    alpha: Option<&Rational>,
) -> Result<Vec<BilinearForm<Rational>>> {
    let assign: BTreeMap<Var, Rational> =
        alpha.map(|a| (Var::ALPHA, a.clone())).into_iter().collect();
    forms
        .iter()
        .map(|f| f.try_map(|x| x.evaluate(&assign)))
        .collect()
}

fn span(n: usize, forms: &[BilinearForm<Rational>]) -> Result<Subspace<Rational>> {
    Subspace::span(n * n, forms.iter().map(BilinearForm::to_vector).collect())
}

fn golden_checks(cat: &Catalog, g: &CohomologyGolden) -> Vec<Check> {
    let alphas: Vec<Option<&Rational>> = if g.alphas.is_empty() {
        vec![None]
    } else {
        g.alphas.iter().map(Some).collect()
    };
    let mut out = Vec::new();
    for alpha in alphas {
        let name = label(&g.algebra, alpha);
        let run = || -> Result<Vec<Check>> {
            let entry = cat.entry(&g.algebra)?;
            let alg = match alpha {
                Some(a) => entry.at_alpha(a)?,
                None => entry.instances()?.remove(0).1,
            };
            let n = alg.dim();
            let report = cohomology(&alg, &Identity::right_alternative())?;
            let z2 = span(n, &specialize_forms(&g.z2, alpha)?)?;
            let b2 = span(n, &specialize_forms(&g.b2, alpha)?)?;
            let h2 = specialize_forms(&g.h2, alpha)?;
            let h2_span = span(n, &h2)?.sum(&report.b2)?;
            let reps_ok = h2.len() == report.h2_dim
                && report.z2.contains_subspace(&h2_span)?
                && h2_span.dim() == report.b2.dim() + h2.len();
            Ok(vec![
                Check::pass_if(
                    format!("{name}: Z2"),
                    z2 == report.z2,
                    format!("dim {} (table {})", report.z2.dim(), z2.dim()),
                ),
                Check::pass_if(
                    format!("{name}: B2"),
                    b2 == report.b2,
                    format!("dim {} (table {})", report.b2.dim(), b2.dim()),
                ),
                Check::pass_if(
                    format!("{name}: h2_dim"),
                    report.h2_dim == g.h2_dim,
                    format!("{} (table {})", report.h2_dim, g.h2_dim),
                ),
                Check::pass_if(
                    format!("{name}: H2 representatives"),
                    reps_ok,
                    "independent modulo B2 and spanning Z2/B2".to_string(),
                ),
            ])
        };
        match run() {
            Ok(v) => out.extend(v),
            Err(e) => out.push(Check::error(format!("{name}: cohomology"), &e)),
        }
    }
    out
}

fn cohomology_checks(cat: &Catalog) -> Vec<Check> {
    per_entry(&cat.cohomology, |g| golden_checks(cat, g))
}

fn extension_check(cat: &Catalog, rec: &ExtensionRecord) -> Result<Check> {
    let base = cat.entry(&rec.base)?;
    let result = cat.entry(&rec.result)?;
    let (base, expected) = match &rec.alpha {
        Some(a) => (
            base.algebra.specialize_alpha(a)?,
            result.algebra.specialize_alpha(a)?,
        ),
        None => (base.algebra, result.algebra),
    };
    let thetas: Vec<BilinearForm<RationalFunction>> = match &rec.alpha {
        Some(a) => specialize_forms(&rec.cocycles, Some(a))?
            .iter()
            .map(|f| f.map(|q| RationalFunction::from(q.clone())))
            .collect(),
        None => rec.cocycles.clone(),
    };
    let mut ext = central_extension(&base, &Identity::right_alternative(), &thetas)?;
    if let Some(perm) = &rec.relabel {
        let m = ext.dim();
        let mut p = crate::linalg::Matrix::<RationalFunction>::zeros(m, m);
        for (row, &col) in perm.iter().enumerate() {
            p[(row, col - 1)] = RationalFunction::one();
        }
        ext = ext.change_basis(&p)?;
    }
    let ok = ext.dim() == expected.dim() && ext.constants() == expected.constants();
    let detail = if ok {
        "tensors equal".to_string()
    } else {
        let diffs: Vec<String> = ext
            .nonzero_constants()
            .map(|(i, j, k, v)| format!("c({},{},{})={v}", i + 1, j + 1, k + 1))
            .collect();
        format!("extension has {}", diffs.join(" "))
    };
    Ok(Check::pass_if(
        format!(
            "{}: {} -> {}",
            rec.name,
            label(&rec.base, rec.alpha.as_ref()),
            rec.result
        ),
        ok,
        detail,
    ))
}

fn extension_checks(cat: &Catalog) -> Vec<Check> {
    per_entry(&cat.extensions, |rec| {
        vec![extension_check(cat, rec).unwrap_or_else(|e| Check::error(&rec.name, &e))]
    })
}

fn derivation_checks(cat: &Catalog) -> Vec<Check> {
    per_entry(&cat.entries, |entry| {
        let Some(expected) = entry.der_dim else {
            return Vec::new();
        };
        match instances(entry) {
            Ok(insts) => insts
                .iter()
                .map(|(name, alg)| {
                    let d = derivation_algebra(alg).dim;
                    Check::pass_if(
                        format!("{name}: dim Der"),
                        d == expected,
                        format!("{d} (table {expected})"),
                    )
                })
                .collect(),
            Err(e) => vec![Check::error(&entry.name, &e)],
        }
    })
}

fn mode_detail(mode: &VerificationMode) -> String {
    match mode {
        VerificationMode::Symbolic => "exact limit over Q(t) or Q(t,a)".into(),
        VerificationMode::Sampled(v) => format!("exact limit at a in {{{}}}", v.join(",")),
    }
}

fn degeneration_row_checks(cat: &Catalog, row: &DegenerationRow) -> Vec<Check> {
    let run = || -> Result<Vec<Check>> {
        let source = cat.entry(&row.source)?;
        let target = cat.entry(&row.target)?;
        let verdict = verify_degeneration_row(row, &source.algebra, &target.algebra)?;
        let mut out = vec![match &verdict {
            RowVerdict::Verified(mode) => Check::new(&row.name, Status::Pass, mode_detail(mode)),
            RowVerdict::Failed(ms) => {
                let parts: Vec<String> = ms
                    .iter()
                    .map(|m| {
                        let at = m
                            .alpha
                            .as_ref()
                            .map_or(String::new(), |a| format!(" at a={a}"));
                        format!(
                            "{}{at}: limit {} expected {}",
                            m.constant, m.limit, m.expected
                        )
                    })
                    .collect();
                Check::new(&row.name, Status::Fail, parts.join("; "))
            }
        }];
        let src_der = source
            .instances()?
            .iter()
            .map(|(_, q)| derivation_algebra(q).dim)
            .max()
            .unwrap_or(0);
        let targets: Vec<(Option<Rational>, QAlgebra)> = if target.is_parametric() {
            row.alpha_samples
                .iter()
                .filter(|a| !row.excluded_alpha.contains(a))
                .map(|a| Ok((Some(a.clone()), target.at_alpha(a)?)))
                .collect::<Result<_>>()?
        } else {
            target.instances()?
        };
        for (alpha, q) in &targets {
            let d = derivation_algebra(q).dim;
            let ok = src_der < d;
            out.push(Check::new(
                format!(
                    "{}: dim Der ordering at {}",
                    row.name,
                    label(&row.target, alpha.as_ref())
                ),
                if ok { Status::Evidence } else { Status::Fail },
                format!("{src_der} < {d}; necessary for a proper degeneration"),
            ));
        }
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![Check::error(&row.name, &e)])
}

fn degeneration_checks(cat: &Catalog) -> Vec<Check> {
    per_entry(&cat.degenerations, |row| degeneration_row_checks(cat, row))
}

fn closed_set_record_checks(
    cat: &Catalog,
    rec: &ClosedSetRecord,
    opts: &VerifyOptions,
) -> Vec<Check> {
    let trials = opts.trials.unwrap_or(rec.trials);
    let seed = opts.seed.unwrap_or(rec.seed);
    let mut out = Vec::new();
    for name in &rec.holds_for {
        let insts = cat.entry(name).and_then(|e| instances(&e));
        match insts {
            Ok(insts) => {
                for (label, alg) in insts {
                    let id = format!("{}: {label} in stored basis", rec.name);
                    out.push(match check_closed_set(&alg, &rec.conditions) {
                        Ok(ok) => Check::pass_if(id, ok, format!("conditions hold = {ok}")),
                        Err(e) => Check::error(id, &e),
                    });
                }
            }
            Err(e) => out.push(Check::error(format!("{}: {name}", rec.name), &e)),
        }
    }
    for name in &rec.excludes {
        let insts = cat.entry(name).and_then(|e| instances(&e));
        match insts {
            Ok(insts) => {
                for (label, alg) in insts {
                    let id = format!("{}: no basis for {label}", rec.name);
                    out.push(
                        match closed_set_basis_search(&alg, &rec.conditions, trials, seed) {
                            Ok(BasisSearch::NoBasisFound { trials, seed }) => Check::new(
                                id,
                                Status::Evidence,
                                format!("no basis in {trials} trials (seed {seed})"),
                            ),
                            Ok(BasisSearch::BasisFound { trial, basis }) => Check::new(
                                id,
                                Status::Fail,
                                format!("trial {trial} satisfies the set with rows {basis}"),
                            ),
                            Err(e) => Check::error(id, &e),
                        },
                    );
                }
            }
            Err(e) => out.push(Check::error(format!("{}: {name}", rec.name), &e)),
        }
    }
    out
}

fn closed_set_checks(cat: &Catalog, opts: &VerifyOptions) -> Vec<Check> {
    per_entry(&cat.closed_sets, |rec| {
        closed_set_record_checks(cat, rec, opts)
    })
}

fn record_algebra(cat: &Catalog, rec: &AutomorphismRecord) -> Result<QAlgebra> {
    let entry = cat.entry(&rec.algebra)?;
    match &rec.alpha {
        Some(a) => entry.at_alpha(a),
        None => Ok(entry.instances()?.remove(0).1),
    }
}

/// Evaluates a stated reduction at its sample point.
fn reduction_check(alg: &QAlgebra, rec: &AutomorphismRecord, red: &Reduction) -> Result<Check> {
    let id = format!("{}: reduction `{}`", rec.name, red.label);
    let mut assign: BTreeMap<Var, Rational> = red
        .alphas
        .iter()
        .enumerate()
        .map(|(i, a)| (crate::cohomology::action_variable(i), a.clone()))
        .collect();
    for root in &red.roots {
        let radicand = root.of.evaluate(&assign)?;
        let power = root.value.pow(root.power as i32).expect("positive power");
        if power != radicand {
            return Ok(Check::new(
                id,
                Status::Fail,
                format!("{}^{} = {power}, not {radicand}", root.name, root.power),
            ));
        }
        assign.insert(Var::named(&root.name), root.value.clone());
    }
    let values: Vec<Rational> = red
        .params
        .iter()
        .map(|p| p.evaluate(&assign))
        .collect::<Result<_>>()?;
    let Some(phi) = rec.shape.specialize(&values)? else {
        return Ok(Check::new(
            id,
            Status::Flagged,
            "parameter choice violates the invertibility conditions",
        ));
    };
    if !verify_automorphism(alg, &phi) {
        return Ok(Check::new(
            id,
            Status::Fail,
            "specialized matrix is not an automorphism",
        ));
    }
    let mut theta = BilinearForm::<Rational>::zero(alg.dim());
    for (a, nabla) in red.alphas.iter().zip(&rec.nablas) {
        theta = theta.add(&nabla.scale(a))?;
    }
    let image = act_on_cocycle(&phi, &theta)?;
    let b2 = coboundaries(alg);
    let alphas: Vec<String> = red.alphas.iter().map(|a| a.to_string()).collect();
    Ok(match projective_ratio(&b2, &image, &red.representative)? {
        Some(lambda) => Check::new(
            id,
            Status::Pass,
            format!(
                "at a=({}) the image is {} times {}",
                alphas.join(","),
                lambda.inv().expect("nonzero"),
                red.representative
            ),
        ),
        None => {
            let reduced = BilinearForm::from_vector(alg.dim(), &b2.reduce(&image.to_vector())?)?;
            Check::new(
                id,
                Status::Flagged,
                format!(
                    "at a=({}) the image is {reduced} modulo B2, not a multiple of {}",
                    alphas.join(","),
                    red.representative
                ),
            )
        }
    })
}

fn orbit_record_checks(
    cat: &Catalog,
    rec: &AutomorphismRecord,
    opts: &VerifyOptions,
) -> Vec<Check> {
    let alg = match record_algebra(cat, rec) {
        Ok(a) => a,
        Err(e) => return vec![Check::error(&rec.name, &e)],
    };
    let mut out = Vec::new();
    let shape_ok = rec.shape.verify_symbolic(&alg);
    out.push(Check::pass_if(
        format!("{}: shape", rec.name),
        shape_ok,
        format!(
            "generic member is an automorphism of {}",
            label(&rec.algebra, rec.alpha.as_ref())
        ),
    ));
    if !rec.action.is_empty() {
        match compare_action_formulas(&alg, &rec.shape, &rec.nablas, &rec.action) {
            Ok(cmps) => out.extend(cmps.iter().map(|c| {
                let id = format!("{}: action a{}*", rec.name, c.index + 1);
                if c.matches() {
                    Check::new(id, Status::Pass, format!("{}", c.stated))
                } else {
                    Check::new(
                        id,
                        Status::Flagged,
                        format!("stated {} but recomputed {}", c.stated, c.recomputed),
                    )
                }
            })),
            Err(e) => out.push(Check::error(format!("{}: action", rec.name), &e)),
        }
    }
    for exp in &rec.expansions {
        let id = format!("{}: expansion of {}", rec.name, exp.cocycle);
        out.push(
            match check_expansion(&alg, &rec.shape, &exp.cocycle, &exp.stated) {
                Ok(c) if c.matches() => Check::new(id, Status::Pass, "matches modulo B2"),
                Ok(c) => {
                    let n = alg.dim();
                    let diff: Vec<String> = c
                        .discrepancies
                        .iter()
                        .map(|(i, j, v)| format!("D{}{}: {v}", i + 1, j + 1))
                        .collect();
                    let _ = n;
                    Check::new(
                        id,
                        Status::Flagged,
                        format!("recomputed {} differs by {}", c.recomputed, diff.join(", ")),
                    )
                }
                Err(e) => Check::error(id, &e),
            },
        );
    }
    for red in &rec.reductions {
        out.push(reduction_check(&alg, rec, red).unwrap_or_else(|e| {
            Check::error(format!("{}: reduction `{}`", rec.name, red.label), &e)
        }));
    }
    let samples = opts.orbit_samples.unwrap_or(rec.orbit_samples);
    let seed = opts.seed.unwrap_or(1);
    for (i, (n1, w1)) in rec.orbits.iter().enumerate() {
        for (n2, w2) in &rec.orbits[i + 1..] {
            let id = format!("{}: orbits {n1} / {n2}", rec.name);
            out.push(
                match orbit_distinctness_evidence(&alg, &rec.shape, w1, w2, samples, seed) {
                    Ok(OrbitEvidence::NoEquivalenceFound { samples }) => Check::new(
                        id,
                        Status::Evidence,
                        format!("no equivalence in {samples} sampled automorphisms (seed {seed})"),
                    ),
                    Ok(OrbitEvidence::EquivalenceWitness {
                        sample,
                        phi,
                        lambda,
                    }) => Check::new(
                        id,
                        Status::Fail,
                        format!("sample {sample} maps {w1} to {lambda} times {w2} with {phi}"),
                    ),
                    Err(e) => Check::error(id, &e),
                },
            );
        }
    }
    out
}

fn orbit_checks(cat: &Catalog, opts: &VerifyOptions) -> Vec<Check> {
    per_entry(&cat.automorphisms, |rec| {
        orbit_record_checks(cat, rec, opts)
    })
}

fn family_checks(cat: &Catalog, opts: &VerifyOptions) -> Vec<Check> {
    let mut out: Vec<Check> = (1..=opts.family_max)
        .into_par_iter()
        .map(|n| {
            let alg = generate_rn(n);
            let ra = Identity::right_alternative().check(&alg).holds();
            let assoc = Identity::associative().check(&alg).holds();
            let comm = alg.is_commutative();
            let gen = alg.is_generated_by(&alg.basis_vector(0)).unwrap_or(false);
            Check::pass_if(
                format!("onegen{n}"),
                ra && assoc && comm && gen,
                format!(
                    "right-alternative={ra} associative={assoc} commutative={comm} one-generated={gen}"
                ),
            )
        })
        .collect();
    for entry in cat.entries.iter().filter(|e| e.has_tag("one-generated")) {
        let n = entry.algebra.dim();
        let generated = generate_rn(n).to_symbolic();
        out.push(Check::pass_if(
            format!("{} = onegen{n}", entry.name),
            generated.constants() == entry.algebra.constants(),
            "tensor comparison",
        ));
    }
    out
}

fn distinctness_checks(cat: &Catalog, opts: &VerifyOptions) -> Vec<Check> {
    let classified: Vec<(String, QAlgebra)> = match cat
        .entries
        .iter()
        .filter(|e| e.has_tag("classified"))
        .map(instances)
        .collect::<Result<Vec<_>>>()
    {
        Ok(v) => v.into_iter().flatten().collect(),
        Err(e) => return vec![Check::error("classified", &e)],
    };
    let vectors: Vec<_> = classified
        .par_iter()
        .map(|(_, a)| invariant_vector(a))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..classified.len())
        .flat_map(|i| (i + 1..classified.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (na, a) = &classified[i];
            let (nb, b) = &classified[j];
            let id = format!("{na} / {nb}");
            let sep = vectors[i].separating(&vectors[j]);
            if !sep.is_empty() {
                return Check::new(id, Status::Pass, format!("separated by {}", sep.join(", ")));
            }
            let mut notes = Vec::new();
            for &p in &opts.primes {
                match ff_iso_evidence(a, b, p) {
                    Ok(FfEvidence::NoneFoundModP { group_order }) => {
                        notes.push(format!(
                            "invariant vectors tie; no isomorphism over F_{p} ({group_order} matrices)"
                        ));
                        return Check::new(id, Status::Evidence, notes.join("; "));
                    }
                    Ok(FfEvidence::IsoWitness(_)) => notes.push(format!("isomorphic over F_{p}")),
                    Err(e) => notes.push(format!("F_{p} skipped: {e}")),
                }
            }
            notes.insert(0, "invariant vectors tie".into());
            Check::new(id, Status::Fail, notes.join("; "))
        })
        .collect()
}
