//! Shipped bordered data and the checks that replay its verifications.

pub mod catalog;
pub mod exterior;
pub mod gprime;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bordered::morphism::{cancel_idempotent_arrows, iso_as_data, DEFAULT_ARITY_CAP};
use crate::bordered::{box_da_da, BorderedError, BoxOptions, DAMorphism};

pub use catalog::{Built, Catalog};
pub use exterior::{surgery_model, verify_basis_change, ExteriorModel, SurgeryKind};
pub use gprime::verify_g_prime;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PaperDataError {
    #[error("configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Bordered(#[from] BorderedError),
}

impl From<crate::algebra::AlgebraError> for PaperDataError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        PaperDataError::Bordered(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

impl Report {
    pub fn new(check: impl Into<String>, status: Status, detail: String) -> Self {
        Report { check: check.into(), status, detail }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn from_result(check: &str, r: Result<Report, PaperDataError>) -> Report {
        r.unwrap_or_else(|e| Report::new(check, Status::Fail, e.to_string()))
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.status, self.check, self.detail)
    }
}

/// Checks dΩ = 0 on all inputs of arity up to `max_arity` (generator plus chords).
pub fn verify_omega(cat: &Catalog, max_arity: usize) -> Result<Report, PaperDataError> {
    if max_arity < 4 {
        return Err(PaperDataError::Config(format!("max arity {max_arity} is below 4")));
    }
    let gp = cat.gprime();
    let printed = cat.da_morphism(&gp.omega)?;
    let completion = cat.da_morphism(&gp.omega_completion)?;
    let omega = printed.plus(&completion)?;
    let differential = |f: &DAMorphism| match f.differential(max_arity) {
        Ok(d) => Ok(d),
        Err(BorderedError::ArityCap { needed, .. }) => {
            Err(PaperDataError::Config(format!("max arity {max_arity} is below the structural bound {needed}")))
        }
        Err(e) => Err(PaperDataError::from(e)),
    };
    let by_arity = |d: &DAMorphism| {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for (_, s) in d.terms().keys() {
            *m.entry(s.len() + 1).or_default() += 1;
        }
        m
    };
    let rows = |f: &DAMorphism| {
        let v: Vec<String> = (1..=f.max_in() + 1)
            .map(|a| f.terms().keys().filter(|(_, s)| s.len() + 1 == a).count().to_string())
            .collect();
        v.join(", ")
    };
    let alg = cat.algebra();
    let show = |d: &DAMorphism, n: usize| {
        d.terms()
            .iter()
            .take(n)
            .map(|((x, s), v)| {
                format!("({}; {}) ↦ {}", d.source().generators()[*x].name, alg.seq_name(s), d.target().show(v))
            })
            .collect::<Vec<_>>()
            .join("; ")
    };
    let counts = |m: &BTreeMap<usize, usize>| {
        m.iter().map(|(a, n)| format!("arity {a}: {n}")).collect::<Vec<_>>().join(", ")
    };

    let dp = by_arity(&differential(&printed)?);
    let d = differential(&omega)?;
    let low = dp.range(..=printed.max_in() + 1).map(|(_, n)| n).sum::<usize>();
    let only_arity4 = completion.terms().keys().all(|(_, s)| s.len() == 3);
    let printed_part = if dp.is_empty() {
        "printed Ω alone has dΩ = 0".to_string()
    } else {
        format!("printed Ω with Ω¹₄ = 0 has dΩ ≠ 0 ({})", counts(&dp))
    };
    let summary = format!(
        "{printed_part}; Ω¹₄ completion has {} terms; Ω has [{}] rows by arity",
        completion.terms().values().map(|v| v.len()).sum::<usize>(),
        rows(&omega)
    );
    if d.is_zero() && low == 0 && only_arity4 {
        Ok(Report::new(
            "omega",
            Status::Pass,
            format!("dΩ = 0 in arities 1..={max_arity} with the completion; printed rows close through arity {}; {summary}", printed.max_in() + 1),
        ))
    } else {
        let mut why = Vec::new();
        if !d.is_zero() {
            why.push(format!("dΩ ≠ 0 with the completion ({}): {}", counts(&by_arity(&d)), show(&d, 4)));
        }
        if low != 0 {
            why.push(format!("printed rows leave {low} terms through arity {}", printed.max_in() + 1));
        }
        if !only_arity4 {
            why.push("completion has terms outside arity 4".into());
        }
        Ok(Report::new("omega", Status::Fail, format!("{}; {summary}", why.join("; "))))
    }
}

/// Compares the computed pairing of the two AZ bimodules with its transcription.
pub fn verify_az_pairing(cat: &Catalog) -> Result<Report, PaperDataError> {
    let gp = cat.gprime();
    let azb = cat.type_da(&gp.azbar)?;
    let az = cat.type_da(&gp.az)?;
    let computed = box_da_da(&azb, &az, BoxOptions::default())?;
    let (built, dropped) = cat.load("azbar_box_az")?;
    let Built::DA(printed) = built else {
        return Err(BorderedError::Kind("azbar_box_az is not a DA transcription".into()).into());
    };
    let c = computed.to_definition("pairing");
    let p = printed.to_definition("pairing");
    let mut problems = Vec::new();
    if c.generators != p.generators {
        problems.push(format!("generators differ ({} computed, {} printed)", c.generators.len(), p.generators.len()));
    }
    let mut counts = BTreeMap::new();
    for arity in 1..=c.ops.iter().chain(&p.ops).map(|o| o.arity).max().unwrap_or(1) {
        let co: Vec<_> = c.ops.iter().filter(|o| o.arity == arity).collect();
        let po: Vec<_> = p.ops.iter().filter(|o| o.arity == arity).collect();
        counts.insert(arity, co.len());
        for o in co.iter().filter(|o| !po.contains(o)) {
            problems.push(format!("computed only: {} ⊗ ({}) ↦ {:?} ⊗ {}", o.in_gen, o.alg_in.join(", "), o.alg_out, o.out_gen));
        }
        for o in po.iter().filter(|o| !co.contains(o)) {
            problems.push(format!("printed only: {} ⊗ ({}) ↦ {:?} ⊗ {}", o.in_gen, o.alg_in.join(", "), o.alg_out, o.out_gen));
        }
    }
    if c.ops.iter().any(|o| o.arity > 2) {
        problems.push("computed pairing has operations with two or more inputs".into());
    }
    let failures = computed.check_structure();
    if !failures.is_empty() {
        problems.push(format!("structure fails at {}", failures[0]));
    }
    // Each printed term on the barred factor expands over the generators of the other factor.
    let mut groups: BTreeMap<String, usize> = BTreeMap::new();
    for d in &dropped {
        let r = &d.record;
        let bar = |g: &str| g.split('|').next().unwrap_or(g).to_string();
        let key = format!(
            "{}{} ↦ {} ⊗ {}",
            bar(&r.in_gen),
            r.alg_in.iter().map(|a| format!(", {a}")).collect::<String>(),
            r.alg_out.as_deref().unwrap_or("1"),
            bar(&r.out_gen)
        );
        *groups.entry(key).or_default() += 1;
    }
    let grouped: Vec<String> = groups.iter().map(|(k, n)| format!("{k} ×{n}")).collect();
    let summary = format!(
        "{} generators; {} δ¹₁ and {} δ¹₂ terms agree term for term; {} idempotent-null printed terms dropped, {} records ({})",
        c.generators.len(),
        counts.get(&1).copied().unwrap_or(0),
        counts.get(&2).copied().unwrap_or(0),
        groups.len(),
        dropped.len(),
        grouped.join("; ")
    );
    if problems.is_empty() {
        Ok(Report::new("az-pairing", Status::Pass, summary))
    } else {
        Ok(Report::new("az-pairing", Status::Fail, problems.join("; ")))
    }
}

/// Structure of every shipped module and box product, and the solid-torus maps.
pub fn verify_catalog(cat: &Catalog) -> Result<Report, PaperDataError> {
    let mut problems = Vec::new();
    let mut checked = 0;
    for name in cat.module_names() {
        match cat.load(name) {
            Ok((m, _)) => {
                checked += 1;
                if let Some(f) = m.check_structure().first() {
                    problems.push(format!("{name}: {f}"));
                }
            }
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    let mut products: Vec<String> = Vec::new();
    for name in cat.morphism_names() {
        let def = cat.morphism_definition(name)?;
        for e in [&def.source, &def.target] {
            if e.contains('*') && !products.contains(e) {
                products.push(e.clone());
            }
        }
    }
    for e in &products {
        match cat.resolve(e) {
            Ok(m) => {
                checked += 1;
                if let Some(f) = m.check_structure().first() {
                    problems.push(format!("{e}: {f}"));
                }
            }
            Err(err) => problems.push(format!("{e}: {err}")),
        }
    }

    let gp = cat.gprime();
    let computed = cat.resolve(&format!("{}*{}", gp.az, gp.dblbar_infinity))?.to_definition("az_box_dblbar_infty");
    let printed = cat.resolve("az_box_dblbar_infty")?.to_definition("az_box_dblbar_infty");
    if computed != printed {
        problems.push("computed AZ ⊠ doubled-bar ∞ torus differs from its transcription".into());
    }

    let phi = cat.d_morphism("map_phi")?;
    if let Some(f) = phi.chain_map_failures().first() {
        problems.push(format!("map_phi is not a chain map at {f}"));
    }
    let cone = phi.mapping_cone();
    if let Some(f) = cone.check_structure().first() {
        problems.push(format!("Cone(map_phi): {f}"));
    }
    let reduced = cancel_idempotent_arrows(&cone);
    if iso_as_data(&reduced, &cat.type_d("cfd_zero")?).is_none() {
        problems.push(format!("Cone(map_phi) reduces to {} generators, not to cfd_zero", reduced.len()));
    }
    for case in gp.cases.values() {
        match cat.a_morphism(&case.psi) {
            Ok(psi) => {
                if let Some(f) = psi.chain_map_failures().first() {
                    problems.push(format!("{}: {f}", case.psi));
                }
            }
            Err(e) => problems.push(format!("{}: {e}", case.psi)),
        }
    }
    if let Err(e) = cat.d_morphism(&gp.map) {
        problems.push(format!("{}: {e}", gp.map));
    }
    if problems.is_empty() {
        Ok(Report::new(
            "catalog",
            Status::Pass,
            format!(
                "{checked} modules and products pass the structure equations; AZ ⊠ doubled-bar ∞ matches its transcription; \
                 map_phi is a chain map whose cone reduces to cfd_zero; ψ maps are chain maps"
            ),
        ))
    } else {
        Ok(Report::new("catalog", Status::Fail, problems.join("; ")))
    }
}

pub const CHECKS: &[&str] = &["omega", "az-pairing", "gprime-K", "gprime-U", "basis-change", "catalog"];

/// Runs one named check; `basis-change` covers k = 1..=4.
pub fn run_check(cat: &Catalog, name: &str, max_arity: usize) -> Result<Report, PaperDataError> {
    match name {
        "omega" => verify_omega(cat, max_arity),
        "az-pairing" => verify_az_pairing(cat),
        "gprime-K" => verify_g_prime(cat, "K"),
        "gprime-U" => verify_g_prime(cat, "U"),
        "basis-change" => {
            let reports: Vec<Report> = (1..=4).map(verify_basis_change).collect();
            let failed: Vec<&Report> = reports.iter().filter(|r| !r.passed()).collect();
            Ok(if failed.is_empty() {
                Report::new("basis-change", Status::Pass, format!("k = 1..4: {}", reports[3].detail))
            } else {
                Report::new(
                    "basis-change",
                    Status::Fail,
                    failed.iter().map(|r| format!("{}: {}", r.check, r.detail)).collect::<Vec<_>>().join("; "),
                )
            })
        }
        "catalog" => verify_catalog(cat),
        other => Err(PaperDataError::Config(format!("unknown check {other:?}; expected one of {}", CHECKS.join(", ")))),
    }
}

/// Every check, in a fixed order. Configuration errors abort; other errors become failures.
pub fn run_all(cat: &Catalog, max_arity: usize) -> Result<Vec<Report>, PaperDataError> {
    if max_arity < 4 {
        return Err(PaperDataError::Config(format!("max arity {max_arity} is below 4")));
    }
    Ok(CHECKS.par_iter().map(|c| Report::from_result(c, run_check(cat, c, max_arity))).collect())
}

pub fn default_max_arity() -> usize {
    DEFAULT_ARITY_CAP
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_small_arity_is_config_error() {
        let cat = Catalog::builtin();
        assert!(matches!(verify_omega(&cat, 3), Err(PaperDataError::Config(_))));
        assert!(matches!(run_all(&cat, 2), Err(PaperDataError::Config(_))));
    }

    #[test]
    fn pristine_catalog_passes_everything() {
        let cat = Catalog::builtin();
        for r in run_all(&cat, default_max_arity()).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn mutated_omega_fails_only_omega() {
        let mut cat = Catalog::builtin();
        let def = cat.morphism_definition_mut("omega").unwrap();
        let before = def.terms.len();
        def.terms.retain(|t| !(t.in_gen == "i0" && t.alg_in == ["r13", "r12"]));
        assert_eq!(def.terms.len(), before - 1);
        let reports = run_all(&cat, default_max_arity()).unwrap();
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.check.as_str()).collect();
        assert_eq!(failed, ["omega"]);
    }

    #[test]
    fn unknown_check() {
        assert!(run_check(&Catalog::builtin(), "nope", 6).is_err());
    }
}
