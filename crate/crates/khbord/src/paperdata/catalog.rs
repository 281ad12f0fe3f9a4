//! The shipped module and morphism definitions, addressed by name.
//!
//! Names may be box products written `a*b*c`, grouped from the left.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bordered::definition::Dropped;
use crate::bordered::{
    box_a_da, box_da_d, box_da_da, AMorphism, Algebra, BorderedError, BoxOptions, DAMorphism, DMorphism,
    ModuleDefinition, MorphismDefinition, TypeA, TypeD, TypeDA,
};

use super::PaperDataError;

const MODULE_FILES: &[&str] = &[
    include_str!("../../data/id_bimodule.json"),
    include_str!("../../data/az.json"),
    include_str!("../../data/azbar.json"),
    include_str!("../../data/azbar_box_az.json"),
    include_str!("../../data/cfd_minus1.json"),
    include_str!("../../data/cfd_dblbar_infty.json"),
    include_str!("../../data/cfd_infty.json"),
    include_str!("../../data/cfd_zero.json"),
    include_str!("../../data/az_box_dblbar_infty.json"),
    include_str!("../../data/cfa_K.json"),
    include_str!("../../data/cfa_K_bar.json"),
    include_str!("../../data/cfa_U.json"),
    include_str!("../../data/cfa_U_bar.json"),
];

const MORPHISM_FILES: &[&str] = &[
    include_str!("../../data/map_G.json"),
    include_str!("../../data/map_phi.json"),
    include_str!("../../data/omega.json"),
    include_str!("../../data/omega_arity4.json"),
    include_str!("../../data/psi_K.json"),
    include_str!("../../data/psi_U.json"),
];

const GPRIME: &str = include_str!("../../data/gprime.json");
const MANIFEST: &str = include_str!("../../data/manifest.json");

/// Definitions that are verbatim transcriptions and may carry idempotent-null rows.
pub const TRANSCRIPTIONS: &[&str] = &["azbar_box_az", "az_box_dblbar_infty"];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GPrimeEvaluation {
    pub input: String,
    pub stages: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GPrimeCase {
    pub module: String,
    pub bar_module: String,
    pub psi: String,
    pub eta: BTreeMap<String, String>,
    pub evaluations: Vec<GPrimeEvaluation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GPrimeData {
    pub identity: String,
    pub omega: String,
    /// Higher components of Ω absent from the printed table.
    pub omega_completion: String,
    pub az: String,
    pub azbar: String,
    pub map: String,
    pub infinity: String,
    pub dblbar_infinity: String,
    pub minus_one: String,
    pub solid_torus_eta: BTreeMap<String, String>,
    pub cases: BTreeMap<String, GPrimeCase>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub kind: String,
    pub citation: String,
    pub status: String,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

/// A resolved module expression.
#[derive(Clone, Debug)]
pub enum Built {
    D(TypeD),
    A(TypeA),
    DA(TypeDA),
}

impl Built {
    pub fn kind(&self) -> &'static str {
        match self {
            Built::D(_) => "D",
            Built::A(_) => "A",
            Built::DA(_) => "DA",
        }
    }

    pub fn check_structure(&self) -> Vec<crate::bordered::Failure> {
        match self {
            Built::D(m) => m.check_structure(),
            Built::A(m) => m.check_structure(),
            Built::DA(m) => m.check_structure(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Built::D(m) => m.len(),
            Built::A(m) => m.len(),
            Built::DA(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_definition(&self, name: &str) -> ModuleDefinition {
        match self {
            Built::D(m) => m.to_definition(name),
            Built::A(m) => m.to_definition(name),
            Built::DA(m) => m.to_definition(name),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    alg: &'static Algebra,
    modules: BTreeMap<String, ModuleDefinition>,
    morphisms: BTreeMap<String, MorphismDefinition>,
    gprime: GPrimeData,
    manifest: Manifest,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        let mut cat = Catalog {
            alg: Algebra::torus(),
            modules: BTreeMap::new(),
            morphisms: BTreeMap::new(),
            gprime: serde_json::from_str(GPRIME).expect("shipped evaluation data parses"),
            manifest: serde_json::from_str(MANIFEST).expect("shipped manifest parses"),
        };
        for s in MODULE_FILES {
            cat.insert_module(ModuleDefinition::from_json(s).expect("shipped module parses"));
        }
        for s in MORPHISM_FILES {
            cat.insert_morphism(MorphismDefinition::from_json(s).expect("shipped morphism parses"));
        }
        cat
    }

    pub fn algebra(&self) -> &'static Algebra {
        self.alg
    }

    pub fn insert_module(&mut self, def: ModuleDefinition) {
        self.modules.insert(def.name.clone(), def);
    }

    pub fn insert_morphism(&mut self, def: MorphismDefinition) {
        self.morphisms.insert(def.name.clone(), def);
    }

    pub fn module_names(&self) -> impl Iterator<Item = &str> {
        self.modules.keys().map(String::as_str)
    }

    pub fn morphism_names(&self) -> impl Iterator<Item = &str> {
        self.morphisms.keys().map(String::as_str)
    }

    pub fn module_definition(&self, name: &str) -> Result<&ModuleDefinition, PaperDataError> {
        self.modules.get(name).ok_or_else(|| BorderedError::UnknownName(name.to_string()).into())
    }

    pub fn morphism_definition(&self, name: &str) -> Result<&MorphismDefinition, PaperDataError> {
        self.morphisms.get(name).ok_or_else(|| BorderedError::UnknownName(name.to_string()).into())
    }

    pub fn morphism_definition_mut(&mut self, name: &str) -> Option<&mut MorphismDefinition> {
        self.morphisms.get_mut(name)
    }

    pub fn module_definition_mut(&mut self, name: &str) -> Option<&mut ModuleDefinition> {
        self.modules.get_mut(name)
    }

    pub fn gprime(&self) -> &GPrimeData {
        &self.gprime
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    /// Loads one named definition; transcriptions drop idempotent-null rows.
    pub fn load(&self, name: &str) -> Result<(Built, Vec<Dropped>), PaperDataError> {
        let def = self.module_definition(name)?;
        Ok(match def.kind.as_str() {
            "D" => (Built::D(def.to_type_d(self.alg)?), Vec::new()),
            "A" => (Built::A(def.to_type_a(self.alg)?), Vec::new()),
            "DA" if TRANSCRIPTIONS.contains(&name) => {
                let (m, dropped) = def.to_type_da_lenient(self.alg)?;
                (Built::DA(m), dropped)
            }
            "DA" => (Built::DA(def.to_type_da(self.alg)?), Vec::new()),
            other => return Err(BorderedError::Kind(format!("{name} has unknown kind {other}")).into()),
        })
    }

    /// Resolves a name or a left-grouped box product `a*b*...`.
    pub fn resolve(&self, expr: &str) -> Result<Built, PaperDataError> {
        let opts = BoxOptions::default();
        let mut parts = expr.split('*').map(str::trim);
        let first = parts.next().unwrap_or_default();
        let mut acc = self.load(first)?.0;
        for p in parts {
            let rhs = self.load(p)?.0;
            acc = match (acc, rhs) {
                (Built::DA(a), Built::DA(b)) => Built::DA(box_da_da(&a, &b, opts)?),
                (Built::DA(a), Built::D(b)) => Built::D(box_da_d(&a, &b, opts)?),
                (Built::A(a), Built::DA(b)) => Built::A(box_a_da(&a, &b, opts)?),
                (a, b) => {
                    return Err(BorderedError::Kind(format!(
                        "cannot box a type {} structure with a type {} structure in {expr}",
                        a.kind(),
                        b.kind()
                    ))
                    .into())
                }
            };
        }
        Ok(acc)
    }

    pub fn type_d(&self, expr: &str) -> Result<TypeD, PaperDataError> {
        match self.resolve(expr)? {
            Built::D(m) => Ok(m),
            b => Err(BorderedError::Kind(format!("{expr} is type {}, expected D", b.kind())).into()),
        }
    }

    pub fn type_a(&self, expr: &str) -> Result<TypeA, PaperDataError> {
        match self.resolve(expr)? {
            Built::A(m) => Ok(m),
            b => Err(BorderedError::Kind(format!("{expr} is type {}, expected A", b.kind())).into()),
        }
    }

    pub fn type_da(&self, expr: &str) -> Result<TypeDA, PaperDataError> {
        match self.resolve(expr)? {
            Built::DA(m) => Ok(m),
            b => Err(BorderedError::Kind(format!("{expr} is type {}, expected DA", b.kind())).into()),
        }
    }

    pub fn d_morphism(&self, name: &str) -> Result<DMorphism, PaperDataError> {
        let def = self.morphism_definition(name)?;
        Ok(def.to_d_morphism(&self.type_d(&def.source)?, &self.type_d(&def.target)?)?)
    }

    pub fn da_morphism(&self, name: &str) -> Result<DAMorphism, PaperDataError> {
        let def = self.morphism_definition(name)?;
        Ok(def.to_da_morphism(&self.type_da(&def.source)?, &self.type_da(&def.target)?)?)
    }

    /// Ω as used downstream: the printed components plus the computed completion.
    pub fn omega(&self) -> Result<DAMorphism, PaperDataError> {
        let gp = &self.gprime;
        Ok(self.da_morphism(&gp.omega)?.plus(&self.da_morphism(&gp.omega_completion)?)?)
    }

    pub fn a_morphism(&self, name: &str) -> Result<AMorphism, PaperDataError> {
        let def = self.morphism_definition(name)?;
        Ok(def.to_a_morphism(&self.type_a(&def.source)?, &self.type_a(&def.target)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_module_loads() {
        let cat = Catalog::builtin();
        assert_eq!(cat.module_names().count(), MODULE_FILES.len());
        for name in cat.module_names() {
            cat.load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn products_resolve() {
        let cat = Catalog::builtin();
        assert_eq!(cat.resolve("azbar*az").unwrap().len(), 30);
        assert_eq!(cat.resolve("az*cfd_dblbar_infty").unwrap().kind(), "D");
        assert!(cat.resolve("cfd_minus1*az").is_err());
        assert!(cat.resolve("nothing").is_err());
    }

    #[test]
    fn manifest_covers_every_file() {
        let cat = Catalog::builtin();
        let files: Vec<_> = cat.manifest().entries.iter().map(|e| e.file.trim_end_matches(".json").to_string()).collect();
        for name in cat.module_names().chain(cat.morphism_names()) {
            assert!(files.iter().any(|f| f == name), "{name} missing from manifest");
        }
    }
}
