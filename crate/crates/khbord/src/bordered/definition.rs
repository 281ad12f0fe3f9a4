//! JSON definition files for modules and morphisms.
//!
//! `alg_out: "1"` stands for the unit, i.e. the idempotent under the input
//! generator's left (type D side) idempotent.

use serde::{Deserialize, Serialize};

use super::algebra::{Algebra, Elt};
use super::modules::{AOps, DAOps, Gen, Generator, TypeA, TypeD, TypeDA};
use super::morphism::{AMorphism, DAMorphism, DMorphism};
use super::sum::Sum;
use super::BorderedError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_idem: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_idem: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpRecord {
    pub arity: usize,
    pub in_gen: String,
    pub alg_in: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alg_out: Option<String>,
    pub out_gen: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDefinition {
    pub kind: String,
    #[serde(default)]
    pub name: String,
    pub generators: Vec<GeneratorRecord>,
    pub ops: Vec<OpRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TermRecord {
    pub in_gen: String,
    #[serde(default)]
    pub alg_in: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alg_out: Option<String>,
    pub out_gen: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDefinition {
    pub kind: String,
    #[serde(default)]
    pub name: String,
    pub source: String,
    pub target: String,
    pub terms: Vec<TermRecord>,
}

/// A record left out of a lenient load, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dropped {
    pub record: OpRecord,
    pub reason: String,
}

fn idem_of(g: &GeneratorRecord, side: &str) -> Result<u8, BorderedError> {
    let v = match side {
        "left" => g.left_idem.or(g.right_idem),
        _ => g.right_idem.or(g.left_idem),
    };
    v.ok_or_else(|| BorderedError::Idempotent { generator: g.name.clone(), detail: "no idempotent given".into() })
}

fn coefficient(alg: &Algebra, out: Option<&str>, unit_idem: u8) -> Result<Elt, BorderedError> {
    match out {
        None | Some("1") => Ok(alg.idempotent(unit_idem)),
        Some(s) => alg.elt(s),
    }
}

fn chords(alg: &Algebra, names: &[String]) -> Result<Vec<Elt>, BorderedError> {
    names.iter().map(|n| alg.elt(n)).collect()
}

fn check_arity(op: &OpRecord) -> Result<(), BorderedError> {
    if op.arity != op.alg_in.len() + 1 {
        return Err(BorderedError::Arity(format!(
            "{}: arity {} with {} algebra inputs",
            op.in_gen,
            op.arity,
            op.alg_in.len()
        )));
    }
    Ok(())
}

fn unit_name(alg: &Algebra, a: Elt, unit_idem: u8) -> Option<String> {
    (a == alg.idempotent(unit_idem)).then(|| "1".to_string())
}

impl ModuleDefinition {
    pub fn from_json(s: &str) -> Result<Self, BorderedError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("definitions serialize");
        s.push('\n');
        s
    }

    fn expect_kind(&self, kind: &str) -> Result<(), BorderedError> {
        if self.kind != kind {
            return Err(BorderedError::Kind(format!("{} is {}, expected {kind}", self.name, self.kind)));
        }
        Ok(())
    }

    fn generators(&self) -> Result<Vec<Generator>, BorderedError> {
        self.generators
            .iter()
            .map(|g| Ok(Generator::new(g.name.clone(), idem_of(g, "left")?, idem_of(g, "right")?)))
            .collect()
    }

    pub fn to_type_d(&self, alg: &'static Algebra) -> Result<TypeD, BorderedError> {
        self.expect_kind("D")?;
        let gens = self.generators()?;
        let index = name_index(&gens)?;
        let mut delta = vec![Sum::new(); gens.len()];
        for op in &self.ops {
            check_arity(op)?;
            if !op.alg_in.is_empty() {
                return Err(BorderedError::Arity(format!("type D operation on {} has algebra inputs", op.in_gen)));
            }
            let x = look(&index, &op.in_gen)?;
            let y = look(&index, &op.out_gen)?;
            let a = coefficient(alg, op.alg_out.as_deref(), gens[x].left)?;
            delta[x].toggle((a, y));
        }
        TypeD::new(alg, gens, delta)
    }

    pub fn to_type_a(&self, alg: &'static Algebra) -> Result<TypeA, BorderedError> {
        self.expect_kind("A")?;
        let gens = self.generators()?;
        let index = name_index(&gens)?;
        let mut ops = AOps::new();
        for op in &self.ops {
            check_arity(op)?;
            let x = look(&index, &op.in_gen)?;
            let y = look(&index, &op.out_gen)?;
            ops.entry((x, chords(alg, &op.alg_in)?)).or_default().toggle(y);
        }
        TypeA::new(alg, gens, ops)
    }

    pub fn to_type_da(&self, alg: &'static Algebra) -> Result<TypeDA, BorderedError> {
        self.expect_kind("DA")?;
        let gens = self.generators()?;
        let ops = self.da_ops(alg, &gens)?;
        TypeDA::new(alg, gens, ops)
    }

    /// Loads a DA definition, leaving out records whose idempotents do not match.
    pub fn to_type_da_lenient(&self, alg: &'static Algebra) -> Result<(TypeDA, Vec<Dropped>), BorderedError> {
        self.expect_kind("DA")?;
        let gens = self.generators()?;
        let index = name_index(&gens)?;
        let mut kept = Vec::new();
        let mut dropped = Vec::new();
        for op in &self.ops {
            let mut single = self.clone();
            single.ops = vec![op.clone()];
            let ops = single.da_ops(alg, &gens)?;
            match TypeDA::new(alg, gens.clone(), ops) {
                Ok(_) => kept.push(op.clone()),
                Err(BorderedError::Idempotent { detail, .. }) => {
                    let _ = look(&index, &op.in_gen)?;
                    dropped.push(Dropped { record: op.clone(), reason: detail })
                }
                Err(e) => return Err(e),
            }
        }
        let mut def = self.clone();
        def.ops = kept;
        Ok((def.to_type_da(alg)?, dropped))
    }

    fn da_ops(&self, alg: &'static Algebra, gens: &[Generator]) -> Result<DAOps, BorderedError> {
        let index = name_index(gens)?;
        let mut ops = DAOps::new();
        for op in &self.ops {
            check_arity(op)?;
            let x = look(&index, &op.in_gen)?;
            let y = look(&index, &op.out_gen)?;
            let a = coefficient(alg, op.alg_out.as_deref(), gens[x].left)?;
            ops.entry((x, chords(alg, &op.alg_in)?)).or_default().toggle((a, y));
        }
        Ok(ops)
    }
}

fn name_index(gens: &[Generator]) -> Result<std::collections::HashMap<&str, Gen>, BorderedError> {
    let mut m = std::collections::HashMap::new();
    for (i, g) in gens.iter().enumerate() {
        if m.insert(g.name.as_str(), i).is_some() {
            return Err(BorderedError::DuplicateGenerator(g.name.clone()));
        }
    }
    Ok(m)
}

fn look(index: &std::collections::HashMap<&str, Gen>, name: &str) -> Result<Gen, BorderedError> {
    index.get(name).copied().ok_or_else(|| BorderedError::UnknownName(name.to_string()))
}

fn gen_records(gens: &[Generator], left: bool, right: bool) -> Vec<GeneratorRecord> {
    let mut v: Vec<GeneratorRecord> = gens
        .iter()
        .map(|g| GeneratorRecord {
            name: g.name.clone(),
            left_idem: left.then_some(g.left),
            right_idem: right.then_some(g.right),
        })
        .collect();
    v.sort_by(|a, b| a.name.cmp(&b.name));
    v
}

impl TypeD {
    /// Canonical definition: generators and operations sorted by name.
    pub fn to_definition(&self, name: &str) -> ModuleDefinition {
        let alg = self.algebra();
        let gens = self.generators();
        let mut ops = Vec::new();
        for x in 0..self.len() {
            for &(a, y) in self.delta(x) {
                ops.push(OpRecord {
                    arity: 1,
                    in_gen: gens[x].name.clone(),
                    alg_in: Vec::new(),
                    alg_out: Some(unit_name(alg, a, gens[x].left).unwrap_or_else(|| alg.name_of(a).to_string())),
                    out_gen: gens[y].name.clone(),
                });
            }
        }
        ops.sort();
        ModuleDefinition { kind: "D".into(), name: name.into(), generators: gen_records(gens, true, false), ops }
    }
}

impl TypeA {
    pub fn to_definition(&self, name: &str) -> ModuleDefinition {
        let alg = self.algebra();
        let gens = self.generators();
        let mut ops = Vec::new();
        for ((x, s), out) in self.ops() {
            for &y in out {
                ops.push(OpRecord {
                    arity: s.len() + 1,
                    in_gen: gens[*x].name.clone(),
                    alg_in: s.iter().map(|&a| alg.name_of(a).to_string()).collect(),
                    alg_out: None,
                    out_gen: gens[y].name.clone(),
                });
            }
        }
        ops.sort();
        ModuleDefinition { kind: "A".into(), name: name.into(), generators: gen_records(gens, false, true), ops }
    }
}

impl TypeDA {
    pub fn to_definition(&self, name: &str) -> ModuleDefinition {
        let alg = self.algebra();
        let gens = self.generators();
        let mut ops = Vec::new();
        for ((x, s), out) in self.ops() {
            for &(a, y) in out {
                ops.push(OpRecord {
                    arity: s.len() + 1,
                    in_gen: gens[*x].name.clone(),
                    alg_in: s.iter().map(|&a| alg.name_of(a).to_string()).collect(),
                    alg_out: Some(unit_name(alg, a, gens[*x].left).unwrap_or_else(|| alg.name_of(a).to_string())),
                    out_gen: gens[y].name.clone(),
                });
            }
        }
        ops.sort();
        ModuleDefinition { kind: "DA".into(), name: name.into(), generators: gen_records(gens, true, true), ops }
    }
}

impl MorphismDefinition {
    pub fn from_json(s: &str) -> Result<Self, BorderedError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("definitions serialize");
        s.push('\n');
        s
    }

    fn expect_kind(&self, kind: &str) -> Result<(), BorderedError> {
        if self.kind != kind {
            return Err(BorderedError::Kind(format!("{} is {}, expected {kind}", self.name, self.kind)));
        }
        Ok(())
    }

    pub fn to_d_morphism(&self, source: &TypeD, target: &TypeD) -> Result<DMorphism, BorderedError> {
        self.expect_kind("D-morphism")?;
        let alg = source.algebra();
        let mut map = vec![Sum::new(); source.len()];
        for t in &self.terms {
            if !t.alg_in.is_empty() {
                return Err(BorderedError::Arity(format!("type D morphism term on {} has algebra inputs", t.in_gen)));
            }
            let x = source.index_of(&t.in_gen)?;
            let y = target.index_of(&t.out_gen)?;
            map[x].toggle((coefficient(alg, t.alg_out.as_deref(), source.idem(x))?, y));
        }
        DMorphism::new(source.clone(), target.clone(), map)
    }

    pub fn to_da_morphism(&self, source: &TypeDA, target: &TypeDA) -> Result<DAMorphism, BorderedError> {
        self.expect_kind("DA-morphism")?;
        let alg = source.algebra();
        let mut map = DAOps::new();
        for t in &self.terms {
            let x = source.index_of(&t.in_gen)?;
            let y = target.index_of(&t.out_gen)?;
            let a = coefficient(alg, t.alg_out.as_deref(), source.generators()[x].left)?;
            map.entry((x, chords(alg, &t.alg_in)?)).or_default().toggle((a, y));
        }
        DAMorphism::new(source.clone(), target.clone(), map)
    }

    pub fn to_a_morphism(&self, source: &TypeA, target: &TypeA) -> Result<AMorphism, BorderedError> {
        self.expect_kind("A-morphism")?;
        let alg = source.algebra();
        let mut map = AOps::new();
        for t in &self.terms {
            let x = source.index_of(&t.in_gen)?;
            let y = target.index_of(&t.out_gen)?;
            map.entry((x, chords(alg, &t.alg_in)?)).or_default().toggle(y);
        }
        AMorphism::new(source.clone(), target.clone(), map)
    }
}
