//! Type D, type A and type DA structures over a strand algebra.
//!
//! Operations only take chord inputs. Idempotent inputs follow strict
//! unitality: `δ(x, ι) = ι_L(x) ⊗ x` and `m(x, ι) = x` when ι matches the
//! generator, and any idempotent inside a longer input kills the term.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::algebra::{Algebra, Elt};
use super::sum::Sum;
use super::BorderedError;

pub type Gen = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub name: String,
    /// Idempotent on the type D (left) side; equal to `right` for one-sided modules.
    pub left: u8,
    /// Idempotent on the type A (right) side.
    pub right: u8,
}

impl Generator {
    pub fn new(name: impl Into<String>, left: u8, right: u8) -> Self {
        Generator { name: name.into(), left, right }
    }
}

#[derive(Clone, Debug, Default)]
struct Names(HashMap<String, Gen>);

impl Names {
    fn build(gens: &[Generator]) -> Result<Names, BorderedError> {
        let mut m = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if m.insert(g.name.clone(), i).is_some() {
                return Err(BorderedError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Names(m))
    }

    fn get(&self, name: &str) -> Result<Gen, BorderedError> {
        self.0.get(name).copied().ok_or_else(|| BorderedError::UnknownName(name.to_string()))
    }
}

/// A violated structure relation: the residue left over at one generator and input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub generator: String,
    pub inputs: String,
    pub residue: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ ({}): {} ≠ 0", self.generator, self.inputs, self.residue)
    }
}

pub(crate) fn show_terms(alg: &Algebra, gens: &[Generator], s: &Sum<(Elt, Gen)>) -> String {
    s.iter().map(|&(a, y)| format!("{} ⊗ {}", alg.name_of(a), gens[y].name)).collect::<Vec<_>>().join(" + ")
}

pub(crate) fn show_gens(gens: &[Generator], s: &Sum<Gen>) -> String {
    s.iter().map(|&y| gens[y].name.clone()).collect::<Vec<_>>().join(" + ")
}

/// Check that `a ⊗ y` can appear in δ of a generator sitting over `from` on the left.
fn coefficient_ok(alg: &Algebra, from: u8, a: Elt, to: u8) -> bool {
    alg.left(a) == from && alg.right(a) == to
}

fn inputs_ok(alg: &Algebra, from: u8, inputs: &[Elt], to: u8) -> bool {
    let mut at = from;
    for &a in inputs {
        if alg.is_idempotent(a) || alg.left(a) != at {
            return false;
        }
        at = alg.right(a);
    }
    at == to
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct TypeD {
    alg: &'static Algebra,
    gens: Vec<Generator>,
    names: Names,
    delta: Vec<Sum<(Elt, Gen)>>,
}

impl TypeD {
    pub fn new(alg: &'static Algebra, gens: Vec<Generator>, delta: Vec<Sum<(Elt, Gen)>>) -> Result<Self, BorderedError> {
        let names = Names::build(&gens)?;
        assert_eq!(gens.len(), delta.len(), "one δ entry per generator");
        for (x, d) in delta.iter().enumerate() {
            for &(a, y) in d {
                if y >= gens.len() {
                    return Err(BorderedError::UnknownName(format!("generator #{y}")));
                }
                if !coefficient_ok(alg, gens[x].left, a, gens[y].left) {
                    return Err(BorderedError::Idempotent {
                        generator: gens[x].name.clone(),
                        detail: format!("{} ⊗ {}", alg.name_of(a), gens[y].name),
                    });
                }
            }
        }
        Ok(TypeD { alg, gens, names, delta })
    }

    pub fn zero(alg: &'static Algebra) -> Self {
        TypeD { alg, gens: Vec::new(), names: Names::default(), delta: Vec::new() }
    }

    pub fn algebra(&self) -> &'static Algebra {
        self.alg
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn idem(&self, x: Gen) -> u8 {
        self.gens[x].left
    }

    pub fn index_of(&self, name: &str) -> Result<Gen, BorderedError> {
        self.names.get(name)
    }

    pub fn delta(&self, x: Gen) -> &Sum<(Elt, Gen)> {
        &self.delta[x]
    }

    pub fn show(&self, s: &Sum<(Elt, Gen)>) -> String {
        show_terms(self.alg, &self.gens, s)
    }

    /// All δ-paths from `y` of length at most `max_len`: (coefficients, endpoint), with multiplicity.
    pub fn paths(&self, y: Gen, max_len: usize) -> Vec<(Vec<Elt>, Gen)> {
        let mut out = vec![(Vec::new(), y)];
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (cs, cur) in &frontier {
                for &(c, z) in &self.delta[*cur] {
                    let mut t = cs.clone();
                    t.push(c);
                    next.push((t, z));
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// The relation Σ μ₂(a, b) ⊗ z over two-step paths x → a⊗y → b⊗z must vanish.
    pub fn check_structure(&self) -> Vec<Failure> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            let mut res = Sum::new();
            for &(a, y) in &self.delta[x] {
                for &(b, z) in &self.delta[y] {
                    if let Some(ab) = self.alg.mul(a, b) {
                        res.toggle((ab, z));
                    }
                }
            }
            if !res.is_zero() {
                out.push(Failure { generator: self.gens[x].name.clone(), inputs: String::new(), residue: self.show(&res) });
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------

pub type AOps = BTreeMap<(Gen, Vec<Elt>), Sum<Gen>>;

#[derive(Clone, Debug)]
pub struct TypeA {
    alg: &'static Algebra,
    gens: Vec<Generator>,
    names: Names,
    ops: AOps,
    max_in: usize,
}

impl TypeA {
    pub fn new(alg: &'static Algebra, gens: Vec<Generator>, mut ops: AOps) -> Result<Self, BorderedError> {
        let names = Names::build(&gens)?;
        ops.retain(|_, v| !v.is_zero());
        for ((x, s), out) in &ops {
            for &y in out {
                if !inputs_ok(alg, gens[*x].right, s, gens[y].right) {
                    return Err(BorderedError::Idempotent {
                        generator: gens[*x].name.clone(),
                        detail: format!("m({}; {}) ∋ {}", gens[*x].name, alg.seq_name(s), gens[y].name),
                    });
                }
            }
        }
        let max_in = ops.keys().map(|(_, s)| s.len()).max().unwrap_or(0);
        Ok(TypeA { alg, gens, names, ops, max_in })
    }

    pub fn algebra(&self) -> &'static Algebra {
        self.alg
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn idem(&self, x: Gen) -> u8 {
        self.gens[x].right
    }

    pub fn index_of(&self, name: &str) -> Result<Gen, BorderedError> {
        self.names.get(name)
    }

    pub fn ops(&self) -> &AOps {
        &self.ops
    }

    /// Largest number of algebra inputs of a nonzero operation.
    pub fn max_in(&self) -> usize {
        self.max_in
    }

    /// m(x, a1, ..., an), with strict unitality for idempotent inputs.
    pub fn act(&self, x: Gen, inputs: &[Elt]) -> Sum<Gen> {
        if inputs.iter().any(|&a| self.alg.is_idempotent(a)) {
            if inputs.len() == 1 && inputs[0] == self.alg.idempotent(self.gens[x].right) {
                return Sum::from_iter([x]);
            }
            return Sum::new();
        }
        self.ops.get(&(x, inputs.to_vec())).cloned().unwrap_or_default()
    }

    pub fn show(&self, s: &Sum<Gen>) -> String {
        show_gens(&self.gens, s)
    }

    /// A∞ relations up to twice the largest arity.
    pub fn check_structure(&self) -> Vec<Failure> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for s in self.alg.sequences(self.gens[x].right, 2 * self.max_in.max(1)) {
                let mut res = Sum::new();
                for i in 0..=s.len() {
                    for y in self.act(x, &s[..i]) {
                        res.add(&self.act(y, &s[i..]));
                    }
                }
                for merged in merges(self.alg, &s) {
                    res.add(&self.act(x, &merged));
                }
                if !res.is_zero() {
                    out.push(Failure {
                        generator: self.gens[x].name.clone(),
                        inputs: self.alg.seq_name(&s),
                        residue: self.show(&res),
                    });
                }
            }
        }
        out
    }
}

/// Every sequence obtained from `s` by multiplying one adjacent pair, skipping zero products.
pub(crate) fn merges(alg: &Algebra, s: &[Elt]) -> Vec<Vec<Elt>> {
    let mut out = Vec::new();
    for l in 0..s.len().saturating_sub(1) {
        if let Some(p) = alg.mul(s[l], s[l + 1]) {
            let mut t = s[..l].to_vec();
            t.push(p);
            t.extend_from_slice(&s[l + 2..]);
            out.push(t);
        }
    }
    out
}

// ---------------------------------------------------------------------------

pub type DAOps = BTreeMap<(Gen, Vec<Elt>), Sum<(Elt, Gen)>>;

#[derive(Clone, Debug)]
pub struct TypeDA {
    alg: &'static Algebra,
    gens: Vec<Generator>,
    names: Names,
    ops: DAOps,
    max_in: usize,
}

impl TypeDA {
    pub fn new(alg: &'static Algebra, gens: Vec<Generator>, mut ops: DAOps) -> Result<Self, BorderedError> {
        let names = Names::build(&gens)?;
        ops.retain(|_, v| !v.is_zero());
        for ((x, s), out) in &ops {
            for &(b, y) in out {
                let gx = &gens[*x];
                if y >= gens.len()
                    || !inputs_ok(alg, gx.right, s, gens[y].right)
                    || !coefficient_ok(alg, gx.left, b, gens[y].left)
                {
                    return Err(BorderedError::Idempotent {
                        generator: gx.name.clone(),
                        detail: format!(
                            "δ({}; {}) ∋ {} ⊗ {}",
                            gx.name,
                            alg.seq_name(s),
                            alg.name_of(b),
                            gens.get(y).map_or("?", |g| &g.name)
                        ),
                    });
                }
            }
        }
        let max_in = ops.keys().map(|(_, s)| s.len()).max().unwrap_or(0);
        Ok(TypeDA { alg, gens, names, ops, max_in })
    }

    /// The identity bimodule: one generator per idempotent, δ¹₂(ι, a) = a ⊗ ι'.
    pub fn identity(alg: &'static Algebra) -> Self {
        let gens: Vec<Generator> =
            (0..alg.n_idempotents() as u8).map(|i| Generator::new(alg.name_of(alg.idempotent(i)), i, i)).collect();
        let mut ops = DAOps::new();
        for c in alg.chords() {
            ops.insert((alg.left(c) as Gen, vec![c]), Sum::from_iter([(c, alg.right(c) as Gen)]));
        }
        TypeDA::new(alg, gens, ops).expect("identity bimodule is well formed")
    }

    pub fn algebra(&self) -> &'static Algebra {
        self.alg
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn index_of(&self, name: &str) -> Result<Gen, BorderedError> {
        self.names.get(name)
    }

    pub fn ops(&self) -> &DAOps {
        &self.ops
    }

    pub fn max_in(&self) -> usize {
        self.max_in
    }

    /// δ¹(x, a1, ..., an), with strict unitality for idempotent inputs.
    pub fn delta(&self, x: Gen, inputs: &[Elt]) -> Sum<(Elt, Gen)> {
        if inputs.iter().any(|&a| self.alg.is_idempotent(a)) {
            if inputs.len() == 1 && inputs[0] == self.alg.idempotent(self.gens[x].right) {
                return Sum::from_iter([(self.alg.idempotent(self.gens[x].left), x)]);
            }
            return Sum::new();
        }
        self.ops.get(&(x, inputs.to_vec())).cloned().unwrap_or_default()
    }

    pub fn show(&self, s: &Sum<(Elt, Gen)>) -> String {
        show_terms(self.alg, &self.gens, s)
    }

    /// Residue of the structure relation at `x` with inputs `s`.
    fn relation(&self, x: Gen, s: &[Elt]) -> Sum<(Elt, Gen)> {
        let mut res = Sum::new();
        for i in 0..=s.len() {
            for (b, y) in self.delta(x, &s[..i]) {
                for (c, z) in self.delta(y, &s[i..]) {
                    if let Some(bc) = self.alg.mul(b, c) {
                        res.toggle((bc, z));
                    }
                }
            }
        }
        for merged in merges(self.alg, s) {
            res.add(&self.delta(x, &merged));
        }
        res
    }

    /// DA structure relations for every input length up to twice the arity bound.
    pub fn check_structure(&self) -> Vec<Failure> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for s in self.alg.sequences(self.gens[x].right, 2 * self.max_in.max(1)) {
                let res = self.relation(x, &s);
                if !res.is_zero() {
                    out.push(Failure {
                        generator: self.gens[x].name.clone(),
                        inputs: self.alg.seq_name(&s),
                        residue: self.show(&res),
                    });
                }
            }
        }
        out
    }
}
