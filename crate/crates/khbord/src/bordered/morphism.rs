//! Morphisms of type D, type DA and type A structures, and their box products
//! with identity maps.

use crate::algebra::{ChainComplex, SparseMap};

use super::algebra::{Algebra, Elt};
use super::boxing::{box_a_d_parts, pair_name};
use super::modules::{merges, show_gens, show_terms, AOps, DAOps, Failure, Gen, Generator, TypeA, TypeD, TypeDA};
use super::sum::Sum;
use super::BorderedError;

/// Default arity cap for morphism differentials: inputs up to `cap - 1` chords.
pub const DEFAULT_ARITY_CAP: usize = 6;

fn idempotent_error(alg: &Algebra, gens: &[Generator], x: Gen, s: &[Elt], b: Elt, y: &str) -> BorderedError {
    BorderedError::Idempotent {
        generator: gens[x].name.clone(),
        detail: format!("f({}; {}) ∋ {} ⊗ {y}", gens[x].name, alg.seq_name(s), alg.name_of(b)),
    }
}

fn composable(alg: &Algebra, from: u8, s: &[Elt], to: u8) -> bool {
    let mut at = from;
    for &a in s {
        if alg.is_idempotent(a) || alg.left(a) != at {
            return false;
        }
        at = alg.right(a);
    }
    at == to
}

// ---------------------------------------------------------------------------

/// A morphism of type D structures, `f(x) = Σ a ⊗ y`.
#[derive(Clone, Debug)]
pub struct DMorphism {
    source: TypeD,
    target: TypeD,
    map: Vec<Sum<(Elt, Gen)>>,
}

impl DMorphism {
    pub fn new(source: TypeD, target: TypeD, map: Vec<Sum<(Elt, Gen)>>) -> Result<Self, BorderedError> {
        let alg = source.algebra();
        assert_eq!(map.len(), source.len(), "one entry per source generator");
        for (x, f) in map.iter().enumerate() {
            for &(a, y) in f {
                if y >= target.len() || alg.left(a) != source.idem(x) || alg.right(a) != target.idem(y) {
                    let yn = target.generators().get(y).map_or("?", |g| &g.name);
                    return Err(idempotent_error(alg, source.generators(), x, &[], a, yn));
                }
            }
        }
        Ok(DMorphism { source, target, map })
    }

    pub fn zero(source: TypeD, target: TypeD) -> Self {
        let map = vec![Sum::new(); source.len()];
        DMorphism { source, target, map }
    }

    pub fn source(&self) -> &TypeD {
        &self.source
    }

    pub fn target(&self) -> &TypeD {
        &self.target
    }

    pub fn apply(&self, x: Gen) -> &Sum<(Elt, Gen)> {
        &self.map[x]
    }

    /// `df = δ' ∘ f + f ∘ δ`, multiplied out with μ₂.
    pub fn differential(&self) -> DMorphism {
        let alg = self.source.algebra();
        let map = (0..self.source.len())
            .map(|x| {
                let mut acc = Sum::new();
                for &(a, y) in &self.map[x] {
                    for &(b, z) in self.target.delta(y) {
                        if let Some(ab) = alg.mul(a, b) {
                            acc.toggle((ab, z));
                        }
                    }
                }
                for &(a, y) in self.source.delta(x) {
                    for &(b, z) in &self.map[y] {
                        if let Some(ab) = alg.mul(a, b) {
                            acc.toggle((ab, z));
                        }
                    }
                }
                acc
            })
            .collect();
        DMorphism { source: self.source.clone(), target: self.target.clone(), map }
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(Sum::is_zero)
    }

    pub fn chain_map_failures(&self) -> Vec<Failure> {
        let d = self.differential();
        (0..self.source.len())
            .filter(|&x| !d.map[x].is_zero())
            .map(|x| Failure {
                generator: self.source.generators()[x].name.clone(),
                inputs: String::new(),
                residue: self.target.show(&d.map[x]),
            })
            .collect()
    }

    /// Source generators first, then target; clashing names get `s:` / `t:` prefixes.
    pub fn mapping_cone(&self) -> TypeD {
        let sg = self.source.generators();
        let tg = self.target.generators();
        let clash = |n: &str, other: &[Generator]| other.iter().any(|g| g.name == n);
        let mut gens: Vec<Generator> = sg
            .iter()
            .map(|g| {
                let name = if clash(&g.name, tg) { format!("s:{}", g.name) } else { g.name.clone() };
                Generator::new(name, g.left, g.right)
            })
            .collect();
        gens.extend(tg.iter().map(|g| {
            let name = if clash(&g.name, sg) { format!("t:{}", g.name) } else { g.name.clone() };
            Generator::new(name, g.left, g.right)
        }));
        let n = sg.len();
        let mut delta = Vec::with_capacity(gens.len());
        for x in 0..n {
            let mut d = self.source.delta(x).clone();
            d.add(&self.map[x].map(|&(a, y)| (a, y + n)));
            delta.push(d);
        }
        for y in 0..tg.len() {
            delta.push(self.target.delta(y).map(|&(a, z)| (a, z + n)));
        }
        TypeD::new(self.source.algebra(), gens, delta).expect("cone of a well-formed morphism is well formed")
    }

    pub fn show(&self) -> String {
        let mut lines = Vec::new();
        for x in 0..self.source.len() {
            if !self.map[x].is_zero() {
                lines.push(format!("{} ↦ {}", self.source.generators()[x].name, self.target.show(&self.map[x])));
            }
        }
        lines.join("\n")
    }
}

/// Cancels arrows with idempotent coefficients until none remain.
///
/// For `x → ι ⊗ y` every zig-zag `w → c ⊗ y`, `x → a ⊗ z` adds `c·a ⊗ z` to δ(w).
pub fn cancel_idempotent_arrows(d: &TypeD) -> TypeD {
    let alg = d.algebra();
    let mut alive: Vec<bool> = vec![true; d.len()];
    let mut delta: Vec<Sum<(Elt, Gen)>> = (0..d.len()).map(|x| d.delta(x).clone()).collect();
    loop {
        let found = (0..d.len()).filter(|&x| alive[x]).find_map(|x| {
            delta[x].iter().filter(|&&(a, y)| alg.is_idempotent(a) && y != x).map(|&(_, y)| y).min().map(|y| (x, y))
        });
        let Some((x, y)) = found else { break };
        let from_x: Vec<(Elt, Gen)> = delta[x].iter().copied().filter(|&(_, z)| z != x && z != y).collect();
        alive[x] = false;
        alive[y] = false;
        for w in 0..d.len() {
            if !alive[w] {
                continue;
            }
            let into_y: Vec<Elt> = delta[w].iter().filter(|&&(_, t)| t == y).map(|&(c, _)| c).collect();
            for &c in &into_y {
                for &(a, z) in &from_x {
                    if let Some(ca) = alg.mul(c, a) {
                        delta[w].toggle((ca, z));
                    }
                }
            }
        }
        for s in delta.iter_mut() {
            *s = s.iter().copied().filter(|&(_, t)| t != x && t != y).collect();
        }
    }
    let keep: Vec<Gen> = (0..d.len()).filter(|&x| alive[x]).collect();
    let new_index = |old: Gen| keep.binary_search(&old).expect("surviving generator");
    let gens = keep.iter().map(|&x| d.generators()[x].clone()).collect();
    let delta = keep.iter().map(|&x| delta[x].map(|&(a, y)| (a, new_index(y)))).collect();
    TypeD::new(alg, gens, delta).expect("cancellation preserves idempotents")
}

/// A bijection of generators carrying one differential onto the other, if any.
pub fn iso_as_data(a: &TypeD, b: &TypeD) -> Option<Vec<Gen>> {
    if a.len() != b.len() {
        return None;
    }
    fn extend(a: &TypeD, b: &TypeD, assign: &mut Vec<Gen>, used: &mut [bool]) -> bool {
        let x = assign.len();
        if x == a.len() {
            return (0..a.len()).all(|x| a.delta(x).map(|&(c, y)| (c, assign[y])) == *b.delta(assign[x]));
        }
        for y in 0..b.len() {
            if used[y] || a.idem(x) != b.idem(y) || a.delta(x).len() != b.delta(y).len() {
                continue;
            }
            used[y] = true;
            assign.push(y);
            if extend(a, b, assign, used) {
                return true;
            }
            assign.pop();
            used[y] = false;
        }
        false
    }
    let mut assign = Vec::new();
    let mut used = vec![false; b.len()];
    extend(a, b, &mut assign, &mut used).then_some(assign)
}

// ---------------------------------------------------------------------------

/// A morphism of type DA structures, `f(x, a1, ..., an) = Σ b ⊗ y`.
#[derive(Clone, Debug)]
pub struct DAMorphism {
    source: TypeDA,
    target: TypeDA,
    map: DAOps,
    max_in: usize,
}

impl DAMorphism {
    pub fn new(source: TypeDA, target: TypeDA, mut map: DAOps) -> Result<Self, BorderedError> {
        let alg = source.algebra();
        map.retain(|_, v| !v.is_zero());
        let (sg, tg) = (source.generators(), target.generators());
        for ((x, s), out) in &map {
            for &(b, y) in out {
                let ok = y < tg.len()
                    && composable(alg, sg[*x].right, s, tg[y].right)
                    && alg.left(b) == sg[*x].left
                    && alg.right(b) == tg[y].left;
                if !ok {
                    let yn = tg.get(y).map_or("?", |g| &g.name);
                    return Err(idempotent_error(alg, sg, *x, s, b, yn));
                }
            }
        }
        let max_in = map.keys().map(|(_, s)| s.len()).max().unwrap_or(0);
        Ok(DAMorphism { source, target, map, max_in })
    }

    pub fn zero(source: TypeDA, target: TypeDA) -> Self {
        DAMorphism { source, target, map: DAOps::new(), max_in: 0 }
    }

    pub fn source(&self) -> &TypeDA {
        &self.source
    }

    pub fn target(&self) -> &TypeDA {
        &self.target
    }

    pub fn terms(&self) -> &DAOps {
        &self.map
    }

    pub fn max_in(&self) -> usize {
        self.max_in
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    /// The sum `self + other` of two morphisms between the same structures.
    pub fn plus(&self, other: &DAMorphism) -> Result<DAMorphism, BorderedError> {
        if self.source.generators() != other.source.generators() || self.target.generators() != other.target.generators() {
            return Err(BorderedError::Kind("summands have different source or target".into()));
        }
        let mut map = self.map.clone();
        for (k, v) in &other.map {
            map.entry(k.clone()).or_default().add(v);
        }
        DAMorphism::new(self.source.clone(), self.target.clone(), map)
    }

    /// f(x, s); zero whenever an input is an idempotent.
    pub fn apply(&self, x: Gen, s: &[Elt]) -> Sum<(Elt, Gen)> {
        self.map.get(&(x, s.to_vec())).cloned().unwrap_or_default()
    }

    /// Longest input on which `df` can be nonzero.
    pub fn structural_bound(&self) -> usize {
        self.max_in + self.source.max_in().max(self.target.max_in()).max(1)
    }

    /// The morphism differential, evaluated on inputs of up to `cap - 1` chords.
    ///
    /// Errors if `df` could be nonzero beyond what the cap covers.
    pub fn differential(&self, cap: usize) -> Result<DAMorphism, BorderedError> {
        let needed = self.structural_bound();
        if needed + 1 > cap {
            return Err(BorderedError::ArityCap { cap, needed: needed + 1 });
        }
        let alg = self.source.algebra();
        let mut map = DAOps::new();
        for x in 0..self.source.len() {
            for s in alg.sequences(self.source.generators()[x].right, cap - 1) {
                let v = self.differential_at(x, &s);
                if !v.is_zero() {
                    map.insert((x, s), v);
                }
            }
        }
        DAMorphism::new(self.source.clone(), self.target.clone(), map)
    }

    pub fn differential_at(&self, x: Gen, s: &[Elt]) -> Sum<(Elt, Gen)> {
        let alg = self.source.algebra();
        let mut acc = Sum::new();
        for i in 0..=s.len() {
            for (b, y) in self.apply(x, &s[..i]) {
                for (c, z) in self.target.delta(y, &s[i..]) {
                    if let Some(bc) = alg.mul(b, c) {
                        acc.toggle((bc, z));
                    }
                }
            }
            for (b, y) in self.source.delta(x, &s[..i]) {
                for (c, z) in self.apply(y, &s[i..]) {
                    if let Some(bc) = alg.mul(b, c) {
                        acc.toggle((bc, z));
                    }
                }
            }
        }
        for merged in merges(alg, s) {
            acc.add(&self.apply(x, &merged));
        }
        acc
    }

    /// Nonzero terms of `df`, one per generator and input.
    pub fn chain_map_failures(&self, cap: usize) -> Result<Vec<Failure>, BorderedError> {
        let d = self.differential(cap)?;
        Ok(d.map
            .iter()
            .map(|((x, s), v)| Failure {
                generator: self.source.generators()[*x].name.clone(),
                inputs: self.source.algebra().seq_name(s),
                residue: show_terms(self.source.algebra(), self.target.generators(), v),
            })
            .collect())
    }

    /// `f ⊠ Id_N` as a morphism of type D structures.
    pub fn box_id(&self, n: &TypeD) -> Result<DMorphism, BorderedError> {
        let opts = super::BoxOptions::default();
        let src = super::box_da_d(&self.source, n, opts)?;
        let tgt = super::box_da_d(&self.target, n, opts)?;
        let mut map = vec![Sum::new(); src.len()];
        for (k, g) in src.generators().iter().enumerate() {
            let (xn, yn) = split_pair(&g.name, self.source.generators());
            let x = self.source.index_of(xn)?;
            let y = n.index_of(yn)?;
            for (cs, y2) in n.paths(y, self.max_in) {
                if cs.iter().any(|&c| n.algebra().is_idempotent(c)) {
                    continue;
                }
                for (b, x2) in self.apply(x, &cs) {
                    let name = pair_name(&self.target.generators()[x2].name, &n.generators()[y2].name);
                    map[k].toggle((b, tgt.index_of(&name)?));
                }
            }
        }
        DMorphism::new(src, tgt, map)
    }
}

/// Splits a product name `p|q` where `p` is one of `left`'s generator names.
fn split_pair<'a>(name: &'a str, left: &[Generator]) -> (&'a str, &'a str) {
    for g in left {
        if let Some(rest) = name.strip_prefix(g.name.as_str()).and_then(|r| r.strip_prefix('|')) {
            return (&name[..g.name.len()], rest);
        }
    }
    panic!("{name} is not a product over the given generators")
}

// ---------------------------------------------------------------------------

/// A morphism of type A structures, `f(x, a1, ..., an) = Σ y`.
#[derive(Clone, Debug)]
pub struct AMorphism {
    source: TypeA,
    target: TypeA,
    map: AOps,
    max_in: usize,
}

impl AMorphism {
    pub fn new(source: TypeA, target: TypeA, mut map: AOps) -> Result<Self, BorderedError> {
        let alg = source.algebra();
        map.retain(|_, v| !v.is_zero());
        for ((x, s), out) in &map {
            for &y in out {
                if y >= target.len() || !composable(alg, source.idem(*x), s, target.idem(y)) {
                    return Err(BorderedError::Idempotent {
                        generator: source.generators()[*x].name.clone(),
                        detail: format!("f({}; {})", source.generators()[*x].name, alg.seq_name(s)),
                    });
                }
            }
        }
        let max_in = map.keys().map(|(_, s)| s.len()).max().unwrap_or(0);
        Ok(AMorphism { source, target, map, max_in })
    }

    pub fn source(&self) -> &TypeA {
        &self.source
    }

    pub fn target(&self) -> &TypeA {
        &self.target
    }

    pub fn max_in(&self) -> usize {
        self.max_in
    }

    pub fn apply(&self, x: Gen, s: &[Elt]) -> Sum<Gen> {
        self.map.get(&(x, s.to_vec())).cloned().unwrap_or_default()
    }

    /// Residues of the A∞ morphism relation on every input up to the structural bound.
    pub fn chain_map_failures(&self) -> Vec<Failure> {
        let alg = self.source.algebra();
        let bound = self.max_in + self.source.max_in().max(self.target.max_in()).max(1);
        let mut out = Vec::new();
        for z in 0..self.source.len() {
            for s in alg.sequences(self.source.idem(z), bound) {
                let mut acc = Sum::new();
                for i in 0..=s.len() {
                    for y in self.source.act(z, &s[..i]) {
                        acc.add(&self.apply(y, &s[i..]));
                    }
                    for y in self.apply(z, &s[..i]) {
                        acc.add(&self.target.act(y, &s[i..]));
                    }
                }
                for merged in merges(alg, &s) {
                    acc.add(&self.apply(z, &merged));
                }
                if !acc.is_zero() {
                    out.push(Failure {
                        generator: self.source.generators()[z].name.clone(),
                        inputs: alg.seq_name(&s),
                        residue: show_gens(self.target.generators(), &acc),
                    });
                }
            }
        }
        out
    }

    /// `f ⊠ Id_N` between the paired complexes.
    pub fn box_id(&self, n: &TypeD) -> Result<ComplexMap, BorderedError> {
        let (si, sn, sd) = box_a_d_parts(&self.source, n);
        let (ti, tn, td) = box_a_d_parts(&self.target, n);
        let cols = si
            .iter()
            .map(|&(z, y)| {
                let mut col = Sum::new();
                for (cs, y2) in n.paths(y, self.max_in) {
                    if cs.iter().any(|&c| n.algebra().is_idempotent(c)) {
                        continue;
                    }
                    for w in self.apply(z, &cs) {
                        col.toggle(ti.binary_search(&(w, y2)).expect("paired generator") as u32);
                    }
                }
                col.into_iter().collect()
            })
            .collect();
        ComplexMap::new(ChainComplex::new(sn, sd)?, ChainComplex::new(tn, td)?, SparseMap::from_columns(ti.len(), cols)?)
    }
}

/// `Id_M ⊠ g` for a type D morphism `g: N → N'`.
pub fn id_box(m: &TypeA, g: &DMorphism) -> Result<ComplexMap, BorderedError> {
    let (n, n2) = (g.source(), g.target());
    let (si, sn, sd) = box_a_d_parts(m, n);
    let (ti, tn, td) = box_a_d_parts(m, n2);
    let depth = m.max_in().max(1);
    let cols = si
        .iter()
        .map(|&(x, y)| {
            let mut col = Sum::new();
            for (cs1, y1) in n.paths(y, depth - 1) {
                for &(c, y2) in g.apply(y1) {
                    for (cs2, y3) in n2.paths(y2, depth - 1 - cs1.len()) {
                        let mut seq = cs1.clone();
                        seq.push(c);
                        seq.extend_from_slice(&cs2);
                        for x2 in m.act(x, &seq) {
                            col.toggle(ti.binary_search(&(x2, y3)).expect("paired generator") as u32);
                        }
                    }
                }
            }
            col.into_iter().collect()
        })
        .collect();
    ComplexMap::new(ChainComplex::new(sn, sd)?, ChainComplex::new(tn, td)?, SparseMap::from_columns(ti.len(), cols)?)
}

/// An F2-linear map between chain complexes with named generators.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub map: SparseMap,
}

impl ComplexMap {
    pub fn new(source: ChainComplex, target: ChainComplex, map: SparseMap) -> Result<Self, BorderedError> {
        if map.domain() != source.len() || map.codomain() != target.len() {
            return Err(crate::algebra::AlgebraError::Shape {
                domain: map.domain(),
                codomain: map.codomain(),
                generators: source.len(),
            }
            .into());
        }
        Ok(ComplexMap { source, target, map })
    }

    /// Image of a sum of named source generators.
    pub fn apply_names(&self, v: &Sum<String>) -> Result<Sum<String>, BorderedError> {
        let mut out = Sum::new();
        for n in v {
            let i = self.source.index_of(n).ok_or_else(|| BorderedError::UnknownName(n.clone()))?;
            for &j in self.map.column(i) {
                out.toggle(self.target.names()[j as usize].clone());
            }
        }
        Ok(out)
    }

    pub fn is_chain_map(&self) -> bool {
        self.target.differential().compose(&self.map) == self.map.compose(self.source.differential())
    }

    pub fn then(&self, next: &ComplexMap) -> Result<ComplexMap, BorderedError> {
        if self.target.names() != next.source.names() {
            return Err(BorderedError::Kind("composed maps do not share a complex".into()));
        }
        ComplexMap::new(self.source.clone(), next.target.clone(), next.map.compose(&self.map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> &'static Algebra {
        Algebra::torus()
    }

    fn e(n: &str) -> Elt {
        alg().elt(n).unwrap()
    }

    fn single(name: &str, idem: u8, chord: &str) -> TypeD {
        TypeD::new(alg(), vec![Generator::new(name, idem, idem)], vec![Sum::from_iter([(e(chord), 0)])]).unwrap()
    }

    fn minus1() -> TypeD {
        let gens = vec![Generator::new("a", 0, 0), Generator::new("b", 1, 1)];
        TypeD::new(alg(), gens, vec![Sum::from_iter([(e("r12"), 1), (e("r34"), 1)]), Sum::new()]).unwrap()
    }

    fn phi() -> DMorphism {
        let map = vec![Sum::from_iter([(e("i1"), 1), (e("r23"), 0)])];
        DMorphism::new(single("r", 1, "r24"), minus1(), map).unwrap()
    }

    #[test]
    fn surgery_map_cone_reduces_to_zero_framing() {
        let f = phi();
        assert!(f.chain_map_failures().is_empty());
        let cone = f.mapping_cone();
        assert!(cone.check_structure().is_empty());
        let small = cancel_idempotent_arrows(&cone);
        assert_eq!(small.len(), 1);
        assert!(iso_as_data(&small, &single("n", 0, "r13")).is_some());
        assert!(iso_as_data(&small, &single("n", 1, "r24")).is_none());
    }

    #[test]
    fn cone_of_zero_is_direct_sum() {
        let c = DMorphism::zero(minus1(), minus1()).mapping_cone();
        let names: Vec<_> = c.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["s:a", "s:b", "t:a", "t:b"]);
        assert!(c.check_structure().is_empty());
        assert_eq!(c.delta(0).len(), 2);
    }

    #[test]
    fn cone_of_identity_cancels_away() {
        let n = minus1();
        let id = DMorphism::new(n.clone(), n.clone(), vec![Sum::from_iter([(e("i0"), 0)]), Sum::from_iter([(e("i1"), 1)])])
            .unwrap();
        assert!(id.chain_map_failures().is_empty());
        assert!(cancel_idempotent_arrows(&id.mapping_cone()).is_empty());
    }

    #[test]
    fn non_chain_map_detected() {
        let map = vec![Sum::from_iter([(e("i1"), 1)])];
        let f = DMorphism::new(single("r", 1, "r24"), minus1(), map).unwrap();
        assert_eq!(f.chain_map_failures().len(), 1);
    }

    #[test]
    fn da_identity_morphism_is_closed() {
        let id = TypeDA::identity(alg());
        let mut map = DAOps::new();
        map.insert((0, vec![]), Sum::from_iter([(e("i0"), 0)]));
        map.insert((1, vec![]), Sum::from_iter([(e("i1"), 1)]));
        let f = DAMorphism::new(id.clone(), id.clone(), map).unwrap();
        assert!(f.differential(DEFAULT_ARITY_CAP).unwrap().is_zero());
        let boxed = f.box_id(&minus1()).unwrap();
        assert!(boxed.chain_map_failures().is_empty());
        assert!(DAMorphism::zero(id.clone(), id).differential(DEFAULT_ARITY_CAP).unwrap().is_zero());
    }

    #[test]
    fn arity_cap_is_enforced() {
        let id = TypeDA::identity(alg());
        let mut map = DAOps::new();
        map.insert((0, vec![e("r12"), e("r23"), e("r34")]), Sum::from_iter([(e("r12"), 1)]));
        let f = DAMorphism::new(id.clone(), id, map).unwrap();
        assert_eq!(f.differential(4).unwrap_err(), BorderedError::ArityCap { cap: 4, needed: 5 });
        assert!(f.differential(5).is_ok());
    }
}
