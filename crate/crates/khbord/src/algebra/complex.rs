use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::reduce::Reducer;
use super::ring::Q_DEGREE;
use super::sparse::{f2_rank, SparseMap};
use super::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Grading {
    pub h: i32,
    pub q: i32,
}

impl Grading {
    pub fn new(h: i32, q: i32) -> Self {
        Grading { h, q }
    }

    pub fn delta(self) -> i32 {
        self.q - 2 * self.h
    }
}

/// Free F2-module with a bigraded basis. Labels are optional; unnamed generators print as `g<i>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasedModule {
    gradings: Vec<Grading>,
    labels: Option<Vec<String>>,
    vertices: Option<Vec<u32>>,
}

impl BasedModule {
    pub fn new(gradings: Vec<Grading>) -> Self {
        BasedModule { gradings, labels: None, vertices: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, AlgebraError> {
        if labels.len() != self.gradings.len() {
            return Err(AlgebraError::LabelCount { labels: labels.len(), generators: self.gradings.len() });
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(AlgebraError::DuplicateLabel { label: l.clone(), first: j, second: i });
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Attach the cube vertex each generator lives over.
    pub fn with_vertices(mut self, vertices: Vec<u32>) -> Self {
        assert_eq!(vertices.len(), self.gradings.len());
        self.vertices = Some(vertices);
        self
    }

    pub fn len(&self) -> usize {
        self.gradings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gradings.is_empty()
    }

    pub fn grading(&self, i: usize) -> Grading {
        self.gradings[i]
    }

    pub fn gradings(&self) -> &[Grading] {
        &self.gradings
    }

    pub fn vertex(&self, i: usize) -> Option<u32> {
        self.vertices.as_ref().map(|v| v[i])
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("g{i}"),
        }
    }

    pub fn dims(&self) -> Homology {
        let mut h = Homology::default();
        for &g in &self.gradings {
            *h.dims.entry(g).or_default() += 1;
        }
        h
    }
}

/// Bigraded dimension table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub dims: BTreeMap<Grading, usize>,
}

impl Homology {
    pub fn from_pairs(pairs: &[((i32, i32), usize)]) -> Self {
        let mut dims = BTreeMap::new();
        for &((h, q), d) in pairs {
            if d > 0 {
                dims.insert(Grading::new(h, q), d);
            }
        }
        Homology { dims }
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn get(&self, h: i32, q: i32) -> usize {
        self.dims.get(&Grading::new(h, q)).copied().unwrap_or(0)
    }

    pub fn deltas(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.dims.iter().filter(|(_, &n)| n > 0).map(|(g, _)| g.delta()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Apply `f` to every grading.
    pub fn regrade(&self, f: impl Fn(Grading) -> Grading) -> Homology {
        let mut dims = BTreeMap::new();
        for (&g, &n) in &self.dims {
            *dims.entry(f(g)).or_default() += n;
        }
        Homology { dims }
    }
}

impl fmt::Display for Homology {
    /// Rows are homological degrees, columns quantum degrees.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return writeln!(f, "(zero)");
        }
        let hs: Vec<i32> = {
            let mut v: Vec<i32> = self.dims.keys().map(|g| g.h).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let qs: Vec<i32> = {
            let mut v: Vec<i32> = self.dims.keys().map(|g| g.q).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        write!(f, "{:>6}", "h\\q")?;
        for q in &qs {
            write!(f, "{q:>5}")?;
        }
        writeln!(f)?;
        for h in &hs {
            write!(f, "{h:>6}")?;
            for q in &qs {
                match self.get(*h, *q) {
                    0 => write!(f, "{:>5}", ".")?,
                    n => write!(f, "{n:>5}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Bigraded F2 complex whose differential has degree (1, 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    module: BasedModule,
    d: SparseMap,
}

fn check_square_zero(d: &SparseMap, label: impl Fn(usize) -> String) -> Result<(), AlgebraError> {
    let bad = (0..d.domain()).into_par_iter().find_first(|&x| !d.apply(d.column(x)).is_empty());
    match bad {
        None => Ok(()),
        Some(x) => Err(AlgebraError::NotSquareZero { generator: label(x) }),
    }
}

impl GradedComplex {
    pub fn new(module: BasedModule, d: SparseMap) -> Result<Self, AlgebraError> {
        let c = Self::new_unchecked(module, d)?;
        c.check_degrees()?;
        check_square_zero(&c.d, |x| c.module.label(x))?;
        Ok(c)
    }

    /// Skips the d∘d = 0 check, for complexes whose construction already guarantees it.
    pub fn new_unchecked(module: BasedModule, d: SparseMap) -> Result<Self, AlgebraError> {
        if d.domain() != module.len() || d.codomain() != module.len() {
            return Err(AlgebraError::Shape { domain: d.domain(), codomain: d.codomain(), generators: module.len() });
        }
        Ok(GradedComplex { module, d })
    }

    fn check_degrees(&self) -> Result<(), AlgebraError> {
        for (x, y) in self.d.entries() {
            let (gx, gy) = (self.module.grading(x), self.module.grading(y));
            if gy.h != gx.h + 1 || gy.q != gx.q {
                return Err(AlgebraError::Degree {
                    from: self.module.label(x),
                    target: self.module.label(y),
                    expected: (1, 0),
                    found: (gy.h - gx.h, gy.q - gx.q),
                });
            }
        }
        Ok(())
    }

    pub fn module(&self) -> &BasedModule {
        &self.module
    }

    pub fn differential(&self) -> &SparseMap {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.module.len()
    }

    pub fn is_empty(&self) -> bool {
        self.module.is_empty()
    }

    pub fn is_square_zero(&self) -> bool {
        check_square_zero(&self.d, |x| self.module.label(x)).is_ok()
    }

    /// Partition generator indices by quantum degree; the differential is block diagonal in it.
    fn q_blocks(&self) -> Vec<Vec<u32>> {
        let mut by_q: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
        for (i, g) in self.module.gradings.iter().enumerate() {
            by_q.entry(g.q).or_default().push(i as u32);
        }
        by_q.into_values().collect()
    }

    /// Homology dimensions, computed independently on each quantum block.
    pub fn homology(&self) -> Homology {
        let blocks = self.q_blocks();
        let parts: Vec<Homology> = blocks
            .par_iter()
            .map(|block| {
                let local: HashMap<u32, u32> = block.iter().enumerate().map(|(i, &g)| (g, i as u32)).collect();
                let cols: Vec<Vec<u32>> = block
                    .iter()
                    .map(|&g| self.d.column(g as usize).iter().map(|y| local[y]).collect())
                    .collect();
                let mut r = Reducer::new(block.len(), &cols);
                r.cancel_all(|_, _| true);
                let mut h = Homology::default();
                for s in r.survivors() {
                    *h.dims.entry(self.module.grading(block[s as usize] as usize)).or_default() += 1;
                }
                h
            })
            .collect();
        let mut out = Homology::default();
        for p in parts {
            for (g, n) in p.dims {
                *out.dims.entry(g).or_default() += n;
            }
        }
        out
    }

    /// Homology together with one representative cycle per basis class.
    pub fn homology_with_representatives(&self) -> (Homology, Vec<(Grading, Vec<u32>)>) {
        let mut r = Reducer::new(self.len(), self.d.columns()).with_representatives();
        r.cancel_all(|_, _| true);
        let mut h = Homology::default();
        let mut reps = Vec::new();
        for s in r.survivors() {
            let g = self.module.grading(s as usize);
            *h.dims.entry(g).or_default() += 1;
            reps.push((g, r.representative(s).to_vec()));
        }
        (h, reps)
    }
}

/// Complex over F2 with a Q-action of degree (0, -2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QComplex {
    underlying: GradedComplex,
    q_action: SparseMap,
}

impl QComplex {
    pub fn new(underlying: GradedComplex, q_action: SparseMap) -> Result<Self, AlgebraError> {
        let n = underlying.len();
        if q_action.domain() != n || q_action.codomain() != n {
            return Err(AlgebraError::Shape { domain: q_action.domain(), codomain: q_action.codomain(), generators: n });
        }
        let m = underlying.module();
        for (x, y) in q_action.entries() {
            let (gx, gy) = (m.grading(x), m.grading(y));
            if gy.h != gx.h || gy.q != gx.q + Q_DEGREE {
                return Err(AlgebraError::Degree {
                    from: m.label(x),
                    target: m.label(y),
                    expected: (0, Q_DEGREE),
                    found: (gy.h - gx.h, gy.q - gx.q),
                });
            }
        }
        if let Some(x) = (0..n).find(|&x| !q_action.apply(q_action.column(x)).is_empty()) {
            return Err(AlgebraError::QNotSquareZero { generator: m.label(x) });
        }
        let d = underlying.differential();
        let dq = d.compose(&q_action);
        let qd = q_action.compose(d);
        if let Some(x) = (0..n).find(|&x| dq.column(x) != qd.column(x)) {
            return Err(AlgebraError::QNotCommuting { generator: m.label(x) });
        }
        Ok(QComplex { underlying, q_action })
    }

    pub fn new_unchecked(underlying: GradedComplex, q_action: SparseMap) -> Self {
        QComplex { underlying, q_action }
    }

    pub fn underlying(&self) -> &GradedComplex {
        &self.underlying
    }

    pub fn q_action(&self) -> &SparseMap {
        &self.q_action
    }
}

/// Homology of a Q-complex as a module over F2[Q]/(Q^2): `ranks[g] = (a, b)` where `a` counts
/// free summands generated in degree `g` and `b` counts summands F2 = R/Q sitting in degree `g`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RHomology {
    pub dims: Homology,
    pub ranks: BTreeMap<Grading, (usize, usize)>,
}

impl RHomology {
    pub fn free_rank(&self) -> usize {
        self.ranks.values().map(|r| r.0).sum()
    }

    pub fn torsion_rank(&self) -> usize {
        self.ranks.values().map(|r| r.1).sum()
    }
}

/// Decompose H into R^a ⊕ (R/Q)^b using dim H and the rank of Q on H in each bigrading.
pub fn r_structure(dims: &Homology, q_rank: &BTreeMap<Grading, usize>) -> RHomology {
    let mut ranks = BTreeMap::new();
    for (&g, &n) in &dims.dims {
        let a = q_rank.get(&g).copied().unwrap_or(0);
        let from_above = q_rank.get(&Grading::new(g.h, g.q - Q_DEGREE)).copied().unwrap_or(0);
        let b = n - a - from_above;
        if a + b > 0 {
            ranks.insert(g, (a, b));
        }
    }
    RHomology { dims: dims.clone(), ranks }
}

/// Rank of the tracked endomorphism on the surviving generators, per source bigrading.
pub(crate) fn endo_ranks(r: &Reducer, module: &BasedModule, keep: impl Fn(u32, u32) -> bool) -> BTreeMap<Grading, usize> {
    let survivors = r.survivors();
    let mut by_grading: BTreeMap<Grading, Vec<u32>> = BTreeMap::new();
    for &s in &survivors {
        by_grading.entry(module.grading(s as usize)).or_default().push(s);
    }
    let mut out = BTreeMap::new();
    for (g, gens) in &by_grading {
        let target = Grading::new(g.h, g.q + Q_DEGREE);
        let Some(tgens) = by_grading.get(&target) else { continue };
        let index: HashMap<u32, u32> = tgens.iter().enumerate().map(|(i, &t)| (t, i as u32)).collect();
        let cols: Vec<Vec<u32>> = gens
            .iter()
            .map(|&s| r.endo_targets(s).iter().filter(|&&t| keep(s, t)).filter_map(|t| index.get(t).copied()).collect())
            .collect();
        let m = SparseMap::from_columns(tgens.len(), cols).expect("indices are local");
        let rank = f2_rank(&m);
        if rank > 0 {
            out.insert(*g, rank);
        }
    }
    out
}

pub fn homology_over_r(c: &QComplex) -> RHomology {
    let g = c.underlying();
    let mut r = Reducer::new(g.len(), g.differential().columns()).with_endomorphism(c.q_action().columns());
    r.cancel_all(|_, _| true);
    let mut dims = Homology::default();
    for s in r.survivors() {
        *dims.dims.entry(g.module().grading(s as usize)).or_default() += 1;
    }
    let q_rank = endo_ranks(&r, g.module(), |_, _| true);
    r_structure(&dims, &q_rank)
}

/// Ungraded F2 complex, the result of pairing bordered modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    names: Vec<String>,
    d: SparseMap,
}

impl ChainComplex {
    pub fn new(names: Vec<String>, d: SparseMap) -> Result<Self, AlgebraError> {
        if d.domain() != names.len() || d.codomain() != names.len() {
            return Err(AlgebraError::Shape { domain: d.domain(), codomain: d.codomain(), generators: names.len() });
        }
        check_square_zero(&d, |x| names[x].clone())?;
        Ok(ChainComplex { names, d })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn differential(&self) -> &SparseMap {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn homology_dim(&self) -> usize {
        self.names.len() - 2 * f2_rank(&self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graded(gr: &[(i32, i32)], entries: &[(usize, usize)]) -> Result<GradedComplex, AlgebraError> {
        let module = BasedModule::new(gr.iter().map(|&(h, q)| Grading::new(h, q)).collect());
        let d = SparseMap::from_entries(gr.len(), gr.len(), entries)?;
        GradedComplex::new(module, d)
    }

    #[test]
    fn zero_differential_keeps_chain_groups() {
        let c = graded(&[(0, 1), (0, -1)], &[]).unwrap();
        assert_eq!(c.homology(), Homology::from_pairs(&[((0, 1), 1), ((0, -1), 1)]));
    }

    #[test]
    fn isomorphism_is_acyclic() {
        let c = graded(&[(0, 0), (1, 0)], &[(0, 1)]).unwrap();
        assert_eq!(c.homology().total(), 0);
    }

    #[test]
    fn non_square_zero_rejected() {
        let r = graded(&[(0, 0), (1, 0), (2, 0)], &[(0, 1), (1, 2)]);
        assert!(matches!(r, Err(AlgebraError::NotSquareZero { .. })));
    }

    #[test]
    fn wrong_degree_rejected() {
        let r = graded(&[(0, 0), (1, 2)], &[(0, 1)]);
        assert!(matches!(r, Err(AlgebraError::Degree { .. })));
    }

    #[test]
    fn empty_complex_has_empty_homology() {
        let c = graded(&[], &[]).unwrap();
        assert_eq!(c.homology().total(), 0);
    }

    #[test]
    fn representatives_are_cycles() {
        // x -> y + z : one class in degree 1
        let c = graded(&[(0, 0), (1, 0), (1, 0)], &[(0, 1), (0, 2)]).unwrap();
        let (h, reps) = c.homology_with_representatives();
        assert_eq!(h.total(), 1);
        for (_, v) in reps {
            assert!(c.differential().apply(&v).is_empty());
        }
    }

    fn rcomplex(gens: &[(i32, i32)], d: &[(usize, usize)], q: &[(usize, usize)]) -> QComplex {
        let c = graded(gens, d).unwrap();
        let qm = SparseMap::from_entries(gens.len(), gens.len(), q).unwrap();
        QComplex::new(c, qm).unwrap()
    }

    #[test]
    fn free_module_over_r() {
        let c = rcomplex(&[(0, 0), (0, -2)], &[], &[(0, 1)]);
        let h = homology_over_r(&c);
        assert_eq!((h.free_rank(), h.torsion_rank()), (1, 0));
    }

    #[test]
    fn torsion_module_over_r() {
        let c = rcomplex(&[(0, 0)], &[], &[]);
        let h = homology_over_r(&c);
        assert_eq!((h.free_rank(), h.torsion_rank()), (0, 1));
    }

    #[test]
    fn q_must_commute_with_d() {
        let c = graded(&[(0, 0), (1, 0), (0, -2), (1, -2)], &[(0, 1)]).unwrap();
        let q = SparseMap::from_entries(4, 4, &[(1, 3)]).unwrap();
        assert!(matches!(QComplex::new(c, q), Err(AlgebraError::QNotCommuting { .. })));
    }

    #[test]
    fn multiplication_by_q_on_free_complex() {
        // R --Q--> R : homology is R/Q in degree (0,0)... as F2: x, Qx -> y, Qy with d x = Q y.
        // gens: x(0,0) Qx(0,-2) y(1,2) Qy(1,0); d x = Qy.
        let c = rcomplex(&[(0, 0), (0, -2), (1, 2), (1, 0)], &[(0, 3)], &[(0, 1), (2, 3)]);
        let h = homology_over_r(&c);
        assert_eq!(h.dims.total(), 2);
        assert_eq!((h.free_rank(), h.torsion_rank()), (0, 2));
    }
}
