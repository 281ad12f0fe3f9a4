//! The composite G′ = (Id ⊠ G) ∘ (ψ ⊠ Id) ∘ (Id ⊠ Ω ⊠ Id) ∘ η, evaluated stage by stage.

use std::collections::HashMap;

use crate::algebra::SparseMap;
use crate::bordered::morphism::{id_box, ComplexMap};
use crate::bordered::{box_a_d, box_a_da, box_da_d, BorderedError, BoxOptions, Generator, Sum};

use super::catalog::Catalog;
use super::{PaperDataError, Report, Status};

/// The four maps of the composite, for one exterior module.
pub struct GPrime {
    pub eta: ComplexMap,
    pub stage1: ComplexMap,
    pub stage2: ComplexMap,
    pub stage3: ComplexMap,
    /// Generator lists of the tensor factors of each stage's target.
    factors: [Vec<Vec<Generator>>; 3],
}

/// Reindexes `map`'s target by name onto `onto`, checking the two complexes agree.
fn reattach(map: &ComplexMap, onto: &crate::algebra::ChainComplex) -> Result<ComplexMap, PaperDataError> {
    let t = &map.target;
    let mismatch = || BorderedError::Kind("paired complexes differ after regrouping".into());
    if t.len() != onto.len() {
        return Err(mismatch().into());
    }
    let index: HashMap<&str, usize> = onto.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let perm: Vec<usize> =
        t.names().iter().map(|n| index.get(n.as_str()).copied().ok_or_else(mismatch)).collect::<Result<_, _>>()?;
    for (i, &p) in perm.iter().enumerate() {
        let mut moved: Vec<u32> = t.differential().column(i).iter().map(|&j| perm[j as usize] as u32).collect();
        moved.sort_unstable();
        if moved != onto.differential().column(p) {
            return Err(mismatch().into());
        }
    }
    let cols = (0..map.source.len())
        .map(|i| map.map.column(i).iter().map(|&j| perm[j as usize] as u32).collect())
        .collect();
    Ok(ComplexMap::new(map.source.clone(), onto.clone(), SparseMap::from_columns(onto.len(), cols)?)?)
}

impl GPrime {
    pub fn build(cat: &Catalog, case: &str) -> Result<GPrime, PaperDataError> {
        let opts = BoxOptions::default();
        let gp = cat.gprime();
        let c = gp.cases.get(case).ok_or_else(|| BorderedError::UnknownName(case.to_string()))?;
        let m = cat.type_a(&c.module)?;
        let mb = cat.type_a(&c.bar_module)?;
        let id = cat.type_da(&gp.identity)?;
        let az = cat.type_da(&gp.az)?;
        let azb = cat.type_da(&gp.azbar)?;
        let n_inf = cat.type_d(&gp.infinity)?;
        let n_bar = cat.type_d(&gp.dblbar_infinity)?;
        let minus1 = cat.type_d(&gp.minus_one)?;
        let omega = cat.omega()?;
        let psi = cat.a_morphism(&c.psi)?;
        let g = cat.d_morphism(&gp.map)?;

        let stage1 = id_box(&mb, &omega.box_id(&n_bar)?)?;
        let stage2 = psi.box_id(&box_da_d(&az, &n_bar, opts)?)?;
        let stage3 = id_box(&m, &g)?;
        let stage1 = reattach(&stage1, &stage2.source)?;

        let source = box_a_d(&m, &n_inf, opts)?;
        let target = box_a_d(&box_a_da(&mb, &id, opts)?, &n_bar, opts)?;
        let mut cols = Vec::with_capacity(source.len());
        for name in source.names() {
            let (x, r) = name.split_once('|').expect("paired name");
            let xb = c.eta.get(x).ok_or_else(|| BorderedError::UnknownName(x.to_string()))?;
            let rr = gp.solid_torus_eta.get(r).ok_or_else(|| BorderedError::UnknownName(r.to_string()))?;
            let idem = mb.generators()[mb.index_of(xb)?].right;
            let i = id.generators().iter().find(|g| g.left == idem).expect("identity has every idempotent");
            let img = format!("{xb}|{}|{rr}", i.name);
            let j = target.index_of(&img).ok_or(BorderedError::UnknownName(img))?;
            cols.push(vec![j as u32]);
        }
        let map = SparseMap::from_columns(target.len(), cols)?;
        let eta = ComplexMap::new(source, target, map)?;

        let gens = |v: &[&[Generator]]| v.iter().map(|g| g.to_vec()).collect::<Vec<_>>();
        let factors = [
            gens(&[mb.generators(), azb.generators(), az.generators(), n_bar.generators()]),
            gens(&[m.generators(), az.generators(), n_bar.generators()]),
            gens(&[m.generators(), minus1.generators()]),
        ];
        Ok(GPrime { eta, stage1, stage2, stage3, factors })
    }

    pub fn composite(&self) -> Result<ComplexMap, PaperDataError> {
        Ok(self.eta.then(&self.stage1)?.then(&self.stage2)?.then(&self.stage3)?)
    }

    fn stages(&self) -> [&ComplexMap; 3] {
        [&self.stage1, &self.stage2, &self.stage3]
    }

    /// Whether a name that is not a generator is a well-formed product whose idempotents clash.
    fn idempotent_invalid(&self, stage: usize, name: &str) -> bool {
        let parts: Vec<&str> = name.split('|').collect();
        let factors = &self.factors[stage];
        if parts.len() != factors.len() {
            return false;
        }
        let found: Option<Vec<&Generator>> =
            parts.iter().zip(factors).map(|(p, gs)| gs.iter().find(|g| g.name == *p)).collect();
        match found {
            None => false,
            Some(gs) => gs.windows(2).any(|w| w[0].right != w[1].left),
        }
    }
}

/// Outcome of one evaluation, stage by stage.
#[derive(Clone, Debug)]
pub struct StageResult {
    pub computed: Sum<String>,
    pub dropped: Vec<String>,
    pub missing: Vec<String>,
    pub extras: Vec<String>,
    /// Extras that survive the remaining stages.
    pub live_extras: Vec<String>,
}

impl StageResult {
    pub fn ok(&self) -> bool {
        self.missing.is_empty() && self.live_extras.is_empty()
    }
}

fn show(s: &Sum<String>) -> String {
    if s.is_zero() {
        "0".into()
    } else {
        s.iter().cloned().collect::<Vec<_>>().join(" + ")
    }
}

pub fn evaluate(gp: &GPrime, input: &str, printed: &[Vec<String>]) -> Result<Vec<StageResult>, PaperDataError> {
    let mut v = gp.eta.apply_names(&Sum::from_iter([input.to_string()]))?;
    let stages = gp.stages();
    let mut out = Vec::new();
    for (k, stage) in stages.iter().enumerate() {
        v = stage.apply_names(&v)?;
        let mut dropped = Vec::new();
        let mut valid = Sum::new();
        for p in printed.get(k).map(Vec::as_slice).unwrap_or(&[]) {
            if stage.target.index_of(p).is_some() {
                valid.toggle(p.clone());
            } else if gp.idempotent_invalid(k, p) {
                dropped.push(p.clone());
            } else {
                return Err(BorderedError::UnknownName(p.clone()).into());
            }
        }
        let missing: Vec<String> = valid.iter().filter(|p| !v.contains(p)).cloned().collect();
        let extras: Vec<String> = v.iter().filter(|p| !valid.contains(p)).cloned().collect();
        let mut live_extras = Vec::new();
        for e in &extras {
            let mut img = Sum::from_iter([e.clone()]);
            for later in &stages[k + 1..] {
                img = later.apply_names(&img)?;
            }
            if k + 1 == stages.len() || !img.is_zero() {
                live_extras.push(e.clone());
            }
        }
        out.push(StageResult { computed: v.clone(), dropped, missing, extras, live_extras });
    }
    Ok(out)
}

pub fn verify_g_prime(cat: &Catalog, case: &str) -> Result<Report, PaperDataError> {
    let check = format!("gprime-{case}");
    let gp = GPrime::build(cat, case)?;
    let c = &cat.gprime().cases[case];
    let psi = cat.a_morphism(&c.psi)?;
    let mut problems = Vec::new();
    let mut lines = Vec::new();

    let psi_fail = psi.chain_map_failures();
    if !psi_fail.is_empty() {
        problems.push(format!("{} is not a chain map: {}", c.psi, psi_fail[0]));
    }
    for (name, map) in [("η", &gp.eta), ("Id⊠Ω⊠Id", &gp.stage1), ("ψ⊠Id", &gp.stage2)] {
        if !map.is_chain_map() {
            problems.push(format!("{name} is not a chain map"));
        }
    }
    let composite = gp.composite()?;
    if !composite.is_chain_map() {
        problems.push("G′ is not a chain map".into());
    }

    for ev in &c.evaluations {
        let res = evaluate(&gp, &ev.input, &ev.stages)?;
        let mut parts = Vec::new();
        for (k, r) in res.iter().enumerate() {
            let mut s = format!("stage {}: {}", k + 1, show(&r.computed));
            if !r.dropped.is_empty() {
                s += &format!(" [dropped idempotent-invalid: {}]", r.dropped.join(", "));
            }
            if !r.extras.is_empty() {
                s += &format!(" [extra, killed later: {}]", r.extras.join(", "));
            }
            if !r.ok() {
                problems.push(format!(
                    "{} stage {}: missing [{}], surviving extras [{}]",
                    ev.input,
                    k + 1,
                    r.missing.join(", "),
                    r.live_extras.join(", ")
                ));
            }
            parts.push(s);
        }
        lines.push(format!("{} ↦ {}", ev.input, parts.join("; ")));
    }
    let status = if problems.is_empty() { Status::Pass } else { Status::Fail };
    let mut detail = lines.join(" | ");
    if problems.is_empty() {
        detail += &format!(" | ψ, η, Id⊠Ω⊠Id, ψ⊠Id and G′ are chain maps ({} → {} generators)", composite.source.len(), composite.target.len());
    } else {
        detail = format!("{} | {}", problems.join("; "), detail);
    }
    Ok(Report::new(check, status, detail))
}
