//! Spectral sequences of finitely filtered F2 complexes, computed by
//! cancelling arrows in order of filtration length.
//!
//! Arrows of length 0 are cancelled first, leaving E1. Cancelling every
//! remaining arrow of length r computes d_r; its rank is the number of
//! cancellations. New arrows created by a cancellation are never shorter
//! than r, so pages come out in order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::complex::{endo_ranks, r_structure};
use crate::algebra::{GradedComplex, Grading, Homology, Reducer, SparseMap};
use crate::khovanov::{build_complex_with, BuildOptions, CubeComplex, KhError, LinkDiagram, Ring};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SsError {
    #[error("differential {from} -> {target} lowers the filtration")]
    NotFiltered { from: usize, target: usize },
    #[error("{levels} filtration levels for {generators} generators")]
    LevelCount { levels: usize, generators: usize },
    #[error(transparent)]
    Khovanov(#[from] KhError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    underlying: GradedComplex,
    levels: Vec<u32>,
}

impl FilteredComplex {
    pub fn new(underlying: GradedComplex, levels: Vec<u32>) -> Result<Self, SsError> {
        if levels.len() != underlying.len() {
            return Err(SsError::LevelCount { levels: levels.len(), generators: underlying.len() });
        }
        for (x, y) in underlying.differential().entries() {
            if levels[y] < levels[x] {
                return Err(SsError::NotFiltered { from: x, target: y });
            }
        }
        Ok(FilteredComplex { underlying, levels })
    }

    pub fn underlying(&self) -> &GradedComplex {
        &self.underlying
    }

    pub fn level(&self, i: usize) -> u32 {
        self.levels[i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PageEntry {
    pub level: u32,
    pub h: i32,
    pub q: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    /// Page index; `d_r` raises the filtration by exactly `r`.
    pub r: usize,
    pub dims: Vec<PageEntry>,
    /// Rank of `d_r` on this page.
    pub d_rank: usize,
    /// `(h, q, a, b)`: the page as R^a ⊕ (R/Q)^b under the induced Q-action, when one is given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_structure: Option<Vec<(i32, i32, usize, usize)>>,
}

impl Page {
    pub fn total(&self) -> usize {
        self.dims.iter().map(|e| e.dim).sum()
    }

    /// Dimensions by bigrading, summed over filtration levels.
    pub fn homology(&self) -> Homology {
        let mut h = Homology::default();
        for e in &self.dims {
            *h.dims.entry(Grading::new(e.h, e.q)).or_default() += e.dim;
        }
        h
    }

    pub fn free_rank(&self) -> Option<usize> {
        self.r_structure.as_ref().map(|v| v.iter().map(|t| t.2).sum())
    }

    pub fn torsion_rank(&self) -> Option<usize> {
        self.r_structure.as_ref().map(|v| v.iter().map(|t| t.3).sum())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralSequence {
    pub pages: Vec<Page>,
    /// First page after which every differential vanishes.
    pub collapse_page: usize,
}

impl SpectralSequence {
    pub fn first(&self) -> &Page {
        &self.pages[0]
    }

    pub fn abutment(&self) -> &Page {
        self.pages.last().expect("at least one page")
    }
}

fn snapshot(r: &Reducer, fc: &FilteredComplex, page: usize, with_q: bool) -> Page {
    let module = fc.underlying.module();
    let mut dims: BTreeMap<(u32, i32, i32), usize> = BTreeMap::new();
    let mut homology = Homology::default();
    for s in r.survivors() {
        let g = module.grading(s as usize);
        *dims.entry((fc.levels[s as usize], g.h, g.q)).or_default() += 1;
        *homology.dims.entry(g).or_default() += 1;
    }
    let r_structure = with_q.then(|| {
        let q_rank = endo_ranks(r, module, |s, t| fc.levels[t as usize] == fc.levels[s as usize] + 1);
        r_structure(&homology, &q_rank).ranks.into_iter().map(|(g, (a, b))| (g.h, g.q, a, b)).collect()
    });
    Page {
        r: page,
        dims: dims.into_iter().map(|((level, h, q), dim)| PageEntry { level, h, q, dim }).collect(),
        d_rank: 0,
        r_structure,
    }
}

/// All pages from E1 until the differential vanishes.
pub fn pages(fc: &FilteredComplex) -> SpectralSequence {
    run(fc, None)
}

/// Pages together with the associated graded of a Q-action raising the filtration by one.
pub fn pages_with_action(fc: &FilteredComplex, q: &SparseMap) -> SpectralSequence {
    run(fc, Some(q))
}

fn run(fc: &FilteredComplex, q: Option<&SparseMap>) -> SpectralSequence {
    let d = fc.underlying.differential();
    let mut red = Reducer::new(d.domain(), d.columns());
    if let Some(q) = q {
        red = red.with_endomorphism(q.columns());
    }
    let levels = &fc.levels;
    let length = |x: u32, y: u32| levels[y as usize] - levels[x as usize];
    red.cancel_all(|x, y| length(x, y) == 0);

    let mut out = Vec::new();
    let mut r = 1usize;
    loop {
        let mut page = snapshot(&red, fc, r, q.is_some());
        if !red.has_arrows() {
            out.push(page);
            break;
        }
        page.d_rank = red.cancel_all(|x, y| length(x, y) as usize == r);
        out.push(page);
        r += 1;
    }
    let collapse_page = out.iter().rposition(|p| p.d_rank > 0).map_or(1, |i| i + 2);
    SpectralSequence { pages: out, collapse_page }
}

/// Filtration of a Bar-Natan complex by the power of Q.
pub fn q_filtration(c: &CubeComplex) -> Option<FilteredComplex> {
    c.q_complex()?;
    let levels = (0..c.len()).map(|i| c.generator(i).qpow as u32).collect();
    FilteredComplex::new(c.graded().clone(), levels).ok()
}

/// Filtration of a cube complex by vertex weight |v|.
pub fn cube_filtration(c: &CubeComplex) -> FilteredComplex {
    let levels = (0..c.len()).map(|i| c.generator(i).vertex.count_ones()).collect();
    FilteredComplex::new(c.graded().clone(), levels).expect("cube differentials raise |v|")
}

/// The spectral sequence from Kh ⊗ R to Bar-Natan homology, with the induced R-structure per page.
pub fn bn_lee_ss(d: &LinkDiagram, reduced: bool) -> Result<SpectralSequence, SsError> {
    bn_lee_ss_with(d, &BuildOptions { reduced, ring: Ring::R, ..Default::default() }, None)
}

pub fn bn_lee_ss_with(
    d: &LinkDiagram,
    opts: &BuildOptions,
    progress: Option<&(dyn Fn(usize, usize) + Sync)>,
) -> Result<SpectralSequence, SsError> {
    let c = build_complex_with(d, &BuildOptions { ring: Ring::R, ..*opts }, progress)?;
    let fc = q_filtration(&c).expect("Bar-Natan complexes are Q-filtered");
    let q = c.q_complex().expect("Bar-Natan complex").q_action();
    Ok(pages_with_action(&fc, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasedModule;

    fn filtered(gr: &[(i32, i32)], d: &[(usize, usize)], levels: &[u32]) -> Result<FilteredComplex, SsError> {
        let module = BasedModule::new(gr.iter().map(|&(h, q)| Grading::new(h, q)).collect());
        let dm = SparseMap::from_entries(gr.len(), gr.len(), d).unwrap();
        FilteredComplex::new(GradedComplex::new(module, dm).unwrap(), levels.to_vec())
    }

    #[test]
    fn zero_differential_collapses_at_once() {
        let fc = filtered(&[(0, 0), (0, 2)], &[], &[0, 1]).unwrap();
        let ss = pages(&fc);
        assert_eq!(ss.pages.len(), 1);
        assert_eq!(ss.collapse_page, 1);
        assert_eq!(ss.first().total(), 2);
    }

    #[test]
    fn one_arrow_of_length_one() {
        let fc = filtered(&[(0, 0), (1, 0)], &[(0, 1)], &[0, 1]).unwrap();
        let ss = pages(&fc);
        assert_eq!(ss.pages.len(), 2);
        assert_eq!(ss.pages[0].total(), 2);
        assert_eq!(ss.pages[0].d_rank, 1);
        assert_eq!(ss.pages[1].total(), 0);
        assert_eq!(ss.collapse_page, 2);
    }

    #[test]
    fn length_two_arrow_waits_for_page_two() {
        let fc = filtered(&[(0, 0), (1, 0)], &[(0, 1)], &[0, 2]).unwrap();
        let ss = pages(&fc);
        let ranks: Vec<usize> = ss.pages.iter().map(|p| p.d_rank).collect();
        assert_eq!(ranks, vec![0, 1, 0]);
        assert_eq!(ss.collapse_page, 3);
    }

    #[test]
    fn rejects_filtration_lowering_differential() {
        assert!(matches!(filtered(&[(0, 0), (1, 0)], &[(0, 1)], &[1, 0]), Err(SsError::NotFiltered { from: 0, target: 1 })));
    }

    #[test]
    fn unknot_reduced_single_pair() {
        let ss = bn_lee_ss(&LinkDiagram::unknot(), true).unwrap();
        assert_eq!(ss.pages.len(), 1);
        assert_eq!(ss.first().total(), 2);
        assert_eq!((ss.first().free_rank(), ss.first().torsion_rank()), (Some(1), Some(0)));
    }
}
