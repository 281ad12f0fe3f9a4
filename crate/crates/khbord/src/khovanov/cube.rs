//! The cube of resolutions and the Khovanov / Bar-Natan chain complexes.
//!
//! Generators are enumerated vertex by vertex (vertex bit `i` is the
//! smoothing of crossing `i`). Within a vertex, circles are ordered by their
//! smallest arc label and a labeling is a bitmask with bit `i` set when
//! circle `i` carries `v-`. Over R each labeling contributes two
//! generators, `x` and `Q x`, at consecutive indices. In the reduced complex
//! the based circle is always `v-` and its bit is dropped from the index.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::diagram::LinkDiagram;
use super::frobenius::{merge, split, Label, Ring};
use super::KhError;
use crate::algebra::{
    homology_over_r, BasedModule, GradedComplex, Grading, Homology, QComplex, RHomology, SparseMap,
};

pub const DEFAULT_MAX_CROSSINGS: usize = 16;

/// Vertices between progress reports.
pub const PROGRESS_INTERVAL: usize = 1 << 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedDiagram {
    pub vertex: u32,
    /// Arc labels of each circle, circles ordered by smallest label.
    pub circles: Vec<Vec<u32>>,
    pub based_circle: usize,
}

/// Arc-index form of a diagram, enough to smooth it at any vertex.
pub(crate) struct Smoother {
    slots: Vec<[usize; 4]>,
    n_arcs: usize,
    based_arc: usize,
}

impl Smoother {
    pub(crate) fn new(d: &LinkDiagram) -> Self {
        let slots = d.crossings().iter().map(|c| c.slots.map(|a| d.arc_index(a))).collect();
        Smoother { slots, n_arcs: d.arcs().len(), based_arc: d.arc_index(d.basepoint()) }
    }

    /// Circle index of every arc at vertex `v`, and the number of circles.
    pub(crate) fn circles(&self, v: u32) -> (Vec<u8>, u8) {
        let mut parent: Vec<usize> = (0..self.n_arcs).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let union = |a: usize, b: usize, p: &mut Vec<usize>| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra.max(rb)] = ra.min(rb);
            }
        };
        for (i, &[a, b, c, d]) in self.slots.iter().enumerate() {
            if v >> i & 1 == 0 {
                union(a, b, &mut parent);
                union(c, d, &mut parent);
            } else {
                union(a, d, &mut parent);
                union(b, c, &mut parent);
            }
        }
        let mut id = vec![u8::MAX; self.n_arcs];
        let mut out = vec![0u8; self.n_arcs];
        let mut count = 0u8;
        for a in 0..self.n_arcs {
            let r = find(&mut parent, a);
            if id[r] == u8::MAX {
                id[r] = count;
                count += 1;
            }
            out[a] = id[r];
        }
        (out, count)
    }
}

pub fn resolve(d: &LinkDiagram, v: u32) -> ResolvedDiagram {
    let s = Smoother::new(d);
    let (of_arc, count) = s.circles(v);
    let mut circles = vec![Vec::new(); count as usize];
    for (a, &c) in of_arc.iter().enumerate() {
        circles[c as usize].push(d.arcs()[a]);
    }
    ResolvedDiagram { vertex: v, circles, based_circle: of_arc[s.based_arc] as usize }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub reduced: bool,
    pub ring: Ring,
    pub max_crossings: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { reduced: false, ring: Ring::F2, max_crossings: DEFAULT_MAX_CROSSINGS }
    }
}

/// A generator `(vertex, labeling, Q-power)`. `labeling` has one bit per circle, `1 = v-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KhGenerator {
    pub vertex: u32,
    pub labeling: u64,
    pub qpow: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Body {
    F2(GradedComplex),
    R(QComplex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeComplex {
    ring: Ring,
    reduced: bool,
    n: usize,
    n_plus: usize,
    n_minus: usize,
    offsets: Vec<usize>,
    circles: Vec<u8>,
    based: Vec<u8>,
    body: Body,
}

fn compress(labeling: u64, based: u8) -> u64 {
    let low = labeling & ((1u64 << based) - 1);
    let high = (labeling >> (based + 1)) << based;
    low | high
}

fn expand(compressed: u64, based: u8) -> u64 {
    let low = compressed & ((1u64 << based) - 1);
    let high = (compressed >> based) << (based + 1);
    low | high | 1u64 << based
}

struct Layout {
    ring: Ring,
    reduced: bool,
    offsets: Vec<usize>,
    circles: Vec<u8>,
    based: Vec<u8>,
}

impl Layout {
    fn new(ring: Ring, reduced: bool, circles: Vec<u8>, based: Vec<u8>) -> Self {
        let mut offsets = Vec::with_capacity(circles.len() + 1);
        let mut total = 0usize;
        offsets.push(0);
        for &c in &circles {
            total += (1usize << (c as usize - reduced as usize)) * Self::mult_of(ring);
            offsets.push(total);
        }
        Layout { ring, reduced, offsets, circles, based }
    }

    fn mult_of(ring: Ring) -> usize {
        match ring {
            Ring::F2 => 1,
            Ring::R => 2,
        }
    }

    fn mult(&self) -> usize {
        Self::mult_of(self.ring)
    }

    fn index(&self, v: u32, labeling: u64, qpow: u8) -> usize {
        let l = if self.reduced { compress(labeling, self.based[v as usize]) } else { labeling };
        self.offsets[v as usize] + l as usize * self.mult() + qpow as usize
    }

    fn generator(&self, i: usize) -> KhGenerator {
        let v = self.offsets.partition_point(|&o| o <= i) - 1;
        let local = i - self.offsets[v];
        let (l, qpow) = (local / self.mult(), (local % self.mult()) as u8);
        let labeling = if self.reduced { expand(l as u64, self.based[v]) } else { l as u64 };
        KhGenerator { vertex: v as u32, labeling, qpow }
    }
}

fn grading(n_plus: usize, n_minus: usize, reduced: bool, g: &KhGenerator, circles: u8) -> Grading {
    let w = g.vertex.count_ones() as i32;
    let minus = g.labeling.count_ones() as i32;
    let h = w - n_minus as i32;
    let q = (circles as i32 - 2 * minus) - 2 * g.qpow as i32 + w + n_plus as i32 - 2 * n_minus as i32 + reduced as i32;
    Grading::new(h, q)
}

/// How the circles at `v` map to those at `v + e_c`.
enum Edge {
    Merge { a: u8, b: u8, into: u8 },
    Split { from: u8, b1: u8, b2: u8 },
    Zero,
}

fn edge(slots: &[usize; 4], cv: &[u8], nv: u8, cw: &[u8], nw: u8) -> (Edge, Vec<(u8, u8)>) {
    let mut inv_v: Vec<u8> = slots.iter().map(|&a| cv[a]).collect();
    inv_v.sort_unstable();
    inv_v.dedup();
    let mut inv_w: Vec<u8> = slots.iter().map(|&a| cw[a]).collect();
    inv_w.sort_unstable();
    inv_w.dedup();
    let kind = if nw + 1 == nv {
        Edge::Merge { a: inv_v[0], b: inv_v[1], into: inv_w[0] }
    } else if nw == nv + 1 {
        Edge::Split { from: inv_v[0], b1: inv_w[0], b2: inv_w[1] }
    } else {
        Edge::Zero
    };
    let mut passive = vec![None; nv as usize];
    for (a, &c) in cv.iter().enumerate() {
        if !inv_v.contains(&c) {
            passive[c as usize] = Some(cw[a]);
        }
    }
    let passive = passive.into_iter().enumerate().filter_map(|(i, t)| t.map(|t| (i as u8, t))).collect();
    (kind, passive)
}

pub fn build_complex(d: &LinkDiagram, reduced: bool, ring: Ring) -> Result<CubeComplex, KhError> {
    build_complex_with(d, &BuildOptions { reduced, ring, ..Default::default() }, None)
}

/// Build the cube complex. `progress(done, total)` is called every [`PROGRESS_INTERVAL`] vertices.
pub fn build_complex_with(
    d: &LinkDiagram,
    opts: &BuildOptions,
    progress: Option<&(dyn Fn(usize, usize) + Sync)>,
) -> Result<CubeComplex, KhError> {
    let n = d.len();
    if n > opts.max_crossings {
        return Err(KhError::TooManyCrossings { crossings: n, max: opts.max_crossings });
    }
    let smoother = Smoother::new(d);
    let n_vertices = 1usize << n;
    let smoothings: Vec<(Vec<u8>, u8)> = (0..n_vertices as u32).into_par_iter().map(|v| smoother.circles(v)).collect();
    if smoothings.iter().any(|s| s.1 > 62) {
        return Err(KhError::TooManyCircles);
    }
    let circles: Vec<u8> = smoothings.iter().map(|s| s.1).collect();
    let based: Vec<u8> = smoothings.iter().map(|s| s.0[smoother.based_arc]).collect();
    let layout = Layout::new(opts.ring, opts.reduced, circles, based);
    let (n_plus, n_minus) = (d.n_plus(), d.n_minus());
    let mult = layout.mult();
    let done = AtomicUsize::new(0);

    let per_vertex: Vec<(Vec<Vec<u32>>, Vec<Grading>)> = (0..n_vertices)
        .into_par_iter()
        .map(|v| {
            let (cv, nv) = (&smoothings[v].0, smoothings[v].1);
            let start = layout.offsets[v];
            let count = layout.offsets[v + 1] - start;
            let mut cols: Vec<Vec<u32>> = vec![Vec::new(); count];
            let mut grads = Vec::with_capacity(count);
            for local in 0..count {
                let g = layout.generator(start + local);
                grads.push(grading(n_plus, n_minus, opts.reduced, &g, nv));
            }
            for (c, slots) in smoother.slots.iter().enumerate() {
                if v >> c & 1 == 1 {
                    continue;
                }
                let w = v | 1 << c;
                let (cw, nw) = (&smoothings[w].0, smoothings[w].1);
                let (kind, passive) = edge(slots, cv, nv, cw, nw);
                if matches!(kind, Edge::Zero) {
                    continue;
                }
                for (local, col) in cols.iter_mut().enumerate() {
                    let g = layout.generator(start + local);
                    let mut base = 0u64;
                    for &(s, t) in &passive {
                        base |= (g.labeling >> s & 1) << t;
                    }
                    let bit = |i: u8| Label::from_bit(g.labeling >> i & 1 == 1);
                    let mut emit = |labeling: u64, r: crate::algebra::RElement| {
                        let qpow = g.qpow + r.q as u8;
                        if qpow as usize >= mult {
                            return;
                        }
                        col.push(layout.index(w as u32, labeling, qpow) as u32);
                    };
                    match kind {
                        Edge::Merge { a, b, into } => {
                            if let Some((l, r)) = merge(bit(a), bit(b), opts.ring) {
                                emit(base | (l.bit() as u64) << into, r);
                            }
                        }
                        Edge::Split { from, b1, b2 } => {
                            for &((x, y), r) in split(bit(from), opts.ring) {
                                emit(base | (x.bit() as u64) << b1 | (y.bit() as u64) << b2, r);
                            }
                        }
                        Edge::Zero => {}
                    }
                }
            }
            if let Some(p) = progress {
                let k = done.fetch_add(1, Ordering::Relaxed) + 1;
                if k % PROGRESS_INTERVAL == 0 {
                    p(k, n_vertices);
                }
            }
            (cols, grads)
        })
        .collect();

    let total = *layout.offsets.last().unwrap();
    let mut cols = Vec::with_capacity(total);
    let mut grads = Vec::with_capacity(total);
    let mut vertices = Vec::with_capacity(total);
    for (v, (c, g)) in per_vertex.into_iter().enumerate() {
        vertices.extend(std::iter::repeat(v as u32).take(c.len()));
        cols.extend(c);
        grads.extend(g);
    }
    let module = BasedModule::new(grads).with_vertices(vertices);
    let dmap = SparseMap::from_columns(total, cols)?;
    let complex = GradedComplex::new(module, dmap)?;
    let body = match opts.ring {
        Ring::F2 => Body::F2(complex),
        Ring::R => {
            let qcols = (0..total).map(|i| if i % 2 == 0 { vec![i as u32 + 1] } else { Vec::new() }).collect();
            Body::R(QComplex::new(complex, SparseMap::from_columns(total, qcols)?)?)
        }
    };
    Ok(CubeComplex {
        ring: opts.ring,
        reduced: opts.reduced,
        n,
        n_plus,
        n_minus,
        offsets: layout.offsets,
        circles: layout.circles,
        based: layout.based,
        body,
    })
}

impl CubeComplex {
    fn layout(&self) -> Layout {
        Layout {
            ring: self.ring,
            reduced: self.reduced,
            offsets: self.offsets.clone(),
            circles: self.circles.clone(),
            based: self.based.clone(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn reduced(&self) -> bool {
        self.reduced
    }

    pub fn crossings(&self) -> usize {
        self.n
    }

    pub fn n_plus(&self) -> usize {
        self.n_plus
    }

    pub fn n_minus(&self) -> usize {
        self.n_minus
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The underlying F2 complex (for R, the F2 complex with Q written out).
    pub fn graded(&self) -> &GradedComplex {
        match &self.body {
            Body::F2(c) => c,
            Body::R(q) => q.underlying(),
        }
    }

    pub fn q_complex(&self) -> Option<&QComplex> {
        match &self.body {
            Body::F2(_) => None,
            Body::R(q) => Some(q),
        }
    }

    /// Number of generators at a vertex.
    pub fn vertex_rank(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn circles_at(&self, v: u32) -> usize {
        self.circles[v as usize] as usize
    }

    pub fn generator(&self, i: usize) -> KhGenerator {
        self.layout().generator(i)
    }

    pub fn index_of(&self, g: &KhGenerator) -> Option<usize> {
        let v = g.vertex as usize;
        if v + 1 >= self.offsets.len() || g.labeling >> self.circles[v] != 0 || g.qpow as usize >= Layout::mult_of(self.ring) {
            return None;
        }
        if self.reduced && g.labeling >> self.based[v] & 1 == 0 {
            return None;
        }
        Some(self.layout().index(g.vertex, g.labeling, g.qpow))
    }

    /// Dimensions over F2 of the homology of the underlying complex.
    pub fn homology(&self) -> Homology {
        self.graded().homology()
    }

    /// The R-module structure of the homology; `None` over F2.
    pub fn homology_over_r(&self) -> Option<RHomology> {
        self.q_complex().map(homology_over_r)
    }

    pub fn describe(&self, i: usize) -> String {
        let g = self.generator(i);
        let bits: String = (0..self.n).map(|c| if g.vertex >> c & 1 == 1 { '1' } else { '0' }).collect();
        let labels: String = (0..self.circles[g.vertex as usize])
            .map(|c| if g.labeling >> c & 1 == 1 { '-' } else { '+' })
            .collect();
        let q = if g.qpow == 1 { "Q" } else { "" };
        format!("{q}[{bits}|{labels}]")
    }
}

/// The R-dual (or F2-dual) complex, identified with the cube complex of the mirror diagram.
///
/// Vertex `v` goes to its complement and every free circle label is flipped; in
/// the reduced case the based circle keeps `v-`. Unit arrows reverse; a Q-arrow
/// `x -> Q y` dualises to `y -> Q x`. For reduced Bar-Natan complexes the dual of
/// `v+` on a free circle is `v- + Q v+`.
pub fn mirror_complex(c: &CubeComplex) -> CubeComplex {
    let n_vertices = c.circles.len();
    let full = (n_vertices - 1) as u32;
    let circles: Vec<u8> = (0..n_vertices).map(|u| c.circles[u ^ full as usize]).collect();
    let based: Vec<u8> = (0..n_vertices).map(|u| c.based[u ^ full as usize]).collect();
    let old = c.layout();
    let new = Layout::new(c.ring, c.reduced, circles, based);
    let mult = new.mult();
    let total = c.len();

    let image = |i: usize| -> usize {
        let g = old.generator(i);
        let v = g.vertex as usize;
        let free = if c.reduced { ((1u64 << c.circles[v]) - 1) & !(1u64 << c.based[v]) } else { (1u64 << c.circles[v]) - 1 };
        new.index(g.vertex ^ full, g.labeling ^ free, g.qpow)
    };
    let map: Vec<usize> = (0..total).into_par_iter().map(image).collect();

    let old_module = c.graded().module();
    let mut grads = vec![Grading::new(0, 0); total];
    let mut vertices = vec![0u32; total];
    for i in 0..total {
        let g = old_module.grading(i);
        let qpow = (i - old.offsets[old.generator(i).vertex as usize]) % mult;
        grads[map[i]] = Grading::new(-g.h, if qpow == 0 { -g.q } else { -g.q - 4 });
        vertices[map[i]] = old_module.vertex(i).expect("cube complexes record vertices") ^ full;
    }

    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); total];
    let d = c.graded().differential();
    for x in 0..total {
        for &y in d.column(x) {
            let (px, py) = (x % mult, y as usize % mult);
            let (x2, y2) = (map[x], map[y as usize]);
            if px == py {
                cols[y2].push(x2 as u32);
            } else {
                cols[y2 - 1].push(x2 as u32 + 1);
            }
        }
    }
    let mut dmap = SparseMap::from_columns(total, cols).expect("indices stay in range");
    if c.reduced && c.ring == Ring::R {
        // The based circle's X acts as Q, so the dual of v+ on a free circle is v- + Q v+
        // (the Frobenius automorphism X -> X + Q). The twist is an involution.
        let twist: Vec<Vec<u32>> = (0..total)
            .map(|i| {
                let mut col = vec![i as u32];
                if i % 2 == 0 {
                    let g = new.generator(i);
                    let v = g.vertex as usize;
                    for b in 0..new.circles[v] {
                        if b != new.based[v] && g.labeling >> b & 1 == 1 {
                            col.push(new.index(g.vertex, g.labeling & !(1u64 << b), 1) as u32);
                        }
                    }
                }
                col
            })
            .collect();
        let twist = SparseMap::from_columns(total, twist).expect("indices stay in range");
        dmap = twist.compose(&dmap).compose(&twist);
    }
    let module = BasedModule::new(grads).with_vertices(vertices);
    let complex = GradedComplex::new(module, dmap).expect("the dual of a complex is a complex");
    let body = match c.ring {
        Ring::F2 => Body::F2(complex),
        Ring::R => {
            let q = c.q_complex().expect("R complexes carry Q").q_action().clone();
            Body::R(QComplex::new(complex, q).expect("Q is unchanged by duality"))
        }
    };
    CubeComplex {
        ring: c.ring,
        reduced: c.reduced,
        n: c.n,
        n_plus: c.n_minus,
        n_minus: c.n_plus,
        offsets: new.offsets,
        circles: new.circles,
        based: new.based,
        body,
    }
}
