//! Braid closures as PD diagrams.
//!
//! Strands are numbered 1..k left to right and the word is read bottom to
//! top. In `σ_i` the strand from the lower left (SW) goes to the upper right
//! (NE); it passes over for positive letters and under for negative ones.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::diagram::{Dart, LinkDiagram};
use super::KhError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Closure {
    /// Join the top of each strand to its own bottom.
    Trace,
    /// Cap strands 2j-1, 2j at the bottom and at the top.
    Plat,
}

impl FromStr for Closure {
    type Err = KhError;
    fn from_str(s: &str) -> Result<Self, KhError> {
        match s {
            "trace" => Ok(Closure::Trace),
            "plat" => Ok(Closure::Plat),
            _ => Err(KhError::Parse { line: 1, token: s.to_string() }),
        }
    }
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Closure::Trace => "trace",
            Closure::Plat => "plat",
        })
    }
}

/// Parse a word like `"1 -2 1"` (σ_i = i, σ_i^-1 = -i).
pub fn parse_braid_word(s: &str) -> Result<Vec<i32>, KhError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<i32>() {
            Ok(g) if g != 0 => Ok(g),
            _ => Err(KhError::Parse { line: 1, token: t.to_string() }),
        })
        .collect()
}

const SW: usize = 0;
const SE: usize = 1;
const NE: usize = 2;
const NW: usize = 3;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn braid_to_diagram(word: &[i32], strands: usize, closure: Closure) -> Result<LinkDiagram, KhError> {
    if strands == 0 {
        return Err(KhError::Braid("a braid needs at least one strand".into()));
    }
    if closure == Closure::Plat && strands % 2 == 1 {
        return Err(KhError::Braid(format!("plat closure needs an even number of strands, got {strands}")));
    }
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(KhError::Braid(format!("generator {g} out of range for {strands} strands")));
        }
    }

    // Raw segment labels; corners[c] = [SW, SE, NE, NW].
    let mut fresh = 0usize;
    let mut next = || {
        fresh += 1;
        fresh - 1
    };
    let bottom: Vec<usize> = (0..strands).map(|_| next()).collect();
    let mut current = bottom.clone();
    let mut corners: Vec<[usize; 4]> = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (nw, ne) = (next(), next());
        corners.push([current[i], current[i + 1], ne, nw]);
        current[i] = nw;
        current[i + 1] = ne;
    }
    let top = current;

    let mut uf = UnionFind((0..fresh).collect());
    match closure {
        Closure::Trace => {
            for p in 0..strands {
                uf.union(top[p], bottom[p]);
            }
        }
        Closure::Plat => {
            for j in (0..strands).step_by(2) {
                uf.union(bottom[j], bottom[j + 1]);
                uf.union(top[j], top[j + 1]);
            }
        }
    }

    // Arc labels 1.. in order of first appearance, crossing by crossing.
    let mut label: BTreeMap<usize, u32> = BTreeMap::new();
    let mut name = |raw: usize, uf: &mut UnionFind| -> u32 {
        let r = uf.find(raw);
        let n = label.len() as u32 + 1;
        *label.entry(r).or_insert(n)
    };
    let arc_corners: Vec<[u32; 4]> = corners.iter().map(|cs| cs.map(|r| name(r, &mut uf))).collect();
    let base_root = uf.find(bottom[0]);
    let mut free_loops: Vec<u32> = Vec::new();
    let mut roots: Vec<usize> = (0..fresh).map(|r| uf.find(r)).collect();
    roots.sort_unstable();
    roots.dedup();
    for r in roots {
        if !label.contains_key(&r) {
            let n = label.len() as u32 + 1;
            label.insert(r, n);
            free_loops.push(n);
        }
    }
    let basepoint = label[&base_root];

    // Which corner occurrences are arc heads (the arc enters the crossing there).
    let mut heads: Vec<[Option<bool>; 4]> = vec![[None; 4]; word.len()];
    match closure {
        Closure::Trace => {
            for h in heads.iter_mut() {
                *h = [Some(true), Some(true), Some(false), Some(false)];
            }
        }
        Closure::Plat => {
            let mut first_lower = None;
            let mut last_upper = None;
            for (c, cs) in corners.iter().enumerate() {
                for k in [SW, SE] {
                    if cs[k] == bottom[0] && first_lower.is_none() {
                        first_lower = Some((c, k));
                    }
                }
                for k in [NW, NE] {
                    if cs[k] == top[1] {
                        last_upper = Some((c, k));
                    }
                }
            }
            // Travel up from the bottom of strand 1; if it meets no crossing, travel down strand 2.
            if let Some((c, k)) = first_lower.or(last_upper) {
                heads[c][k] = Some(true);
            }
        }
    }

    // Emit slots so that the incoming under-strand comes first.
    let positions = orient_corners(&arc_corners, &heads)?;
    let mut pd = Vec::with_capacity(word.len());
    let mut seeds: Vec<Dart> = Vec::new();
    for (c, (&g, cs)) in word.iter().zip(&arc_corners).enumerate() {
        let enters = positions[c];
        let order = if g > 0 {
            if enters[SE] {
                [SE, NE, NW, SW]
            } else {
                [NW, SW, SE, NE]
            }
        } else if enters[SW] {
            [SW, SE, NE, NW]
        } else {
            [NE, NW, SW, SE]
        };
        pd.push(order.map(|k| cs[k]));
        for (slot, &k) in order.iter().enumerate() {
            if enters[k] {
                seeds.push((c, slot as u8));
            }
        }
    }
    LinkDiagram::new(pd, free_loops, Some(basepoint), &seeds)
}

/// Orient every component of the corner structure: `out[c][k]` is true when the arc at
/// corner `k` enters crossing `c`. Strands go straight through (SW-NE, SE-NW).
fn orient_corners(arcs: &[[u32; 4]], pinned: &[[Option<bool>; 4]]) -> Result<Vec<[bool; 4]>, KhError> {
    let mut ends: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, cs) in arcs.iter().enumerate() {
        for (k, &a) in cs.iter().enumerate() {
            ends.entry(a).or_default().push((c, k));
        }
    }
    let other_end = |c: usize, k: usize| -> (usize, usize) {
        let e = &ends[&arcs[c][k]];
        if e[0] == (c, k) {
            e[1]
        } else {
            e[0]
        }
    };
    let mut out: Vec<[Option<bool>; 4]> = vec![[None; 4]; arcs.len()];
    // Visit pinned corners first so their components take the pinned direction.
    let mut starts: Vec<(usize, usize, bool)> = Vec::new();
    for (c, p) in pinned.iter().enumerate() {
        for k in 0..4 {
            if let Some(v) = p[k] {
                starts.push((c, k, v));
            }
        }
    }
    for c in 0..arcs.len() {
        for k in 0..4 {
            starts.push((c, k, true));
        }
    }
    for (c, k, v) in starts {
        if let Some(existing) = out[c][k] {
            if pinned[c][k].is_some_and(|p| p != existing) {
                return Err(KhError::Orientation { crossing: c });
            }
            continue;
        }
        // Walk the component from an entering corner.
        let (mut c, mut k) = if v { (c, k) } else { other_end(c, k) };
        while out[c][k].is_none() {
            out[c][k] = Some(true);
            let exit = (k + 2) % 4;
            out[c][exit] = Some(false);
            (c, k) = other_end(c, exit);
        }
    }
    Ok(out.into_iter().map(|o| o.map(|v| v.expect("every corner is on a component"))).collect())
}
