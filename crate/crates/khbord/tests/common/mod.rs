//! Independent oracles: dense F2 linear algebra and a brute-force cube of resolutions.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use khbord::khovanov::{LinkDiagram, Sign};

/// Rank over F2 of a matrix given as rows of bits.
pub fn dense_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// |numerator| of the continued fraction a1 + 1/(a2 + 1/(...)).
pub fn cf_determinant(cf: &[i32]) -> u64 {
    let (mut p, mut q) = (1i64, 0i64);
    for &a in cf.iter().rev() {
        (p, q) = (a as i64 * p + q, p);
    }
    p.unsigned_abs()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Gen {
    vertex: u32,
    /// Bit i set: circle i carries X.
    labels: u64,
    qpow: u8,
}

/// Circles at vertex `v`, as a map from arc label to circle index (ordered by first arc seen).
fn circles(pd: &[[u32; 4]], arcs: &[u32], v: u32) -> (HashMap<u32, usize>, usize) {
    let idx: HashMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    fn root(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut join = |a: u32, b: u32| {
        let (x, y) = (root(&mut parent, idx[&a]), root(&mut parent, idx[&b]));
        parent[x] = y;
    };
    for (i, x) in pd.iter().enumerate() {
        if v >> i & 1 == 0 {
            join(x[0], x[1]);
            join(x[2], x[3]);
        } else {
            join(x[0], x[3]);
            join(x[1], x[2]);
        }
    }
    let mut label = HashMap::new();
    let mut out = HashMap::new();
    for &a in arcs {
        let r = root(&mut parent, idx[&a]);
        let n = label.len();
        let c = *label.entry(r).or_insert(n);
        out.insert(a, c);
    }
    (out, label.len())
}

/// Brute-force homology dimensions by (h, q).
///
/// `bn` switches from Khovanov (X² = 0) to Bar-Natan over F2[Q]/(Q²) (X² = QX).
/// The reduced complex keeps generators whose based circle carries X, shifted up by one in q.
pub fn oracle_homology(d: &LinkDiagram, reduced: bool, bn: bool) -> BTreeMap<(i32, i32), usize> {
    let pd = d.pd();
    assert!(d.free_loops().is_empty(), "oracle handles diagrams without free loops");
    let mut arcs: Vec<u32> = pd.iter().flatten().copied().collect();
    arcs.sort_unstable();
    arcs.dedup();
    let n = pd.len();
    let n_minus = d.crossings().iter().filter(|c| c.sign == Sign::Negative).count() as i32;
    let n_plus = n as i32 - n_minus;
    let base = d.basepoint();
    let qpows: &[u8] = if bn { &[0, 1] } else { &[0] };

    let smoothings: Vec<(HashMap<u32, usize>, usize)> = (0..1u32 << n).map(|v| circles(&pd, &arcs, v)).collect();
    let mut gens = Vec::new();
    let mut grading = Vec::new();
    for v in 0..1u32 << n {
        let (of, k) = &smoothings[v as usize];
        let b = of[&base];
        for labels in 0..1u64 << k {
            if reduced && labels >> b & 1 == 0 {
                continue;
            }
            for &qpow in qpows {
                let xs = labels.count_ones() as i32;
                let r = v.count_ones() as i32;
                let q = (*k as i32 - 2 * xs) + r + n_plus - 2 * n_minus - 2 * qpow as i32 + reduced as i32;
                gens.push(Gen { vertex: v, labels, qpow });
                grading.push((r - n_minus, q));
            }
        }
    }
    let index: HashMap<Gen, usize> = gens.iter().enumerate().map(|(i, g)| (*g, i)).collect();

    let mut image: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    for (gi, g) in gens.iter().enumerate() {
        let (of_v, _) = &smoothings[g.vertex as usize];
        let has_x = |c: usize| g.labels >> c & 1 == 1;
        for i in 0..n {
            if g.vertex >> i & 1 == 1 {
                continue;
            }
            let w = g.vertex | 1 << i;
            let (of_w, kw) = &smoothings[w as usize];
            let x = pd[i];
            let (ca, cc) = (of_v[&x[0]], of_v[&x[2]]);
            // Labels at w carried over from circles away from crossing i.
            let mut carried = 0u64;
            let mut touched = Vec::new();
            for c in 0..*kw {
                let arc = *of_w.iter().find(|(_, &cw)| cw == c).map(|(a, _)| a).unwrap();
                let cv = of_v[&arc];
                let near = x.iter().any(|a| of_w[a] == c);
                if near {
                    touched.push(c);
                } else if has_x(cv) {
                    carried |= 1 << c;
                }
            }
            // (labels at w, extra Q power)
            let mut outs: Vec<(u64, u8)> = Vec::new();
            if ca != cc {
                let m = touched[0];
                match (has_x(ca), has_x(cc)) {
                    (false, false) => outs.push((carried, 0)),
                    (true, false) | (false, true) => outs.push((carried | 1 << m, 0)),
                    (true, true) => {
                        if bn {
                            outs.push((carried | 1 << m, 1));
                        }
                    }
                }
            } else {
                let (s, t) = (touched[0], touched[1]);
                if has_x(ca) {
                    outs.push((carried | 1 << s | 1 << t, 0));
                } else {
                    outs.push((carried | 1 << s, 0));
                    outs.push((carried | 1 << t, 0));
                    if bn {
                        outs.push((carried, 1));
                    }
                }
            }
            for (labels, dq) in outs {
                let qpow = g.qpow + dq;
                if qpow > 1 {
                    continue;
                }
                if let Some(&j) = index.get(&Gen { vertex: w, labels, qpow }) {
                    image[gi].push(j);
                }
            }
        }
    }

    let mut blocks: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
    for (i, &g) in grading.iter().enumerate() {
        blocks.entry(g).or_default().push(i);
    }
    let rank_out = |(h, q): (i32, i32)| -> usize {
        let (Some(src), Some(tgt)) = (blocks.get(&(h, q)), blocks.get(&(h + 1, q))) else { return 0 };
        let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let rows = src
            .iter()
            .map(|&s| {
                let mut row = vec![false; tgt.len()];
                for j in &image[s] {
                    row[pos[j]] ^= true;
                }
                row
            })
            .collect();
        dense_rank(rows)
    };
    let mut out = BTreeMap::new();
    for (&(h, q), members) in &blocks {
        let dim = members.len() - rank_out((h, q)) - rank_out((h - 1, q));
        if dim > 0 {
            out.insert((h, q), dim);
        }
    }
    out
}

pub fn table(h: &khbord::algebra::Homology) -> BTreeMap<(i32, i32), usize> {
    h.dims.iter().filter(|(_, &n)| n > 0).map(|(g, &n)| ((g.h, g.q), n)).collect()
}
