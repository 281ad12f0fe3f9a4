//! Planar-diagram (PD) link diagrams.
//!
//! A crossing `X(i,j,k,l)` lists its four arcs counter-clockwise, starting
//! with the incoming under-strand; the under-strand runs `i -> k`. The
//! crossing is positive when the over-strand enters at `l` and leaves at `j`.
//!
//! ```text
//!     l       k            l       k
//!      \     /              \     /
//!       \   /                \   /
//!        \ /                  /
//!         /                  / \
//!        / \                /   \
//!       /   \              /     \
//!     i       j          i       j
//!   positive: l -> j    negative: j -> l
//! ```

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::KhError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [u32; 4],
    pub sign: Sign,
}

/// A dart is one end of an arc: `(crossing, slot)`.
pub type Dart = (usize, u8);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: Vec<u32>,
    basepoint: u32,
    arcs: Vec<u32>,
}

impl LinkDiagram {
    /// Validate a PD code and orient it. `heads` pins darts where an arc enters its crossing;
    /// components with neither a pinned dart nor an under-passage are oriented arbitrarily.
    pub fn new(pd: Vec<[u32; 4]>, free_loops: Vec<u32>, basepoint: Option<u32>, heads: &[Dart]) -> Result<Self, KhError> {
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for x in &pd {
            for &a in x {
                *count.entry(a).or_default() += 1;
            }
        }
        for (&a, &n) in &count {
            if n != 2 {
                return Err(KhError::ArcMultiplicity { arc: a, count: n });
            }
        }
        for &a in &free_loops {
            if count.contains_key(&a) {
                return Err(KhError::ArcMultiplicity { arc: a, count: 3 });
            }
        }
        let loop_set: BTreeSet<u32> = free_loops.iter().copied().collect();
        if loop_set.len() != free_loops.len() {
            let dup = free_loops.iter().find(|a| free_loops.iter().filter(|b| b == a).count() > 1).copied().unwrap_or(0);
            return Err(KhError::ArcMultiplicity { arc: dup, count: 2 });
        }
        let mut arcs: Vec<u32> = count.keys().copied().chain(loop_set.iter().copied()).collect();
        arcs.sort_unstable();
        let (free_loops, arcs) = if arcs.is_empty() { (vec![1], vec![1]) } else { (free_loops, arcs) };

        let basepoint = match basepoint {
            Some(b) if arcs.binary_search(&b).is_ok() => b,
            Some(b) => return Err(KhError::Basepoint { arc: b }),
            None => arcs[0],
        };

        let entering = orient(&pd, heads)?;
        let crossings = pd
            .iter()
            .enumerate()
            .map(|(c, &slots)| Crossing { slots, sign: if entering[c][3] { Sign::Positive } else { Sign::Negative } })
            .collect();
        Ok(LinkDiagram { crossings, free_loops, basepoint, arcs })
    }

    pub fn unknot() -> Self {
        LinkDiagram { crossings: Vec::new(), free_loops: vec![1], basepoint: 1, arcs: vec![1] }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> &[u32] {
        &self.free_loops
    }

    pub fn basepoint(&self) -> u32 {
        self.basepoint
    }

    /// All arc labels, sorted.
    pub fn arcs(&self) -> &[u32] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.len() - self.n_plus()
    }

    pub fn pd(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(|c| c.slots).collect()
    }

    /// Index of each arc label in `arcs()`.
    pub fn arc_index(&self, label: u32) -> usize {
        self.arcs.binary_search(&label).expect("arc label belongs to the diagram")
    }

    /// Same projection with every crossing switched. Orientation and arc labels are kept.
    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [i, j, k, l] = c.slots;
                match c.sign {
                    Sign::Positive => Crossing { slots: [l, i, j, k], sign: Sign::Negative },
                    Sign::Negative => Crossing { slots: [j, k, l, i], sign: Sign::Positive },
                }
            })
            .collect();
        LinkDiagram { crossings, free_loops: self.free_loops.clone(), basepoint: self.basepoint, arcs: self.arcs.clone() }
    }

    /// The other end of the arc at dart `d`.
    pub(crate) fn partner(&self) -> BTreeMap<Dart, Dart> {
        partner_map(&self.pd())
    }

    /// Number of link components, counting crossingless loops.
    pub fn components(&self) -> usize {
        let pd = self.pd();
        let partner = partner_map(&pd);
        let mut seen = vec![[false; 4]; pd.len()];
        let mut n = self.free_loops.len();
        for c in 0..pd.len() {
            for s in 0..4u8 {
                if seen[c][s as usize] {
                    continue;
                }
                n += 1;
                let mut d = (c, s);
                while !seen[d.0][d.1 as usize] {
                    seen[d.0][d.1 as usize] = true;
                    let across = (d.0, (d.1 + 2) % 4);
                    seen[across.0][across.1 as usize] = true;
                    d = partner[&across];
                }
            }
        }
        n
    }
}

pub(crate) fn partner_map(pd: &[[u32; 4]]) -> BTreeMap<Dart, Dart> {
    let mut ends: BTreeMap<u32, Vec<Dart>> = BTreeMap::new();
    for (c, x) in pd.iter().enumerate() {
        for (s, &a) in x.iter().enumerate() {
            ends.entry(a).or_default().push((c, s as u8));
        }
    }
    let mut m = BTreeMap::new();
    for e in ends.values() {
        m.insert(e[0], e[1]);
        m.insert(e[1], e[0]);
    }
    m
}

/// Decide, for every dart, whether its arc enters the crossing there.
///
/// Darts are 2-coloured: the two ends of an arc differ, and so do the two
/// ends of a strand passing through a crossing.
fn orient(pd: &[[u32; 4]], heads: &[Dart]) -> Result<Vec<[bool; 4]>, KhError> {
    let partner = partner_map(pd);
    let mut pinned: BTreeMap<Dart, bool> = BTreeMap::new();
    let pin = |d: Dart, v: bool, pinned: &mut BTreeMap<Dart, bool>| -> Result<(), KhError> {
        match pinned.insert(d, v) {
            Some(old) if old != v => Err(KhError::Orientation { crossing: d.0 }),
            _ => Ok(()),
        }
    };
    for c in 0..pd.len() {
        pin((c, 0), true, &mut pinned)?;
        pin((c, 2), false, &mut pinned)?;
    }
    for &d in heads {
        if d.0 >= pd.len() || d.1 > 3 {
            return Err(KhError::Orientation { crossing: d.0 });
        }
        pin(d, true, &mut pinned)?;
    }

    let mut colour: Vec<[Option<bool>; 4]> = vec![[None; 4]; pd.len()];
    for c in 0..pd.len() {
        for s in 0..4u8 {
            if colour[c][s as usize].is_some() {
                continue;
            }
            // Relative colouring of the whole component, then fix the global flip.
            let mut comp: Vec<(Dart, bool)> = Vec::new();
            let mut rel: BTreeMap<Dart, bool> = BTreeMap::new();
            let mut queue = VecDeque::from([((c, s), false)]);
            rel.insert((c, s), false);
            while let Some((d, v)) = queue.pop_front() {
                comp.push((d, v));
                for e in [partner[&d], (d.0, (d.1 + 2) % 4)] {
                    match rel.get(&e) {
                        Some(&w) if w == v => return Err(KhError::Orientation { crossing: e.0 }),
                        Some(_) => {}
                        None => {
                            rel.insert(e, !v);
                            queue.push_back((e, !v));
                        }
                    }
                }
            }
            let mut flip: Option<bool> = None;
            for &(d, v) in &comp {
                if let Some(&p) = pinned.get(&d) {
                    let f = p != v;
                    match flip {
                        Some(g) if g != f => return Err(KhError::Orientation { crossing: d.0 }),
                        _ => flip = Some(f),
                    }
                }
            }
            let flip = flip.unwrap_or(true);
            for (d, v) in comp {
                colour[d.0][d.1 as usize] = Some(v ^ flip);
            }
        }
    }
    Ok(colour.into_iter().map(|c| c.map(|v| v.expect("every dart is coloured"))).collect())
}

/// Parse whitespace-separated `X(a,b,c,d)` tokens, optional `basepoint: <arc>` and
/// `loop: <arc>` lines (the latter adds a crossingless circle), and `#` comments.
pub fn parse_pd(text: &str) -> Result<LinkDiagram, KhError> {
    let mut pd = Vec::new();
    let mut basepoint = None;
    let mut loops = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |token: &str| KhError::Parse { line: lineno + 1, token: token.to_string() };
        if let Some((key, value)) = line.split_once(':') {
            let value = value.trim();
            let arc: u32 = value.parse().map_err(|_| bad(value))?;
            match key.trim() {
                "basepoint" => basepoint = Some(arc),
                "loop" => loops.push(arc),
                other => return Err(bad(other)),
            }
            continue;
        }
        for token in line.split_whitespace() {
            let inner = token
                .strip_prefix("X(")
                .or_else(|| token.strip_prefix("X["))
                .and_then(|t| t.strip_suffix(')').or_else(|| t.strip_suffix(']')))
                .ok_or_else(|| bad(token))?;
            let labels: Vec<u32> = inner
                .split(',')
                .map(|s| s.trim().parse::<u32>().ok().filter(|&a| a > 0))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad(token))?;
            let slots: [u32; 4] = labels.try_into().map_err(|_| bad(token))?;
            pd.push(slots);
        }
    }
    if pd.is_empty() && loops.is_empty() {
        loops.push(basepoint.unwrap_or(1));
    }
    LinkDiagram::new(pd, loops, basepoint, &[])
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.crossings.iter().map(|c| {
            let [i, j, k, l] = c.slots;
            format!("X({i},{j},{k},{l})")
        }).collect();
        if !xs.is_empty() {
            writeln!(f, "{}", xs.join(" "))?;
        }
        for l in &self.free_loops {
            writeln!(f, "loop: {l}")?;
        }
        write!(f, "basepoint: {}", self.basepoint)
    }
}
