//! Gaussian cancellation on a based F2 complex.
//!
//! Cancelling an arrow `x -> y` removes both generators and adds the zigzag
//! `w -> z` for every `w -> y`, `x -> z`. The result is chain homotopy
//! equivalent to the input. Optional bookkeeping carries an endomorphism
//! (the Q-action) and representative cycles through the reduction.

/// Sorted adjacency lists with symmetric-difference updates.
#[derive(Clone, Debug, Default)]
struct Adjacency {
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
}

fn toggle(list: &mut Vec<u32>, v: u32) {
    match list.binary_search(&v) {
        Ok(i) => {
            list.remove(i);
        }
        Err(i) => list.insert(i, v),
    }
}

fn remove(list: &mut Vec<u32>, v: u32) {
    if let Ok(i) = list.binary_search(&v) {
        list.remove(i);
    }
}

impl Adjacency {
    fn new(n: usize, cols: &[Vec<u32>]) -> Self {
        let mut out: Vec<Vec<u32>> = cols.to_vec();
        for o in out.iter_mut() {
            o.sort_unstable();
            o.dedup();
        }
        let mut inn = vec![Vec::new(); n];
        for (x, o) in out.iter().enumerate() {
            for &y in o {
                inn[y as usize].push(x as u32);
            }
        }
        Adjacency { out, inn }
    }

    fn flip(&mut self, x: u32, z: u32) {
        toggle(&mut self.out[x as usize], z);
        toggle(&mut self.inn[z as usize], x);
    }

    fn detach(&mut self, g: u32) {
        for z in std::mem::take(&mut self.out[g as usize]) {
            remove(&mut self.inn[z as usize], g);
        }
        for w in std::mem::take(&mut self.inn[g as usize]) {
            remove(&mut self.out[w as usize], g);
        }
    }
}

pub struct Reducer {
    d: Adjacency,
    alive: Vec<bool>,
    endo: Option<Adjacency>,
    reps: Option<Vec<Vec<u32>>>,
    cancellations: usize,
}

impl Reducer {
    /// `cols[x]` lists the targets of `d(x)`.
    pub fn new(n: usize, cols: &[Vec<u32>]) -> Self {
        assert_eq!(cols.len(), n);
        Reducer {
            d: Adjacency::new(n, cols),
            alive: vec![true; n],
            endo: None,
            reps: None,
            cancellations: 0,
        }
    }

    /// Carry a chain endomorphism `f` through the reduction as `p f i`.
    pub fn with_endomorphism(mut self, cols: &[Vec<u32>]) -> Self {
        assert_eq!(cols.len(), self.alive.len());
        self.endo = Some(Adjacency::new(cols.len(), cols));
        self
    }

    /// Track, for each surviving generator, its image under the inclusion into the input complex.
    pub fn with_representatives(mut self) -> Self {
        self.reps = Some((0..self.alive.len() as u32).map(|i| vec![i]).collect());
        self
    }

    pub fn len(&self) -> usize {
        self.alive.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    pub fn is_alive(&self, g: u32) -> bool {
        self.alive[g as usize]
    }

    pub fn targets(&self, x: u32) -> &[u32] {
        &self.d.out[x as usize]
    }

    pub fn sources(&self, y: u32) -> &[u32] {
        &self.d.inn[y as usize]
    }

    pub fn endo_targets(&self, x: u32) -> &[u32] {
        &self.endo.as_ref().expect("no endomorphism tracked").out[x as usize]
    }

    pub fn representative(&self, x: u32) -> &[u32] {
        &self.reps.as_ref().expect("representatives not tracked")[x as usize]
    }

    pub fn cancellations(&self) -> usize {
        self.cancellations
    }

    pub fn survivors(&self) -> Vec<u32> {
        (0..self.alive.len() as u32).filter(|&g| self.alive[g as usize]).collect()
    }

    pub fn has_arrows(&self) -> bool {
        self.d.out.iter().any(|o| !o.is_empty())
    }

    /// Cancel `x -> y`. Panics if the arrow is absent.
    pub fn cancel(&mut self, x: u32, y: u32) {
        assert!(x != y, "cannot cancel a loop");
        assert!(self.d.out[x as usize].binary_search(&y).is_ok(), "no arrow {x} -> {y}");
        let ins: Vec<u32> = self.d.inn[y as usize].iter().copied().filter(|&w| w != x).collect();
        let outs: Vec<u32> = self.d.out[x as usize].clone();

        if let Some(e) = self.endo.as_mut() {
            // f(w) += f(x) for w -> y, then project: any u with y in f(u) gets d(x) added.
            let fx: Vec<u32> = e.out[x as usize].clone();
            for &w in &ins {
                for &z in &fx {
                    e.flip(w, z);
                }
            }
            let hit: Vec<u32> = e.inn[y as usize].iter().copied().filter(|&u| u != x && u != y).collect();
            for u in hit {
                for &z in &outs {
                    e.flip(u, z);
                }
            }
            e.detach(x);
            e.detach(y);
        }

        if let Some(r) = self.reps.as_mut() {
            let rx = r[x as usize].clone();
            for &w in &ins {
                let rw = &mut r[w as usize];
                for &g in &rx {
                    toggle(rw, g);
                }
            }
            r[x as usize].clear();
            r[y as usize].clear();
        }

        for &w in &ins {
            for &z in &outs {
                if z != y {
                    self.d.flip(w, z);
                }
            }
        }
        self.d.detach(x);
        self.d.detach(y);
        self.alive[x as usize] = false;
        self.alive[y as usize] = false;
        self.cancellations += 1;
    }

    /// Best target of `x` among those accepted by `allow`: fewest incoming arrows, then lowest index.
    fn pick(&self, x: u32, allow: &impl Fn(u32, u32) -> bool) -> Option<u32> {
        self.d.out[x as usize]
            .iter()
            .copied()
            .filter(|&y| y != x && allow(x, y))
            .min_by_key(|&y| (self.d.inn[y as usize].len(), y))
    }

    /// Cancel arrows accepted by `allow` until none remain. Returns the number cancelled.
    pub fn cancel_all(&mut self, allow: impl Fn(u32, u32) -> bool) -> usize {
        let before = self.cancellations;
        let mut stack: Vec<u32> = (0..self.alive.len() as u32).rev().collect();
        let mut queued = vec![true; self.alive.len()];
        while let Some(x) = stack.pop() {
            queued[x as usize] = false;
            if !self.alive[x as usize] {
                continue;
            }
            if let Some(y) = self.pick(x, &allow) {
                let ins: Vec<u32> = self.d.inn[y as usize].clone();
                self.cancel(x, y);
                for w in ins {
                    if self.alive[w as usize] && !queued[w as usize] {
                        queued[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        self.cancellations - before
    }
}
