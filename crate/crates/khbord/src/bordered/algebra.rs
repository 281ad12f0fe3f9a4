//! Strand algebras given as tables: idempotents, chords and the nonzero
//! products of chords. Only μ₂ is nonzero.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::sum::Sum;
use super::BorderedError;

/// A basis element, as an index into its algebra's table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt(pub u8);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChordRecord {
    pub name: String,
    pub left: u8,
    pub right: u8,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraTable {
    pub name: String,
    pub idempotents: Vec<String>,
    pub chords: Vec<ChordRecord>,
    /// `[a, b, a·b]` for every nonzero product of two chords.
    pub products: Vec<[String; 3]>,
}

#[derive(Debug)]
pub struct Algebra {
    name: String,
    names: Vec<String>,
    left: Vec<u8>,
    right: Vec<u8>,
    n_idem: usize,
    index: HashMap<String, Elt>,
    product: Vec<Vec<Option<Elt>>>,
}

static TORUS: OnceLock<Algebra> = OnceLock::new();

impl Algebra {
    /// The torus algebra, loaded from the shipped table.
    pub fn torus() -> &'static Algebra {
        TORUS.get_or_init(|| {
            let table: AlgebraTable =
                serde_json::from_str(include_str!("../../data/torus_algebra.json")).expect("shipped algebra table parses");
            Algebra::from_table(&table).expect("shipped algebra table is valid")
        })
    }

    pub fn from_table(t: &AlgebraTable) -> Result<Algebra, BorderedError> {
        let n_idem = t.idempotents.len();
        let mut names: Vec<String> = t.idempotents.clone();
        let mut left: Vec<u8> = (0..n_idem as u8).collect();
        let mut right = left.clone();
        for c in &t.chords {
            if c.left as usize >= n_idem || c.right as usize >= n_idem {
                return Err(BorderedError::Algebra(format!("chord {} has an unknown idempotent", c.name)));
            }
            names.push(c.name.clone());
            left.push(c.left);
            right.push(c.right);
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), Elt(i as u8)).is_some() {
                return Err(BorderedError::Algebra(format!("duplicate basis element {n}")));
            }
        }
        let n = names.len();
        let mut product = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (i < n_idem, j < n_idem);
                product[i][j] = match (a, b) {
                    (true, true) => (i == j).then_some(Elt(i as u8)),
                    (true, false) => (left[j] as usize == i).then_some(Elt(j as u8)),
                    (false, true) => (right[i] as usize == j).then_some(Elt(i as u8)),
                    (false, false) => None,
                };
            }
        }
        for [a, b, c] in &t.products {
            let look = |s: &String| index.get(s).copied().ok_or_else(|| BorderedError::UnknownName(s.clone()));
            let (a, b, c) = (look(a)?, look(b)?, look(c)?);
            let ok = (a.0 as usize) >= n_idem
                && (b.0 as usize) >= n_idem
                && right[a.0 as usize] == left[b.0 as usize]
                && left[c.0 as usize] == left[a.0 as usize]
                && right[c.0 as usize] == right[b.0 as usize];
            if !ok {
                return Err(BorderedError::Algebra(format!(
                    "product {} · {} = {} breaks idempotents",
                    names[a.0 as usize], names[b.0 as usize], names[c.0 as usize]
                )));
            }
            product[a.0 as usize][b.0 as usize] = Some(c);
        }
        let alg = Algebra { name: t.name.clone(), names, left, right, n_idem, index, product };
        alg.check_associative()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<(), BorderedError> {
        for a in self.basis() {
            for b in self.basis() {
                for c in self.basis() {
                    let l = self.mul(a, b).and_then(|ab| self.mul(ab, c));
                    let r = self.mul(b, c).and_then(|bc| self.mul(a, bc));
                    if l != r {
                        return Err(BorderedError::Algebra(format!(
                            "not associative at ({}, {}, {})",
                            self.name_of(a),
                            self.name_of(b),
                            self.name_of(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn basis(&self) -> impl Iterator<Item = Elt> + Clone {
        (0..self.names.len() as u8).map(Elt)
    }

    pub fn chords(&self) -> impl Iterator<Item = Elt> + Clone {
        (self.n_idem as u8..self.names.len() as u8).map(Elt)
    }

    pub fn idempotent(&self, i: u8) -> Elt {
        assert!((i as usize) < self.n_idem, "idempotent {i} out of range");
        Elt(i)
    }

    pub fn n_idempotents(&self) -> usize {
        self.n_idem
    }

    pub fn is_idempotent(&self, a: Elt) -> bool {
        (a.0 as usize) < self.n_idem
    }

    pub fn left(&self, a: Elt) -> u8 {
        self.left[a.0 as usize]
    }

    pub fn right(&self, a: Elt) -> u8 {
        self.right[a.0 as usize]
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Option<Elt> {
        self.product[a.0 as usize][b.0 as usize]
    }

    pub fn name_of(&self, a: Elt) -> &str {
        &self.names[a.0 as usize]
    }

    pub fn elt(&self, name: &str) -> Result<Elt, BorderedError> {
        self.index.get(name).copied().ok_or_else(|| BorderedError::UnknownName(name.to_string()))
    }

    /// Chord sequences a1..an with left(a1) = `from` and right(ai) = left(ai+1), for n ≤ `max_len`.
    pub fn sequences(&self, from: u8, max_len: usize) -> Vec<Vec<Elt>> {
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<Vec<Elt>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for s in &frontier {
                let end = s.last().map_or(from, |&a| self.right(a));
                for c in self.chords() {
                    if self.left(c) == end {
                        let mut t = s.clone();
                        t.push(c);
                        next.push(t);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Left or right action of `b` on the dual basis element `a*`, expanded in the dual basis.
    ///
    /// `(b·a*)(x) = a*(x·b)` and `(a*·b)(x) = a*(b·x)`.
    pub fn dual_action(&self, b: Elt, a: Elt, side: Side) -> Sum<Elt> {
        self.basis()
            .filter(|&x| {
                let p = match side {
                    Side::Left => self.mul(x, b),
                    Side::Right => self.mul(b, x),
                };
                p == Some(a)
            })
            .collect()
    }

    /// Idempotents of the dual element `a*` as (left, right).
    pub fn dual_idempotents(&self, a: Elt) -> (u8, u8) {
        (self.right(a), self.left(a))
    }

    pub fn seq_name(&self, s: &[Elt]) -> String {
        s.iter().map(|&a| self.name_of(a)).collect::<Vec<_>>().join(", ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: &str) -> Elt {
        Algebra::torus().elt(n).unwrap()
    }

    #[test]
    fn concatenation() {
        let a = Algebra::torus();
        assert_eq!(a.mul(e("r12"), e("r23")), Some(e("r13")));
        assert_eq!(a.mul(e("r23"), e("r12")), None);
        assert_eq!(a.mul(e("i0"), e("i0")), Some(e("i0")));
        assert_eq!(a.mul(e("r12"), e("r24")), Some(e("r14")));
        assert_eq!(a.mul(e("r12"), e("r34")), None);
        assert_eq!(a.mul(e("r13"), e("r34")), Some(e("r14")));
        assert_eq!(a.len(), 8);
    }

    #[test]
    fn idempotents_of_chords() {
        let a = Algebra::torus();
        for c in a.chords() {
            assert_eq!(a.mul(a.idempotent(a.left(c)), c), Some(c));
            assert_eq!(a.mul(c, a.idempotent(a.right(c))), Some(c));
            assert_eq!(a.mul(a.idempotent(1 - a.left(c)), c), None);
        }
        assert_eq!((a.left(e("r12")), a.right(e("r12"))), (0, 1));
        assert_eq!((a.left(e("r23")), a.right(e("r23"))), (1, 0));
        assert_eq!(a.dual_idempotents(e("r12")), (1, 0));
    }

    #[test]
    fn dual_actions() {
        let a = Algebra::torus();
        // r13* · r12 pairs with r23, since r12 · r23 = r13
        assert_eq!(a.dual_action(e("r12"), e("r13"), Side::Right), Sum::from_iter([e("r23")]));
        assert!(a.dual_action(e("r12"), e("r13"), Side::Left).is_zero());
        assert_eq!(a.dual_action(e("i0"), e("i0"), Side::Left), Sum::from_iter([e("i0")]));
        assert_eq!(a.dual_action(e("r23"), e("r13"), Side::Left), Sum::from_iter([e("r12")]));
    }

    #[test]
    fn sequences_are_composable() {
        let a = Algebra::torus();
        let s = a.sequences(0, 3);
        assert_eq!(s[0], Vec::<Elt>::new());
        for t in &s {
            for w in t.windows(2) {
                assert_eq!(a.right(w[0]), a.left(w[1]));
            }
        }
        // from i0: r12, r13, r14, r34
        assert_eq!(s.iter().filter(|t| t.len() == 1).count(), 4);
    }

    #[test]
    fn rejects_bad_tables() {
        let t = AlgebraTable {
            name: "bad".into(),
            idempotents: vec!["i0".into(), "i1".into()],
            chords: vec![ChordRecord { name: "r12".into(), left: 0, right: 1 }],
            products: vec![["r12".into(), "r12".into(), "r12".into()]],
        };
        assert!(Algebra::from_table(&t).is_err());
    }
}
