//! Box tensor products. Generator names of a product are `p|q`.

use crate::algebra::{ChainComplex, SparseMap};

use super::algebra::Elt;
use super::modules::{AOps, DAOps, Gen, Generator, TypeA, TypeD, TypeDA};
use super::sum::Sum;
use super::BorderedError;

#[derive(Clone, Copy, Debug)]
pub struct BoxOptions {
    /// Longest chain of generator steps fed into one higher operation.
    pub max_steps: usize,
}

impl Default for BoxOptions {
    fn default() -> Self {
        BoxOptions { max_steps: 64 }
    }
}

impl BoxOptions {
    fn guard(&self, steps: usize) -> Result<(), BorderedError> {
        if steps > self.max_steps {
            return Err(BorderedError::Divergence { steps: self.max_steps });
        }
        Ok(())
    }
}

pub(crate) fn pair_name(a: &str, b: &str) -> String {
    format!("{a}|{b}")
}

/// Pairs (p, q) over matching idempotents, in lexicographic index order.
fn pairs(left: &[Generator], right: &[Generator], matches: impl Fn(&Generator, &Generator) -> bool) -> Vec<(Gen, Gen)> {
    let mut out = Vec::new();
    for (i, p) in left.iter().enumerate() {
        for (j, q) in right.iter().enumerate() {
            if matches(p, q) {
                out.push((i, j));
            }
        }
    }
    out
}

fn position(index: &[(Gen, Gen)], key: (Gen, Gen)) -> Gen {
    index.binary_search(&key).expect("paired generator exists")
}

/// Ways for a DA bimodule to eat `seq` starting at `r`: (outputs, final generator),
/// using at most `max_steps` operations. Segments may be empty.
pub(crate) fn da_consume(r_mod: &TypeDA, r: Gen, seq: &[Elt], max_steps: usize) -> Vec<(Vec<Elt>, Gen)> {
    let mut out = Vec::new();
    let mut stack = vec![(r, 0usize, Vec::new())];
    while let Some((cur, pos, outs)) = stack.pop() {
        if pos == seq.len() {
            out.push((outs.clone(), cur));
        }
        if outs.len() == max_steps {
            continue;
        }
        let longest = r_mod.max_in().min(seq.len() - pos);
        for j in 0..=longest {
            for (c, nxt) in r_mod.delta(cur, &seq[pos..pos + j]) {
                let mut o = outs.clone();
                o.push(c);
                stack.push((nxt, pos + j, o));
            }
        }
    }
    out
}

pub fn box_da_d(p_mod: &TypeDA, n_mod: &TypeD, opts: BoxOptions) -> Result<TypeD, BorderedError> {
    opts.guard(p_mod.max_in())?;
    let alg = p_mod.algebra();
    let index = pairs(p_mod.generators(), n_mod.generators(), |p, y| p.right == y.left);
    let gens: Vec<Generator> = index
        .iter()
        .map(|&(p, y)| {
            let (gp, gy) = (&p_mod.generators()[p], &n_mod.generators()[y]);
            Generator::new(pair_name(&gp.name, &gy.name), gp.left, gp.left)
        })
        .collect();
    let mut delta = vec![Sum::new(); gens.len()];
    for (k, &(p, y)) in index.iter().enumerate() {
        for (cs, y2) in n_mod.paths(y, p_mod.max_in()) {
            for (b, p2) in p_mod.delta(p, &cs) {
                delta[k].toggle((b, position(&index, (p2, y2))));
            }
        }
    }
    TypeD::new(alg, gens, delta)
}

pub fn box_da_da(p_mod: &TypeDA, r_mod: &TypeDA, opts: BoxOptions) -> Result<TypeDA, BorderedError> {
    opts.guard(p_mod.max_in())?;
    let alg = p_mod.algebra();
    let index = pairs(p_mod.generators(), r_mod.generators(), |p, r| p.right == r.left);
    let gens: Vec<Generator> = index
        .iter()
        .map(|&(p, r)| {
            let (gp, gr) = (&p_mod.generators()[p], &r_mod.generators()[r]);
            Generator::new(pair_name(&gp.name, &gr.name), gp.left, gr.right)
        })
        .collect();
    let max_len = p_mod.max_in() * r_mod.max_in();
    let mut ops = DAOps::new();
    for (k, &(p, r)) in index.iter().enumerate() {
        for seq in alg.sequences(gens[k].right, max_len) {
            let mut acc = Sum::new();
            for (cs, r2) in da_consume(r_mod, r, &seq, p_mod.max_in()) {
                for (b, p2) in p_mod.delta(p, &cs) {
                    acc.toggle((b, position(&index, (p2, r2))));
                }
            }
            if !acc.is_zero() {
                ops.insert((k, seq), acc);
            }
        }
    }
    TypeDA::new(alg, gens, ops)
}

pub fn box_a_da(m_mod: &TypeA, p_mod: &TypeDA, opts: BoxOptions) -> Result<TypeA, BorderedError> {
    let depth = m_mod.max_in().max(1);
    opts.guard(depth)?;
    let alg = m_mod.algebra();
    let index = pairs(m_mod.generators(), p_mod.generators(), |x, p| x.right == p.left);
    let gens: Vec<Generator> = index
        .iter()
        .map(|&(x, p)| {
            let (gx, gp) = (&m_mod.generators()[x], &p_mod.generators()[p]);
            Generator::new(pair_name(&gx.name, &gp.name), gp.right, gp.right)
        })
        .collect();
    let max_len = depth * p_mod.max_in();
    let mut ops = AOps::new();
    for (k, &(x, p)) in index.iter().enumerate() {
        for seq in alg.sequences(gens[k].right, max_len) {
            let mut acc = Sum::new();
            for (cs, p2) in da_consume(p_mod, p, &seq, depth) {
                for y in m_mod.act(x, &cs) {
                    acc.toggle(position(&index, (y, p2)));
                }
            }
            if !acc.is_zero() {
                ops.insert((k, seq), acc);
            }
        }
    }
    TypeA::new(alg, gens, ops)
}

/// Generator pairs and differential of `M ⊠ N`, without checking d² = 0.
pub(crate) fn box_a_d_parts(m_mod: &TypeA, n_mod: &TypeD) -> (Vec<(Gen, Gen)>, Vec<String>, SparseMap) {
    let index = pairs(m_mod.generators(), n_mod.generators(), |x, y| x.right == y.left);
    let names =
        index.iter().map(|&(x, y)| pair_name(&m_mod.generators()[x].name, &n_mod.generators()[y].name)).collect();
    let depth = m_mod.max_in().max(1);
    let cols = index
        .iter()
        .map(|&(x, y)| {
            let mut col = Sum::new();
            for (cs, y2) in n_mod.paths(y, depth) {
                for x2 in m_mod.act(x, &cs) {
                    col.toggle(position(&index, (x2, y2)) as u32);
                }
            }
            col.into_iter().collect()
        })
        .collect();
    let d = SparseMap::from_columns(index.len(), cols).expect("indices are in range");
    (index, names, d)
}

/// The chain complex `M ⊠ N` over F2.
pub fn box_a_d(m_mod: &TypeA, n_mod: &TypeD, opts: BoxOptions) -> Result<ChainComplex, BorderedError> {
    opts.guard(m_mod.max_in().max(1))?;
    let (_, names, d) = box_a_d_parts(m_mod, n_mod);
    Ok(ChainComplex::new(names, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bordered::Algebra;

    fn e(n: &str) -> Elt {
        Algebra::torus().elt(n).unwrap()
    }

    fn minus1() -> TypeD {
        let gens = vec![Generator::new("a", 0, 0), Generator::new("b", 1, 1)];
        TypeD::new(Algebra::torus(), gens, vec![Sum::from_iter([(e("r12"), 1), (e("r34"), 1)]), Sum::new()]).unwrap()
    }

    #[test]
    fn identity_box_d_is_same_module() {
        let id = TypeDA::identity(Algebra::torus());
        let n = minus1();
        let b = box_da_d(&id, &n, BoxOptions::default()).unwrap();
        let names: Vec<_> = b.generators().iter().map(|g| g.name.clone()).collect();
        assert_eq!(names, ["i0|a", "i1|b"]);
        assert_eq!(b.show(b.delta(0)), "r12 ⊗ i1|b + r34 ⊗ i1|b");
        assert!(b.check_structure().is_empty());
    }

    #[test]
    fn identity_box_identity() {
        let id = TypeDA::identity(Algebra::torus());
        let b = box_da_da(&id, &id, BoxOptions::default()).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.ops().len(), id.ops().len());
        assert!(b.check_structure().is_empty());
    }

    #[test]
    fn zero_module() {
        let id = TypeDA::identity(Algebra::torus());
        assert!(box_da_d(&id, &TypeD::zero(Algebra::torus()), BoxOptions::default()).unwrap().is_empty());
    }

    #[test]
    fn rank_one_a_module_pairs_without_differential() {
        let m = TypeA::new(Algebra::torus(), vec![Generator::new("x", 0, 0)], AOps::new()).unwrap();
        let c = box_a_d(&m, &minus1(), BoxOptions::default()).unwrap();
        assert_eq!(c.names(), ["x|a"]);
        assert_eq!(c.homology_dim(), 1);
    }

    #[test]
    fn divergence_guard() {
        let id = TypeDA::identity(Algebra::torus());
        let r = box_da_d(&id, &minus1(), BoxOptions { max_steps: 0 });
        assert_eq!(r.unwrap_err(), BorderedError::Divergence { steps: 0 });
    }
}
