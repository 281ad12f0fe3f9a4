use super::reduce::Reducer;
use super::AlgebraError;

/// F2-linear map stored by columns: `cols[x]` is the sorted support of the image of basis vector `x`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMap {
    rows: usize,
    cols: Vec<Vec<u32>>,
}

impl SparseMap {
    pub fn zero(domain: usize, codomain: usize) -> Self {
        SparseMap { rows: codomain, cols: vec![Vec::new(); domain] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMap { rows: n, cols: (0..n as u32).map(|i| vec![i]).collect() }
    }

    /// Columns are normalised: duplicate entries cancel in pairs.
    pub fn from_columns(codomain: usize, mut cols: Vec<Vec<u32>>) -> Result<Self, AlgebraError> {
        for (x, c) in cols.iter_mut().enumerate() {
            normalize(c);
            if let Some(&y) = c.last() {
                if y as usize >= codomain {
                    return Err(AlgebraError::IndexOutOfRange { from: x, target: y as usize, codomain });
                }
            }
        }
        Ok(SparseMap { rows: codomain, cols })
    }

    pub fn from_entries(domain: usize, codomain: usize, entries: &[(usize, usize)]) -> Result<Self, AlgebraError> {
        let mut cols = vec![Vec::new(); domain];
        for &(x, y) in entries {
            if x >= domain {
                return Err(AlgebraError::IndexOutOfRange { from: x, target: y, codomain });
            }
            cols[x].push(y as u32);
        }
        Self::from_columns(codomain, cols)
    }

    pub fn domain(&self) -> usize {
        self.cols.len()
    }

    pub fn codomain(&self) -> usize {
        self.rows
    }

    pub fn column(&self, x: usize) -> &[u32] {
        &self.cols[x]
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cols.iter().enumerate().flat_map(|(x, c)| c.iter().map(move |&y| (x, y as usize)))
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let mut out = Vec::new();
        for &x in v {
            out.extend_from_slice(&self.cols[x as usize]);
        }
        normalize(&mut out);
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMap) -> SparseMap {
        assert_eq!(other.rows, self.cols.len(), "dimension mismatch in composition");
        let cols = other.cols.iter().map(|c| self.apply(c)).collect();
        SparseMap { rows: self.rows, cols }
    }

    pub fn add(&self, other: &SparseMap) -> SparseMap {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols.len(), other.cols.len());
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend_from_slice(b);
                normalize(&mut c);
                c
            })
            .collect();
        SparseMap { rows: self.rows, cols }
    }

    pub fn transpose(&self) -> SparseMap {
        let mut cols = vec![Vec::new(); self.rows];
        for (x, c) in self.cols.iter().enumerate() {
            for &y in c {
                cols[y as usize].push(x as u32);
            }
        }
        SparseMap { rows: self.cols.len(), cols }
    }
}

/// Sort and cancel repeated indices in pairs.
pub fn normalize(v: &mut Vec<u32>) {
    v.sort_unstable();
    let mut out: Vec<u32> = Vec::with_capacity(v.len());
    for &x in v.iter() {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    *v = out;
}

/// Rank over F2, by cancellation on the bipartite complex `domain -> codomain`.
pub fn f2_rank(m: &SparseMap) -> usize {
    let n = m.domain();
    let total = n + m.codomain();
    let mut cols: Vec<Vec<u32>> = m
        .cols
        .iter()
        .map(|c| c.iter().map(|&y| y + n as u32).collect())
        .collect();
    cols.resize(total, Vec::new());
    let mut r = Reducer::new(total, &cols);
    r.cancel_all(|_, _| true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        assert_eq!(f2_rank(&SparseMap::identity(3)), 3);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(f2_rank(&SparseMap::zero(4, 5)), 0);
    }

    #[test]
    fn merge_map_rank() {
        // V⊗V -> V in the Khovanov algebra: ++ -> +, +- -> -, -+ -> -, -- -> 0.
        // basis of V⊗V: ++, +-, -+, -- ; basis of V: +, -.
        let m = SparseMap::from_entries(4, 2, &[(0, 0), (1, 1), (2, 1)]).unwrap();
        assert_eq!(f2_rank(&m), 2);
    }

    #[test]
    fn duplicates_cancel() {
        let m = SparseMap::from_columns(2, vec![vec![1, 1, 0]]).unwrap();
        assert_eq!(m.column(0), &[0]);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(SparseMap::from_columns(2, vec![vec![2]]).is_err());
    }
}
