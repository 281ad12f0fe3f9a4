use std::collections::BTreeSet;

/// A formal F2-sum of terms, kept sorted. Adding a term twice cancels it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sum<T: Ord>(BTreeSet<T>);

impl<T: Ord> Default for Sum<T> {
    fn default() -> Self {
        Sum(BTreeSet::new())
    }
}

impl<T: Ord + Clone> Sum<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn toggle(&mut self, t: T) {
        if !self.0.remove(&t) {
            self.0.insert(t);
        }
    }

    pub fn add(&mut self, other: &Sum<T>) {
        for t in &other.0 {
            self.toggle(t.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &T) -> bool {
        self.0.contains(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> + '_ {
        self.0.iter()
    }

    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> Sum<U> {
        self.0.iter().map(f).collect()
    }
}

impl<T: Ord + Clone> FromIterator<T> for Sum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut s = Sum::new();
        for t in iter {
            s.toggle(t);
        }
        s
    }
}

impl<T: Ord> IntoIterator for Sum<T> {
    type Item = T;
    type IntoIter = std::collections::btree_set::IntoIter<T>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a, T: Ord> IntoIterator for &'a Sum<T> {
    type Item = &'a T;
    type IntoIter = std::collections::btree_set::Iter<'a, T>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_cancel_in_pairs() {
        let s: Sum<u8> = [1, 2, 1, 3, 3, 3].into_iter().collect();
        assert_eq!(s.iter().copied().collect::<Vec<_>>(), vec![2, 3]);
        let mut t = s.clone();
        t.add(&s);
        assert!(t.is_zero());
    }
}
