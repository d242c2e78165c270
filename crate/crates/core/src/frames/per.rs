use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// Disjoint-set forest with path halving.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so roots are deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// A partial equivalence relation on `0..n`: an equivalence relation on its
/// domain and empty outside it.
///
/// Stored canonically as a class label per element, with classes numbered
/// in order of their least member, so `==` is relation equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Per {
    class_of: Vec<Option<u32>>,
    classes: Vec<Vec<usize>>,
}

impl Per {
    pub fn empty(n: usize) -> Self {
        Per {
            class_of: vec![None; n],
            classes: Vec::new(),
        }
    }

    /// Identity on `0..n`.
    pub fn identity(n: usize) -> Self {
        Per::from_keys(&(0..n).map(Some).collect::<Vec<_>>())
    }

    /// Total relation on `0..n`.
    pub fn total(n: usize) -> Self {
        Per::from_keys(&vec![Some(()); n])
    }

    /// Elements with equal `Some` keys are related; `None` is outside the
    /// domain.
    pub fn from_keys<K: Ord + Clone>(keys: &[Option<K>]) -> Self {
        let mut ids: BTreeMap<K, u32> = BTreeMap::new();
        let mut raw = Vec::with_capacity(keys.len());
        for key in keys {
            raw.push(key.as_ref().map(|k| {
                let next = ids.len() as u32;
                *ids.entry(k.clone()).or_insert(next)
            }));
        }
        Per::canonical(raw)
    }

    fn canonical(raw: Vec<Option<u32>>) -> Self {
        let mut renumber: BTreeMap<u32, u32> = BTreeMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let class_of = raw
            .iter()
            .enumerate()
            .map(|(x, c)| {
                c.map(|c| {
                    let id = *renumber.entry(c).or_insert_with(|| {
                        classes.push(Vec::new());
                        (classes.len() - 1) as u32
                    });
                    classes[id as usize].push(x);
                    id
                })
            })
            .collect();
        Per { class_of, classes }
    }

    /// Smallest PER on `0..n` containing `pairs`.
    pub fn closure<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut uf = UnionFind::new(n);
        let mut in_dom = vec![false; n];
        for (x, y) in pairs {
            in_dom[x] = true;
            in_dom[y] = true;
            uf.union(x, y);
        }
        let raw = (0..n)
            .map(|x| in_dom[x].then(|| uf.find(x) as u32))
            .collect();
        Per::canonical(raw)
    }

    /// Carrier size.
    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        matches!((self.class_of[x], self.class_of[y]), (Some(a), Some(b)) if a == b)
    }

    pub fn in_domain(&self, x: usize) -> bool {
        self.class_of[x].is_some()
    }

    pub fn class_id(&self, x: usize) -> Option<u32> {
        self.class_of[x]
    }

    /// `[x]`, empty when `x` is outside the domain.
    pub fn class(&self, x: usize) -> &[usize] {
        match self.class_of[x] {
            Some(c) => &self.classes[c as usize],
            None => &[],
        }
    }

    /// Equivalence classes, each sorted, ordered by least member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.classes
            .iter()
            .flat_map(|c| c.iter().flat_map(move |&x| c.iter().map(move |&y| (x, y))))
    }

    pub fn pair_count(&self) -> usize {
        self.classes.iter().map(|c| c.len() * c.len()).sum()
    }

    /// Pairs of `self` ⊆ pairs of `other`.
    pub fn is_subrelation(&self, other: &Per) -> bool {
        self.classes.iter().all(|c| {
            let head = other.class_of[c[0]];
            head.is_some() && c.iter().all(|&x| other.class_of[x] == head)
        })
    }

    /// First pair of `self` missing from `other`, scanning `order` (a
    /// permutation of `0..n`) lexicographically.
    pub(crate) fn first_missing(&self, other: &Per, order: &[usize]) -> Option<(usize, usize)> {
        for &x in order {
            if self.class_of[x].is_none() {
                continue;
            }
            for &y in order {
                if self.related(x, y) && !other.related(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn pair_set(p: &Per) -> BTreeSet<(usize, usize)> {
        p.pairs().collect()
    }

    #[test]
    fn closure_examples() {
        let p = Per::closure(3, [(0, 1)]);
        assert_eq!(
            pair_set(&p),
            [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().collect()
        );
        assert!(!p.in_domain(2));

        assert!(Per::closure(3, []).is_empty());

        let full = Per::closure(3, [(0, 1), (1, 2)]);
        assert_eq!(full, Per::total(3));
        assert_eq!(full.pair_count(), 9);
    }

    #[test]
    fn canonical_equality() {
        let a = Per::from_keys(&[Some('x'), None, Some('y'), Some('x')]);
        let b = Per::closure(4, [(3, 0), (2, 2)]);
        assert_eq!(a, b);
        assert_eq!(a.class(0), &[0, 3]);
        assert_eq!(a.class(1), &[] as &[usize]);
    }

    #[test]
    fn subrelation() {
        let small = Per::closure(3, [(0, 1)]);
        let big = Per::total(3);
        assert!(small.is_subrelation(&big));
        assert!(!big.is_subrelation(&small));
        assert_eq!(big.first_missing(&small, &[0, 1, 2]), Some((0, 2)));
    }
}
