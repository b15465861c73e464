//! Binary relations on a finite carrier as bit matrices, and partitions.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::semigroup::FiniteSemigroup;

/// An `n x n` boolean matrix; `get(a, b)` reads "a is related to b".
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolRelation {
    n: usize,
    rows: Vec<BitSet>,
}

impl BoolRelation {
    pub fn empty(n: usize) -> Self {
        BoolRelation {
            n,
            rows: vec![BitSet::new(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |a, b| a == b)
    }

    pub fn universal(n: usize) -> Self {
        BoolRelation {
            n,
            rows: vec![BitSet::full(n); n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if f(a, b) {
                    r.rows[a].insert(b);
                }
            }
        }
        r
    }

    pub fn from_rows(rows: Vec<BitSet>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "relation rows must have width {n}");
        BoolRelation { n, rows }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn set(&mut self, a: usize, b: usize, value: bool) {
        if value {
            self.rows[a].insert(b);
        } else {
            self.rows[a].remove(b);
        }
    }

    /// Everything `a` is related to.
    pub fn row(&self, a: usize) -> &BitSet {
        &self.rows[a]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| self.rows[a].iter().map(move |b| (a, b)))
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |a, b| self.get(b, a))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (x, y) in r.rows.iter_mut().zip(&other.rows) {
            x.intersect_with(y);
        }
        r
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (x, y) in r.rows.iter_mut().zip(&other.rows) {
            x.union_with(y);
        }
        r
    }

    /// `self ∩ self⁻¹`, the equivalence associated with a preorder.
    pub fn symmetric_part(&self) -> Self {
        self.intersection(&self.transpose())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.first_pair_outside(other).is_none()
    }

    pub fn first_pair_outside(&self, other: &Self) -> Option<(usize, usize)> {
        self.pairs().find(|&(a, b)| !other.get(a, b))
    }

    /// Transitive closure (Warshall over bit rows); the diagonal is not added.
    pub fn transitive_closure(&self) -> Self {
        let mut r = self.clone();
        for k in 0..self.n {
            let via = r.rows[k].clone();
            for a in 0..self.n {
                if r.rows[a].contains(k) {
                    r.rows[a].union_with(&via);
                }
            }
        }
        r
    }

    pub fn reflexivity_witness(&self) -> Option<usize> {
        (0..self.n).find(|&a| !self.get(a, a))
    }

    pub fn symmetry_witness(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(a, b)| !self.get(b, a))
    }

    pub fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for (a, b) in self.pairs() {
            if let Some(c) = self.rows[b].iter().find(|&c| !self.get(a, c)) {
                return Some((a, b, c));
            }
        }
        None
    }

    /// `(c, a, b)` with `a ~ b` but not `ca ~ cb`.
    pub fn left_compatibility_witness(&self, s: &FiniteSemigroup) -> Option<(usize, usize, usize)> {
        for (a, b) in self.pairs() {
            if let Some(c) = s.elements().find(|&c| !self.get(s.mul(c, a), s.mul(c, b))) {
                return Some((c, a, b));
            }
        }
        None
    }

    /// `(a, b, c)` with `a ~ b` but not `ac ~ bc`.
    pub fn right_compatibility_witness(&self, s: &FiniteSemigroup) -> Option<(usize, usize, usize)> {
        for (a, b) in self.pairs() {
            if let Some(c) = s.elements().find(|&c| !self.get(s.mul(a, c), s.mul(b, c))) {
                return Some((a, b, c));
            }
        }
        None
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexivity_witness().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_witness().is_none()
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_witness().is_none()
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_preorder() && self.is_symmetric()
    }

    pub fn is_left_compatible(&self, s: &FiniteSemigroup) -> bool {
        self.left_compatibility_witness(s).is_none()
    }

    pub fn is_right_compatible(&self, s: &FiniteSemigroup) -> bool {
        self.right_compatibility_witness(s).is_none()
    }

    /// Classes of an equivalence. Panics in debug builds if `self` is not one.
    pub fn partition(&self) -> Partition {
        debug_assert!(self.is_equivalence());
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes = Vec::new();
        for a in 0..self.n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let members = self.rows[a].to_vec();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        Partition { class_of, classes }
    }

    /// Restriction to `members`, re-indexed by position in `members`.
    pub fn restrict(&self, members: &[usize]) -> Self {
        Self::from_fn(members.len(), |i, j| self.get(members[i], members[j]))
    }
}

impl std::fmt::Debug for BoolRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.pairs()).finish()
    }
}

/// A partition of `{0, .., n-1}`; classes are ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn to_relation(&self) -> BoolRelation {
        BoolRelation::from_fn(self.class_of.len(), |a, b| self.same(a, b))
    }
}
