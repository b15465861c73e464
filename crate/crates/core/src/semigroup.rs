//! Finite semigroups given by Cayley table.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::SemigroupError;

/// A subset of the carrier of some finite semigroup.
pub type ElementSubset = BitSet;

/// A finite semigroup on `{0, .., n-1}`; `table[x][y]` is the product `xy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    generators: Option<Vec<usize>>,
}

impl FiniteSemigroup {
    /// Validates shape, ranges and associativity (all `n^3` triples).
    pub fn build(table: Vec<Vec<usize>>, name: impl Into<String>) -> Result<Self, SemigroupError> {
        let n = table.len();
        if n == 0 {
            return Err(SemigroupError::Empty);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(SemigroupError::NotSquare {
                    row,
                    len: entries.len(),
                    order: n,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(SemigroupError::IndexOutOfRange { row, col, value, order: n });
                }
                flat.push(value);
            }
        }
        let s = FiniteSemigroup {
            name: name.into(),
            order: n,
            table: flat,
            generators: None,
        };
        if let Some((x, y, z)) = s.first_non_associative_triple() {
            return Err(SemigroupError::NonAssociative { x, y, z });
        }
        Ok(s)
    }

    /// Attaches a generating set, checking that it generates the whole carrier.
    pub fn with_generators(mut self, generators: Vec<usize>) -> Result<Self, SemigroupError> {
        if let Some(&g) = generators.iter().find(|&&g| g >= self.order) {
            return Err(SemigroupError::IndexOutOfRange {
                row: 0,
                col: 0,
                value: g,
                order: self.order,
            });
        }
        let seed = BitSet::from_indices(self.order, generators.iter().copied());
        if seed.is_empty() || closure(&self, &seed).count() != self.order {
            return Err(SemigroupError::GeneratorsDoNotGenerate);
        }
        self.generators = Some(generators);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn full_subset(&self) -> ElementSubset {
        BitSet::full(self.order)
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    /// The two-sided identity, if there is one.
    pub fn identity(&self) -> Option<usize> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| (x..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    fn first_non_associative_triple(&self) -> Option<(usize, usize, usize)> {
        for x in self.elements() {
            for y in self.elements() {
                let xy = self.mul(x, y);
                for z in self.elements() {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_closed(&self, subset: &ElementSubset) -> bool {
        self.first_escape(subset).is_none()
    }

    /// First pair `(a, b)` of members whose product leaves `subset`.
    pub fn first_escape(&self, subset: &ElementSubset) -> Option<(usize, usize)> {
        for a in subset.iter() {
            for b in subset.iter() {
                if !subset.contains(self.mul(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// The subsemigroup on `subset` as a standalone table, re-indexed in
    /// increasing order, together with the embedding into `self`.
    pub fn restrict(&self, subset: &ElementSubset) -> Result<(FiniteSemigroup, SemigroupMapData), SemigroupError> {
        if subset.len() != self.order {
            return Err(SemigroupError::SubsetWidthMismatch {
                expected: self.order,
                found: subset.len(),
            });
        }
        if subset.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if let Some((a, b)) = self.first_escape(subset) {
            return Err(SemigroupError::NotClosed { a, b });
        }
        let members = subset.to_vec();
        let mut position = vec![usize::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            position[m] = i;
        }
        let k = members.len();
        let mut flat = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                flat.push(position[self.mul(a, b)]);
            }
        }
        let sub = FiniteSemigroup {
            name: format!("{}{:?}", self.name, members),
            order: k,
            table: flat,
            generators: None,
        };
        Ok((sub, SemigroupMapData { image: members }))
    }
}

/// Per-element images of a map between two finite semigroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupMapData {
    pub image: Vec<usize>,
}

/// A map `source -> target`, written on the right as in `(xy)f = (xf)(yf)`.
#[derive(Clone, Copy, Debug)]
pub struct SemigroupMap<'a> {
    pub source: &'a FiniteSemigroup,
    pub target: &'a FiniteSemigroup,
    pub image: &'a [usize],
}

impl<'a> SemigroupMap<'a> {
    pub fn new(source: &'a FiniteSemigroup, target: &'a FiniteSemigroup, image: &'a [usize]) -> Self {
        SemigroupMap { source, target, image }
    }

    fn well_formed(&self) -> bool {
        self.image.len() == self.source.order() && self.image.iter().all(|&t| t < self.target.order())
    }

    /// First pair `(x, y)` with `(xy)f != (xf)(yf)`.
    pub fn first_non_multiplicative_pair(&self) -> Option<(usize, usize)> {
        for x in self.source.elements() {
            for y in self.source.elements() {
                let lhs = self.image[self.source.mul(x, y)];
                let rhs = self.target.mul(self.image[x], self.image[y]);
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.image.len());
        self.image.iter().all(|t| seen.insert(*t))
    }
}

pub fn verify_homomorphism(f: &SemigroupMap<'_>) -> bool {
    f.well_formed() && f.first_non_multiplicative_pair().is_none()
}

pub fn verify_isomorphism(f: &SemigroupMap<'_>) -> bool {
    verify_homomorphism(f) && f.source.order() == f.target.order() && f.is_injective()
}

/// Least subset containing `seed` and closed under multiplication.
pub fn closure(s: &FiniteSemigroup, seed: &ElementSubset) -> ElementSubset {
    let mut members: Vec<usize> = seed.to_vec();
    let mut set = seed.clone();
    let mut done = 0;
    // Every pair (i, j) with max(i, j) < done has already been multiplied.
    while done < members.len() {
        let z = members[done];
        done += 1;
        let mut i = 0;
        while i < done {
            let y = members[i];
            for p in [s.mul(z, y), s.mul(y, z)] {
                if set.insert(p) {
                    members.push(p);
                }
            }
            i += 1;
        }
    }
    set
}

/// Closure of `closed ∪ {x}` where `closed` is already a subsemigroup.
fn extend_closure(s: &FiniteSemigroup, closed: &ElementSubset, x: usize) -> ElementSubset {
    let mut set = closed.clone();
    if !set.insert(x) {
        return set;
    }
    let mut members: Vec<usize> = set.to_vec();
    let mut fresh = vec![x];
    while let Some(z) = fresh.pop() {
        let snapshot = members.len();
        for i in 0..snapshot {
            let y = members[i];
            for p in [s.mul(z, y), s.mul(y, z)] {
                if set.insert(p) {
                    members.push(p);
                    fresh.push(p);
                }
            }
        }
    }
    set
}

/// Outcome of a bounded subsemigroup sweep.
#[derive(Clone, Debug)]
pub struct SubsemigroupEnumeration {
    pub subsets: Vec<ElementSubset>,
    pub truncated: bool,
}

/// All nonempty subsemigroups, sorted lexicographically on bit vectors;
/// stops with `truncated = true` once more than `max_count` are found.
pub fn enumerate_subsemigroups_bounded(s: &FiniteSemigroup, max_count: usize) -> SubsemigroupEnumeration {
    let n = s.order();
    let mut seen: HashSet<ElementSubset> = HashSet::new();
    let mut queue: Vec<ElementSubset> = Vec::new();
    let mut truncated = false;
    'outer: for x in s.elements() {
        let c = closure(s, &BitSet::from_indices(n, [x]));
        if seen.insert(c.clone()) {
            if seen.len() > max_count {
                truncated = true;
                break 'outer;
            }
            queue.push(c);
        }
    }
    let mut head = 0;
    while !truncated && head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for x in s.elements() {
            if current.contains(x) {
                continue;
            }
            let next = extend_closure(s, &current, x);
            if !seen.contains(&next) {
                seen.insert(next.clone());
                if seen.len() > max_count {
                    truncated = true;
                    break;
                }
                queue.push(next);
            }
        }
    }
    let mut subsets: Vec<ElementSubset> = seen.into_iter().collect();
    subsets.sort();
    if truncated {
        subsets.truncate(max_count);
    }
    SubsemigroupEnumeration { subsets, truncated }
}

/// All nonempty subsemigroups in lexicographic bit-vector order.
pub fn enumerate_subsemigroups(s: &FiniteSemigroup, max_count: usize) -> Result<Vec<ElementSubset>, SemigroupError> {
    let e = enumerate_subsemigroups_bounded(s, max_count);
    if e.truncated {
        Err(SemigroupError::Truncated { max_count })
    } else {
        Ok(e.subsets)
    }
}
