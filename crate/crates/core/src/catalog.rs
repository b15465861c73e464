//! Built-in test universes: symmetric inverse monoids, Brandt semigroups,
//! chains, cyclic groups.
//!
//! Maps act on the right and compose left to right: in `pq`, `p` is
//! applied first.

use crate::bitset::BitSet;
use crate::error::SemigroupError;
use crate::semigroup::FiniteSemigroup;

pub const MAX_SYMMETRIC_DEGREE: usize = 4;

/// A partial injection of `{0, .., n-1}`; `images[x]` is `None` off the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialInjection {
    images: Vec<Option<usize>>,
}

impl PartialInjection {
    pub fn new(images: Vec<Option<usize>>) -> Option<Self> {
        let n = images.len();
        let mut hit = vec![false; n];
        for &y in images.iter().flatten() {
            if y >= n || std::mem::replace(&mut hit[y], true) {
                return None;
            }
        }
        Some(PartialInjection { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.images[x]
    }

    pub fn domain_mask(&self) -> u32 {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, y)| y.is_some())
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    pub fn image_mask(&self) -> u32 {
        self.images.iter().flatten().fold(0, |m, &y| m | 1 << y)
    }

    pub fn rank(&self) -> usize {
        self.images.iter().flatten().count()
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Self) -> Self {
        PartialInjection {
            images: self.images.iter().map(|y| y.and_then(|y| other.images[y])).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![None; self.degree()];
        for (x, y) in self.images.iter().enumerate() {
            if let Some(y) = *y {
                images[y] = Some(x);
            }
        }
        PartialInjection { images }
    }

    pub fn is_identity_restriction(&self) -> bool {
        self.images.iter().enumerate().all(|(x, y)| y.is_none_or(|y| y == x))
    }

    /// All partial injections of degree `n`, ordered by domain bitmask and
    /// then lexicographically by the images of the domain points.
    pub fn enumerate(n: usize) -> Vec<PartialInjection> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let domain: Vec<usize> = (0..n).filter(|x| mask >> x & 1 == 1).collect();
            let mut images = vec![None; n];
            let mut used = vec![false; n];
            fill(&domain, 0, &mut images, &mut used, &mut out);
        }
        out
    }
}

fn fill(
    domain: &[usize],
    i: usize,
    images: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    out: &mut Vec<PartialInjection>,
) {
    if i == domain.len() {
        out.push(PartialInjection { images: images.clone() });
        return;
    }
    for y in 0..images.len() {
        if !used[y] {
            used[y] = true;
            images[domain[i]] = Some(y);
            fill(domain, i + 1, images, used, out);
            images[domain[i]] = None;
            used[y] = false;
        }
    }
}

fn table_of(maps: &[PartialInjection]) -> Vec<Vec<usize>> {
    let index: std::collections::HashMap<&PartialInjection, usize> =
        maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    maps.iter()
        .map(|p| maps.iter().map(|q| index[&p.then(q)]).collect())
        .collect()
}

/// The symmetric inverse monoid `I_n` for `n ≤ 4`.
pub fn symmetric_inverse_monoid(n: usize) -> Result<FiniteSemigroup, SemigroupError> {
    if n > MAX_SYMMETRIC_DEGREE {
        return Err(SemigroupError::TooLarge {
            order: n,
            limit: MAX_SYMMETRIC_DEGREE,
        });
    }
    let maps = PartialInjection::enumerate(n);
    FiniteSemigroup::build(table_of(&maps), format!("I{n}"))
}

/// The Brandt semigroup `B_n`: the maps of rank at most one inside `I_n`,
/// in the order inherited from `I_n`. For `n = 2` the elements are
/// `0, e1, a, a⁻¹, e2` with `a: 0 ↦ 1`.
pub fn brandt(n: usize) -> Result<FiniteSemigroup, SemigroupError> {
    if n == 0 {
        return Err(SemigroupError::Empty);
    }
    let im = symmetric_inverse_monoid(n)?;
    let maps = PartialInjection::enumerate(n);
    let rank_le_one = BitSet::from_indices(im.order(), (0..maps.len()).filter(|&i| maps[i].rank() <= 1));
    let (b, _) = im.restrict(&rank_le_one)?;
    FiniteSemigroup::build(b.rows(), format!("B{n}"))
}

/// The chain `0 < 1 < .. < n-1` under minimum.
pub fn chain_semilattice(n: usize) -> Result<FiniteSemigroup, SemigroupError> {
    if n == 0 {
        return Err(SemigroupError::Empty);
    }
    let rows = (0..n).map(|x| (0..n).map(|y| x.min(y)).collect()).collect();
    FiniteSemigroup::build(rows, format!("Y{n}"))
}

/// `Z_n` under addition.
pub fn cyclic_group(n: usize) -> Result<FiniteSemigroup, SemigroupError> {
    if n == 0 {
        return Err(SemigroupError::Empty);
    }
    let rows = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    FiniteSemigroup::build(rows, format!("Z{n}"))
}

/// The monoid `{1, a, 0}` with `a² = 0`, as indices `0, 1, 2`.
pub fn nil_monoid() -> FiniteSemigroup {
    FiniteSemigroup::build(vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]], "N3")
        .expect("nil monoid table is associative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::closure;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn factorial(k: usize) -> usize {
        (1..=k).product()
    }

    #[test]
    fn orders_match_counting_formula() {
        for n in 0..=4 {
            let expected: usize = (0..=n).map(|k| binomial(n, k).pow(2) * factorial(k)).sum();
            assert_eq!(PartialInjection::enumerate(n).len(), expected);
        }
        assert_eq!(symmetric_inverse_monoid(0).unwrap().order(), 1);
        assert_eq!(symmetric_inverse_monoid(2).unwrap().order(), 7);
        assert_eq!(symmetric_inverse_monoid(3).unwrap().order(), 34);
    }

    #[test]
    fn i4_is_the_largest_allowed() {
        assert_eq!(symmetric_inverse_monoid(4).unwrap().order(), 209);
        assert!(matches!(
            symmetric_inverse_monoid(5),
            Err(SemigroupError::TooLarge { .. })
        ));
    }

    #[test]
    fn canonical_order_of_i2() {
        let maps = PartialInjection::enumerate(2);
        let listed: Vec<Vec<Option<usize>>> = maps.iter().map(|m| m.images.clone()).collect();
        assert_eq!(
            listed,
            vec![
                vec![None, None],
                vec![Some(0), None],
                vec![Some(1), None],
                vec![None, Some(0)],
                vec![None, Some(1)],
                vec![Some(0), Some(1)],
                vec![Some(1), Some(0)],
            ]
        );
    }

    #[test]
    fn idempotents_of_in_are_identity_restrictions() {
        for n in 0..=3 {
            let s = symmetric_inverse_monoid(n).unwrap();
            let maps = PartialInjection::enumerate(n);
            let es = s.idempotents();
            assert_eq!(es.len(), 1 << n);
            assert!(es.iter().all(|&e| maps[e].is_identity_restriction()));
        }
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = PartialInjection::new(vec![Some(1), None]).unwrap();
        let a_inv = a.inverse();
        // a a⁻¹ is the identity on {0}; a⁻¹ a the identity on {1}.
        assert_eq!(a.then(&a_inv).images, vec![Some(0), None]);
        assert_eq!(a_inv.then(&a).images, vec![None, Some(1)]);
    }

    #[test]
    fn brandt_two_is_generated_by_a_and_its_inverse() {
        let b2 = brandt(2).unwrap();
        assert_eq!(b2.order(), 5);
        assert_eq!(b2.idempotents(), vec![0, 1, 4]);
        let (e1, a, a_inv, e2) = (1, 2, 3, 4);
        assert_eq!(b2.mul(a, a_inv), e1);
        assert_eq!(b2.mul(a_inv, a), e2);
        assert_eq!(b2.mul(a, a), 0);
        // Closure of {a, a⁻¹} inside I2 gives exactly the rank ≤ 1 maps.
        let i2 = symmetric_inverse_monoid(2).unwrap();
        assert_eq!(closure(&i2, &BitSet::from_indices(7, [2, 3])).to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(brandt(3).unwrap().order(), 10);
    }

    #[test]
    fn small_chains_and_groups() {
        assert_eq!(chain_semilattice(1).unwrap().order(), 1);
        let z2 = cyclic_group(2).unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.identity(), Some(0));
        assert_eq!(z2.idempotents(), vec![0]);
        let n = nil_monoid();
        assert_eq!(n.identity(), Some(0));
        assert_eq!(n.mul(1, 1), 2);
    }
}
