//! Green's relations and preorders, and the starred relations `R*`, `L*`
//! and `≤_{L*}`.
//!
//! Quantifiers over `S¹` range over the `n` elements plus an external
//! identity, written `None` below. When `S` already has an identity the
//! extra candidate repeats an existing one, so the answers are the same.

use crate::inverse::InverseData;
use crate::relation::{BoolRelation, Partition};
use crate::semigroup::FiniteSemigroup;

/// Product in `S¹` with `None` standing for the adjoined identity.
#[inline]
pub(crate) fn mul1(s: &FiniteSemigroup, x: Option<usize>, y: usize) -> usize {
    match x {
        Some(x) => s.mul(x, y),
        None => y,
    }
}

#[inline]
pub(crate) fn mul1_right(s: &FiniteSemigroup, y: usize, x: Option<usize>) -> usize {
    match x {
        Some(x) => s.mul(y, x),
        None => y,
    }
}

/// `S¹` as a concrete table: `S` itself when it is a monoid, otherwise `S`
/// with a new identity at index `n`. The second component is the index of
/// the adjoined element, if one was added.
pub fn adjoin_identity(s: &FiniteSemigroup) -> (FiniteSemigroup, Option<usize>) {
    if s.identity().is_some() {
        return (s.clone(), None);
    }
    let n = s.order();
    let mut rows = s.rows();
    for (x, row) in rows.iter_mut().enumerate() {
        row.push(x);
    }
    rows.push((0..=n).collect());
    let t = FiniteSemigroup::build(rows, format!("{}^1", s.name()))
        .expect("adjoining an identity preserves associativity");
    (t, Some(n))
}

#[derive(Clone, Debug)]
pub struct GreenData {
    pub r: Partition,
    pub l: Partition,
    pub h: Partition,
    pub d: Partition,
    pub j: Partition,
    /// `get(a, b)` iff `S¹a ⊆ S¹b`.
    pub leq_l: BoolRelation,
    /// `get(a, b)` iff `aS¹ ⊆ bS¹`.
    pub leq_r: BoolRelation,
    /// `get(a, b)` iff `S¹aS¹ ⊆ S¹bS¹`.
    pub leq_j: BoolRelation,
}

pub fn green(s: &FiniteSemigroup) -> GreenData {
    let n = s.order();
    let mut leq_l = BoolRelation::identity(n);
    let mut leq_r = BoolRelation::identity(n);
    let mut leq_j = BoolRelation::identity(n);
    for b in s.elements() {
        for x in s.elements() {
            leq_l.set(s.mul(x, b), b, true);
            leq_r.set(s.mul(b, x), b, true);
            leq_j.set(s.mul(x, b), b, true);
            leq_j.set(s.mul(b, x), b, true);
            for y in s.elements() {
                leq_j.set(s.mul(s.mul(x, b), y), b, true);
            }
        }
    }
    let l_rel = leq_l.symmetric_part();
    let r_rel = leq_r.symmetric_part();
    let h_rel = l_rel.intersection(&r_rel);
    let d_rel = l_rel.union(&r_rel).transitive_closure();
    let j_rel = leq_j.symmetric_part();
    GreenData {
        r: r_rel.partition(),
        l: l_rel.partition(),
        h: h_rel.partition(),
        d: d_rel.partition(),
        j: j_rel.partition(),
        leq_l,
        leq_r,
        leq_j,
    }
}

impl GreenData {
    /// `a H e` for some idempotent `e`.
    pub fn lies_in_subgroup(&self, s: &FiniteSemigroup, a: usize) -> bool {
        self.h.classes[self.h.class_of[a]]
            .iter()
            .any(|&e| s.is_idempotent(e))
    }

    /// `a H a²`, the finite-case characterisation of group elements.
    pub fn lies_in_subgroup_by_square(&self, s: &FiniteSemigroup, a: usize) -> bool {
        self.h.same(a, s.mul(a, a))
    }
}

/// Canonical relabelling of a sequence: equal entries get equal labels,
/// labels assigned in order of first occurrence.
fn kernel_signature(values: impl Iterator<Item = usize>, width: usize) -> Vec<usize> {
    let mut label = vec![usize::MAX; width];
    let mut next = 0;
    values
        .map(|v| {
            if label[v] == usize::MAX {
                label[v] = next;
                next += 1;
            }
            label[v]
        })
        .collect()
}

fn s1(s: &FiniteSemigroup) -> impl Iterator<Item = Option<usize>> + Clone + '_ {
    std::iter::once(None).chain(s.elements().map(Some))
}

/// `a R* b` iff for all `x, y ∈ S¹`: `xa = ya ⟺ xb = yb`.
pub fn rstar(s: &FiniteSemigroup) -> BoolRelation {
    let n = s.order();
    let sigs: Vec<Vec<usize>> = s
        .elements()
        .map(|a| kernel_signature(s1(s).map(|x| mul1(s, x, a)), n))
        .collect();
    BoolRelation::from_fn(n, |a, b| sigs[a] == sigs[b])
}

/// `a L* b` iff for all `x, y ∈ S¹`: `ax = ay ⟺ bx = by`.
pub fn lstar(s: &FiniteSemigroup) -> BoolRelation {
    lstar_preorder(s).symmetric_part()
}

/// `a ≤_{L*} b` iff for all `x, y ∈ S¹`: `bx = by ⟹ ax = ay`.
pub fn lstar_preorder(s: &FiniteSemigroup) -> BoolRelation {
    let n = s.order();
    let sigs: Vec<Vec<usize>> = s
        .elements()
        .map(|a| kernel_signature(s1(s).map(|x| mul1_right(s, a, x)), n))
        .collect();
    // a ≤ b iff the kernel of x ↦ bx is contained in the kernel of x ↦ ax,
    // i.e. ax is a function of the label of bx.
    BoolRelation::from_fn(n, |a, b| {
        let mut image = vec![usize::MAX; n + 1];
        sigs[b].iter().zip(&sigs[a]).all(|(&kb, &ka)| {
            if image[kb] == usize::MAX {
                image[kb] = ka;
                true
            } else {
                image[kb] == ka
            }
        })
    })
}

/// `a H* a²`: both one-sided cancellation conditions of `a` and `a²` agree.
pub fn square_cancellable(s: &FiniteSemigroup, a: usize) -> bool {
    let n = s.order();
    let a2 = s.mul(a, a);
    let left = |t: usize| kernel_signature(s1(s).map(|x| mul1(s, x, t)), n);
    let right = |t: usize| kernel_signature(s1(s).map(|x| mul1_right(s, t, x)), n);
    left(a) == left(a2) && right(a) == right(a2)
}

/// No two distinct idempotents `e < f` (natural order) are `D`-related.
pub fn is_completely_semisimple(q: &FiniteSemigroup, inv: &InverseData) -> bool {
    let es = &inv.idempotent_list;
    es.iter().all(|&e| {
        es.iter().all(|&f| {
            let below = e != f && q.mul(e, f) == e && q.mul(f, e) == e;
            !(below && inv.green.d.same(e, f))
        })
    })
}
