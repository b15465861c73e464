//! Inverse semigroup structure: inverses, the idempotent semilattice, the
//! natural partial order and the meet semilattice `Q/L`.

use crate::bitset::BitSet;
use crate::check::Check;
use crate::error::{AnalysisError, InverseError};
use crate::green::{green, GreenData};
use crate::iorder::analyze_iorder;
use crate::relation::BoolRelation;
use crate::semigroup::{ElementSubset, FiniteSemigroup};

#[derive(Clone, Debug)]
pub struct InverseData {
    /// `inv[a]` is the unique `b` with `aba = a`, `bab = b`.
    pub inv: Vec<usize>,
    pub idempotents: ElementSubset,
    /// Idempotents in increasing order; positions index the `L`-classes.
    pub idempotent_list: Vec<usize>,
    /// Natural partial order `a ≤ b` iff `a = aa⁻¹b`; on idempotents this
    /// is `e = ef`.
    pub natural_leq: BoolRelation,
    /// `L`-class of `a`, as a position in `idempotent_list` (that of `a⁻¹a`).
    pub l_class: Vec<usize>,
    /// Meet of `L`-classes: the class whose idempotent is `e·f`.
    pub l_meet_table: Vec<Vec<usize>>,
    pub green: GreenData,
}

impl InverseData {
    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `a⁻¹a`.
    pub fn domain_idempotent(&self, q: &FiniteSemigroup, a: usize) -> usize {
        q.mul(self.inv[a], a)
    }

    /// `aa⁻¹`.
    pub fn range_idempotent(&self, q: &FiniteSemigroup, a: usize) -> usize {
        q.mul(a, self.inv[a])
    }

    /// `L_a ∧ L_b` as an `L`-class index.
    pub fn l_meet(&self, a: usize, b: usize) -> usize {
        self.l_meet_table[self.l_class[a]][self.l_class[b]]
    }

    pub fn l_class_count(&self) -> usize {
        self.idempotent_list.len()
    }
}

pub fn inverse_data(q: &FiniteSemigroup) -> Result<InverseData, InverseError> {
    let n = q.order();
    let mut inverses: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in q.elements() {
        for b in q.elements() {
            if q.mul(q.mul(a, b), a) == a && q.mul(q.mul(b, a), b) == b {
                inverses[a].push(b);
            }
        }
    }
    if let Some(a) = inverses.iter().position(Vec::is_empty) {
        return Err(InverseError::NotRegular { a });
    }
    let idempotent_list = q.idempotents();
    for (i, &e) in idempotent_list.iter().enumerate() {
        for &f in &idempotent_list[i + 1..] {
            if q.mul(e, f) != q.mul(f, e) {
                return Err(InverseError::IdempotentsDontCommute { e, f });
            }
        }
    }
    if let Some(a) = inverses.iter().position(|v| v.len() != 1) {
        return Err(InverseError::MultipleInverses {
            a,
            count: inverses[a].len(),
        });
    }
    let inv: Vec<usize> = inverses.into_iter().map(|v| v[0]).collect();

    let idempotents = BitSet::from_indices(n, idempotent_list.iter().copied());
    let mut position = vec![usize::MAX; n];
    for (i, &e) in idempotent_list.iter().enumerate() {
        position[e] = i;
    }
    let l_class = q.elements().map(|a| position[q.mul(inv[a], a)]).collect();
    let l_meet_table = idempotent_list
        .iter()
        .map(|&e| idempotent_list.iter().map(|&f| position[q.mul(e, f)]).collect())
        .collect();
    let natural_leq = BoolRelation::from_fn(n, |a, b| q.mul(q.mul(a, inv[a]), b) == a);

    Ok(InverseData {
        inv,
        idempotents,
        idempotent_list,
        natural_leq,
        l_class,
        l_meet_table,
        green: green(q),
    })
}

/// The meet of `L_a` and `L_b` as a greatest common lower bound in the
/// preorder `≤_L`, found by scanning, independently of inverses.
fn l_glb_by_scan(g: &GreenData, n: usize, a: usize, b: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..n).filter(|&z| g.leq_l.get(z, a) && g.leq_l.get(z, b)).collect();
    lower
        .iter()
        .copied()
        .find(|&top| lower.iter().all(|&z| g.leq_l.get(z, top)))
}

/// `L_a ∧ L_b = L_c` iff `c⁻¹c = a⁻¹a·b⁻¹b`, with the left side computed as
/// a greatest lower bound in `Q/L`.
pub fn check_lemma_invmeet(q: &FiniteSemigroup, inv: &InverseData) -> Check {
    let mut check = Check::new("L-class meet via idempotents");
    let g = &inv.green;
    for a in q.elements() {
        for b in q.elements() {
            let glb = l_glb_by_scan(g, q.order(), a, b);
            let target = q.mul(inv.domain_idempotent(q, a), inv.domain_idempotent(q, b));
            for c in q.elements() {
                let lhs = glb.is_some_and(|m| g.l.same(m, c));
                let rhs = inv.domain_idempotent(q, c) == target;
                check.record(lhs == rhs, || vec![a, b, c]);
            }
        }
    }
    check
}

/// `x⁻¹ R a` iff `x R xa L a`, for all `x, a`.
pub fn check_lemma_box(q: &FiniteSemigroup, inv: &InverseData) -> Check {
    let mut check = Check::new("x^-1 R a iff x R xa L a");
    let g = &inv.green;
    for x in q.elements() {
        for a in q.elements() {
            let xa = q.mul(x, a);
            let lhs = g.r.same(inv.inv[x], a);
            let rhs = g.r.same(x, xa) && g.l.same(xa, a);
            check.record(lhs == rhs, || vec![x, a]);
        }
    }
    check
}

/// For `u R v`: `bc⁻¹ = u⁻¹v` iff `ub = vc`, `v R vc` and `L_b ∧ L_c = L_{ub}`.
pub fn check_lemma_ore(q: &FiniteSemigroup, inv: &InverseData) -> Check {
    let mut check = Check::new("bc^-1 = u^-1 v characterisation");
    let g = &inv.green;
    for b in q.elements() {
        for c in q.elements() {
            let bc_inv = q.mul(b, inv.inv[c]);
            let meet = inv.l_meet(b, c);
            for u in q.elements() {
                let ub = q.mul(u, b);
                for &v in &g.r.classes[g.r.class_of[u]] {
                    let vc = q.mul(v, c);
                    let lhs = bc_inv == q.mul(inv.inv[u], v);
                    let rhs = ub == vc && g.r.same(v, vc) && inv.l_class[ub] == meet;
                    check.record(lhs == rhs, || vec![b, c, u, v]);
                }
            }
        }
    }
    check
}

/// For `S` a straight left I-order and `a R b`, `c R d` in `S`:
/// `a⁻¹b = c⁻¹d` iff some `x, y ∈ S` have `xa = yc`, `xb = yd`,
/// `x R xa L a` and `y R yc L c` (Green's relations of `Q`).
pub fn check_lemma_erdefn(
    q: &FiniteSemigroup,
    inv: &InverseData,
    s: &ElementSubset,
) -> Result<Check, AnalysisError> {
    let report = analyze_iorder(q, inv, s)?;
    if !report.is_straight {
        return Err(AnalysisError::PreconditionNotStraight);
    }
    let g = &inv.green;
    let members = s.to_vec();
    let mut check = Check::new("a^-1 b = c^-1 d via witnesses in S");
    let admissible: Vec<Vec<usize>> = q
        .elements()
        .map(|a| {
            if !s.contains(a) {
                return Vec::new();
            }
            members
                .iter()
                .copied()
                .filter(|&x| {
                    let xa = q.mul(x, a);
                    g.r.same(x, xa) && g.l.same(xa, a)
                })
                .collect()
        })
        .collect();
    for &a in &members {
        for &b in members.iter().filter(|&&b| g.r.same(a, b)) {
            let lhs_ab = q.mul(inv.inv[a], b);
            for &c in &members {
                for &d in members.iter().filter(|&&d| g.r.same(c, d)) {
                    let lhs = lhs_ab == q.mul(inv.inv[c], d);
                    let rhs = admissible[a].iter().any(|&x| {
                        admissible[c]
                            .iter()
                            .any(|&y| q.mul(x, a) == q.mul(y, c) && q.mul(x, b) == q.mul(y, d))
                    });
                    check.record(lhs == rhs, || vec![a, b, c, d]);
                }
            }
        }
    }
    Ok(check)
}
