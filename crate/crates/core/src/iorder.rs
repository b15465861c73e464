//! Deciding whether `S ⊆ Q` is a left I-order, whether it is straight, and
//! extracting the restrictions of `R^Q` and `≤_{L^Q}` to `S`.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{AnalysisError, SemigroupError};
use crate::green::{is_completely_semisimple, square_cancellable};
use crate::inverse::InverseData;
use crate::relation::BoolRelation;
use crate::semigroup::{enumerate_subsemigroups, ElementSubset, FiniteSemigroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FountainGouldReport {
    pub is_fountain_gould: bool,
    /// Per `q`: least `(a, b)` with `a` in a subgroup of `Q` and `q = a♯b`.
    pub witnesses: Vec<Option<(usize, usize)>>,
    /// Square-cancellable elements of `S` (computed in `S`) and whether each
    /// lies in a subgroup of `Q`.
    pub square_cancellable: Vec<(usize, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IOrderReport {
    pub is_left_iorder: bool,
    /// Per `q`: lexicographically least `(a, b) ∈ S×S` with `q = a⁻¹b`.
    pub decomposition: Vec<Option<(usize, usize)>>,
    pub is_straight: bool,
    /// Per `q`: least `(a, b)` with `q = a⁻¹b` and `a R^Q b`.
    pub straight_witnesses: Vec<Option<(usize, usize)>>,
    /// `L`-classes of `Q` (positions in `InverseData::idempotent_list`)
    /// containing no element of `S`.
    pub missed_l_classes: Vec<usize>,
    pub fountain_gould: FountainGouldReport,
}

impl IOrderReport {
    pub fn meets_every_l_class(&self) -> bool {
        self.missed_l_classes.is_empty()
    }

    pub fn first_undecomposed(&self) -> Option<usize> {
        self.decomposition.iter().position(Option::is_none)
    }
}

fn check_subset(q: &FiniteSemigroup, s: &ElementSubset) -> Result<(), SemigroupError> {
    if s.len() != q.order() {
        return Err(SemigroupError::SubsetWidthMismatch {
            expected: q.order(),
            found: s.len(),
        });
    }
    if s.is_empty() {
        return Err(SemigroupError::Empty);
    }
    if let Some((a, b)) = q.first_escape(s) {
        return Err(SemigroupError::NotClosed { a, b });
    }
    Ok(())
}

pub fn analyze_iorder(q: &FiniteSemigroup, inv: &InverseData, s: &ElementSubset) -> Result<IOrderReport, AnalysisError> {
    check_subset(q, s)?;
    let n = q.order();
    let members = s.to_vec();
    let g = &inv.green;
    let mut decomposition = vec![None; n];
    let mut straight_witnesses = vec![None; n];
    for &a in &members {
        let a_inv = inv.inv[a];
        for &b in &members {
            let p = q.mul(a_inv, b);
            if decomposition[p].is_none() {
                decomposition[p] = Some((a, b));
            }
            if straight_witnesses[p].is_none() && g.r.same(a, b) {
                straight_witnesses[p] = Some((a, b));
            }
        }
    }
    let is_left_iorder = decomposition.iter().all(Option::is_some);
    let direct_straight = is_left_iorder && straight_witnesses.iter().all(Option::is_some);

    let mut hit = vec![false; inv.l_class_count()];
    for &a in &members {
        hit[inv.l_class[a]] = true;
    }
    let missed_l_classes: Vec<usize> = (0..hit.len()).filter(|&i| !hit[i]).collect();
    if is_left_iorder && direct_straight != missed_l_classes.is_empty() {
        return Err(AnalysisError::LemmaViolation {
            lemma: "straight iff S meets every L-class",
            detail: format!(
                "direct={direct_straight} missed={missed_l_classes:?} subset={members:?}"
            ),
        });
    }
    let fountain_gould = check_fountain_gould(q, inv, s)?;
    Ok(IOrderReport {
        is_left_iorder,
        decomposition,
        is_straight: direct_straight,
        straight_witnesses,
        missed_l_classes,
        fountain_gould,
    })
}

/// Every `q` is `a♯b` with `a, b ∈ S` and `a` in a subgroup of `Q`, and
/// every square-cancellable element of `S` lies in a subgroup of `Q`.
pub fn check_fountain_gould(
    q: &FiniteSemigroup,
    inv: &InverseData,
    s: &ElementSubset,
) -> Result<FountainGouldReport, AnalysisError> {
    check_subset(q, s)?;
    let g = &inv.green;
    let members = s.to_vec();
    let mut witnesses = vec![None; q.order()];
    for &a in members.iter().filter(|&&a| g.lies_in_subgroup(q, a)) {
        // In an inverse semigroup the group inverse of a is a⁻¹.
        for &b in &members {
            let p = q.mul(inv.inv[a], b);
            if witnesses[p].is_none() {
                witnesses[p] = Some((a, b));
            }
        }
    }
    let (sub, embedding) = q.restrict(s)?;
    let square_cancellable: Vec<(usize, bool)> = sub
        .elements()
        .filter(|&i| square_cancellable(&sub, i))
        .map(|i| {
            let a = embedding.image[i];
            (a, g.lies_in_subgroup(q, a))
        })
        .collect();
    let is_fountain_gould =
        witnesses.iter().all(Option::is_some) && square_cancellable.iter().all(|&(_, in_group)| in_group);
    Ok(FountainGouldReport {
        is_fountain_gould,
        witnesses,
        square_cancellable,
    })
}

/// `S` as its own semigroup with `R′ = R^Q ∩ (S×S)` and `≤_l = ≤_{L^Q} ∩ (S×S)`,
/// re-indexed over `S` in increasing order.
#[derive(Clone, Debug)]
pub struct ExtractedRelations {
    pub sub: FiniteSemigroup,
    /// `embedding[i]` is the element of `Q` at position `i` of `S`.
    pub embedding: Vec<usize>,
    pub rprime: BoolRelation,
    pub leql: BoolRelation,
}

pub fn extract_relations(
    q: &FiniteSemigroup,
    inv: &InverseData,
    s: &ElementSubset,
) -> Result<ExtractedRelations, AnalysisError> {
    check_subset(q, s)?;
    let (sub, map) = q.restrict(s)?;
    let g = &inv.green;
    let rprime = g.r.to_relation().restrict(&map.image);
    let leql = g.leq_l.restrict(&map.image);
    Ok(ExtractedRelations {
        sub,
        embedding: map.image,
        rprime,
        leql,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StraightnessSweep {
    pub subsemigroups: usize,
    pub left_iorders: Vec<Vec<usize>>,
    pub straight: usize,
    pub fountain_gould: usize,
    pub completely_semisimple: bool,
    /// A left I-order that is not straight, if one exists.
    pub counterexample: Option<Vec<usize>>,
    /// A Fountain–Gould order that is not a straight left I-order.
    pub fountain_gould_violation: Option<Vec<usize>>,
}

impl StraightnessSweep {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none() && self.fountain_gould_violation.is_none() && self.completely_semisimple
    }
}

/// Every left I-order in finite `Q` is straight; checked over all
/// subsemigroups.
pub fn verify_finite_straightness(
    q: &FiniteSemigroup,
    inv: &InverseData,
    max_subs: usize,
) -> Result<StraightnessSweep, AnalysisError> {
    let subs = enumerate_subsemigroups(q, max_subs)?;
    let mut sweep = StraightnessSweep {
        subsemigroups: subs.len(),
        left_iorders: Vec::new(),
        straight: 0,
        fountain_gould: 0,
        completely_semisimple: is_completely_semisimple(q, inv),
        counterexample: None,
        fountain_gould_violation: None,
    };
    for s in &subs {
        let report = analyze_iorder(q, inv, s)?;
        if report.fountain_gould.is_fountain_gould {
            sweep.fountain_gould += 1;
            if !report.is_straight && sweep.fountain_gould_violation.is_none() {
                sweep.fountain_gould_violation = Some(s.to_vec());
            }
        }
        if !report.is_left_iorder {
            continue;
        }
        sweep.left_iorders.push(s.to_vec());
        if report.is_straight {
            sweep.straight += 1;
        } else if sweep.counterexample.is_none() {
            sweep.counterexample = Some(s.to_vec());
        }
    }
    Ok(sweep)
}

/// Convenience: the full carrier as a subset.
pub fn whole(q: &FiniteSemigroup) -> ElementSubset {
    BitSet::full(q.order())
}
