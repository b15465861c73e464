//! Adequate and ample semigroups: the unary operations `a⁺`, `a*`, the
//! conditions A1–A3 on `R′`, the two-sided condition (⋆), and the quotient
//! built with `≤_l = ≤_{L*}`.

use serde::Serialize;

use crate::axioms::build_lprime;
use crate::check::Check;
use crate::error::AnalysisError;
use crate::green::{lstar, lstar_preorder, rstar};
use crate::inverse::inverse_data;
use crate::quotient::{build_quotient, Quotient, QuotientOptions};
use crate::relation::BoolRelation;
use crate::semigroup::FiniteSemigroup;

#[derive(Clone, Debug, Serialize)]
pub struct AdequateData {
    /// `a*`, the idempotent `L*`-related to `a`; set only when right adequate.
    pub star: Vec<Option<usize>>,
    /// `a⁺`, the idempotent `R*`-related to `a`; set only when left adequate.
    pub plus: Vec<Option<usize>>,
    pub idempotents_commute: Check,
    pub left_adequate: Check,
    pub right_adequate: Check,
    /// `ab⁺ = (ab)⁺a`.
    pub left_ample: Check,
    /// `b*a = a(ba)*`.
    pub right_ample: Check,
}

impl AdequateData {
    pub fn is_left_ample(&self) -> bool {
        self.left_ample.holds
    }

    pub fn is_right_ample(&self) -> bool {
        self.right_ample.holds
    }

    pub fn is_ample(&self) -> bool {
        self.left_ample.holds && self.right_ample.holds
    }

    fn star(&self, a: usize) -> usize {
        self.star[a].expect("right adequate")
    }

    fn plus(&self, a: usize) -> usize {
        self.plus[a].expect("left adequate")
    }
}

/// For each `a`, the idempotent in its class when there is exactly one.
fn unique_idempotent(s: &FiniteSemigroup, rel: &BoolRelation, name: &str, commute: bool) -> (Vec<Option<usize>>, Check) {
    let idempotents = s.idempotents();
    let mut check = Check::new(name);
    let mut out = Vec::with_capacity(s.order());
    for a in s.elements() {
        let mut es = idempotents.iter().copied().filter(|&e| rel.get(a, e));
        let found = match (es.next(), es.next()) {
            (Some(e), None) => Some(e),
            _ => None,
        };
        check.record(commute && found.is_some(), || vec![a]);
        out.push(found);
    }
    if check.failed() {
        out.fill(None);
    }
    (out, check)
}

pub fn adequate_data(s: &FiniteSemigroup) -> AdequateData {
    let idempotents = s.idempotents();
    let mut idempotents_commute = Check::new("idempotents commute");
    for &e in &idempotents {
        for &f in &idempotents {
            idempotents_commute.record(s.mul(e, f) == s.mul(f, e), || vec![e, f]);
        }
    }
    let commute = idempotents_commute.holds;
    let (plus, left_adequate) = unique_idempotent(s, &rstar(s), "left adequate", commute);
    let (star, right_adequate) = unique_idempotent(s, &lstar(s), "right adequate", commute);

    let mut left_ample = Check::new("left ample");
    let mut right_ample = Check::new("right ample");
    if left_adequate.holds {
        for a in s.elements() {
            for b in s.elements() {
                let ok = s.mul(a, plus[b].unwrap()) == s.mul(plus[s.mul(a, b)].unwrap(), a);
                left_ample.record(ok, || vec![a, b]);
            }
        }
    } else {
        left_ample = Check::skipped("left ample", "not left adequate");
    }
    if right_adequate.holds {
        for a in s.elements() {
            for b in s.elements() {
                let ok = s.mul(star[b].unwrap(), a) == s.mul(a, star[s.mul(b, a)].unwrap());
                right_ample.record(ok, || vec![a, b]);
            }
        }
    } else {
        right_ample = Check::skipped("right ample", "not right adequate");
    }
    AdequateData {
        star,
        plus,
        idempotents_commute,
        left_adequate,
        right_adequate,
        left_ample,
        right_ample,
    }
}

/// Consequences of right ampleness: `aa* = a`, `(ab)* = (a*b)*`, and
/// `b* = (ab)*` iff `b = a*b`.
pub fn check_right_ample_properties(s: &FiniteSemigroup, ad: &AdequateData) -> Result<[Check; 3], AnalysisError> {
    if !ad.is_right_ample() {
        return Err(AnalysisError::NotRightAmple);
    }
    let mut absorbs = Check::new("aa* = a");
    let mut star_of_product = Check::new("(ab)* = (a*b)*");
    let mut fixes = Check::new("b* = (ab)* iff b = a*b");
    for a in s.elements() {
        let astar = ad.star(a);
        absorbs.record(s.mul(a, astar) == a, || vec![a]);
        for b in s.elements() {
            let ab = s.mul(a, b);
            let astar_b = s.mul(astar, b);
            star_of_product.record(ad.star(ab) == ad.star(astar_b), || vec![a, b]);
            fixes.record((ad.star(b) == ad.star(ab)) == (b == astar_b), || vec![a, b]);
        }
    }
    Ok([absorbs, star_of_product, fixes])
}

#[derive(Clone, Debug, Serialize)]
pub struct AAxiomReport {
    pub rprime_left_congruence: Check,
    pub a1: Check,
    pub a2: Check,
    pub a3: Check,
}

impl AAxiomReport {
    pub fn checks(&self) -> [&Check; 4] {
        [&self.rprime_left_congruence, &self.a1, &self.a2, &self.a3]
    }

    pub fn passes(&self) -> bool {
        self.checks().iter().all(|c| c.holds)
    }
}

/// A1–A3 for a right ample `S` and a candidate `R′`.
pub fn check_a_axioms(s: &FiniteSemigroup, rprime: &BoolRelation, ad: &AdequateData) -> Result<AAxiomReport, AnalysisError> {
    if !ad.is_right_ample() {
        return Err(AnalysisError::NotRightAmple);
    }
    let n = s.order() as u64;
    let witness = if let Some(a) = rprime.reflexivity_witness() {
        Some(vec![a, a])
    } else if let Some((a, b)) = rprime.symmetry_witness() {
        Some(vec![a, b])
    } else if let Some((a, b, c)) = rprime.transitivity_witness() {
        Some(vec![a, b, c])
    } else {
        rprime.left_compatibility_witness(s).map(|(c, a, b)| vec![c, a, b])
    };
    let rprime_left_congruence = Check::from_witness("R' is a left congruence", n * n * n, witness);

    let mut a1 = Check::new("A1");
    for alpha in s.elements() {
        for beta in s.elements() {
            let target = s.mul(alpha, ad.star(beta));
            let found = s.elements().any(|gamma| {
                let ga = s.mul(gamma, alpha);
                s.mul(ad.star(gamma), alpha) == target
                    && rprime
                        .row(gamma)
                        .iter()
                        .any(|delta| s.mul(delta, beta) == ga && rprime.get(delta, ga))
            });
            a1.record(found, || vec![alpha, beta]);
        }
    }
    let mut a2 = Check::new("A2");
    for alpha in s.elements() {
        for beta in s.elements() {
            for gamma in s.elements() {
                if rprime.get(s.mul(gamma, alpha), s.mul(gamma, beta)) {
                    let g = ad.star(gamma);
                    a2.record(rprime.get(s.mul(g, alpha), s.mul(g, beta)), || vec![alpha, beta, gamma]);
                }
            }
        }
    }
    let a3 = Check::from_witness(
        "A3",
        rprime.count() as u64,
        rprime.first_pair_outside(&rstar(s)).map(|(a, b)| vec![a, b]),
    );
    Ok(AAxiomReport {
        rprime_left_congruence,
        a1,
        a2,
        a3,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StarConditionReport {
    pub check: Check,
    /// `witnesses[b][c]` is the least `(u, v)` found for the pair `(b, c)`.
    pub witnesses: Vec<Vec<Option<(usize, usize)>>>,
}

/// (⋆): for all `b, c` there are `u, v` with `ub = vc`, `u⁺ = v⁺ = (vc)⁺`
/// and `bc* = u*b`.
pub fn check_star_condition(s: &FiniteSemigroup, ad: &AdequateData) -> Result<StarConditionReport, AnalysisError> {
    if !ad.is_ample() {
        return Err(AnalysisError::NotAmple);
    }
    let mut check = Check::new("star condition");
    let mut witnesses = vec![vec![None; s.order()]; s.order()];
    for b in s.elements() {
        for c in s.elements() {
            let target = s.mul(b, ad.star(c));
            let found = s.elements().find_map(|u| {
                let ub = s.mul(u, b);
                if s.mul(ad.star(u), b) != target || ad.plus(u) != ad.plus(ub) {
                    return None;
                }
                s.elements()
                    .find(|&v| s.mul(v, c) == ub && ad.plus(v) == ad.plus(u))
                    .map(|v| (u, v))
            });
            witnesses[b][c] = found;
            check.record(found.is_some(), || vec![b, c]);
        }
    }
    Ok(StarConditionReport { check, witnesses })
}

#[derive(Clone, Debug, Serialize)]
pub struct RightAmpleQuotient {
    pub quotient: Quotient,
    /// `L*_a ∧ L*_b = L*_c` iff `c* = a*b*`.
    pub meet_law: Check,
    /// `φ(a)⁻¹φ(a) = φ(a*)`.
    pub star_preserved: Check,
    /// `φ(a)φ(a)⁻¹ = φ(a⁺)`, when `S` is left adequate.
    pub plus_preserved: Option<Check>,
}

/// The quotient for `(S, R′, ≤_{L*})`, with the unary operations checked to
/// survive the embedding.
pub fn right_ample_quotient(
    s: &FiniteSemigroup,
    rprime: &BoolRelation,
    options: QuotientOptions,
) -> Result<RightAmpleQuotient, AnalysisError> {
    let ad = adequate_data(s);
    let axioms = check_a_axioms(s, rprime, &ad)?;
    if let Some(c) = axioms.checks().into_iter().find(|c| !c.holds) {
        return Err(AnalysisError::Verification {
            check: c.name.clone(),
            witness: c.witness.clone().unwrap_or_default(),
        });
    }
    let leql = lstar_preorder(s);
    let lp = build_lprime(&leql)?;
    let mut meet_law = Check::new("L* meet is the product of stars");
    for a in s.elements() {
        for b in s.elements() {
            let ab = s.mul(ad.star(a), ad.star(b));
            for c in s.elements() {
                let is_meet = lp.meet(a, b) == Some(lp.class(c));
                meet_law.record(is_meet == (ad.star(c) == ab), || vec![a, b, c]);
            }
        }
    }
    if meet_law.failed() {
        return Err(AnalysisError::Verification {
            check: meet_law.name,
            witness: meet_law.witness.unwrap_or_default(),
        });
    }
    let quotient = build_quotient(s, rprime, &leql, options)?;
    let p = &quotient.p;
    let pinv = inverse_data(p)?;
    let phi = &quotient.phi;
    let mut star_preserved = Check::new("star preserved");
    for a in s.elements() {
        star_preserved.record(pinv.domain_idempotent(p, phi[a]) == phi[ad.star(a)], || vec![a]);
    }
    let plus_preserved = ad.left_adequate.holds.then(|| {
        let mut check = Check::new("plus preserved");
        for a in s.elements() {
            check.record(pinv.range_idempotent(p, phi[a]) == phi[ad.plus(a)], || vec![a]);
        }
        check
    });
    Ok(RightAmpleQuotient {
        quotient,
        meet_law,
        star_preserved,
        plus_preserved,
    })
}
