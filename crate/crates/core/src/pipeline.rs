//! End-to-end runs: from a Cayley table (and a subset) through every stage,
//! stopping at the first failure.

use crate::ample::{adequate_data, check_a_axioms, check_right_ample_properties, check_star_condition, right_ample_quotient};
use crate::axioms::{check_m_axioms, check_secprops};
use crate::check::Check;
use crate::error::{AnalysisError, InverseError, SemigroupError};
use crate::green::rstar;
use crate::inverse::{inverse_data, InverseData};
use crate::iorder::{analyze_iorder, extract_relations, verify_finite_straightness, whole};
use crate::quotient::{build_quotient, certify_against, QuotientOptions};
use crate::report::{PipelineReport, Stage};
use crate::semigroup::{ElementSubset, FiniteSemigroup};

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub verify_all_witnesses: bool,
    /// Bound on the subsemigroup enumeration in sweeps.
    pub max_subsemigroups: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            verify_all_witnesses: false,
            max_subsemigroups: 1 << 20,
        }
    }
}

impl PipelineOptions {
    fn quotient(&self) -> QuotientOptions {
        QuotientOptions {
            verify_all_witnesses: self.verify_all_witnesses,
        }
    }
}

/// Anchor and witness for an error that ends a stage.
fn describe(err: &AnalysisError) -> (String, Option<Vec<usize>>) {
    use AnalysisError::*;
    match err {
        Semigroup(SemigroupError::NotClosed { a, b }) => ("subset closed".into(), Some(vec![*a, *b])),
        Semigroup(SemigroupError::NonAssociative { x, y, z }) => ("associativity".into(), Some(vec![*x, *y, *z])),
        Semigroup(e) => (e.to_string(), None),
        Inverse(e) => inverse_failure(e),
        LemmaViolation { lemma, .. } => (lemma.to_string(), None),
        PreconditionNotStraight => ("straight left I-order".into(), None),
        NotPreorder { witness } => ("<=_l is a preorder".into(), Some(witness.clone())),
        MAxiomsNotEstablished => ("M1-M6".into(), None),
        RelationMalformed { reason } => (reason.clone(), None),
        NotRightAmple => ("right ample".into(), None),
        NotAmple => ("ample".into(), None),
        Verification { check, witness } => (check.clone(), Some(witness.clone())),
        CertificationFailed { stage, witness } => (stage.to_string(), Some(witness.clone())),
    }
}

fn inverse_failure(e: &InverseError) -> (String, Option<Vec<usize>>) {
    match *e {
        InverseError::NotRegular { a } => ("regular".into(), Some(vec![a])),
        InverseError::IdempotentsDontCommute { e, f } => ("idempotents commute".into(), Some(vec![e, f])),
        InverseError::MultipleInverses { a, .. } => ("unique inverses".into(), Some(vec![a])),
    }
}

fn failed(stage: Stage, err: &AnalysisError) -> Stage {
    let (anchor, witness) = describe(err);
    stage.detail("error", err).fail(anchor, witness)
}

fn format_list(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(" "))
}

fn check_inverse(report: &mut PipelineReport, q: &FiniteSemigroup) -> Option<InverseData> {
    let mut inv = None;
    report.run(|| {
        let stage = Stage::new("check-inverse", "inverse semigroup").detail("order", q.order());
        match inverse_data(q) {
            Ok(d) => {
                let stage = stage
                    .detail("idempotents", d.idempotent_list.len())
                    .detail("l_classes", d.l_class_count());
                inv = Some(d);
                stage
            }
            Err(e) => failed(stage, &e.into()),
        }
    });
    inv
}

/// Stages of the main theorem for `S ⊆ Q`, appended to `report`.
fn theorem_main_stages(
    report: &mut PipelineReport,
    q: &FiniteSemigroup,
    inv: &InverseData,
    subset: &ElementSubset,
    options: PipelineOptions,
) -> bool {
    let ok = report.run(|| {
        let stage = Stage::new("analyze-iorder", "left I-order").detail("subset", format_list(&subset.to_vec()));
        match analyze_iorder(q, inv, subset) {
            Err(e) => failed(stage, &e),
            Ok(r) => {
                let stage = stage
                    .detail("left_iorder", r.is_left_iorder)
                    .detail("straight", r.is_straight)
                    .detail("fountain_gould", r.fountain_gould.is_fountain_gould)
                    .detail("missed_l_classes", format_list(&r.missed_l_classes))
                    .with_data(&r);
                if let Some(x) = r.first_undecomposed() {
                    stage.fail("not a left I-order", Some(vec![x]))
                } else if !r.is_straight {
                    let x = r.straight_witnesses.iter().position(Option::is_none);
                    stage.fail("straight iff S meets every L-class", x.map(|x| vec![x]))
                } else {
                    stage
                }
            }
        }
    });
    if !ok {
        return false;
    }
    let ex = match extract_relations(q, inv, subset) {
        Ok(ex) => ex,
        Err(e) => return report.push(failed(Stage::new("extract-relations", "restriction to S"), &e)),
    };
    report.push(
        Stage::new("extract-relations", "restriction to S")
            .detail("order", ex.sub.order())
            .detail("rprime_pairs", ex.rprime.count())
            .detail("leql_pairs", ex.leql.count()),
    );
    let s = &ex.sub;
    let ok = report.run(|| {
        let axioms = check_m_axioms(s, &ex.rprime, &ex.leql);
        let mut checks: Vec<&Check> = axioms.flags().into_iter().chain(axioms.axioms()).collect();
        checks.push(&axioms.leql_right_compatible);
        Stage::new("m-axioms", "M1-M6").with_data(&axioms).from_checks(checks)
    });
    if !ok {
        return false;
    }
    let ok = report.run(|| match check_secprops(s, &ex.rprime, &ex.leql) {
        Err(e) => failed(Stage::new("secprops", "consequences of M1-M6"), &e),
        Ok(sec) => Stage::new("secprops", "consequences of M1-M6")
            .detail("internal_contradiction", sec.internal_contradiction)
            .with_data(&sec)
            .from_checks(sec.checks()),
    });
    if !ok {
        return false;
    }
    let mut quotient = None;
    let ok = report.run(|| {
        let stage = Stage::new("build-quotient", "quotient construction");
        match build_quotient(s, &ex.rprime, &ex.leql, options.quotient()) {
            Err(e) => failed(stage, &e),
            Ok(p) => {
                let stage = stage
                    .detail("sigma", p.sigma.len())
                    .detail("order", p.order())
                    .detail("checks", p.transcript.len())
                    .with_data(&p);
                quotient = Some(p);
                stage
            }
        }
    });
    if !ok {
        return false;
    }
    let quotient = quotient.expect("set on success");
    report.run(|| {
        let stage = Stage::new("certify", "[a,b] -> a^-1 b is an isomorphism");
        match certify_against(&quotient, q, inv, &ex.embedding) {
            Err(e) => failed(stage, &e),
            Ok(c) => stage.detail("iso", format_list(&c.iso)).with_data(&c),
        }
    })
}

/// Main theorem, both directions, for `S ⊆ Q`: `S` is a straight left
/// I-order, its extracted relations satisfy M1–M6, and the quotient built
/// from them is isomorphic to `Q`.
pub fn pipeline_theorem_main(q: &FiniteSemigroup, subset: &ElementSubset, options: PipelineOptions) -> PipelineReport {
    let mut report = PipelineReport::new("theorem-main");
    if let Some(inv) = check_inverse(&mut report, q) {
        theorem_main_stages(&mut report, q, &inv, subset, options);
    }
    report
}

/// Every left I-order in finite `Q` is straight, and each one round-trips
/// through the main theorem.
pub fn pipeline_corollary_finite(q: &FiniteSemigroup, options: PipelineOptions) -> PipelineReport {
    let mut report = PipelineReport::new("finite-straightness");
    let Some(inv) = check_inverse(&mut report, q) else {
        return report;
    };
    let mut sweep = None;
    let ok = report.run(|| {
        let stage = Stage::new("sweep", "every left I-order in a finite inverse semigroup is straight");
        match verify_finite_straightness(q, &inv, options.max_subsemigroups) {
            Err(e) => failed(stage, &e),
            Ok(sw) => {
                let mut stage = stage
                    .detail("subsemigroups", sw.subsemigroups)
                    .detail("left_iorders", sw.left_iorders.len())
                    .detail("straight", sw.straight)
                    .detail("fountain_gould", sw.fountain_gould)
                    .detail("completely_semisimple", sw.completely_semisimple);
                if let Some(c) = &sw.counterexample {
                    stage = stage.fail("non-straight left I-order", Some(c.clone()));
                } else if let Some(c) = &sw.fountain_gould_violation {
                    stage = stage.fail("Fountain-Gould order is a straight left I-order", Some(c.clone()));
                } else if !sw.completely_semisimple {
                    stage = stage.fail("completely semisimple", None);
                }
                sweep = Some(sw);
                stage
            }
        }
    });
    if !ok {
        return report;
    }
    for members in sweep.expect("set on success").left_iorders {
        let subset = ElementSubset::from_indices(q.order(), members.iter().copied());
        let mut sub = PipelineReport::new("theorem-main");
        theorem_main_stages(&mut sub, q, &inv, &subset, options);
        let mut stage = Stage::new(format!("theorem-main {}", format_list(&members)), "round trip");
        stage.elapsed = sub.stages.iter().map(|s| s.elapsed).sum();
        if let Some(f) = sub.first_failure() {
            stage = stage.detail("failed_stage", &f.name).fail(f.anchor.clone(), f.witness.clone());
        }
        if !report.push(stage) {
            break;
        }
    }
    report
}

/// Two-sided ample case: `S` (the whole table, or `subset` of an inverse
/// `Q`) is ample, satisfies (⋆), and the quotient with `R′ = R*` and
/// `≤_l = ≤_{L*}` preserves `*` and `⁺`.
pub fn pipeline_ample(q: &FiniteSemigroup, subset: Option<&ElementSubset>, options: PipelineOptions) -> PipelineReport {
    let mut report = PipelineReport::new("ample");
    let (s, reference) = match subset {
        Some(subset) => {
            let Some(inv) = check_inverse(&mut report, q) else {
                return report;
            };
            match q.restrict(subset) {
                Ok((s, map)) => (s, Some((inv, map.image))),
                Err(e) => {
                    report.push(failed(Stage::new("restrict", "subsemigroup"), &e.into()));
                    return report;
                }
            }
        }
        None => {
            let reference = inverse_data(q).ok().map(|inv| (inv, whole(q).to_vec()));
            (q.clone(), reference)
        }
    };

    let ad = adequate_data(&s);
    let ok = report.run(|| {
        let stage = Stage::new("adequate", "ample").with_data(&ad).from_checks([
            &ad.idempotents_commute,
            &ad.left_adequate,
            &ad.right_adequate,
            &ad.left_ample,
            &ad.right_ample,
        ]);
        if stage.passed {
            stage
        } else {
            stage.detail("error", AnalysisError::NotAmple)
        }
    });
    if !ok {
        return report;
    }
    let ok = report.run(|| match check_right_ample_properties(&s, &ad) {
        Err(e) => failed(Stage::new("right-ample-properties", "right ample"), &e),
        Ok(checks) => Stage::new("right-ample-properties", "right ample").from_checks(&checks),
    });
    if !ok {
        return report;
    }
    let ok = report.run(|| match check_star_condition(&s, &ad) {
        Err(e) => failed(Stage::new("star-condition", "star condition"), &e),
        Ok(r) => Stage::new("star-condition", "star condition")
            .detail("pairs", r.check.checked)
            .with_data(&r)
            .from_checks([&r.check]),
    });
    if !ok {
        return report;
    }
    let rprime = rstar(&s);
    let ok = report.run(|| match check_a_axioms(&s, &rprime, &ad) {
        Err(e) => failed(Stage::new("a-axioms", "A1-A3"), &e),
        Ok(r) => Stage::new("a-axioms", "A1-A3").with_data(&r).from_checks(r.checks()),
    });
    if !ok {
        return report;
    }
    let mut built = None;
    let ok = report.run(|| {
        let stage = Stage::new("right-ample-quotient", "quotient with <=_l = <=_L*");
        match right_ample_quotient(&s, &rprime, options.quotient()) {
            Err(e) => failed(stage, &e),
            Ok(r) => {
                let mut checks = vec![&r.meet_law, &r.star_preserved];
                checks.extend(r.plus_preserved.as_ref());
                let stage = stage
                    .detail("order", r.quotient.order())
                    .detail("sigma", r.quotient.sigma.len())
                    .with_data(&r)
                    .from_checks(checks);
                built = Some(r);
                stage
            }
        }
    });
    if !ok {
        return report;
    }
    let (Some((inv, embedding)), Some(built)) = (reference, built) else {
        return report;
    };
    report.run(|| {
        let stage = Stage::new("certify", "[a,b] -> a^-1 b is an isomorphism");
        let cert = match certify_against(&built.quotient, q, &inv, &embedding) {
            Err(e) => return failed(stage, &e),
            Ok(c) => c,
        };
        // The unary operations of S are those of Q restricted.
        let mut star = Check::new("a* = a^-1 a in Q");
        let mut plus = Check::new("a+ = a a^-1 in Q");
        for a in s.elements() {
            let x = embedding[a];
            star.record(inv.domain_idempotent(q, x) == embedding[ad.star[a].unwrap()], || vec![a]);
            plus.record(inv.range_idempotent(q, x) == embedding[ad.plus[a].unwrap()], || vec![a]);
        }
        stage
            .detail("iso", format_list(&cert.iso))
            .with_data(&cert)
            .from_checks([&star, &plus])
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::BitSet;
    use crate::catalog;

    #[test]
    fn brandt_instance_passes_main() {
        let b2 = catalog::brandt(2).unwrap();
        let r = pipeline_theorem_main(&b2, &BitSet::from_indices(5, [0, 1, 2, 4]), PipelineOptions::default());
        assert!(r.passed, "{}", r.render_text(false));
        let names: Vec<&str> = r.stages.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "check-inverse",
                "analyze-iorder",
                "extract-relations",
                "m-axioms",
                "secprops",
                "build-quotient",
                "certify"
            ]
        );
    }

    #[test]
    fn unit_group_of_i2_stops_early() {
        let i2 = catalog::symmetric_inverse_monoid(2).unwrap();
        let r = pipeline_theorem_main(&i2, &BitSet::from_indices(7, [5, 6]), PipelineOptions::default());
        assert!(!r.passed);
        let f = r.first_failure().unwrap();
        assert_eq!(f.name, "analyze-iorder");
        assert_eq!(f.anchor, "not a left I-order");
        assert_eq!(f.witness, Some(vec![0]));
        assert_eq!(r.stages.len(), 2);
    }

    #[test]
    fn non_inverse_input_fails_first_stage() {
        let r = pipeline_theorem_main(&catalog::nil_monoid(), &BitSet::full(3), PipelineOptions::default());
        assert_eq!(r.stages.len(), 1);
        assert_eq!(r.first_failure().unwrap().witness, Some(vec![1]));
    }

    #[test]
    fn sweep_on_chain() {
        let y = catalog::chain_semilattice(2).unwrap();
        let r = pipeline_corollary_finite(&y, PipelineOptions::default());
        assert!(r.passed);
        assert_eq!(r.stages.last().unwrap().name, "theorem-main [0 1]");
    }

    #[test]
    fn ample_pipeline_on_brandt_instance() {
        let b2 = catalog::brandt(2).unwrap();
        let r = pipeline_ample(&b2, Some(&BitSet::from_indices(5, [0, 1, 2, 4])), PipelineOptions::default());
        assert!(r.passed, "{}", r.render_text(false));
        assert_eq!(r.stages.last().unwrap().name, "certify");
    }

    #[test]
    fn ample_pipeline_rejects_nil_monoid() {
        let r = pipeline_ample(&catalog::nil_monoid(), None, PipelineOptions::default());
        let f = r.first_failure().unwrap();
        assert_eq!(f.name, "adequate");
        assert_eq!(f.anchor, "left adequate");
        assert_eq!(f.details["error"], "semigroup is not ample");
    }

    #[test]
    fn reports_are_repeatable() {
        let b2 = catalog::brandt(2).unwrap();
        let s = BitSet::from_indices(5, [0, 1, 2, 4]);
        let a = pipeline_theorem_main(&b2, &s, PipelineOptions::default());
        let b = pipeline_theorem_main(&b2, &s, PipelineOptions::default());
        assert_eq!(a.render_text(false), b.render_text(false));
        assert_eq!(a.render_json(false), b.render_json(false));
    }
}
