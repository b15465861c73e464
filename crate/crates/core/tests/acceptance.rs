//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use iorder_lab::bicyclic::verify_bicyclic_example;
use iorder_lab::bitset::BitSet;
use iorder_lab::catalog;
use iorder_lab::inverse::{check_lemma_box, check_lemma_erdefn, check_lemma_invmeet, check_lemma_ore, inverse_data};
use iorder_lab::iorder::{extract_relations, verify_finite_straightness};
use iorder_lab::pipeline::{pipeline_ample, pipeline_corollary_finite, pipeline_theorem_main, PipelineOptions};
use iorder_lab::quotient::{build_quotient, certify_against, QuotientOptions};
use iorder_lab::{axioms::check_m_axioms, FiniteSemigroup};

const DEFAULT_MAX_ORDER: usize = 64;

struct Outcome {
    passed: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: detail.into(),
    }
}

fn max_order() -> usize {
    std::env::var("IORDER_LAB_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

fn universes() -> Vec<FiniteSemigroup> {
    let mut out: Vec<FiniteSemigroup> = (1..=4).map(|n| catalog::chain_semilattice(n).unwrap()).collect();
    out.push(catalog::brandt(2).unwrap());
    out.push(catalog::symmetric_inverse_monoid(2).unwrap());
    let i3 = catalog::symmetric_inverse_monoid(3).unwrap();
    if i3.order() <= max_order() {
        out.push(i3);
    }
    out
}

fn brandt_instance() -> BitSet {
    BitSet::from_indices(5, [0, 1, 2, 4])
}

/// Straight left I-orders of each universe, as `(universe, members)`.
fn left_iorders() -> Result<Vec<(FiniteSemigroup, Vec<usize>)>, String> {
    let mut out = Vec::new();
    for q in universes() {
        let inv = inverse_data(&q).map_err(|e| format!("{}: {e}", q.name()))?;
        let sweep = verify_finite_straightness(&q, &inv, 1 << 20).map_err(|e| format!("{}: {e}", q.name()))?;
        for members in sweep.left_iorders {
            out.push((q.clone(), members));
        }
    }
    Ok(out)
}

fn criterion_1() -> Outcome {
    let mut summary = Vec::new();
    let mut total = 0;
    for q in universes() {
        let start = Instant::now();
        let inv = match inverse_data(&q) {
            Ok(inv) => inv,
            Err(e) => return fail(format!("{}: {e}", q.name())),
        };
        // Disagreement between the direct witness search and the L-class
        // criterion surfaces as an error here.
        let sweep = match verify_finite_straightness(&q, &inv, 1 << 20) {
            Ok(s) => s,
            Err(e) => return fail(format!("{}: {e}", q.name())),
        };
        let elapsed = start.elapsed();
        let limit = if q.order() <= 7 { Duration::from_secs(60) } else { Duration::from_secs(600) };
        if !sweep.holds() || sweep.straight != sweep.left_iorders.len() {
            return fail(format!("{}: counterexample {:?}", q.name(), sweep.counterexample));
        }
        if elapsed > limit {
            return fail(format!("{}: took {elapsed:?}", q.name()));
        }
        total += sweep.left_iorders.len();
        summary.push(format!(
            "{} {}/{} straight of {} subsemigroups",
            q.name(),
            sweep.straight,
            sweep.left_iorders.len(),
            sweep.subsemigroups
        ));
    }
    pass(format!("{total} left I-orders, all straight; {}", summary.join("; ")))
}

fn criterion_2(instances: &[(FiniteSemigroup, Vec<usize>)]) -> Outcome {
    for (q, members) in instances {
        let inv = inverse_data(q).unwrap();
        let subset = BitSet::from_indices(q.order(), members.iter().copied());
        let ex = match extract_relations(q, &inv, &subset) {
            Ok(ex) => ex,
            Err(e) => return fail(format!("{} {members:?}: {e}", q.name())),
        };
        let axioms = check_m_axioms(&ex.sub, &ex.rprime, &ex.leql);
        if let Some(c) = axioms.first_failure() {
            return fail(format!("{} {members:?}: {} witness {:?}", q.name(), c.name, c.witness));
        }
        let built = build_quotient(&ex.sub, &ex.rprime, &ex.leql, QuotientOptions::default())
            .and_then(|p| certify_against(&p, q, &inv, &ex.embedding).map(|c| (p, c)));
        match built {
            Ok((p, _)) if p.order() == q.order() => {}
            Ok((p, _)) => return fail(format!("{} {members:?}: quotient has order {}", q.name(), p.order())),
            Err(e) => return fail(format!("{} {members:?}: {e}", q.name())),
        }
    }
    pass(format!("{} instances certified", instances.len()))
}

fn criterion_3(instances: &[(FiniteSemigroup, Vec<usize>)]) -> Outcome {
    let start = Instant::now();
    let mut checks = 0u64;
    for q in [catalog::brandt(2).unwrap(), catalog::symmetric_inverse_monoid(2).unwrap()] {
        let inv = inverse_data(&q).unwrap();
        for c in [check_lemma_invmeet(&q, &inv), check_lemma_box(&q, &inv), check_lemma_ore(&q, &inv)] {
            if !c.holds {
                return fail(format!("{}: {} witness {:?}", q.name(), c.name, c.witness));
            }
            checks += c.checked;
        }
        let options = QuotientOptions {
            verify_all_witnesses: true,
        };
        for (_, members) in instances.iter().filter(|(u, _)| u.name() == q.name()) {
            let subset = BitSet::from_indices(q.order(), members.iter().copied());
            match check_lemma_erdefn(&q, &inv, &subset) {
                Ok(c) if c.holds => checks += c.checked,
                Ok(c) => return fail(format!("{} {members:?}: {} witness {:?}", q.name(), c.name, c.witness)),
                Err(e) => return fail(format!("{} {members:?}: {e}", q.name())),
            }
            let ex = extract_relations(&q, &inv, &subset).unwrap();
            match build_quotient(&ex.sub, &ex.rprime, &ex.leql, options) {
                Ok(p) => checks += p.transcript.iter().map(|c| c.checked).sum::<u64>(),
                Err(e) => return fail(format!("{} {members:?}: {e}", q.name())),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!("{checks} instances checked in {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let report = verify_bicyclic_example(20);
    let elapsed = start.elapsed();
    if let Some(c) = report.checks().into_iter().find(|c| !c.holds) {
        return fail(format!("{} witness {:?}", c.name, c.witness));
    }
    if report.not_fountain_gould.witness != Some(vec![1, 0]) {
        return fail(format!("unexpected witness {:?}", report.not_fountain_gould.witness));
    }
    if elapsed > Duration::from_secs(5) {
        return fail(format!("took {elapsed:?}"));
    }
    pass(format!(
        "N = 20, (1,0) is not a#b with a in a subgroup, {} products outside the window",
        report.skipped
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let b2 = catalog::brandt(2).unwrap();
    let report = pipeline_ample(&b2, Some(&brandt_instance()), PipelineOptions::default());
    if let Some(f) = report.first_failure() {
        return fail(format!("{}: {} witness {:?}", f.name, f.anchor, f.witness));
    }
    let last = report.stages.last().unwrap();
    if last.name != "certify" {
        return fail("certification did not run");
    }
    if start.elapsed() > Duration::from_secs(5) {
        return fail(format!("took {:?}", start.elapsed()));
    }
    pass(format!("certified iso {} with * and + preserved", last.details["iso"]))
}

fn criterion_6() -> Outcome {
    let i2 = catalog::symmetric_inverse_monoid(2).unwrap();
    let units = pipeline_theorem_main(&i2, &BitSet::from_indices(7, [5, 6]), PipelineOptions::default());
    match units.first_failure() {
        Some(f) if f.anchor == "not a left I-order" && f.witness.is_some() => {}
        _ => return fail("unit group of I2 not rejected"),
    }

    let b2 = catalog::brandt(2).unwrap();
    let inv = inverse_data(&b2).unwrap();
    let ex = extract_relations(&b2, &inv, &brandt_instance()).unwrap();
    let pairs: Vec<(usize, usize)> = ex.rprime.pairs().collect();
    for &(x, y) in &pairs {
        let mut mutated = ex.rprime.clone();
        mutated.set(x, y, false);
        let report = check_m_axioms(&ex.sub, &mutated, &ex.leql);
        match report.first_failure() {
            Some(c) if c.witness.is_some() => {}
            _ => return fail(format!("deleting ({x},{y}) from R' went unnoticed")),
        }
    }

    let nil = pipeline_ample(&catalog::nil_monoid(), None, PipelineOptions::default());
    match nil.first_failure() {
        Some(f) if f.name == "adequate" && f.witness.is_some() => {}
        _ => return fail("nil monoid not rejected as non-adequate"),
    }
    pass(format!("unit group rejected; {} single-pair deletions detected; nil monoid not adequate", pairs.len()))
}

fn criterion_7() -> Outcome {
    let b2 = catalog::brandt(2).unwrap();
    let i2 = catalog::symmetric_inverse_monoid(2).unwrap();
    let options = PipelineOptions::default();
    let runs: Vec<Box<dyn Fn() -> (String, String)>> = vec![
        Box::new(|| {
            let r = pipeline_theorem_main(&b2, &brandt_instance(), options);
            (r.render_text(false), r.render_json(false))
        }),
        Box::new(|| {
            let r = pipeline_corollary_finite(&i2, options);
            (r.render_text(false), r.render_json(false))
        }),
        Box::new(|| {
            let r = pipeline_ample(&b2, Some(&brandt_instance()), options);
            (r.render_text(false), r.render_json(false))
        }),
        Box::new(|| {
            let r = verify_bicyclic_example(20);
            (format!("{r:?}"), serde_json::to_string(&r).unwrap())
        }),
    ];
    for (i, run) in runs.iter().enumerate() {
        if run() != run() {
            return fail(format!("run {i} differs between invocations"));
        }
    }
    pass(format!("{} pipelines byte-identical across two runs", runs.len()))
}

fn main() -> ExitCode {
    let instances = match left_iorders() {
        Ok(v) => v,
        Err(e) => {
            println!("setup failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let results = [
        criterion_1(),
        criterion_2(&instances),
        criterion_3(&instances),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
    ];
    let mut all = true;
    for (i, r) in results.iter().enumerate() {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} ({})", i + 1, r.detail);
        all &= r.passed;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
