use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use iorder_lab::ample::{adequate_data, check_a_axioms, check_star_condition};
use iorder_lab::axioms::{check_m_axioms, check_secprops};
use iorder_lab::bicyclic::verify_bicyclic_example;
use iorder_lab::catalog;
use iorder_lab::check::Check;
use iorder_lab::green::{green, lstar_preorder, rstar};
use iorder_lab::inverse::inverse_data;
use iorder_lab::io::{egg_box_dot, parse_cay, parse_relation, parse_subset, write_cay, write_relation};
use iorder_lab::iorder::{analyze_iorder, extract_relations, verify_finite_straightness, whole};
use iorder_lab::pipeline::{pipeline_ample, pipeline_corollary_finite, pipeline_theorem_main, PipelineOptions};
use iorder_lab::quotient::{build_quotient, certify_against, QuotientOptions};
use iorder_lab::relation::BoolRelation;
use iorder_lab::report::{InputDigest, PipelineReport};
use iorder_lab::{ElementSubset, FiniteSemigroup};

const MAX_ORDER_VAR: &str = "IORDER_LAB_MAX_ORDER";
const DEFAULT_MAX_ORDER: usize = 64;

#[derive(Parser)]
#[command(name = "iorder-lab", version, about = "Left I-orders in finite inverse semigroups")]
struct Cli {
    /// Structured JSON output instead of key/value lines.
    #[arg(long, global = true)]
    json: bool,
    /// Include stage timings in pipeline reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a table is an inverse semigroup.
    CheckInverse { cay: PathBuf },
    /// Green's relations and their starred variants.
    Green {
        cay: PathBuf,
        #[arg(long, value_enum)]
        rel: Option<Rel>,
        /// Print the chosen relation as a .rel matrix.
        #[arg(long, requires = "rel")]
        matrix: bool,
        /// Egg-box diagram of the D-classes in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Left I-order and straightness analysis of one subset, or of all
    /// subsemigroups.
    Iorders {
        cay: PathBuf,
        #[arg(long, conflicts_with = "all")]
        sub: Option<PathBuf>,
        #[arg(long)]
        all: bool,
        /// With --sub: write PREFIX.cay, PREFIX.rprime.rel, PREFIX.leql.rel
        /// for the subsemigroup and its extracted relations.
        #[arg(long, requires = "sub")]
        write_relations: Option<PathBuf>,
    },
    /// Check the relation flags, M1-M6 and their consequences.
    Axioms {
        cay: PathBuf,
        #[arg(long)]
        rprime: PathBuf,
        #[arg(long)]
        leql: PathBuf,
    },
    /// Build the quotient from the relations extracted for a subset.
    Quotient {
        cay: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
        #[arg(long)]
        verify_all_witnesses: bool,
        /// Check the quotient against the input table.
        #[arg(long)]
        certify: bool,
    },
    /// Adequacy, ampleness, A1-A3 with R' = R*, and the star condition.
    Ample {
        cay: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
    },
    /// Emit a built-in table as a .cay file.
    Catalog {
        #[arg(value_enum)]
        family: Family,
        n: usize,
    },
    /// Windowed check of the bicyclic example.
    Bicyclic {
        #[arg(long, default_value_t = 20)]
        bound: u64,
    },
    /// Full run of the main theorem on a subset.
    VerifyMain {
        cay: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
        #[arg(long)]
        verify_all_witnesses: bool,
    },
    /// Every left I-order of the table is straight and round-trips.
    VerifyFiniteStraight {
        cay: PathBuf,
        #[arg(long, default_value_t = 1 << 20)]
        max_subsemigroups: usize,
    },
    /// Full run of the ample case.
    VerifyAmple {
        cay: PathBuf,
        #[arg(long)]
        sub: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rel {
    R,
    L,
    H,
    D,
    J,
    Rstar,
    LstarLeq,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    In,
    Brandt,
    Chain,
    Cyclic,
}

/// Outcome of a command: rendered text, JSON, and whether the property
/// held.
struct Output {
    text: String,
    json: Value,
    holds: bool,
}

struct Inputs {
    digests: Vec<InputDigest>,
    max_order: usize,
}

impl Inputs {
    fn new() -> Result<Self> {
        let max_order = match std::env::var(MAX_ORDER_VAR) {
            Ok(v) => v.parse().with_context(|| format!("{MAX_ORDER_VAR}={v:?} is not a number"))?,
            Err(_) => DEFAULT_MAX_ORDER,
        };
        Ok(Inputs {
            digests: Vec::new(),
            max_order,
        })
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.digests.push(InputDigest::of(path.display().to_string(), &bytes));
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn guard(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            bail!("order {order} exceeds {MAX_ORDER_VAR}={}", self.max_order);
        }
        Ok(())
    }

    fn table(&mut self, path: &Path) -> Result<FiniteSemigroup> {
        let text = self.read(path)?;
        let s = parse_cay(&text).with_context(|| path.display().to_string())?;
        self.guard(s.order())?;
        Ok(s)
    }

    fn subset(&mut self, path: Option<&Path>, q: &FiniteSemigroup) -> Result<ElementSubset> {
        match path {
            None => Ok(whole(q)),
            Some(p) => {
                let text = self.read(p)?;
                parse_subset(&text, q.order()).with_context(|| p.display().to_string())
            }
        }
    }

    fn relation(&mut self, path: &Path, n: usize) -> Result<BoolRelation> {
        let text = self.read(path)?;
        let (_, rel) = parse_relation(&text).with_context(|| path.display().to_string())?;
        if rel.size() != n {
            bail!("{}: relation has size {}, table has order {n}", path.display(), rel.size());
        }
        Ok(rel)
    }
}

fn list(xs: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", items.join(" "))
}

fn write_check(out: &mut String, c: &Check) {
    let verdict = match (&c.skipped, c.holds) {
        (Some(_), _) => "skipped",
        (None, true) => "pass",
        (None, false) => "FAIL",
    };
    writeln!(out, "{}: {verdict} (checked {})", c.name, c.checked).unwrap();
    if let Some(why) = &c.skipped {
        writeln!(out, "  reason: {why}").unwrap();
    }
    if let Some(w) = &c.witness {
        writeln!(out, "  witness:").unwrap();
        for x in w {
            writeln!(out, "    - {x}").unwrap();
        }
    }
}

fn report_output(report: PipelineReport, inputs: Inputs, timing: bool) -> Output {
    let report = report.with_inputs(inputs.digests);
    Output {
        text: report.render_text(timing),
        json: serde_json::from_str(&report.render_json(timing)).expect("report is valid JSON"),
        holds: report.passed,
    }
}

fn check_inverse(q: &FiniteSemigroup) -> Output {
    match inverse_data(q) {
        Ok(inv) => Output {
            text: format!(
                "inverse: true\norder: {}\nidempotents: {}\ninverses: {}\n",
                q.order(),
                list(inv.idempotent_list.iter().copied()),
                list(inv.inv.iter().copied())
            ),
            json: json!({"inverse": true, "order": q.order(), "idempotents": inv.idempotent_list, "inverses": inv.inv}),
            holds: true,
        },
        Err(e) => Output {
            text: format!("inverse: false\nreason: {e}\n"),
            json: json!({"inverse": false, "reason": e.to_string()}),
            holds: false,
        },
    }
}

fn green_command(q: &FiniteSemigroup, rel: Option<Rel>, matrix: bool, dot: bool) -> Output {
    let g = green(q);
    if dot {
        let text = egg_box_dot(q, &g);
        return Output {
            json: json!({"dot": text}),
            text,
            holds: true,
        };
    }
    let Some(rel) = rel else {
        let mut text = format!("order: {}\n", q.order());
        let mut js = serde_json::Map::new();
        for (name, p) in [("R", &g.r), ("L", &g.l), ("H", &g.h), ("D", &g.d), ("J", &g.j)] {
            writeln!(text, "{name}_classes: {}", p.len()).unwrap();
            js.insert(name.into(), json!(p.classes));
        }
        return Output {
            text,
            json: Value::Object(js),
            holds: true,
        };
    };
    let (name, relation) = match rel {
        Rel::R => ("R", g.r.to_relation()),
        Rel::L => ("L", g.l.to_relation()),
        Rel::H => ("H", g.h.to_relation()),
        Rel::D => ("D", g.d.to_relation()),
        Rel::J => ("J", g.j.to_relation()),
        Rel::Rstar => ("Rstar", rstar(q)),
        Rel::LstarLeq => ("LstarLeq", lstar_preorder(q)),
    };
    if matrix {
        let text = write_relation(name, &relation);
        return Output {
            json: json!({"relation": name, "matrix": text}),
            text,
            holds: true,
        };
    }
    // For the preorder, the classes are those of its symmetric part.
    let classes = relation.symmetric_part().partition();
    let mut text = format!("relation: {name}\nclasses: {}\n", classes.len());
    for c in &classes.classes {
        writeln!(text, "  {}", list(c.iter().copied())).unwrap();
    }
    Output {
        text,
        json: json!({"relation": name, "classes": classes.classes}),
        holds: true,
    }
}

fn iorders_command(q: &FiniteSemigroup, sub: Option<ElementSubset>, all: bool, prefix: Option<&Path>) -> Result<Output> {
    let inv = inverse_data(q).context("table is not an inverse semigroup")?;
    if all || sub.is_none() {
        let sweep = verify_finite_straightness(q, &inv, 1 << 20)?;
        let mut text = format!(
            "subsemigroups: {}\nleft_iorders: {}\nstraight: {}\nfountain_gould: {}\ncompletely_semisimple: {}\n",
            sweep.subsemigroups,
            sweep.left_iorders.len(),
            sweep.straight,
            sweep.fountain_gould,
            sweep.completely_semisimple
        );
        for members in &sweep.left_iorders {
            writeln!(text, "  {}", list(members.iter().copied())).unwrap();
        }
        if let Some(c) = &sweep.counterexample {
            writeln!(text, "counterexample: {}", list(c.iter().copied())).unwrap();
        }
        return Ok(Output {
            json: serde_json::to_value(&sweep)?,
            holds: sweep.holds(),
            text,
        });
    }
    let sub = sub.expect("checked above");
    let r = analyze_iorder(q, &inv, &sub)?;
    let mut text = format!(
        "subset: {}\nleft_iorder: {}\nstraight: {}\nmeets_every_l_class: {}\nfountain_gould: {}\n",
        list(sub.iter()),
        r.is_left_iorder,
        r.is_straight,
        r.meets_every_l_class(),
        r.fountain_gould.is_fountain_gould
    );
    if let Some(x) = r.first_undecomposed() {
        writeln!(text, "undecomposed: {x}").unwrap();
    }
    for (x, w) in r.straight_witnesses.iter().enumerate() {
        if let Some((a, b)) = w {
            writeln!(text, "  {x} = {a}^-1 {b}").unwrap();
        }
    }
    if let Some(prefix) = prefix {
        let ex = extract_relations(q, &inv, &sub)?;
        let p = prefix.display();
        fs::write(format!("{p}.cay"), write_cay(&ex.sub))?;
        fs::write(format!("{p}.rprime.rel"), write_relation("rprime", &ex.rprime))?;
        fs::write(format!("{p}.leql.rel"), write_relation("leql", &ex.leql))?;
        writeln!(text, "embedding: {}", list(ex.embedding.iter().copied())).unwrap();
    }
    Ok(Output {
        json: serde_json::to_value(&r)?,
        holds: r.is_left_iorder && r.is_straight,
        text,
    })
}

fn axioms_command(s: &FiniteSemigroup, rprime: &BoolRelation, leql: &BoolRelation) -> Output {
    let report = check_m_axioms(s, rprime, leql);
    let mut text = String::new();
    for c in report.flags().into_iter().chain(report.axioms()) {
        write_check(&mut text, c);
    }
    write_check(&mut text, &report.leql_right_compatible);
    let secprops = check_secprops(s, rprime, leql).ok();
    if let Some(sec) = &secprops {
        for c in sec.checks() {
            write_check(&mut text, c);
        }
        writeln!(text, "internal_contradiction: {}", sec.internal_contradiction).unwrap();
    }
    writeln!(text, "result: {}", if report.passes() { "pass" } else { "FAIL" }).unwrap();
    Output {
        json: json!({"axioms": report, "secprops": secprops}),
        holds: report.passes(),
        text,
    }
}

fn quotient_command(q: &FiniteSemigroup, sub: &ElementSubset, verify_all: bool, certify: bool) -> Result<Output> {
    let inv = inverse_data(q).context("table is not an inverse semigroup")?;
    let ex = extract_relations(q, &inv, sub)?;
    let options = QuotientOptions {
        verify_all_witnesses: verify_all,
    };
    let p = match build_quotient(&ex.sub, &ex.rprime, &ex.leql, options) {
        Ok(p) => p,
        Err(e) => {
            return Ok(Output {
                text: format!("quotient: failed\nreason: {e}\n"),
                json: json!({"error": e.to_string()}),
                holds: false,
            })
        }
    };
    let mut text = format!("sigma: {}\nclasses: {}\n", p.sigma.len(), p.order());
    for (c, (a, b)) in p.reps.iter().enumerate() {
        writeln!(text, "  {c}: [{a},{b}]").unwrap();
    }
    writeln!(text, "phi: {}", list(p.phi.iter().copied())).unwrap();
    writeln!(text, "phi_witnesses: {}", list(p.phi_witnesses.iter().copied())).unwrap();
    for (i, row) in p.product_witnesses.iter().enumerate() {
        for (j, (u, v)) in row.iter().enumerate() {
            writeln!(text, "  product {i} {j}: u={u} v={v}").unwrap();
        }
    }
    for c in &p.transcript {
        write_check(&mut text, c);
    }
    let mut js = json!({"quotient": p, "table": p.p.rows()});
    let mut holds = true;
    if certify {
        match certify_against(&p, q, &inv, &ex.embedding) {
            Ok(c) => {
                writeln!(text, "certified: true\niso: {}", list(c.iso.iter().copied())).unwrap();
                js["certification"] = serde_json::to_value(&c)?;
            }
            Err(e) => {
                writeln!(text, "certified: false\nreason: {e}").unwrap();
                js["certification"] = json!({"error": e.to_string()});
                holds = false;
            }
        }
    }
    text.push_str(&write_cay(&p.p));
    Ok(Output { text, json: js, holds })
}

fn ample_command(q: &FiniteSemigroup, sub: Option<&ElementSubset>) -> Result<Output> {
    let s = match sub {
        Some(sub) => q.restrict(sub)?.0,
        None => q.clone(),
    };
    let ad = adequate_data(&s);
    let opt = |xs: &[Option<usize>]| -> String {
        let items: Vec<String> = xs.iter().map(|x| x.map_or("-".into(), |x| x.to_string())).collect();
        format!("[{}]", items.join(" "))
    };
    let mut text = format!("order: {}\nstar: {}\nplus: {}\n", s.order(), opt(&ad.star), opt(&ad.plus));
    for c in [
        &ad.idempotents_commute,
        &ad.left_adequate,
        &ad.right_adequate,
        &ad.left_ample,
        &ad.right_ample,
    ] {
        write_check(&mut text, c);
    }
    let mut js = json!({"adequate": ad});
    let mut holds = ad.is_ample();
    if ad.is_right_ample() {
        let a = check_a_axioms(&s, &rstar(&s), &ad)?;
        for c in a.checks() {
            write_check(&mut text, c);
        }
        holds &= a.passes();
        js["a_axioms"] = serde_json::to_value(&a)?;
    }
    if ad.is_ample() {
        let star = check_star_condition(&s, &ad)?;
        write_check(&mut text, &star.check);
        holds &= star.check.holds;
        js["star_condition"] = serde_json::to_value(&star)?;
    }
    writeln!(text, "result: {}", if holds { "pass" } else { "FAIL" }).unwrap();
    Ok(Output { text, json: js, holds })
}

fn catalog_command(family: Family, n: usize, inputs: &Inputs) -> Result<Output> {
    let s = match family {
        Family::In => catalog::symmetric_inverse_monoid(n)?,
        Family::Brandt => catalog::brandt(n)?,
        Family::Chain => catalog::chain_semilattice(n)?,
        Family::Cyclic => catalog::cyclic_group(n)?,
    };
    inputs.guard(s.order())?;
    Ok(Output {
        text: write_cay(&s),
        json: json!({"name": s.name(), "order": s.order(), "table": s.rows()}),
        holds: true,
    })
}

fn bicyclic_command(bound: u64) -> Result<Output> {
    if bound == 0 {
        bail!("bound must be at least 1");
    }
    let r = verify_bicyclic_example(bound);
    let mut text = format!("bound: {bound}\nskipped: {}\n", r.skipped);
    for c in r.checks() {
        write_check(&mut text, c);
    }
    writeln!(text, "result: {}", if r.passes() { "pass" } else { "FAIL" }).unwrap();
    Ok(Output {
        json: serde_json::to_value(&r)?,
        holds: r.passes(),
        text,
    })
}

fn run(cli: Cli) -> Result<Output> {
    let mut inputs = Inputs::new()?;
    let out = match cli.command {
        Command::CheckInverse { cay } => check_inverse(&inputs.table(&cay)?),
        Command::Green { cay, rel, matrix, dot } => green_command(&inputs.table(&cay)?, rel, matrix, dot),
        Command::Iorders {
            cay,
            sub,
            all,
            write_relations,
        } => {
            let q = inputs.table(&cay)?;
            let subset = match &sub {
                Some(p) => Some(inputs.subset(Some(p), &q)?),
                None => None,
            };
            iorders_command(&q, subset, all, write_relations.as_deref())?
        }
        Command::Axioms { cay, rprime, leql } => {
            let s = inputs.table(&cay)?;
            let rprime = inputs.relation(&rprime, s.order())?;
            let leql = inputs.relation(&leql, s.order())?;
            axioms_command(&s, &rprime, &leql)
        }
        Command::Quotient {
            cay,
            sub,
            verify_all_witnesses,
            certify,
        } => {
            let q = inputs.table(&cay)?;
            let subset = inputs.subset(sub.as_deref(), &q)?;
            quotient_command(&q, &subset, verify_all_witnesses, certify)?
        }
        Command::Ample { cay, sub } => {
            let q = inputs.table(&cay)?;
            let subset = match &sub {
                Some(p) => Some(inputs.subset(Some(p), &q)?),
                None => None,
            };
            ample_command(&q, subset.as_ref())?
        }
        Command::Catalog { family, n } => catalog_command(family, n, &inputs)?,
        Command::Bicyclic { bound } => bicyclic_command(bound)?,
        Command::VerifyMain {
            cay,
            sub,
            verify_all_witnesses,
        } => {
            let q = inputs.table(&cay)?;
            let subset = inputs.subset(sub.as_deref(), &q)?;
            let options = PipelineOptions {
                verify_all_witnesses,
                ..PipelineOptions::default()
            };
            report_output(pipeline_theorem_main(&q, &subset, options), inputs, cli.timing)
        }
        Command::VerifyFiniteStraight { cay, max_subsemigroups } => {
            let q = inputs.table(&cay)?;
            let options = PipelineOptions {
                max_subsemigroups,
                ..PipelineOptions::default()
            };
            report_output(pipeline_corollary_finite(&q, options), inputs, cli.timing)
        }
        Command::VerifyAmple { cay, sub } => {
            let q = inputs.table(&cay)?;
            let subset = match &sub {
                Some(p) => Some(inputs.subset(Some(p), &q)?),
                None => None,
            };
            report_output(
                pipeline_ample(&q, subset.as_ref(), PipelineOptions::default()),
                inputs,
                cli.timing,
            )
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            if out.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
