//! Rebuilding an inverse semigroup `P = Σ/∼` from `(S, R′, ≤_l)` and checking
//! that `S` embeds in it as a straight left I-order.
//!
//! `Σ` is the set of pairs `(a, b)` with `a R′ b`, listed lexicographically.
//! Two pairs are identified when some admissible left factors carry them to
//! the same pair: `(xa, xb) = (yc, yd)` with `x R′ xa L′ a` and
//! `y R′ yc L′ c`.

use std::collections::HashMap;

use serde::Serialize;

use crate::axioms::{admissible_left_factors, build_lprime, check_m_axioms, LPrimeStructure};
use crate::check::Check;
use crate::error::AnalysisError;
use crate::green::green;
use crate::inverse::{inverse_data, InverseData};
use crate::relation::{BoolRelation, Partition};
use crate::semigroup::{FiniteSemigroup, SemigroupMap};

#[derive(Clone, Copy, Debug, Default)]
pub struct QuotientOptions {
    /// Check every admissible `(u, v)` in products and every admissible `x`
    /// in the embedding, not only the first one found.
    pub verify_all_witnesses: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Quotient {
    pub sigma: Vec<(usize, usize)>,
    /// Classes of `∼` over positions in `sigma`, ordered by least member.
    pub classes: Partition,
    /// Least pair of each class.
    pub reps: Vec<(usize, usize)>,
    #[serde(skip)]
    pub p: FiniteSemigroup,
    /// `phi[a]` is the class of `(x, xa)` for admissible `x`.
    pub phi: Vec<usize>,
    /// `(u, v)` used for the product of class `i` by class `j`.
    pub product_witnesses: Vec<Vec<(usize, usize)>>,
    /// Admissible `x` used for `phi[a]`.
    pub phi_witnesses: Vec<usize>,
    pub transcript: Vec<Check>,
}

impl Quotient {
    pub fn class_of_pair(&self, a: usize, b: usize) -> Option<usize> {
        self.sigma
            .binary_search(&(a, b))
            .ok()
            .map(|i| self.classes.class_of[i])
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }
}

/// `Σ` in lexicographic order. `R′` must be a left compatible equivalence.
pub fn build_sigma(s: &FiniteSemigroup, rprime: &BoolRelation) -> Result<Vec<(usize, usize)>, AnalysisError> {
    if !rprime.is_equivalence() {
        return Err(AnalysisError::RelationMalformed {
            reason: "R' is not an equivalence".into(),
        });
    }
    if let Some((c, a, b)) = rprime.left_compatibility_witness(s) {
        return Err(AnalysisError::RelationMalformed {
            reason: format!("R' is not left compatible: {a} R' {b} but not {c}*{a} R' {c}*{b}"),
        });
    }
    Ok(rprime.pairs().collect())
}

struct Ctx<'a> {
    s: &'a FiniteSemigroup,
    rprime: &'a BoolRelation,
    lp: LPrimeStructure,
    adm: Vec<Vec<usize>>,
}

impl Ctx<'_> {
    /// Every admissible `(u, v)` for the product `(a, b)(c, d)`, in
    /// lexicographic order.
    fn product_pairs(&self, b: usize, c: usize) -> Vec<(usize, usize)> {
        let s = self.s;
        let Some(meet) = self.lp.meet(b, c) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for u in s.elements() {
            let ub = s.mul(u, b);
            if self.lp.class(ub) != meet {
                continue;
            }
            for v in self.rprime.row(u).iter() {
                if s.mul(v, c) == ub && self.rprime.get(v, ub) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

fn sim_relation(ctx: &Ctx<'_>, sigma: &[(usize, usize)]) -> BoolRelation {
    let s = ctx.s;
    let mut by_key: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, &(a, b)) in sigma.iter().enumerate() {
        for &x in &ctx.adm[a] {
            let members = by_key.entry((s.mul(x, a), s.mul(x, b))).or_default();
            if members.last() != Some(&i) {
                members.push(i);
            }
        }
    }
    let mut sim = BoolRelation::empty(sigma.len());
    for members in by_key.values() {
        for &i in members {
            for &j in members {
                sim.set(i, j, true);
            }
        }
    }
    sim
}

fn flatten(pairs: &[(usize, usize)]) -> Vec<usize> {
    pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
}

fn fail_on(check: &Check) -> Result<(), AnalysisError> {
    if check.holds {
        Ok(())
    } else {
        Err(AnalysisError::Verification {
            check: check.name.clone(),
            witness: check.witness.clone().unwrap_or_default(),
        })
    }
}

const SIM_EQUIVALENCE: &str = "sim is an equivalence";
const PRODUCT_DEFINED: &str = "product exists";
const PRODUCT_WELL_DEFINED: &str = "product well defined";
const ASSOCIATIVITY: &str = "associativity";
const INVERSE: &str = "inverse semigroup";
const IDEMPOTENTS: &str = "idempotents are the classes [a,a]";
const INVERSE_SWAPS: &str = "[a,b]^-1 = [b,a]";
const DIAGONAL: &str = "[a,a] = [b,b] iff a L' b";
const DIAGONAL_PRODUCT: &str = "[a,b][b,a] = [a,a]";
const EMBEDDING_DEFINED: &str = "embedding well defined";
const EMBEDDING_INJECTIVE: &str = "embedding injective";
const EMBEDDING_MULTIPLICATIVE: &str = "embedding multiplicative";
const R_RESTRICTION: &str = "R' is R of P restricted";
const L_RESTRICTION: &str = "<=_l is <=_L of P restricted";
const STRAIGHT: &str = "[a,b] = phi(a)^-1 phi(b) with phi(a) R phi(b)";

/// Builds `P = Σ/∼` and verifies that `φ` embeds `S` as a straight left
/// I-order with `R′` and `≤_l` the restrictions of `R^P` and `≤_{L^P}`.
/// The first failed check is returned as `AnalysisError::Verification`.
pub fn build_quotient(
    s: &FiniteSemigroup,
    rprime: &BoolRelation,
    leql: &BoolRelation,
    options: QuotientOptions,
) -> Result<Quotient, AnalysisError> {
    if !check_m_axioms(s, rprime, leql).passes() {
        return Err(AnalysisError::MAxiomsNotEstablished);
    }
    let sigma = build_sigma(s, rprime)?;
    let lp = build_lprime(leql)?;
    let adm = admissible_left_factors(s, rprime, &lp);
    let ctx = Ctx { s, rprime, lp, adm };
    let index = |a: usize, b: usize| sigma.binary_search(&(a, b)).ok();
    let mut transcript = Vec::new();

    let sim = sim_relation(&ctx, &sigma);
    let m = sigma.len() as u64;
    let sim_witness = if let Some(i) = sim.reflexivity_witness() {
        Some(flatten(&[sigma[i]]))
    } else if let Some((i, j)) = sim.symmetry_witness() {
        Some(flatten(&[sigma[i], sigma[j]]))
    } else {
        sim.transitivity_witness().map(|(i, j, k)| flatten(&[sigma[i], sigma[j], sigma[k]]))
    };
    transcript.push(Check::from_witness(SIM_EQUIVALENCE, m * m * m, sim_witness));
    fail_on(transcript.last().unwrap())?;
    let classes = sim.partition();
    let reps: Vec<(usize, usize)> = classes.classes.iter().map(|c| sigma[c[0]]).collect();
    let k = reps.len();

    // Product of pairs, with lexicographically least (u, v).
    let mut defined = Check::new(PRODUCT_DEFINED);
    let mut pair_product = vec![vec![None; sigma.len()]; sigma.len()];
    let mut uv_cache: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (i, &(a, b)) in sigma.iter().enumerate() {
        for (j, &(c, d)) in sigma.iter().enumerate() {
            let uvs = uv_cache.entry((b, c)).or_insert_with(|| ctx.product_pairs(b, c));
            let class = uvs.first().and_then(|&(u, v)| index(s.mul(u, a), s.mul(v, d)));
            defined.record(class.is_some(), || vec![a, b, c, d]);
            pair_product[i][j] = class.map(|x| classes.class_of[x]);
        }
    }
    transcript.push(defined);
    fail_on(transcript.last().unwrap())?;

    let mut product_witnesses = vec![vec![(0, 0); k]; k];
    let mut rows = vec![vec![0; k]; k];
    for (ci, &(a, b)) in reps.iter().enumerate() {
        for (cj, &(c, d)) in reps.iter().enumerate() {
            product_witnesses[ci][cj] = uv_cache[&(b, c)][0];
            rows[ci][cj] = pair_product[index(a, b).unwrap()][index(c, d).unwrap()].unwrap();
        }
    }
    let mut well_defined = Check::new(PRODUCT_WELL_DEFINED);
    for (i, &(a, b)) in sigma.iter().enumerate() {
        for (j, &(c, d)) in sigma.iter().enumerate() {
            let expected = rows[classes.class_of[i]][classes.class_of[j]];
            if options.verify_all_witnesses {
                for &(u, v) in &uv_cache[&(b, c)] {
                    let got = index(s.mul(u, a), s.mul(v, d)).map(|x| classes.class_of[x]);
                    well_defined.record(got == Some(expected), || vec![a, b, c, d, u, v]);
                }
            } else {
                let (u, v) = uv_cache[&(b, c)][0];
                well_defined.record(pair_product[i][j] == Some(expected), || vec![a, b, c, d, u, v]);
            }
        }
    }
    transcript.push(well_defined);
    fail_on(transcript.last().unwrap())?;

    let p = match FiniteSemigroup::build(rows, format!("P({})", s.name())) {
        Ok(p) => p,
        Err(crate::error::SemigroupError::NonAssociative { x, y, z }) => {
            return Err(AnalysisError::Verification {
                check: ASSOCIATIVITY.into(),
                witness: vec![x, y, z],
            })
        }
        Err(e) => return Err(e.into()),
    };
    transcript.push(Check::from_witness(ASSOCIATIVITY, (k * k * k) as u64, None));
    let pinv = match inverse_data(&p) {
        Ok(d) => d,
        Err(e) => {
            let witness = match e {
                crate::error::InverseError::NotRegular { a } => vec![a],
                crate::error::InverseError::IdempotentsDontCommute { e, f } => vec![e, f],
                crate::error::InverseError::MultipleInverses { a, count } => vec![a, count],
            };
            return Err(AnalysisError::Verification {
                check: INVERSE.into(),
                witness,
            });
        }
    };
    transcript.push(Check::from_witness(INVERSE, k as u64, None));
    let cls = |a: usize, b: usize| index(a, b).map(|i| classes.class_of[i]);

    let diagonal: Vec<usize> = s.elements().map(|a| cls(a, a).unwrap()).collect();
    let mut idem = Check::new(IDEMPOTENTS);
    for (c, &rep) in reps.iter().enumerate() {
        let is_diag = diagonal.contains(&c);
        idem.record(p.is_idempotent(c) == is_diag, || flatten(&[rep]));
    }
    transcript.push(idem);

    let mut swaps = Check::new(INVERSE_SWAPS);
    let mut diag_product = Check::new(DIAGONAL_PRODUCT);
    for &(a, b) in &sigma {
        let ab = cls(a, b).unwrap();
        swaps.record(cls(b, a) == Some(pinv.inverse(ab)), || vec![a, b]);
        diag_product.record(Some(p.mul(ab, cls(b, a).unwrap())) == cls(a, a), || vec![a, b]);
    }
    transcript.push(swaps);

    let mut diag = Check::new(DIAGONAL);
    for a in s.elements() {
        for b in s.elements() {
            diag.record((diagonal[a] == diagonal[b]) == ctx.lp.related(a, b), || vec![a, b]);
        }
    }
    transcript.push(diag);
    transcript.push(diag_product);

    let (phi, phi_witnesses, phi_check) = embedding(&ctx, &cls, options);
    transcript.push(phi_check);
    let mut injective = Check::new(EMBEDDING_INJECTIVE);
    let mut multiplicative = Check::new(EMBEDDING_MULTIPLICATIVE);
    for a in s.elements() {
        for b in s.elements() {
            injective.record(a == b || phi[a] != phi[b], || vec![a, b]);
            multiplicative.record(p.mul(phi[a], phi[b]) == phi[s.mul(a, b)], || vec![a, b]);
        }
    }
    transcript.push(injective);
    transcript.push(multiplicative);

    let pg = green(&p);
    let mut r_check = Check::new(R_RESTRICTION);
    let mut l_check = Check::new(L_RESTRICTION);
    for a in s.elements() {
        for b in s.elements() {
            r_check.record(rprime.get(a, b) == pg.r.same(phi[a], phi[b]), || vec![a, b]);
            l_check.record(leql.get(a, b) == pg.leq_l.get(phi[a], phi[b]), || vec![a, b]);
        }
    }
    transcript.push(r_check);
    transcript.push(l_check);

    let mut straight = Check::new(STRAIGHT);
    for &(a, b) in &sigma {
        let via_phi = p.mul(pinv.inverse(phi[a]), phi[b]);
        straight.record(cls(a, b) == Some(via_phi) && pg.r.same(phi[a], phi[b]), || vec![a, b]);
    }
    transcript.push(straight);

    for c in &transcript {
        fail_on(c)?;
    }

    Ok(Quotient {
        sigma,
        classes,
        reps,
        p,
        phi,
        product_witnesses,
        phi_witnesses,
        transcript,
    })
}

fn embedding(
    ctx: &Ctx<'_>,
    cls: &impl Fn(usize, usize) -> Option<usize>,
    options: QuotientOptions,
) -> (Vec<usize>, Vec<usize>, Check) {
    let s = ctx.s;
    let mut check = Check::new(EMBEDDING_DEFINED);
    let mut phi = Vec::with_capacity(s.order());
    let mut witnesses = Vec::with_capacity(s.order());
    for a in s.elements() {
        // Admissible factors exist by the axioms.
        let x = ctx.adm[a][0];
        let class = cls(x, s.mul(x, a)).expect("x R' xa");
        phi.push(class);
        witnesses.push(x);
        if options.verify_all_witnesses {
            for &y in &ctx.adm[a][1..] {
                check.record(cls(y, s.mul(y, a)) == Some(class), || vec![a, x, y]);
            }
        } else {
            check.record(true, Vec::new);
        }
    }
    (phi, witnesses, check)
}

#[derive(Clone, Debug, Serialize)]
pub struct Certification {
    /// `iso[c]` is the element of `Q` for class `c`.
    pub iso: Vec<usize>,
    pub checks: Vec<Check>,
}

/// Checks that `[a, b] ↦ a⁻¹b` (computed in `Q` through `embedding`) is an
/// isomorphism `P → Q` extending `S ⊆ Q`.
pub fn certify_against(
    quotient: &Quotient,
    q: &FiniteSemigroup,
    inv: &InverseData,
    embedding: &[usize],
) -> Result<Certification, AnalysisError> {
    let image = |a: usize, b: usize| q.mul(inv.inverse(embedding[a]), embedding[b]);
    let k = quotient.order();
    let mut well_defined = Check::new("well defined");
    let mut iso = vec![None; k];
    for (i, &(a, b)) in quotient.sigma.iter().enumerate() {
        let c = quotient.classes.class_of[i];
        let x = image(a, b);
        let first = *iso[c].get_or_insert(x);
        well_defined.record(first == x, || vec![a, b]);
    }
    let iso: Vec<usize> = iso.into_iter().map(|x| x.expect("classes are nonempty")).collect();
    let stage = |c: Check, name: &'static str| -> Result<Check, AnalysisError> {
        if c.holds {
            Ok(c)
        } else {
            Err(AnalysisError::CertificationFailed {
                stage: name,
                witness: c.witness.unwrap_or_default(),
            })
        }
    };
    let well_defined = stage(well_defined, "well defined")?;

    let mut hit = vec![None; q.order()];
    let mut bijective = Check::new("bijective");
    for (c, &x) in iso.iter().enumerate() {
        let prev = *hit[x].get_or_insert(c);
        bijective.record(prev == c, || vec![prev, c]);
    }
    for (x, h) in hit.iter().enumerate() {
        bijective.record(h.is_some(), || vec![x]);
    }
    let bijective = stage(bijective, "bijective")?;

    let map = SemigroupMap::new(&quotient.p, q, &iso);
    let hom = Check::from_witness(
        "homomorphism",
        (k * k) as u64,
        map.first_non_multiplicative_pair().map(|(x, y)| vec![x, y]),
    );
    let hom = stage(hom, "homomorphism")?;

    let mut extends = Check::new("extends the inclusion");
    for (a, &c) in quotient.phi.iter().enumerate() {
        extends.record(iso[c] == embedding[a], || vec![a]);
    }
    let extends = stage(extends, "extends the inclusion")?;
    Ok(Certification {
        iso,
        checks: vec![well_defined, bijective, hom, extends],
    })
}
