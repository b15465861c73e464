//! The hypotheses characterising straight left I-orders: `R′` a left
//! compatible equivalence, `≤_l` a preorder whose `L′`-classes form a meet
//! semilattice, and conditions M1–M6. Every condition is decided by an
//! exhaustive scan that records the lexicographically first failing tuple.

use serde::Serialize;

use crate::check::Check;
use crate::error::AnalysisError;
use crate::green::rstar;
use crate::relation::{BoolRelation, Partition};
use crate::semigroup::FiniteSemigroup;

/// `L′ = ≤_l ∩ ≤_l⁻¹` and the meets of its classes.
#[derive(Clone, Debug)]
pub struct LPrimeStructure {
    pub classes: Partition,
    /// `class_leq.get(i, j)` iff class `i` lies below class `j`.
    pub class_leq: BoolRelation,
    /// Greatest common lower bound of two classes, where one exists.
    pub meet_table: Vec<Vec<Option<usize>>>,
}

impl LPrimeStructure {
    #[inline]
    pub fn class(&self, a: usize) -> usize {
        self.classes.class_of[a]
    }

    /// `L′_a ∧ L′_b`, as a class index.
    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet_table[self.class(a)][self.class(b)]
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class(a) == self.class(b)
    }

    /// First pair of classes without a meet.
    pub fn missing_meet(&self) -> Option<(usize, usize)> {
        let k = self.classes.len();
        (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .find(|&(i, j)| self.meet_table[i][j].is_none())
    }

    pub fn is_semilattice(&self) -> bool {
        self.missing_meet().is_none()
    }
}

pub fn build_lprime(leql: &BoolRelation) -> Result<LPrimeStructure, AnalysisError> {
    if let Some(a) = leql.reflexivity_witness() {
        return Err(AnalysisError::NotPreorder { witness: vec![a] });
    }
    if let Some((a, b, c)) = leql.transitivity_witness() {
        return Err(AnalysisError::NotPreorder { witness: vec![a, b, c] });
    }
    let classes = leql.symmetric_part().partition();
    let reps: Vec<usize> = classes.classes.iter().map(|c| c[0]).collect();
    let k = reps.len();
    let class_leq = BoolRelation::from_fn(k, |i, j| leql.get(reps[i], reps[j]));
    let meet_table = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let lower: Vec<usize> = (0..k).filter(|&z| class_leq.get(z, i) && class_leq.get(z, j)).collect();
                    let maximal: Vec<usize> = lower
                        .iter()
                        .copied()
                        .filter(|&z| lower.iter().all(|&w| w == z || !class_leq.get(z, w)))
                        .collect();
                    match maximal.as_slice() {
                        [m] => Some(*m),
                        _ => None,
                    }
                })
                .collect()
        })
        .collect();
    Ok(LPrimeStructure {
        classes,
        class_leq,
        meet_table,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub rprime_equivalence: Check,
    pub rprime_left_compatible: Check,
    pub leql_preorder: Check,
    pub meet_semilattice: Check,
    pub m1: Check,
    pub m2: Check,
    pub m3: Check,
    pub m4: Check,
    pub m5: Check,
    pub m6: Check,
    /// `≤_l` right compatible; a consequence of M2 with `α = γ`.
    pub leql_right_compatible: Check,
}

impl AxiomReport {
    pub fn flags(&self) -> [&Check; 4] {
        [
            &self.rprime_equivalence,
            &self.rprime_left_compatible,
            &self.leql_preorder,
            &self.meet_semilattice,
        ]
    }

    pub fn axioms(&self) -> [&Check; 6] {
        [&self.m1, &self.m2, &self.m3, &self.m4, &self.m5, &self.m6]
    }

    pub fn passes(&self) -> bool {
        self.flags().iter().chain(self.axioms().iter()).all(|c| c.holds)
    }

    /// First failing flag or axiom.
    pub fn first_failure(&self) -> Option<&Check> {
        self.flags().into_iter().chain(self.axioms()).find(|c| !c.holds)
    }
}

fn equivalence_check(rprime: &BoolRelation) -> Check {
    let n = rprime.size() as u64;
    let witness = if let Some(a) = rprime.reflexivity_witness() {
        Some(vec![a, a])
    } else if let Some((a, b)) = rprime.symmetry_witness() {
        Some(vec![a, b])
    } else {
        rprime.transitivity_witness().map(|(a, b, c)| vec![a, b, c])
    };
    Check::from_witness("R' is an equivalence", n * n * n, witness)
}

/// `{x : x R′ xa L′ a}` for each `a`.
pub(crate) fn admissible_left_factors(
    s: &FiniteSemigroup,
    rprime: &BoolRelation,
    lp: &LPrimeStructure,
) -> Vec<Vec<usize>> {
    s.elements()
        .map(|a| {
            s.elements()
                .filter(|&x| {
                    let xa = s.mul(x, a);
                    rprime.get(x, xa) && lp.related(xa, a)
                })
                .collect()
        })
        .collect()
}

fn check_m1(s: &FiniteSemigroup, rprime: &BoolRelation, lp: &LPrimeStructure) -> Check {
    let mut check = Check::new("M1");
    for alpha in s.elements() {
        for beta in s.elements() {
            let ok = lp.meet(alpha, beta).is_some_and(|m| find_m1_pair(s, rprime, lp, alpha, beta, m).is_some());
            check.record(ok, || vec![alpha, beta]);
        }
    }
    check
}

/// Least `(γ, δ)` with `γ R′ δ R′ δβ = γα` and `L′_{γα}` the class `meet`.
fn find_m1_pair(
    s: &FiniteSemigroup,
    rprime: &BoolRelation,
    lp: &LPrimeStructure,
    alpha: usize,
    beta: usize,
    meet: usize,
) -> Option<(usize, usize)> {
    s.elements().find_map(|gamma| {
        let ga = s.mul(gamma, alpha);
        if lp.class(ga) != meet {
            return None;
        }
        rprime
            .row(gamma)
            .iter()
            .find(|&delta| s.mul(delta, beta) == ga && rprime.get(delta, ga))
            .map(|delta| (gamma, delta))
    })
}

fn check_m2(s: &FiniteSemigroup, lp: &LPrimeStructure) -> Check {
    let mut check = Check::new("M2");
    for alpha in s.elements() {
        for beta in s.elements() {
            // The guard L′α ∧ L′β = L′γ only holds for γ in the meet class.
            let Some(m) = lp.meet(alpha, beta) else {
                check.checked += (s.order() * s.order()) as u64;
                continue;
            };
            for &gamma in &lp.classes.classes[m] {
                for delta in s.elements() {
                    let ok = lp.meet(s.mul(alpha, delta), s.mul(beta, delta)) == Some(lp.class(s.mul(gamma, delta)));
                    check.record(ok, || vec![alpha, beta, gamma, delta]);
                }
            }
        }
    }
    check
}

fn check_m3(s: &FiniteSemigroup, leql: &BoolRelation) -> Check {
    let mut check = Check::new("M3");
    for alpha in s.elements() {
        for beta in s.elements() {
            check.record(leql.get(s.mul(alpha, beta), beta), || vec![alpha, beta]);
        }
    }
    check
}

fn check_m4(s: &FiniteSemigroup, rprime: &BoolRelation) -> Check {
    let witness = rprime.first_pair_outside(&rstar(s)).map(|(a, b)| vec![a, b]);
    Check::from_witness("M4", rprime.count() as u64, witness)
}

fn check_m5(s: &FiniteSemigroup, rprime: &BoolRelation, lp: &LPrimeStructure, adm: &[Vec<usize>]) -> Check {
    let mut check = Check::new("M5");
    for alpha in s.elements() {
        for beta in s.elements() {
            let rhs = rprime.get(alpha, beta);
            // Tuples are scanned in (α, β, γ, δ) order.
            for &gamma in &adm[alpha] {
                for &delta in &adm[beta] {
                    check.record(lp.related(gamma, delta) == rhs, || vec![alpha, beta, gamma, delta]);
                }
            }
        }
    }
    check
}

fn check_m6(s: &FiniteSemigroup, lp: &LPrimeStructure) -> Check {
    let mut check = Check::new("M6");
    for alpha in s.elements() {
        for beta in s.elements() {
            if !lp.related(alpha, beta) {
                continue;
            }
            for gamma in s.elements() {
                let ga = s.mul(gamma, alpha);
                if lp.related(beta, ga) && ga == s.mul(gamma, beta) {
                    check.record(alpha == beta, || vec![alpha, beta, gamma]);
                }
            }
        }
    }
    check
}

/// Decides the relation flags and M1–M6 for `(S, R′, ≤_l)`.
///
/// M1 and M2 are only evaluated when `≤_l` is a preorder with a meet
/// semilattice of classes; M5 and M6 need `≤_l` to be a preorder.
pub fn check_m_axioms(s: &FiniteSemigroup, rprime: &BoolRelation, leql: &BoolRelation) -> AxiomReport {
    let n = s.order() as u64;
    let rprime_equivalence = equivalence_check(rprime);
    let rprime_left_compatible = Check::from_witness(
        "R' is left compatible",
        n * n * n,
        rprime.left_compatibility_witness(s).map(|(c, a, b)| vec![c, a, b]),
    );
    let m3 = check_m3(s, leql);
    let m4 = check_m4(s, rprime);
    let lp = build_lprime(leql);
    let leql_preorder = Check::from_witness(
        "<=_l is a preorder",
        n * n * n,
        match &lp {
            Err(AnalysisError::NotPreorder { witness }) => Some(witness.clone()),
            _ => None,
        },
    );
    let Ok(lp) = lp else {
        let why = "<=_l is not a preorder";
        return AxiomReport {
            rprime_equivalence,
            rprime_left_compatible,
            leql_preorder,
            meet_semilattice: Check::skipped("L'-classes form a meet semilattice", why),
            m1: Check::skipped("M1", why),
            m2: Check::skipped("M2", why),
            m3,
            m4,
            m5: Check::skipped("M5", why),
            m6: Check::skipped("M6", why),
            leql_right_compatible: Check::skipped("<=_l is right compatible", why),
        };
    };
    let k = lp.classes.len() as u64;
    let meet_semilattice = Check::from_witness(
        "L'-classes form a meet semilattice",
        k * k,
        lp.missing_meet().map(|(i, j)| vec![lp.classes.classes[i][0], lp.classes.classes[j][0]]),
    );
    let adm = admissible_left_factors(s, rprime, &lp);
    let (m1, m2) = if meet_semilattice.holds {
        (check_m1(s, rprime, &lp), check_m2(s, &lp))
    } else {
        let why = "L'-classes do not form a meet semilattice";
        (Check::skipped("M1", why), Check::skipped("M2", why))
    };
    let leql_right_compatible = Check::from_witness(
        "<=_l is right compatible",
        leql.count() as u64 * n,
        leql.right_compatibility_witness(s).map(|(a, b, c)| vec![a, b, c]),
    );
    AxiomReport {
        rprime_equivalence,
        rprime_left_compatible,
        leql_preorder,
        meet_semilattice,
        m1,
        m2,
        m3,
        m4,
        m5: check_m5(s, rprime, &lp, &adm),
        m6: check_m6(s, &lp),
        leql_right_compatible,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SecpropsReport {
    /// Every `a` has some `x` with `x R′ xa L′ a`.
    pub exists_admissible: Check,
    /// `x R′ xa L′ a` and `a R′ b` give `x R′ xb L′ b`.
    pub admissible_transfers: Check,
    /// `L′_{xa} ∧ L′_a = L′_{xa}`.
    pub meet_absorbs: Check,
    /// `a R′ b` and `xa L′ ya` give `xb L′ yb`.
    pub l_transfers: Check,
    /// All axioms held but a derived property failed.
    pub internal_contradiction: bool,
}

impl SecpropsReport {
    pub fn checks(&self) -> [&Check; 4] {
        [
            &self.exists_admissible,
            &self.admissible_transfers,
            &self.meet_absorbs,
            &self.l_transfers,
        ]
    }

    pub fn holds(&self) -> bool {
        self.checks().iter().all(|c| c.holds)
    }
}

/// Consequences of M1–M6 that the quotient construction leans on.
pub fn check_secprops(
    s: &FiniteSemigroup,
    rprime: &BoolRelation,
    leql: &BoolRelation,
) -> Result<SecpropsReport, AnalysisError> {
    if !check_m_axioms(s, rprime, leql).passes() {
        return Err(AnalysisError::MAxiomsNotEstablished);
    }
    let lp = build_lprime(leql)?;
    let adm = admissible_left_factors(s, rprime, &lp);

    let mut i = Check::new("secprops (i)");
    for a in s.elements() {
        i.record(!adm[a].is_empty(), || vec![a]);
    }
    let mut ii = Check::new("secprops (ii)");
    for a in s.elements() {
        for &x in &adm[a] {
            for b in rprime.row(a).iter() {
                ii.record(adm[b].contains(&x), || vec![a, b, x]);
            }
        }
    }
    let mut iii = Check::new("secprops (iii)");
    for x in s.elements() {
        for a in s.elements() {
            let xa = s.mul(x, a);
            iii.record(lp.meet(xa, a) == Some(lp.class(xa)), || vec![x, a]);
        }
    }
    let mut iv = Check::new("secprops (iv)");
    for a in s.elements() {
        for b in rprime.row(a).iter() {
            for x in s.elements() {
                for y in s.elements() {
                    if lp.related(s.mul(x, a), s.mul(y, a)) {
                        iv.record(lp.related(s.mul(x, b), s.mul(y, b)), || vec![a, b, x, y]);
                    }
                }
            }
        }
    }
    let internal_contradiction = [&i, &ii, &iii, &iv].iter().any(|c| c.failed());
    Ok(SecpropsReport {
        exists_admissible: i,
        admissible_transfers: ii,
        meet_absorbs: iii,
        l_transfers: iv,
        internal_contradiction,
    })
}
