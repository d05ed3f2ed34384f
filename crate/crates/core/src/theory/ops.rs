//! Bounded semi-decisions about theories: pc models, joint consistency,
//! positive completeness, companionship and the Kaiser hull.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::diagram::{atomic_diagram, DiagramSet};
use super::patterns::{common_strongest_sentence, common_ti_violation, patterns, ti_star_violation, true_patterns, Pattern};
use super::verdict::{or_unknown, Answer, Budget, Certificate, Verdict};
use super::{Sentence, Theory};
use crate::canon::canonical_code;
use crate::engine::chase::{chase, ChaseResult};
use crate::engine::partial::{Cell, PartialModel};
use crate::error::{Error, Result};
use crate::finder::{find_models, models_of_size, SearchLimits};
use crate::formula::{eval_sentence, HInductiveSentence, HUniversalSentence};
use crate::morphism::{hom_maps, retraction, HomConstraint};
use crate::signature::Signature;
use crate::structure::FiniteStructure;

/// One input of a joint-consistency query.
#[derive(Debug, Clone)]
pub enum Component {
    Theory(Theory),
    Diagram(DiagramSet),
}

impl From<Theory> for Component {
    fn from(t: Theory) -> Self {
        Component::Theory(t)
    }
}

impl From<DiagramSet> for Component {
    fn from(d: DiagramSet) -> Self {
        Component::Diagram(d)
    }
}

fn limits(b: &Budget) -> SearchLimits {
    SearchLimits {
        node_cap: b.node_cap,
        max_models: None,
    }
}

/// Models of `t` with at most `b.n` elements, up to isomorphism.
pub fn models(t: &Theory, b: &Budget) -> Result<Vec<FiniteStructure>> {
    b.validate()?;
    find_models(t, b.n, limits(b))
}

/// The union of the components over the union of their signatures.
pub fn union_theory(parts: &[Component]) -> Result<Theory> {
    let mut sig = Signature::empty();
    let mut sentences: Vec<Sentence> = Vec::new();
    for p in parts {
        let (s, xs) = match p {
            Component::Theory(t) => (&**t.signature(), t.sentences()),
            Component::Diagram(d) => (&d.signature, &d.sentences[..]),
        };
        sig = sig.union(s)?;
        sentences.extend(xs.iter().cloned());
    }
    Theory::new("union", Arc::new(sig), sentences)
}

/// Whether the chase derives `false` from `t`, starting from one element
/// per constant (or a single element when there are none).
pub fn chase_refutes(t: &Theory, cap: u64) -> Result<bool> {
    let sig = t.signature().clone();
    let nc = sig.constants().len();
    let mut start = PartialModel::new(sig, nc.max(1));
    for c in 0..nc {
        start.set(Cell::Const(c), c).expect("fresh cell");
    }
    Ok(matches!(chase(start, t.rules(), cap)?, ChaseResult::Contradiction))
}

fn first_model(t: &Theory, max: usize, cap: u64) -> Result<Option<FiniteStructure>> {
    let lim = SearchLimits {
        node_cap: cap,
        max_models: Some(1),
    };
    for size in 1..=max {
        if let Some(m) = models_of_size(t.signature(), t.rules(), size, lim)?.into_iter().next() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn consistency(t: &Theory, b: &Budget) -> Result<Verdict> {
    if chase_refutes(t, b.node_cap)? {
        return Ok(Verdict::no(
            *b,
            Certificate::Refutation {
                steps: "the chase derives false from the named elements".into(),
            },
        ));
    }
    Ok(match first_model(t, b.big_n, b.node_cap)? {
        Some(m) => Verdict::yes(*b, Certificate::Model { structure: m }),
        None => Verdict::unknown(*b, format!("no model with at most {} elements and no refutation", b.big_n)),
    })
}

/// Whether the union of the components has a model with at most `b.big_n`
/// elements. `no` requires a chase refutation.
pub fn joint_consistency_bounded(parts: &[Component], b: &Budget) -> Result<Verdict> {
    b.validate()?;
    let t = union_theory(parts)?;
    or_unknown(*b, consistency(&t, b))
}

/// Bounded pc test: every homomorphism from `m` into a model of `t` with
/// at most `b.n` elements is an immersion.
pub fn is_pc_within(m: &FiniteStructure, t: &Theory, b: &Budget) -> Result<Verdict> {
    b.validate()?;
    if !t.is_model(m)? {
        return Err(Error::Precondition("the structure is not a model of the theory".into()));
    }
    let r = (|| {
        let ms = find_models(t, b.n, limits(b))?;
        pc_against(m, &ms, b)
    })();
    or_unknown(*b, r)
}

fn pc_against(m: &FiniteStructure, targets: &[FiniteStructure], b: &Budget) -> Result<Verdict> {
    let mut homs = 0;
    for target in targets {
        for map in hom_maps(m, target, &HomConstraint::default(), false, b.node_cap)? {
            homs += 1;
            if retraction(m, target, &map, b.node_cap)?.is_none() {
                return Ok(Verdict::no(
                    *b,
                    Certificate::NonImmersion {
                        target: target.clone(),
                        map,
                    },
                ));
            }
        }
    }
    Ok(Verdict::yes(*b, Certificate::Exhaustive { instances: homs }))
}

fn pc_among(ms: &[FiniteStructure], b: &Budget) -> Result<Vec<FiniteStructure>> {
    let flags: Vec<bool> = ms
        .par_iter()
        .map(|m| pc_against(m, ms, b).map(|v| v.is_yes()))
        .collect::<Result<_>>()?;
    Ok(ms.iter().zip(flags).filter(|(_, f)| *f).map(|(m, _)| m.clone()).collect())
}

/// Bounded pc models of `t` with at most `b.n` elements.
pub fn pc_models(t: &Theory, b: &Budget) -> Result<Vec<FiniteStructure>> {
    b.validate()?;
    pc_among(&find_models(t, b.n, limits(b))?, b)
}

/// `Diag+(a) ∪ Diag+(c) ∪ t` with the elements of the two sides named apart.
fn pair_components(t: &Theory, a: &FiniteStructure, c: &FiniteStructure) -> Result<Vec<Component>> {
    Ok(vec![
        Component::Theory(t.clone()),
        Component::Diagram(atomic_diagram(a, "l", false)?),
        Component::Diagram(atomic_diagram(c, "r", false)?),
    ])
}

/// Checks every pair with the common-continuation test and merges the
/// answers; the least failing pair is reported.
fn pairs_verdict(t: &Theory, left: &[FiniteStructure], right: &[FiniteStructure], symmetric: bool, b: &Budget) -> Result<Verdict> {
    let mut pairs = Vec::new();
    for i in 0..left.len() {
        for j in 0..right.len() {
            if !symmetric || i <= j {
                pairs.push((i, j));
            }
        }
    }
    let results: Vec<Verdict> = pairs
        .par_iter()
        .map(|&(i, j)| joint_consistency_bounded(&pair_components(t, &left[i], &right[j])?, b))
        .collect::<Result<_>>()?;
    let mut answer = Answer::Yes;
    let mut witness = None;
    for (&(i, j), v) in pairs.iter().zip(&results) {
        let before = answer;
        answer = answer.merge(v.verdict);
        if answer != before || (witness.is_none() && v.verdict != Answer::Yes) {
            witness = Some((i, j, v.verdict));
        }
    }
    Ok(match (answer, witness) {
        (Answer::Yes, _) => Verdict::yes(*b, Certificate::Exhaustive { instances: pairs.len() }),
        (_, Some((i, j, v))) => {
            let cert = Certificate::Pair {
                left: left[i].clone(),
                right: right[j].clone(),
                refuted: v == Answer::No,
            };
            if answer == Answer::No {
                Verdict::no(*b, cert)
            } else {
                Verdict {
                    verdict: Answer::Unknown,
                    budget: *b,
                    certificate: cert,
                    notes: vec![format!("no common continuation with at most {} elements was found", b.big_n)],
                }
            }
        }
        _ => unreachable!("non-yes answer has a witness"),
    })
}

/// Bounded positive completeness: every two models with at most `b.n`
/// elements have a common continuation in a model with at most `b.big_n`.
pub fn is_jc_bounded(t: &Theory, b: &Budget) -> Result<Verdict> {
    b.validate()?;
    let r = (|| {
        let ms = find_models(t, b.n, limits(b))?;
        pairs_verdict(t, &ms, &ms, true, b)
    })();
    or_unknown(*b, r)
}

/// Bounded T-completeness of `(t1, t2)`: models of the two sides with at
/// most `b.n` elements continue into a common model of `t`.
pub fn is_t_complete_pair(t1: &Theory, t2: &Theory, t: &Theory, b: &Budget) -> Result<Verdict> {
    b.validate()?;
    if t1.signature() != t.signature() || t2.signature() != t.signature() {
        return Err(Error::SignatureMismatch("the three theories must share a signature".into()));
    }
    let r = (|| {
        let left = find_models(t1, b.n, limits(b))?;
        let right = find_models(t2, b.n, limits(b))?;
        pairs_verdict(t, &left, &right, false, b)
    })();
    or_unknown(*b, r)
}

/// One row of the characterization report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionRow {
    pub index: usize,
    pub statement: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JcReport {
    pub budget: Budget,
    pub conditions: Vec<ConditionRow>,
    pub jc: Verdict,
    /// Whether each condition matches the JC verdict; empty when that
    /// verdict is unknown.
    pub agreement: Vec<bool>,
}

impl JcReport {
    pub fn all_agree(&self) -> bool {
        self.agreement.len() == self.conditions.len() && self.agreement.iter().all(|&a| a)
    }
}

const CONDITIONS: [&str; 5] = [
    "h-universal consequences have the prime-disjunction property",
    "positive extensions of two models are jointly consistent",
    "some model has exactly the h-universal consequences as its h-universal theory",
    "some model has exactly the Kaiser hull as its h-inductive theory",
    "all pc models share their h-universal theory",
];

/// Evaluates each of the five equivalent forms of positive completeness at
/// the bounds of `b` and compares them with [`is_jc_bounded`].
pub fn jc_characterization_report(t: &Theory, b: &Budget) -> Result<JcReport> {
    b.validate()?;
    let jc = is_jc_bounded(t, b)?;
    let ms = find_models(t, b.n, limits(b))?;
    let row = |i: usize, holds: bool, note: Option<String>| ConditionRow {
        index: i + 1,
        statement: CONDITIONS[i].to_string(),
        holds,
        note,
    };
    let conditions = if ms.is_empty() {
        (0..5).map(|i| row(i, true, Some("no models: vacuous".into()))).collect()
    } else {
        let cap = b.node_cap;
        let pats = patterns(t.signature(), b.k, cap)?;
        let big = find_models(t, b.big_n, limits(b))?;
        let truth: Vec<BTreeSet<usize>> = ms.iter().map(|m| true_patterns(&pats, m, cap)).collect::<Result<_>>()?;
        let big_truth: Vec<BTreeSet<usize>> = big.iter().map(|m| true_patterns(&pats, m, cap)).collect::<Result<_>>()?;
        let satisfiable: BTreeSet<usize> = truth.iter().flatten().copied().collect();

        // (1) two separately satisfiable patterns hold together somewhere.
        let mut c1 = None;
        'outer: for &p in &satisfiable {
            for &q in satisfiable.range(p..) {
                if !big_truth.iter().any(|s| s.contains(&p) && s.contains(&q)) {
                    c1 = Some(format!("patterns {p} and {q} are never jointly true"));
                    break 'outer;
                }
            }
        }
        // (2) the positive theories of two models hold together somewhere.
        let mut c2 = None;
        'outer2: for (i, a) in truth.iter().enumerate() {
            for (j, c) in truth.iter().enumerate().skip(i) {
                if !big_truth.iter().any(|s| s.is_superset(a) && s.is_superset(c)) {
                    c2 = Some(format!("models {i} and {j} have no common positive extension"));
                    break 'outer2;
                }
            }
        }
        // (3) some model satisfies exactly the satisfiable patterns.
        let c3 = truth.iter().any(|s| *s == satisfiable);
        // (4) some model has the hull as its bounded h-inductive theory.
        let pcs = pc_among(&ms, b)?;
        let mut c4 = false;
        for a in &ms {
            if common_ti_violation(&pats, &pcs, a, b.k, cap)?.is_some() {
                continue;
            }
            let mut ok = true;
            for m in &pcs {
                if ti_star_violation(&pats, a, m, b.k, cap)?.is_some() {
                    ok = false;
                    break;
                }
            }
            if ok {
                c4 = true;
                break;
            }
        }
        // (5) the pc models agree on patterns.
        let pc_truth: Vec<BTreeSet<usize>> = pcs.iter().map(|m| true_patterns(&pats, m, cap)).collect::<Result<_>>()?;
        let c5 = pc_truth.windows(2).all(|w| w[0] == w[1]);
        vec![
            row(0, c1.is_none(), c1),
            row(1, c2.is_none(), c2),
            row(2, c3, None),
            row(3, c4, None),
            row(4, c5, Some(format!("{} bounded pc models", pcs.len()))),
        ]
    };
    let agreement = match jc.verdict {
        Answer::Unknown => Vec::new(),
        v => conditions.iter().map(|c| c.holds == (v == Answer::Yes)).collect(),
    };
    Ok(JcReport {
        budget: *b,
        conditions,
        jc,
        agreement,
    })
}

/// Checks that every bounded pc model has a minimal h-universal theory and
/// a maximal h-inductive theory among the models, at bound `b.k`.
pub fn tu_ti_extremality_check(t: &Theory, b: &Budget) -> Result<Verdict> {
    b.validate()?;
    let r = (|| {
        let cap = b.node_cap;
        let ms = find_models(t, b.n, limits(b))?;
        let pcs = pc_among(&ms, b)?;
        let pats = patterns(t.signature(), b.k, cap)?;
        let truth: Vec<BTreeSet<usize>> = ms.iter().map(|m| true_patterns(&pats, m, cap)).collect::<Result<_>>()?;
        let mut checked = 0;
        for a in &pcs {
            let ta = true_patterns(&pats, a, cap)?;
            for (m, tm) in ms.iter().zip(&truth) {
                checked += 1;
                let fail = |which: &str| {
                    Verdict::no(
                        *b,
                        Certificate::Extremality {
                            pc_model: a.clone(),
                            model: m.clone(),
                            which: which.to_string(),
                        },
                    )
                };
                // Tu*(m) ⊆ Tu*(a) means the patterns of a hold in m.
                if tm.is_superset(&ta) && tm != &ta {
                    return Ok(fail("h-universal"));
                }
                if ti_star_violation(&pats, a, m, b.k, cap)?.is_none() && ti_star_violation(&pats, m, a, b.k, cap)?.is_some() {
                    return Ok(fail("h-inductive"));
                }
            }
        }
        Ok(Verdict::yes(*b, Certificate::Exhaustive { instances: checked }))
    })();
    or_unknown(*b, r)
}

fn iso_codes(ms: &[FiniteStructure]) -> BTreeSet<Vec<usize>> {
    ms.iter().map(canonical_code).collect()
}

/// Bounded companionship: the two theories have the same pc models with at
/// most `b.n` elements, up to isomorphism.
pub fn companion_check_bounded(t1: &Theory, t2: &Theory, b: &Budget) -> Result<Verdict> {
    b.validate()?;
    if t1.signature() != t2.signature() {
        return Err(Error::SignatureMismatch("companion theories must share a signature".into()));
    }
    let r = (|| {
        let left = pc_models(t1, b)?;
        let right = pc_models(t2, b)?;
        let same = iso_codes(&left) == iso_codes(&right);
        let cert = Certificate::PcModels { left, right };
        Ok(if same { Verdict::yes(*b, cert) } else { Verdict::no(*b, cert) })
    })();
    or_unknown(*b, r)
}

/// The bounded Kaiser hull and h-universal part of a theory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    pub budget: Budget,
    pub signature: Signature,
    /// Strongest h-inductive sentence per premise true in every bounded pc model.
    pub hull: Vec<Sentence>,
    /// h-universal sentences true in every model with at most `n` elements.
    pub universal: Vec<Sentence>,
    pub pc_models: Vec<FiniteStructure>,
}

impl HullReport {
    /// Whether `s` holds in every bounded pc model; sentences of size at
    /// most `k` hold exactly when the hull entails them.
    pub fn contains(&self, s: &Sentence) -> Result<bool> {
        let f = s.encoding().bind(&self.signature)?.to_formula();
        for m in &self.pc_models {
            if !eval_sentence(m, &f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_theory(&self, name: &str) -> Result<Theory> {
        Theory::new(name, Arc::new(self.signature.clone()), self.hull.clone())
    }
}

pub fn kaiser_hull_bounded(t: &Theory, b: &Budget) -> Result<HullReport> {
    b.validate()?;
    let cap = b.node_cap;
    let sig = t.signature();
    let ms = find_models(t, b.n, limits(b))?;
    let pcs = pc_among(&ms, b)?;
    let pats: Vec<Pattern> = patterns(sig, b.k, cap)?;
    let mut hull = Vec::new();
    let mut universal = Vec::new();
    let mut satisfiable = BTreeSet::new();
    for m in &ms {
        satisfiable.extend(true_patterns(&pats, m, cap)?);
    }
    for (i, p) in pats.iter().enumerate() {
        let imp = common_strongest_sentence(p, &pcs, sig, b.k, cap)?;
        hull.push(Sentence::HInductive(HInductiveSentence::single(imp)));
        if !satisfiable.contains(&i) {
            universal.push(Sentence::HUniversal(HUniversalSentence { negated: p.positive(sig) }));
        }
    }
    Ok(HullReport {
        budget: *b,
        signature: (**sig).clone(),
        hull,
        universal,
        pc_models: pcs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::diagram::{diagram, DiagramKind};
    use crate::zoo;

    fn b(n: usize, big_n: usize, k: usize) -> Budget {
        Budget::new(n, big_n, k)
    }

    fn unary_rs() -> Arc<Signature> {
        Arc::new(Signature::relational([("R", 1), ("S", 1)]).unwrap())
    }

    #[test]
    fn poset_models() {
        let ms = models(&zoo::t_pos(), &b(2, 2, 2)).unwrap();
        assert_eq!(ms.len(), 3);
        let loops = models(&zoo::fixed_point_theory(1), &b(1, 1, 1)).unwrap();
        assert_eq!(loops.len(), 1);
    }

    #[test]
    fn pc_examples() {
        assert!(is_pc_within(&zoo::point(), &zoo::t_pos(), &b(4, 4, 2)).unwrap().is_yes());
        let v = is_pc_within(&zoo::chain2(), &zoo::t_pos(), &b(2, 2, 2)).unwrap();
        assert!(v.is_no());
        match v.certificate {
            Certificate::NonImmersion { target, map } => {
                assert_eq!(target.size(), 1);
                assert_eq!(map, vec![0, 0]);
            }
            c => panic!("unexpected certificate {c:?}"),
        }
        assert!(is_pc_within(&zoo::cyclic_group(1), &zoo::t_g(), &b(4, 4, 2)).unwrap().is_yes());
    }

    #[test]
    fn pc_requires_a_model() {
        let e = is_pc_within(&zoo::two_cycle(), &zoo::fixed_point_theory(1), &b(2, 2, 2));
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn joint_consistency_examples() {
        let bud = b(2, 2, 2);
        let chain = diagram(&zoo::chain2(), DiagramKind::DiagPlus, &bud).unwrap();
        let anti = diagram(&zoo::antichain2(), DiagramKind::DiagPlus, &bud).unwrap();
        let v = joint_consistency_bounded(&[chain.clone().into(), anti.into()], &bud).unwrap();
        assert!(v.is_yes());
        if let Certificate::Model { structure } = &v.certificate {
            assert_eq!(structure.size(), 1);
        }

        let full = diagram(&zoo::chain2(), DiagramKind::Diag, &bud).unwrap();
        let eq = Theory::parse("eq", Arc::new(full.signature.clone()), "positive: c0 = c1;").unwrap();
        let v = joint_consistency_bounded(&[full.into(), eq.into()], &b(2, 6, 2)).unwrap();
        assert!(v.is_no(), "{v:?}");

        let v = joint_consistency_bounded(&[zoo::t_pos().into(), chain.into()], &bud).unwrap();
        assert!(v.is_yes());
    }

    #[test]
    fn jc_examples() {
        assert!(is_jc_bounded(&zoo::t_pos(), &b(2, 1, 2)).unwrap().is_yes());
        let sig = Arc::new(Signature::relational([("R", 1)]).unwrap());
        let bot = Theory::parse("bot", sig, "positive: exists x. R(x); huniversal: ! (exists x. R(x));").unwrap();
        assert!(is_jc_bounded(&bot, &b(2, 2, 2)).unwrap().is_yes());
    }

    #[test]
    fn group_with_named_element_is_not_jc() {
        let v = is_jc_bounded(&zoo::t_g_plus(), &b(3, 6, 2)).unwrap();
        assert!(v.is_no(), "{v:?}");
    }

    #[test]
    fn t_complete_examples() {
        let t = zoo::t_pos();
        assert!(is_t_complete_pair(&t, &t, &t, &b(2, 1, 2)).unwrap().is_yes());

        let sig = unary_rs();
        let t1 = Theory::parse("t1", sig.clone(), "positive: exists x. R(x);").unwrap();
        let t2 = Theory::parse("t2", sig.clone(), "positive: exists x. S(x);").unwrap();
        let t = Theory::parse("t", sig.clone(), "huniversal: ! (exists x. R(x) & S(x));").unwrap();
        // A one-point model of t1 satisfying both R and S has no continuation into t.
        let v = is_t_complete_pair(&t1, &t2, &t, &b(2, 4, 2)).unwrap();
        assert!(v.is_no(), "{v:?}");

        let u1 = Theory::parse("u1", sig.clone(), "hinductive: forall x. true -> R(x);").unwrap();
        let u2 = Theory::parse("u2", sig.clone(), "hinductive: forall x. true -> S(x);").unwrap();
        assert!(is_t_complete_pair(&u1, &u2, &t, &b(2, 4, 2)).unwrap().is_no());
    }

    #[test]
    fn characterization_of_posets() {
        let r = jc_characterization_report(&zoo::t_pos(), &b(3, 1, 3)).unwrap();
        assert!(r.jc.is_yes());
        assert!(r.conditions.iter().all(|c| c.holds), "{r:?}");
        assert!(r.all_agree());
    }

    #[test]
    fn characterization_of_inconsistent_theory_is_vacuous() {
        let bot = Theory::parse("bot", zoo::poset_signature(), "hinductive: forall x. true -> false;").unwrap();
        let r = jc_characterization_report(&bot, &b(2, 2, 2)).unwrap();
        assert!(r.conditions.iter().all(|c| c.holds));
        assert!(r.all_agree());
    }

    #[test]
    fn extremality_examples() {
        assert!(tu_ti_extremality_check(&zoo::t_pos(), &b(2, 2, 2)).unwrap().is_yes());
        assert!(tu_ti_extremality_check(&zoo::fixed_point_theory(1), &b(2, 2, 2)).unwrap().is_yes());
    }

    #[test]
    fn companions() {
        let bud = b(2, 2, 2);
        let tu = diagram(&zoo::singleton_loop(), DiagramKind::TuStar, &bud).unwrap().to_theory("tu").unwrap();
        let ti = diagram(&zoo::singleton_loop(), DiagramKind::TiStar, &bud).unwrap().to_theory("ti").unwrap();
        assert!(companion_check_bounded(&tu, &ti, &bud).unwrap().is_yes());

        let red = zoo::t_pos()
            .extended("red", [Theory::parse("x", zoo::poset_signature(), "hinductive: forall x. true -> leq(x, x);").unwrap().sentences()[0].clone()])
            .unwrap();
        assert!(companion_check_bounded(&zoo::t_pos(), &red, &bud).unwrap().is_yes());
        let empty = Theory::empty("empty", zoo::poset_signature());
        // Every digraph maps onto the reflexive point, which is the only
        // pc model on both sides.
        let v = companion_check_bounded(&zoo::t_pos(), &empty, &bud).unwrap();
        assert!(v.is_yes());
        let antireflexive = Theory::parse("irr", zoo::poset_signature(), "huniversal: ! (exists x. leq(x, x));").unwrap();
        assert!(companion_check_bounded(&zoo::t_pos(), &antireflexive, &bud).unwrap().is_no());
    }

    #[test]
    fn hull_contains_axioms_and_holds_in_pc_models() {
        let t = zoo::t_pos();
        let h = kaiser_hull_bounded(&t, &b(3, 3, 2)).unwrap();
        for s in t.sentences() {
            assert!(h.contains(s).unwrap(), "{s}");
        }
        for s in &h.hull {
            for m in &h.pc_models {
                assert!(eval_sentence(m, &s.encoding().to_formula()).unwrap());
            }
        }
        let f = kaiser_hull_bounded(&zoo::fixed_point_theory(1), &b(2, 2, 2)).unwrap();
        let pos = Theory::parse("p", zoo::unary_signature(), "positive: exists x. f(x) = x;").unwrap();
        assert!(f.contains(&pos.sentences()[0]).unwrap());
        assert_eq!(f.pc_models.len(), 1);
    }
}
