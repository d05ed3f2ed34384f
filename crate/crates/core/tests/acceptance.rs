//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use posmt::amalgamation::{
    solve, solve_by_enumeration, verify_theorem, AmalgamationProblem, Class, HarnessConfig,
    InstanceOutcome, Kinds, TheoremId,
};
use posmt::canon::are_isomorphic;
use posmt::enumerate::enumerate_structures;
use posmt::morphism::{hom_exists, Morphism, MorphismKind};
use posmt::signature::Signature;
use posmt::structure::{table_len, Elem, Fact, FiniteStructure};
use posmt::theory::diagram::{atomic_diagram, diagram, DiagramKind};
use posmt::theory::ops::{
    companion_check_bounded, is_pc_within, jc_characterization_report, joint_consistency_bounded,
    models, pc_models, Component,
};
use posmt::theory::verdict::{Answer, Budget};
use posmt::theory::{Sentence, Theory};
use posmt::zoo;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: u64 = 1_000_000;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------- independent oracles ----------

fn mapped(map: &[Elem], t: &[Elem]) -> Vec<Elem> {
    t.iter().map(|&x| map[x]).collect()
}

/// Homomorphism test straight from the facts of the source.
fn brute_is_hom(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem]) -> bool {
    a.facts().iter().all(|f| match f {
        Fact::Relation(r, t) => b.holds(*r, &mapped(map, t)),
        Fact::Function(g, args, v) => b.apply(*g, &mapped(map, args)) == map[*v],
        Fact::Constant(c, e) => b.constant(*c) == map[*e],
    })
}

/// Every homomorphism by trying every map.
fn brute_homs(a: &FiniteStructure, b: &FiniteStructure) -> Vec<Vec<Elem>> {
    let (n, m) = (a.size(), b.size());
    (0..m.pow(n as u32))
        .map(|code| posmt::structure::decode_tuple(code, n, m))
        .filter(|map| brute_is_hom(a, b, map))
        .collect()
}

fn brute_is_embedding(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem]) -> bool {
    let injective = map.iter().collect::<BTreeSet<_>>().len() == map.len();
    let sig = a.signature();
    let reflects = (0..sig.relations().len()).all(|r| {
        let ar = sig.relation_arity(r);
        (0..table_len(a.size(), ar)).all(|code| {
            let t = posmt::structure::decode_tuple(code, ar, a.size());
            a.holds(r, &t) || !b.holds(r, &mapped(map, &t))
        })
    });
    injective && brute_is_hom(a, b, map) && reflects
}

/// Whether every conjunctive query with at most `size` atoms that holds of
/// the image of `a` in `b` also holds in `a`. A query true at the image is
/// implied by the sub-diagram of `b` it lands on, so it suffices to check
/// every sub-diagram of `b` with `min(size, |facts|)` atoms, plus the
/// equalities between images.
fn reflects_small_cqs(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem], size: usize) -> bool {
    let mut pre: Vec<Option<Elem>> = vec![None; b.size()];
    for (x, &y) in map.iter().enumerate() {
        if pre[y].is_some() {
            return false;
        }
        pre[y] = Some(x);
    }
    let facts = b.facts();
    let free: Vec<Elem> = b.elements().filter(|&u| pre[u].is_none()).collect();
    let want = facts.len().min(size);
    let assignments = a.size().pow(free.len() as u32);
    for mask in 0u32..(1u32 << facts.len()) {
        if mask.count_ones() as usize != want {
            continue;
        }
        let chosen: Vec<&Fact> = facts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| f)
            .collect();
        let satisfied = (0..assignments).any(|code| {
            let g = posmt::structure::decode_tuple(code, free.len(), a.size());
            let val =
                |u: Elem| pre[u].unwrap_or_else(|| g[free.iter().position(|&v| v == u).unwrap()]);
            chosen.iter().all(|f| match f {
                Fact::Relation(r, t) => a.holds(*r, &t.iter().map(|&u| val(u)).collect::<Vec<_>>()),
                Fact::Function(h, args, v) => {
                    a.apply(*h, &args.iter().map(|&u| val(u)).collect::<Vec<_>>()) == val(*v)
                }
                Fact::Constant(c, u) => a.constant(*c) == val(*u),
            })
        });
        if !satisfied {
            return false;
        }
    }
    true
}

fn corpus_signatures() -> Vec<Arc<Signature>> {
    vec![zoo::digraph_signature(), zoo::unary_signature()]
}

fn corpus(sig: &Arc<Signature>) -> Vec<FiniteStructure> {
    enumerate_structures(sig, 3, true, CAP).expect("enumeration")
}

fn random_structure(sig: &Arc<Signature>, rng: &mut ChaCha8Rng) -> FiniteStructure {
    let n = rng.gen_range(1..=3);
    let rels = sig
        .relations()
        .iter()
        .map(|(_, ar)| (0..table_len(n, *ar)).map(|_| rng.gen_bool(0.5)).collect())
        .collect();
    let funs = sig
        .functions()
        .iter()
        .map(|(_, ar)| {
            (0..table_len(n, *ar))
                .map(|_| rng.gen_range(0..n))
                .collect()
        })
        .collect();
    let consts = sig
        .constants()
        .iter()
        .map(|_| rng.gen_range(0..n))
        .collect();
    FiniteStructure::from_tables_numbered(sig.clone(), n, rels, funs, consts).expect("valid tables")
}

fn holds(s: &FiniteStructure, sentence: &Sentence) -> Result<bool, String> {
    Theory::new("probe", s.signature().clone(), vec![sentence.clone()])
        .and_then(|t| t.is_model(s))
        .map_err(e2s)
}

// ---------- criteria ----------

fn c1_posets() -> Outcome {
    let t = zoo::t_pos();
    let b4 = Budget::new(4, 6, 3);
    let v = is_pc_within(&zoo::point(), &t, &b4).map_err(e2s)?;
    ensure(v.verdict == Answer::Yes, || format!("point: {}", v.verdict))?;
    let posets: Vec<_> = models(&t, &Budget::new(3, 6, 3))
        .map_err(e2s)?
        .into_iter()
        .filter(|m| m.size() >= 2)
        .collect();
    ensure(!posets.is_empty(), || "no posets of size 2..3".into())?;
    for m in &posets {
        let v = is_pc_within(m, &t, &b4).map_err(e2s)?;
        ensure(v.verdict == Answer::No, || {
            format!("poset {m}: {}", v.verdict)
        })?;
    }
    Ok(format!("point yes, {} larger posets no", posets.len()))
}

fn c2_fixed_points() -> Outcome {
    for n in 1..=3 {
        let pcs = pc_models(&zoo::fixed_point_theory(n), &Budget::new(3, 6, 3)).map_err(e2s)?;
        ensure(
            pcs.len() == 1 && are_isomorphic(&pcs[0], &zoo::singleton_loop()),
            || format!("n={n}: {} pc models", pcs.len()),
        )?;
    }
    Ok("unique pc model is the loop for n = 1, 2, 3".into())
}

fn c3_groups() -> Outcome {
    let t = zoo::t_g();
    let trivial = zoo::cyclic_group(1);
    let v = is_pc_within(&trivial, &t, &Budget::new(4, 6, 3)).map_err(e2s)?;
    ensure(v.verdict == Answer::Yes, || {
        format!("trivial group at n=4: {}", v.verdict)
    })?;
    let pcs = pc_models(&t, &Budget::new(3, 6, 3)).map_err(e2s)?;
    ensure(pcs.len() == 1 && are_isomorphic(&pcs[0], &trivial), || {
        format!("{} pc groups up to 3", pcs.len())
    })?;
    Ok("trivial group pc at n=4, unique at n<=3".into())
}

fn c4_immersion_oracle() -> Outcome {
    let mut checked = 0usize;
    for sig in corpus_signatures() {
        let all = corpus(&sig);
        for a in &all {
            for b in &all {
                for map in brute_homs(a, b) {
                    let m = Morphism::new(a.clone(), b.clone(), map.clone()).map_err(e2s)?;
                    let by_retraction = m.is_immersion().map_err(e2s)?;
                    let by_queries = reflects_small_cqs(a, b, &map, 6);
                    ensure(by_retraction == by_queries, || {
                        format!("{a} -> {b} via {map:?}: retraction {by_retraction}, queries {by_queries}")
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} homomorphisms, zero disagreements"))
}

fn c5_kind_chain() -> Outcome {
    let mut counts = [0usize; 4];
    for sig in corpus_signatures() {
        let all = corpus(&sig);
        for a in &all {
            for b in &all {
                for map in brute_homs(a, b) {
                    let m = Morphism::new(a.clone(), b.clone(), map.clone()).map_err(e2s)?;
                    let kind = m.certify(b.size(), CAP).map_err(e2s)?.kind();
                    counts[kind as usize] += 1;
                    if kind >= MorphismKind::Immersion {
                        ensure(
                            m.is_immersion().map_err(e2s)? && reflects_small_cqs(a, b, &map, 6),
                            || format!("{kind} not an immersion: {map:?}"),
                        )?;
                    }
                    if kind >= MorphismKind::Embedding {
                        ensure(brute_is_embedding(a, b, &map), || {
                            format!("{kind} not an embedding: {map:?}")
                        })?;
                    }
                    ensure(brute_is_hom(a, b, &map), || format!("not a hom: {map:?}"))?;
                }
            }
        }
    }
    let inclusion = Morphism::new(zoo::point(), zoo::chain2(), vec![0]).map_err(e2s)?;
    let k = inclusion.classify(2).map_err(e2s)?;
    ensure(k == MorphismKind::Immersion, || {
        format!("point -> 2-chain classifies as {k}")
    })?;
    Ok(format!(
        "h/e/i/s = {counts:?}; point -> 2-chain is an immersion, not strong"
    ))
}

fn keys(d: &[Sentence]) -> BTreeSet<String> {
    d.iter()
        .map(|s| match s {
            Sentence::HUniversal(u) => u.negated.to_string(),
            Sentence::Positive(p) => p.to_string(),
            other => other.to_string(),
        })
        .collect()
}

fn c6_diagram_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let sigs = corpus_signatures();
    let mut totals: std::collections::HashMap<(usize, usize), usize> = Default::default();
    let pairs = 500;
    for i in 0..pairs {
        let si = i % 2;
        let sig = &sigs[si];
        let k = 1 + (i / 2) % 3;
        let budget = Budget::new(3, 6, k);
        let a = random_structure(sig, &mut rng);
        let b = random_structure(sig, &mut rng);
        let tu = |s: &FiniteStructure| diagram(s, DiagramKind::TuStar, &budget).map_err(e2s);
        let dp = |s: &FiniteStructure| diagram(s, DiagramKind::DiagPlusStar, &budget).map_err(e2s);
        let (tua, tub, dpa, dpb) = (tu(&a)?, tu(&b)?, dp(&a)?, dp(&b)?);
        let (ka, kb, pa, pb) = (
            keys(&tua.sentences),
            keys(&tub.sentences),
            keys(&dpa.sentences),
            keys(&dpb.sentences),
        );
        let ctx = || format!("pair {i} (k={k}): A = {a}, B = {b}");

        // (a)
        if hom_exists(&a, &b, CAP).map_err(e2s)? {
            ensure(kb.is_subset(&ka), || format!("(a) {}", ctx()))?;
        }
        // (b)
        let immersed = brute_homs(&a, &b)
            .into_iter()
            .any(|m| reflects_small_cqs(&a, &b, &m, usize::MAX));
        if immersed {
            ensure(ka == kb, || format!("(b) {}", ctx()))?;
        }
        // (c)
        for (s, t, d, set, dset) in [(&a, &tua, &dpa, &ka, &pa), (&b, &tub, &dpb, &kb, &pb)] {
            ensure(set.is_disjoint(dset), || format!("(c) overlap {}", ctx()))?;
            for x in t.sentences.iter().chain(&d.sentences) {
                ensure(holds(s, x)?, || format!("(c) {x} fails {}", ctx()))?;
            }
            let total = set.len() + dset.len();
            let expected = *totals.entry((si, k)).or_insert(total);
            ensure(total == expected, || {
                format!("(c) {total} patterns, expected {expected}; {}", ctx())
            })?;
        }
        // (d)
        ensure(pa.is_subset(&pb) == kb.is_subset(&ka), || {
            format!("(d) {}", ctx())
        })?;
        // (e)
        if ka.is_subset(&kb) {
            let parts: Vec<Component> = vec![
                atomic_diagram(&a, "a", false).map_err(e2s)?.into(),
                atomic_diagram(&b, "b", false).map_err(e2s)?.into(),
            ];
            let v = joint_consistency_bounded(&parts, &Budget::new(3, a.size() + b.size(), k))
                .map_err(e2s)?;
            ensure(v.verdict == Answer::Yes, || {
                format!("(e) {} {}", v.verdict, ctx())
            })?;
        }
    }
    Ok(format!("{pairs} random pairs, zero violations"))
}

fn c7_jc_report() -> Outcome {
    for t in [zoo::t_pos(), zoo::fixed_point_theory(1)] {
        let r = jc_characterization_report(&t, &Budget::new(3, 4, 3)).map_err(e2s)?;
        ensure(r.jc.verdict == Answer::Yes, || {
            format!("{}: jc {}", t.name(), r.jc.verdict)
        })?;
        ensure(
            r.conditions.iter().all(|c| c.holds) && r.all_agree(),
            || {
                format!(
                    "{}: conditions {:?}",
                    t.name(),
                    r.conditions.iter().map(|c| c.holds).collect::<Vec<_>>()
                )
            },
        )?;
    }
    Ok("five conditions agree with jc = yes for both theories".into())
}

fn c8_companions() -> Outcome {
    let b = Budget::new(2, 6, 3);
    let l = zoo::singleton_loop();
    let tu = diagram(&l, DiagramKind::TuStar, &b)
        .map_err(e2s)?
        .to_theory("tu")
        .map_err(e2s)?;
    let ti = diagram(&l, DiagramKind::TiStar, &b)
        .map_err(e2s)?
        .to_theory("ti")
        .map_err(e2s)?;
    let v = companion_check_bounded(&tu, &ti, &b).map_err(e2s)?;
    ensure(v.verdict == Answer::Yes, || {
        format!("companion check: {}", v.verdict)
    })?;
    Ok(format!(
        "{} and {} sentences, same pc models at n=2",
        tu.sentences().len(),
        ti.sentences().len()
    ))
}

fn c9_harness() -> Outcome {
    let mut lines = Vec::new();
    for id in [TheoremId::SiSiStrong, TheoremId::IiHhStrong] {
        let r = verify_theorem(&HarnessConfig::new(id, 2024, 50)).map_err(e2s)?;
        let false_no = r
            .rows
            .iter()
            .filter(|x| x.outcome != InstanceOutcome::Witnessed && x.exhaustive)
            .count();
        ensure(
            r.total == 50 && r.witnessed == 50 && r.all_verified() && false_no == 0,
            || {
                format!(
                    "{id}: {}/{} witnessed, verified {}, false no {false_no}",
                    r.witnessed,
                    r.total,
                    r.all_verified()
                )
            },
        )?;
        lines.push(format!("{id} {}/{}", r.witnessed, r.total));
    }
    Ok(lines.join(", "))
}

fn c10_solver_oracle() -> Outcome {
    use MorphismKind::*;
    let sig = zoo::digraph_signature();
    let all = enumerate_structures(&sig, 2, true, CAP).map_err(e2s)?;
    let patterns = [
        Kinds::uniform(Hom),
        Kinds::uniform(Embedding),
        Kinds::uniform(Immersion),
        Kinds::new(StrongImmersion, Immersion, StrongImmersion, Immersion),
        Kinds::pregeneric(Immersion, Hom),
        Kinds::asymmetric(Immersion, Hom),
        Kinds::asymmetric(Embedding, StrongImmersion),
    ];
    let mut instances = 0usize;
    let mut yes = 0usize;
    for a in &all {
        for b in &all {
            for c in &all {
                for big_n in 1..=4 {
                    let budget = Budget::new(2, big_n, 3);
                    for f in brute_homs(a, b) {
                        for g in brute_homs(a, c) {
                            for kinds in &patterns {
                                for strong in [false, true] {
                                    let left = Morphism::new(a.clone(), b.clone(), f.clone())
                                        .map_err(e2s)?;
                                    let right = Morphism::new(a.clone(), c.clone(), g.clone())
                                        .map_err(e2s)?;
                                    let Ok(p) = AmalgamationProblem::new(
                                        left,
                                        right,
                                        *kinds,
                                        Class::AllStructures,
                                        strong,
                                        budget,
                                    ) else {
                                        continue;
                                    };
                                    let fast = solve(&p).map_err(e2s)?;
                                    let slow = solve_by_enumeration(&p).map_err(e2s)?;
                                    ensure(
                                        fast.answer() == slow.answer()
                                            && fast.answer() != Answer::Unknown,
                                        || {
                                            format!("{a} / {b} / {c} {f:?} {g:?} {kinds} strong={strong}: {} vs {}", fast.answer(), slow.answer())
                                        },
                                    )?;
                                    if let Some(s) = fast.solution() {
                                        s.verify(&p)?;
                                        yes += 1;
                                    }
                                    instances += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{instances} instances agree, {yes} amalgamable and {} not",
        instances - yes
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, f64); 10] = [
        ("posets: the point is the only pc poset", c1_posets, 10.0),
        (
            "unary functions: the loop is the only pc model",
            c2_fixed_points,
            10.0,
        ),
        (
            "groups: the trivial group is the only pc model",
            c3_groups,
            60.0,
        ),
        (
            "retraction criterion equals query reflection",
            c4_immersion_oracle,
            f64::INFINITY,
        ),
        (
            "kind chain and the point inclusion",
            c5_kind_chain,
            f64::INFINITY,
        ),
        (
            "diagram properties (a)-(e) on random pairs",
            c6_diagram_properties,
            f64::INFINITY,
        ),
        ("JC characterization agrees", c7_jc_report, f64::INFINITY),
        ("loop diagrams are companions", c8_companions, f64::INFINITY),
        (
            "amalgamation harness witnesses every instance",
            c9_harness,
            300.0,
        ),
        (
            "solver agrees with exhaustive enumeration",
            c10_solver_oracle,
            f64::INFINITY,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = run();
        let secs = t.elapsed().as_secs_f64();
        let r = r.and_then(|d| {
            if secs <= *limit {
                Ok(d)
            } else {
                Err(format!("took {secs:.1}s, limit {limit}s"))
            }
        });
        match r {
            Ok(d) => println!("PASS {:>2} {name} ({secs:.2}s): {d}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {e}", i + 1)
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
