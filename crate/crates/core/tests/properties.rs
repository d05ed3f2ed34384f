//! Property tests against independent brute-force oracles.

use std::collections::BTreeSet;
use std::sync::Arc;

use posmt::amalgamation::{solve, AmalgamationProblem, Class, Kinds};
use posmt::canon::{are_isomorphic, canonical_code};
use posmt::enumerate::enumerate_structures;
use posmt::morphism::{enumerate_homs, HomConstraint, Morphism, MorphismKind};
use posmt::signature::Signature;
use posmt::structure::{decode_tuple, table_len, Elem, Fact, FiniteStructure};
use posmt::text::Workspace;
use posmt::theory::diagram::{diagram, DiagramKind};
use posmt::theory::ops::{is_pc_within, kaiser_hull_bounded, models, pc_models};
use posmt::theory::verdict::{Answer, Budget, Certificate};
use posmt::theory::Theory;
use posmt::zoo;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: u64 = 1_000_000;

fn sig_of(which: u8) -> Arc<Signature> {
    match which % 3 {
        0 => zoo::digraph_signature(),
        1 => zoo::unary_signature(),
        _ => zoo::poset_signature(),
    }
}

fn random_structure(sig: &Arc<Signature>, seed: u64, max: usize) -> FiniteStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max);
    let rels = sig
        .relations()
        .iter()
        .map(|(_, ar)| (0..table_len(n, *ar)).map(|_| rng.gen_bool(0.5)).collect())
        .collect();
    let funs = sig
        .functions()
        .iter()
        .map(|(_, ar)| (0..table_len(n, *ar)).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let consts = sig.constants().iter().map(|_| rng.gen_range(0..n)).collect();
    FiniteStructure::from_tables_numbered(sig.clone(), n, rels, funs, consts).unwrap()
}

fn is_hom(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem]) -> bool {
    let m = |t: &[Elem]| t.iter().map(|&x| map[x]).collect::<Vec<_>>();
    a.facts().iter().all(|f| match f {
        Fact::Relation(r, t) => b.holds(*r, &m(t)),
        Fact::Function(g, args, v) => b.apply(*g, &m(args)) == map[*v],
        Fact::Constant(c, e) => b.constant(*c) == map[*e],
    })
}

fn brute_homs(a: &FiniteStructure, b: &FiniteStructure) -> Vec<Vec<Elem>> {
    (0..b.size().pow(a.size() as u32))
        .map(|c| decode_tuple(c, a.size(), b.size()))
        .filter(|m| is_hom(a, b, m))
        .collect()
}

fn zoo_theories() -> Vec<Theory> {
    let mut v = vec![zoo::t_pos(), zoo::t_g()];
    for n in 1..=3 {
        v.push(zoo::fixed_point_theory(n));
        v.push(zoo::cycle_free_theory(n));
    }
    v
}

#[test]
fn models_equal_filtered_enumeration() {
    for t in zoo_theories() {
        let n = if t.signature().functions().iter().any(|(_, a)| *a == 2) { 2 } else { 3 };
        let got: BTreeSet<Vec<usize>> = models(&t, &Budget::new(n, 6, 3)).unwrap().iter().map(canonical_code).collect();
        let want: BTreeSet<Vec<usize>> = enumerate_structures(t.signature(), n, true, CAP)
            .unwrap()
            .into_iter()
            .filter(|s| t.is_model(s).unwrap())
            .map(|s| canonical_code(&s))
            .collect();
        assert_eq!(got, want, "{}", t.name());
    }
}

#[test]
fn hull_holds_in_every_pc_model() {
    for t in [zoo::t_pos(), zoo::fixed_point_theory(1), zoo::fixed_point_theory(2)] {
        let b = Budget::new(3, 6, 2);
        let h = kaiser_hull_bounded(&t, &b).unwrap();
        assert!(!h.pc_models.is_empty());
        let hull = h.to_theory("hull").unwrap();
        for m in &h.pc_models {
            assert!(hull.is_model(m).unwrap(), "{} in {}", m, t.name());
        }
        let universal = Theory::new("u", t.signature().clone(), h.universal.clone()).unwrap();
        for m in models(&t, &b).unwrap() {
            assert!(universal.is_model(&m).unwrap());
        }
    }
}

#[test]
fn pc_certificates_recheck() {
    let t = zoo::t_pos();
    let b = Budget::new(3, 6, 3);
    for m in models(&t, &b).unwrap() {
        let v = is_pc_within(&m, &t, &b).unwrap();
        match (&v.verdict, &v.certificate) {
            (Answer::No, Certificate::NonImmersion { target, map }) => {
                assert!(t.is_model(target).unwrap());
                let h = Morphism::new(m.clone(), target.clone(), map.clone()).unwrap();
                assert!(h.is_homomorphism());
                assert!(!h.is_immersion().unwrap());
            }
            (Answer::Yes, _) => {
                // every smaller bound agrees
                for n in 1..3 {
                    assert_eq!(is_pc_within(&m, &t, &Budget::new(n, 6, 3)).unwrap().verdict, Answer::Yes);
                }
            }
            other => panic!("{other:?}"),
        }
    }
    let pcs = pc_models(&t, &b).unwrap();
    assert!(pcs.len() == 1 && are_isomorphic(&pcs[0], &zoo::point()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumerate_homs_is_complete(which in 0u8..3, s1 in any::<u64>(), s2 in any::<u64>()) {
        let sig = sig_of(which);
        let (a, b) = (random_structure(&sig, s1, 3), random_structure(&sig, s2, 3));
        let got: Vec<Vec<Elem>> = enumerate_homs(&a, &b, &HomConstraint::default(), MorphismKind::Hom, 3, CAP)
            .unwrap()
            .into_iter()
            .map(|(m, _)| m.map)
            .collect();
        prop_assert_eq!(got, brute_homs(&a, &b));
    }

    #[test]
    fn kinds_form_a_chain(which in 0u8..3, s1 in any::<u64>(), s2 in any::<u64>()) {
        let sig = sig_of(which);
        let (a, b) = (random_structure(&sig, s1, 3), random_structure(&sig, s2, 3));
        for map in brute_homs(&a, &b) {
            let m = Morphism::new(a.clone(), b.clone(), map).unwrap();
            let k = m.classify(b.size()).unwrap();
            prop_assert!(m.is_homomorphism());
            if k >= MorphismKind::Embedding {
                prop_assert!(m.is_embedding());
            }
            if k >= MorphismKind::Immersion {
                prop_assert!(m.is_immersion().unwrap());
                prop_assert!(m.retraction(CAP).unwrap().is_some());
            }
            if k == MorphismKind::StrongImmersion {
                prop_assert!(m.is_strong_immersion(b.size()).unwrap());
            }
        }
    }

    #[test]
    fn kinds_are_closed_under_composition(which in 0u8..3, s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let sig = sig_of(which);
        let (a, b, c) = (random_structure(&sig, s1, 2), random_structure(&sig, s2, 3), random_structure(&sig, s3, 3));
        for f in brute_homs(&a, &b) {
            let f = Morphism::new(a.clone(), b.clone(), f).unwrap();
            let kf = f.classify(3).unwrap();
            for g in brute_homs(&b, &c) {
                let g = Morphism::new(b.clone(), c.clone(), g).unwrap();
                let kg = g.classify(3).unwrap();
                let h = f.then(&g).unwrap();
                prop_assert!(h.is_homomorphism());
                let weaker = kf.min(kg).min(MorphismKind::Immersion);
                prop_assert!(h.classify(3).unwrap() >= weaker, "{} then {}", kf, kg);
            }
        }
    }

    #[test]
    fn diagrams_are_isomorphism_invariant(which in 0u8..2, seed in any::<u64>(), perm_seed in any::<u64>()) {
        let sig = sig_of(which);
        let a = random_structure(&sig, seed, 3);
        let mut perm: Vec<Elem> = a.elements().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(perm_seed);
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let p = a.permuted(&perm);
        prop_assert!(are_isomorphic(&a, &p));
        let b = Budget::new(3, 6, 2);
        for kind in [DiagramKind::TuStar, DiagramKind::TiStar, DiagramKind::DiagPlusStar] {
            prop_assert_eq!(diagram(&a, kind, &b).unwrap().sentences, diagram(&p, kind, &b).unwrap().sentences);
        }
    }

    #[test]
    fn structures_print_and_parse_back(which in 0u8..3, seed in any::<u64>()) {
        let sig = sig_of(which);
        let a = random_structure(&sig, seed, 3);
        let mut w = Workspace::new();
        let sig_name = ["digraph", "unary", "posets"][which as usize % 3];
        let text = format!("structure s over {sig_name} {a}");
        w.load_str("t.posmt", &text).unwrap();
        let b = w.structure("s").unwrap();
        prop_assert_eq!(&a, b);
        prop_assert_eq!(w.render_structure("s", b), text);
    }

    #[test]
    fn solvability_is_monotone(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), strong in any::<bool>()) {
        let sig = zoo::digraph_signature();
        let (a, b, c) = (random_structure(&sig, s1, 2), random_structure(&sig, s2, 2), random_structure(&sig, s3, 2));
        let (Some(f), Some(g)) = (brute_homs(&a, &b).pop(), brute_homs(&a, &c).pop()) else { return Ok(()); };
        let left = Morphism::new(a.clone(), b.clone(), f).unwrap();
        let right = Morphism::new(a.clone(), c.clone(), g).unwrap();
        let kf = left.classify(2).unwrap();
        let kg = right.classify(2).unwrap();
        let answer = |kinds: Kinds, n: usize| {
            let p = AmalgamationProblem::new(left.clone(), right.clone(), kinds, Class::AllStructures, strong, Budget::new(2, n, 3)).unwrap();
            solve(&p).unwrap().answer()
        };
        for out in MorphismKind::ALL {
            let kinds = Kinds::new(kf, kg, out, out);
            let mut seen_yes = false;
            for n in 1..=4 {
                let a = answer(kinds, n);
                prop_assert!(a != Answer::Unknown);
                if seen_yes {
                    prop_assert_eq!(a, Answer::Yes, "lost a witness at N={}", n);
                }
                seen_yes |= a == Answer::Yes;
                if a == Answer::Yes {
                    for weaker in MorphismKind::ALL.into_iter().filter(|k| *k <= out) {
                        prop_assert_eq!(answer(Kinds::new(kf, kg, weaker, weaker), n), Answer::Yes);
                    }
                }
            }
        }
    }
}
