//! Maps between structures and their kinds: homomorphism, embedding,
//! immersion, strong immersion.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::cq_holds;
use crate::engine::matcher::{solutions, Constraints, Matcher, Query};
use crate::error::{Error, Result};
use crate::formula::{pointed_positive_diagram, Atom, Cq, Implication, PosEx, PosQf};
use crate::signature::Signature;
use crate::structure::{expand_with_constants, Elem, FiniteStructure, PointedStructure};

/// Default search node cap.
pub const DEFAULT_NODE_CAP: u64 = 1_000_000;

/// Kinds of maps, ordered by strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MorphismKind {
    Hom,
    Embedding,
    Immersion,
    StrongImmersion,
}

impl MorphismKind {
    pub const ALL: [MorphismKind; 4] = [
        MorphismKind::Hom,
        MorphismKind::Embedding,
        MorphismKind::Immersion,
        MorphismKind::StrongImmersion,
    ];

    /// One-letter code: `h`, `e`, `i`, `s`.
    pub fn letter(self) -> char {
        match self {
            MorphismKind::Hom => 'h',
            MorphismKind::Embedding => 'e',
            MorphismKind::Immersion => 'i',
            MorphismKind::StrongImmersion => 's',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        MorphismKind::ALL.into_iter().find(|k| k.letter() == c)
    }
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::Hom => "hom",
            MorphismKind::Embedding => "embedding",
            MorphismKind::Immersion => "immersion",
            MorphismKind::StrongImmersion => "strong immersion",
        })
    }
}

/// A total map between two structures over the same signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub source: FiniteStructure,
    pub target: FiniteStructure,
    pub map: Vec<Elem>,
}

/// An h-inductive `L(A)`-sentence true in the source and false in the
/// target, with the target tuple refuting it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongWitness {
    pub signature: Signature,
    pub sentence: Implication,
    pub refuting_tuple: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongImmersionCheck {
    pub holds: bool,
    pub bound: usize,
    pub witness: Option<StrongWitness>,
}

/// Evidence that a morphism has a kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum KindCertificate {
    Hom,
    Embedding,
    Immersion { retraction: Vec<Elem> },
    StrongImmersion { retraction: Vec<Elem>, bound: usize },
}

impl KindCertificate {
    pub fn kind(&self) -> MorphismKind {
        match self {
            KindCertificate::Hom => MorphismKind::Hom,
            KindCertificate::Embedding => MorphismKind::Embedding,
            KindCertificate::Immersion { .. } => MorphismKind::Immersion,
            KindCertificate::StrongImmersion { .. } => MorphismKind::StrongImmersion,
        }
    }
}

/// Restrictions on the maps enumerated by [`enumerate_homs`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomConstraint {
    /// Source elements with a prescribed image.
    pub required: Vec<(Elem, Elem)>,
    /// Pairs of source elements whose images must differ.
    pub distinct: Vec<(Elem, Elem)>,
    /// Source elements that may not map to the given target element.
    pub forbidden: Vec<(Elem, Elem)>,
}

impl Morphism {
    pub fn new(source: FiniteStructure, target: FiniteStructure, map: Vec<Elem>) -> Result<Self> {
        if source.signature() != target.signature() {
            return Err(Error::SignatureMismatch("source and target signatures differ".into()));
        }
        if map.len() != source.size() {
            return Err(Error::Precondition(format!(
                "map has {} entries for a source of size {}",
                map.len(),
                source.size()
            )));
        }
        if map.iter().any(|&e| e >= target.size()) {
            return Err(Error::Precondition("map value outside the target".into()));
        }
        Ok(Morphism { source, target, map })
    }

    pub fn identity(s: &FiniteStructure) -> Self {
        Morphism {
            source: s.clone(),
            target: s.clone(),
            map: s.elements().collect(),
        }
    }

    /// `next` after `self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if self.target != next.source {
            return Err(Error::Precondition("maps do not compose".into()));
        }
        Morphism::new(
            self.source.clone(),
            next.target.clone(),
            self.map.iter().map(|&e| next.map[e]).collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        is_injective(&self.map)
    }

    pub fn is_surjective(&self) -> bool {
        let img: BTreeSet<Elem> = self.map.iter().copied().collect();
        img.len() == self.target.size()
    }

    /// Every atomic fact of the source holds of its image.
    pub fn is_homomorphism(&self) -> bool {
        is_hom_map(&self.source, &self.target, &self.map)
    }

    /// Injective, and atomic facts hold in the source exactly when they
    /// hold of the image.
    pub fn is_embedding(&self) -> bool {
        is_embedding_map(&self.source, &self.target, &self.map)
    }

    /// A homomorphism `r` from the target back to the source with
    /// `r(m(a)) = a` for every `a`, if one exists.
    pub fn retraction(&self, cap: u64) -> Result<Option<Vec<Elem>>> {
        retraction(&self.source, &self.target, &self.map, cap)
    }

    /// Immersion test via the retraction criterion.
    pub fn is_immersion(&self) -> Result<bool> {
        Ok(self.is_homomorphism() && self.retraction(DEFAULT_NODE_CAP)?.is_some())
    }

    /// Bounded strong-immersion test, see [`strong_immersion`].
    pub fn strong_immersion(&self, k: usize, cap: u64) -> Result<StrongImmersionCheck> {
        strong_immersion(&self.source, &self.target, &self.map, k, cap)
    }

    pub fn is_strong_immersion(&self, k: usize) -> Result<bool> {
        Ok(self.is_homomorphism() && self.strong_immersion(k, DEFAULT_NODE_CAP)?.holds)
    }

    /// Strongest kind that holds, strong immersion judged at bound `k`.
    pub fn classify(&self, k: usize) -> Result<MorphismKind> {
        Ok(self.certify(k, DEFAULT_NODE_CAP)?.kind())
    }

    pub fn certify(&self, k: usize, cap: u64) -> Result<KindCertificate> {
        certify(&self.source, &self.target, &self.map, k, cap)
    }

    pub fn map_names(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(a, &b)| (self.source.name(a).to_string(), self.target.name(b).to_string()))
            .collect()
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map_names().iter().map(|(a, b)| format!("{a} -> {b}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

pub(crate) fn is_injective(map: &[Elem]) -> bool {
    let set: BTreeSet<Elem> = map.iter().copied().collect();
    set.len() == map.len()
}

pub(crate) fn is_hom_map(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem]) -> bool {
    a.facts().iter().all(|fact| b.fact_holds(&image_fact(fact, map)))
}

fn image_fact(fact: &crate::structure::Fact, map: &[Elem]) -> crate::structure::Fact {
    use crate::structure::Fact;
    match fact {
        Fact::Relation(r, t) => Fact::Relation(*r, t.iter().map(|&e| map[e]).collect()),
        Fact::Function(f, args, v) => Fact::Function(*f, args.iter().map(|&e| map[e]).collect(), map[*v]),
        Fact::Constant(c, v) => Fact::Constant(*c, map[*v]),
    }
}

pub(crate) fn is_embedding_map(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem]) -> bool {
    if !is_injective(map) || !is_hom_map(a, b, map) {
        return false;
    }
    // relations reflect; function and constant facts reflect automatically
    // for injective homomorphisms since both sides are total
    let sig = a.signature();
    let n = a.size();
    for (r, (_, arity)) in sig.relations().iter().enumerate() {
        for code in 0..crate::structure::table_len(n, *arity) {
            let t = crate::structure::decode_tuple(code, *arity, n);
            let img: Vec<Elem> = t.iter().map(|&e| map[e]).collect();
            if b.holds(r, &img) && !a.holds(r, &t) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn retraction(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem], cap: u64) -> Result<Option<Vec<Elem>>> {
    let mut fixed = Vec::new();
    for (x, &y) in map.iter().enumerate() {
        if let Some(&(_, prev)) = fixed.iter().find(|(v, _)| *v == y) {
            if prev != x {
                return Ok(None);
            }
            continue;
        }
        fixed.push((y, x));
    }
    let q = Query::diagram(b);
    let c = Constraints {
        fixed,
        ..Default::default()
    };
    crate::engine::matcher::find(&q, a, &c, cap)
}

pub(crate) fn certify(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem], k: usize, cap: u64) -> Result<KindCertificate> {
    if !is_hom_map(a, b, map) {
        return Err(Error::NotAHomomorphism);
    }
    if !is_embedding_map(a, b, map) {
        return Ok(KindCertificate::Hom);
    }
    let Some(r) = retraction(a, b, map, cap)? else {
        return Ok(KindCertificate::Embedding);
    };
    if strong_immersion(a, b, map, k, cap)?.holds {
        Ok(KindCertificate::StrongImmersion { retraction: r, bound: k })
    } else {
        Ok(KindCertificate::Immersion { retraction: r })
    }
}

/// Whether the target satisfies every h-inductive `L(A)`-sentence of the
/// following shape that the source satisfies: the premise is the positive
/// diagram of a subset `S` of the target with `|S| <= k`, read in `L(A)`
/// (each `m(a)` in `S` named by the constant for `a`); the conclusion is
/// the disjunction, over tuples of the source satisfying the premise, of
/// the conjunction of the pointed diagrams of source subsets of size at
/// most `k` containing the tuple.
///
/// The source satisfies every such sentence by construction. A sentence
/// the target refutes is returned as the witness.
pub fn strong_immersion(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem], k: usize, cap: u64) -> Result<StrongImmersionCheck> {
    if k == 0 {
        return Err(Error::Precondition("bound k must be at least 1".into()));
    }
    let exp = expand_with_constants(a, "c_")?;
    let la = exp.signature.clone();
    let a_exp = exp.structure;
    let b_exp = b.expand_constants(la.clone(), map)?;
    for s in subsets_up_to(b.size(), k) {
        let premise = pointed_positive_diagram(&PointedStructure::new(b_exp.clone(), s.clone())?, &s.iter().copied().collect())?;
        let q = Query::from_cq(&la, &premise)?;
        let m = s.len();
        let in_a: Vec<Vec<Elem>> = solutions(&q, &a_exp, &Constraints::default(), cap)?
            .into_iter()
            .map(|v| v[..m].to_vec())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let types: Vec<Vec<Cq>> = in_a
            .iter()
            .map(|t| anchored_type(&a_exp, t, k))
            .collect::<Result<_>>()?;
        let in_b: BTreeSet<Vec<Elem>> = solutions(&q, &b_exp, &Constraints::default(), cap)?
            .into_iter()
            .map(|v| v[..m].to_vec())
            .collect();
        for tuple in in_b {
            let mut covered = false;
            for ty in &types {
                let mut all = true;
                for d in ty {
                    if !cq_holds(&b_exp, d, &tuple, cap)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    covered = true;
                    break;
                }
            }
            if !covered {
                let disjuncts = merged_disjuncts(&premise.free, &types);
                let (premise, disjuncts) = minimize_witness(&la, &a_exp, &b_exp, premise, disjuncts, &tuple, cap)?;
                return Ok(StrongImmersionCheck {
                    holds: false,
                    bound: k,
                    witness: Some(StrongWitness {
                        signature: (*la).clone(),
                        sentence: witness_sentence(&premise, &disjuncts),
                        refuting_tuple: tuple,
                    }),
                });
            }
        }
    }
    Ok(StrongImmersionCheck {
        holds: true,
        bound: k,
        witness: None,
    })
}

/// Pointed diagrams of the subsets of size at most `k` containing `tuple`.
pub(crate) fn anchored_type(s: &FiniteStructure, tuple: &[Elem], k: usize) -> Result<Vec<Cq>> {
    let img: BTreeSet<Elem> = tuple.iter().copied().collect();
    let p = PointedStructure::new(s.clone(), tuple.to_vec())?;
    let mut out = Vec::new();
    for extra in subsets_up_to(s.size(), k.saturating_sub(img.len())) {
        let mut set = img.clone();
        set.extend(extra.iter().copied());
        if extra.iter().any(|e| img.contains(e)) || set.len() > k.max(img.len()) {
            continue;
        }
        let d = pointed_positive_diagram(&p, &set)?;
        if !out.contains(&d) {
            out.push(d);
        }
    }
    if out.is_empty() {
        out.push(pointed_positive_diagram(&p, &img)?);
    }
    let mut out: Vec<(Vec<String>, Cq)> = out.into_iter().map(canonical_cq).collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out.dedup_by(|x, y| x.0 == y.0);
    Ok(out.into_iter().map(|(_, c)| c).collect())
}

/// Renames the existential variables of `cq` so that its sorted rendered
/// atoms are lexicographically least, and sorts the atoms. Isomorphic
/// anchored types thus print identically. Returns the rendering as a key.
pub(crate) fn canonical_cq(cq: Cq) -> (Vec<String>, Cq) {
    let tmp: Vec<String> = (0..cq.exists.len()).map(|i| format!("_t{i}")).collect();
    let mut atoms = cq.atoms.clone();
    for (v, t) in cq.exists.iter().zip(&tmp) {
        atoms = atoms.iter().map(|a| rename_atom(a, v, t)).collect();
    }
    let names: Vec<String> = (1..=cq.exists.len()).map(|i| format!("_e{i}")).collect();
    let mut best: Option<(Vec<String>, Vec<Atom>)> = None;
    for perm in crate::theory::patterns::permutations(tmp.len()) {
        let mut cand = atoms.clone();
        for (i, &j) in perm.iter().enumerate() {
            cand = cand.iter().map(|a| rename_atom(a, &tmp[i], &names[j])).collect();
        }
        let mut keyed: Vec<(String, Atom)> = cand.into_iter().map(|a| (a.to_string(), a)).collect();
        keyed.sort_by(|x, y| x.0.cmp(&y.0));
        keyed.dedup_by(|x, y| x.0 == y.0);
        let (key, cand): (Vec<String>, Vec<Atom>) = keyed.into_iter().unzip();
        if best.as_ref().map_or(true, |(k, _)| key < *k) {
            best = Some((key, cand));
        }
    }
    let (key, atoms) = best.expect("at least one permutation");
    let cq = Cq {
        free: cq.free,
        exists: names,
        atoms,
    };
    (key, prune_exists(cq))
}

/// One merged disjunct per distinct type, in a canonical order.
pub(crate) fn merged_disjuncts(free: &[String], types: &[Vec<Cq>]) -> Vec<Cq> {
    let mut keyed: Vec<(Vec<String>, &Vec<Cq>)> = types
        .iter()
        .map(|ty| (ty.iter().flat_map(|d| d.atoms.iter().map(|a| a.to_string())).chain(["|".to_string()]).collect(), ty))
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    keyed.dedup_by(|x, y| x.0 == y.0);
    let mut counter = 0;
    keyed.into_iter().map(|(_, ty)| merge_type(free, ty, &mut counter)).collect()
}

/// Nonempty subsets with at most `k` elements of `0..n`, by size then
/// lexicographically; the empty set is included first.
pub(crate) fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<Elem>> {
    let mut out = vec![Vec::new()];
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if cur.len() == k {
            return;
        }
        for e in start..n {
            cur.push(e);
            out.push(cur.clone());
            rec(n, k, e + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
    out.into_iter().filter(|s| !s.is_empty()).collect()
}

fn rename_atom(a: &Atom, from: &str, to: &str) -> Atom {
    PosQf::Atom(a.clone()).rename(from, to).atoms()[0].clone()
}

/// Conjunction of the diagrams of one type, existentials renamed apart.
pub(crate) fn merge_type(free: &[String], ty: &[Cq], counter: &mut usize) -> Cq {
    let mut out = Cq {
        free: free.to_vec(),
        exists: Vec::new(),
        atoms: Vec::new(),
    };
    for d in ty {
        let mut atoms = d.atoms.clone();
        for v in &d.exists {
            *counter += 1;
            let fresh = format!("z{counter}");
            atoms = atoms.iter().map(|a| rename_atom(a, v, &fresh)).collect();
            out.exists.push(fresh);
        }
        for a in atoms {
            if !out.atoms.contains(&a) {
                out.atoms.push(a);
            }
        }
    }
    out
}

fn prune_exists(mut cq: Cq) -> Cq {
    let used: BTreeSet<String> = cq.atoms.iter().flat_map(|a| a.vars()).collect();
    cq.exists.retain(|v| used.contains(v));
    cq
}

/// The source satisfies `premise -> disjuncts`.
fn valid_in(la: &Signature, s: &FiniteStructure, premise: &Cq, disjuncts: &[Cq], cap: u64) -> Result<bool> {
    let q = Query::from_cq(la, premise)?;
    let m = premise.free.len();
    for t in solutions(&q, s, &Constraints::default(), cap)? {
        let mut ok = false;
        for d in disjuncts {
            if cq_holds(s, d, &t[..m], cap)? {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The target refutes `premise -> disjuncts` at `tuple`.
fn refuted_at(s: &FiniteStructure, premise: &Cq, disjuncts: &[Cq], tuple: &[Elem], cap: u64) -> Result<bool> {
    if !cq_holds(s, premise, tuple, cap)? {
        return Ok(false);
    }
    for d in disjuncts {
        if cq_holds(s, d, tuple, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedily drops disjuncts and atoms while the sentence stays true in
/// the source and false at `tuple` in the target.
fn minimize_witness(
    la: &Signature,
    a: &FiniteStructure,
    b: &FiniteStructure,
    mut premise: Cq,
    mut disjuncts: Vec<Cq>,
    tuple: &[Elem],
    cap: u64,
) -> Result<(Cq, Vec<Cq>)> {
    let good = |p: &Cq, ds: &[Cq]| -> Result<bool> { Ok(refuted_at(b, p, ds, tuple, cap)? && valid_in(la, a, p, ds, cap)?) };
    let mut i = 0;
    while i < disjuncts.len() {
        let mut ds = disjuncts.clone();
        ds.remove(i);
        if good(&premise, &ds)? {
            disjuncts = ds;
        } else {
            i += 1;
        }
    }
    let mut i = 0;
    while i < premise.atoms.len() {
        let mut p = premise.clone();
        p.atoms.remove(i);
        if good(&p, &disjuncts)? {
            premise = p;
        } else {
            i += 1;
        }
    }
    for j in 0..disjuncts.len() {
        let mut i = 0;
        while i < disjuncts[j].atoms.len() {
            let mut ds = disjuncts.clone();
            ds[j].atoms.remove(i);
            ds[j] = prune_exists(ds[j].clone());
            if good(&premise, &ds)? {
                disjuncts = ds;
            } else {
                i += 1;
            }
        }
    }
    Ok((premise, disjuncts))
}

pub(crate) fn conj(atoms: &[Atom]) -> PosQf {
    match atoms {
        [] => PosQf::Atom(Atom::True),
        [a] => PosQf::Atom(a.clone()),
        _ => PosQf::And(atoms.iter().cloned().map(PosQf::Atom).collect()),
    }
}

pub(crate) fn witness_sentence(premise: &Cq, disjuncts: &[Cq]) -> Implication {
    let vars: Vec<String> = disjuncts.iter().flat_map(|d| d.exists.iter().cloned()).collect();
    let conclusion = match disjuncts {
        [] => PosEx::bottom(),
        [d] => PosEx::new(vars, conj(&d.atoms)),
        _ => PosEx::new(vars, PosQf::Or(disjuncts.iter().map(|d| conj(&d.atoms)).collect())),
    };
    Implication {
        vars: premise.free.clone(),
        premise: PosEx::qf(conj(&premise.atoms)),
        conclusion,
    }
}

/// Homomorphisms from `a` to `b` satisfying `constraint` and certified of at
/// least `kind`, sorted by map. Strong immersion is judged at bound `k`.
pub fn enumerate_homs(
    a: &FiniteStructure,
    b: &FiniteStructure,
    constraint: &HomConstraint,
    kind: MorphismKind,
    k: usize,
    cap: u64,
) -> Result<Vec<(Morphism, KindCertificate)>> {
    let maps = hom_maps(a, b, constraint, kind > MorphismKind::Hom, cap)?;
    let mut out = Vec::new();
    for map in maps {
        let cert = certify(a, b, &map, k, cap)?;
        if cert.kind() >= kind {
            out.push((Morphism::new(a.clone(), b.clone(), map)?, cert));
        }
    }
    Ok(out)
}

/// Raw homomorphism maps, sorted.
pub(crate) fn hom_maps(
    a: &FiniteStructure,
    b: &FiniteStructure,
    constraint: &HomConstraint,
    injective: bool,
    cap: u64,
) -> Result<Vec<Vec<Elem>>> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch("source and target signatures differ".into()));
    }
    let q = Query::diagram(a);
    let c = Constraints {
        fixed: constraint.required.clone(),
        forbidden: constraint.forbidden.clone(),
        distinct: constraint.distinct.clone(),
        injective,
    };
    let mut out = solutions(&q, b, &c, cap)?;
    out.sort();
    Ok(out)
}

/// Whether some homomorphism `a -> b` exists.
pub fn hom_exists(a: &FiniteStructure, b: &FiniteStructure, cap: u64) -> Result<bool> {
    let q = Query::diagram(a);
    let mut found = false;
    Matcher::run(&q, b, &Constraints::default(), cap, &mut |_| {
        found = true;
        false
    })?;
    Ok(found)
}

/// Strongest kind, with strong immersion judged at bound `k`.
pub fn classify_morphism(m: &Morphism, k: usize) -> Result<MorphismKind> {
    m.classify(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::eval_sentence;
    use crate::zoo;

    fn m(a: &FiniteStructure, b: &FiniteStructure, map: &[Elem]) -> Morphism {
        Morphism::new(a.clone(), b.clone(), map.to_vec()).unwrap()
    }

    #[test]
    fn homomorphism_examples() {
        let c = zoo::chain2();
        assert!(Morphism::identity(&c).is_homomorphism());
        assert!(m(&c, &zoo::point(), &[0, 0]).is_homomorphism());
        assert!(m(&zoo::antichain2(), &c, &[0, 1]).is_homomorphism());
        assert!(!m(&c, &c, &[1, 0]).is_homomorphism());
    }

    #[test]
    fn embedding_examples() {
        let c = zoo::chain2();
        assert!(m(&zoo::point(), &c, &[0]).is_embedding());
        assert!(!m(&c, &zoo::point(), &[0, 0]).is_embedding());
        assert!(!m(&zoo::antichain2(), &c, &[0, 1]).is_embedding());
    }

    #[test]
    fn immersion_examples() {
        let c = zoo::chain2();
        assert!(Morphism::identity(&c).is_immersion().unwrap());
        assert!(!m(&c, &zoo::point(), &[0, 0]).is_immersion().unwrap());
        for end in 0..2 {
            let inc = m(&zoo::point(), &c, &[end]);
            let r = inc.retraction(1000).unwrap().unwrap();
            assert_eq!(r, vec![0, 0]);
            assert!(inc.is_immersion().unwrap());
        }
    }

    #[test]
    fn point_into_chain_is_not_strong() {
        let c = zoo::chain2();
        let inc = m(&zoo::point(), &c, &[0]);
        let check = inc.strong_immersion(2, 1000).unwrap();
        assert!(!check.holds);
        let w = check.witness.unwrap();
        assert_eq!(w.refuting_tuple, vec![1]);
        assert_eq!(w.sentence.to_string(), "forall x. true -> c_x = x");
        // the witness is true in the source and false in the target
        let sig = std::sync::Arc::new(w.signature.clone());
        let a = zoo::point().expand_constants(sig.clone(), &[0]).unwrap();
        let b = c.expand_constants(sig, &[0]).unwrap();
        let f = w.sentence.to_formula();
        assert!(eval_sentence(&a, &f).unwrap());
        assert!(!eval_sentence(&b, &f).unwrap());
        assert_eq!(inc.classify(2).unwrap(), MorphismKind::Immersion);
    }

    #[test]
    fn classification_examples() {
        let c = zoo::chain2();
        assert_eq!(Morphism::identity(&c).classify(2).unwrap(), MorphismKind::StrongImmersion);
        assert_eq!(m(&c, &zoo::point(), &[0, 0]).classify(1).unwrap(), MorphismKind::Hom);
        assert!(matches!(m(&c, &c, &[1, 0]).classify(2), Err(Error::NotAHomomorphism)));
    }

    #[test]
    fn hom_counts() {
        let c = zoo::chain2();
        let all = enumerate_homs(&c, &c, &HomConstraint::default(), MorphismKind::Hom, 2, 1000).unwrap();
        let maps: Vec<_> = all.iter().map(|(m, _)| m.map.clone()).collect();
        assert_eq!(maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        let p = zoo::point();
        assert_eq!(enumerate_homs(&p, &p, &HomConstraint::default(), MorphismKind::Hom, 1, 100).unwrap().len(), 1);
        let homs = enumerate_homs(&zoo::two_cycle(), &zoo::singleton_loop(), &HomConstraint::default(), MorphismKind::Hom, 1, 100).unwrap();
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].0.map, vec![0, 0]);
    }

    #[test]
    fn constraints_restrict_maps() {
        let c = zoo::chain3();
        let cons = HomConstraint {
            required: vec![(0, 0)],
            distinct: vec![(1, 2)],
            forbidden: vec![(2, 1)],
        };
        let maps: Vec<_> = enumerate_homs(&c, &c, &cons, MorphismKind::Hom, 1, 1000)
            .unwrap()
            .into_iter()
            .map(|(m, _)| m.map)
            .collect();
        assert_eq!(maps, vec![vec![0, 0, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn subsets() {
        assert_eq!(
            subsets_up_to(3, 2),
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]
        );
    }
}
