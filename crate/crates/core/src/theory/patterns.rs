//! Patterns: flat conjunctive queries with at most `k` variables, one per
//! isomorphism class. They are the finite stand-ins for the bounded sets
//! of positive, h-universal and h-inductive sentences.

use std::collections::{BTreeSet, HashMap};

use crate::engine::cq_holds;
use crate::engine::matcher::{find, solutions, Constraints, Query};
use crate::error::{Error, Result};
use crate::formula::{Atom, Cq, Implication, PosEx, Term};
use crate::morphism::{anchored_type, conj, merged_disjuncts, witness_sentence};
use crate::signature::Signature;
use crate::structure::{decode_tuple, table_len, Elem, Fact, FiniteStructure};

/// A conjunction of facts over variables `0..size`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Pattern {
    pub size: usize,
    pub facts: Vec<Fact>,
}

/// `x` for a single variable, else `x1, x2, ...`.
pub(crate) fn var_names(m: usize) -> Vec<String> {
    if m == 1 {
        vec!["x".to_string()]
    } else {
        (1..=m).map(|i| format!("x{i}")).collect()
    }
}

pub(crate) fn permutations(m: usize) -> Vec<Vec<Elem>> {
    fn rec(cur: &mut Vec<Elem>, used: &mut Vec<bool>, out: &mut Vec<Vec<Elem>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..used.len() {
            if !used[e] {
                used[e] = true;
                cur.push(e);
                rec(cur, used, out);
                cur.pop();
                used[e] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

fn permute(f: &Fact, p: &[Elem]) -> Fact {
    match f {
        Fact::Relation(r, t) => Fact::Relation(*r, t.iter().map(|&e| p[e]).collect()),
        Fact::Function(g, args, v) => Fact::Function(*g, args.iter().map(|&e| p[e]).collect(), p[*v]),
        Fact::Constant(c, v) => Fact::Constant(*c, p[*v]),
    }
}

impl Pattern {
    pub(crate) fn query(&self) -> Query {
        Query::of_facts(self.size, self.facts.clone())
    }

    /// Whether the pattern maps into `s`, i.e. its existential closure
    /// holds there.
    pub(crate) fn holds_in(&self, s: &FiniteStructure, cap: u64) -> Result<bool> {
        Ok(find(&self.query(), s, &Constraints::default(), cap)?.is_some())
    }

    /// Tuples of `s` satisfying the pattern.
    pub(crate) fn tuples(&self, s: &FiniteStructure, cap: u64) -> Result<Vec<Vec<Elem>>> {
        let mut out = solutions(&self.query(), s, &Constraints::default(), cap)?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub(crate) fn atoms(&self, sig: &Signature) -> Vec<Atom> {
        let names = var_names(self.size);
        let var = |e: &Elem| Term::Var(names[*e].clone());
        self.facts
            .iter()
            .map(|f| match f {
                Fact::Relation(r, t) => Atom::Rel(sig.relations()[*r].0.clone(), t.iter().map(var).collect()),
                Fact::Function(g, args, v) => {
                    Atom::Eq(Term::App(sig.functions()[*g].0.clone(), args.iter().map(var).collect()), var(v))
                }
                Fact::Constant(c, v) => Atom::Eq(Term::Const(sig.constants()[*c].clone()), var(v)),
            })
            .collect()
    }

    /// The pattern with every variable free.
    pub(crate) fn open_cq(&self, sig: &Signature) -> Cq {
        Cq {
            free: var_names(self.size),
            exists: Vec::new(),
            atoms: self.atoms(sig),
        }
    }

    /// Existential closure.
    pub(crate) fn positive(&self, sig: &Signature) -> PosEx {
        PosEx::new(var_names(self.size), conj(&self.atoms(sig)))
    }

    fn canonical(&self) -> Pattern {
        permutations(self.size)
            .iter()
            .map(|p| {
                let mut facts: Vec<Fact> = self.facts.iter().map(|f| permute(f, p)).collect();
                facts.sort();
                facts
            })
            .min()
            .map(|facts| Pattern { size: self.size, facts })
            .expect("at least one permutation")
    }
}

/// Every pattern with `1..=k` variables over `sig`, up to renaming, ordered
/// by size and then by facts. Fails when the raw count exceeds `cap`.
pub(crate) fn patterns(sig: &Signature, k: usize, cap: u64) -> Result<Vec<Pattern>> {
    let mut out = BTreeSet::new();
    for m in 1..=k {
        // digits: constants and function cells take "undefined" or a value,
        // relation cells are absent or present
        let mut cells: Vec<(Fact, usize)> = Vec::new();
        for c in 0..sig.constants().len() {
            cells.push((Fact::Constant(c, 0), m + 1));
        }
        for (g, (_, a)) in sig.functions().iter().enumerate() {
            for code in 0..table_len(m, *a) {
                cells.push((Fact::Function(g, decode_tuple(code, *a, m), 0), m + 1));
            }
        }
        for (r, (_, a)) in sig.relations().iter().enumerate() {
            for code in 0..table_len(m, *a) {
                cells.push((Fact::Relation(r, decode_tuple(code, *a, m)), 2));
            }
        }
        let total = cells
            .iter()
            .try_fold(1u64, |acc, (_, b)| acc.checked_mul(*b as u64))
            .filter(|t| *t <= cap)
            .ok_or_else(|| Error::BudgetExhausted(format!("more than {cap} patterns with {m} variables")))?;
        let mut digits = vec![0usize; cells.len()];
        for _ in 0..total {
            let mut facts = Vec::new();
            for ((cell, _), &d) in cells.iter().zip(&digits) {
                if d == 0 {
                    continue;
                }
                facts.push(match cell {
                    Fact::Constant(c, _) => Fact::Constant(*c, d - 1),
                    Fact::Function(g, args, _) => Fact::Function(*g, args.clone(), d - 1),
                    Fact::Relation(r, t) => Fact::Relation(*r, t.clone()),
                });
            }
            out.insert(Pattern { size: m, facts }.canonical());
            for (d, (_, base)) in digits.iter_mut().zip(&cells) {
                *d += 1;
                if *d < *base {
                    break;
                }
                *d = 0;
            }
        }
    }
    let mut v: Vec<Pattern> = out.into_iter().collect();
    v.sort_by(|a, b| a.size.cmp(&b.size).then_with(|| a.facts.cmp(&b.facts)));
    Ok(v)
}

/// Indices of the patterns that hold in `s`.
pub(crate) fn true_patterns(pats: &[Pattern], s: &FiniteStructure, cap: u64) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for (i, p) in pats.iter().enumerate() {
        if p.holds_in(s, cap)? {
            out.insert(i);
        }
    }
    Ok(out)
}

/// Anchored types of the tuples of `a`, memoised.
pub(crate) struct Types<'a> {
    s: &'a FiniteStructure,
    k: usize,
    memo: HashMap<Vec<Elem>, Vec<Cq>>,
}

impl<'a> Types<'a> {
    pub(crate) fn new(s: &'a FiniteStructure, k: usize) -> Self {
        Types { s, k, memo: HashMap::new() }
    }

    pub(crate) fn get(&mut self, tuple: &[Elem]) -> Result<&Vec<Cq>> {
        if !self.memo.contains_key(tuple) {
            let t = anchored_type(self.s, tuple, self.k)?;
            self.memo.insert(tuple.to_vec(), t);
        }
        Ok(&self.memo[tuple])
    }
}

/// Whether every diagram of `ty` holds at `tuple` in `b`.
fn realizes(b: &FiniteStructure, ty: &[Cq], tuple: &[Elem], cap: u64) -> Result<bool> {
    for d in ty {
        if !cq_holds(b, d, tuple, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The h-inductive sentence with premise `p` that is strongest among those
/// of bounded size true in `a`: its conclusion lists the anchored types of
/// the tuples of `a` satisfying `p`.
pub(crate) fn strongest_sentence(p: &Pattern, a: &FiniteStructure, k: usize, cap: u64) -> Result<Implication> {
    common_strongest_sentence(p, std::slice::from_ref(a), a.signature(), k, cap)
}

/// As [`strongest_sentence`] for the sentences true in every structure of
/// `sources`; with no sources the conclusion is `false`.
pub(crate) fn common_strongest_sentence(
    p: &Pattern,
    sources: &[FiniteStructure],
    sig: &Signature,
    k: usize,
    cap: u64,
) -> Result<Implication> {
    let premise = p.open_cq(sig);
    let mut tys = Vec::new();
    for a in sources {
        let mut types = Types::new(a, k);
        for t in p.tuples(a, cap)? {
            tys.push(types.get(&t)?.clone());
        }
    }
    Ok(witness_sentence(&premise, &merged_disjuncts(&premise.free, &tys)))
}

/// A pattern and a tuple of `b` at which `b` violates the strongest
/// sentence of `a` with that premise, if any. `b` satisfies every such
/// sentence exactly when it satisfies every h-inductive sentence of
/// bounded size true in `a`.
pub(crate) fn ti_star_violation(
    pats: &[Pattern],
    a: &FiniteStructure,
    b: &FiniteStructure,
    k: usize,
    cap: u64,
) -> Result<Option<(usize, Vec<Elem>)>> {
    let mut types = Types::new(a, k);
    for (i, p) in pats.iter().enumerate() {
        let in_a = p.tuples(a, cap)?;
        for tb in p.tuples(b, cap)? {
            let mut covered = false;
            for ta in &in_a {
                let ty = types.get(ta)?.clone();
                if realizes(b, &ty, &tb, cap)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Ok(Some((i, tb)));
            }
        }
    }
    Ok(None)
}

/// Like [`ti_star_violation`] with the conclusion ranging over the tuples
/// of every structure in `sources`.
pub(crate) fn common_ti_violation(
    pats: &[Pattern],
    sources: &[FiniteStructure],
    b: &FiniteStructure,
    k: usize,
    cap: u64,
) -> Result<Option<(usize, Vec<Elem>)>> {
    let mut types: Vec<Types> = sources.iter().map(|s| Types::new(s, k)).collect();
    for (i, p) in pats.iter().enumerate() {
        let ins: Vec<Vec<Vec<Elem>>> = sources.iter().map(|s| p.tuples(s, cap)).collect::<Result<_>>()?;
        for tb in p.tuples(b, cap)? {
            let mut covered = false;
            'src: for (j, in_s) in ins.iter().enumerate() {
                for ta in in_s {
                    let ty = types[j].get(ta)?.clone();
                    if realizes(b, &ty, &tb, cap)? {
                        covered = true;
                        break 'src;
                    }
                }
            }
            if !covered {
                return Ok(Some((i, tb)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_structures;
    use crate::formula::eval_sentence;
    use crate::zoo;

    #[test]
    fn pattern_counts_match_structure_counts() {
        // relational patterns are exactly the relational structures
        let sig = zoo::digraph_signature();
        let pats = patterns(&sig, 3, 1_000_000).unwrap();
        assert_eq!(pats.len(), enumerate_structures(&sig, 3, true, 1_000_000).unwrap().len());
        // partial unary functions: 2 on one point, 6 on two points
        let pats = patterns(&zoo::unary_signature(), 2, 1000).unwrap();
        assert_eq!(pats.iter().filter(|p| p.size == 1).count(), 2);
        assert_eq!(pats.iter().filter(|p| p.size == 2).count(), 6);
    }

    #[test]
    fn pattern_truth_matches_evaluation() {
        let sig = zoo::unary_signature();
        let pats = patterns(&sig, 2, 1000).unwrap();
        for s in enumerate_structures(&sig, 3, true, 10_000).unwrap() {
            for p in &pats {
                let f = p.positive(&sig).to_formula();
                assert_eq!(p.holds_in(&s, 1000).unwrap(), eval_sentence(&s, &f).unwrap());
            }
        }
    }

    #[test]
    fn strongest_sentences_hold_in_their_source() {
        let a = zoo::chain2();
        let sig = a.signature().clone();
        for p in patterns(&sig, 2, 1000).unwrap() {
            let imp = strongest_sentence(&p, &a, 2, 1000).unwrap();
            assert!(eval_sentence(&a, &imp.to_formula()).unwrap(), "{imp}");
        }
    }

    #[test]
    fn ti_star_of_the_loop_forces_a_loop() {
        let pats = patterns(&zoo::unary_signature(), 2, 1000).unwrap();
        let a = zoo::singleton_loop();
        assert!(ti_star_violation(&pats, &a, &a, 2, 1000).unwrap().is_none());
        assert!(ti_star_violation(&pats, &a, &zoo::two_cycle(), 2, 1000).unwrap().is_some());
    }
}
