//! Diagrams and the bounded sentence sets extracted from a structure.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::patterns::{patterns, strongest_sentence};
use super::verdict::Budget;
use super::{Sentence, Theory};
use crate::error::{Error, Result};
use crate::formula::{Atom, HInductiveSentence, HUniversalSentence, PosEx, PosQf, Term};
use crate::signature::Signature;
use crate::structure::{decode_tuple, expand_subset_with_constants, expand_with_constants, table_len, Elem, Fact, FiniteStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagramKind {
    /// Atomic and negated atomic facts over named elements.
    Diag,
    /// Atomic facts over named elements.
    DiagPlus,
    /// Positive sentences true in the structure.
    DiagPlusStar,
    /// h-universal sentences with every element named.
    Tu,
    /// h-inductive sentences with every element named.
    Ti,
    /// h-universal sentences without parameters.
    TuStar,
    /// h-inductive sentences without parameters.
    TiStar,
    /// h-universal sentences naming a subset.
    TuRelative,
    /// h-inductive sentences naming a subset.
    TiRelative,
}

impl DiagramKind {
    pub const ALL: [DiagramKind; 9] = [
        DiagramKind::Diag,
        DiagramKind::DiagPlus,
        DiagramKind::DiagPlusStar,
        DiagramKind::Tu,
        DiagramKind::Ti,
        DiagramKind::TuStar,
        DiagramKind::TiStar,
        DiagramKind::TuRelative,
        DiagramKind::TiRelative,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DiagramKind::Diag => "diag",
            DiagramKind::DiagPlus => "diag-plus",
            DiagramKind::DiagPlusStar => "diag-plus-star",
            DiagramKind::Tu => "tu",
            DiagramKind::Ti => "ti",
            DiagramKind::TuStar => "tu-star",
            DiagramKind::TiStar => "ti-star",
            DiagramKind::TuRelative => "tu-relative",
            DiagramKind::TiRelative => "ti-relative",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        DiagramKind::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// Whether the kind depends on the bound `k`.
    pub fn is_bounded(self) -> bool {
        !matches!(self, DiagramKind::Diag | DiagramKind::DiagPlus)
    }
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finite list of sentences extracted from a structure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramSet {
    pub kind: DiagramKind,
    pub signature: Signature,
    pub sentences: Vec<Sentence>,
    /// The bound `k` for bounded kinds.
    pub bound: Option<usize>,
}

impl DiagramSet {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn to_theory(&self, name: &str) -> Result<Theory> {
        Theory::new(name, Arc::new(self.signature.clone()), self.sentences.clone())
    }
}

/// Prefix of the constants naming elements in diagrams.
pub const DIAGRAM_PREFIX: &str = "c";

/// `s` expanded by constants `<prefix><name>` for the elements of `subset`.
pub fn name_elements(s: &FiniteStructure, subset: &BTreeSet<Elem>, prefix: &str) -> Result<(Arc<Signature>, FiniteStructure)> {
    let list: Vec<Elem> = subset.iter().copied().collect();
    let e = expand_subset_with_constants(s, &list, prefix)?;
    Ok((e.signature, e.structure))
}

fn fact_atom(sig: &Signature, names: &[String], f: &Fact) -> Atom {
    let c = |e: &Elem| Term::Const(names[*e].clone());
    match f {
        Fact::Relation(r, t) => Atom::Rel(sig.relations()[*r].0.clone(), t.iter().map(c).collect()),
        Fact::Function(g, args, v) => Atom::Eq(Term::App(sig.functions()[*g].0.clone(), args.iter().map(c).collect()), c(v)),
        Fact::Constant(k, v) => Atom::Eq(Term::Const(sig.constants()[*k].clone()), c(v)),
    }
}

fn positive_atom(a: Atom) -> Sentence {
    Sentence::Positive(PosEx::qf(PosQf::Atom(a)))
}

fn negated_atom(a: Atom) -> Sentence {
    Sentence::HUniversal(HUniversalSentence {
        negated: PosEx::qf(PosQf::Atom(a)),
    })
}

/// `Diag+(s)` (or `Diag(s)` with `negative`) with elements named by
/// `<prefix><name>`.
pub fn atomic_diagram(s: &FiniteStructure, prefix: &str, negative: bool) -> Result<DiagramSet> {
    let exp = expand_with_constants(s, prefix)?;
    let (esig, names) = (exp.signature, exp.constant_names);
    let sig = s.signature();
    let n = s.size();
    let mut sentences: Vec<Sentence> = s.facts().iter().map(|f| positive_atom(fact_atom(sig, &names, f))).collect();
    if negative {
        for (r, (_, a)) in sig.relations().iter().enumerate() {
            for code in 0..table_len(n, *a) {
                let t = decode_tuple(code, *a, n);
                if !s.holds(r, &t) {
                    sentences.push(negated_atom(fact_atom(sig, &names, &Fact::Relation(r, t))));
                }
            }
        }
        for (g, (_, a)) in sig.functions().iter().enumerate() {
            for code in 0..table_len(n, *a) {
                let args = decode_tuple(code, *a, n);
                let val = s.apply(g, &args);
                for v in (0..n).filter(|&v| v != val) {
                    sentences.push(negated_atom(fact_atom(sig, &names, &Fact::Function(g, args.clone(), v))));
                }
            }
        }
        for c in 0..sig.constants().len() {
            for v in (0..n).filter(|&v| v != s.constant(c)) {
                sentences.push(negated_atom(fact_atom(sig, &names, &Fact::Constant(c, v))));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                sentences.push(negated_atom(Atom::Eq(Term::Const(names[a].clone()), Term::Const(names[b].clone()))));
            }
        }
    }
    Ok(DiagramSet {
        kind: if negative { DiagramKind::Diag } else { DiagramKind::DiagPlus },
        signature: (*esig).clone(),
        sentences,
        bound: None,
    })
}

fn bounded(s: &FiniteStructure, kind: DiagramKind, budget: &Budget) -> Result<Vec<Sentence>> {
    let sig = s.signature();
    let pats = patterns(sig, budget.k, budget.node_cap)?;
    let mut out = Vec::new();
    for p in &pats {
        match kind {
            DiagramKind::DiagPlusStar => {
                if p.holds_in(s, budget.node_cap)? {
                    out.push(Sentence::Positive(p.positive(sig)));
                }
            }
            DiagramKind::TuStar => {
                if !p.holds_in(s, budget.node_cap)? {
                    out.push(Sentence::HUniversal(HUniversalSentence { negated: p.positive(sig) }));
                }
            }
            DiagramKind::TiStar => {
                let imp = strongest_sentence(p, s, budget.k, budget.node_cap)?;
                out.push(Sentence::HInductive(HInductiveSentence::single(imp)));
            }
            _ => unreachable!("unbounded kind"),
        }
    }
    Ok(out)
}

/// Extracts the diagram set of `kind`. Relative kinds name every element;
/// see [`relative_diagram`] for a subset.
pub fn diagram(s: &FiniteStructure, kind: DiagramKind, budget: &Budget) -> Result<DiagramSet> {
    match kind {
        DiagramKind::Diag => atomic_diagram(s, DIAGRAM_PREFIX, true),
        DiagramKind::DiagPlus => atomic_diagram(s, DIAGRAM_PREFIX, false),
        DiagramKind::DiagPlusStar | DiagramKind::TuStar | DiagramKind::TiStar => Ok(DiagramSet {
            kind,
            signature: (**s.signature()).clone(),
            sentences: bounded(s, kind, budget)?,
            bound: Some(budget.k),
        }),
        DiagramKind::Tu | DiagramKind::TuRelative => {
            let mut d = relative_diagram(s, DiagramKind::TuRelative, &s.elements().collect(), budget)?;
            d.kind = kind;
            Ok(d)
        }
        DiagramKind::Ti | DiagramKind::TiRelative => {
            let mut d = relative_diagram(s, DiagramKind::TiRelative, &s.elements().collect(), budget)?;
            d.kind = kind;
            Ok(d)
        }
    }
}

/// `T_u(A|B)` or `T_i(A|B)`: sentences of bounded size with parameters
/// naming the elements of `subset`, true in `s`.
pub fn relative_diagram(s: &FiniteStructure, kind: DiagramKind, subset: &BTreeSet<Elem>, budget: &Budget) -> Result<DiagramSet> {
    let star = match kind {
        DiagramKind::TuRelative | DiagramKind::Tu => DiagramKind::TuStar,
        DiagramKind::TiRelative | DiagramKind::Ti => DiagramKind::TiStar,
        _ => return Err(Error::Precondition(format!("`{kind}` is not a relative kind"))),
    };
    let (esig, expanded) = name_elements(s, subset, DIAGRAM_PREFIX)?;
    Ok(DiagramSet {
        kind,
        signature: (*esig).clone(),
        sentences: bounded(&expanded, star, budget)?,
        bound: Some(budget.k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::eval_sentence;
    use crate::zoo;

    fn texts(d: &DiagramSet) -> Vec<String> {
        d.sentences.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn positive_diagram_of_the_chain() {
        let d = diagram(&zoo::chain2(), DiagramKind::DiagPlus, &Budget::default()).unwrap();
        assert_eq!(
            texts(&d),
            vec!["positive: leq(c0, c0)", "positive: leq(c0, c1)", "positive: leq(c1, c1)"]
        );
        assert_eq!(d.signature.constants(), &["c0".to_string(), "c1".to_string()]);
    }

    #[test]
    fn full_diagram_adds_negations() {
        let d = diagram(&zoo::chain2(), DiagramKind::Diag, &Budget::default()).unwrap();
        let t = texts(&d);
        assert!(t.contains(&"huniversal: ! leq(c1, c0)".to_string()), "{t:?}");
        assert!(t.contains(&"huniversal: ! c0 = c1".to_string()), "{t:?}");
        assert_eq!(t.len(), 5);
    }

    #[test]
    fn expansion_of_a_group_keeps_its_constant() {
        let d = diagram(&zoo::cyclic_group(2), DiagramKind::DiagPlus, &Budget::default()).unwrap();
        assert_eq!(d.signature.constants(), &["e".to_string(), "c0".to_string(), "c1".to_string()]);
        assert!(texts(&d).contains(&"positive: e = c0".to_string()));
    }

    #[test]
    fn bounded_sets_hold_in_their_source() {
        let b = Budget::new(3, 3, 2);
        for s in [zoo::chain2(), zoo::singleton_loop(), zoo::two_cycle()] {
            for kind in [DiagramKind::DiagPlusStar, DiagramKind::TuStar, DiagramKind::TiStar] {
                let d = diagram(&s, kind, &b).unwrap();
                for sen in &d.sentences {
                    let f = sen.encoding().to_formula();
                    assert!(eval_sentence(&s, &f).unwrap(), "{kind}: {sen}");
                }
            }
        }
    }

    #[test]
    fn loop_has_no_h_universal_sentences() {
        let d = diagram(&zoo::singleton_loop(), DiagramKind::TuStar, &Budget::new(2, 2, 2)).unwrap();
        assert!(d.is_empty());
        let d = diagram(&zoo::two_cycle(), DiagramKind::TuStar, &Budget::new(2, 2, 2)).unwrap();
        assert!(texts(&d).contains(&"huniversal: ! (exists x. f(x) = x)".to_string()), "{:?}", texts(&d));
    }

    #[test]
    fn relative_sets_name_the_subset() {
        let s = zoo::antichain2();
        let sub: BTreeSet<Elem> = [0, 1].into_iter().collect();
        let d = relative_diagram(&s, DiagramKind::TuRelative, &sub, &Budget::new(2, 2, 1)).unwrap();
        assert_eq!(d.signature.constants(), &["c0".to_string(), "c1".to_string()]);
        assert!(texts(&d).contains(&"huniversal: ! (exists x. c0 = x & c1 = x)".to_string()), "{:?}", texts(&d));
        let t = d.to_theory("rel").unwrap();
        let (_, e) = name_elements(&s, &sub, DIAGRAM_PREFIX).unwrap();
        assert!(t.is_model(&e).unwrap());
    }
}
