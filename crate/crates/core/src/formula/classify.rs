use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Formula, HInductiveSentence, HUniversalSentence, Implication, PosEx, PosQf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SentenceClass {
    Positive,
    HUniversal,
    HInductive,
    Outside,
}

impl SentenceClass {
    /// Positive and h-universal sentences are h-inductive through the
    /// encodings `forall (true -> p)` and `forall (p -> false)`.
    pub fn is_h_inductive_encodable(self) -> bool {
        self != SentenceClass::Outside
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SentenceClass::Positive => "positive",
            SentenceClass::HUniversal => "h-universal",
            SentenceClass::HInductive => "h-inductive",
            SentenceClass::Outside => "outside",
        }
    }
}

impl std::fmt::Display for SentenceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Most specific syntactic class of a sentence.
pub fn classify_sentence(s: &Formula) -> SentenceClass {
    if positive(s).is_some() {
        SentenceClass::Positive
    } else if matches!(s, Formula::Not(x) if positive(x).is_some()) {
        SentenceClass::HUniversal
    } else if implications(s).is_some() {
        SentenceClass::HInductive
    } else {
        SentenceClass::Outside
    }
}

/// The h-inductive encoding of a sentence in one of the three classes.
pub fn to_h_inductive(s: &Formula) -> Option<HInductiveSentence> {
    match classify_sentence(s) {
        SentenceClass::Positive => Some(HInductiveSentence::from_positive(positive(s)?)),
        SentenceClass::HUniversal => match s {
            Formula::Not(x) => Some(HInductiveSentence::from_h_universal(&HUniversalSentence {
                negated: positive(x)?,
            })),
            _ => None,
        },
        SentenceClass::HInductive => Some(HInductiveSentence {
            conjuncts: implications(s)?,
        }),
        SentenceClass::Outside => None,
    }
}

/// Prenex form of a positive formula, or `None` if it is not positive.
pub(crate) fn positive(f: &Formula) -> Option<PosEx> {
    match f {
        Formula::Atom(a) => Some(PosEx::qf(PosQf::Atom(a.clone()))),
        Formula::Exists(vs, body) => {
            let inner = positive(body)?.freshen(&vs.iter().cloned().collect());
            let mut vars = vs.clone();
            vars.extend(inner.vars);
            Some(PosEx::new(vars, inner.matrix))
        }
        Formula::And(xs) | Formula::Or(xs) => {
            let parts: Vec<PosEx> = xs.iter().map(positive).collect::<Option<_>>()?;
            let mut vars: Vec<String> = Vec::new();
            let mut matrices = Vec::new();
            for (i, p) in parts.iter().enumerate() {
                let mut avoid: BTreeSet<String> = vars.iter().cloned().collect();
                for (j, q) in parts.iter().enumerate() {
                    if i != j {
                        avoid.extend(q.matrix.vars());
                        avoid.extend(q.vars.iter().cloned());
                    }
                }
                let p = p.freshen(&avoid);
                vars.extend(p.vars);
                matrices.push(p.matrix);
            }
            Some(PosEx::new(
                vars,
                if matches!(f, Formula::And(_)) {
                    PosQf::And(matrices)
                } else {
                    PosQf::Or(matrices)
                },
            ))
        }
        _ => None,
    }
}

fn implications(f: &Formula) -> Option<Vec<Implication>> {
    if let Formula::And(xs) = f {
        let mut out = Vec::new();
        for x in xs {
            out.extend(implications(x)?);
        }
        return Some(out);
    }
    let mut vars = Vec::new();
    let mut body = f;
    while let Formula::Forall(vs, inner) = body {
        vars.extend(vs.iter().cloned());
        body = inner;
    }
    let (premise, conclusion) = match body {
        Formula::Implies(p, c) => (positive(p)?, positive(c)?),
        Formula::Not(p) => (positive(p)?, PosEx::bottom()),
        _ => (PosEx::top(), positive(body)?),
    };
    Some(vec![Implication {
        vars,
        premise,
        conclusion,
    }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula, Parsed};

    fn class(text: &str) -> SentenceClass {
        let Parsed::Formula(f) = parse_formula(text).unwrap() else {
            panic!()
        };
        classify_sentence(&f)
    }

    #[test]
    fn examples() {
        assert_eq!(class("exists x. f(x) = x"), SentenceClass::Positive);
        assert!(SentenceClass::Positive.is_h_inductive_encodable());
        assert_eq!(class("! exists x y. x = y & false"), SentenceClass::HUniversal);
        assert_eq!(class("forall x. ! R(x) -> false"), SentenceClass::Outside);
        assert_eq!(
            class("forall x y. leq(x,y) & leq(y,x) -> x = y"),
            SentenceClass::HInductive
        );
        assert_eq!(class("forall x. exists y. R(x, y)"), SentenceClass::HInductive);
        assert_eq!(class("exists x. forall y. R(x, y)"), SentenceClass::Outside);
        assert_eq!(class("! ! R(c)"), SentenceClass::Outside);
    }

    #[test]
    fn encodings_are_h_inductive() {
        let Parsed::Formula(f) = parse_formula("! exists x. f(x) = x").unwrap() else {
            panic!()
        };
        let h = to_h_inductive(&f).unwrap();
        assert!(h.conjuncts[0].conclusion.is_bottom());
        let Parsed::Formula(f) = parse_formula("exists x. f(x) = x").unwrap() else {
            panic!()
        };
        let h = to_h_inductive(&f).unwrap();
        assert!(h.conjuncts[0].premise.is_top());
    }
}
