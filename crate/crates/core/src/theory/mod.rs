//! Finite h-inductive theories and bounded reasoning about their models.

pub mod diagram;
pub mod ops;
pub(crate) mod patterns;
pub mod verdict;

pub use diagram::{diagram, relative_diagram, DiagramKind, DiagramSet};
pub use ops::{
    companion_check_bounded, is_jc_bounded, is_pc_within, is_t_complete_pair, jc_characterization_report, joint_consistency_bounded,
    kaiser_hull_bounded, models, pc_models, tu_ti_extremality_check, Component, HullReport, JcReport,
};
pub use verdict::{Answer, Budget, Certificate, Verdict};

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::engine::compiled::{compile_rule, rule_holds, CRule};
use crate::error::{Error, Result};
use crate::formula::{
    classify_sentence, to_h_inductive, HInductiveSentence, HUniversalSentence, Parsed, Parser, PosEx, SentenceClass, Tok,
};
use crate::signature::Signature;
use crate::structure::FiniteStructure;

/// A sentence as written, tagged with its class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "class", content = "sentence", rename_all = "kebab-case")]
pub enum Sentence {
    Positive(PosEx),
    HUniversal(HUniversalSentence),
    HInductive(HInductiveSentence),
}

impl Sentence {
    pub fn class(&self) -> SentenceClass {
        match self {
            Sentence::Positive(_) => SentenceClass::Positive,
            Sentence::HUniversal(_) => SentenceClass::HUniversal,
            Sentence::HInductive(_) => SentenceClass::HInductive,
        }
    }

    /// The h-inductive encoding.
    pub fn encoding(&self) -> HInductiveSentence {
        match self {
            Sentence::Positive(p) => HInductiveSentence::from_positive(p.clone()),
            Sentence::HUniversal(u) => HInductiveSentence::from_h_universal(u),
            Sentence::HInductive(h) => h.clone(),
        }
    }

    fn bind(&self, sig: &Signature) -> Result<Sentence> {
        Ok(match self {
            Sentence::Positive(p) => {
                let p = p.bind(sig, &[])?;
                if let Some(v) = p.free_vars().first() {
                    return Err(Error::UnboundVariable(v.clone()));
                }
                Sentence::Positive(p)
            }
            Sentence::HUniversal(u) => Sentence::HUniversal(u.bind(sig)?),
            Sentence::HInductive(h) => Sentence::HInductive(h.bind(sig)?),
        })
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::Positive(p) => write!(f, "positive: {p}"),
            Sentence::HUniversal(u) => write!(f, "{u}"),
            Sentence::HInductive(h) => write!(f, "{h}"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "TheoryRepr", into = "TheoryRepr")]
pub struct Theory {
    name: String,
    signature: Arc<Signature>,
    sentences: Vec<Sentence>,
    rules: Vec<CRule>,
}

#[derive(Serialize, Deserialize)]
struct TheoryRepr {
    name: String,
    signature: Signature,
    sentences: Vec<Sentence>,
}

impl From<Theory> for TheoryRepr {
    fn from(t: Theory) -> Self {
        TheoryRepr {
            name: t.name,
            signature: (*t.signature).clone(),
            sentences: t.sentences,
        }
    }
}

impl TryFrom<TheoryRepr> for Theory {
    type Error = Error;
    fn try_from(r: TheoryRepr) -> Result<Self> {
        Theory::new(&r.name, Arc::new(r.signature), r.sentences)
    }
}

impl PartialEq for Theory {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.signature == other.signature && self.sentences == other.sentences
    }
}

impl Theory {
    /// Binds every sentence to `signature` and compiles it.
    pub fn new(name: &str, signature: Arc<Signature>, sentences: Vec<Sentence>) -> Result<Self> {
        let sentences = sentences.iter().map(|s| s.bind(&signature)).collect::<Result<Vec<_>>>()?;
        let mut rules = Vec::new();
        for s in &sentences {
            for imp in s.encoding().conjuncts {
                rules.push(compile_rule(&signature, &imp)?);
            }
        }
        Ok(Theory {
            name: name.to_string(),
            signature,
            sentences,
            rules,
        })
    }

    pub fn empty(name: &str, signature: Arc<Signature>) -> Self {
        Theory::new(name, signature, Vec::new()).expect("empty theory is valid")
    }

    /// Parses `class: sentence;` items, see [`parse_sentences`].
    pub fn parse(name: &str, signature: Arc<Signature>, text: &str) -> Result<Self> {
        let mut p = Parser::new(text)?;
        let sentences = parse_sentences(&mut p)?;
        if !p.at_eof() {
            return p.error("unexpected input after the last sentence");
        }
        Theory::new(name, signature, sentences)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub(crate) fn rules(&self) -> &[CRule] {
        &self.rules
    }

    pub fn renamed(&self, name: &str) -> Theory {
        Theory {
            name: name.to_string(),
            ..self.clone()
        }
    }

    /// This theory plus `extra` sentences.
    pub fn extended(&self, name: &str, extra: impl IntoIterator<Item = Sentence>) -> Result<Theory> {
        let mut sentences = self.sentences.clone();
        sentences.extend(extra);
        Theory::new(name, self.signature.clone(), sentences)
    }

    /// The same sentences read over a larger signature.
    pub fn over(&self, signature: Arc<Signature>) -> Result<Theory> {
        if !self.signature.is_prefix_of(&signature) {
            return Err(Error::SignatureMismatch(format!(
                "theory `{}` cannot be read over the given signature",
                self.name
            )));
        }
        Theory::new(&self.name, signature, self.sentences.clone())
    }

    pub fn is_model(&self, s: &FiniteStructure) -> Result<bool> {
        if **s.signature() != *self.signature {
            return Err(Error::SignatureMismatch(format!(
                "structure is not over the signature of theory `{}`",
                self.name
            )));
        }
        Ok(self.rules.iter().all(|r| rule_holds(s, r)))
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theory {} {{", self.name)?;
        for s in &self.sentences {
            writeln!(f, "  {s};")?;
        }
        write!(f, "}}")
    }
}

/// Parses `<class>: <sentence>;` items until end of input or `}`.
///
/// Classes are `hinductive`, `huniversal`, `positive`, and `formula` (any
/// sentence in one of the three classes). An item without a class keyword
/// continues the conjunction of the preceding h-inductive sentence.
pub(crate) fn parse_sentences(p: &mut Parser) -> Result<Vec<Sentence>> {
    let mut out: Vec<Sentence> = Vec::new();
    while !p.at_eof() && *p.peek() != Tok::RBrace {
        if p.keyword_follows(0) {
            let span = p.span();
            let class = p.ident()?;
            p.expect(&Tok::Colon)?;
            let s = match p.classed(&class)? {
                Parsed::PosEx(x) => Sentence::Positive(x),
                Parsed::HUniversal(u) => Sentence::HUniversal(u),
                Parsed::HInductive(h) => Sentence::HInductive(h),
                Parsed::Formula(f) => match classify_sentence(&f) {
                    SentenceClass::Outside => {
                        return Err(Error::Shape {
                            span,
                            message: "sentence is not positive, h-universal, or h-inductive".into(),
                        })
                    }
                    _ => Sentence::HInductive(to_h_inductive(&f).expect("classified")),
                },
                _ => {
                    return Err(Error::Shape {
                        span,
                        message: format!("`{class}` items are not sentences"),
                    })
                }
            };
            out.push(s);
        } else {
            let span = p.span();
            let Parsed::HInductive(h) = p.classed("hinductive")? else {
                unreachable!()
            };
            match out.last_mut() {
                Some(Sentence::HInductive(prev)) => prev.conjuncts.extend(h.conjuncts),
                _ => {
                    return Err(Error::Syntax {
                        span,
                        message: "expected `hinductive:`, `huniversal:` or `positive:`".into(),
                    })
                }
            }
        }
        if !p.eat(&Tok::Semi) && !p.at_eof() && *p.peek() != Tok::RBrace {
            return p.error("expected `;` after a sentence");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn parses_classes_and_continuations() {
        let t = Theory::parse(
            "t",
            zoo::poset_signature(),
            "hinductive: forall x. leq(x, x); forall x y. leq(x, y) & leq(y, x) -> x = y;
             positive: exists x y. leq(x, y);
             huniversal: ! exists x. false;",
        )
        .unwrap();
        assert_eq!(t.sentences().len(), 3);
        assert_eq!(t.sentences()[0].encoding().conjuncts.len(), 2);
        assert_eq!(t.sentences()[1].class(), SentenceClass::Positive);
        assert_eq!(t.rules().len(), 4);
    }

    #[test]
    fn display_round_trip() {
        let t = zoo::t_pos();
        let again = Theory::parse("T_pos", zoo::poset_signature(), &t.to_string().lines().skip(1).filter(|l| *l != "}").collect::<Vec<_>>().join("\n")).unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn rejects_open_and_ill_typed() {
        let sig = zoo::poset_signature();
        assert!(matches!(Theory::parse("t", sig.clone(), "positive: leq(x, x);"), Err(Error::UnboundVariable(_))));
        assert!(matches!(Theory::parse("t", sig.clone(), "positive: exists x. f(x) = x;"), Err(Error::UnknownSymbol(_))));
        assert!(Theory::parse("t", sig, "formula: forall x. ! leq(x, x) -> false;").unwrap_err().is_parse_error());
    }

    #[test]
    fn serde_round_trip() {
        let t = zoo::t_g_plus();
        let json = serde_json::to_string(&t).unwrap();
        let back: Theory = serde_json::from_str(&json).unwrap();
        assert_eq!(t, back);
    }
}
