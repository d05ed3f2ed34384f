//! Lexer and recursive-descent parser for formulas. The lexer is shared with
//! the file formats in [`crate::text`].

use std::collections::BTreeSet;

use super::{Atom, Formula, HInductiveSentence, HUniversalSentence, Implication, PosEx, PosQf, Term};
use crate::error::{Error, Result, Span};
use crate::signature::Signature;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    Semi,
    Amp,
    Bar,
    Bang,
    Arrow,
    Eq,
    Slash,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Dot => ".",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Bang => "!",
            Tok::Arrow => "->",
            Tok::Eq => "=",
            Tok::Slash => "/",
            Tok::Ident(_) | Tok::Eof => "",
        }
    }
}

pub(crate) struct Lexer;

impl Lexer {
    pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, Span)>> {
        let bytes = text.as_bytes();
        let mut out = Vec::new();
        let (mut i, mut line, mut line_start) = (0usize, 1usize, 0usize);
        let span = |start: usize, end: usize, line: usize, line_start: usize| Span {
            start,
            end,
            line,
            column: text[line_start..start].chars().count() + 1,
        };
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b'\n' => {
                    i += 1;
                    line += 1;
                    line_start = i;
                }
                b' ' | b'\t' | b'\r' => i += 1,
                b'#' => {
                    while i < bytes.len() && bytes[i] != b'\n' {
                        i += 1;
                    }
                }
                b'-' if bytes.get(i + 1) == Some(&b'>') => {
                    out.push((Tok::Arrow, span(i, i + 2, line, line_start)));
                    i += 2;
                }
                _ if c.is_ascii_alphanumeric() || c == b'_' => {
                    let start = i;
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    out.push((Tok::Ident(text[start..i].to_string()), span(start, i, line, line_start)));
                }
                _ => {
                    let tok = match c {
                        b'(' => Tok::LParen,
                        b')' => Tok::RParen,
                        b'{' => Tok::LBrace,
                        b'}' => Tok::RBrace,
                        b'[' => Tok::LBracket,
                        b']' => Tok::RBracket,
                        b',' => Tok::Comma,
                        b'.' => Tok::Dot,
                        b':' => Tok::Colon,
                        b';' => Tok::Semi,
                        b'&' => Tok::Amp,
                        b'|' => Tok::Bar,
                        b'!' => Tok::Bang,
                        b'=' => Tok::Eq,
                        b'/' => Tok::Slash,
                        _ => {
                            let ch = text[i..].chars().next().unwrap_or('?');
                            return Err(Error::Syntax {
                                span: span(i, i + ch.len_utf8(), line, line_start),
                                message: format!("unexpected character `{ch}`"),
                            });
                        }
                    };
                    out.push((tok, span(i, i + 1, line, line_start)));
                    i += 1;
                }
            }
        }
        out.push((Tok::Eof, span(bytes.len(), bytes.len(), line, line_start)));
        Ok(out)
    }
}

const KEYWORDS: [&str; 4] = ["exists", "forall", "true", "false"];

/// Formula with source spans, before shape validation.
#[derive(Debug, Clone)]
pub(crate) struct SFormula {
    kind: SKind,
    span: Span,
}

#[derive(Debug, Clone)]
enum SKind {
    Atom(Atom),
    Not(Box<SFormula>),
    And(Vec<SFormula>),
    Or(Vec<SFormula>),
    Implies(Box<SFormula>, Box<SFormula>),
    Exists(Vec<String>, Box<SFormula>),
    Forall(Vec<String>, Box<SFormula>),
}

pub(crate) struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

fn join(a: Span, b: Span) -> Span {
    Span { end: b.end, ..a }
}

fn shape(span: Span, message: &str) -> Error {
    Error::Shape {
        span,
        message: message.to_string(),
    }
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            toks: Lexer::tokenize(text)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub(crate) fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    pub(crate) fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].1
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub(crate) fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            span: self.span(),
            message: message.into(),
        })
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe()))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.error(format!("expected an identifier, found {}", other.describe())),
        }
    }

    pub(crate) fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            other => self.error(format!("expected `{kw}`, found {}", other.describe())),
        }
    }

    pub(crate) fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub(crate) fn number(&mut self) -> Result<usize> {
        let span = self.span();
        let s = self.ident()?;
        s.parse().map_err(|_| Error::Syntax {
            span,
            message: format!("expected a number, found `{s}`"),
        })
    }

    fn variable(&mut self) -> Result<String> {
        let span = self.span();
        let v = self.ident()?;
        check_variable(&v, span)?;
        Ok(v)
    }

    // formula := quant | disj ('->' formula)?
    pub(crate) fn formula(&mut self) -> Result<SFormula> {
        if self.is_keyword("exists") || self.is_keyword("forall") {
            return self.quantified();
        }
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            let span = join(lhs.span, rhs.span);
            return Ok(SFormula {
                kind: SKind::Implies(Box::new(lhs), Box::new(rhs)),
                span,
            });
        }
        Ok(lhs)
    }

    fn quantified(&mut self) -> Result<SFormula> {
        let start = self.span();
        let universal = self.is_keyword("forall");
        self.bump();
        let mut vars = Vec::new();
        while *self.peek() != Tok::Dot {
            vars.push(self.variable()?);
        }
        if vars.is_empty() {
            return self.error("expected at least one variable");
        }
        self.expect(&Tok::Dot)?;
        let body = self.formula()?;
        let span = join(start, body.span);
        let kind = if universal {
            SKind::Forall(vars, Box::new(body))
        } else {
            SKind::Exists(vars, Box::new(body))
        };
        Ok(SFormula { kind, span })
    }

    fn disjunction(&mut self) -> Result<SFormula> {
        let first = self.conjunction()?;
        if *self.peek() != Tok::Bar {
            return Ok(first);
        }
        let mut xs = vec![first];
        while self.eat(&Tok::Bar) {
            xs.push(self.conjunction()?);
        }
        let span = join(xs[0].span, xs[xs.len() - 1].span);
        Ok(SFormula {
            kind: SKind::Or(xs),
            span,
        })
    }

    fn conjunction(&mut self) -> Result<SFormula> {
        let first = self.unary()?;
        if *self.peek() != Tok::Amp {
            return Ok(first);
        }
        let mut xs = vec![first];
        while self.eat(&Tok::Amp) {
            xs.push(self.unary()?);
        }
        let span = join(xs[0].span, xs[xs.len() - 1].span);
        Ok(SFormula {
            kind: SKind::And(xs),
            span,
        })
    }

    fn unary(&mut self) -> Result<SFormula> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                let inner = self.unary()?;
                let span = join(start, inner.span);
                Ok(SFormula {
                    kind: SKind::Not(Box::new(inner)),
                    span,
                })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(SFormula {
                    span: join(start, self.prev_span()),
                    ..inner
                })
            }
            Tok::Ident(s) if s == "exists" || s == "forall" => self.quantified(),
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.bump();
                let atom = if s == "true" { Atom::True } else { Atom::False };
                Ok(SFormula {
                    kind: SKind::Atom(atom),
                    span: start,
                })
            }
            Tok::Ident(_) => self.atom(),
            other => self.error(format!("expected a formula, found {}", other.describe())),
        }
    }

    fn atom(&mut self) -> Result<SFormula> {
        let start = self.span();
        let name = self.ident()?;
        let args = if *self.peek() == Tok::LParen {
            Some(self.arguments()?)
        } else {
            None
        };
        if self.eat(&Tok::Eq) {
            let lhs = match args {
                Some(args) => Term::App(name, args),
                None => name_term(name, start)?,
            };
            let rhs = self.term()?;
            return Ok(SFormula {
                kind: SKind::Atom(Atom::Eq(lhs, rhs)),
                span: join(start, self.prev_span()),
            });
        }
        match args {
            Some(args) => Ok(SFormula {
                kind: SKind::Atom(Atom::Rel(name, args)),
                span: join(start, self.prev_span()),
            }),
            None => Err(Error::Syntax {
                span: start,
                message: format!("expected `(` or `=` after `{name}`"),
            }),
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>> {
        self.expect(&Tok::LParen)?;
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(&Tok::RParen)?;
        Ok(args)
    }

    pub(crate) fn term(&mut self) -> Result<Term> {
        let start = self.span();
        let name = self.ident()?;
        if *self.peek() == Tok::LParen {
            Ok(Term::App(name, self.arguments()?))
        } else {
            name_term(name, start)
        }
    }

    /// Parses a sentence after its class keyword, up to (not including) a
    /// terminator at nesting depth zero.
    pub(crate) fn classed(&mut self, class: &str) -> Result<Parsed> {
        let start = self.span();
        match class {
            "term" => Ok(Parsed::Term(self.term()?)),
            "qf" => Ok(Parsed::PosQf(posqf(&self.formula()?)?)),
            "positive" => Ok(Parsed::PosEx(posex(&self.formula()?)?)),
            "huniversal" => Ok(Parsed::HUniversal(huniversal(&self.formula()?)?)),
            "hinductive" => {
                let mut conjuncts = implications(&self.formula()?)?;
                while *self.peek() == Tok::Semi && !matches!(self.peek_at(1), Tok::Eof | Tok::RBrace) && !self.keyword_follows(1) {
                    self.bump();
                    conjuncts.extend(implications(&self.formula()?)?);
                }
                Ok(Parsed::HInductive(HInductiveSentence { conjuncts }))
            }
            "formula" => Ok(Parsed::Formula(self.formula()?.to_formula())),
            other => Err(Error::Syntax {
                span: start,
                message: format!("unknown formula class `{other}`"),
            }),
        }
    }

    /// True if the tokens at `offset` read `<class>:`.
    pub(crate) fn keyword_follows(&self, offset: usize) -> bool {
        matches!(self.peek_at(offset), Tok::Ident(s) if is_class_keyword(s)) && *self.peek_at(offset + 1) == Tok::Colon
    }
}

pub(crate) fn is_class_keyword(s: &str) -> bool {
    matches!(s, "term" | "qf" | "positive" | "huniversal" | "hinductive" | "formula")
}

fn check_variable(v: &str, span: Span) -> Result<()> {
    if v.starts_with('_') {
        return Err(shape(span, &format!("variable `{v}` may not begin with `_`")));
    }
    if !v.chars().next().is_some_and(|c| c.is_ascii_lowercase()) {
        return Err(shape(span, &format!("variable `{v}` must begin with a lowercase letter")));
    }
    if KEYWORDS.contains(&v) {
        return Err(shape(span, &format!("`{v}` is a keyword")));
    }
    Ok(())
}

/// A bare name is a variable until bound to a signature declaring it a
/// constant.
fn name_term(name: String, span: Span) -> Result<Term> {
    if name.starts_with('_') {
        return Err(shape(span, &format!("name `{name}` may not begin with `_`")));
    }
    if KEYWORDS.contains(&name.as_str()) {
        return Err(shape(span, &format!("`{name}` is a keyword")));
    }
    Ok(Term::Var(name))
}

impl SFormula {
    pub(crate) fn to_formula(&self) -> Formula {
        match &self.kind {
            SKind::Atom(a) => Formula::Atom(a.clone()),
            SKind::Not(x) => Formula::Not(Box::new(x.to_formula())),
            SKind::And(xs) => Formula::And(xs.iter().map(SFormula::to_formula).collect()),
            SKind::Or(xs) => Formula::Or(xs.iter().map(SFormula::to_formula).collect()),
            SKind::Implies(a, b) => Formula::Implies(Box::new(a.to_formula()), Box::new(b.to_formula())),
            SKind::Exists(vs, x) => Formula::Exists(vs.clone(), Box::new(x.to_formula())),
            SKind::Forall(vs, x) => Formula::Forall(vs.clone(), Box::new(x.to_formula())),
        }
    }
}

fn posqf(f: &SFormula) -> Result<PosQf> {
    match &f.kind {
        SKind::Atom(a) => Ok(PosQf::Atom(a.clone())),
        SKind::And(xs) => Ok(PosQf::And(xs.iter().map(posqf).collect::<Result<_>>()?)),
        SKind::Or(xs) => Ok(PosQf::Or(xs.iter().map(posqf).collect::<Result<_>>()?)),
        SKind::Exists(..) => Err(shape(f.span, "quantifier inside a quantifier-free formula")),
        other => Err(positive_violation(other, f.span)),
    }
}

fn positive_violation(kind: &SKind, span: Span) -> Error {
    match kind {
        SKind::Not(_) => shape(span, "negation inside a positive formula"),
        SKind::Implies(..) => shape(span, "implication inside a positive formula"),
        SKind::Forall(..) => shape(span, "universal quantifier inside a positive formula"),
        _ => shape(span, "not a positive formula"),
    }
}

/// Positive formula in prenex form; nested existentials are pulled to the
/// front, renaming bound variables apart where needed.
fn posex(f: &SFormula) -> Result<PosEx> {
    match &f.kind {
        SKind::Atom(a) => Ok(PosEx::qf(PosQf::Atom(a.clone()))),
        SKind::Exists(vs, body) => {
            let inner = posex(body)?;
            let avoid: BTreeSet<String> = vs.iter().cloned().collect();
            let inner = inner.freshen(&avoid);
            let mut vars = vs.clone();
            vars.extend(inner.vars);
            Ok(PosEx::new(vars, inner.matrix))
        }
        SKind::And(xs) | SKind::Or(xs) => {
            let parts: Vec<PosEx> = xs.iter().map(posex).collect::<Result<_>>()?;
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
            let matrix = if matches!(f.kind, SKind::And(_)) {
                PosQf::And(matrices)
            } else {
                PosQf::Or(matrices)
            };
            Ok(PosEx::new(vars, matrix))
        }
        other => Err(positive_violation(other, f.span)),
    }
}

fn huniversal(f: &SFormula) -> Result<HUniversalSentence> {
    match &f.kind {
        SKind::Not(inner) => Ok(HUniversalSentence { negated: posex(inner)? }),
        _ => Err(shape(f.span, "an h-universal sentence must be a negated positive formula")),
    }
}

/// Conjuncts of an h-inductive sentence: `forall xs. p -> q`, `forall xs. q`
/// (premise true) or `forall xs. ! p` (conclusion false), possibly conjoined.
fn implications(f: &SFormula) -> Result<Vec<Implication>> {
    if let SKind::And(xs) = &f.kind {
        if xs.iter().any(|x| matches!(x.kind, SKind::Forall(..) | SKind::Implies(..) | SKind::Not(_))) {
            let mut out = Vec::new();
            for x in xs {
                out.extend(implications(x)?);
            }
            return Ok(out);
        }
    }
    let mut vars = Vec::new();
    let mut body = f;
    while let SKind::Forall(vs, inner) = &body.kind {
        vars.extend(vs.iter().cloned());
        body = inner;
    }
    let (premise, conclusion) = match &body.kind {
        SKind::Implies(p, c) => (posex(p)?, posex(c)?),
        SKind::Not(p) => (posex(p)?, PosEx::bottom()),
        _ => (PosEx::top(), posex(body)?),
    };
    Ok(vec![Implication {
        vars,
        premise,
        conclusion,
    }])
}

/// Result of [`parse_formula`], tagged by the declared class.
#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Term(Term),
    PosQf(PosQf),
    PosEx(PosEx),
    HInductive(HInductiveSentence),
    HUniversal(HUniversalSentence),
    Formula(Formula),
}

impl Parsed {
    pub fn bind(&self, sig: &Signature) -> Result<Parsed> {
        Ok(match self {
            Parsed::Term(t) => Parsed::Term(t.bind(sig, &[])?),
            Parsed::PosQf(q) => Parsed::PosQf(q.bind(sig, &[])?),
            Parsed::PosEx(p) => Parsed::PosEx(p.bind(sig, &[])?),
            Parsed::HInductive(h) => Parsed::HInductive(h.bind(sig)?),
            Parsed::HUniversal(u) => Parsed::HUniversal(u.bind(sig)?),
            Parsed::Formula(f) => Parsed::Formula(f.bind(sig, &[])?),
        })
    }

    pub fn to_formula(&self) -> Option<Formula> {
        match self {
            Parsed::Term(_) => None,
            Parsed::PosQf(q) => Some(q.to_formula()),
            Parsed::PosEx(p) => Some(p.to_formula()),
            Parsed::HInductive(h) => Some(h.to_formula()),
            Parsed::HUniversal(u) => Some(u.to_formula()),
            Parsed::Formula(f) => Some(f.clone()),
        }
    }
}

impl std::fmt::Display for Parsed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parsed::Term(t) => write!(f, "term: {t}"),
            Parsed::PosQf(q) => write!(f, "qf: {q}"),
            Parsed::PosEx(p) => write!(f, "positive: {p}"),
            Parsed::HInductive(h) => write!(f, "{h}"),
            Parsed::HUniversal(u) => write!(f, "{u}"),
            Parsed::Formula(x) => write!(f, "formula: {x}"),
        }
    }
}

/// Parses `<class>: <text>` where class is one of `term`, `qf`, `positive`,
/// `hinductive`, `huniversal`, `formula`; without a class keyword the text is
/// read as a general first-order formula.
pub fn parse_formula(text: &str) -> Result<Parsed> {
    let mut p = Parser::new(text)?;
    let parsed = if p.keyword_follows(0) {
        let class = p.ident()?;
        p.expect(&Tok::Colon)?;
        p.classed(&class)?
    } else {
        Parsed::Formula(p.formula()?.to_formula())
    };
    if !p.at_eof() {
        return p.error(format!("unexpected {}", p.peek().describe()));
    }
    Ok(parsed)
}

/// [`parse_formula`] followed by binding to `sig`: constant names become
/// constants, and symbol roles and arities are checked.
pub fn parse_formula_in(text: &str, sig: &Signature) -> Result<Parsed> {
    parse_formula(text)?.bind(sig)
}

/// Parses a positive formula without the class keyword.
pub fn parse_positive(text: &str) -> Result<PosEx> {
    let mut p = Parser::new(text)?;
    let f = posex(&p.formula()?)?;
    if !p.at_eof() {
        return p.error(format!("unexpected {}", p.peek().describe()));
    }
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    if !p.at_eof() {
        return p.error(format!("unexpected {}", p.peek().describe()));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetry() {
        let p = parse_formula("hinductive: forall x y. (leq(x,y) & leq(y,x)) -> x = y").unwrap();
        let Parsed::HInductive(h) = p else { panic!() };
        assert_eq!(h.conjuncts.len(), 1);
        let c = &h.conjuncts[0];
        assert_eq!(c.vars, vec!["x", "y"]);
        assert_eq!(c.premise.matrix.size(), 2);
        assert_eq!(
            c.conclusion.matrix,
            PosQf::Atom(Atom::Eq(Term::var("x"), Term::var("y")))
        );
    }

    #[test]
    fn h_universal_fixed_point_free() {
        let p = parse_formula("huniversal: ! exists x. f(x) = x").unwrap();
        let Parsed::HUniversal(u) = p else { panic!() };
        assert_eq!(u.negated.vars, vec!["x"]);
    }

    #[test]
    fn positive_with_free_variable() {
        let Parsed::PosEx(p) = parse_formula("positive: exists y. leq(x,y)").unwrap() else {
            panic!()
        };
        assert_eq!(p.free_vars(), vec!["x"]);
    }

    #[test]
    fn negation_in_positive_reports_span() {
        let err = parse_formula("positive: R(x) & ! S(x)").unwrap_err();
        match err {
            Error::Shape { span, message } => {
                assert_eq!(span.column, 18);
                assert!(message.contains("negation"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_formula("positive: R(x &").unwrap_err();
        assert!(matches!(err, Error::Syntax { span, .. } if span.line == 1 && span.column == 15));
        let err = parse_formula("positive:\n  R(x) $").unwrap_err();
        assert!(matches!(err, Error::Syntax { span, .. } if span.line == 2 && span.column == 8));
    }

    #[test]
    fn conjunction_with_semicolons() {
        let Parsed::HInductive(h) = parse_formula("hinductive: forall x. leq(x,x); forall x y z. leq(x,y) & leq(y,z) -> leq(x,z)").unwrap()
        else {
            panic!()
        };
        assert_eq!(h.conjuncts.len(), 2);
        assert!(h.conjuncts[0].premise.is_top());
    }

    #[test]
    fn nested_existentials_are_prenexed_apart() {
        let p = parse_positive("(exists x. R(x)) & (exists x. S(x))").unwrap();
        assert_eq!(p.vars.len(), 2);
        assert_ne!(p.vars[0], p.vars[1]);
        assert!(p.free_vars().is_empty());
    }

    #[test]
    fn reserved_names() {
        assert!(parse_positive("exists _v0. R(_v0)").is_err());
        assert!(parse_positive("R(_x)").is_err());
        assert!(parse_positive("exists X. R(X)").is_err());
    }

    #[test]
    fn print_then_parse() {
        for text in [
            "hinductive: forall x y. (leq(x,y) & leq(y,x)) -> x = y",
            "huniversal: ! exists x. f(x) = x",
            "positive: exists y. leq(x,y) | R(f(f(y)))",
            "positive: (R(x) | S(x)) & T(x)",
            "formula: forall x. (! R(x)) -> false",
            "formula: ! (exists x y. x = y & false)",
            "hinductive: forall x. true -> (exists y. f(y) = x); forall x. ! R(x)",
            "term: mul(x, inv(e))",
        ] {
            let p = parse_formula(text).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_formula(&printed).unwrap(), p, "{printed}");
        }
    }

    #[test]
    fn binding_resolves_constants() {
        let sig = Signature::new([("leq", 2)], Vec::<(&str, usize)>::new(), ["c"]).unwrap();
        let Parsed::PosEx(p) = parse_formula_in("positive: leq(c, c)", &sig).unwrap() else {
            panic!()
        };
        assert_eq!(p.matrix.atoms()[0], &Atom::Rel("leq".into(), vec![Term::Const("c".into()); 2]));
        assert!(matches!(
            parse_formula_in("positive: leq(c)", &sig),
            Err(Error::Arity { .. })
        ));
        assert!(matches!(
            parse_formula_in("hinductive: forall x. leq(x, y)", &sig),
            Err(Error::UnboundVariable(_))
        ));
    }
}
