//! Formula language: terms, atoms, positive formulas, h-inductive and
//! h-universal sentences, plus a general first-order AST used only for
//! shape classification.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signature::{Signature, Symbol};

mod classify;
mod cq;
mod eval;
mod parser;

pub use classify::{classify_sentence, to_h_inductive, SentenceClass};
pub use cq::{pointed_positive_diagram, to_cq_dnf, Cq, DEFAULT_DNF_CAP};
pub use eval::{eval, eval_sentence};
pub use parser::{parse_formula, parse_formula_in, parse_positive, parse_term, Parsed};

pub(crate) use parser::{Parser, Tok};

/// Prefix reserved for auxiliary variables introduced by flattening.
pub const AUX_PREFIX: &str = "_v";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Var(String),
    Const(String),
    App(String, Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    Rel(String, Vec<Term>),
    Eq(Term, Term),
    /// The antilogy.
    False,
    /// The empty conjunction.
    True,
}

/// Quantifier-free positive formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PosQf {
    Atom(Atom),
    And(Vec<PosQf>),
    Or(Vec<PosQf>),
}

/// `exists vars. matrix`; the variable list may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosEx {
    pub vars: Vec<String>,
    pub matrix: PosQf,
}

/// `forall vars. premise -> conclusion`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Implication {
    pub vars: Vec<String>,
    pub premise: PosEx,
    pub conclusion: PosEx,
}

/// Finite conjunction of universally closed implications between positive
/// formulas.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HInductiveSentence {
    pub conjuncts: Vec<Implication>,
}

/// Negation of a positive sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HUniversalSentence {
    pub negated: PosEx,
}

/// General first-order formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.to_string(), args)
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone())
                }
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn rename(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.rename(from, to)).collect()),
        }
    }

    /// Replaces free names that are constants of `sig` by constants, and
    /// checks symbol roles and arities.
    pub fn bind(&self, sig: &Signature, bound: &[String]) -> Result<Term> {
        match self {
            Term::Var(v) => {
                if bound.contains(v) {
                    return Ok(self.clone());
                }
                match sig.lookup(v) {
                    Some(Symbol::Constant(_)) => Ok(Term::Const(v.clone())),
                    _ => Ok(self.clone()),
                }
            }
            Term::Const(c) => match sig.lookup(c) {
                Some(Symbol::Constant(_)) => Ok(self.clone()),
                _ => Err(Error::UnknownSymbol(c.clone())),
            },
            Term::App(f, args) => match sig.lookup(f) {
                Some(Symbol::Function(i)) => {
                    let arity = sig.function_arity(i);
                    if arity != args.len() {
                        return Err(Error::Arity {
                            symbol: f.clone(),
                            expected: arity,
                            found: args.len(),
                        });
                    }
                    Ok(Term::App(
                        f.clone(),
                        args.iter().map(|a| a.bind(sig, bound)).collect::<Result<_>>()?,
                    ))
                }
                _ => Err(Error::UnknownSymbol(f.clone())),
            },
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Const(_))
    }
}

impl Atom {
    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Atom::Rel(_, ts) => ts.iter().for_each(|t| t.collect_vars(out)),
            Atom::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Atom::False | Atom::True => {}
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn rename(&self, from: &str, to: &str) -> Atom {
        match self {
            Atom::Rel(r, ts) => Atom::Rel(r.clone(), ts.iter().map(|t| t.rename(from, to)).collect()),
            Atom::Eq(a, b) => Atom::Eq(a.rename(from, to), b.rename(from, to)),
            other => other.clone(),
        }
    }

    pub fn bind(&self, sig: &Signature, bound: &[String]) -> Result<Atom> {
        match self {
            Atom::Rel(r, ts) => match sig.lookup(r) {
                Some(Symbol::Relation(i)) => {
                    let arity = sig.relation_arity(i);
                    if arity != ts.len() {
                        return Err(Error::Arity {
                            symbol: r.clone(),
                            expected: arity,
                            found: ts.len(),
                        });
                    }
                    Ok(Atom::Rel(
                        r.clone(),
                        ts.iter().map(|t| t.bind(sig, bound)).collect::<Result<_>>()?,
                    ))
                }
                _ => Err(Error::UnknownSymbol(r.clone())),
            },
            Atom::Eq(a, b) => Ok(Atom::Eq(a.bind(sig, bound)?, b.bind(sig, bound)?)),
            other => Ok(other.clone()),
        }
    }
}

impl PosQf {
    pub fn top() -> PosQf {
        PosQf::And(Vec::new())
    }

    pub fn bottom() -> PosQf {
        PosQf::Atom(Atom::False)
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            PosQf::Atom(a) => a.collect_vars(out),
            PosQf::And(xs) | PosQf::Or(xs) => xs.iter().for_each(|x| x.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn rename(&self, from: &str, to: &str) -> PosQf {
        match self {
            PosQf::Atom(a) => PosQf::Atom(a.rename(from, to)),
            PosQf::And(xs) => PosQf::And(xs.iter().map(|x| x.rename(from, to)).collect()),
            PosQf::Or(xs) => PosQf::Or(xs.iter().map(|x| x.rename(from, to)).collect()),
        }
    }

    pub fn bind(&self, sig: &Signature, bound: &[String]) -> Result<PosQf> {
        Ok(match self {
            PosQf::Atom(a) => PosQf::Atom(a.bind(sig, bound)?),
            PosQf::And(xs) => PosQf::And(xs.iter().map(|x| x.bind(sig, bound)).collect::<Result<_>>()?),
            PosQf::Or(xs) => PosQf::Or(xs.iter().map(|x| x.bind(sig, bound)).collect::<Result<_>>()?),
        })
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        fn go<'a>(q: &'a PosQf, out: &mut Vec<&'a Atom>) {
            match q {
                PosQf::Atom(a) => out.push(a),
                PosQf::And(xs) | PosQf::Or(xs) => xs.iter().for_each(|x| go(x, out)),
            }
        }
        go(self, &mut out);
        out
    }

    /// Number of atoms, a size measure for caps.
    pub fn size(&self) -> usize {
        self.atoms().len()
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            PosQf::Atom(a) => Formula::Atom(a.clone()),
            PosQf::And(xs) => Formula::And(xs.iter().map(PosQf::to_formula).collect()),
            PosQf::Or(xs) => Formula::Or(xs.iter().map(PosQf::to_formula).collect()),
        }
    }
}

impl PosEx {
    pub fn new(vars: Vec<String>, matrix: PosQf) -> Self {
        PosEx { vars, matrix }
    }

    pub fn qf(matrix: PosQf) -> Self {
        PosEx { vars: Vec::new(), matrix }
    }

    /// `true`, as written in source.
    pub fn top() -> Self {
        PosEx::qf(PosQf::Atom(Atom::True))
    }

    pub fn bottom() -> Self {
        PosEx::qf(PosQf::bottom())
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        self.matrix
            .vars()
            .into_iter()
            .filter(|v| !self.vars.contains(v))
            .collect()
    }

    pub fn bind(&self, sig: &Signature, bound: &[String]) -> Result<PosEx> {
        let mut inner: Vec<String> = bound.to_vec();
        inner.extend(self.vars.iter().cloned());
        Ok(PosEx {
            vars: self.vars.clone(),
            matrix: self.matrix.bind(sig, &inner)?,
        })
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self.matrix, PosQf::Atom(Atom::False)) || matches!(&self.matrix, PosQf::Or(xs) if xs.is_empty())
    }

    pub fn is_top(&self) -> bool {
        matches!(&self.matrix, PosQf::And(xs) if xs.is_empty()) || matches!(self.matrix, PosQf::Atom(Atom::True))
    }

    pub fn to_formula(&self) -> Formula {
        if self.vars.is_empty() {
            self.matrix.to_formula()
        } else {
            Formula::Exists(self.vars.clone(), Box::new(self.matrix.to_formula()))
        }
    }

    /// Renames bound variables away from `avoid`.
    pub(crate) fn freshen(&self, avoid: &BTreeSet<String>) -> PosEx {
        let mut out = self.clone();
        let mut taken: BTreeSet<String> = avoid.clone();
        taken.extend(self.matrix.vars());
        for i in 0..out.vars.len() {
            let v = out.vars[i].clone();
            if avoid.contains(&v) {
                let fresh = fresh_name(&v, &taken);
                taken.insert(fresh.clone());
                out.matrix = out.matrix.rename(&v, &fresh);
                out.vars[i] = fresh;
            }
        }
        out
    }
}

pub(crate) fn fresh_name(base: &str, taken: &BTreeSet<String>) -> String {
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|c| !taken.contains(c))
        .expect("infinitely many candidates")
}

impl Implication {
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = self.premise.free_vars();
        for v in self.conclusion.free_vars() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out.retain(|v| !self.vars.contains(v));
        out
    }

    pub fn bind(&self, sig: &Signature) -> Result<Implication> {
        let imp = Implication {
            vars: self.vars.clone(),
            premise: self.premise.bind(sig, &self.vars)?,
            conclusion: self.conclusion.bind(sig, &self.vars)?,
        };
        if let Some(v) = imp.free_vars().first() {
            return Err(Error::UnboundVariable(v.clone()));
        }
        Ok(imp)
    }

    pub fn to_formula(&self) -> Formula {
        let body = Formula::Implies(Box::new(self.premise.to_formula()), Box::new(self.conclusion.to_formula()));
        if self.vars.is_empty() {
            body
        } else {
            Formula::Forall(self.vars.clone(), Box::new(body))
        }
    }
}

impl HInductiveSentence {
    pub fn single(imp: Implication) -> Self {
        HInductiveSentence { conjuncts: vec![imp] }
    }

    /// `forall (true -> p)`.
    pub fn from_positive(p: PosEx) -> Self {
        HInductiveSentence::single(Implication {
            vars: Vec::new(),
            premise: PosEx::top(),
            conclusion: p,
        })
    }

    /// `forall (p -> false)`.
    pub fn from_h_universal(u: &HUniversalSentence) -> Self {
        HInductiveSentence::single(Implication {
            vars: Vec::new(),
            premise: u.negated.clone(),
            conclusion: PosEx::bottom(),
        })
    }

    pub fn bind(&self, sig: &Signature) -> Result<Self> {
        Ok(HInductiveSentence {
            conjuncts: self.conjuncts.iter().map(|c| c.bind(sig)).collect::<Result<_>>()?,
        })
    }

    pub fn to_formula(&self) -> Formula {
        if self.conjuncts.len() == 1 {
            self.conjuncts[0].to_formula()
        } else {
            Formula::And(self.conjuncts.iter().map(Implication::to_formula).collect())
        }
    }
}

impl HUniversalSentence {
    pub fn to_formula(&self) -> Formula {
        Formula::Not(Box::new(self.negated.to_formula()))
    }

    pub fn bind(&self, sig: &Signature) -> Result<Self> {
        let negated = self.negated.bind(sig, &[])?;
        if let Some(v) = negated.free_vars().first() {
            return Err(Error::UnboundVariable(v.clone()));
        }
        Ok(HUniversalSentence { negated })
    }
}

impl Formula {
    pub fn free_vars(&self) -> Vec<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                Formula::Atom(a) => {
                    for v in a.vars() {
                        if !bound.contains(&v) && !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
                Formula::Not(x) => go(x, bound, out),
                Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| go(x, bound, out)),
                Formula::Implies(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Exists(vs, x) | Formula::Forall(vs, x) => {
                    let n = bound.len();
                    bound.extend(vs.iter().cloned());
                    go(x, bound, out);
                    bound.truncate(n);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn bind(&self, sig: &Signature, bound: &[String]) -> Result<Formula> {
        Ok(match self {
            Formula::Atom(a) => Formula::Atom(a.bind(sig, bound)?),
            Formula::Not(x) => Formula::Not(Box::new(x.bind(sig, bound)?)),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| x.bind(sig, bound)).collect::<Result<_>>()?),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| x.bind(sig, bound)).collect::<Result<_>>()?),
            Formula::Implies(a, b) => Formula::Implies(Box::new(a.bind(sig, bound)?), Box::new(b.bind(sig, bound)?)),
            Formula::Exists(vs, x) | Formula::Forall(vs, x) => {
                let mut inner = bound.to_vec();
                inner.extend(vs.iter().cloned());
                let body = Box::new(x.bind(sig, &inner)?);
                if matches!(self, Formula::Exists(..)) {
                    Formula::Exists(vs.clone(), body)
                } else {
                    Formula::Forall(vs.clone(), body)
                }
            }
        })
    }
}

// ---------------------------------------------------------------------------
// Printing, in the concrete syntax accepted by the parser.

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) | Term::Const(v) => write!(f, "{v}"),
            Term::App(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Rel(r, ts) => {
                write!(f, "{r}(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
            Atom::Eq(a, b) => write!(f, "{a} = {b}"),
            Atom::False => write!(f, "false"),
            Atom::True => write!(f, "true"),
        }
    }
}

impl fmt::Display for PosQf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_formula().fmt(f)
    }
}

impl fmt::Display for PosEx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_formula().fmt(f)
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.vars.is_empty() {
            write!(f, "forall {}. ", self.vars.join(" "))?;
        }
        write_prec(&self.premise.to_formula(), f, 2)?;
        write!(f, " -> ")?;
        write_prec(&self.conclusion.to_formula(), f, 2)
    }
}

impl fmt::Display for HInductiveSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hinductive: ")?;
        for (i, c) in self.conjuncts.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Display for HUniversalSentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "huniversal: ! ")?;
        write_prec(&self.negated.to_formula(), f, 5)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, f, 0)
    }
}

/// Binding strength: 1 `->`, 2 `|`, 3 `&`, 4 `!`, 5 atoms. Quantifiers
/// extend to the right and are parenthesized whenever something follows.
fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(xs) if xs.is_empty() => 5,
        Formula::And(xs) if xs.is_empty() => 5,
        Formula::Or(_) => 2,
        Formula::And(_) => 3,
        Formula::Not(_) => 4,
        Formula::Atom(_) => 5,
    }
}

fn write_prec(fm: &Formula, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
    if let Formula::And(xs) | Formula::Or(xs) = fm {
        if xs.len() == 1 {
            return write_prec(&xs[0], f, min);
        }
    }
    if prec(fm) < min {
        write!(f, "(")?;
        write_prec(fm, f, 0)?;
        return write!(f, ")");
    }
    match fm {
        Formula::Atom(a) => write!(f, "{a}"),
        Formula::Not(x) => {
            write!(f, "! ")?;
            write_prec(x, f, 5)
        }
        Formula::And(xs) if xs.is_empty() => write!(f, "true"),
        Formula::Or(xs) if xs.is_empty() => write!(f, "false"),
        Formula::And(xs) | Formula::Or(xs) => {
            let (op, p) = if matches!(fm, Formula::And(_)) { (" & ", 4) } else { (" | ", 3) };
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, "{op}")?;
                }
                write_prec(x, f, p)?;
            }
            Ok(())
        }
        Formula::Implies(a, b) => {
            write_prec(a, f, 2)?;
            write!(f, " -> ")?;
            write_prec(b, f, 1)
        }
        Formula::Exists(vs, x) | Formula::Forall(vs, x) => {
            let q = if matches!(fm, Formula::Exists(..)) { "exists" } else { "forall" };
            write!(f, "{q} {}. ", vs.join(" "))?;
            write_prec(x, f, 0)
        }
    }
}
