//! Formulas compiled against a signature: symbols become indices and
//! variables become slots in an assignment vector. Evaluation is
//! three-valued so the same code serves total structures and the partial
//! structures of the model finder.


use crate::error::{Error, Result};
use crate::formula::{Atom, Implication, PosEx, PosQf, Term};
use crate::signature::{Signature, Symbol};
use crate::structure::{Elem, FiniteStructure};

/// Read access to a possibly partial interpretation.
pub(crate) trait Interp {
    fn size(&self) -> usize;
    fn rel(&self, r: usize, args: &[Elem]) -> Option<bool>;
    fn fun(&self, f: usize, args: &[Elem]) -> Option<Elem>;
    fn cst(&self, c: usize) -> Option<Elem>;
}

impl Interp for FiniteStructure {
    fn size(&self) -> usize {
        FiniteStructure::size(self)
    }
    fn rel(&self, r: usize, args: &[Elem]) -> Option<bool> {
        Some(self.holds(r, args))
    }
    fn fun(&self, f: usize, args: &[Elem]) -> Option<Elem> {
        Some(self.apply(f, args))
    }
    fn cst(&self, c: usize) -> Option<Elem> {
        Some(self.constant(c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CTerm {
    Var(usize),
    Const(usize),
    App(usize, Vec<CTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CAtom {
    Rel(usize, Vec<CTerm>),
    Eq(CTerm, CTerm),
    True,
    False,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum CQf {
    Atom(CAtom),
    And(Vec<CQf>),
    Or(Vec<CQf>),
}

/// Compiled positive formula: existential slots plus matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CEx {
    pub vars: Vec<usize>,
    pub matrix: CQf,
}

/// Compiled `forall universal. premise -> conclusion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CRule {
    pub universal: Vec<usize>,
    pub premise: CEx,
    pub conclusion: CEx,
    pub nvars: usize,
}

/// A cell assignment that makes an atom true.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Forced {
    Rel(usize, Vec<Elem>),
    Fun(usize, Vec<Elem>, Elem),
    Const(usize, Elem),
}

struct Compiler<'a> {
    sig: &'a Signature,
    scope: Vec<(String, usize)>,
    next: usize,
}

impl<'a> Compiler<'a> {
    fn bind(&mut self, name: &str) -> usize {
        let slot = self.next;
        self.next += 1;
        self.scope.push((name.to_string(), slot));
        slot
    }

    fn term(&self, t: &Term) -> Result<CTerm> {
        match t {
            Term::Var(v) => {
                if let Some((_, slot)) = self.scope.iter().rev().find(|(n, _)| n == v) {
                    return Ok(CTerm::Var(*slot));
                }
                match self.sig.lookup(v) {
                    Some(Symbol::Constant(c)) => Ok(CTerm::Const(c)),
                    _ => Err(Error::UnboundVariable(v.clone())),
                }
            }
            Term::Const(c) => match self.sig.lookup(c) {
                Some(Symbol::Constant(i)) => Ok(CTerm::Const(i)),
                _ => Err(Error::UnknownSymbol(c.clone())),
            },
            Term::App(f, args) => match self.sig.lookup(f) {
                Some(Symbol::Function(i)) => {
                    let arity = self.sig.function_arity(i);
                    if arity != args.len() {
                        return Err(Error::Arity {
                            symbol: f.clone(),
                            expected: arity,
                            found: args.len(),
                        });
                    }
                    Ok(CTerm::App(i, args.iter().map(|a| self.term(a)).collect::<Result<_>>()?))
                }
                _ => Err(Error::UnknownSymbol(f.clone())),
            },
        }
    }

    fn atom(&self, a: &Atom) -> Result<CAtom> {
        Ok(match a {
            Atom::True => CAtom::True,
            Atom::False => CAtom::False,
            Atom::Eq(l, r) => CAtom::Eq(self.term(l)?, self.term(r)?),
            Atom::Rel(name, ts) => match self.sig.lookup(name) {
                Some(Symbol::Relation(i)) => {
                    let arity = self.sig.relation_arity(i);
                    if arity != ts.len() {
                        return Err(Error::Arity {
                            symbol: name.clone(),
                            expected: arity,
                            found: ts.len(),
                        });
                    }
                    CAtom::Rel(i, ts.iter().map(|t| self.term(t)).collect::<Result<_>>()?)
                }
                _ => return Err(Error::UnknownSymbol(name.clone())),
            },
        })
    }

    fn qf(&self, q: &PosQf) -> Result<CQf> {
        Ok(match q {
            PosQf::Atom(a) => CQf::Atom(self.atom(a)?),
            PosQf::And(xs) => CQf::And(xs.iter().map(|x| self.qf(x)).collect::<Result<_>>()?),
            PosQf::Or(xs) => CQf::Or(xs.iter().map(|x| self.qf(x)).collect::<Result<_>>()?),
        })
    }

    fn ex(&mut self, p: &PosEx) -> Result<CEx> {
        let mark = self.scope.len();
        let vars = p.vars.iter().map(|v| self.bind(v)).collect();
        let matrix = self.qf(&p.matrix)?;
        self.scope.truncate(mark);
        Ok(CEx { vars, matrix })
    }
}

pub(crate) fn compile_rule(sig: &Signature, imp: &Implication) -> Result<CRule> {
    let mut c = Compiler {
        sig,
        scope: Vec::new(),
        next: 0,
    };
    let universal = imp.vars.iter().map(|v| c.bind(v)).collect();
    let premise = c.ex(&imp.premise)?;
    let conclusion = c.ex(&imp.conclusion)?;
    Ok(CRule {
        universal,
        premise,
        conclusion,
        nvars: c.next,
    })
}

pub(crate) fn eval_term<I: Interp + ?Sized>(s: &I, t: &CTerm, env: &[Elem]) -> Option<Elem> {
    match t {
        CTerm::Var(v) => Some(env[*v]),
        CTerm::Const(c) => s.cst(*c),
        CTerm::App(f, args) => {
            let mut vals = [0usize; 8];
            if args.len() <= 8 {
                for (i, a) in args.iter().enumerate() {
                    vals[i] = eval_term(s, a, env)?;
                }
                s.fun(*f, &vals[..args.len()])
            } else {
                let vals = args.iter().map(|a| eval_term(s, a, env)).collect::<Option<Vec<_>>>()?;
                s.fun(*f, &vals)
            }
        }
    }
}

pub(crate) fn eval_atom<I: Interp + ?Sized>(s: &I, a: &CAtom, env: &[Elem]) -> Option<bool> {
    match a {
        CAtom::True => Some(true),
        CAtom::False => Some(false),
        CAtom::Eq(l, r) => Some(eval_term(s, l, env)? == eval_term(s, r, env)?),
        CAtom::Rel(r, ts) => {
            let vals = ts.iter().map(|t| eval_term(s, t, env)).collect::<Option<Vec<_>>>()?;
            s.rel(*r, &vals)
        }
    }
}

pub(crate) fn eval_qf<I: Interp + ?Sized>(s: &I, q: &CQf, env: &[Elem]) -> Option<bool> {
    match q {
        CQf::Atom(a) => eval_atom(s, a, env),
        CQf::And(xs) => {
            let mut all = true;
            for x in xs {
                match eval_qf(s, x, env) {
                    Some(false) => return Some(false),
                    None => all = false,
                    Some(true) => {}
                }
            }
            all.then_some(true)
        }
        CQf::Or(xs) => {
            let mut none = true;
            for x in xs {
                match eval_qf(s, x, env) {
                    Some(true) => return Some(true),
                    None => none = false,
                    Some(false) => {}
                }
            }
            none.then_some(false)
        }
    }
}

pub(crate) fn eval_ex<I: Interp + ?Sized>(s: &I, p: &CEx, env: &mut [Elem]) -> Option<bool> {
    fn go<I: Interp + ?Sized>(s: &I, vars: &[usize], q: &CQf, env: &mut [Elem]) -> Option<bool> {
        let Some((&v, rest)) = vars.split_first() else {
            return eval_qf(s, q, env);
        };
        let mut all_false = true;
        for e in 0..s.size() {
            env[v] = e;
            match go(s, rest, q, env) {
                Some(true) => return Some(true),
                None => all_false = false,
                Some(false) => {}
            }
        }
        all_false.then_some(false)
    }
    go(s, &p.vars, &p.matrix, env)
}

/// Calls `visit` with every assignment of `vars` over `0..n`; stops early
/// when `visit` returns false. Returns false iff stopped.
pub(crate) fn for_each_assignment(
    n: usize,
    vars: &[usize],
    env: &mut [Elem],
    visit: &mut dyn FnMut(&mut [Elem]) -> bool,
) -> bool {
    let Some((&v, rest)) = vars.split_first() else {
        return visit(env);
    };
    for e in 0..n {
        env[v] = e;
        if !for_each_assignment(n, rest, env, visit) {
            return false;
        }
    }
    true
}

/// Outcome of checking one rule in a (partial) interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RuleStatus {
    Satisfied,
    /// Some assignment makes the premise true and the conclusion false.
    Violated(Vec<Elem>),
    Open,
}

pub(crate) fn rule_status<I: Interp + ?Sized>(s: &I, rule: &CRule) -> RuleStatus {
    let mut env = vec![0; rule.nvars];
    let mut open = false;
    let mut violated = None;
    for_each_assignment(s.size(), &rule.universal, &mut env, &mut |env| {
        match eval_ex(s, &rule.premise, env) {
            Some(false) => true,
            p => match eval_ex(s, &rule.conclusion, env) {
                Some(true) => true,
                Some(false) if p == Some(true) => {
                    violated = Some(rule.universal.iter().map(|&v| env[v]).collect());
                    false
                }
                _ => {
                    open = true;
                    true
                }
            },
        }
    });
    match violated {
        Some(w) => RuleStatus::Violated(w),
        None if open => RuleStatus::Open,
        None => RuleStatus::Satisfied,
    }
}

/// True iff the total structure `s` satisfies `rule`.
pub(crate) fn rule_holds(s: &FiniteStructure, rule: &CRule) -> bool {
    rule_status(s, rule) == RuleStatus::Satisfied
}

/// Cell assignments that would make an undetermined `q` true, when they
/// are forced: conjunctions force every open conjunct, disjunctions force
/// their only remaining disjunct. Returns false if nothing can be forced.
pub(crate) fn forced_by<I: Interp + ?Sized>(s: &I, q: &CQf, env: &[Elem], out: &mut Vec<Forced>) -> bool {
    match q {
        CQf::Atom(a) => force_atom(s, a, env, out),
        CQf::And(xs) => {
            let mut any = false;
            for x in xs {
                if eval_qf(s, x, env).is_none() {
                    any |= forced_by(s, x, env, out);
                }
            }
            any
        }
        CQf::Or(xs) => {
            let mut open = xs.iter().filter(|x| eval_qf(s, x, env) != Some(false));
            match (open.next(), open.next()) {
                (Some(x), None) if eval_qf(s, x, env).is_none() => forced_by(s, x, env, out),
                _ => false,
            }
        }
    }
}

fn force_atom<I: Interp + ?Sized>(s: &I, a: &CAtom, env: &[Elem], out: &mut Vec<Forced>) -> bool {
    match a {
        CAtom::Rel(r, ts) => match ts.iter().map(|t| eval_term(s, t, env)).collect::<Option<Vec<_>>>() {
            Some(args) if s.rel(*r, &args).is_none() => {
                out.push(Forced::Rel(*r, args));
                true
            }
            _ => false,
        },
        CAtom::Eq(l, r) => {
            let (lv, rv) = (eval_term(s, l, env), eval_term(s, r, env));
            match (lv, rv) {
                (None, Some(v)) => force_term(s, l, v, env, out),
                (Some(v), None) => force_term(s, r, v, env, out),
                _ => false,
            }
        }
        CAtom::True | CAtom::False => false,
    }
}

/// Forces an undefined term whose arguments are all defined to `value`.
fn force_term<I: Interp + ?Sized>(s: &I, t: &CTerm, value: Elem, env: &[Elem], out: &mut Vec<Forced>) -> bool {
    match t {
        CTerm::Const(c) => {
            out.push(Forced::Const(*c, value));
            true
        }
        CTerm::App(f, args) => match args.iter().map(|a| eval_term(s, a, env)).collect::<Option<Vec<_>>>() {
            Some(vals) => {
                out.push(Forced::Fun(*f, vals, value));
                true
            }
            None => false,
        },
        CTerm::Var(_) => false,
    }
}

