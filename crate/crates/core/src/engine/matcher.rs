//! Backtracking search for assignments satisfying a flat conjunctive query
//! in a (possibly partial) interpretation. Homomorphism search is the
//! special case where the query is the diagram of the source structure.

use super::compiled::Interp;
use crate::error::{Error, Result};
use crate::formula::{Atom, Cq, Term};
use crate::signature::{Signature, Symbol};
use crate::structure::{Elem, Fact, FiniteStructure};

/// Largest target universe the bitset domains can represent.
pub const MAX_TARGET: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum QAtom {
    Rel(usize, Vec<usize>),
    Fun(usize, Vec<usize>, usize),
    Const(usize, usize),
    Eq(usize, usize),
}

impl QAtom {
    fn vars(&self) -> Vec<usize> {
        match self {
            QAtom::Rel(_, vs) => vs.clone(),
            QAtom::Fun(_, vs, v) => {
                let mut out = vs.clone();
                out.push(*v);
                out
            }
            QAtom::Const(_, v) => vec![*v],
            QAtom::Eq(a, b) => vec![*a, *b],
        }
    }

    fn holds<I: Interp + ?Sized>(&self, t: &I, val: &[Elem]) -> bool {
        match self {
            QAtom::Rel(r, vs) => {
                let args: Vec<Elem> = vs.iter().map(|&v| val[v]).collect();
                t.rel(*r, &args) == Some(true)
            }
            QAtom::Fun(f, vs, v) => {
                let args: Vec<Elem> = vs.iter().map(|&v| val[v]).collect();
                t.fun(*f, &args) == Some(val[*v])
            }
            QAtom::Const(c, v) => t.cst(*c) == Some(val[*v]),
            QAtom::Eq(a, b) => val[*a] == val[*b],
        }
    }
}

/// A conjunction of flat atoms over variables `0..nvars`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct Query {
    pub nvars: usize,
    pub atoms: Vec<QAtom>,
}

impl Query {
    /// The diagram of `s`: one variable per element, one atom per fact.
    pub(crate) fn diagram(s: &FiniteStructure) -> Query {
        Query::of_facts(s.size(), s.facts())
    }

    pub(crate) fn of_facts(nvars: usize, facts: impl IntoIterator<Item = Fact>) -> Query {
        let atoms = facts
            .into_iter()
            .map(|f| match f {
                Fact::Relation(r, t) => QAtom::Rel(r, t),
                Fact::Function(f, args, v) => QAtom::Fun(f, args, v),
                Fact::Constant(c, v) => QAtom::Const(c, v),
            })
            .collect();
        Query { nvars, atoms }
    }

    /// Compiles a flat CQ; free variables take slots `0..free.len()` and
    /// every constant occurrence gets its own pinned slot.
    pub(crate) fn from_cq(sig: &Signature, cq: &Cq) -> Result<Query> {
        let mut names: Vec<String> = cq.free.clone();
        names.extend(cq.exists.iter().cloned());
        let mut q = Query {
            nvars: names.len(),
            atoms: Vec::new(),
        };
        let slot = |q: &mut Query, t: &Term| -> Result<usize> {
            match t {
                Term::Var(v) => match names.iter().position(|n| n == v) {
                    Some(i) => Ok(i),
                    None => match sig.lookup(v) {
                        Some(Symbol::Constant(c)) => Ok(q.pin(c)),
                        _ => Err(Error::UnboundVariable(v.clone())),
                    },
                },
                Term::Const(c) => match sig.lookup(c) {
                    Some(Symbol::Constant(i)) => Ok(q.pin(i)),
                    _ => Err(Error::UnknownSymbol(c.clone())),
                },
                Term::App(..) => Err(Error::Precondition("query atoms must be flat".into())),
            }
        };
        for a in &cq.atoms {
            match a {
                Atom::True => {}
                Atom::False => return Err(Error::Precondition("query contains false".into())),
                Atom::Rel(r, ts) => {
                    let Some(Symbol::Relation(i)) = sig.lookup(r) else {
                        return Err(Error::UnknownSymbol(r.clone()));
                    };
                    let vs = ts.iter().map(|t| slot(&mut q, t)).collect::<Result<_>>()?;
                    q.atoms.push(QAtom::Rel(i, vs));
                }
                Atom::Eq(Term::App(f, args), rhs) => {
                    let Some(Symbol::Function(i)) = sig.lookup(f) else {
                        return Err(Error::UnknownSymbol(f.clone()));
                    };
                    let vs = args.iter().map(|t| slot(&mut q, t)).collect::<Result<_>>()?;
                    let v = slot(&mut q, rhs)?;
                    q.atoms.push(QAtom::Fun(i, vs, v));
                }
                Atom::Eq(l, r) => {
                    let (a, b) = (slot(&mut q, l)?, slot(&mut q, r)?);
                    q.atoms.push(QAtom::Eq(a, b));
                }
            }
        }
        Ok(q)
    }

    fn pin(&mut self, c: usize) -> usize {
        let v = self.nvars;
        self.nvars += 1;
        self.atoms.push(QAtom::Const(c, v));
        v
    }
}

/// Extra conditions on solutions.
#[derive(Debug, Clone, Default)]
pub(crate) struct Constraints {
    /// Variables with a prescribed value.
    pub fixed: Vec<(usize, Elem)>,
    /// Variables that may not take a value.
    pub forbidden: Vec<(usize, Elem)>,
    /// Pairs of variables that must take different values.
    pub distinct: Vec<(usize, usize)>,
    /// All variables pairwise distinct.
    pub injective: bool,
}

/// Node-capped search; `visit` returns false to stop.
pub(crate) struct Matcher<'a, I: Interp + ?Sized> {
    query: &'a Query,
    target: &'a I,
    occurs: Vec<Vec<usize>>,
    distinct: Vec<Vec<usize>>,
    injective: bool,
    nodes: u64,
    cap: u64,
}

type Dom = u128;

impl<'a, I: Interp + ?Sized> Matcher<'a, I> {
    /// Runs the search. Returns `Ok(true)` if it ran to completion and
    /// `Ok(false)` if `visit` stopped it.
    pub(crate) fn run(
        query: &'a Query,
        target: &'a I,
        constraints: &Constraints,
        cap: u64,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> Result<bool> {
        let n = target.size();
        if n > MAX_TARGET {
            return Err(Error::Precondition(format!("target universe exceeds {MAX_TARGET} elements")));
        }
        let full: Dom = if n == MAX_TARGET { !0 } else { (1u128 << n) - 1 };
        let mut occurs = vec![Vec::new(); query.nvars];
        for (i, a) in query.atoms.iter().enumerate() {
            let mut vs = a.vars();
            vs.sort_unstable();
            vs.dedup();
            for v in vs {
                occurs[v].push(i);
            }
        }
        let mut distinct = vec![Vec::new(); query.nvars];
        for &(a, b) in &constraints.distinct {
            distinct[a].push(b);
            distinct[b].push(a);
        }
        let mut m = Matcher {
            query,
            target,
            occurs,
            distinct,
            injective: constraints.injective,
            nodes: 0,
            cap,
        };
        let mut domains = vec![full; query.nvars];
        for &(v, e) in &constraints.fixed {
            domains[v] &= 1u128.checked_shl(e as u32).unwrap_or(0);
        }
        for &(v, e) in &constraints.forbidden {
            domains[v] &= !1u128.checked_shl(e as u32).unwrap_or(0);
        }
        for a in &query.atoms {
            if let QAtom::Const(c, v) = a {
                domains[*v] &= match target.cst(*c) {
                    Some(e) => 1 << e,
                    None => 0,
                };
            }
        }
        if query.nvars > 0 && domains.iter().any(|d| *d == 0) {
            return Ok(true);
        }
        let mut assigned = vec![false; query.nvars];
        let mut values = vec![0; query.nvars];
        if query.nvars == 0 {
            return Ok(visit(&[]));
        }
        match m.rec(&mut domains, &mut assigned, &mut values, visit) {
            Step::Continue => Ok(true),
            Step::Stop => Ok(false),
            Step::Abort => Err(Error::BudgetExhausted(format!("homomorphism search exceeded {cap} nodes"))),
        }
    }

    fn rec(
        &mut self,
        domains: &mut Vec<Dom>,
        assigned: &mut Vec<bool>,
        values: &mut Vec<Elem>,
        visit: &mut dyn FnMut(&[Elem]) -> bool,
    ) -> Step {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Step::Abort;
        }
        let pick = (0..domains.len())
            .filter(|&v| !assigned[v])
            .min_by_key(|&v| (domains[v].count_ones(), v));
        let Some(v) = pick else {
            return if visit(values) { Step::Continue } else { Step::Stop };
        };
        let mut bits = domains[v];
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let saved = domains.clone();
            assigned[v] = true;
            values[v] = e;
            domains[v] = 1 << e;
            if self.propagate(v, e, domains, assigned, values) {
                match self.rec(domains, assigned, values, visit) {
                    Step::Continue => {}
                    other => {
                        assigned[v] = false;
                        *domains = saved;
                        return other;
                    }
                }
            }
            assigned[v] = false;
            *domains = saved;
        }
        Step::Continue
    }

    fn propagate(&self, v: usize, e: Elem, domains: &mut [Dom], assigned: &[bool], values: &mut [Elem]) -> bool {
        let bit = 1u128 << e;
        if self.injective {
            for (u, d) in domains.iter_mut().enumerate() {
                if u != v && !assigned[u] {
                    *d &= !bit;
                    if *d == 0 {
                        return false;
                    }
                } else if u != v && values[u] == e {
                    return false;
                }
            }
        }
        for &u in &self.distinct[v] {
            if assigned[u] {
                if values[u] == e {
                    return false;
                }
            } else {
                domains[u] &= !bit;
                if domains[u] == 0 {
                    return false;
                }
            }
        }
        for &ai in &self.occurs[v] {
            let atom = &self.query.atoms[ai];
            let mut first = None;
            let mut multi = false;
            for u in atom.vars() {
                if !assigned[u] {
                    match first {
                        None => first = Some(u),
                        Some(f) if f != u => multi = true,
                        _ => {}
                    }
                }
            }
            match (first, multi) {
                (None, _) => {
                    if !atom.holds(self.target, values) {
                        return false;
                    }
                }
                (Some(u), false) => {
                    let mut keep: Dom = 0;
                    let mut bits = domains[u];
                    while bits != 0 {
                        let c = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        values[u] = c;
                        if atom.holds(self.target, values) {
                            keep |= 1 << c;
                        }
                    }
                    domains[u] = keep;
                    if keep == 0 {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }
}

enum Step {
    Continue,
    Stop,
    Abort,
}

/// All solutions, in search order.
pub(crate) fn solutions<I: Interp + ?Sized>(query: &Query, target: &I, c: &Constraints, cap: u64) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    Matcher::run(query, target, c, cap, &mut |vals| {
        out.push(vals.to_vec());
        true
    })?;
    Ok(out)
}

/// First solution found, if any.
pub(crate) fn find<I: Interp + ?Sized>(query: &Query, target: &I, c: &Constraints, cap: u64) -> Result<Option<Vec<Elem>>> {
    let mut out = None;
    Matcher::run(query, target, c, cap, &mut |vals| {
        out = Some(vals.to_vec());
        false
    })?;
    Ok(out)
}
