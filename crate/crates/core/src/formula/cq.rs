//! Conjunctive queries: disjunctive normal form and flattening of positive
//! formulas, and pointed positive diagrams of finite structures.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Atom, PosEx, PosQf, Term, AUX_PREFIX};
use crate::error::{Error, Result};
use crate::structure::{Elem, Fact, PointedStructure};

/// Default bound on the number of disjuncts produced by [`to_cq_dnf`].
pub const DEFAULT_DNF_CAP: usize = 4096;

/// `exists exists. atoms`, with free variables `free`.
///
/// Atoms are flat: relation arguments are variables or constants, and
/// equalities are either between two such terms or of the form
/// `f(u1, .., un) = v` with flat `ui`, `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cq {
    pub free: Vec<String>,
    pub exists: Vec<String>,
    pub atoms: Vec<Atom>,
}

impl Cq {
    /// Number of variables, free and existential.
    pub fn size(&self) -> usize {
        self.free.len() + self.exists.len()
    }

    pub fn to_posex(&self) -> PosEx {
        let matrix = if self.atoms.len() == 1 {
            PosQf::Atom(self.atoms[0].clone())
        } else {
            PosQf::And(self.atoms.iter().cloned().map(PosQf::Atom).collect())
        };
        PosEx::new(self.exists.clone(), matrix)
    }

    pub fn is_sentence(&self) -> bool {
        self.free.is_empty()
    }
}

impl fmt::Display for Cq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_posex())
    }
}

/// Disjunctive normal form of the matrix, as lists of atoms.
fn dnf(q: &PosQf, cap: usize) -> Result<Vec<Vec<Atom>>> {
    Ok(match q {
        PosQf::Atom(Atom::False) => Vec::new(),
        PosQf::Atom(Atom::True) => vec![Vec::new()],
        PosQf::Atom(a) => vec![vec![a.clone()]],
        PosQf::Or(xs) => {
            let mut out = Vec::new();
            for x in xs {
                out.extend(dnf(x, cap)?);
                if out.len() > cap {
                    return Err(blowup(cap));
                }
            }
            out
        }
        PosQf::And(xs) => {
            let mut acc: Vec<Vec<Atom>> = vec![Vec::new()];
            for x in xs {
                let part = dnf(x, cap)?;
                if acc.len().saturating_mul(part.len()) > cap {
                    return Err(blowup(cap));
                }
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for p in &part {
                        let mut c = a.clone();
                        c.extend(p.iter().cloned());
                        next.push(c);
                    }
                }
                acc = next;
            }
            acc
        }
    })
}

fn blowup(cap: usize) -> Error {
    Error::BudgetExhausted(format!("disjunctive normal form exceeds {cap} disjuncts"))
}

struct Flattener {
    atoms: Vec<Atom>,
    aux: Vec<String>,
}

impl Flattener {
    fn fresh(&mut self) -> String {
        let v = format!("{AUX_PREFIX}{}", self.aux.len());
        self.aux.push(v.clone());
        v
    }

    fn flat_term(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(_) | Term::Const(_) => t.clone(),
            Term::App(f, args) => {
                let args = args.iter().map(|a| self.flat_term(a)).collect();
                let u = self.fresh();
                self.atoms.push(Atom::Eq(Term::App(f.clone(), args), Term::Var(u.clone())));
                Term::Var(u)
            }
        }
    }

    fn flat_app(&mut self, t: &Term) -> Term {
        match t {
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| self.flat_term(a)).collect()),
            _ => t.clone(),
        }
    }

    fn atom(&mut self, a: &Atom) {
        let flat = match a {
            Atom::Rel(r, ts) => Atom::Rel(r.clone(), ts.iter().map(|t| self.flat_term(t)).collect()),
            Atom::Eq(l, r) => match (l.is_flat(), r.is_flat()) {
                (true, true) => a.clone(),
                (false, true) => Atom::Eq(self.flat_app(l), r.clone()),
                (true, false) => Atom::Eq(self.flat_app(r), l.clone()),
                (false, false) => {
                    let lhs = self.flat_app(l);
                    let rhs = self.flat_term(r);
                    Atom::Eq(lhs, rhs)
                }
            },
            Atom::True | Atom::False => return,
        };
        self.atoms.push(flat);
    }
}

/// Equivalent finite disjunction of flat conjunctive queries.
///
/// Disjuncts containing `false` are dropped, so the result is empty exactly
/// when the formula is unsatisfiable by its shape. Auxiliary variables are
/// named with the reserved prefix `_v`. Existential variables that no atom
/// mentions are dropped (universes are nonempty).
pub fn to_cq_dnf(p: &PosEx, cap: usize) -> Result<Vec<Cq>> {
    let free = p.free_vars();
    let mut out = Vec::new();
    for conj in dnf(&p.matrix, cap)? {
        let mut fl = Flattener {
            atoms: Vec::new(),
            aux: Vec::new(),
        };
        for a in &conj {
            fl.atom(a);
        }
        let mut atoms = Vec::new();
        for a in fl.atoms {
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
        let used: BTreeSet<String> = atoms.iter().flat_map(|a| a.vars()).collect();
        let mut exists: Vec<String> = p.vars.iter().filter(|v| used.contains(*v)).cloned().collect();
        exists.extend(fl.aux);
        out.push(Cq {
            free: free.clone(),
            exists,
            atoms,
        });
    }
    Ok(out)
}

/// Conjunction of every atomic fact among `subset`, with anchor positions
/// free and the remaining elements of `subset` existentially quantified.
///
/// Free variables are `x` (or `x1, x2, ..` for several anchors) and bound
/// ones `y` (or `y1, y2, ..`). A repeated anchor contributes an equality
/// between its positions.
pub fn pointed_positive_diagram(p: &PointedStructure, subset: &BTreeSet<Elem>) -> Result<Cq> {
    let s = &p.structure;
    if p.anchors.iter().any(|a| !subset.contains(a)) {
        return Err(Error::Precondition("anchors must lie in the subset".into()));
    }
    if subset.iter().any(|&e| e >= s.size()) {
        return Err(Error::Precondition("subset outside the universe".into()));
    }
    let name = |prefix: &str, i: usize, total: usize| {
        if total == 1 {
            prefix.to_string()
        } else {
            format!("{prefix}{}", i + 1)
        }
    };
    let mut var_of: Vec<Option<String>> = vec![None; s.size()];
    let mut free = Vec::new();
    let mut atoms = Vec::new();
    let m = p.anchors.len();
    for (i, &a) in p.anchors.iter().enumerate() {
        let v = name("x", i, m);
        match &var_of[a] {
            Some(first) => atoms.push(Atom::Eq(Term::Var(first.clone()), Term::Var(v.clone()))),
            None => var_of[a] = Some(v.clone()),
        }
        free.push(v);
    }
    let rest: Vec<Elem> = subset.iter().copied().filter(|e| var_of[*e].is_none()).collect();
    let mut exists = Vec::new();
    for (i, &e) in rest.iter().enumerate() {
        let v = name("y", i, rest.len());
        var_of[e] = Some(v.clone());
        exists.push(v);
    }
    let var = |e: Elem| Term::Var(var_of[e].clone().expect("element of the subset"));
    let sig = s.signature();
    let mask: Vec<bool> = (0..s.size()).map(|e| subset.contains(&e)).collect();
    for fact in s.facts_within(&mask) {
        atoms.push(match fact {
            Fact::Relation(r, t) => Atom::Rel(sig.relations()[r].0.clone(), t.iter().map(|&e| var(e)).collect()),
            Fact::Function(f, args, v) => Atom::Eq(
                Term::App(sig.functions()[f].0.clone(), args.iter().map(|&e| var(e)).collect()),
                var(v),
            ),
            Fact::Constant(c, v) => Atom::Eq(Term::Const(sig.constants()[c].clone()), var(v)),
        });
    }
    Ok(Cq { free, exists, atoms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_positive;
    use crate::zoo;

    #[test]
    fn distributivity() {
        let p = parse_positive("exists x. (R(x) | S(x)) & T(x)").unwrap();
        let cqs = to_cq_dnf(&p, DEFAULT_DNF_CAP).unwrap();
        assert_eq!(cqs.len(), 2);
        assert_eq!(cqs[0].to_string(), "exists x. R(x) & T(x)");
        assert_eq!(cqs[1].to_string(), "exists x. S(x) & T(x)");
    }

    #[test]
    fn antilogy_absorbs() {
        let p = parse_positive("exists x. false").unwrap();
        assert!(to_cq_dnf(&p, DEFAULT_DNF_CAP).unwrap().is_empty());
        let p = parse_positive("true").unwrap();
        let cqs = to_cq_dnf(&p, DEFAULT_DNF_CAP).unwrap();
        assert_eq!(cqs.len(), 1);
        assert!(cqs[0].atoms.is_empty());
    }

    #[test]
    fn flattening() {
        let p = parse_positive("exists x. f(f(x)) = x").unwrap();
        let cqs = to_cq_dnf(&p, DEFAULT_DNF_CAP).unwrap();
        assert_eq!(cqs.len(), 1);
        assert_eq!(cqs[0].exists, vec!["x", "_v0"]);
        assert_eq!(cqs[0].to_string(), "exists x _v0. f(x) = _v0 & f(_v0) = x");
    }

    #[test]
    fn cap() {
        let text = (0..13).map(|i| format!("(R{i}(x) | S{i}(x))")).collect::<Vec<_>>().join(" & ");
        let p = parse_positive(&text).unwrap();
        assert!(matches!(to_cq_dnf(&p, DEFAULT_DNF_CAP), Err(Error::BudgetExhausted(_))));
    }

    #[test]
    fn diagram_of_two_chain() {
        let c = zoo::chain2();
        let p = PointedStructure::new(c, vec![0]).unwrap();
        let d = pointed_positive_diagram(&p, &[0, 1].into()).unwrap();
        assert_eq!(d.free, vec!["x"]);
        assert_eq!(d.to_string(), "exists y. leq(x, x) & leq(x, y) & leq(y, y)");
    }

    #[test]
    fn diagram_without_facts_is_top() {
        let a = zoo::antichain2().reduct(std::sync::Arc::new(crate::signature::Signature::relational([("leq", 2)]).unwrap())).unwrap();
        let empty = crate::structure::FiniteStructure::from_tables_numbered(a.signature().clone(), 1, vec![vec![false]], vec![], vec![]).unwrap();
        let p = PointedStructure::new(empty, vec![0]).unwrap();
        let d = pointed_positive_diagram(&p, &[0].into()).unwrap();
        assert!(d.atoms.is_empty());
        assert!(d.to_posex().is_top());
    }

    #[test]
    fn diagram_of_trivial_group() {
        let g = zoo::cyclic_group(1);
        let p = PointedStructure::new(g, vec![]).unwrap();
        let d = pointed_positive_diagram(&p, &[0].into()).unwrap();
        assert_eq!(d.to_string(), "exists y. mul(y, y) = y & inv(y) = y & e = y");
    }

    #[test]
    fn repeated_anchor() {
        let p = PointedStructure::new(zoo::chain2(), vec![1, 1]).unwrap();
        let d = pointed_positive_diagram(&p, &[1].into()).unwrap();
        assert_eq!(d.to_string(), "x1 = x2 & leq(x1, x1)");
    }
}
