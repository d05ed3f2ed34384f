//! Model search for finite h-inductive theories.
//!
//! Cells are decided one at a time with unit propagation after each
//! decision: a rule whose premise is true forces its conclusion when the
//! conclusion is quantifier free, and a rule whose conclusion is false
//! forces the last open relation atom of its premise to false. Values of
//! function and constant cells are restricted by the least-number
//! heuristic: a fresh element is only ever introduced as the smallest
//! element not yet touched.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::canon::{canonical_form, canonical_labeling};
use crate::engine::compiled::{eval_ex, eval_qf, for_each_assignment, forced_by, rule_holds, CAtom, CQf, CRule, Forced};
use crate::engine::partial::{Cell, PartialModel};
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::structure::{Elem, FiniteStructure};
use crate::theory::Theory;

/// Limits for one model search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of search nodes.
    pub node_cap: u64,
    /// Stop after this many (non-isomorphic when reducing) models.
    pub max_models: Option<usize>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            node_cap: crate::morphism::DEFAULT_NODE_CAP,
            max_models: None,
        }
    }
}

/// All models of `theory` with universe size `1..=n`, one per isomorphism
/// class, ordered by size and canonical code.
pub fn find_models(theory: &Theory, n: usize, limits: SearchLimits) -> Result<Vec<FiniteStructure>> {
    let mut out = Vec::new();
    for size in 1..=n {
        let rest = limits.max_models.map(|m| m.saturating_sub(out.len()));
        if rest == Some(0) {
            break;
        }
        let lim = SearchLimits {
            max_models: rest,
            ..limits
        };
        out.extend(models_of_size(theory.signature(), theory.rules(), size, lim)?);
    }
    Ok(out)
}

/// Models of exactly `size` elements, up to isomorphism.
pub(crate) fn models_of_size(sig: &Arc<Signature>, rules: &[CRule], size: usize, limits: SearchLimits) -> Result<Vec<FiniteStructure>> {
    let mut found: BTreeMap<Vec<usize>, FiniteStructure> = BTreeMap::new();
    search(PartialModel::new(sig.clone(), size), 0, rules, limits.node_cap, &mut |s| {
        let (code, _) = canonical_labeling(&s);
        found.entry(code).or_insert_with(|| canonical_form(&s));
        limits.max_models.map_or(true, |m| found.len() < m)
    })?;
    Ok(found.into_values().collect())
}

/// First model extending `start`, if any, preferring false relation cells;
/// elements `0..pinned` are treated as distinguished by the caller and
/// excluded from symmetry breaking.
pub(crate) fn complete_minimal(start: PartialModel, pinned: usize, rules: &[CRule], cap: u64) -> Result<Option<FiniteStructure>> {
    let mut out = None;
    run(start, pinned, rules, cap, [0, 1], &mut |s| {
        out = Some(s);
        false
    })?;
    Ok(out)
}

/// Depth-first search over completions of `start`. `visit` receives every
/// total model reached (possibly several per isomorphism class) and returns
/// false to stop. Returns whether the search ran to completion.
pub(crate) fn search(
    start: PartialModel,
    pinned: usize,
    rules: &[CRule],
    cap: u64,
    visit: &mut dyn FnMut(FiniteStructure) -> bool,
) -> Result<bool> {
    run(start, pinned, rules, cap, [1, 0], visit)
}

fn run(
    start: PartialModel,
    pinned: usize,
    rules: &[CRule],
    cap: u64,
    rel_order: [Elem; 2],
    visit: &mut dyn FnMut(FiniteStructure) -> bool,
) -> Result<bool> {
    let cells = start.cells();
    let mut touched = start.mentioned();
    for t in touched.iter_mut().take(pinned) {
        *t = true;
    }
    let top = touched.iter().rposition(|&t| t);
    let mut s = Search {
        rules,
        cells,
        rel_order,
        nodes: 0,
        cap,
        visit,
    };
    let mut pm = start;
    if !propagate(&mut pm, rules) {
        return Ok(true);
    }
    match s.rec(pm, top, 0) {
        Step::Continue => Ok(true),
        Step::Stop => Ok(false),
        Step::Abort => Err(Error::BudgetExhausted(format!("model search exceeded {cap} nodes"))),
    }
}

enum Step {
    Continue,
    Stop,
    Abort,
}

struct Search<'a> {
    rules: &'a [CRule],
    cells: Vec<Cell>,
    rel_order: [Elem; 2],
    nodes: u64,
    cap: u64,
    visit: &'a mut dyn FnMut(FiniteStructure) -> bool,
}

impl Search<'_> {
    fn rec(&mut self, pm: PartialModel, top: Option<Elem>, from: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Step::Abort;
        }
        let Some(i) = (from..self.cells.len()).find(|&i| pm.get(self.cells[i]).is_none()) else {
            let s = pm.to_structure_closed().expect("total");
            if self.rules.iter().all(|r| rule_holds(&s, r)) && !(self.visit)(s) {
                return Step::Stop;
            }
            return Step::Continue;
        };
        let cell = self.cells[i];
        let args = pm.args(cell);
        let arg_top = args.iter().copied().max();
        let top = match (top, arg_top) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let values: Vec<Elem> = match cell {
            Cell::Rel(..) => self.rel_order.to_vec(),
            _ => {
                let limit = top.map_or(0, |t| t + 1).min(pm.n - 1);
                (0..=limit).collect()
            }
        };
        for v in values {
            let mut next = pm.clone();
            if next.set(cell, v).is_err() {
                continue;
            }
            if !propagate(&mut next, self.rules) {
                continue;
            }
            let new_top = match cell {
                Cell::Rel(..) => top,
                _ => Some(top.map_or(v, |t| t.max(v))),
            };
            match self.rec(next, new_top, i + 1) {
                Step::Continue => {}
                other => return other,
            }
        }
        Step::Continue
    }
}

/// Premise atoms of a quantifier-free conjunction.
fn conjuncts(q: &CQf) -> Option<Vec<&CAtom>> {
    match q {
        CQf::Atom(a) => Some(vec![a]),
        CQf::And(xs) => {
            let mut out = Vec::new();
            for x in xs {
                out.extend(conjuncts(x)?);
            }
            Some(out)
        }
        CQf::Or(_) => None,
    }
}

/// Unit propagation to a fixpoint; false on contradiction.
pub(crate) fn propagate(pm: &mut PartialModel, rules: &[CRule]) -> bool {
    loop {
        let mut forced: Vec<Forced> = Vec::new();
        let mut negated: Vec<(usize, Vec<Elem>)> = Vec::new();
        let mut failed = false;
        for rule in rules {
            let mut env = vec![0; rule.nvars];
            let premise_atoms = if rule.premise.vars.is_empty() {
                conjuncts(&rule.premise.matrix)
            } else {
                None
            };
            for_each_assignment(pm.n, &rule.universal, &mut env, &mut |env| {
                let p = eval_ex(pm, &rule.premise, env);
                if p == Some(false) {
                    return true;
                }
                let c = eval_ex(pm, &rule.conclusion, env);
                match (p, c) {
                    (_, Some(true)) => {}
                    (Some(true), Some(false)) => {
                        failed = true;
                        return false;
                    }
                    (Some(true), None) => {
                        if rule.conclusion.vars.is_empty() {
                            forced_by(pm, &rule.conclusion.matrix, env, &mut forced);
                        }
                    }
                    (None, Some(false)) => {
                        if let Some(atoms) = &premise_atoms {
                            let mut open = atoms.iter().filter(|a| eval_qf(pm, &CQf::Atom((**a).clone()), env).is_none());
                            if let (Some(CAtom::Rel(r, ts)), None) = (open.next(), open.next()) {
                                let args: Option<Vec<Elem>> =
                                    ts.iter().map(|t| crate::engine::compiled::eval_term(pm, t, env)).collect();
                                if let Some(args) = args {
                                    negated.push((*r, args));
                                }
                            }
                        }
                    }
                    _ => {}
                }
                true
            });
            if failed {
                return false;
            }
        }
        let mut changed = false;
        for f in &forced {
            match pm.apply(f) {
                Ok(c) => changed |= c,
                Err(_) => return false,
            }
        }
        for (r, args) in &negated {
            let cell = Cell::Rel(*r, crate::structure::encode_tuple(args, pm.n));
            match pm.set(cell, 0) {
                Ok(c) => changed |= c,
                Err(_) => return false,
            }
        }
        if !changed {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_structures;
    use crate::zoo;

    fn oracle(t: &Theory, n: usize) -> Vec<FiniteStructure> {
        enumerate_structures(t.signature(), n, true, 10_000_000)
            .unwrap()
            .into_iter()
            .filter(|s| t.is_model(s).unwrap())
            .collect()
    }

    #[test]
    fn posets_match_enumeration() {
        let t = zoo::t_pos();
        let found = find_models(&t, 3, SearchLimits::default()).unwrap();
        assert_eq!(found.len(), 1 + 2 + 5);
        assert_eq!(found, oracle(&t, 3));
        assert_eq!(find_models(&t, 2, SearchLimits::default()).unwrap().len(), 3);
    }

    #[test]
    fn unary_theories_match_enumeration() {
        for k in 1..=3 {
            for t in [zoo::fixed_point_theory(k), zoo::cycle_free_theory(k)] {
                assert_eq!(find_models(&t, 3, SearchLimits::default()).unwrap(), oracle(&t, 3), "{}", t.name());
            }
        }
        assert_eq!(find_models(&zoo::fixed_point_theory(1), 1, SearchLimits::default()).unwrap().len(), 1);
    }

    #[test]
    fn groups_up_to_order_four() {
        let found = find_models(&zoo::t_g(), 4, SearchLimits::default()).unwrap();
        let sizes: Vec<usize> = found.iter().map(|g| g.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 4]);
        assert_eq!(find_models(&zoo::t_g(), 2, SearchLimits::default()).unwrap(), oracle(&zoo::t_g(), 2));
    }

    #[test]
    fn inconsistent_theory_has_no_models() {
        let t = Theory::parse("bot", zoo::poset_signature(), "hinductive: forall x. true -> false;").unwrap();
        assert!(find_models(&t, 3, SearchLimits::default()).unwrap().is_empty());
    }

    #[test]
    fn node_cap_is_reported() {
        let lim = SearchLimits {
            node_cap: 3,
            max_models: None,
        };
        assert!(matches!(find_models(&zoo::t_pos(), 3, lim), Err(Error::BudgetExhausted(_))));
    }
}
