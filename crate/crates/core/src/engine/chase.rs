//! Forward chaining over named elements. Every element of the start model
//! stands for a fixed element of any model extending it, so facts the
//! chase derives hold in all such models and a derived `false` proves
//! that none exists. Undetermined relation cells are unknown, not false.

use super::compiled::{eval_ex, eval_qf, for_each_assignment, forced_by, CAtom, CQf, CRule, Forced};
use super::partial::{Clash, PartialModel};
use crate::error::{Error, Result};
use crate::structure::Elem;

#[derive(Debug, Clone)]
pub(crate) enum ChaseResult {
    /// Fixpoint reached; `class` maps start elements to chased elements.
    #[cfg_attr(not(test), allow(dead_code))]
    Model { model: PartialModel, class: Vec<Elem> },
    Contradiction,
}

enum Action {
    Force(Forced),
    Merge(Elem, Elem),
    Bottom,
}

fn actions(pm: &PartialModel, q: &CQf, env: &[Elem], out: &mut Vec<Action>) {
    match q {
        CQf::Atom(CAtom::True) => {}
        CQf::Atom(CAtom::False) => out.push(Action::Bottom),
        CQf::Atom(a @ CAtom::Rel(..)) => {
            if eval_qf(pm, q, env) == Some(false) {
                out.push(Action::Bottom);
            } else {
                let mut f = Vec::new();
                forced_by(pm, &CQf::Atom(a.clone()), env, &mut f);
                out.extend(f.into_iter().map(Action::Force));
            }
        }
        CQf::Atom(CAtom::Eq(l, r)) => {
            let lv = super::compiled::eval_term(pm, l, env);
            let rv = super::compiled::eval_term(pm, r, env);
            match (lv, rv) {
                (Some(a), Some(b)) if a != b => out.push(Action::Merge(a, b)),
                (Some(_), Some(_)) => {}
                _ => {
                    let mut f = Vec::new();
                    forced_by(pm, q, env, &mut f);
                    out.extend(f.into_iter().map(Action::Force));
                }
            }
        }
        CQf::And(xs) => {
            for x in xs {
                actions(pm, x, env, out);
            }
        }
        CQf::Or(xs) => {
            let live: Vec<&CQf> = xs.iter().filter(|x| !matches!(x, CQf::Atom(CAtom::False))).collect();
            match live.as_slice() {
                [] => out.push(Action::Bottom),
                [x] => actions(pm, x, env, out),
                _ => {}
            }
        }
    }
}

fn is_bottom(q: &CQf) -> bool {
    match q {
        CQf::Atom(CAtom::False) => true,
        CQf::Or(xs) => xs.iter().all(is_bottom),
        CQf::And(xs) => xs.iter().any(is_bottom),
        CQf::Atom(_) => false,
    }
}

fn find(parent: &mut [Elem], x: Elem) -> Elem {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Merges the given pairs and closes under functionality.
fn merge_all(pm: &PartialModel, pairs: Vec<(Elem, Elem)>) -> (PartialModel, Vec<Elem>) {
    let mut model = pm.clone();
    let mut total: Vec<Elem> = (0..pm.n).collect();
    let mut pending = pairs;
    while !pending.is_empty() {
        let mut parent: Vec<Elem> = (0..model.n).collect();
        for (a, b) in pending.drain(..) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let roots: Vec<Elem> = (0..model.n).map(|e| find(&mut parent, e)).collect();
        let mut reps: Vec<Elem> = roots.clone();
        reps.sort_unstable();
        reps.dedup();
        let class: Vec<Elem> = roots.iter().map(|r| reps.binary_search(r).expect("root")).collect();
        let (next, clashes) = model.quotient(&class, reps.len());
        for t in total.iter_mut() {
            *t = class[*t];
        }
        model = next;
        pending = clashes;
    }
    (model, total)
}

/// Applies the rules until nothing changes. `cap` bounds the number of
/// premise evaluations.
pub(crate) fn chase(start: PartialModel, rules: &[CRule], cap: u64) -> Result<ChaseResult> {
    let mut pm = start;
    let mut class: Vec<Elem> = (0..pm.n).collect();
    let mut steps = 0u64;
    loop {
        let mut acts = Vec::new();
        let mut aborted = false;
        for rule in rules {
            let mut env = vec![0; rule.nvars];
            for_each_assignment(pm.n, &rule.universal, &mut env, &mut |env| {
                steps += 1;
                if steps > cap {
                    aborted = true;
                    return false;
                }
                if eval_ex(&pm, &rule.premise, env) != Some(true) || eval_ex(&pm, &rule.conclusion, env) == Some(true) {
                    return true;
                }
                if rule.conclusion.vars.is_empty() {
                    actions(&pm, &rule.conclusion.matrix, env, &mut acts);
                } else if is_bottom(&rule.conclusion.matrix) {
                    acts.push(Action::Bottom);
                }
                true
            });
            if aborted {
                return Err(Error::BudgetExhausted(format!("chase exceeded {cap} steps")));
            }
        }
        let mut changed = false;
        let mut merges = Vec::new();
        for a in acts {
            match a {
                Action::Bottom => return Ok(ChaseResult::Contradiction),
                Action::Merge(a, b) => merges.push((a, b)),
                Action::Force(f) => match pm.apply(&f) {
                    Ok(c) => changed |= c,
                    Err(Clash) => match f {
                        Forced::Fun(g, args, v) => {
                            let old = super::compiled::Interp::fun(&pm, g, &args).expect("clash on a set cell");
                            merges.push((old, v));
                        }
                        Forced::Const(c, v) => merges.push((pm.cst[c].expect("clash on a set cell"), v)),
                        Forced::Rel(..) => return Ok(ChaseResult::Contradiction),
                    },
                },
            }
        }
        if !merges.is_empty() {
            if merges.iter().any(|(a, b)| a != b) {
                changed = true;
            }
            let (next, map) = merge_all(&pm, merges);
            for c in class.iter_mut() {
                *c = map[*c];
            }
            pm = next;
        }
        if !changed {
            return Ok(ChaseResult::Model { model: pm, class });
        }
    }
}
