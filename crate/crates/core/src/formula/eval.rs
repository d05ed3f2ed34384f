use std::collections::HashMap;

use super::{Atom, Formula};
use crate::error::{Error, Result};
use crate::signature::Symbol;
use crate::structure::{Elem, FiniteStructure};

/// Tarskian truth of `f` in `s` under `env`; quantifiers range over the
/// universe. Names not bound by `env` are looked up as constants.
pub fn eval(s: &FiniteStructure, f: &Formula, env: &HashMap<String, Elem>) -> Result<bool> {
    let mut env = env.clone();
    eval_in(s, f, &mut env)
}

pub fn eval_sentence(s: &FiniteStructure, f: &Formula) -> Result<bool> {
    eval(s, f, &HashMap::new())
}

fn eval_atom(s: &FiniteStructure, a: &Atom, env: &HashMap<String, Elem>) -> Result<bool> {
    match a {
        Atom::True => Ok(true),
        Atom::False => Ok(false),
        Atom::Eq(l, r) => Ok(s.evaluate_term(l, env)? == s.evaluate_term(r, env)?),
        Atom::Rel(name, ts) => match s.signature().lookup(name) {
            Some(Symbol::Relation(r)) => {
                let arity = s.signature().relation_arity(r);
                if arity != ts.len() {
                    return Err(Error::Arity {
                        symbol: name.clone(),
                        expected: arity,
                        found: ts.len(),
                    });
                }
                let args = ts.iter().map(|t| s.evaluate_term(t, env)).collect::<Result<Vec<_>>>()?;
                Ok(s.holds(r, &args))
            }
            _ => Err(Error::UnknownSymbol(name.clone())),
        },
    }
}

fn eval_in(s: &FiniteStructure, f: &Formula, env: &mut HashMap<String, Elem>) -> Result<bool> {
    match f {
        Formula::Atom(a) => eval_atom(s, a, env),
        Formula::Not(x) => Ok(!eval_in(s, x, env)?),
        Formula::And(xs) => {
            for x in xs {
                if !eval_in(s, x, env)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(xs) => {
            for x in xs {
                if eval_in(s, x, env)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Implies(a, b) => Ok(!eval_in(s, a, env)? || eval_in(s, b, env)?),
        Formula::Exists(vs, body) | Formula::Forall(vs, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let saved: Vec<Option<Elem>> = vs.iter().map(|v| env.get(v).copied()).collect();
            let result = quantify(s, vs, body, env, universal);
            for (v, old) in vs.iter().zip(saved) {
                match old {
                    Some(e) => env.insert(v.clone(), e),
                    None => env.remove(v),
                };
            }
            result
        }
    }
}

fn quantify(
    s: &FiniteStructure,
    vs: &[String],
    body: &Formula,
    env: &mut HashMap<String, Elem>,
    universal: bool,
) -> Result<bool> {
    let Some((v, rest)) = vs.split_first() else {
        return eval_in(s, body, env);
    };
    for e in s.elements() {
        env.insert(v.clone(), e);
        let r = quantify(s, rest, body, env, universal)?;
        if r != universal {
            return Ok(r);
        }
    }
    Ok(universal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_formula_in, Parsed};
    use crate::zoo;

    fn holds(s: &FiniteStructure, text: &str) -> bool {
        let f = parse_formula_in(text, s.signature()).unwrap().to_formula().unwrap();
        eval_sentence(s, &f).unwrap()
    }

    #[test]
    fn chain_has_comparable_pair() {
        assert!(holds(&zoo::chain2(), "exists x y. leq(x, y)"));
        assert!(!holds(&zoo::chain2(), "forall x y. leq(x, y)"));
    }

    #[test]
    fn loop_satisfies_every_power() {
        let l = zoo::singleton_loop();
        for n in 1..6 {
            let mut t = "x".to_string();
            for _ in 0..n {
                t = format!("f({t})");
            }
            assert!(holds(&l, &format!("exists x. {t} = x")));
        }
    }

    #[test]
    fn two_cycle_has_no_fixed_point() {
        let c = zoo::two_cycle();
        assert!(!holds(&c, "exists x. f(x) = x"));
        assert!(holds(&c, "exists x. f(f(x)) = x"));
    }

    #[test]
    fn errors() {
        let c = zoo::chain2();
        let Parsed::Formula(f) = crate::formula::parse_formula("leq(x, y)").unwrap() else {
            panic!()
        };
        assert!(matches!(eval_sentence(&c, &f), Err(Error::UnboundVariable(_))));
        let Parsed::Formula(f) = crate::formula::parse_formula("exists x. R(x)").unwrap() else {
            panic!()
        };
        assert!(matches!(eval_sentence(&c, &f), Err(Error::UnknownSymbol(_))));
    }
}
