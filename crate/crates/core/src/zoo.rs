//! Small named structures and theories used throughout the examples and
//! tests: posets, unary functions, groups.

use std::sync::Arc;

use crate::signature::Signature;
use crate::structure::{FiniteStructure, StructureBuilder};
use crate::theory::Theory;

/// `{leq/2}`.
pub fn poset_signature() -> Arc<Signature> {
    Arc::new(Signature::relational([("leq", 2)]).expect("valid signature"))
}

/// `{f/1}`.
pub fn unary_signature() -> Arc<Signature> {
    Arc::new(Signature::new(Vec::<(&str, usize)>::new(), [("f", 1)], Vec::<&str>::new()).expect("valid signature"))
}

/// `{R/2}`.
pub fn digraph_signature() -> Arc<Signature> {
    Arc::new(Signature::relational([("R", 2)]).expect("valid signature"))
}

/// `{mul/2, inv/1, e}`.
pub fn group_signature() -> Arc<Signature> {
    Arc::new(Signature::new(Vec::<(&str, usize)>::new(), [("mul", 2), ("inv", 1)], ["e"]).expect("valid signature"))
}

/// `{mul/2, inv/1, e, a}`.
pub fn group_plus_signature() -> Arc<Signature> {
    Arc::new(Signature::new(Vec::<(&str, usize)>::new(), [("mul", 2), ("inv", 1)], ["e", "a"]).expect("valid signature"))
}

fn poset(names: &[&str], pairs: &[(&str, &str)]) -> FiniteStructure {
    let mut b = StructureBuilder::new(poset_signature(), names.iter().copied()).expect("distinct names");
    for (x, y) in pairs {
        b.add_fact("leq", &[*x, *y]).expect("known elements");
    }
    b.build().expect("total structure")
}

/// The reflexive point `({x}, leq)`.
pub fn point() -> FiniteStructure {
    poset(&["x"], &[("x", "x")])
}

/// `0 <= 1`.
pub fn chain2() -> FiniteStructure {
    poset(&["0", "1"], &[("0", "0"), ("0", "1"), ("1", "1")])
}

/// Two incomparable reflexive points.
pub fn antichain2() -> FiniteStructure {
    poset(&["0", "1"], &[("0", "0"), ("1", "1")])
}

/// `0 <= 1 <= 2`.
pub fn chain3() -> FiniteStructure {
    poset(
        &["0", "1", "2"],
        &[("0", "0"), ("0", "1"), ("0", "2"), ("1", "1"), ("1", "2"), ("2", "2")],
    )
}

/// `({x}, f)` with `f(x) = x`.
pub fn singleton_loop() -> FiniteStructure {
    FiniteStructure::from_tables(unary_signature(), vec!["x".into()], vec![], vec![vec![0]], vec![]).expect("valid")
}

/// `({a, b}, f)` with `f` swapping the two points.
pub fn two_cycle() -> FiniteStructure {
    FiniteStructure::from_tables(unary_signature(), vec!["a".into(), "b".into()], vec![], vec![vec![1, 0]], vec![])
        .expect("valid")
}

/// `Z_n` written multiplicatively over `{mul, inv, e}`, elements `0..n`.
pub fn cyclic_group(n: usize) -> FiniteStructure {
    assert!(n >= 1);
    let mut mul = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            mul.push((x + y) % n);
        }
    }
    let inv = (0..n).map(|x| (n - x) % n).collect();
    FiniteStructure::from_tables_numbered(group_signature(), n, vec![], vec![mul, inv], vec![0]).expect("valid")
}

/// `Z_2 x Z_2`.
pub fn klein_group() -> FiniteStructure {
    let mut mul = Vec::with_capacity(16);
    for x in 0..4usize {
        for y in 0..4usize {
            mul.push(x ^ y);
        }
    }
    FiniteStructure::from_tables_numbered(group_signature(), 4, vec![], vec![mul, (0..4).collect()], vec![0])
        .expect("valid")
}

/// `Z_n` over `{mul, inv, e, a}` with `a` naming the generator `1`.
pub fn cyclic_group_plus(n: usize) -> FiniteStructure {
    let g = cyclic_group(n);
    g.expand_constants(group_plus_signature(), &[1 % n]).expect("valid expansion")
}

/// Partial orders: reflexive, antisymmetric, transitive.
pub fn t_pos() -> Theory {
    Theory::parse(
        "T_pos",
        poset_signature(),
        "hinductive: forall x. leq(x, x);
         hinductive: forall x y. leq(x, y) & leq(y, x) -> x = y;
         hinductive: forall x y z. leq(x, y) & leq(y, z) -> leq(x, z);",
    )
    .expect("valid theory")
}

fn group_axioms() -> &'static str {
    "hinductive: forall x y z. mul(mul(x, y), z) = mul(x, mul(y, z));
     hinductive: forall x. mul(x, e) = x & mul(e, x) = x;
     hinductive: forall x. mul(x, inv(x)) = e & mul(inv(x), x) = e;"
}

/// Groups.
pub fn t_g() -> Theory {
    Theory::parse("T_g", group_signature(), group_axioms()).expect("valid theory")
}

/// Groups with a named element different from the identity.
pub fn t_g_plus() -> Theory {
    let text = format!("{} huniversal: ! a = e;", group_axioms());
    Theory::parse("T_g_plus", group_plus_signature(), &text).expect("valid theory")
}

/// `f^n(x) = x` for the variable `x`.
pub fn power_term(n: usize) -> String {
    let mut t = "x".to_string();
    for _ in 0..n {
        t = format!("f({t})");
    }
    t
}

/// `{exists x. f^n(x) = x}`.
pub fn fixed_point_theory(n: usize) -> Theory {
    Theory::parse(
        &format!("T_fix{n}"),
        unary_signature(),
        &format!("positive: exists x. {} = x;", power_term(n)),
    )
    .expect("valid theory")
}

/// `{! exists x. f^n(x) = x}`.
pub fn cycle_free_theory(n: usize) -> Theory {
    Theory::parse(
        &format!("T_nofix{n}"),
        unary_signature(),
        &format!("huniversal: ! exists x. {} = x;", power_term(n)),
    )
    .expect("valid theory")
}
