//! Solving one amalgamation problem and checking an amalgamation basis.

use posmt::amalgamation::{check_basis, solve, AmalgamationProblem, Class, Kinds};
use posmt::morphism::Morphism;
use posmt::theory::verdict::Budget;
use posmt::zoo;

fn main() -> posmt::error::Result<()> {
    let b = Budget::new(3, 6, 3);
    let left = Morphism::new(zoo::point(), zoo::chain2(), vec![0])?;
    let right = Morphism::new(zoo::point(), zoo::antichain2(), vec![0])?;
    let kinds: Kinds = "[i,i,h,h]".parse()?;
    let class = Class::Theory { theory: zoo::t_pos() };
    let p = AmalgamationProblem::new(left, right, kinds, class.clone(), true, b)?;
    let outcome = solve(&p)?;
    match outcome.solution() {
        Some(s) => {
            println!("apex {} via the {} route", s.apex, s.route);
            println!("  out-maps {:?} and {:?}, re-verified: {:?}", s.out_left, s.out_right, s.verify(&p));
        }
        None => println!("no apex: {}", outcome.answer()),
    }

    let r = check_basis(&zoo::point(), Kinds::uniform(posmt::morphism::MorphismKind::Hom), &class, true, &b)?;
    println!("point is an [h]-strong basis of posets over {} spans: {}", r.instances.len(), r.verdict);
    Ok(())
}
