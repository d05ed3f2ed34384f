//! Bounded positively closed models of the posets, unary-function and
//! group theories.

use posmt::theory::ops::{is_pc_within, pc_models};
use posmt::theory::verdict::Budget;
use posmt::zoo;

fn main() -> posmt::error::Result<()> {
    let b = Budget::new(3, 6, 3);
    let v = is_pc_within(&zoo::point(), &zoo::t_pos(), &Budget::new(4, 6, 3))?;
    println!("point is pc for posets up to 4 elements: {}", v.verdict);
    let v = is_pc_within(&zoo::chain2(), &zoo::t_pos(), &b)?;
    println!("2-chain is pc for posets: {}", v.verdict);

    for t in [zoo::t_pos(), zoo::fixed_point_theory(1), zoo::fixed_point_theory(3), zoo::t_g()] {
        let pcs = pc_models(&t, &b)?;
        println!("{}: {} pc model(s) up to 3 elements", t.name(), pcs.len());
        for m in pcs {
            println!("  {m}");
        }
    }
    Ok(())
}
