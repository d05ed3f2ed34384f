//! Companion theories and the bounded Kaiser hull.

use posmt::theory::diagram::{diagram, DiagramKind};
use posmt::theory::ops::{companion_check_bounded, kaiser_hull_bounded};
use posmt::theory::verdict::Budget;
use posmt::zoo;

fn main() -> posmt::error::Result<()> {
    let b = Budget::new(2, 6, 2);
    let l = zoo::singleton_loop();
    let tu = diagram(&l, DiagramKind::TuStar, &b)?.to_theory("tu")?;
    let ti = diagram(&l, DiagramKind::TiStar, &b)?.to_theory("ti")?;
    println!("universal and inductive theories of the loop are companions: {}", companion_check_bounded(&tu, &ti, &b)?.verdict);

    let h = kaiser_hull_bounded(&zoo::fixed_point_theory(1), &b)?;
    println!("hull of T_fix1: {} sentences over {} pc model(s)", h.hull.len(), h.pc_models.len());
    for s in h.hull.iter().take(3) {
        println!("  {s}");
    }
    Ok(())
}
