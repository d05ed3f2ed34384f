//! Diagrams and bounded sentence sets of a structure.

use posmt::theory::diagram::{diagram, DiagramKind};
use posmt::theory::verdict::Budget;
use posmt::zoo;

fn main() -> posmt::error::Result<()> {
    let budget = Budget::new(3, 6, 2);
    let s = zoo::two_cycle();
    println!("structure: {s}");
    for kind in [DiagramKind::Diag, DiagramKind::DiagPlus, DiagramKind::DiagPlusStar, DiagramKind::TuStar, DiagramKind::TiStar] {
        let d = diagram(&s, kind, &budget)?;
        println!("{kind}: {} sentences", d.len());
        for x in d.sentences.iter().take(4) {
            println!("  {x}");
        }
    }
    Ok(())
}
