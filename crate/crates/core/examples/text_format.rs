//! Loading objects from a text file and solving the problem it declares.

use posmt::amalgamation::solve;
use posmt::text::Workspace;
use posmt::theory::verdict::Budget;

fn main() -> posmt::error::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/posets.posmt");
    let mut w = Workspace::new();
    for line in w.load_files(&[path])? {
        println!("{line}");
    }
    let p = w.resolve_problem(w.problem_spec("span")?, Budget::default())?;
    let outcome = solve(&p)?;
    if let Some(s) = outcome.solution() {
        println!("{}", w.render_structure("apex", &s.apex));
    }
    Ok(())
}
