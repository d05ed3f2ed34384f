//! Joint continuation, T-complete pairs, and the five equivalent forms.

use posmt::theory::ops::{is_jc_bounded, is_t_complete_pair, jc_characterization_report};
use posmt::theory::verdict::Budget;
use posmt::zoo;

fn main() -> posmt::error::Result<()> {
    let b = Budget::new(3, 4, 3);
    for t in [zoo::t_pos(), zoo::fixed_point_theory(1), zoo::t_g()] {
        println!("{} has joint continuation: {}", t.name(), is_jc_bounded(&t, &b)?.verdict);
    }
    let v = is_t_complete_pair(&zoo::fixed_point_theory(1), &zoo::fixed_point_theory(2), &zoo::fixed_point_theory(1), &b)?;
    println!("(T_fix1, T_fix2) is T_fix1-complete: {}", v.verdict);

    let r = jc_characterization_report(&zoo::t_pos(), &b)?;
    for c in &r.conditions {
        println!("  [{}] {}: {}", c.index, c.statement, c.holds);
    }
    println!("all agree with the verdict: {}", r.all_agree());
    Ok(())
}
