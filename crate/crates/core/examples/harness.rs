//! Generated instances of the amalgamation statements, each witness re-verified.

use posmt::amalgamation::{verify_theorem, HarnessConfig, TheoremId};

fn main() -> posmt::error::Result<()> {
    for id in [TheoremId::SiSiStrong, TheoremId::IiHhStrong, TheoremId::HStrongPc, TheoremId::Example(4)] {
        let r = verify_theorem(&HarnessConfig::new(id, 2024, 20))?;
        println!("{id:<14} kinds {} strong {}: {}/{} witnessed, all verified {}", r.kinds, r.strong, r.witnessed, r.total, r.all_verified());
    }
    Ok(())
}
