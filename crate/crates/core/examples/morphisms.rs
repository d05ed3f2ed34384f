//! Homomorphisms and their kinds: hom, embedding, immersion, strong immersion.

use posmt::morphism::{enumerate_homs, HomConstraint, Morphism, MorphismKind};
use posmt::zoo;

fn main() -> posmt::error::Result<()> {
    let (a, b) = (zoo::chain2(), zoo::chain3());
    println!("homomorphisms from the 2-chain to the 3-chain:");
    for (m, cert) in enumerate_homs(&a, &b, &HomConstraint::default(), MorphismKind::Hom, b.size(), 1_000_000)? {
        println!("  {:?}: {}", m.map_names(), cert.kind());
    }

    let inclusion = Morphism::new(zoo::point(), zoo::chain2(), vec![0])?;
    println!("point -> 2-chain at 0: {}", inclusion.classify(2)?);
    if let Some(r) = inclusion.retraction(1_000_000)? {
        println!("  retraction witnessing the immersion: {r:?}");
    }
    let check = inclusion.strong_immersion(2, 1_000_000)?;
    if let Some(w) = check.witness {
        println!("  not strong: {} fails at {:?}", w.sentence, w.refuting_tuple);
    }
    Ok(())
}
