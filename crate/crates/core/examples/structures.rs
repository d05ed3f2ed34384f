//! Building, printing and enumerating finite structures.

use posmt::canon::{are_isomorphic, canonical_form};
use posmt::enumerate::{enumerate_structures, labeled_count};
use posmt::structure::StructureBuilder;
use posmt::zoo;

fn main() -> posmt::error::Result<()> {
    let mut b = StructureBuilder::new(zoo::digraph_signature(), ["a", "b", "c"])?;
    b.add_fact("R", &["a", "b"])?.add_fact("R", &["b", "c"])?.add_fact("R", &["c", "a"])?;
    let triangle = b.build()?;
    println!("triangle: {triangle}");

    let rotated = triangle.permuted(&[1, 2, 0]);
    println!("rotated:  {rotated}");
    println!("isomorphic: {}", are_isomorphic(&triangle, &rotated));
    println!("canonical form: {}", canonical_form(&triangle));

    let sig = zoo::unary_signature();
    for n in 1..=3 {
        let iso = enumerate_structures(&sig, n, true, 1_000_000)?.iter().filter(|s| s.size() == n).count();
        println!("unary functions on {n} elements: {} labeled, {iso} up to isomorphism", labeled_count(&sig, n));
    }
    Ok(())
}
