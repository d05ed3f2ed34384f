//! Parsing sentences, finding their class, and evaluating them.

use posmt::formula::{classify_sentence, eval_sentence, parse_formula_in};
use posmt::zoo;

fn main() -> posmt::error::Result<()> {
    let sig = zoo::poset_signature();
    let chain = zoo::chain2();
    for text in [
        "exists x y. leq(x, y) & !(x = y)",
        "!(exists x y. leq(x, y) & leq(y, x) & leq(y, y))",
        "forall x y. leq(x, y) -> leq(y, x) | x = y",
        "positive: exists x. leq(x, x)",
        "huniversal: ! exists x. leq(x, x)",
        "huniversal: ! exists x y. leq(x, y) & !(x = y)",
        "hinductive: forall x y. leq(x, y) & leq(y, x) -> x = y",
    ] {
        match parse_formula_in(text, &sig) {
            Ok(parsed) => {
                let f = parsed.to_formula().expect("a sentence");
                println!("{text}\n  class {}, true in the 2-chain: {}", classify_sentence(&f).as_str(), eval_sentence(&chain, &f)?);
            }
            Err(e) => println!("{text}\n  rejected: {e}"),
        }
    }
    Ok(())
}
