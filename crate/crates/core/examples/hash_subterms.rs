//! Hash every position of a closed term and group the positions whose
//! subterm-in-context coincide.
//!
//! ```text
//! cargo run --example hash_subterms -- '\((\0 \\(0 2)) \(0 1))'
//! ```

use std::collections::BTreeMap;

use alphahash::term::valid_positions;
use alphahash::{globalize, parse_term, Hasher, Syntax, Term};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // λt. (λ0) (λz.λf. f t) (λg. g t)
    let src = std::env::args()
        .nth(1)
        .unwrap_or_else(|| r"\((\0 \\(0 2)) \(0 1))".to_string());
    let pure = parse_term(&src)?;
    let mut hasher = Hasher::fast();
    let t = Term::from_pure(&mut hasher, &pure);
    let g = globalize(&mut hasher, &t)?;

    let mut classes: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (p, (u, _)) in valid_positions(&g).zip(g.preorder()) {
        println!("{p:<10} {}  {}", u.hash(), u.to_pure());
        classes
            .entry(u.hash().to_string())
            .or_default()
            .push(p.to_string());
    }
    println!();
    for (h, ps) in classes.iter().filter(|(_, ps)| ps.len() > 1) {
        println!("{h}: {}", ps.join(", "));
    }
    Ok(())
}
