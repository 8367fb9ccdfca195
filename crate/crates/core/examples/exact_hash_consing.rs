//! Exact mode: hashes are hash-consed g-terms, so they can be expanded back
//! into the global-variable terms globalization actually built.

use alphahash::{globalize, globalize_naive, hash_at, parse_term, Hasher, Term};

fn main() -> Result<(), alphahash::Error> {
    let mut h = Hasher::exact();
    let t = Term::from_pure(&mut h, &parse_term(r"\\(0 1)")?);
    let naive = globalize_naive(&mut h, &t)?;
    println!("naive:     {}", h.gterm_of_exact(naive.hash())?);
    let efficient = globalize(&mut h, &t)?;
    println!("efficient: {}", h.gterm_of_exact(efficient.hash())?);

    // λt. (λ0) (λz.λf. f t) (λg. g t)
    let t = Term::from_pure(&mut h, &parse_term(r"\((\0 \\(0 2)) \(0 1))")?);
    let g = globalize(&mut h, &t)?;
    for p in ["DLRD", "DR"] {
        let x = hash_at(&g, &p.parse()?)?;
        println!("{p:<5} #{x}  {}", h.gterm_of_exact(x)?);
    }
    println!(
        "intern table holds {} layers",
        h.intern_table().map_or(0, |t| t.len())
    );
    Ok(())
}
