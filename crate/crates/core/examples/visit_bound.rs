//! Efficient globalization rewrites any node at most ⌊log₂ n⌋ + 1 times.

use alphahash::generate::{gen_balanced, gen_grown_closed, gen_linear};
use alphahash::{globalize, globalize_naive, max_visit, visit_bound, Hasher, PureTerm, Term};

fn main() -> Result<(), alphahash::Error> {
    let mut terms: Vec<(String, PureTerm)> = Vec::new();
    for n in [10, 100, 1000, 10_000] {
        terms.push((format!("linear {n}"), gen_linear(n)));
    }
    for d in [4, 8, 12] {
        terms.push((format!("balanced {d}"), gen_balanced(d)));
    }
    for seed in 0..3 {
        terms.push((format!("grown #{seed}"), gen_grown_closed(5000, seed)?));
    }
    println!(
        "{:<14} {:>7} {:>6} {:>6} {:>6}",
        "term", "size", "naive", "eff", "bound"
    );
    for (name, t) in terms {
        let mut h = Hasher::fast();
        let naive = {
            let d = Term::from_pure(&mut h, &t);
            max_visit(&globalize_naive(&mut h, &d)?)
        };
        let d = Term::from_pure(&mut h, &t);
        let eff = max_visit(&globalize(&mut h, &d)?);
        let bound = visit_bound(t.size());
        assert!(eff <= bound);
        println!("{name:<14} {:>7} {naive:>6} {eff:>6} {bound:>6}", t.size());
    }
    Ok(())
}
