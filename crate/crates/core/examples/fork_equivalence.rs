//! Fork equivalence on the double-fork term: two `x t` occurrences are only
//! related through a sub-fork and transitivity, yet all four end up in one
//! class, as bisimulation and globalization predict.

use alphahash::bisim::{bisim_partition, build_graph, enumerate_single_forks, fork_closure};
use alphahash::{globalize, hash_at, parse_term, Hasher, Term};

fn main() -> Result<(), alphahash::Error> {
    // λt. (λx. x t (λy. x t)) (λz. λx. x t (λy. x t))
    let t = parse_term(r"\(\((0 1) \(1 2)) \\((0 2) \(1 3)))")?;
    let sites = ["DLDL", "DLDRD", "DRDDL", "DRDDRD"];
    let g = build_graph(&t)?;
    let ids: Vec<usize> = sites
        .iter()
        .map(|s| g.node_at(&s.parse().unwrap()))
        .collect::<Result<_, _>>()?;

    // 21 nodes, above the default bound; the enumeration still finishes quickly.
    let bound = t.size();
    let forks = enumerate_single_forks(&t, bound)?;
    let distinct = forks.iter().filter(|(a, b)| a < b).count();
    println!("{distinct} single forks between distinct positions");
    for (i, &a) in ids.iter().enumerate() {
        for (&b, s) in ids.iter().zip(sites).skip(i + 1) {
            let direct = forks.contains(&(a.min(b), a.max(b)));
            println!("  {} ~ {s}: direct fork {direct}", sites[i]);
        }
    }

    let closure = fork_closure(&t, bound)?;
    assert!(ids.iter().all(|&v| closure.same_block(ids[0], v)));
    assert_eq!(closure, bisim_partition(&t)?);
    println!("fork closure puts all four in one class and equals the bisimulation");

    let mut h = Hasher::fast();
    let d = Term::from_pure(&mut h, &t);
    let gl = globalize(&mut h, &d)?;
    for s in sites {
        println!("  {s:<7} {}", hash_at(&gl, &s.parse()?)?);
    }
    Ok(())
}
