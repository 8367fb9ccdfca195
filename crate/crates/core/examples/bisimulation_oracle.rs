//! The transition graph of a term, its coarsest bisimulation by fixed point
//! and by partition refinement, and the match with globalized hashes.

use alphahash::bisim::{
    are_equivalent, bisim_partition_naive, bisim_partition_refine, build_graph, Label,
};
use alphahash::{globalize, hash_partition, parse_term, Hasher, Term};

fn main() -> Result<(), alphahash::Error> {
    let t = parse_term(r"\((\0 \\(0 2)) \(0 1))")?;
    let g = build_graph(&t)?;
    println!("{} nodes, {} edges", g.len(), g.edge_count());
    for v in 0..g.len() {
        let edges: Vec<String> = Label::ALL
            .iter()
            .filter_map(|&l| g.succ(v, l).map(|w| format!("{l:?}->{w}")))
            .collect();
        println!(
            "  {v:>2} {:<6} {:?} {}",
            g.position(v).to_string(),
            g.kind(v),
            edges.join(" ")
        );
    }

    let naive = bisim_partition_naive(&g);
    let refined = bisim_partition_refine(&g);
    let mut h = Hasher::exact();
    let d = Term::from_pure(&mut h, &t);
    let hashed = hash_partition(&globalize(&mut h, &d)?);
    assert_eq!(naive, refined);
    assert_eq!(refined, hashed);
    println!("classes: {:?}", refined.classes());

    // λt. (λ0) (λz.λf. f z) (λg. g t): the two `λ. 0 _` no longer match.
    let other = parse_term(r"\((\0 \\(0 1)) \(0 1))")?;
    let (p, q) = ("DLRD".parse()?, "DR".parse()?);
    println!("t[DLRD] ~ t[DR]: {}", are_equivalent(&t, &p, &t, &q)?);
    println!(
        "u[DLRD] ~ u[DR]: {}",
        are_equivalent(&other, &p, &other, &q)?
    );
    println!("t[DR] ~ u[DR]: {}", are_equivalent(&t, &q, &other, &q)?);
    Ok(())
}
