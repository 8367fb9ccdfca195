//! Naive globalization substitutes at every binder; the efficient one delays
//! substitutions. Both give the same position partition, at very different
//! costs on the linear family.

use std::time::Instant;

use alphahash::generate::{gen_linear, gen_random_closed};
use alphahash::{globalize, globalize_naive, hash_partition, Hasher, Term};

fn main() -> Result<(), alphahash::Error> {
    for seed in 0..5 {
        let t = gen_random_closed(60, seed)?;
        let mut h = Hasher::exact();
        let d = Term::from_pure(&mut h, &t);
        let naive = hash_partition(&globalize_naive(&mut h, &d)?);
        let efficient = hash_partition(&globalize(&mut h, &d)?);
        assert_eq!(naive, efficient);
        println!(
            "random #{seed}: {} positions, {} classes, partitions agree",
            t.size(),
            naive.block_count()
        );
    }

    println!("\n{:>8} {:>12} {:>12}", "size", "naive", "efficient");
    for n in [500, 1000, 2000, 4000] {
        let t = gen_linear(n);
        let mut h = Hasher::fast();
        let d = Term::from_pure(&mut h, &t);
        let start = Instant::now();
        drop(globalize_naive(&mut h, &d)?);
        let naive = start.elapsed();
        let start = Instant::now();
        drop(globalize(&mut h, &d)?);
        let efficient = start.elapsed();
        println!("{:>8} {:>12.2?} {:>12.2?}", t.size(), naive, efficient);
    }
    Ok(())
}
