//! The term generators: exact counts, uniform sampling by unranking, the
//! grown generator for larger sizes, and the linear and balanced families.

use alphahash::generate::{
    count_terms, gen_balanced, gen_grown_closed, gen_linear, Family, RandomClosedSampler,
};
use rand::SeedableRng;
use rand_pcg::Pcg64;

fn main() -> Result<(), alphahash::Error> {
    for n in [2, 5, 10, 50, 200] {
        println!("closed terms of size {n:>3}: {}", count_terms(n, 0));
    }

    let sampler = RandomClosedSampler::new(30)?;
    let mut rng = Pcg64::seed_from_u64(1);
    for n in [4, 8, 30] {
        println!("uniform, size {n:>2}: {}", sampler.sample(n, &mut rng)?);
    }
    println!("grown, size 40:    {}", gen_grown_closed(40, 7)?);
    println!("linear 4:          {}", gen_linear(4));
    println!("balanced 3:        {}", gen_balanced(3));

    for family in [
        Family::Random,
        Family::Grown,
        Family::Linear,
        Family::Balanced,
    ] {
        let param = family.param_for_size(1000);
        println!(
            "{family:<9} param {param:>4} -> size {}",
            family.generate(param, 0)?.size()
        );
    }
    Ok(())
}
