//! A small run of the timing harness and the doubling ratios it yields:
//! about 2 for near-linear growth, about 4 for quadratic.

use std::time::Duration;

use alphahash::bench::{doubling_ratios, run_bench, Algorithm, BenchConfig, Cell};
use alphahash::generate::Family;

fn main() -> Result<(), alphahash::Error> {
    let config = BenchConfig {
        families: vec![Family::Linear, Family::Balanced],
        sizes: (9..=13).map(|k| 1 << k).collect(),
        trials: 5,
        warmups: 1,
        budget: Duration::from_secs(10),
        ..BenchConfig::default()
    };
    let summaries = run_bench(
        &config,
        |_| {},
        |cell| {
            if let Cell::Done(s) = cell {
                println!("{s}");
            }
        },
    )?;
    println!();
    for family in &config.families {
        for algorithm in Algorithm::ALL {
            let ratios: Vec<String> = doubling_ratios(&summaries, *family, algorithm)
                .iter()
                .map(|(_, _, r)| format!("{r:.2}"))
                .collect();
            println!("{family:<9} {algorithm:<9} {}", ratios.join(" "));
        }
    }
    Ok(())
}
